"""Seeded random graphs: Erdős–Rényi, bipartite and stochastic block models.

All samplers use numpy's PCG64 (``np.random.default_rng(seed)``) and draw
one uniform per candidate pair in row-major order: ``(x, y)`` with
``x < y`` for undirected graphs, ``x != y`` for directed ones. An edge
is present when its uniform is below the pair's probability. There are
no self-loops.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .graph import Graph, GraphError

__all__ = [
    "GeneratorSpec",
    "block_probabilities",
    "erdos_renyi",
    "bipartite",
    "sbm",
    "expected_graph",
    "generate",
]

KINDS = ("er", "bipartite", "sbm", "null")


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    n: int | None = None
    p: float | None = None
    sizes: tuple[int, ...] = ()
    prob_matrix: tuple[tuple[float, ...], ...] = ()
    directed: bool = False
    seed: int = 0
    n_edges: int | None = None
    extra: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.kind in ("er", "bipartite") and self.p is not None and not 0 <= self.p <= 1:
            raise ValueError("edge probability must lie in [0, 1]")

    def blocks(self):
        """Block sizes and probability matrix describing this spec."""
        if self.kind == "er":
            return (self.n,), np.array([[self.p]], dtype=float)
        if self.kind == "bipartite":
            p = self.p
            return tuple(self.sizes), np.array([[0.0, p], [p, 0.0]])
        if self.kind == "sbm":
            return tuple(self.sizes), np.array(self.prob_matrix, dtype=float)
        raise ValueError(f"generator kind {self.kind!r} has no block structure")


def _check_blocks(sizes, P, directed):
    sizes = tuple(int(s) for s in sizes)
    P = np.asarray(P, dtype=float)
    if not sizes or any(s < 1 for s in sizes):
        raise ValueError("block sizes must be positive")
    if P.shape != (len(sizes), len(sizes)):
        raise ValueError(f"probability matrix shape {P.shape} does not match {len(sizes)} blocks")
    if np.any(P < 0) or np.any(P > 1) or not np.all(np.isfinite(P)):
        raise ValueError("edge probabilities must lie in [0, 1]")
    if not directed and not np.array_equal(P, P.T):
        raise ValueError("undirected block model needs a symmetric probability matrix")
    return sizes, P


def block_probabilities(sizes, P) -> np.ndarray:
    """Per-pair edge probabilities with a zero diagonal."""
    labels = np.repeat(np.arange(len(sizes)), sizes)
    out = np.asarray(P, dtype=float)[np.ix_(labels, labels)]
    np.fill_diagonal(out, 0.0)
    return out


def _labels(n):
    return tuple(str(i + 1) for i in range(n))


def _sample(probs: np.ndarray, directed: bool, seed) -> Graph:
    n = probs.shape[0]
    rng = np.random.default_rng(seed)
    if directed:
        mask = ~np.eye(n, dtype=bool)
        a = np.zeros((n, n))
        a[mask] = (rng.random(n * (n - 1)) < probs[mask]).astype(float)
    else:
        iu = np.triu_indices(n, 1)
        draws = rng.random(iu[0].size) < probs[iu]
        a = np.zeros((n, n))
        a[iu] = draws
        a = a + a.T
    return Graph(a, directed, _labels(n))


def sbm(sizes, P, directed: bool = False, seed=0) -> Graph:
    sizes, P = _check_blocks(sizes, P, directed)
    return _sample(block_probabilities(sizes, P), directed, seed)


def erdos_renyi(n: int, p: float, directed: bool = False, seed=0) -> Graph:
    if n < 2:
        raise ValueError("Erdős–Rényi graph needs n >= 2")
    if not 0 <= p <= 1:
        raise ValueError("edge probability must lie in [0, 1]")
    return sbm((n,), [[p]], directed, seed)


def bipartite(n1: int, n2: int, p: float, seed=0) -> Graph:
    """Undirected; only pairs across the two groups (group 1 first) get edges."""
    if n1 < 1 or n2 < 1:
        raise ValueError("bipartite group sizes must be positive")
    if not 0 <= p <= 1:
        raise ValueError("edge probability must lie in [0, 1]")
    return sbm((n1, n2), [[0.0, p], [p, 0.0]], False, seed)


def expected_graph(spec: GeneratorSpec) -> Graph:
    """Weighted graph whose entries are the edge probabilities (zero diagonal)."""
    if spec.kind == "null":
        raise GraphError("expected graph is not defined for the null sampler")
    sizes, P = spec.blocks()
    sizes, P = _check_blocks(sizes, P, spec.directed)
    a = block_probabilities(sizes, P)
    return Graph(a, spec.directed, _labels(a.shape[0]))


def generate(spec: GeneratorSpec) -> Graph:
    if spec.kind == "er":
        return erdos_renyi(spec.n, spec.p, spec.directed, spec.seed)
    if spec.kind == "bipartite":
        return bipartite(spec.sizes[0], spec.sizes[1], spec.p, spec.seed)
    if spec.kind == "sbm":
        return sbm(spec.sizes, spec.prob_matrix, spec.directed, spec.seed)
    raise ValueError("use diagnostics.sample_null for the null sampler")
