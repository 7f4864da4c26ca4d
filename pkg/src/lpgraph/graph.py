"""Graph ingestion and the marginal / joint distributions of edge weight."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "GraphError",
    "ParseError",
    "DegenerateMarginalError",
    "Graph",
    "Marginal",
    "JointPMF",
    "parse_edge_list",
    "parse_adjacency_csv",
    "marginals",
    "joint_pmf",
    "quantile",
    "order_by_degree",
]


class GraphError(ValueError):
    """Invalid graph data."""


class ParseError(GraphError):
    """Malformed edge-list or adjacency input."""

    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class DegenerateMarginalError(ValueError):
    """A marginal with fewer than two support points."""


def _readonly(a):
    a = np.array(a, dtype=np.float64)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class Graph:
    """Weighted adjacency matrix with a directedness flag.

    ``weights[x, y]`` is the weight of the edge ``x -> y``. Undirected
    graphs must be stored symmetric.
    """

    weights: np.ndarray
    directed: bool = False
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        a = _readonly(self.weights)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise GraphError(f"adjacency must be a non-empty square matrix, got shape {a.shape}")
        if not np.all(np.isfinite(a)):
            raise GraphError("adjacency contains non-finite weights")
        if np.any(a < 0):
            raise GraphError("adjacency contains negative weights")
        if not self.directed and not np.array_equal(a, a.T):
            raise GraphError("undirected graph requires a symmetric adjacency")
        if not a.sum() > 0:
            raise GraphError("empty graph")
        labels = self.labels
        if labels is not None:
            labels = tuple(str(s) for s in labels)
            if len(labels) != a.shape[0]:
                raise GraphError("label count does not match node count")
        object.__setattr__(self, "weights", a)
        object.__setattr__(self, "directed", bool(self.directed))
        object.__setattr__(self, "labels", labels)

    @property
    def n(self) -> int:
        return self.weights.shape[0]

    @property
    def total_weight(self) -> float:
        return float(self.weights.sum())

    def metadata(self) -> dict:
        return {
            "n": self.n,
            "directed": self.directed,
            "total_weight": self.total_weight,
            "labels": list(self.labels) if self.labels is not None else None,
        }

    def scaled(self, factor: float) -> "Graph":
        return Graph(self.weights * factor, self.directed, self.labels)


@dataclass(frozen=True, eq=False)
class Marginal:
    """Discrete distribution over node indices ``0..n-1``.

    ``cdf`` is pinned to exactly 1 from the last support node onward so
    that ``quantile(1.0)`` is always defined.
    """

    probs: np.ndarray
    cdf: np.ndarray = field(init=False)
    midcdf: np.ndarray = field(init=False)
    support: np.ndarray = field(init=False)

    def __post_init__(self):
        p = _readonly(self.probs)
        if p.ndim != 1 or p.size == 0:
            raise ValueError("probabilities must be a non-empty vector")
        if np.any(p < 0) or not np.all(np.isfinite(p)):
            raise ValueError("probabilities must be finite and nonnegative")
        if abs(p.sum() - 1.0) > 1e-9:
            raise ValueError(f"probabilities sum to {p.sum()!r}, not 1")
        support = np.flatnonzero(p > 0)
        cdf = np.cumsum(p)
        cdf[support[-1]:] = 1.0
        object.__setattr__(self, "probs", p)
        object.__setattr__(self, "cdf", _readonly(cdf))
        object.__setattr__(self, "midcdf", _readonly(cdf - 0.5 * p))
        support.flags.writeable = False
        object.__setattr__(self, "support", support)

    @classmethod
    def uniform(cls, n: int) -> "Marginal":
        return cls(np.full(n, 1.0 / n))

    @property
    def n(self) -> int:
        return self.probs.shape[0]

    @property
    def breakpoints(self) -> np.ndarray:
        """Cell boundaries on the unit interval: 0 followed by F on the support."""
        return np.concatenate(([0.0], self.cdf[self.support]))

    def quantile(self, u):
        return quantile(self, u)


@dataclass(frozen=True, eq=False)
class JointPMF:
    probs: np.ndarray
    total_weight: float

    @property
    def n(self) -> int:
        return self.probs.shape[0]


def _parse_weight(tok, lineno):
    try:
        w = float(tok)
    except ValueError:
        raise ParseError(f"non-numeric weight {tok!r}", lineno) from None
    if not math.isfinite(w):
        raise ParseError(f"non-finite weight {tok!r}", lineno)
    if w < 0:
        raise ParseError(f"negative weight {tok!r}", lineno)
    return w


def parse_edge_list(text: str, directed: bool = False) -> Graph:
    """Parse ``src dst [weight]`` lines into a Graph.

    Node tokens get indices in order of first appearance. Repeated edges
    accumulate. In undirected mode each line adds its weight to both
    ``(src, dst)`` and ``(dst, src)``; a self-loop line adds it once.
    Lines starting with ``#`` are comments.
    """
    index: dict[str, int] = {}
    edges: list[tuple[int, int, float]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        toks = stripped.split()
        if len(toks) not in (2, 3):
            raise ParseError(f"expected 2 or 3 fields, got {len(toks)}", lineno)
        w = _parse_weight(toks[2], lineno) if len(toks) == 3 else 1.0
        ids = []
        for tok in toks[:2]:
            if tok not in index:
                index[tok] = len(index)
            ids.append(index[tok])
        edges.append((ids[0], ids[1], w))
    if not edges:
        raise GraphError("empty graph")
    n = len(index)
    a = np.zeros((n, n))
    for x, y, w in edges:
        a[x, y] += w
        if not directed and x != y:
            a[y, x] += w
    return Graph(a, directed, tuple(index))


def parse_adjacency_csv(text: str, directed: bool = False) -> Graph:
    """Parse ``n`` rows of ``n`` comma-separated nonnegative reals."""
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        row = [_parse_weight(tok.strip(), lineno) for tok in line.split(",")]
        if rows and len(row) != len(rows[0]):
            raise ParseError(f"expected {len(rows[0])} columns, got {len(row)}", lineno)
        rows.append(row)
    if not rows:
        raise GraphError("empty graph")
    if len(rows) != len(rows[0]):
        raise ParseError(f"adjacency is {len(rows)}x{len(rows[0])}, not square")
    return Graph(np.array(rows), directed)


def marginals(g: Graph) -> tuple[Marginal, Marginal]:
    """Sender (row) and receiver (column) distributions of edge weight."""
    total = g.weights.sum()
    mx = Marginal(g.weights.sum(axis=1) / total)
    if not g.directed:
        return mx, mx
    return mx, Marginal(g.weights.sum(axis=0) / total)


def joint_pmf(g: Graph) -> JointPMF:
    total = g.total_weight
    return JointPMF(_readonly(g.weights / total), total)


def quantile(m: Marginal, u):
    """Left-continuous inverse of the CDF: smallest x with F(x) >= u.

    Accepts a scalar or an array of levels in (0, 1].
    """
    arr = np.asarray(u, dtype=np.float64)
    if np.any(~(arr > 0)) or np.any(arr > 1):
        raise ValueError("quantile level must lie in (0, 1]")
    idx = np.searchsorted(m.cdf, arr, side="left")
    idx = np.minimum(idx, m.support[-1])
    if idx.ndim == 0:
        return int(idx)
    return idx


def order_by_degree(g: Graph, descending: bool = False) -> Graph:
    """Re-index nodes by total (out + in) weight, ties kept in input order."""
    deg = g.weights.sum(axis=1) + g.weights.sum(axis=0)
    key = -deg if descending else deg
    perm = np.argsort(key, kind="stable")
    a = g.weights[np.ix_(perm, perm)]
    labels = tuple(g.labels[i] for i in perm) if g.labels is not None else tuple(str(i + 1) for i in perm)
    return Graph(a, g.directed, labels)
