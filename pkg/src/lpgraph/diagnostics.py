"""Null-model diagnostics: LP correlogram, LPINFOR chi-square test, null sampling.

Under the null model (edge probability proportional to p(x) p(y)) the
standardized coefficients ``sqrt(N) * LP[j, k]`` are asymptotically
standard normal, so the correlogram band is ``±1.96 / sqrt(N)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy import stats

from .field import Selection
from .graph import DegenerateMarginalError, Graph, Marginal
from .transform import LPMatrix, lp_transform

__all__ = [
    "CorrelogramEntry",
    "Correlogram",
    "TestResult",
    "NullSummary",
    "correlogram",
    "lpinfor_test",
    "sample_null",
    "replicate_rng",
    "standardized_coefficient_distribution",
]

Z_975 = 1.96


class CorrelogramEntry(NamedTuple):
    j: int
    k: int
    lp: float
    standardized: float
    outside_band: bool


@dataclass(frozen=True)
class Correlogram:
    entries: list[CorrelogramEntry]
    band_halfwidth: float
    total_weight: float

    @property
    def fraction_outside(self) -> float:
        if not self.entries:
            return 0.0
        return sum(e.outside_band for e in self.entries) / len(self.entries)


@dataclass(frozen=True)
class TestResult:
    statistic: float
    df: int
    p_value: float
    reject_at_5pct: bool
    post_selection: bool

    __test__ = False  # not a pytest class

    def to_dict(self) -> dict:
        return {
            "statistic": self.statistic,
            "df": self.df,
            "p_value": self.p_value,
            "reject_at_5pct": self.reject_at_5pct,
            "post_selection": self.post_selection,
        }


def _grid_block(lp: LPMatrix, grid):
    c = lp.coeffs
    if grid is not None:
        c = c[: grid[0], : grid[1]]
    return c


def correlogram(lp: LPMatrix, grid: tuple[int, int] | None = None) -> Correlogram:
    """Standardized coefficients, in (j, k) order, flagged against the 95% band."""
    if not lp.total_weight > 0:
        raise ValueError("correlogram needs total weight N > 0")
    root_n = np.sqrt(lp.total_weight)
    half = Z_975 / root_n
    c = _grid_block(lp, grid)
    entries = [
        CorrelogramEntry(j + 1, k + 1, float(c[j, k]), float(root_n * c[j, k]), bool(abs(c[j, k]) > half))
        for j in range(c.shape[0])
        for k in range(c.shape[1])
    ]
    return Correlogram(entries, float(half), lp.total_weight)


def lpinfor_test(lp: LPMatrix, selection: Selection | None = None,
                 grid: tuple[int, int] | None = None) -> TestResult:
    """Chi-square test of N * (sum of squared coefficients).

    With ``selection=None`` the statistic uses the whole (optionally
    ``grid``-restricted) coefficient block and df is its size. With a
    Selection it uses the chosen pairs, df = k_star, and the result is
    flagged ``post_selection`` since that df ignores the selection step.
    """
    if not lp.total_weight > 1:
        raise ValueError("test needs total weight N > 1")
    if selection is None:
        c = _grid_block(lp, grid)
        ss, df, post = float(np.sum(c * c)), int(c.size), False
    else:
        ss = float(sum(lp.coeffs[j - 1, k - 1] ** 2 for j, k in selection.chosen))
        df, post = selection.k_star, True
    if df == 0:
        return TestResult(0.0, 0, 1.0, False, post)
    statistic = lp.total_weight * ss
    p_value = float(stats.chi2.sf(statistic, df))
    return TestResult(statistic, df, p_value, p_value < 0.05, post)


def replicate_rng(seed: int, replicate: int) -> np.random.Generator:
    """Independent stream for one Monte Carlo replicate."""
    return np.random.default_rng([int(seed), int(replicate)])


def sample_null(mx: Marginal, my: Marginal, n_edges: int, seed=None, rng=None) -> Graph:
    """Directed graph of ``n_edges`` i.i.d. edges drawn with probability p(x) p(y).

    Self-pairs are allowed, as the null law puts mass on them.
    """
    if n_edges < 1:
        raise ValueError("n_edges must be at least 1")
    for m in (mx, my):
        if m.support.size < 2:
            raise DegenerateMarginalError("degenerate marginal: support has fewer than 2 nodes")
    if rng is None:
        rng = np.random.default_rng(seed)
    pvals = np.outer(mx.probs, my.probs).ravel()
    counts = rng.multinomial(int(n_edges), pvals / pvals.sum())
    return Graph(counts.reshape(mx.n, my.n).astype(float), directed=True)


@dataclass(frozen=True)
class NullSummary:
    """Monte Carlo moments of ``sqrt(N) * LP[j, k]`` over null replicates."""

    mean: np.ndarray
    variance: np.ndarray | None
    band_rate: float
    reps: int
    n_edges: int


def standardized_coefficient_distribution(mx: Marginal, my: Marginal, n_edges: int, reps: int,
                                          seed: int = 0, grid: tuple[int, int] = (10, 10)) -> NullSummary:
    """Sample ``reps`` null graphs and summarize their standardized coefficients.

    Each replicate's bases come from its own empirical marginals, as they
    would for observed data. ``variance`` is None when ``reps < 2``.
    """
    if reps < 1:
        raise ValueError("reps must be at least 1")
    J, K = grid
    draws = np.empty((reps, J, K))
    outside = 0
    for r in range(reps):
        g = sample_null(mx, my, n_edges, rng=replicate_rng(seed, r))
        lp = lp_transform(g, max_degree=max(J, K))
        c = lp.coeffs[:J, :K]
        if c.shape != (J, K):
            raise ValueError(f"replicate {r} produced only a {c.shape} coefficient grid")
        draws[r] = np.sqrt(lp.total_weight) * c
        outside += int(np.sum(np.abs(c) > Z_975 / np.sqrt(lp.total_weight)))
    variance = draws.var(axis=0, ddof=1) if reps >= 2 else None
    return NullSummary(draws.mean(axis=0), variance, outside / draws.size, reps, int(n_edges))
