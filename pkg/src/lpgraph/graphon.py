"""Smooth graphon estimates from the null model times the correlation field.

The estimate at cell ``(x, y)`` is ``scale * p(x) p(y) * C(x, y)``. With
``scale = N`` (total weight) and the full-rank field this reproduces the
adjacency matrix; the low-rank field and smoothed marginals give the
smooth version.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .basis import DEFAULT_MAX_DEGREE, discrete_legendre
from .field import DensityField, Grid, Selection, evaluate_grid, reconstruct_field, schwarz_select, select_components
from .graph import Graph, Marginal, joint_pmf, marginals
from .transform import graph_bases, lp_coefficients

__all__ = [
    "SmoothedMarginal",
    "GraphonEstimate",
    "marginal_lp_coefficients",
    "smooth_marginal",
    "estimate_graphon",
    "evaluate_graphon_grid",
    "block_means",
]

MARGINAL_MODES = ("empirical", "smoothed")
SELECTION_MODES = ("full", "selected")


def marginal_lp_coefficients(m: Marginal, max_degree: int | None = None) -> np.ndarray:
    """``LP[j; p0, p] = sum_x p(x) DLeg_j(x)`` against the uniform reference."""
    if m.n < 2:
        raise ValueError("marginal smoothing needs n >= 2")
    deg = min(DEFAULT_MAX_DEGREE, m.n - 1) if max_degree is None else min(max_degree, m.n - 1)
    return discrete_legendre(m.n, deg).values @ m.probs


@dataclass(frozen=True, eq=False)
class SmoothedMarginal:
    base: np.ndarray
    coefficients: np.ndarray
    chosen: list[int]
    k_star: int
    criterion_trace: np.ndarray | None
    raw_probs: np.ndarray
    probs: np.ndarray

    def as_marginal(self) -> Marginal:
        return Marginal(self.probs)


def smooth_marginal(m: Marginal, total_weight: float, max_degree: int | None = None,
                    full: bool = False) -> SmoothedMarginal:
    """Discrete-Legendre expansion of ``m`` around the uniform distribution.

    Terms are picked with the same penalized rule as the field
    (penalty log(N)/N); ``full=True`` keeps all ``n - 1`` terms. Negative
    values are clipped and the result renormalized.
    """
    n = m.n
    deg = n - 1 if full else max_degree
    basis = discrete_legendre(n, deg)
    coefs = basis.values @ m.probs
    if full:
        chosen = list(range(1, basis.m + 1))
        trace = None
    else:
        order, k_star, trace, _ = schwarz_select(coefs, total_weight)
        chosen = [int(i) + 1 for i in order[:k_star]]
    idx = np.array([j - 1 for j in chosen], dtype=int)
    base = np.full(n, 1.0 / n)
    raw = base * (1.0 + coefs[idx] @ basis.values[idx])
    probs = np.maximum(raw, 0.0)
    probs = probs / probs.sum()
    return SmoothedMarginal(base, coefs, chosen, len(chosen), trace, raw, probs)


@dataclass(frozen=True, eq=False)
class GraphonEstimate:
    """Graphon cell values on the empirical-CDF geometry.

    ``field.cell_values`` is clipped at zero; ``raw_values`` is not.
    """

    field: DensityField
    raw_values: np.ndarray
    scale: float
    scale_convention: str
    marginal_mode: str
    selection_mode: str
    selection: Selection | None
    marginal_x: np.ndarray
    marginal_y: np.ndarray

    @property
    def values(self) -> np.ndarray:
        return self.field.cell_values

    @property
    def clipped_cells(self) -> int:
        return int(np.sum(self.raw_values < 0))

    @property
    def over_one_cells(self) -> int:
        return int(np.sum(self.values > 1))

    def metadata(self) -> dict:
        return {
            "scale_convention": self.scale_convention,
            "scale": self.scale,
            "marginal_mode": self.marginal_mode,
            "selection_mode": self.selection_mode,
            "k_star": self.selection.k_star if self.selection is not None else None,
            "clipped_cells": self.clipped_cells,
            "over_one_cells": self.over_one_cells,
        }


def estimate_graphon(g: Graph, marginal_mode: str = "empirical", selection_mode: str = "full",
                     raw_density: bool = False, max_degree: int | None = None) -> GraphonEstimate:
    """Graphon estimate ``scale * p(x) p(y) * C(x, y)``.

    ``selection_mode="full"`` uses the full-rank field (which equals the
    empirical one); ``"selected"`` keeps only the components chosen by
    the penalized rule. ``raw_density=True`` sets ``scale = 1``.
    """
    if marginal_mode not in MARGINAL_MODES:
        raise ValueError(f"marginal_mode must be one of {MARGINAL_MODES}")
    if selection_mode not in SELECTION_MODES:
        raise ValueError(f"selection_mode must be one of {SELECTION_MODES}")
    mx, my = marginals(g)
    full = selection_mode == "full"
    bx, by = graph_bases(g, max_degree, full_rank=full)
    lp = lp_coefficients(joint_pmf(g), bx, by)
    sel = None if full else select_components(lp)
    cfield = reconstruct_field(lp, sel)

    if marginal_mode == "smoothed":
        px = smooth_marginal(mx, lp.total_weight, max_degree).probs
        py = px if my is mx else smooth_marginal(my, lp.total_weight, max_degree).probs
    else:
        px, py = mx.probs, my.probs

    if raw_density:
        scale, convention = 1.0, "raw-density"
    else:
        scale, convention = lp.total_weight, "N"
    raw = scale * np.outer(px, py) * cfield.cell_values
    est = GraphonEstimate(
        DensityField(np.maximum(raw, 0.0), mx, my, "graphon"),
        raw, scale, convention, marginal_mode, selection_mode, sel, px, py,
    )
    if not raw_density and est.over_one_cells:
        warnings.warn(f"{est.over_one_cells} graphon cells exceed 1", RuntimeWarning, stacklevel=2)
    return est


def evaluate_graphon_grid(w: GraphonEstimate, resolution: int) -> Grid:
    return evaluate_grid(w.field, resolution, clip_nonnegative=True)


def block_means(w: GraphonEstimate, sizes, zero_diagonal: bool = True) -> np.ndarray:
    """Average estimate over node pairs in each pair of contiguous blocks."""
    labels = np.repeat(np.arange(len(sizes)), sizes)
    if labels.size != w.values.shape[0]:
        raise ValueError("block sizes do not cover the graph")
    keep = ~np.eye(labels.size, dtype=bool) if zero_diagonal else np.ones((labels.size,) * 2, bool)
    out = np.empty((len(sizes), len(sizes)))
    for a in range(len(sizes)):
        for b in range(len(sizes)):
            mask = np.outer(labels == a, labels == b) & keep
            out[a, b] = w.values[mask].mean()
    return out
