"""Graph correlation density field: empirical, reconstructed and gridded.

A field is piecewise constant on the unit square. Cell ``(x, y)`` is the
rectangle ``(F_X(x-1), F_X(x)] x (F_Y(y-1), F_Y(y)]`` with area
``p_X(x) p_Y(y)``; off-support nodes have zero width.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .graph import JointPMF, Marginal, quantile
from .transform import LPMatrix

__all__ = [
    "DensityField",
    "Selection",
    "Grid",
    "schwarz_select",
    "empirical_field",
    "select_components",
    "reconstruct_field",
    "integrate_squared",
    "evaluate_grid",
]


@dataclass(frozen=True, eq=False)
class DensityField:
    cell_values: np.ndarray
    marginal_x: Marginal
    marginal_y: Marginal
    kind: str

    @property
    def breakpoints_u(self) -> np.ndarray:
        return self.marginal_x.breakpoints

    @property
    def breakpoints_v(self) -> np.ndarray:
        return self.marginal_y.breakpoints

    @property
    def cell_areas(self) -> np.ndarray:
        return np.outer(self.marginal_x.probs, self.marginal_y.probs)

    def integral(self) -> float:
        return float(np.sum(self.cell_values * self.cell_areas))


@dataclass(frozen=True, eq=False)
class Selection:
    """Coefficients kept by the penalized cumulative-sum rule.

    ``criterion_trace[k]`` is the criterion after ``k`` coefficients,
    with ``criterion_trace[0] = 0`` for the empty model.
    """

    chosen: list[tuple[int, int]]
    k_star: int
    criterion_trace: np.ndarray
    penalty: float

    def to_dict(self) -> dict:
        return {
            "k_star": self.k_star,
            "chosen": [[j, k] for j, k in self.chosen],
            "criterion_trace": self.criterion_trace.tolist(),
            "penalty": self.penalty,
        }


def schwarz_select(values, total_weight: float):
    """Rank ``values**2`` descending and maximize cumsum - k log(N)/N.

    Returns ``(order, k_star, trace, penalty)`` where ``order`` indexes
    ``values`` by decreasing square (ties in input order). ``k_star`` is
    0 unless some criterion value is strictly positive.
    """
    if not total_weight > 1:
        raise ValueError("selection needs total weight N > 1")
    v = np.asarray(values, dtype=np.float64).ravel()
    sq = v * v
    order = np.argsort(-sq, kind="stable")
    penalty = float(np.log(total_weight) / total_weight)
    ks = np.arange(v.size + 1)
    trace = np.concatenate(([0.0], np.cumsum(sq[order]))) - ks * penalty
    k_star = int(np.argmax(trace))
    if not trace[k_star] > 0:
        k_star = 0
    return order, k_star, trace, penalty


def empirical_field(joint: JointPMF, mx: Marginal, my: Marginal) -> DensityField:
    """Cell values ``p(x, y) / (p(x) p(y))``, zero off the support."""
    cells = np.zeros_like(joint.probs)
    sx, sy = mx.support, my.support
    block = joint.probs[np.ix_(sx, sy)] / np.outer(mx.probs[sx], my.probs[sy])
    cells[np.ix_(sx, sy)] = block
    return DensityField(cells, mx, my, "empirical")


def select_components(lp: LPMatrix) -> Selection:
    order, k_star, trace, penalty = schwarz_select(lp.coeffs, lp.total_weight)
    my = lp.coeffs.shape[1]
    chosen = [(int(i) // my + 1, int(i) % my + 1) for i in order[:k_star]]
    return Selection(chosen, k_star, trace, penalty)


def reconstruct_field(lp: LPMatrix, sel: Selection | None = None, bx=None, by=None) -> DensityField:
    """``1 + sum LP[j,k] T_j(x) T_k(y)`` over the selected pairs.

    ``sel=None`` uses every coefficient in ``lp``. Truncated fields can
    go negative; values are left raw.
    """
    bx = lp.basis_x if bx is None else bx
    by = lp.basis_y if by is None else by
    if sel is None:
        mx, my = lp.coeffs.shape
        js, ks = np.divmod(np.arange(mx * my), my)
    else:
        js = np.array([j - 1 for j, _ in sel.chosen], dtype=np.int64)
        ks = np.array([k - 1 for _, k in sel.chosen], dtype=np.int64)
    coefs = lp.coeffs[js, ks]
    cells = kernels.reconstruct(coefs, js.astype(np.int64), ks.astype(np.int64), bx.values, by.values)
    cells[bx.marginal.probs == 0, :] = 0.0
    cells[:, by.marginal.probs == 0] = 0.0
    return DensityField(cells, bx.marginal, by.marginal, "reconstructed")


def integrate_squared(f: DensityField) -> float:
    return float(np.sum(f.cell_values ** 2 * f.cell_areas))


@dataclass(frozen=True, eq=False)
class Grid:
    """Field values at the midpoints of a uniform ``resolution x resolution`` grid.

    ``values[i, j]`` sits at ``(u[i], v[j])``; ``raw`` holds the values
    before any clipping.
    """

    u: np.ndarray
    v: np.ndarray
    values: np.ndarray
    raw: np.ndarray
    clip: bool

    @property
    def resolution(self) -> int:
        return self.u.size

    def rows(self):
        for i, ui in enumerate(self.u):
            for j, vj in enumerate(self.v):
                yield float(ui), float(vj), float(self.values[i, j])

    def to_dict(self) -> dict:
        return {"resolution": self.resolution, "clip": self.clip, "values": self.values.tolist()}


def evaluate_grid(f: DensityField, resolution: int, clip_nonnegative: bool = False) -> Grid:
    if resolution < 2:
        raise ValueError("grid resolution must be at least 2")
    mid = (np.arange(resolution) + 0.5) / resolution
    xu = quantile(f.marginal_x, mid)
    yv = quantile(f.marginal_y, mid)
    raw = f.cell_values[np.ix_(xu, yv)]
    values = np.maximum(raw, 0.0) if clip_nonnegative else raw.copy()
    return Grid(mid, mid.copy(), values, raw, clip_nonnegative)
