"""LP graph transform: cross moments of the X and Y score functions."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .basis import LPBasis, build_basis
from .graph import Graph, JointPMF, joint_pmf, marginals

__all__ = ["LPMatrix", "lp_coefficients", "lpinfor", "lp_transform", "graph_bases"]


@dataclass(frozen=True, eq=False)
class LPMatrix:
    """``coeffs[j-1, k-1] = LP[j, k]`` together with the bases and total weight."""

    coeffs: np.ndarray
    total_weight: float
    basis_x: LPBasis
    basis_y: LPBasis

    @property
    def shape(self) -> tuple[int, int]:
        return self.coeffs.shape

    def restrict(self, J: int, K: int) -> "LPMatrix":
        """Leading ``J x K`` block of coefficients (bases kept whole)."""
        c = self.coeffs[:J, :K]
        c.flags.writeable = False
        return LPMatrix(c, self.total_weight, self.basis_x, self.basis_y)

    def rows(self):
        """Yield ``(j, k, lp)`` with 1-based indices in row-major order."""
        mx, my = self.coeffs.shape
        for j in range(mx):
            for k in range(my):
                yield j + 1, k + 1, float(self.coeffs[j, k])

    def to_dict(self) -> dict:
        return {
            "total_weight": self.total_weight,
            "m_x": self.shape[0],
            "m_y": self.shape[1],
            "coefficients": [{"j": j, "k": k, "lp": v} for j, k, v in self.rows()],
        }


def lp_coefficients(joint: JointPMF, bx: LPBasis, by: LPBasis) -> LPMatrix:
    if bx.values.shape[1] != joint.n or by.values.shape[1] != joint.n:
        raise ValueError(
            f"basis sizes ({bx.values.shape[1]}, {by.values.shape[1]}) do not match joint of size {joint.n}"
        )
    coeffs = kernels.lp_transform(joint.probs, bx.values, by.values)
    coeffs.flags.writeable = False
    return LPMatrix(coeffs, joint.total_weight, bx, by)


def lpinfor(lp: LPMatrix, chosen=None, grid: tuple[int, int] | None = None) -> float:
    """Sum of squared coefficients.

    ``chosen`` restricts the sum to 1-based ``(j, k)`` pairs (e.g. a
    Selection's ``chosen``); ``grid=(J, K)`` restricts it to the leading
    ``J x K`` block.
    """
    c = lp.coeffs
    if chosen is not None:
        return float(sum(c[j - 1, k - 1] ** 2 for j, k in chosen))
    if grid is not None:
        c = c[: grid[0], : grid[1]]
    return float(np.sum(c * c))


def graph_bases(g: Graph, max_degree: int | None = None, full_rank: bool = False):
    """X and Y bases for a graph; undirected graphs share one basis."""
    mx, my = marginals(g)
    if full_rank:
        bx = build_basis(mx, mx.support.size - 1)
    else:
        bx = build_basis(mx, max_degree)
    if my is mx:
        return bx, bx
    if full_rank:
        return bx, build_basis(my, my.support.size - 1)
    return bx, build_basis(my, max_degree)


def lp_transform(g: Graph, max_degree: int | None = None, full_rank: bool = False) -> LPMatrix:
    bx, by = graph_bases(g, max_degree, full_rank)
    return lp_coefficients(joint_pmf(g), bx, by)
