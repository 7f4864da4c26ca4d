"""Degree-weighted discrete orthonormal LP polynomials.

The first score is the standardized mid-distribution transform

    T1(x) = sqrt(12) * (Fmid(x) - 1/2) / sqrt(1 - sum p^3),

and higher scores come from Gram-Schmidt on polynomials in T1 under the
inner product ``<f, g> = sum_x f(x) g(x) p(x)``. Nodes outside the
support carry the value 0 in every score.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .graph import DegenerateMarginalError, Marginal, quantile

__all__ = [
    "DEFAULT_MAX_DEGREE",
    "GS_TOL",
    "LPBasis",
    "t1",
    "build_basis",
    "default_degree",
    "eval_S",
    "discrete_legendre",
]

DEFAULT_MAX_DEGREE = 10
GS_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class LPBasis:
    """Values of T_1..T_m at every node (rows), for one marginal."""

    marginal: Marginal
    values: np.ndarray

    @property
    def m(self) -> int:
        return self.values.shape[0]

    @property
    def support(self) -> np.ndarray:
        return self.marginal.support

    @property
    def breakpoints(self) -> np.ndarray:
        return self.marginal.breakpoints

    def gram(self) -> np.ndarray:
        """Weighted Gram matrix of ``[1, T_1, ..., T_m]``; identity up to rounding."""
        v = np.vstack([np.ones(self.marginal.n), self.values])
        return (v * self.marginal.probs) @ v.T

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "support": [int(i) for i in self.support],
            "values": self.values.tolist(),
            "breakpoints": self.breakpoints.tolist(),
        }


def _check_support(m: Marginal):
    if m.support.size < 2:
        raise DegenerateMarginalError(
            f"degenerate marginal: support has {m.support.size} node(s), need at least 2"
        )


def t1(m: Marginal) -> np.ndarray:
    _check_support(m)
    p = m.probs
    out = np.zeros(m.n)
    s = m.support
    out[s] = np.sqrt(12.0) * (m.midcdf[s] - 0.5) / np.sqrt(1.0 - np.sum(p ** 3))
    return out


def default_degree(m: Marginal) -> int:
    return min(DEFAULT_MAX_DEGREE, m.support.size - 1)


def build_basis(m: Marginal, max_degree: int | None = None, *, tol: float = GS_TOL,
                powers: bool = False) -> LPBasis:
    """Orthonormal LP basis of degree at most ``max_degree``.

    Construction stops at ``min(max_degree, |support| - 1)`` or as soon
    as a candidate's residual after projection falls below ``tol`` times
    its norm before projection.

    ``powers=True`` feeds the raw powers ``T1**d`` to Gram-Schmidt; the
    default feeds ``T1 * T_{d-1}``, which spans the same polynomials but
    stays well conditioned up to full rank.
    """
    _check_support(m)
    cap = m.support.size - 1
    if max_degree is None:
        max_degree = default_degree(m)
    if max_degree < 1:
        raise ValueError("max_degree must be at least 1")
    deg = min(max_degree, cap)
    s = m.support
    on_support = kernels.lp_polynomials(t1(m)[s], m.probs[s], deg, tol, powers)
    values = np.zeros((on_support.shape[0], m.n))
    values[:, s] = on_support
    values.flags.writeable = False
    return LPBasis(m, values)


def eval_S(b: LPBasis, j: int, u):
    """``S_j(u) = T_j(Q(u))`` for 1-based ``j``; ``u`` scalar or array in (0, 1]."""
    if not 1 <= j <= b.m:
        raise IndexError(f"basis index {j} outside 1..{b.m}")
    x = quantile(b.marginal, u)
    out = b.values[j - 1][x]
    return float(out) if np.ndim(out) == 0 else out


def discrete_legendre(n: int, max_degree: int | None = None) -> LPBasis:
    """LP basis of the discrete uniform distribution on ``n`` points."""
    if n < 2:
        raise ValueError("discrete Legendre basis needs n >= 2")
    return build_basis(Marginal.uniform(n), max_degree)
