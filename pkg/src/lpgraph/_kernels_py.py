"""Pure numpy versions of the compiled kernels.

Signatures and results match ``_kernels.pyx``; the two agree to rounding
(not bitwise, since BLAS dot products may reorder sums).
"""

import numpy as np


def lp_polynomials(t1, weights, max_degree, tol, powers=False):
    """Orthonormalize the polynomial sequence in ``t1`` under ``weights``.

    Returns an ``(m, s)`` array whose rows are the degree-1..m polynomials
    in ``t1``, orthonormal (and orthogonal to constants) under the
    weighted inner product ``<f, g> = sum(f * g * weights)``.

    With ``powers=False`` the degree-d candidate is ``t1 * q_{d-1}``; with
    ``powers=True`` it is ``t1 ** d``. Both span the same space; the
    first is far better conditioned.
    """
    t1 = np.ascontiguousarray(t1, dtype=np.float64)
    w = np.ascontiguousarray(weights, dtype=np.float64)
    s = t1.shape[0]
    q = np.empty((max_degree + 1, s))
    q[0] = 1.0
    m = 0
    for d in range(1, max_degree + 1):
        v = t1 ** d if powers else t1 * q[d - 1]
        pre = np.sqrt(np.dot(v * v, w))
        for _ in range(2):
            for i in range(d):
                v = v - np.dot(v * w, q[i]) * q[i]
        res = np.sqrt(np.dot(v * v, w))
        if not res > tol * pre:
            break
        q[d] = v / res
        m = d
    return q[1:m + 1].copy()


def lp_transform(probs, tx, ty):
    """Cross moments ``tx @ probs @ ty.T``."""
    probs = np.ascontiguousarray(probs, dtype=np.float64)
    tx = np.ascontiguousarray(tx, dtype=np.float64)
    ty = np.ascontiguousarray(ty, dtype=np.float64)
    return (tx @ probs) @ ty.T


def reconstruct(coefs, js, ks, tx, ty):
    """``1 + sum_i coefs[i] * outer(tx[js[i]], ty[ks[i]])``."""
    tx = np.asarray(tx, dtype=np.float64)
    ty = np.asarray(ty, dtype=np.float64)
    out = np.ones((tx.shape[1], ty.shape[1]))
    for c, j, k in zip(coefs, js, ks):
        out += c * np.outer(tx[j], ty[k])
    return out
