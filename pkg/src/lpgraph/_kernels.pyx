# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: weighted Gram-Schmidt, LP transform, field synthesis.

Every reduction runs in a fixed left-to-right order, so results do not
depend on BLAS threading.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, pow

cnp.import_array()


cdef double _wdot(const double[::1] a, const double[::1] b,
                  const double[::1] w, Py_ssize_t s) noexcept nogil:
    cdef Py_ssize_t i
    cdef double acc = 0.0
    for i in range(s):
        acc += a[i] * b[i] * w[i]
    return acc


def lp_polynomials(t1, weights, int max_degree, double tol, bint powers=False):
    cdef const double[::1] t = np.ascontiguousarray(t1, dtype=np.float64)
    cdef const double[::1] w = np.ascontiguousarray(weights, dtype=np.float64)
    cdef Py_ssize_t s = t.shape[0]
    q_arr = np.empty((max_degree + 1, s), dtype=np.float64)
    cdef double[:, ::1] q = q_arr
    v_arr = np.empty(s, dtype=np.float64)
    cdef double[::1] v = v_arr
    cdef Py_ssize_t d, i, x, rep
    cdef double pre, res, c
    cdef int m = 0
    for x in range(s):
        q[0, x] = 1.0
    with nogil:
        for d in range(1, max_degree + 1):
            for x in range(s):
                if powers:
                    v[x] = pow(t[x], <double>d)
                else:
                    v[x] = t[x] * q[d - 1, x]
            pre = sqrt(_wdot(v, v, w, s))
            for rep in range(2):
                for i in range(d):
                    c = _wdot(v, q[i], w, s)
                    for x in range(s):
                        v[x] -= c * q[i, x]
            res = sqrt(_wdot(v, v, w, s))
            if not res > tol * pre:
                break
            for x in range(s):
                q[d, x] = v[x] / res
            m = d
    return q_arr[1:m + 1].copy()


def lp_transform(probs, tx, ty):
    cdef const double[:, ::1] p = np.ascontiguousarray(probs, dtype=np.float64)
    cdef const double[:, ::1] a = np.ascontiguousarray(tx, dtype=np.float64)
    cdef const double[:, ::1] b = np.ascontiguousarray(ty, dtype=np.float64)
    cdef Py_ssize_t mx = a.shape[0], my = b.shape[0]
    cdef Py_ssize_t nx = p.shape[0], ny = p.shape[1]
    if a.shape[1] != nx or b.shape[1] != ny:
        raise ValueError("basis and joint dimensions differ")
    r_arr = np.zeros((mx, ny), dtype=np.float64)
    out_arr = np.zeros((mx, my), dtype=np.float64)
    cdef double[:, ::1] r = r_arr
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t j, k, x, y
    cdef double ax, acc
    with nogil:
        for j in range(mx):
            for x in range(nx):
                ax = a[j, x]
                if ax == 0.0:
                    continue
                for y in range(ny):
                    r[j, y] += ax * p[x, y]
        for j in range(mx):
            for k in range(my):
                acc = 0.0
                for y in range(ny):
                    acc += r[j, y] * b[k, y]
                out[j, k] = acc
    return out_arr


def reconstruct(coefs, js, ks, tx, ty):
    cdef const double[::1] c = np.ascontiguousarray(coefs, dtype=np.float64)
    cdef const long[::1] jj = np.ascontiguousarray(js, dtype=np.int64)
    cdef const long[::1] kk = np.ascontiguousarray(ks, dtype=np.int64)
    cdef const double[:, ::1] a = np.ascontiguousarray(tx, dtype=np.float64)
    cdef const double[:, ::1] b = np.ascontiguousarray(ty, dtype=np.float64)
    cdef Py_ssize_t nx = a.shape[1], ny = b.shape[1]
    out_arr = np.ones((nx, ny), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t i, x, y
    cdef double cx
    with nogil:
        for i in range(c.shape[0]):
            for x in range(nx):
                cx = c[i] * a[jj[i], x]
                if cx == 0.0:
                    continue
                for y in range(ny):
                    out[x, y] += cx * b[kk[i], y]
    return out_arr
