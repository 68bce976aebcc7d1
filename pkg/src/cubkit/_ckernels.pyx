# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled three-term recurrence kernels.

Same contract as :mod:`cubkit._pykernels`; one pass over the points with the
whole degree loop kept in registers.
"""

import numpy as np
cimport numpy as cnp

cnp.import_array()


def three_term_table(A, B, C, t):
    cdef const double[::1] a = np.ascontiguousarray(A, dtype=np.float64)
    cdef const double[::1] b = np.ascontiguousarray(B, dtype=np.float64)
    cdef const double[::1] c = np.ascontiguousarray(C, dtype=np.float64)
    cdef const double[::1] x = np.ascontiguousarray(t, dtype=np.float64)
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t npts = x.shape[0]
    out_arr = np.empty((npts, n + 1), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t i, k
    cdef double xi, p0, p1, p2
    with nogil:
        for i in range(npts):
            xi = x[i]
            p0 = 1.0
            out[i, 0] = p0
            if n == 0:
                continue
            p1 = a[0] * xi + b[0]
            out[i, 1] = p1
            for k in range(1, n):
                p2 = (a[k] * xi + b[k]) * p1 - c[k] * p0
                out[i, k + 1] = p2
                p0 = p1
                p1 = p2
    return out_arr


def three_term_divdiff(A, B, C, s, t):
    cdef const double[::1] a = np.ascontiguousarray(A, dtype=np.float64)
    cdef const double[::1] b = np.ascontiguousarray(B, dtype=np.float64)
    cdef const double[::1] c = np.ascontiguousarray(C, dtype=np.float64)
    cdef const double[::1] xs = np.ascontiguousarray(s, dtype=np.float64)
    cdef const double[::1] xt = np.ascontiguousarray(t, dtype=np.float64)
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t npts = xs.shape[0]
    out_arr = np.zeros((npts, n + 1), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t i, k
    cdef double si, ti, ps0, ps1, ps2, d0, d1, d2
    with nogil:
        for i in range(npts):
            if n == 0:
                continue
            si = xs[i]
            ti = xt[i]
            ps0 = 1.0
            ps1 = a[0] * si + b[0]
            d0 = 0.0
            d1 = a[0]
            out[i, 1] = d1
            for k in range(1, n):
                d2 = a[k] * ps1 + (a[k] * ti + b[k]) * d1 - c[k] * d0
                out[i, k + 1] = d2
                d0 = d1
                d1 = d2
                ps2 = (a[k] * si + b[k]) * ps1 - c[k] * ps0
                ps0 = ps1
                ps1 = ps2
    return out_arr
