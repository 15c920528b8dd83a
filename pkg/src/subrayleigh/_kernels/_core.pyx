# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: quadrature phase sums and the Ryser permanent.

Numerically equivalent to ``fallback.py``; selected at import time by
``subrayleigh._kernels``.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport cos, sin

BACKEND_NAME = "compiled"


def fresnel_sum(
    double[::1] nodes_x,
    double[::1] weights_x,
    double[::1] nodes_y,
    double[::1] weights_y,
    double k,
    double source_distance,
    double detector_distance,
    double emitter_x,
    double emitter_y,
    double detector_x,
    double detector_y,
):
    """Weighted sum of the quadratic-phase propagation integrand on a tensor grid."""
    cdef Py_ssize_t nx = nodes_x.shape[0]
    cdef Py_ssize_t ny = nodes_y.shape[0]
    cdef Py_ssize_t p
    cdef double half_k = 0.5 * k
    cdef double dx, ph
    cdef double sx_re = 0.0, sx_im = 0.0, sy_re = 0.0, sy_im = 0.0

    # separable integrand: accumulate the two 1-D phase sums independently
    for p in range(nx):
        dx = nodes_x[p]
        ph = half_k * ((emitter_x - dx) * (emitter_x - dx) / source_distance
                       + (dx - detector_x) * (dx - detector_x) / detector_distance)
        sx_re += weights_x[p] * cos(ph)
        sx_im += weights_x[p] * sin(ph)
    for p in range(ny):
        dx = nodes_y[p]
        ph = half_k * ((emitter_y - dx) * (emitter_y - dx) / source_distance
                       + (dx - detector_y) * (dx - detector_y) / detector_distance)
        sy_re += weights_y[p] * cos(ph)
        sy_im += weights_y[p] * sin(ph)
    return complex(sx_re * sy_re - sx_im * sy_im, sx_re * sy_im + sx_im * sy_re)


def permanent_ryser(matrix):
    """Permanent by inclusion-exclusion over column subsets (Gray-code order)."""
    a = np.ascontiguousarray(matrix, dtype=np.complex128)
    cdef Py_ssize_t n = a.shape[0]
    if a.shape[0] != a.shape[1]:
        raise ValueError("permanent needs a square matrix")
    if n == 0:
        return 1.0 + 0.0j
    cdef cnp.complex128_t[:, ::1] m = a
    cdef cnp.complex128_t[::1] row_sums = np.zeros(n, dtype=np.complex128)
    cdef cnp.complex128_t total = 0, prod
    cdef unsigned long long s, gray, diff, prev_gray = 0
    cdef int j, i, sign = 1
    for s in range(1, (<unsigned long long> 1) << n):
        gray = s ^ (s >> 1)
        diff = gray ^ prev_gray
        j = 0
        while not (diff & ((<unsigned long long> 1) << j)):
            j += 1
        if gray & diff:
            for i in range(n):
                row_sums[i] = row_sums[i] + m[i, j]
        else:
            for i in range(n):
                row_sums[i] = row_sums[i] - m[i, j]
        prev_gray = gray
        sign = -sign
        prod = row_sums[0]
        for i in range(1, n):
            prod = prod * row_sums[i]
        total = total + sign * prod
    if n % 2 == 1:
        total = -total
    return complex(total)
