"""Pure-Python / numpy implementations of the hot kernels.

Used when the compiled extension is unavailable (or explicitly disabled via
``SUBRAYLEIGH_PURE=1``).  Must stay numerically equivalent to
``_core.pyx``; the benchmark in ``benchmarks/`` compares both.
"""

from __future__ import annotations

import numpy as np

BACKEND_NAME = "python"


def fresnel_sum(
    nodes_x: np.ndarray,
    weights_x: np.ndarray,
    nodes_y: np.ndarray,
    weights_y: np.ndarray,
    k: float,
    source_distance: float,
    detector_distance: float,
    emitter_x: float,
    emitter_y: float,
    detector_x: float,
    detector_y: float,
) -> complex:
    """Weighted sum of the quadratic-phase propagation integrand on a tensor grid.

    Returns sum_{p,q} wx_p wy_q exp(i k/2 [((Ex-x_p)^2+(Ey-y_q)^2)/R_z
    + ((x_p-Dx)^2+(y_q-Dy)^2)/r_z]).
    """
    px = (k / 2.0) * ((emitter_x - nodes_x) ** 2 / source_distance + (nodes_x - detector_x) ** 2 / detector_distance)
    py = (k / 2.0) * ((emitter_y - nodes_y) ** 2 / source_distance + (nodes_y - detector_y) ** 2 / detector_distance)
    fx = weights_x * np.exp(1j * px)
    fy = weights_y * np.exp(1j * py)
    # separable integrand: the double sum factorizes into two 1-D sums
    return complex(fx.sum() * fy.sum())


def permanent_ryser(matrix: np.ndarray) -> complex:
    """Permanent by inclusion-exclusion over column subsets (Gray-code order).

    O(n 2^n); intended for n <= ~20, guarded to n <= 12 by the caller.
    """
    a = np.asarray(matrix, dtype=np.complex128)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("permanent needs a square matrix")
    if n == 0:
        return 1.0 + 0.0j
    row_sums = np.zeros(n, dtype=np.complex128)
    total = 0.0 + 0.0j
    prev_gray = 0
    sign = 1
    for s in range(1, 1 << n):
        gray = s ^ (s >> 1)
        diff = gray ^ prev_gray
        j = diff.bit_length() - 1
        if gray & diff:
            row_sums += a[:, j]
        else:
            row_sums -= a[:, j]
        prev_gray = gray
        sign = -sign  # parity of |S| alternates along the Gray sequence
        prod = np.prod(row_sums)
        total += sign * prod
    if n % 2 == 1:
        total = -total
    return complex(total)
