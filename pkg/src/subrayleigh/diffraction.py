"""Complex diffracted field from one emitter to one detector.

Two evaluation paths are provided for a rectangular opening:

* :func:`fraunhofer_field` -- the far-field closed form, fast and
  singularity-safe (the sine-quotient factors are evaluated as scaled sinc
  functions, so the central lobe is an ordinary value, not a 0/0).
* :func:`fresnel_field_oracle` -- direct composite Gauss-Legendre quadrature
  of the quadratic-phase propagation integral.  It is the independent check
  of the far-field step and must not share code with the closed form.

The oracle's constant prefactor is normalized so that its far-field limit
coincides with the closed form exactly (the two conventions otherwise differ
by a constant factor R_z * r_z and an overall sign of i; neither survives any
|.|^2 output, but field-level comparisons need a single convention).

:func:`grating_field` extends the closed form to an M-slit grating through
two geometric-series factors, evaluated by direct summation so the principal
maxima (where the closed quotient form is 0/0) are exact.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels
from .errors import NonConvergenceError
from .geometry import Aperture, ApertureKind, Geometry


def safe_sinc(x: float) -> float:
    """sin(x)/x with a Taylor series below |x| < 1e-4 (removable singularity)."""
    if abs(x) < 1e-4:
        x2 = x * x
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0
    return math.sin(x) / x


def fraunhofer_field(
    detector: tuple[float, float],
    emitter: tuple[float, float],
    aperture: Aperture,
    geometry: Geometry,
) -> complex:
    """Far-field amplitude of a rectangular opening between one emitter and one detector.

    Returns i A lambda / pi^2 times both quadratic phase factors and the two
    sine-quotient factors sin(c*u)/u with c = k*a/(2 R_z r_z),
    u = E_x r_z + D_x R_z (and the b/y analogue).
    """
    if aperture.kind is not ApertureKind.RECT:
        raise ValueError("fraunhofer_field handles the rectangular opening; use grating_field")
    k = geometry.wavenumber
    rz_src = geometry.source_distance
    rz_det = geometry.detector_distance
    ex, ey = emitter
    dx, dy = detector

    cx = k * aperture.height_a / (2.0 * rz_src * rz_det)
    cy = k * aperture.width_b / (2.0 * rz_src * rz_det)
    ux = ex * rz_det + dx * rz_src
    uy = ey * rz_det + dy * rz_src
    factor_x = cx * safe_sinc(cx * ux)
    factor_y = cy * safe_sinc(cy * uy)

    phase_src = (k / 2.0) * (2.0 * rz_src * rz_src + ex * ex + ey * ey) / rz_src
    phase_det = (k / 2.0) * (2.0 * rz_det * rz_det + dx * dx + dy * dy) / rz_det
    prefactor = 1j * geometry.amplitude * geometry.wavelength / (math.pi ** 2)
    return prefactor * cmath.exp(1j * phase_src) * cmath.exp(1j * phase_det) * factor_x * factor_y


def _grating_sums(
    detector_x: float,
    emitter_x: float,
    aperture: Aperture,
    geometry: Geometry,
) -> tuple[complex, complex]:
    """The two M-term geometric-series factors, by direct summation.

    Direct summation (rather than the closed quotient) is exact at the
    principal maxima where the quotient degenerates to 0/0.
    """
    k = geometry.wavenumber
    d = aperture.slit_separation_d
    m = aperture.slit_count_m
    phi_src = k * d * emitter_x / geometry.source_distance
    phi_det = -k * d * detector_x / geometry.detector_distance
    s_src = complex(1.0, 0.0)
    s_det = complex(1.0, 0.0)
    for n in range(1, m):
        s_src += cmath.exp(1j * (n * phi_src))
        s_det += cmath.exp(1j * (n * phi_det))
    return s_src, s_det


def grating_field(
    detector: tuple[float, float],
    emitter: tuple[float, float],
    aperture: Aperture,
    geometry: Geometry,
) -> complex:
    """M-slit grating amplitude: single-slit closed form times two series factors.

    Restricted to the x-z plane; nonzero y components are a contract
    violation because the slit-offset factorization only holds along x.
    """
    if aperture.kind is not ApertureKind.GRATING:
        raise ValueError("grating_field needs a grating aperture")
    if detector[1] != 0.0 or emitter[1] != 0.0:
        raise ValueError("grating_field is restricted to y = 0 (x-z plane only)")
    single = fraunhofer_field(
        detector, emitter, Aperture.rect(aperture.height_a, aperture.width_b), geometry
    )
    s_src, s_det = _grating_sums(detector[0], emitter[0], aperture, geometry)
    return single * s_src * s_det


def field(
    detector: tuple[float, float],
    emitter: tuple[float, float],
    aperture: Aperture,
    geometry: Geometry,
) -> complex:
    """Dispatch on aperture kind."""
    if aperture.kind is ApertureKind.GRATING:
        return grating_field(detector, emitter, aperture, geometry)
    return fraunhofer_field(detector, emitter, aperture, geometry)


@dataclass(frozen=True)
class QuadratureSpec:
    """Composite Gauss-Legendre sampling density for the quadrature oracle.

    Per slit and per axis the opening is split into ``subdivisions`` equal
    panels with ``points_per_axis`` nodes each.
    """

    points_per_axis: int = 32
    subdivisions: int = 4

    def __post_init__(self):
        if self.points_per_axis < 2:
            raise ValueError("points_per_axis must be >= 2")
        if self.subdivisions < 1:
            raise ValueError("subdivisions must be >= 1")


@lru_cache(maxsize=32)
def _gauss_legendre(n: int) -> tuple[tuple[float, ...], tuple[float, ...]]:
    nodes, weights = np.polynomial.legendre.leggauss(n)
    return tuple(nodes), tuple(weights)


def _composite_nodes(center: float, half_width: float, spec: QuadratureSpec) -> tuple[np.ndarray, np.ndarray]:
    """Composite Gauss-Legendre nodes/weights on [center - hw, center + hw]."""
    base_nodes, base_weights = _gauss_legendre(spec.points_per_axis)
    base_nodes = np.asarray(base_nodes)
    base_weights = np.asarray(base_weights)
    edges = np.linspace(center - half_width, center + half_width, spec.subdivisions + 1)
    nodes = []
    weights = []
    for i in range(spec.subdivisions):
        mid = 0.5 * (edges[i] + edges[i + 1])
        hw = 0.5 * (edges[i + 1] - edges[i])
        nodes.append(mid + hw * base_nodes)
        weights.append(hw * base_weights)
    return np.concatenate(nodes), np.concatenate(weights)


def _fresnel_eval(
    detector: tuple[float, float],
    emitter: tuple[float, float],
    aperture: Aperture,
    geometry: Geometry,
    spec: QuadratureSpec,
) -> complex:
    k = geometry.wavenumber
    rz_src = geometry.source_distance
    rz_det = geometry.detector_distance
    half_a = 0.5 * aperture.height_a
    half_b = 0.5 * aperture.width_b

    # slits are centered at x = n * d, n = 0 .. M-1 (one slit at the origin)
    if aperture.kind is ApertureKind.GRATING:
        centers = [n * aperture.slit_separation_d for n in range(aperture.slit_count_m)]
    else:
        centers = [0.0]
    nodes_y, weights_y = _composite_nodes(0.0, half_b, spec)

    total = 0.0 + 0.0j
    for cx in centers:
        nodes_x, weights_x = _composite_nodes(cx, half_a, spec)
        total += _kernels.fresnel_sum(
            np.ascontiguousarray(nodes_x),
            np.ascontiguousarray(weights_x),
            np.ascontiguousarray(nodes_y),
            np.ascontiguousarray(weights_y),
            k,
            rz_src,
            rz_det,
            emitter[0],
            emitter[1],
            detector[0],
            detector[1],
        )

    # Constant normalized so the far-field limit of this integral equals
    # fraunhofer_field exactly (see module docstring).
    prefactor = (
        1j
        * geometry.amplitude
        / (geometry.wavelength * rz_src ** 2 * rz_det ** 2)
        * cmath.exp(1j * k * rz_src)
        * cmath.exp(1j * k * rz_det)
    )
    return prefactor * total


def fresnel_field_oracle(
    detector: tuple[float, float],
    emitter: tuple[float, float],
    aperture: Aperture,
    geometry: Geometry,
    spec: QuadratureSpec = QuadratureSpec(),
    convergence_rtol: float | None = None,
) -> complex:
    """Quadrature evaluation of the quadratic-phase propagation integral.

    When ``convergence_rtol`` is given, the integral is recomputed with
    doubled subdivisions and a :class:`NonConvergenceError` (carrying both
    magnitudes) is raised if |U| moves by more than the tolerance; the finer
    result is returned otherwise.
    """
    coarse = _fresnel_eval(detector, emitter, aperture, geometry, spec)
    if convergence_rtol is None:
        return coarse
    fine_spec = QuadratureSpec(spec.points_per_axis, 2 * spec.subdivisions)
    fine = _fresnel_eval(detector, emitter, aperture, geometry, fine_spec)
    scale = max(abs(fine), abs(coarse))
    if scale > 0.0 and abs(abs(fine) - abs(coarse)) > convergence_rtol * scale:
        raise NonConvergenceError(
            f"quadrature did not converge at detector {detector}: "
            f"|U| changed from {abs(coarse):.6e} to {abs(fine):.6e} "
            f"on subdivision doubling ({spec.subdivisions} -> {fine_spec.subdivisions})",
            trace=[(spec.subdivisions, abs(coarse)), (fine_spec.subdivisions, abs(fine))],
        )
    return fine


def fraunhofer_validity_margin(
    detector: tuple[float, float],
    aperture: Aperture,
    geometry: Geometry,
) -> float:
    """Far-field trust ratio r_z / ((k/2) max|rho_0|^2); >> 1 means trustworthy.

    max|rho_0|^2 is the squared half-diagonal of the full aperture extent
    (the whole grating span for a grating).  The detector argument is part of
    the interface; the plane separation r_z stands in for the actual
    aperture-to-detector distance.
    """
    half_x = 0.5 * aperture.full_extent_x()
    half_y = 0.5 * aperture.width_b
    max_rho_sq = half_x * half_x + half_y * half_y
    return geometry.detector_distance / ((geometry.wavenumber / 2.0) * max_rho_sq)
