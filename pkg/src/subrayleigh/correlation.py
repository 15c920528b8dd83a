"""N-fold intensity correlations of N single-photon emitters behind an aperture.

The central object is the N x N amplitude matrix U with U[i, j] the diffracted
field from emitter j to detector i.  The N-fold coincidence rate is

    g_n = (1 / N**N) * |permanent(U)|**2

which for independent single-photon emitters counts all N! ways the photons
can distribute over the detectors.  The 1/N**N factor is the flat-average
normalization over which emitter fired into which mode; any fixed convention
cancels from every ratio and visibility reported by this package.

Also here: closed-form two-detector correlations for the canonical pair of
emitters separated by pi R_z/(k a) (exact, singularity-free evaluations plus
the simplified textbook-style variants that keep only the r-dependence), the
classical single-emitter intensity, and the grating correlation together with
its product-form prediction.
"""

from __future__ import annotations

import cmath
import enum
import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .diffraction import field, fraunhofer_field, safe_sinc
from .errors import SingularPointError
from .geometry import (
    Aperture,
    ApertureKind,
    DetectorLayout,
    EmitterArray,
    Geometry,
    detector_phase_offset,
)

#: Hard ceiling for permanent evaluation; Ryser is O(n * 2^n) and beyond this
#: size a single call stops being interactive.
MAX_PERMANENT_SIZE = 12

#: Matrix size at or below which :func:`permanent` enumerates permutations.
_ENUMERATION_CUTOFF = 6


def permanent_enumerate(matrix: np.ndarray) -> complex:
    """Permanent by direct permutation enumeration; O(n * n!) reference path."""
    m = np.asarray(matrix, dtype=complex)
    _check_square(m)
    n = m.shape[0]
    total = 0.0 + 0.0j
    for perm in itertools.permutations(range(n)):
        product = 1.0 + 0.0j
        for i, j in enumerate(perm):
            product *= m[i, j]
        total += product
    return total


def permanent_ryser(matrix: np.ndarray) -> complex:
    """Permanent via Ryser's inclusion-exclusion with Gray-code updates; O(n * 2^n)."""
    m = np.ascontiguousarray(matrix, dtype=complex)
    _check_square(m)
    return _kernels.permanent_ryser(m)


def permanent(matrix: np.ndarray) -> complex:
    """Matrix permanent, dispatching on size.

    Enumeration up to 6 x 6, Ryser above; refuses matrices larger than
    ``MAX_PERMANENT_SIZE`` rather than silently taking minutes.
    """
    m = np.asarray(matrix, dtype=complex)
    _check_square(m)
    n = m.shape[0]
    if n > MAX_PERMANENT_SIZE:
        raise ValueError(
            f"permanent limited to {MAX_PERMANENT_SIZE} x {MAX_PERMANENT_SIZE} matrices, got {n} x {n}"
        )
    if n <= _ENUMERATION_CUTOFF:
        return permanent_enumerate(m)
    return permanent_ryser(m)


def _check_square(m: np.ndarray) -> None:
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise ValueError(f"permanent needs a square matrix, got shape {m.shape}")


def amplitude_matrix(
    detectors: DetectorLayout,
    emitters: EmitterArray,
    aperture: Aperture,
    geometry: Geometry,
) -> np.ndarray:
    """N x N matrix of single-emitter fields; entry (i, j) = field(detector i, emitter j)."""
    if len(detectors) != len(emitters):
        raise ValueError(
            f"need equally many detectors and emitters, got {len(detectors)} and {len(emitters)}"
        )
    n = len(detectors)
    u = np.empty((n, n), dtype=complex)
    for i, det in enumerate(detectors.positions):
        for j, em in enumerate(emitters.positions):
            u[i, j] = field(det, em, aperture, geometry)
    return u


def g_n(
    detectors: DetectorLayout,
    emitters: EmitterArray,
    aperture: Aperture,
    geometry: Geometry,
) -> float:
    """N-fold coincidence rate (1/N**N) |permanent(U)|**2; non-negative."""
    u = amplitude_matrix(detectors, emitters, aperture, geometry)
    n = u.shape[0]
    return abs(permanent(u)) ** 2 / float(n) ** n


def g2_two_term(
    detectors: DetectorLayout,
    emitters: EmitterArray,
    aperture: Aperture,
    geometry: Geometry,
) -> float:
    """Two-detector rate written out as (1/4)|U11 U22 + U12 U21|^2.

    Independent of the permanent machinery on purpose; used to cross-check
    :func:`g_n` at N = 2.
    """
    if len(detectors) != 2 or len(emitters) != 2:
        raise ValueError("g2_two_term requires exactly two detectors and two emitters")
    d1, d2 = detectors.positions
    e1, e2 = emitters.positions
    u11 = field(d1, e1, aperture, geometry)
    u12 = field(d1, e2, aperture, geometry)
    u21 = field(d2, e1, aperture, geometry)
    u22 = field(d2, e2, aperture, geometry)
    return abs(u11 * u22 + u12 * u21) ** 2 / 4.0


class CorrelationVariant(enum.Enum):
    """Closed-form two-detector placements and evaluation styles.

    COINCIDENT / MIRROR are the exact closed forms for both detectors at +r,
    respectively detectors at +r and -r; they match :func:`g_n` to machine
    precision at every r (all removable singularities are evaluated by
    partial-fraction sinc decomposition).

    The *_REFERENCE variants are the simplified shapes
    g = (E / B)**2 sin^2(k a r / r_z) with B_coincident = r^2 + pi r_z r/(k a)
    and B_mirror = (4/pi)(r^2 - delta'^2): useful for reading off the fringe
    structure, but they drop constant factors and B_mirror's zeros are
    genuine poles of the quotient (handled via SingularPointError / the
    limit flag).
    """

    COINCIDENT = "coincident"
    MIRROR = "mirror"
    COINCIDENT_REFERENCE = "coincident_reference"
    MIRROR_REFERENCE = "mirror_reference"


def _pair_constants(aperture: Aperture, geometry: Geometry) -> tuple[float, float, float, float]:
    """(q, delta', E, C_b) shared by the closed-form pair correlations.

    q = k a / r_z (fringe wavenumber in detector coordinate),
    delta' = pi r_z / (k a) (detector-plane offset; q * delta' = pi),
    E = 8 A^2 r_z^2 / (pi^2 k^2 R_z^2) (field-strength constant),
    C_b = (k b / (4 R_z r_z^2))^4 (y-axis central-lobe constant).
    """
    k = geometry.wavenumber
    rz_src = geometry.source_distance
    rz_det = geometry.detector_distance
    q = k * aperture.height_a / rz_det
    delta = math.pi / q
    e_const = 8.0 * geometry.amplitude ** 2 * rz_det ** 2 / (math.pi ** 2 * k ** 2 * rz_src ** 2)
    c_b = (k * aperture.width_b / (4.0 * rz_src * rz_det ** 2)) ** 4
    return q, delta, e_const, c_b


def g2_closed_form(
    r: float,
    variant: CorrelationVariant,
    aperture: Aperture,
    geometry: Geometry,
    limit_at_singularity: bool = False,
) -> float:
    """Closed-form two-detector correlation at scan coordinate r (y = 0).

    Emitters are the canonical pair at x = 0 and x = pi R_z/(k a); detectors
    follow the variant.  See :class:`CorrelationVariant` for the exact vs
    reference distinction.  At a genuine pole of a reference variant a
    :class:`SingularPointError` is raised unless ``limit_at_singularity`` is
    set, in which case the exact (g_n) value is returned instead.
    """
    if aperture.kind is not ApertureKind.RECT:
        raise ValueError("closed-form pair correlations assume a rectangular opening")
    q, delta, e_const, c_b = _pair_constants(aperture, geometry)
    amp = e_const * e_const * c_b
    if variant is CorrelationVariant.COINCIDENT:
        return amp * _coincident_quotient(r, q, delta) ** 2
    if variant is CorrelationVariant.MIRROR:
        return amp * _mirror_quotient(r, q, delta) ** 2
    s2 = math.sin(q * r) ** 2
    if variant is CorrelationVariant.COINCIDENT_REFERENCE:
        b = r * r + delta * r
        exact = CorrelationVariant.COINCIDENT
    elif variant is CorrelationVariant.MIRROR_REFERENCE:
        b = (4.0 / math.pi) * (r * r - delta * delta)
        exact = CorrelationVariant.MIRROR
    else:  # pragma: no cover - enum is exhaustive
        raise ValueError(f"unknown correlation variant {variant!r}")
    if b == 0.0:
        if limit_at_singularity:
            return g2_closed_form(r, exact, aperture, geometry)
        raise SingularPointError(
            f"reference form {variant.value} is singular at r = {r!r}; "
            "pass limit_at_singularity=True for the exact value"
        )
    return (e_const / b) ** 2 * s2


def _coincident_quotient(r: float, q: float, delta: float) -> float:
    """sin(q r) / (r (r + delta)) for q delta = pi, total on the real line.

    Partial fractions split the quotient into two scaled sinc terms whose
    removable singularities (r = 0 and r = -delta, where sin(q r) also
    vanishes) evaluate cleanly:
    1/(r (r + delta)) = (1/delta)(1/r - 1/(r + delta)) and
    sin(q r) = -sin(q (r + delta)).
    """
    return (q / delta) * (safe_sinc(q * r) + safe_sinc(q * (r + delta)))


def _mirror_quotient(r: float, q: float, delta: float) -> float:
    """delta sin(q r) / (r (r - delta)(r + delta)), total on the real line.

    Same partial-fraction treatment with three removable singularities at
    r = 0 and r = +/- delta.
    """
    return -(q / delta) * (
        safe_sinc(q * r)
        + 0.5 * safe_sinc(q * (r - delta))
        + 0.5 * safe_sinc(q * (r + delta))
    )


def classical_intensity(
    detector: tuple[float, float],
    aperture: Aperture,
    geometry: Geometry,
) -> float:
    """Single-emitter (on-axis) intensity |U|^2 at one detector.

    Rectangle: the squared product of the central amplitude
    A a b / (lambda R_z^2 r_z^2) and the two sinc factors, i.e. exactly
    |fraunhofer_field|^2 of the on-axis emitter.  Grating: the same envelope
    times the M-slit interference factor |sum_n exp(i k n d x / r_z)|^2,
    evaluated by direct summation (exact at principal maxima); restricted to
    y-axis detector coordinate 0 because the slit row runs along x.
    """
    k = geometry.wavenumber
    rz_src = geometry.source_distance
    rz_det = geometry.detector_distance
    x, y = detector
    cx = k * aperture.height_a / (2.0 * rz_det)
    cy = k * aperture.width_b / (2.0 * rz_det)
    peak = geometry.amplitude * aperture.height_a * aperture.width_b / (
        geometry.wavelength * rz_src ** 2 * rz_det ** 2
    )
    base = (peak * safe_sinc(cx * x) * safe_sinc(cy * y)) ** 2
    if aperture.kind is ApertureKind.GRATING:
        if y != 0.0:
            raise ValueError("grating intensity is restricted to detector y = 0")
        base *= dirichlet_power(k * aperture.slit_separation_d * x / rz_det, aperture.slit_count_m)
    return base


def dirichlet_power(phase: float, count: int) -> float:
    """|sum_{n=0}^{count-1} exp(i n phase)|^2 by direct summation.

    Equals sin^2(count * phase / 2) / sin^2(phase / 2) away from the
    principal maxima and count^2 at them; direct summation makes the
    removable singularities ordinary points.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    total = sum(cmath.exp(1j * n * phase) for n in range(count))
    return abs(total) ** 2


class GratingDetectorRule(enum.Enum):
    """Second-detector placement for the grating pair correlation.

    With the first detector at x = r1, PLUS puts the second at
    x = +(r1 + pi r_z/(k d)) and MINUS at x = -(r1 + pi r_z/(k d)): half an
    interference period offset in the grating phase.
    """

    PLUS = "plus"
    MINUS = "minus"


@dataclass(frozen=True)
class GratingCorrelation:
    """Direct grating two-detector rate and its factorized prediction.

    ``product_form`` is g2 of the single-slit problem at the same detector
    and emitter positions, times the constant emitter-side interference
    powers |S_1|^2 |S_2|^2, times the detector-side Dirichlet ratio
    (1 - cos(2 M theta)) / (1 - cos(2 theta)) with theta = k d r1 / r_z,
    evaluated by direct summation.  The factorization holds for odd M;
    ``product_form`` is None when it was not requested.
    """

    direct: float
    product_form: float | None
    detector_ratio: float | None


def g2_grating(
    r1: float,
    rule: GratingDetectorRule,
    emitters: EmitterArray,
    aperture: Aperture,
    geometry: Geometry,
    with_product_form: bool = True,
) -> GratingCorrelation:
    """Two-detector correlation behind an M-slit grating.

    The first detector sits at (r1, 0); the second follows ``rule``.  With
    ``with_product_form`` the factorized odd-M prediction is evaluated
    alongside (a ValueError for even M, where the half-period detector
    offset does not factorize).
    """
    if aperture.kind is not ApertureKind.GRATING:
        raise ValueError("g2_grating needs a grating aperture")
    if len(emitters) != 2:
        raise ValueError("g2_grating requires exactly two emitters")
    k = geometry.wavenumber
    rz_det = geometry.detector_distance
    offset = math.pi * rz_det / (k * aperture.slit_separation_d)
    sign = 1.0 if rule is GratingDetectorRule.PLUS else -1.0
    r2 = sign * (r1 + offset)
    detectors = DetectorLayout(((r1, 0.0), (r2, 0.0)))
    direct = g_n(detectors, emitters, aperture, geometry)
    if not with_product_form:
        return GratingCorrelation(direct, None, None)
    m = aperture.slit_count_m
    if m % 2 == 0:
        raise ValueError("the product-form prediction holds for odd slit counts only")
    single_slit = Aperture.rect(aperture.height_a, aperture.width_b)
    base = g_n(detectors, emitters, single_slit, geometry)
    # emitter-side interference powers are constant across the detector scan
    d = aperture.slit_separation_d
    s1 = dirichlet_power(k * d * emitters.positions[0][0] / geometry.source_distance, m)
    s2 = dirichlet_power(k * d * emitters.positions[1][0] / geometry.source_distance, m)
    # detector-side ratio sin^2(M theta)/sin^2(theta), theta = k d r1 / r_z:
    # the half-period offset of detector 2 cancels the half-angle factors for
    # odd M.  Direct summation keeps the r1 -> 0 limit (M^2) an ordinary value.
    theta = k * d * r1 / rz_det
    ratio = dirichlet_power(2.0 * theta, m)
    return GratingCorrelation(direct, base * s1 * s2 * ratio, ratio)
