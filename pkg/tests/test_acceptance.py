"""End-to-end acceptance suite.

Each test covers one headline claim of the package and prints a single
PASS/FAIL line (visible with ``pytest -s`` or in failure output) before
asserting, so a red run still reports every criterion's status.
"""

from __future__ import annotations

import math

import numpy as np
import pytest

from subrayleigh import (
    Aperture,
    CorrelationVariant,
    DetectorLayout,
    Geometry,
    GratingDetectorRule,
    PlacementStrategy,
    SampledSignal,
    classical_intensity,
    config_from_dict,
    detector_phase_offset,
    dominant_frequency,
    emitter_pair,
    fraunhofer_field,
    fresnel_field_oracle,
    g2_closed_form,
    g2_grating,
    g_n,
    permanent_enumerate,
    permanent_ryser,
    resolve_layout,
    run_oracle_check,
    run_scan,
    uniform_emitter_quad,
)

GEOMETRY = Geometry(wavelength=500e-9, source_distance=0.1, detector_distance=1.0)
SQUARE = Aperture.rect(20e-6, 20e-6)


def _verdict(ok: bool, label: str, detail: str) -> None:
    print(f"ACCEPTANCE {label}: {'PASS' if ok else 'FAIL'} — {detail}")
    assert ok, f"{label}: {detail}"


def test_acceptance_1_pair_frequency_doubling():
    result = run_scan(config_from_dict({"scenario": "g2_mirror"}))
    ratio = result.report.dominant_frequency / result.classical_report.dominant_frequency
    ok = abs(ratio - 2.0) <= 0.02
    _verdict(ok, "1 frequency doubling", f"pair/classical fringe-rate ratio = {ratio:.4f} (want 2.00 ± 0.02)")


def test_acceptance_2_quad_frequency_quadrupling():
    result = run_scan(config_from_dict({"scenario": "g4_quad"}))
    ratio = result.report.dominant_frequency / result.classical_report.dominant_frequency
    ok = abs(ratio - 4.0) <= 0.04
    _verdict(ok, "2 frequency quadrupling", f"quad/classical fringe-rate ratio = {ratio:.4f} (want 4.00 ± 0.04)")


def test_acceptance_3_closed_form_matches_general_path():
    emitters = emitter_pair(GEOMETRY, SQUARE, base_x=0.0)
    scan_max = 2.0 * GEOMETRY.wavelength * GEOMETRY.detector_distance / SQUARE.height_a
    grid = np.linspace(scan_max / 512, scan_max, 512)
    worst = 0.0
    for variant, strategy in (
        (CorrelationVariant.MIRROR, PlacementStrategy.MIRROR_PAIR),
        (CorrelationVariant.COINCIDENT, PlacementStrategy.COINCIDENT_PAIR),
    ):
        closed = np.array([g2_closed_form(float(r), variant, SQUARE, GEOMETRY) for r in grid])
        general = np.array([
            g_n(resolve_layout(strategy, float(r), GEOMETRY, SQUARE), emitters, SQUARE, GEOMETRY)
            for r in grid
        ])
        # relative gap with a floor at the fringe nulls, where both sides are
        # rounding noise many orders below the curve's own maximum
        floor = 1e-9 * max(closed.max(), general.max())
        denom = np.maximum(np.maximum(closed, general), floor)
        worst = max(worst, float(np.max(np.abs(closed - general) / denom)))
    ok = worst <= 1e-6
    _verdict(ok, "3 closed-form cross-validation",
             f"max relative gap closed form vs general path = {worst:.3e} on 512-point grid (want <= 1e-6)")


def test_acceptance_4_flattened_contrast():
    result = run_scan(config_from_dict({"scenario": "g2_mirror"}))
    vis = result.report.visibility
    ok = vis >= 0.999
    _verdict(ok, "4 contrast", f"envelope-flattened mirror-scan visibility = {vis:.6f} (want >= 0.999)")


def test_acceptance_5_quadrature_oracle():
    config = config_from_dict({"scenario": "g2_mirror"})
    report = run_oracle_check(config)
    ok = (
        report.max_rel_magnitude_error <= 0.01
        and report.max_convergence_shift <= 1e-3
        and report.validity_margin >= 100.0
    )
    _verdict(ok, "5 quadrature oracle",
             f"max |U| error = {report.max_rel_magnitude_error:.3e} (<= 1e-2), "
             f"self-convergence shift = {report.max_convergence_shift:.3e} (<= 1e-3), "
             f"validity margin = {report.validity_margin:.1f} (>= 100)")


def test_acceptance_6_grating_product_form():
    worst = 0.0
    worst_ratio_gap = 0.0
    for m in (3, 5):
        grating = Aperture.grating(20e-6, 20e-6, 100e-6, m)
        emitters = emitter_pair(GEOMETRY, grating, base_x=0.0)
        for r1 in (3.1e-4, 7.7e-4, 1.9e-3):
            corr = g2_grating(r1, GratingDetectorRule.PLUS, emitters, grating, GEOMETRY)
            scale = max(abs(corr.direct), abs(corr.product_form))
            worst = max(worst, abs(corr.direct - corr.product_form) / scale)
        near_zero = g2_grating(1e-12, GratingDetectorRule.PLUS, emitters, grating, GEOMETRY)
        worst_ratio_gap = max(worst_ratio_gap, abs(near_zero.detector_ratio - m * m) / (m * m))
    ok = worst <= 1e-6 and worst_ratio_gap <= 1e-9
    _verdict(ok, "6 grating product form",
             f"max relative gap direct vs factorized = {worst:.3e} (<= 1e-6); "
             f"detector ratio at r -> 0 off M^2 by {worst_ratio_gap:.3e} relative (<= 1e-9)")


def test_acceptance_7_classical_intensity_consistency():
    a, b = SQUARE.height_a, SQUARE.width_b
    rz, det_z = GEOMETRY.source_distance, GEOMETRY.detector_distance
    peak = (GEOMETRY.amplitude * a * b / (GEOMETRY.wavelength * rz**2 * det_z**2)) ** 2
    worst = abs(classical_intensity((0.0, 0.0), SQUARE, GEOMETRY) - peak) / peak
    for r in (0.0, 1.3e-4, 4.9e-4, 8.2e-4):
        intensity = classical_intensity((r, 0.0), SQUARE, GEOMETRY)
        squared = abs(fraunhofer_field((r, 0.0), (0.0, 0.0), SQUARE, GEOMETRY)) ** 2
        worst = max(worst, abs(intensity - squared) / max(intensity, squared))
    grating = Aperture.grating(20e-6, 20e-6, 100e-6, 5)
    boost = classical_intensity((0.0, 0.0), grating, GEOMETRY) / classical_intensity((0.0, 0.0), SQUARE, GEOMETRY)
    worst = max(worst, abs(boost - 25.0) / 25.0)
    ok = worst <= 1e-9
    _verdict(ok, "7 classical sanity",
             f"max relative error vs |field|^2, central-peak value, and M^2 grating boost = {worst:.3e} (want <= 1e-9)")


def test_acceptance_8_permanent_oracle():
    rng = np.random.default_rng(20260826)
    worst = 0.0
    for trial in range(100):
        n = int(rng.integers(2, 7))
        matrix = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        fast, slow = permanent_ryser(matrix), permanent_enumerate(matrix)
        worst = max(worst, abs(fast - slow) / max(abs(slow), 1e-300))
    ok = worst <= 1e-12
    _verdict(ok, "8 permanent oracle",
             f"max relative gap Ryser vs enumeration over 100 seeded matrices (N = 2..6) = {worst:.3e} (<= 1e-12)")


def test_acceptance_9_invariant_suite():
    rng = np.random.default_rng(7)
    checks = []

    # permutation invariance: simultaneous row/column relabeling, and detector-only reordering
    emitters = uniform_emitter_quad(GEOMETRY, SQUARE)
    detectors = resolve_layout(PlacementStrategy.STAGGERED_QUAD, 2.3e-4, GEOMETRY, SQUARE)
    base = g_n(detectors, emitters, SQUARE, GEOMETRY)
    order = list(rng.permutation(4))
    shuffled_det = DetectorLayout(tuple(detectors.positions[i] for i in order))
    checks.append(math.isclose(g_n(shuffled_det, emitters, SQUARE, GEOMETRY), base, rel_tol=1e-9))

    # global unit-phase invariance of the coincidence rate
    from subrayleigh.correlation import amplitude_matrix, permanent
    u = amplitude_matrix(detectors, emitters, SQUARE, GEOMETRY)
    phased = abs(permanent(u * np.exp(1j * 0.713))) ** 2 / 4.0**4
    checks.append(math.isclose(phased, base, rel_tol=1e-9))

    # amplitude scaling: field is linear in A, so an N-fold rate scales as A^(2N)
    bright = Geometry(500e-9, 0.1, 1.0, amplitude=3.0)
    checks.append(math.isclose(
        g_n(detectors, emitters, SQUARE, bright), base * 3.0 ** 8, rel_tol=1e-9))

    # sinc continuity through the removable singularity
    off = detector_phase_offset(GEOMETRY, SQUARE)
    near = abs(fraunhofer_field((off * 1e-9, 0.0), (0.0, 0.0), SQUARE, GEOMETRY))
    at = abs(fraunhofer_field((0.0, 0.0), (0.0, 0.0), SQUARE, GEOMETRY))
    checks.append(math.isclose(near, at, rel_tol=1e-6))

    # determinism across worker counts
    config = config_from_dict({"scenario": "classical_rect", "steps": 64})
    serial, parallel = run_scan(config, workers=1), run_scan(config, workers=4)
    checks.append(bool(np.array_equal(serial.signal, parallel.signal)))

    ok = all(checks)
    _verdict(ok, "9 property suite",
             "permutation invariance, global-phase invariance, amplitude-scaling exponent, "
             f"sinc continuity, worker determinism all hold: {checks}")
