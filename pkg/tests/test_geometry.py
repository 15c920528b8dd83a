import math

import pytest
from hypothesis import given, strategies as st

from subrayleigh import (
    Aperture,
    DetectorLayout,
    EmitterArray,
    Geometry,
    PlacementStrategy,
    detector_phase_offset,
    emitter_pair,
    emitter_phase_offset,
    resolve_layout,
    staggered_emitter_quad,
    uniform_emitter_quad,
)


def test_wavenumber(geometry):
    assert geometry.wavenumber == pytest.approx(12566370.614359172, rel=1e-12)


@pytest.mark.parametrize("field", ["wavelength", "source_distance", "detector_distance", "amplitude"])
@pytest.mark.parametrize("bad", [0.0, -1.0, float("nan"), float("inf")])
def test_geometry_rejects_nonpositive(field, bad):
    kwargs = dict(wavelength=500e-9, source_distance=0.1, detector_distance=1.0, amplitude=1.0)
    kwargs[field] = bad
    with pytest.raises(ValueError):
        Geometry(**kwargs)


def test_phase_offsets(geometry, square_aperture):
    # pi * R_z / (k a) and pi * r_z / (k a) at the default bench
    assert emitter_phase_offset(geometry, square_aperture) == pytest.approx(1.25e-3, rel=1e-12)
    assert detector_phase_offset(geometry, square_aperture) == pytest.approx(1.25e-2, rel=1e-12)


def test_detector_offset_is_half_fringe(geometry, square_aperture):
    # the offset equals lambda * r_z / (2 a): half a classical fringe period
    expected = geometry.wavelength * geometry.detector_distance / (2 * square_aperture.height_a)
    assert detector_phase_offset(geometry, square_aperture) == pytest.approx(expected, rel=1e-12)


def test_aperture_validation():
    with pytest.raises(ValueError):
        Aperture.rect(0.0, 1e-5)
    with pytest.raises(ValueError):
        Aperture.grating(2e-5, 2e-5, 1e-5, 3)  # slits would overlap
    with pytest.raises(ValueError):
        Aperture.grating(2e-5, 2e-5, 1e-4, 0)
    with pytest.raises(ValueError):
        Aperture(Aperture.rect(1e-5, 1e-5).kind, 1e-5, 1e-5, slit_separation_d=1e-4)


def test_grating_extent(five_slit_grating, square_aperture):
    assert five_slit_grating.full_extent_x() == pytest.approx(4 * 100e-6 + 20e-6)
    assert square_aperture.full_extent_x() == 20e-6
    assert five_slit_grating.slit_count == 5
    assert square_aperture.slit_count == 1


def test_point_collections_validate():
    with pytest.raises(ValueError):
        EmitterArray(())
    with pytest.raises(ValueError):
        DetectorLayout(((float("nan"), 0.0),))


def test_emitter_pair_positions(geometry, square_aperture):
    pair = emitter_pair(geometry, square_aperture, base_x=1e-4)
    assert pair.positions[0] == (1e-4, 0.0)
    assert pair.positions[1][0] == pytest.approx(1e-4 + 1.25e-3, rel=1e-12)


def test_uniform_quad_spacing(geometry, square_aperture):
    quad = uniform_emitter_quad(geometry, square_aperture)
    xs = [p[0] for p in quad.positions]
    steps = [b - a for a, b in zip(xs, xs[1:])]
    assert all(s == pytest.approx(0.625e-3, rel=1e-12) for s in steps)


def test_staggered_quad_positions(geometry, square_aperture):
    xs = [p[0] for p in staggered_emitter_quad(geometry, square_aperture).positions]
    delta = emitter_phase_offset(geometry, square_aperture)
    assert xs == pytest.approx([-delta, 0.0, 0.5 * delta, delta], rel=1e-12)


@given(r=st.floats(min_value=1e-6, max_value=0.1, allow_nan=False))
def test_mirror_layout_is_symmetric(r):
    geometry = Geometry(500e-9, 0.1, 1.0)
    aperture = Aperture.rect(20e-6, 20e-6)
    layout = resolve_layout(PlacementStrategy.MIRROR_PAIR, r, geometry, aperture)
    (x1, y1), (x2, y2) = layout.positions
    assert x1 == -x2 and y1 == y2 == 0.0


@given(r=st.floats(min_value=1e-6, max_value=0.1, allow_nan=False))
def test_coincident_layouts_collapse(r):
    geometry = Geometry(500e-9, 0.1, 1.0)
    aperture = Aperture.rect(20e-6, 20e-6)
    pair = resolve_layout(PlacementStrategy.COINCIDENT_PAIR, r, geometry, aperture)
    quad = resolve_layout(PlacementStrategy.COINCIDENT_QUAD, r, geometry, aperture)
    assert set(pair.positions) == {(r, 0.0)}
    assert set(quad.positions) == {(r, 0.0)}


def test_resolve_layout_rejects_nonfinite(geometry, square_aperture):
    with pytest.raises(ValueError):
        resolve_layout(PlacementStrategy.MIRROR_PAIR, float("inf"), geometry, square_aperture)
