import pytest

from subrayleigh import Aperture, Geometry


@pytest.fixture
def geometry():
    """Default bench: 500 nm light, source plane 0.1 m out, detectors 1 m out."""
    return Geometry(wavelength=500e-9, source_distance=0.1, detector_distance=1.0, amplitude=1.0)


@pytest.fixture
def square_aperture():
    """20 um x 20 um opening."""
    return Aperture.rect(20e-6, 20e-6)


@pytest.fixture
def five_slit_grating():
    """Five 20 um slits, centers 100 um apart."""
    return Aperture.grating(20e-6, 20e-6, 100e-6, 5)
