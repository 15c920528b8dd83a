"""Fringe statistics of uniformly sampled non-negative scan signals.

Everything operates on :class:`SampledSignal`: a strictly increasing,
uniformly spaced grid paired with non-negative values.  The three headline
statistics (dominant fringe frequency, near-zero count, visibility) are
collected into a :class:`FringeReport`.

The frequency estimate deliberately uses the mean-subtracted spectrum: a
sin^2 fringe of spatial frequency f in the raw signal shows up at f itself
after mean subtraction (sin^2(pi f r) = 1/2 - cos(2 pi f r)/2), so reported
frequencies are directly comparable across classical and correlation scans.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InsufficientDataError, NumericalError

#: Minimum number of samples for any analysis; below this the spectrum has
#: too few bins for interpolation to mean anything.
MIN_SAMPLES = 16

#: Fraction of the signal maximum under which a sample counts as "zero".
DEFAULT_ZERO_THRESHOLD = 1e-6

#: Minimum number of fringe periods the window must contain for the
#: frequency estimate to be reported (the spectral peak of a single period
#: is not localized enough to interpolate).
_MIN_CYCLES = 1.9


@dataclass(frozen=True)
class SampledSignal:
    """Non-negative values on a uniform, strictly increasing grid.

    Uniformity is enforced to 1e-9 relative spacing; the DFT-based frequency
    estimate silently degrades on non-uniform grids, so this is a hard error
    rather than a warning.
    """

    grid: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        grid = np.asarray(self.grid, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if grid.ndim != 1 or values.ndim != 1 or grid.shape != values.shape:
            raise ValueError("grid and values must be 1-D arrays of equal length")
        if grid.size < MIN_SAMPLES:
            raise ValueError(f"need at least {MIN_SAMPLES} samples, got {grid.size}")
        steps = np.diff(grid)
        if not np.all(steps > 0):
            raise ValueError("grid must be strictly increasing")
        step = steps[0]
        if np.max(np.abs(steps - step)) > 1e-9 * abs(step):
            raise ValueError("grid must be uniformly spaced (1e-9 relative)")
        if not np.all(np.isfinite(values)):
            raise ValueError("values must be finite")
        if np.any(values < 0):
            raise ValueError("values must be non-negative")
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)

    @property
    def step(self) -> float:
        return float(self.grid[1] - self.grid[0])

    @property
    def span(self) -> float:
        """Window length counted in sample steps (n * step)."""
        return self.step * self.grid.size


@dataclass(frozen=True)
class FringeReport:
    """Headline fringe statistics of one scan signal."""

    dominant_frequency: float
    zero_count: int
    visibility: float

    def to_dict(self) -> dict:
        freq = self.dominant_frequency
        return {
            # None (JSON null) when no dominant fringe could be resolved
            "dominant_frequency": None if math.isnan(freq) else freq,
            "zero_count": self.zero_count,
            "visibility": self.visibility,
        }


def dominant_frequency(signal: SampledSignal) -> float:
    """Spatial frequency (cycles per unit grid length) of the strongest fringe.

    DFT of the mean-subtracted values, peak bin, then quadratic
    interpolation of the log-free magnitudes of the peak and its neighbors.
    Raises :class:`InsufficientDataError` when the window holds fewer than
    two fringe periods or the signal carries no oscillation at all.
    """
    values = signal.values - signal.values.mean()
    spectrum = np.abs(np.fft.rfft(values))
    if spectrum.size < 3:
        raise InsufficientDataError("too few spectral bins for a frequency estimate")
    # bin 0 is the (removed) mean; exclude it from the peak search
    peak = int(np.argmax(spectrum[1:])) + 1
    scale = float(np.max(np.abs(values))) if values.size else 0.0
    if scale == 0.0 or spectrum[peak] <= 1e-12 * scale * values.size:
        raise InsufficientDataError("signal carries no measurable oscillation")
    if peak + 1 < spectrum.size:
        alpha, beta, gamma = spectrum[peak - 1], spectrum[peak], spectrum[peak + 1]
        denom = alpha - 2.0 * beta + gamma
        shift = 0.0 if denom == 0.0 else 0.5 * (alpha - gamma) / denom
        shift = float(np.clip(shift, -0.5, 0.5))
    else:
        shift = 0.0
    cycles = peak + shift
    if cycles < _MIN_CYCLES:
        raise InsufficientDataError(
            f"window holds only {cycles:.2f} fringe periods; need >= 2 for a stable estimate"
        )
    return cycles / signal.span


def count_zeros(signal: SampledSignal, threshold: float = DEFAULT_ZERO_THRESHOLD) -> int:
    """Number of near-zero dips: maximal runs of samples below threshold * max.

    Counting runs rather than pointwise minima makes the result independent of
    how many samples happen to land inside one dip, and counts a dip touching
    the window boundary exactly once.  A constant signal has no dips.
    """
    if not 0.0 < threshold < 1.0:
        raise ValueError("threshold must lie strictly between 0 and 1")
    peak = float(np.max(signal.values))
    if peak == 0.0:
        return 0
    below = signal.values < threshold * peak
    # count rising edges of the boolean mask (runs of consecutive True)
    edges = np.diff(below.astype(int))
    return int(np.sum(edges == 1)) + int(below[0])


def visibility(signal: SampledSignal) -> float:
    """(max - min) / (max + min); requires a not-identically-zero signal."""
    hi = float(np.max(signal.values))
    lo = float(np.min(signal.values))
    if hi + lo == 0.0:
        raise NumericalError("visibility undefined for an identically zero signal")
    return (hi - lo) / (hi + lo)


def flatten_envelope(signal: SampledSignal, envelope: np.ndarray) -> SampledSignal:
    """Divide out a strictly positive envelope, preserving the grid.

    The values/envelope quotient isolates the oscillatory factor of a signal
    of the form envelope(r) * fringe(r); frequency and visibility of the
    result then describe the fringe alone.
    """
    env = np.asarray(envelope, dtype=float)
    if env.shape != signal.values.shape:
        raise ValueError("envelope must match the signal shape")
    if not np.all(np.isfinite(env)) or np.any(env <= 0):
        raise ValueError("envelope must be strictly positive and finite")
    return SampledSignal(signal.grid, signal.values / env)


def fringe_report(signal: SampledSignal, threshold: float = DEFAULT_ZERO_THRESHOLD) -> FringeReport:
    """Bundle the three headline statistics of one signal."""
    return FringeReport(
        dominant_frequency=dominant_frequency(signal),
        zero_count=count_zeros(signal, threshold),
        visibility=visibility(signal),
    )


def abbe_range_check(
    scan_max: float,
    enhancement: float,
    aperture_height_a: float,
    wavelength: float,
    detector_distance: float,
) -> bool:
    """Does the scan window reach at least one full enhanced fringe period?

    The classical fringe period in the detector coordinate is
    2 pi r_z / (k a) = lambda r_z / a; an n-fold correlation compresses it by
    ``enhancement``.  Returns True when scan_max covers one compressed
    period, i.e. k * a * scan_max / (2 r_z) >= 2 pi / enhancement.
    """
    if enhancement <= 0:
        raise ValueError("enhancement must be positive")
    k = 2.0 * math.pi / wavelength
    return k * aperture_height_a * scan_max / (2.0 * detector_distance) >= 2.0 * math.pi / enhancement
