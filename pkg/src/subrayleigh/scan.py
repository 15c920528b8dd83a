"""Detector-coordinate scans: configuration, execution, oracle checks, I/O.

A scan sweeps a single detector coordinate r over a uniform grid, evaluates
one correlation (or classical-intensity) scenario per point plus the
classical reference, divides out the known radial envelope, and reports the
fringe statistics of both signals.

Grid points that fall within half a grid step of a scenario's singular
coordinates (poles of the flattening envelope) are excluded from the output
rows; for the spectral analysis, which needs the full uniform grid, the
flattened values at excluded points are filled by linear interpolation from
their kept neighbors.

Configuration comes from a strict-schema JSON document.  Lengths accept unit
suffixes (nm, um, mm, cm, m) or plain numbers in meters.  Unknown keys are
rejected rather than ignored so that typos fail loudly.
"""

from __future__ import annotations

import enum
import json
import math
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dataclass_field

import numpy as np

from . import _kernels
from .analysis import (
    DEFAULT_ZERO_THRESHOLD,
    FringeReport,
    SampledSignal,
    abbe_range_check,
    count_zeros,
    fringe_report,
    visibility,
)
from .correlation import GratingDetectorRule, classical_intensity, g2_grating, g_n
from .diffraction import (
    QuadratureSpec,
    field,
    fraunhofer_validity_margin,
    fresnel_field_oracle,
)
from .errors import ConfigError, InsufficientDataError, NonConvergenceError
from .geometry import (
    Aperture,
    ApertureKind,
    DetectorLayout,
    EmitterArray,
    Geometry,
    PlacementStrategy,
    detector_phase_offset,
    emitter_pair,
    resolve_layout,
    staggered_emitter_quad,
    uniform_emitter_quad,
)

_LENGTH_UNITS = {"nm": 1e-9, "um": 1e-6, "µm": 1e-6, "mm": 1e-3, "cm": 1e-2, "m": 1.0}
_LENGTH_RE = re.compile(r"^\s*([-+]?[0-9.]+(?:[eE][-+]?[0-9]+)?)\s*([a-zµ]*)\s*$")


def parse_length(value, key: str = "length") -> float:
    """A length in meters from a number or a suffixed string ("500nm", "0.1m")."""
    if isinstance(value, bool):
        raise ConfigError(f"{key}: expected a length, got a boolean")
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str):
        match = _LENGTH_RE.match(value)
        if match:
            number, unit = match.groups()
            scale = _LENGTH_UNITS.get(unit or "m")
            if scale is not None:
                try:
                    return float(number) * scale
                except ValueError:
                    pass
        raise ConfigError(
            f"{key}: cannot parse length {value!r} (expected e.g. '500nm', '20um', '0.1m')"
        )
    raise ConfigError(f"{key}: expected a number or unit-suffixed string, got {type(value).__name__}")


class ScanScenario(enum.Enum):
    """What is evaluated at each grid point.

    CLASSICAL_RECT / CLASSICAL_GRATING: single on-axis emitter intensity.
    G2_MIRROR:      two-emitter pair, detectors at +r and -r.
    G2_COINCIDENT:  two-emitter pair, both detectors at +r.
    G4_QUAD:        four uniformly spaced emitters, four detectors at +r
                    (fourfold fringe-rate enhancement).
    G4_STAGGERED:   staggered four-emitter layout with the staggered
                    detector rule; kept as a comparison configuration.
    G2_GRATING:     two-emitter pair behind an M-slit grating, second
                    detector offset by half an interference period.
    """

    CLASSICAL_RECT = "classical_rect"
    CLASSICAL_GRATING = "classical_grating"
    G2_MIRROR = "g2_mirror"
    G2_COINCIDENT = "g2_coincident"
    G4_QUAD = "g4_quad"
    G4_STAGGERED = "g4_staggered"
    G2_GRATING = "g2_grating"


_GRATING_SCENARIOS = frozenset({ScanScenario.CLASSICAL_GRATING, ScanScenario.G2_GRATING})


@dataclass(frozen=True)
class ScanConfig:
    """Validated, fully resolved scan parameters (lengths in meters)."""

    scenario: ScanScenario
    geometry: Geometry
    aperture: Aperture
    scan_min: float
    scan_max: float
    steps: int
    base_x: float = 0.0
    quadrature: QuadratureSpec = dataclass_field(default_factory=QuadratureSpec)
    convergence_rtol: float = 1e-3

    def __post_init__(self):
        if self.steps < 16:
            raise ConfigError("steps must be >= 16")
        if not (math.isfinite(self.scan_min) and math.isfinite(self.scan_max)):
            raise ConfigError("scan_min and scan_max must be finite")
        if self.scan_min <= 0:
            raise ConfigError("scan_min must be positive (the radial envelopes have a pole at r = 0)")
        if self.scan_min >= self.scan_max:
            raise ConfigError("scan_min must be smaller than scan_max")
        if not math.isfinite(self.base_x):
            raise ConfigError("base_x must be finite")
        needs_grating = self.scenario in _GRATING_SCENARIOS
        if needs_grating and self.aperture.kind is not ApertureKind.GRATING:
            raise ConfigError(f"scenario {self.scenario.value} requires a grating aperture")
        if not needs_grating and self.aperture.kind is not ApertureKind.RECT:
            raise ConfigError(f"scenario {self.scenario.value} requires a rect aperture")
        if self.scenario is ScanScenario.G2_GRATING and self.aperture.slit_count_m % 2 == 0:
            raise ConfigError("g2_grating requires an odd slit count (the product form needs it)")
        if self.convergence_rtol <= 0:
            raise ConfigError("convergence_rtol must be positive")

    @property
    def grid(self) -> np.ndarray:
        return np.linspace(self.scan_min, self.scan_max, self.steps)

    @property
    def grid_step(self) -> float:
        return (self.scan_max - self.scan_min) / (self.steps - 1)

    def to_dict(self) -> dict:
        out = {
            "scenario": self.scenario.value,
            "wavelength": self.geometry.wavelength,
            "source_distance": self.geometry.source_distance,
            "detector_distance": self.geometry.detector_distance,
            "amplitude": self.geometry.amplitude,
            "aperture": {"kind": self.aperture.kind.value,
                         "height_a": self.aperture.height_a,
                         "width_b": self.aperture.width_b},
            "scan_min": self.scan_min,
            "scan_max": self.scan_max,
            "steps": self.steps,
            "base_x": self.base_x,
            "oracle": {"points_per_axis": self.quadrature.points_per_axis,
                       "subdivisions": self.quadrature.subdivisions,
                       "convergence_rtol": self.convergence_rtol},
        }
        if self.aperture.kind is ApertureKind.GRATING:
            out["aperture"]["slit_separation_d"] = self.aperture.slit_separation_d
            out["aperture"]["slit_count_m"] = self.aperture.slit_count_m
        return out


_TOP_KEYS = {
    "scenario", "wavelength", "source_distance", "detector_distance", "amplitude",
    "aperture", "scan_min", "scan_max", "steps", "base_x", "oracle",
}
_APERTURE_KEYS = {"kind", "height_a", "width_b", "slit_separation_d", "slit_count_m"}
_ORACLE_KEYS = {"points_per_axis", "subdivisions", "convergence_rtol"}


def _reject_unknown(data: dict, allowed: set, where: str) -> None:
    unknown = sorted(set(data) - allowed)
    if unknown:
        raise ConfigError(f"unknown {where} key(s): {', '.join(unknown)}")


def config_from_dict(data: dict) -> ScanConfig:
    """Build a :class:`ScanConfig` from a plain (already parsed) mapping."""
    if not isinstance(data, dict):
        raise ConfigError(f"config root must be an object, got {type(data).__name__}")
    _reject_unknown(data, _TOP_KEYS, "config")
    if "scenario" not in data:
        raise ConfigError("config must name a scenario")
    try:
        scenario = ScanScenario(data["scenario"])
    except ValueError:
        valid = ", ".join(s.value for s in ScanScenario)
        raise ConfigError(f"unknown scenario {data['scenario']!r}; valid: {valid}") from None

    try:
        geometry = Geometry(
            wavelength=parse_length(data.get("wavelength", "500nm"), "wavelength"),
            source_distance=parse_length(data.get("source_distance", 0.1), "source_distance"),
            detector_distance=parse_length(data.get("detector_distance", 1.0), "detector_distance"),
            amplitude=float(data.get("amplitude", 1.0)),
        )
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"bad geometry: {exc}") from exc

    ap_data = data.get("aperture", {})
    if not isinstance(ap_data, dict):
        raise ConfigError("aperture must be an object")
    _reject_unknown(ap_data, _APERTURE_KEYS, "aperture")
    kind = ap_data.get("kind", "rect")
    height_a = parse_length(ap_data.get("height_a", "20um"), "aperture.height_a")
    width_b = parse_length(ap_data.get("width_b", "20um"), "aperture.width_b")
    try:
        if kind == "rect":
            aperture = Aperture.rect(height_a, width_b)
        elif kind == "grating":
            if "slit_separation_d" not in ap_data or "slit_count_m" not in ap_data:
                raise ConfigError("grating aperture needs slit_separation_d and slit_count_m")
            count = ap_data["slit_count_m"]
            if not isinstance(count, int) or isinstance(count, bool):
                raise ConfigError("aperture.slit_count_m must be an integer")
            aperture = Aperture.grating(
                height_a, width_b,
                parse_length(ap_data["slit_separation_d"], "aperture.slit_separation_d"),
                count,
            )
        else:
            raise ConfigError(f"unknown aperture kind {kind!r} (rect or grating)")
    except ValueError as exc:
        raise ConfigError(f"bad aperture: {exc}") from exc

    steps = data.get("steps", 512)
    if not isinstance(steps, int) or isinstance(steps, bool):
        raise ConfigError("steps must be an integer")
    # default window: two classical fringe periods, starting one step above 0
    default_max = 2.0 * geometry.wavelength * geometry.detector_distance / aperture.height_a
    scan_max = parse_length(data.get("scan_max", default_max), "scan_max")
    scan_min = parse_length(data.get("scan_min", scan_max / steps), "scan_min")

    oracle_data = data.get("oracle", {})
    if not isinstance(oracle_data, dict):
        raise ConfigError("oracle must be an object")
    _reject_unknown(oracle_data, _ORACLE_KEYS, "oracle")
    try:
        quadrature = QuadratureSpec(
            points_per_axis=int(oracle_data.get("points_per_axis", 32)),
            subdivisions=int(oracle_data.get("subdivisions", 4)),
        )
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"bad oracle quadrature: {exc}") from exc

    return ScanConfig(
        scenario=scenario,
        geometry=geometry,
        aperture=aperture,
        scan_min=scan_min,
        scan_max=scan_max,
        steps=steps,
        base_x=parse_length(data.get("base_x", 0.0), "base_x"),
        quadrature=quadrature,
        convergence_rtol=float(oracle_data.get("convergence_rtol", 1e-3)),
    )


def load_config(path: str) -> ScanConfig:
    """Read and validate a JSON config file."""
    with open(path, "r", encoding="utf-8") as handle:
        text = handle.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(
            f"{path}: JSON parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    return config_from_dict(data)


# ---------------------------------------------------------------------------
# scenario wiring


def scenario_emitters(config: ScanConfig) -> EmitterArray:
    """The emitter layout a scenario scans with."""
    scenario, geometry, aperture = config.scenario, config.geometry, config.aperture
    if scenario in (ScanScenario.CLASSICAL_RECT, ScanScenario.CLASSICAL_GRATING):
        return EmitterArray(((config.base_x, 0.0),))
    if scenario in (ScanScenario.G2_MIRROR, ScanScenario.G2_COINCIDENT, ScanScenario.G2_GRATING):
        return emitter_pair(geometry, aperture, config.base_x)
    if scenario is ScanScenario.G4_QUAD:
        return uniform_emitter_quad(geometry, aperture, config.base_x)
    return staggered_emitter_quad(geometry, aperture)


def _signal_function(config: ScanConfig):
    """Per-grid-point evaluator for the scenario signal."""
    geometry, aperture = config.geometry, config.aperture
    emitters = scenario_emitters(config)
    scenario = config.scenario
    if scenario in (ScanScenario.CLASSICAL_RECT, ScanScenario.CLASSICAL_GRATING):
        return lambda r: classical_intensity((r, 0.0), aperture, geometry)
    if scenario is ScanScenario.G2_GRATING:
        return lambda r: g2_grating(
            r, GratingDetectorRule.PLUS, emitters, aperture, geometry, with_product_form=False
        ).direct
    strategy = {
        ScanScenario.G2_MIRROR: PlacementStrategy.MIRROR_PAIR,
        ScanScenario.G2_COINCIDENT: PlacementStrategy.COINCIDENT_PAIR,
        ScanScenario.G4_QUAD: PlacementStrategy.COINCIDENT_QUAD,
        ScanScenario.G4_STAGGERED: PlacementStrategy.STAGGERED_QUAD,
    }[scenario]
    def evaluate(r: float) -> float:
        detectors = resolve_layout(strategy, r, geometry, aperture)
        return g_n(detectors, emitters, aperture, geometry)
    return evaluate


def _envelope(config: ScanConfig, grid: np.ndarray) -> np.ndarray:
    """Strictly positive radial envelope divided out before fringe analysis.

    Shape only; overall constants are irrelevant to frequency, zero count and
    visibility.  Scenarios without a known product structure (the staggered
    quad and the grating correlation) keep a unit envelope.
    """
    delta = detector_phase_offset(config.geometry, config.aperture)
    scenario = config.scenario
    if scenario in (ScanScenario.CLASSICAL_RECT, ScanScenario.CLASSICAL_GRATING):
        return 1.0 / grid ** 2
    if scenario is ScanScenario.G2_COINCIDENT:
        return 1.0 / (grid * (grid + delta)) ** 2
    if scenario is ScanScenario.G2_MIRROR:
        return 1.0 / (grid * (grid - delta) * (grid + delta)) ** 2
    if scenario is ScanScenario.G4_QUAD:
        env = np.ones_like(grid)
        for j in range(4):
            env /= (grid + 0.5 * j * delta) ** 2
        return env
    if scenario is ScanScenario.G2_GRATING:
        # denominators of the four single-slit amplitudes entering the
        # two-term correlation: detectors at r and r + half-period offset,
        # emitters at 0 and the canonical pair separation
        k = config.geometry.wavenumber
        offset = math.pi * config.geometry.detector_distance / (k * config.aperture.slit_separation_d)
        return 1.0 / (grid * (grid + offset) * (grid + delta) * (grid + offset + delta)) ** 2
    return np.ones_like(grid)


def _singular_coordinates(config: ScanConfig) -> tuple[float, ...]:
    """Envelope poles inside the scan window (grid points nearby are excluded)."""
    if config.scenario is ScanScenario.G2_MIRROR:
        delta = detector_phase_offset(config.geometry, config.aperture)
        if config.scan_min <= delta <= config.scan_max:
            return (delta,)
    return ()


@dataclass(frozen=True)
class ScanResult:
    """Everything a scan produces; :func:`write_result` serializes it."""

    config: ScanConfig
    grid: np.ndarray                 # kept grid points only
    signal: np.ndarray               # scenario values on the kept grid
    classical: np.ndarray            # classical reference on the kept grid
    excluded: tuple[float, ...]      # grid points dropped near envelope poles
    report: FringeReport             # fringe statistics of the flattened signal
    classical_report: FringeReport   # same for the flattened classical reference
    metadata: dict


def _fill_excluded(grid: np.ndarray, values: np.ndarray, keep: np.ndarray) -> np.ndarray:
    """Linear-interpolate values at dropped grid points from kept neighbors."""
    if keep.all():
        return values
    filled = values.copy()
    filled[~keep] = np.interp(grid[~keep], grid[keep], values[keep])
    return filled


def run_scan(config: ScanConfig, workers: int | None = None) -> ScanResult:
    """Execute a scan; bit-identical output regardless of ``workers``.

    Each grid point is an independent pure function of the configuration, so
    the thread pool only changes wall time, never values or their order.
    """
    grid = config.grid
    step = config.grid_step
    singular = _singular_coordinates(config)
    keep = np.ones(grid.size, dtype=bool)
    for s in singular:
        keep &= np.abs(grid - s) >= 0.5 * step
    excluded = tuple(float(r) for r in grid[~keep])

    evaluate = _signal_function(config)
    classical_eval = lambda r: classical_intensity((r, 0.0), config.aperture, config.geometry)
    if workers is not None and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            signal_full = np.fromiter(pool.map(evaluate, grid), dtype=float, count=grid.size)
            classical_full = np.fromiter(pool.map(classical_eval, grid), dtype=float, count=grid.size)
    else:
        signal_full = np.fromiter((evaluate(r) for r in grid), dtype=float, count=grid.size)
        classical_full = np.fromiter((classical_eval(r) for r in grid), dtype=float, count=grid.size)

    with np.errstate(divide="ignore"):
        env = _envelope(config, grid)
    env[~keep] = 1.0  # placeholder at poles; these samples are re-filled below
    flattened = _fill_excluded(grid, np.where(keep, signal_full, 0.0) / env, keep)
    flattened = np.maximum(flattened, 0.0)
    classical_env = 1.0 / grid ** 2
    classical_flat = classical_full / classical_env

    report_notes = {}

    def _report(label: str, values: np.ndarray) -> FringeReport:
        # a scenario without a resolvable fringe (e.g. the staggered quad,
        # whose spectrum has no dominant line) still yields zero-count and
        # visibility; the frequency is NaN and the reason is recorded
        sampled = SampledSignal(grid, values)
        try:
            return fringe_report(sampled)
        except InsufficientDataError as exc:
            report_notes[label] = str(exc)
            return FringeReport(
                dominant_frequency=math.nan,
                zero_count=count_zeros(sampled),
                visibility=visibility(sampled),
            )

    report = _report("signal", flattened)
    classical_report = _report("classical", classical_flat)

    enhancement = {
        ScanScenario.G2_MIRROR: 2.0, ScanScenario.G2_COINCIDENT: 2.0,
        ScanScenario.G4_QUAD: 4.0, ScanScenario.G4_STAGGERED: 4.0,
        ScanScenario.G2_GRATING: 2.0,
    }.get(config.scenario, 1.0)
    metadata = {
        "backend": _kernels.BACKEND_NAME,
        "wavenumber": config.geometry.wavenumber,
        "detector_phase_offset": detector_phase_offset(config.geometry, config.aperture),
        "grid_step": step,
        "zero_threshold": DEFAULT_ZERO_THRESHOLD,
        "covers_enhanced_period": abbe_range_check(
            config.scan_max, enhancement, config.aperture.height_a,
            config.geometry.wavelength, config.geometry.detector_distance,
        ),
        "validity_margin": fraunhofer_validity_margin(
            (config.scan_max, 0.0), config.aperture, config.geometry
        ),
    }
    if report_notes:
        metadata["report_notes"] = report_notes
    return ScanResult(
        config=config,
        grid=grid[keep],
        signal=signal_full[keep],
        classical=classical_full[keep],
        excluded=excluded,
        report=report,
        classical_report=classical_report,
        metadata=metadata,
    )


# ---------------------------------------------------------------------------
# quadrature oracle check


@dataclass(frozen=True)
class OracleReport:
    """Agreement between the far-field closed form and the quadrature oracle.

    Relative magnitude errors are pointwise, restricted to samples where
    both |U| values exceed 2% of the grid maximum (fringe nulls measure the
    null depth, not the approximation); ``skipped_near_zero`` counts the rest.
    Phase agreement is measured on consecutive-point phase differences, which
    cancels the constant per-emitter phase conventions of the two paths.
    """

    samples: int
    skipped_near_zero: int
    max_rel_magnitude_error: float
    max_phase_error: float
    validity_margin: float
    max_convergence_shift: float

    def to_dict(self) -> dict:
        return {
            "samples": self.samples,
            "skipped_near_zero": self.skipped_near_zero,
            "max_rel_magnitude_error": self.max_rel_magnitude_error,
            "max_phase_error": self.max_phase_error,
            "validity_margin": self.validity_margin,
            "max_convergence_shift": self.max_convergence_shift,
        }


_ORACLE_GRID_LIMIT = 64
# fringe nulls are excluded from relative-error statistics: the closed form
# is exactly zero there while the quadrature keeps the true (finite) null
# depth, so a pointwise relative error at a null measures the null depth,
# not the accuracy of the far-field approximation
_NEAR_ZERO_CUTOFF = 0.02


def run_oracle_check(config: ScanConfig) -> OracleReport:
    """Compare the closed-form field against the quadrature oracle.

    Uses a decimated scan grid (at most 64 points) and every scenario
    emitter.  Also reports the worst |U| shift under subdivision doubling
    (quadrature self-convergence) and the far-field validity margin at the
    scan edge.  Raises :class:`NonConvergenceError` when the shift exceeds
    the configured tolerance: an unconverged oracle validates nothing.
    """
    grid = config.grid
    if grid.size > _ORACLE_GRID_LIMIT:
        idx = np.unique(np.round(np.linspace(0, grid.size - 1, _ORACLE_GRID_LIMIT)).astype(int))
        grid = grid[idx]
    emitters = scenario_emitters(config)
    spec = config.quadrature
    fine_spec = QuadratureSpec(spec.points_per_axis, 2 * spec.subdivisions)

    max_rel = 0.0
    max_phase = 0.0
    max_shift = 0.0
    skipped = 0
    samples = 0
    for em in emitters.positions:
        closed = np.array([field((r, 0.0), em, config.aperture, config.geometry) for r in grid])
        oracle = np.array([
            fresnel_field_oracle((r, 0.0), em, config.aperture, config.geometry, spec)
            for r in grid
        ])
        oracle_fine = np.array([
            fresnel_field_oracle((r, 0.0), em, config.aperture, config.geometry, fine_spec)
            for r in grid
        ])
        scale = np.max(np.abs(oracle))
        usable = np.minimum(np.abs(oracle), np.abs(closed)) >= _NEAR_ZERO_CUTOFF * scale
        skipped += int(np.sum(~usable))
        samples += grid.size
        rel = np.abs(np.abs(closed[usable]) - np.abs(oracle[usable])) / np.abs(oracle[usable])
        if rel.size:
            max_rel = max(max_rel, float(np.max(rel)))
        # self-convergence is judged wherever the fine result is non-negligible,
        # independently of closed-form agreement
        fine_scale = np.max(np.abs(oracle_fine))
        strong = np.abs(oracle_fine) >= _NEAR_ZERO_CUTOFF * fine_scale
        shift = np.abs(np.abs(oracle_fine) - np.abs(oracle)) / np.maximum(np.abs(oracle_fine), 1e-300)
        if np.any(strong):
            max_shift = max(max_shift, float(np.max(shift[strong])))
        # consecutive-point phase increments, where both ends are usable
        for i in range(grid.size - 1):
            if not (usable[i] and usable[i + 1]):
                continue
            inc_closed = np.angle(closed[i + 1] * np.conj(closed[i]))
            inc_oracle = np.angle(oracle_fine[i + 1] * np.conj(oracle_fine[i]))
            diff = (inc_closed - inc_oracle + math.pi) % (2.0 * math.pi) - math.pi
            max_phase = max(max_phase, abs(diff))
    if max_shift > config.convergence_rtol:
        raise NonConvergenceError(
            f"quadrature self-check failed: |U| moved by {max_shift:.3e} "
            f"(> {config.convergence_rtol:.1e}) when doubling subdivisions "
            f"{spec.subdivisions} -> {fine_spec.subdivisions}",
            trace=[(spec.subdivisions, max_shift), (fine_spec.subdivisions, 0.0)],
        )
    margin = fraunhofer_validity_margin((config.scan_max, 0.0), config.aperture, config.geometry)
    return OracleReport(
        samples=samples,
        skipped_near_zero=skipped,
        max_rel_magnitude_error=float(max_rel),
        max_phase_error=float(max_phase),
        validity_margin=float(margin),
        max_convergence_shift=float(max_shift),
    )


# ---------------------------------------------------------------------------
# serialization


def result_to_dict(result: ScanResult) -> dict:
    return {
        "config": result.config.to_dict(),
        "metadata": result.metadata,
        "excluded": list(result.excluded),
        "grid": result.grid.tolist(),
        "signal": result.signal.tolist(),
        "classical": result.classical.tolist(),
        "report": result.report.to_dict(),
        "classical_report": result.classical_report.to_dict(),
    }


def write_result(result: ScanResult, path: str, fmt: str = "json") -> None:
    """Serialize a scan result.

    JSON carries the full result (config echo, metadata, reports) and
    round-trips floats exactly.  CSV carries the grid rows only, one row per
    kept grid point, values in shortest round-trip decimal form; excluded
    grid points are listed in a ``# excluded:`` comment line.
    """
    if fmt == "json":
        with open(path, "w", encoding="utf-8") as handle:
            json.dump(result_to_dict(result), handle, indent=2)
            handle.write("\n")
    elif fmt == "csv":
        lines = [f"# scenario: {result.config.scenario.value}"]
        if result.excluded:
            lines.append("# excluded: " + ",".join(repr(r) for r in result.excluded))
        lines.append("r,signal,classical")
        for r, s, c in zip(result.grid, result.signal, result.classical):
            lines.append(f"{float(r)!r},{float(s)!r},{float(c)!r}")
        with open(path, "w", encoding="utf-8") as handle:
            handle.write("\n".join(lines) + "\n")
    else:
        raise ValueError(f"unknown output format {fmt!r} (json or csv)")


def read_result_json(path: str) -> dict:
    """Load a JSON result; float round-trip is exact."""
    with open(path, "r", encoding="utf-8") as handle:
        return json.load(handle)


def read_result_csv(path: str) -> tuple[np.ndarray, np.ndarray, np.ndarray, tuple[float, ...]]:
    """Load a CSV result: (grid, signal, classical, excluded)."""
    excluded: tuple[float, ...] = ()
    rows = []
    with open(path, "r", encoding="utf-8") as handle:
        for line in handle:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                if line.startswith("# excluded:"):
                    excluded = tuple(float(v) for v in line[len("# excluded:"):].split(","))
                continue
            if line.startswith("r,"):
                continue
            rows.append([float(v) for v in line.split(",")])
    data = np.asarray(rows, dtype=float)
    return data[:, 0], data[:, 1], data[:, 2], excluded
