"""Multi-photon diffraction correlations with sub-classical fringe spacing.

Independent single-photon emitters behind a rectangular opening (or a slit
grating) produce N-fold coincidence patterns whose fringes run up to N times
faster than the classical diffraction pattern of the same aperture.  This
package evaluates the fields, the correlations, and the fringe statistics,
and ships a quadrature oracle for validating the closed forms.
"""

from ._kernels import BACKEND_NAME
from .analysis import (
    FringeReport,
    SampledSignal,
    abbe_range_check,
    count_zeros,
    dominant_frequency,
    flatten_envelope,
    fringe_report,
    visibility,
)
from .correlation import (
    CorrelationVariant,
    GratingCorrelation,
    GratingDetectorRule,
    amplitude_matrix,
    classical_intensity,
    dirichlet_power,
    g2_closed_form,
    g2_grating,
    g2_two_term,
    g_n,
    permanent,
    permanent_enumerate,
    permanent_ryser,
)
from .diffraction import (
    QuadratureSpec,
    field,
    fraunhofer_field,
    fraunhofer_validity_margin,
    fresnel_field_oracle,
    grating_field,
)
from .errors import (
    ConfigError,
    InsufficientDataError,
    NonConvergenceError,
    NumericalError,
    SingularPointError,
    SubRayleighError,
)
from .geometry import (
    Aperture,
    ApertureKind,
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
from .scan import (
    OracleReport,
    ScanConfig,
    ScanResult,
    ScanScenario,
    config_from_dict,
    load_config,
    parse_length,
    read_result_csv,
    read_result_json,
    run_oracle_check,
    run_scan,
    write_result,
)

__version__ = "0.1.0"
