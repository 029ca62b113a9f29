"""Joint-spectral-amplitude simulation and purity analysis for microring
photon-pair sources with single- and dual-pulse pumping."""

from .analysis import (
    MeasurementSpec,
    SchmidtResult,
    box_filter_3x3,
    estimate_purity_error,
    flat_phase_purity,
    load_jsi,
    purity_via_gram,
    reconstruct_flat_phase,
    save_jsi,
    schmidt_decompose,
    simulate_measurement,
)
from .core import (
    PumpSpec,
    ResonatorSpec,
    lorentzian,
    normalize_energy,
    pump_amplitude,
)
from .engine import (
    FrequencyGrid,
    JointAmplitude,
    JointIntensity,
    QuadratureSpec,
    auto_quadrature,
    compute_jsa_direct,
    compute_jsa_fast,
    jsi_from_jsa,
    make_grid,
)
from .errors import (
    ConfigError,
    DegeneratePumpError,
    DegenerateStateError,
    GridFormatError,
    ResolutionError,
    RingJsaError,
)
from .experiments import (
    OptimizeResult,
    OptimizerConfig,
    SweepPoint,
    brightness_vs_purity,
    optimize_purity,
    q_series,
    relative_brightness,
    single_pulse_limit_study,
    single_pulse_reference_jsa,
    sweep_eta_dtau,
)
from .config import RunConfig, parse_config
from .units import (
    C_LIGHT,
    UnitContext,
    bandwidth_wavelength_to_frequency,
    fwhm_to_tau,
    itu_channel_to_frequency,
    q_to_linewidth,
    tau_to_fwhm,
)

__version__ = "0.1.0"

__all__ = [
    "C_LIGHT",
    "ConfigError",
    "DegeneratePumpError",
    "DegenerateStateError",
    "FrequencyGrid",
    "GridFormatError",
    "JointAmplitude",
    "JointIntensity",
    "MeasurementSpec",
    "OptimizeResult",
    "OptimizerConfig",
    "PumpSpec",
    "QuadratureSpec",
    "ResolutionError",
    "ResonatorSpec",
    "RingJsaError",
    "RunConfig",
    "SchmidtResult",
    "SweepPoint",
    "UnitContext",
    "auto_quadrature",
    "bandwidth_wavelength_to_frequency",
    "box_filter_3x3",
    "brightness_vs_purity",
    "compute_jsa_direct",
    "compute_jsa_fast",
    "estimate_purity_error",
    "flat_phase_purity",
    "fwhm_to_tau",
    "itu_channel_to_frequency",
    "jsi_from_jsa",
    "load_jsi",
    "lorentzian",
    "make_grid",
    "normalize_energy",
    "optimize_purity",
    "parse_config",
    "pump_amplitude",
    "purity_via_gram",
    "q_series",
    "q_to_linewidth",
    "reconstruct_flat_phase",
    "relative_brightness",
    "save_jsi",
    "schmidt_decompose",
    "simulate_measurement",
    "single_pulse_limit_study",
    "single_pulse_reference_jsa",
    "sweep_eta_dtau",
    "tau_to_fwhm",
]
