"""Run configuration: flat ``key = value`` files with ``#`` comments.

Required keys: one of ``pump.fwhm_pm`` / ``pump.fwhm_ghz`` and one of
``ring.q`` / ``ring.gamma_ghz``. Everything else defaults to the standard
setup: pump/signal/idler on ITU channels 39/49/29, a 257-point grid
spanning 8 linewidths, automatically sized quadrature, 150/300 MHz
idler/signal measurement resolutions, noiseless, seed 1234.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .analysis import MeasurementSpec
from .core import PumpSpec, ResonatorSpec
from .engine import FrequencyGrid, QuadratureSpec, auto_quadrature, make_grid
from .errors import ConfigError
from .units import (
    C_LIGHT,
    UnitContext,
    bandwidth_wavelength_to_frequency,
    itu_channel_to_frequency,
    q_to_linewidth,
)

_KNOWN_KEYS = {
    "pump.channel",
    "pump.center_hz",
    "pump.fwhm_pm",
    "pump.fwhm_ghz",
    "pump.eta",
    "pump.delta_tau_ps",
    "pump.nu0_offset_ghz",
    "ring.q",
    "ring.gamma_ghz",
    "ring.pump_channel",
    "ring.signal_channel",
    "ring.idler_channel",
    "grid.n",
    "grid.span_linewidths",
    "quad.pump_steps",
    "measure.idler_resolution_mhz",
    "measure.signal_resolution_mhz",
    "measure.snr",
    "measure.seed",
    "out.jsa_prefix",
    "out.jsi",
    "out.table",
}

_CONFLICTS = [
    ("ring.q", "ring.gamma_ghz"),
    ("pump.fwhm_pm", "pump.fwhm_ghz"),
    ("pump.channel", "pump.center_hz"),
]

_REQUIRED_ONE_OF = [
    ("pump.fwhm_pm", "pump.fwhm_ghz"),
    ("ring.q", "ring.gamma_ghz"),
]


@dataclass(frozen=True)
class RunConfig:
    """Validated run parameters; accessors build the domain objects."""

    pump_center: float
    pump_fwhm: float
    eta: float
    delta_tau: float
    nu0_offset: float
    ring_q: float | None
    ring_gamma: float | None
    pump_channel: int
    signal_channel: int
    idler_channel: int
    grid_n: int
    span_linewidths: float
    pump_steps: int | None
    idler_resolution: float
    signal_resolution: float
    noise_snr: float
    rng_seed: int
    jsa_prefix: str | None
    jsi_path: str | None
    table_path: str | None

    def resonator(self) -> ResonatorSpec:
        pump_center = itu_channel_to_frequency(self.pump_channel)
        gamma = (
            self.ring_gamma
            if self.ring_gamma is not None
            else q_to_linewidth(self.ring_q, pump_center)
        )
        return ResonatorSpec(
            pump_center=pump_center,
            signal_center=itu_channel_to_frequency(self.signal_channel),
            idler_center=itu_channel_to_frequency(self.idler_channel),
            linewidth=gamma,
        )

    def pump(self) -> PumpSpec:
        return PumpSpec.from_fwhm(
            self.pump_center,
            self.pump_fwhm,
            eta=self.eta,
            delta_tau=self.delta_tau,
            nu0=self.pump_center + self.nu0_offset,
        )

    def grid(self, resonator: ResonatorSpec) -> FrequencyGrid:
        return make_grid(resonator, self.span_linewidths, self.grid_n)

    def quadrature(self, pump: PumpSpec, resonator: ResonatorSpec) -> QuadratureSpec:
        auto = auto_quadrature(pump, resonator)
        if self.pump_steps is None:
            return auto
        return QuadratureSpec(pump_span=auto.pump_span, pump_steps=self.pump_steps)

    def measurement(self) -> MeasurementSpec:
        return MeasurementSpec(
            idler_resolution=self.idler_resolution,
            signal_resolution=self.signal_resolution,
            noise_snr=self.noise_snr,
            rng_seed=self.rng_seed,
        )


def _scan(path) -> dict[str, tuple[str, int]]:
    """Read key = value pairs with their line numbers."""
    entries: dict[str, tuple[str, int]] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            if key not in _KNOWN_KEYS:
                raise ConfigError(f"line {lineno}: unknown key {key!r}")
            if key in entries:
                raise ConfigError(
                    f"line {lineno}: duplicate key {key!r} (first given on line {entries[key][1]})"
                )
            if not value:
                raise ConfigError(f"line {lineno}: empty value for key {key!r}")
            entries[key] = (value, lineno)
    return entries


def _convert(entries, key: str, kind, default=None):
    if key not in entries:
        return default
    value, lineno = entries[key]
    try:
        return kind(value)
    except ValueError:
        raise ConfigError(
            f"line {lineno}: invalid value {value!r} for key {key!r}"
        ) from None


def _to_int(text: str) -> int:
    # reject floats masquerading as ints
    if not text.lstrip("+-").isdigit():
        raise ValueError(text)
    return int(text)


def _to_snr(text: str) -> float:
    if text.lower() in ("inf", "infinity"):
        return math.inf
    return float(text)


def _fail_range(entries, key: str, message: str):
    lineno = entries[key][1]
    raise ConfigError(f"line {lineno}: {key} {message}")


def parse_config(path) -> RunConfig:
    """Parse and validate a run configuration file."""
    entries = _scan(path)

    for a, b in _CONFLICTS:
        if a in entries and b in entries:
            raise ConfigError(
                f"conflicting keys: {a!r} (line {entries[a][1]}) and {b!r} (line {entries[b][1]})"
            )
    for a, b in _REQUIRED_ONE_OF:
        if a not in entries and b not in entries:
            raise ConfigError(f"missing required key: one of {a!r} or {b!r}")

    pump_channel = _convert(entries, "ring.pump_channel", _to_int, 39)
    signal_channel = _convert(entries, "ring.signal_channel", _to_int, 49)
    idler_channel = _convert(entries, "ring.idler_channel", _to_int, 29)

    explicit_channel = _convert(entries, "pump.channel", _to_int)
    center_hz = _convert(entries, "pump.center_hz", float)
    if center_hz is not None:
        if center_hz <= 0:
            _fail_range(entries, "pump.center_hz", "must be positive")
        pump_center = center_hz
    elif explicit_channel is not None:
        pump_center = itu_channel_to_frequency(explicit_channel)
    else:
        pump_center = itu_channel_to_frequency(pump_channel)

    fwhm_ghz = _convert(entries, "pump.fwhm_ghz", float)
    if fwhm_ghz is not None:
        if fwhm_ghz <= 0:
            _fail_range(entries, "pump.fwhm_ghz", "must be positive")
        pump_fwhm = fwhm_ghz * 1e9
    else:
        fwhm_pm = _convert(entries, "pump.fwhm_pm", float)
        if fwhm_pm <= 0:
            _fail_range(entries, "pump.fwhm_pm", "must be positive")
        ctx = UnitContext(reference_wavelength=C_LIGHT / pump_center)
        pump_fwhm = bandwidth_wavelength_to_frequency(fwhm_pm * 1e-12, ctx)

    eta = _convert(entries, "pump.eta", float, 1.0)
    if not 0.0 <= eta <= 1.0:
        _fail_range(entries, "pump.eta", f"must be in [0, 1], got {eta}")
    delta_tau_ps = _convert(entries, "pump.delta_tau_ps", float, 0.0)
    if delta_tau_ps < 0:
        _fail_range(entries, "pump.delta_tau_ps", f"must be >= 0, got {delta_tau_ps}")
    nu0_offset_ghz = _convert(entries, "pump.nu0_offset_ghz", float, 0.0)

    ring_q = _convert(entries, "ring.q", float)
    if ring_q is not None and ring_q <= 0:
        _fail_range(entries, "ring.q", f"must be positive, got {ring_q}")
    gamma_ghz = _convert(entries, "ring.gamma_ghz", float)
    ring_gamma = None
    if gamma_ghz is not None:
        if gamma_ghz <= 0:
            _fail_range(entries, "ring.gamma_ghz", f"must be positive, got {gamma_ghz}")
        ring_gamma = gamma_ghz * 1e9

    grid_n = _convert(entries, "grid.n", _to_int, 257)
    if grid_n < 8:
        _fail_range(entries, "grid.n", f"must be >= 8, got {grid_n}")
    span = _convert(entries, "grid.span_linewidths", float, 8.0)
    if span <= 0:
        _fail_range(entries, "grid.span_linewidths", f"must be positive, got {span}")

    pump_steps = None
    if "quad.pump_steps" in entries:
        value, lineno = entries["quad.pump_steps"]
        if value.lower() != "auto":
            pump_steps = _convert(entries, "quad.pump_steps", _to_int)
            if pump_steps < 64:
                _fail_range(entries, "quad.pump_steps", f"must be >= 64 or 'auto', got {pump_steps}")

    idler_res_mhz = _convert(entries, "measure.idler_resolution_mhz", float, 150.0)
    if idler_res_mhz <= 0:
        _fail_range(entries, "measure.idler_resolution_mhz", "must be positive")
    signal_res_mhz = _convert(entries, "measure.signal_resolution_mhz", float, 300.0)
    if signal_res_mhz <= 0:
        _fail_range(entries, "measure.signal_resolution_mhz", "must be positive")
    snr = _convert(entries, "measure.snr", _to_snr, math.inf)
    if not snr > 0:
        _fail_range(entries, "measure.snr", f"must be positive, got {snr}")
    seed = _convert(entries, "measure.seed", _to_int, 1234)

    def text(key: str) -> str | None:
        return entries[key][0] if key in entries else None

    return RunConfig(
        pump_center=pump_center,
        pump_fwhm=pump_fwhm,
        eta=eta,
        delta_tau=delta_tau_ps * 1e-12,
        nu0_offset=nu0_offset_ghz * 1e9,
        ring_q=ring_q,
        ring_gamma=ring_gamma,
        pump_channel=pump_channel,
        signal_channel=signal_channel,
        idler_channel=idler_channel,
        grid_n=grid_n,
        span_linewidths=span,
        pump_steps=pump_steps,
        idler_resolution=idler_res_mhz * 1e6,
        signal_resolution=signal_res_mhz * 1e6,
        noise_snr=snr,
        rng_seed=seed,
        jsa_prefix=text("out.jsa_prefix"),
        jsi_path=text("out.jsi"),
        table_path=text("out.table"),
    )
