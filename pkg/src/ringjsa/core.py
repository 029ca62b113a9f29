"""Physical parameter types and the elementary spectral responses.

The model has three ingredients: Lorentzian field enhancement of the three
ring resonances (pump/signal/idler), a sech pump envelope, and an optional
dual-pulse interference factor produced by splitting the pump into two
time-delayed copies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegeneratePumpError
from .units import fwhm_to_tau, itu_channel_to_frequency, q_to_linewidth

ENERGY_MATCH_TOL_HZ = 1e3


@dataclass(frozen=True)
class ResonatorSpec:
    """Three Lorentzian resonances with energy-matched centres.

    Parameters
    ----------
    pump_center, signal_center, idler_center : float
        Resonance centre frequencies [Hz]; must satisfy
        2*pump_center = signal_center + idler_center within 1 kHz.
    linewidth : float
        FWHM of |L|^2 [Hz], applied to all three resonances unless a
        per-resonance override is given.
    pump_linewidth, signal_linewidth, idler_linewidth : float, optional
        Per-resonance overrides for extension studies.
    """

    pump_center: float
    signal_center: float
    idler_center: float
    linewidth: float
    pump_linewidth: float | None = None
    signal_linewidth: float | None = None
    idler_linewidth: float | None = None

    def __post_init__(self) -> None:
        for name in ("pump_center", "signal_center", "idler_center", "linewidth"):
            value = getattr(self, name)
            if value <= 0:
                raise ValueError(f"{name} must be positive, got {value}")
        for name in ("pump_linewidth", "signal_linewidth", "idler_linewidth"):
            value = getattr(self, name)
            if value is not None and value <= 0:
                raise ValueError(f"{name} must be positive, got {value}")
        mismatch = 2.0 * self.pump_center - (self.signal_center + self.idler_center)
        if abs(mismatch) > ENERGY_MATCH_TOL_HZ:
            raise ValueError(
                "energy matching violated: 2*pump_center - (signal_center + "
                f"idler_center) = {mismatch:.6g} Hz exceeds {ENERGY_MATCH_TOL_HZ:g} Hz"
            )

    @property
    def gamma_pump(self) -> float:
        return self.pump_linewidth if self.pump_linewidth is not None else self.linewidth

    @property
    def gamma_signal(self) -> float:
        return self.signal_linewidth if self.signal_linewidth is not None else self.linewidth

    @property
    def gamma_idler(self) -> float:
        return self.idler_linewidth if self.idler_linewidth is not None else self.linewidth

    @property
    def q_factor(self) -> float:
        """Quality factor of the pump resonance, nu_p / Gamma."""
        return self.pump_center / self.gamma_pump

    @classmethod
    def from_channels(
        cls,
        pump: int = 39,
        signal: int = 49,
        idler: int = 29,
        *,
        q: float | None = None,
        linewidth: float | None = None,
    ) -> "ResonatorSpec":
        """Build a resonator on ITU channels, with exactly one of Q or linewidth."""
        if (q is None) == (linewidth is None):
            raise ValueError("give exactly one of q or linewidth")
        pump_center = itu_channel_to_frequency(pump)
        if linewidth is None:
            linewidth = q_to_linewidth(q, pump_center)
        return cls(
            pump_center=pump_center,
            signal_center=itu_channel_to_frequency(signal),
            idler_center=itu_channel_to_frequency(idler),
            linewidth=linewidth,
        )


@dataclass(frozen=True)
class PumpSpec:
    """Sech pump envelope, optionally split into a dual pulse.

    Parameters
    ----------
    center : float
        Envelope centre frequency nu_p [Hz].
    tau_p : float
        Spectral-sech scale [s]; the envelope is sech((nu - nu_p) * tau_p)
        with FWHM of the intensity profile 2*arccosh(sqrt(2))/tau_p.
    eta : float
        Power fraction of the undelayed pulse, in [0, 1]; eta = 1 is the
        single-pulse case.
    delta_tau : float
        Delay between the two pulse copies [s], >= 0.
    nu0 : float, optional
        Centre of the delay-induced phase ramp [Hz]; defaults to `center`
        (the pump resonance), where the delay produces a pi phase shift.
    """

    center: float
    tau_p: float
    eta: float = 1.0
    delta_tau: float = 0.0
    nu0: float | None = None

    def __post_init__(self) -> None:
        if self.center <= 0:
            raise ValueError(f"center must be positive, got {self.center}")
        if self.tau_p <= 0:
            raise ValueError(f"tau_p must be positive, got {self.tau_p}")
        if not 0.0 <= self.eta <= 1.0:
            raise ValueError(f"eta must be in [0, 1], got {self.eta}")
        if self.delta_tau < 0:
            raise ValueError(f"delta_tau must be >= 0, got {self.delta_tau}")
        if self.nu0 is None:
            object.__setattr__(self, "nu0", self.center)

    @property
    def mode(self) -> str:
        """'single' when eta = 1 (the dual factor is the constant 1), else 'dual'."""
        return "single" if self.eta == 1.0 else "dual"

    @property
    def has_fringes(self) -> bool:
        """Whether |amplitude|^2 carries interference fringes of period 1/delta_tau.

        For eta = 1 the dual factor is constant; for eta = 0 it is a pure
        phase ramp. Neither modulates the spectrum, so no fringe needs
        resolving in either case.
        """
        return self.delta_tau > 0.0 and 0.0 < self.eta < 1.0

    @property
    def spectral_fwhm(self) -> float:
        """FWHM of the |sech|^2 envelope [Hz]."""
        return 2.0 * math.acosh(math.sqrt(2.0)) / self.tau_p

    def single_pulse_reference(self) -> "PumpSpec":
        """The eta = 1, delta_tau = 0 pump with the same envelope."""
        return PumpSpec(center=self.center, tau_p=self.tau_p, eta=1.0, delta_tau=0.0, nu0=self.nu0)

    @classmethod
    def from_fwhm(cls, center: float, fwhm: float, **kwargs) -> "PumpSpec":
        """Build a pump from its spectral FWHM instead of tau_p."""
        return cls(center=center, tau_p=fwhm_to_tau(fwhm), **kwargs)


def _sech(x: np.ndarray) -> np.ndarray:
    """Overflow-safe sech: 2 e^{-|x|} / (1 + e^{-2|x|})."""
    ax = np.abs(x)
    ex = np.exp(-ax)
    return 2.0 * ex / (1.0 + ex * ex)


def lorentzian(nu, center: float, gamma: float):
    """Lorentzian field enhancement L(nu) = (G/2) / ((G/2) + i(nu - nu0)).

    Peak magnitude 1 at the centre; |L|^2 = 1/2 at nu0 +/- G/2, so `gamma`
    is the FWHM of the intensity response.
    """
    if gamma <= 0:
        raise ValueError(f"gamma must be positive, got {gamma}")
    half = 0.5 * gamma
    return half / (half + 1j * (np.asarray(nu, dtype=float) - center))


def pump_amplitude(nu, pump: PumpSpec):
    """Complex pump spectral amplitude, single- or dual-pulse.

    alpha(nu) = [sqrt(eta) - sqrt(1-eta) exp(-2i pi delta_tau (nu - nu0))]
                * sech((nu - center) tau_p)

    The delay phase advances by 2 pi per 1/delta_tau of detuning, so
    |alpha|^2 fringes have period 1/delta_tau and the point nu0 sits on a
    destructive fringe (a pi phase shift between the two pulse copies).
    With eta = 1 this reduces exactly to the bare sech envelope.
    """
    nu = np.asarray(nu, dtype=float)
    envelope = _sech((nu - pump.center) * pump.tau_p)
    if pump.eta == 1.0:
        return envelope * (1.0 + 0.0j)
    phase = np.exp(-2j * np.pi * pump.delta_tau * (nu - pump.nu0))
    dual = math.sqrt(pump.eta) - math.sqrt(1.0 - pump.eta) * phase
    return dual * envelope


def normalize_energy(samples: np.ndarray, step: float) -> np.ndarray:
    """Scale samples so that sum |a_k|^2 * step = 1, preserving directions."""
    if step <= 0:
        raise ValueError(f"step must be positive, got {step}")
    samples = np.asarray(samples)
    energy = float(np.sum(np.abs(samples) ** 2)) * step
    if energy == 0.0:
        raise DegeneratePumpError("cannot normalize an all-zero sample array")
    return samples / math.sqrt(energy)
