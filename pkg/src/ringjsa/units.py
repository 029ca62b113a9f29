"""Unit conversions between telecom channels, wavelengths, linewidths and time scales.

All frequencies are ordinary (not angular) frequencies in Hz, times in
seconds, lengths in metres.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

C_LIGHT = 2.99792458e8
"""Speed of light in vacuum [m/s]."""

ITU_BASE_HZ = 190.0e12
ITU_SPACING_HZ = 100.0e9

# Half-width x of sech(x)^2 = 1/2, doubled: FWHM of |sech(nu*tau)|^2 is
# 2*arccosh(sqrt(2))/tau.
SECH_FWHM_PRODUCT = 2.0 * math.acosh(math.sqrt(2.0))


@dataclass(frozen=True)
class UnitContext:
    """Reference wavelength for pm <-> Hz bandwidth conversions."""

    reference_wavelength: float
    speed_of_light: float = field(default=C_LIGHT, init=False)

    def __post_init__(self) -> None:
        if self.reference_wavelength <= 0:
            raise ValueError(
                f"reference_wavelength must be positive, got {self.reference_wavelength}"
            )


def itu_channel_to_frequency(channel: int) -> float:
    """Centre frequency of a 100 GHz ITU grid channel.

    f = 190 THz + channel * 100 GHz; channels 1..72 cover the C-band.
    """
    if not 1 <= channel <= 72:
        raise ValueError(f"ITU channel must be in 1..72, got {channel}")
    return ITU_BASE_HZ + channel * ITU_SPACING_HZ


def bandwidth_wavelength_to_frequency(delta_lambda: float, ctx: UnitContext) -> float:
    """Convert a small wavelength bandwidth to frequency: c * dl / l0^2."""
    if delta_lambda <= 0:
        raise ValueError(f"delta_lambda must be positive, got {delta_lambda}")
    return ctx.speed_of_light * delta_lambda / ctx.reference_wavelength**2


def q_to_linewidth(q: float, center: float) -> float:
    """Resonance FWHM from the quality factor: Gamma = nu0 / Q."""
    if q <= 0:
        raise ValueError(f"Q must be positive, got {q}")
    if center <= 0:
        raise ValueError(f"center frequency must be positive, got {center}")
    return center / q


def fwhm_to_tau(delta_nu_fwhm: float) -> float:
    """Spectral-sech time scale from the FWHM of |sech((nu-nu_p)*tau)|^2.

    tau = 2*arccosh(sqrt(2)) / dnu_fwhm, so sech((dnu/2)*tau)^2 = 1/2.
    """
    if delta_nu_fwhm <= 0:
        raise ValueError(f"delta_nu_fwhm must be positive, got {delta_nu_fwhm}")
    return SECH_FWHM_PRODUCT / delta_nu_fwhm


def tau_to_fwhm(tau_p: float) -> float:
    """Inverse of :func:`fwhm_to_tau`."""
    if tau_p <= 0:
        raise ValueError(f"tau_p must be positive, got {tau_p}")
    return SECH_FWHM_PRODUCT / tau_p
