import numpy as np
import pytest

import ringjsa as r


@pytest.fixture(scope="session")
def bench_resonator():
    """Channels 39/49/29 with the measured cavity Q of 2.5e4."""
    return r.ResonatorSpec.from_channels(q=2.5e4)


@pytest.fixture(scope="session")
def fwhm_420(bench_resonator):
    ctx = r.UnitContext(reference_wavelength=r.C_LIGHT / bench_resonator.pump_center)
    return r.bandwidth_wavelength_to_frequency(420e-12, ctx)


@pytest.fixture(scope="session")
def fwhm_280(bench_resonator):
    ctx = r.UnitContext(reference_wavelength=r.C_LIGHT / bench_resonator.pump_center)
    return r.bandwidth_wavelength_to_frequency(280e-12, ctx)


@pytest.fixture(scope="session")
def high_purity_pump(bench_resonator, fwhm_420):
    """The high-purity dual-pulse operating point."""
    return r.PumpSpec.from_fwhm(
        bench_resonator.pump_center, fwhm_420, eta=0.6, delta_tau=20e-12
    )


@pytest.fixture(scope="session")
def small_grid(bench_resonator):
    """65-point grid: resolves the physics at unit-test cost."""
    return r.make_grid(bench_resonator, 8.0, 65)


def toy_amplitude(values):
    """Wrap a bare matrix in a JointAmplitude on a synthetic grid."""
    values = np.asarray(values, dtype=complex)
    n_i, n_s = values.shape
    return r.JointAmplitude(
        grid=r.FrequencyGrid(
            signal_axis=np.linspace(1.0e14, 1.001e14, n_s),
            idler_axis=np.linspace(0.9e14, 0.901e14, n_i),
        ),
        values=values,
    )


def toy_intensity(values):
    """Wrap a bare nonnegative matrix in a JointIntensity."""
    values = np.asarray(values, dtype=float)
    n_i, n_s = values.shape
    return r.JointIntensity(
        grid=r.FrequencyGrid(
            signal_axis=np.linspace(1.0e14, 1.001e14, n_s),
            idler_axis=np.linspace(0.9e14, 0.901e14, n_i),
        ),
        values=values,
    )


def embedded_amplitude(block, size=8):
    """Zero-pad a small matrix into a grid-sized JointAmplitude.

    Padding adds only zero singular values, so Schmidt quantities of the
    block are preserved.
    """
    block = np.asarray(block, dtype=complex)
    values = np.zeros((size, size), dtype=complex)
    values[: block.shape[0], : block.shape[1]] = block
    return toy_amplitude(values)
