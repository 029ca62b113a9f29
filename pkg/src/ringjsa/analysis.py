"""Schmidt decomposition, purity extraction, and the emulated measurement chain.

The heralded single photon's spectro-temporal purity is Tr(rho^2) =
sum sigma^4 / (sum sigma^2)^2 over the singular values of the discretized
JSA. Tomography measures only |f|^2, so measured purities come from the
flat-phase reconstruction sqrt(JSI); the associated error bar is the
purity shift induced by a 3x3 box low-pass of the raw data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .engine import FrequencyGrid, JointAmplitude, JointIntensity
from .errors import DegenerateStateError, ResolutionError
from . import gridio

PURITY_SELF_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class SchmidtResult:
    """Singular values with the derived purity and Schmidt number."""

    singular_values: np.ndarray
    purity: float
    schmidt_number: float
    purity_error: float | None = None

    def __post_init__(self) -> None:
        sv = np.asarray(self.singular_values, dtype=float)
        object.__setattr__(self, "singular_values", sv)
        if sv.ndim != 1 or sv.size == 0:
            raise ValueError("singular_values must be a nonempty 1-D array")
        if np.any(sv < 0) or np.any(np.diff(sv) > 0):
            raise ValueError("singular_values must be nonnegative and descending")
        if not 0.0 < self.purity <= 1.0 + PURITY_SELF_TOL:
            raise ValueError(f"purity must be in (0, 1], got {self.purity}")
        if abs(self.purity - _purity_of_singular_values(sv)) > PURITY_SELF_TOL:
            raise ValueError("purity does not match the stored singular values")
        if abs(self.schmidt_number * self.purity - 1.0) > PURITY_SELF_TOL:
            raise ValueError("schmidt_number must equal 1/purity")
        if self.purity_error is not None and self.purity_error < 0:
            raise ValueError(f"purity_error must be >= 0, got {self.purity_error}")

    @classmethod
    def from_singular_values(
        cls, singular_values: np.ndarray, purity_error: float | None = None
    ) -> "SchmidtResult":
        sv = np.sort(np.asarray(singular_values, dtype=float))[::-1]
        purity = _purity_of_singular_values(sv)
        return cls(
            singular_values=sv,
            purity=purity,
            schmidt_number=1.0 / purity,
            purity_error=purity_error,
        )


@dataclass(frozen=True)
class MeasurementSpec:
    """Resolution and noise of the tomography chain.

    `idler_resolution` is the spectrometer bin width, `signal_resolution`
    the seed-laser step; `noise_snr` is the power SNR at the JSI peak
    (math.inf for noiseless); `rng_seed` fixes the noise realization.
    """

    idler_resolution: float
    signal_resolution: float
    noise_snr: float = math.inf
    rng_seed: int = 0

    def __post_init__(self) -> None:
        if self.idler_resolution <= 0 or self.signal_resolution <= 0:
            raise ValueError("resolutions must be positive")
        if not self.noise_snr > 0:
            raise ValueError(f"noise_snr must be positive, got {self.noise_snr}")


def _purity_of_singular_values(sv: np.ndarray) -> float:
    s2 = sv * sv
    total = float(np.sum(s2))
    if total == 0.0:
        raise DegenerateStateError("all singular values are zero; purity is undefined")
    return float(np.sum(s2 * s2)) / (total * total)


def schmidt_decompose(jsa: JointAmplitude) -> SchmidtResult:
    """Singular value decomposition of the JSA matrix.

    Purity is invariant under any nonzero rescaling of the matrix, so grid
    measure factors drop out.
    """
    if not np.any(jsa.values):
        raise DegenerateStateError("joint amplitude is identically zero")
    sv = np.linalg.svd(jsa.values, compute_uv=False)
    return SchmidtResult.from_singular_values(sv)


def purity_via_gram(jsa: JointAmplitude) -> float:
    """Purity from Gram-matrix traces, Tr(G^2)/Tr(G)^2 with G = f f^dagger.

    Independent of the SVD route: uses only matrix products. Agrees with
    `schmidt_decompose` to better than 1e-9.
    """
    v = jsa.values
    if not np.any(v):
        raise DegenerateStateError("joint amplitude is identically zero")
    # contract over the longer axis so G is as small as possible
    if v.shape[0] <= v.shape[1]:
        gram = v @ v.conj().T
    else:
        gram = v.conj().T @ v
    trace = float(np.real(np.trace(gram)))
    trace_sq = float(np.sum(np.abs(gram) ** 2))
    return trace_sq / (trace * trace)


def simulate_measurement(jsi: JointIntensity, spec: MeasurementSpec) -> JointIntensity:
    """Emulate the tomography chain: block-average to the instrument
    resolutions, then add seeded Gaussian noise scaled off the JSI peak.

    Bin factors are the resolutions rounded to integer multiples of the
    grid steps; a trailing partial bin is dropped. Negative noisy cells
    are clamped to zero.
    """
    step_s, step_i = jsi.grid.step_s, jsi.grid.step_i
    if spec.signal_resolution < step_s * (1.0 - 1e-9):
        raise ResolutionError(
            f"signal resolution {spec.signal_resolution:g} Hz is finer than the grid step {step_s:g} Hz"
        )
    if spec.idler_resolution < step_i * (1.0 - 1e-9):
        raise ResolutionError(
            f"idler resolution {spec.idler_resolution:g} Hz is finer than the grid step {step_i:g} Hz"
        )
    factor_s = max(1, round(spec.signal_resolution / step_s))
    factor_i = max(1, round(spec.idler_resolution / step_i))

    n_i, n_s = jsi.values.shape
    keep_i = (n_i // factor_i) * factor_i
    keep_s = (n_s // factor_s) * factor_s
    if keep_i // factor_i < 8 or keep_s // factor_s < 8:
        raise ResolutionError(
            "binned grid would have fewer than 8 points per axis "
            f"({keep_i // factor_i} x {keep_s // factor_s})"
        )
    binned = (
        jsi.values[:keep_i, :keep_s]
        .reshape(keep_i // factor_i, factor_i, keep_s // factor_s, factor_s)
        .mean(axis=(1, 3))
    )
    axis_s = jsi.grid.signal_axis[:keep_s].reshape(-1, factor_s).mean(axis=1)
    axis_i = jsi.grid.idler_axis[:keep_i].reshape(-1, factor_i).mean(axis=1)

    if math.isfinite(spec.noise_snr):
        rng = np.random.default_rng(spec.rng_seed)
        sigma = float(binned.max()) / spec.noise_snr
        binned = np.clip(binned + rng.normal(0.0, sigma, binned.shape), 0.0, None)

    return JointIntensity(grid=FrequencyGrid(signal_axis=axis_s, idler_axis=axis_i), values=binned)


def reconstruct_flat_phase(jsi: JointIntensity) -> JointAmplitude:
    """Flat-phase JSA estimate: element-wise sqrt(JSI), zero phase."""
    return JointAmplitude(grid=jsi.grid, values=np.sqrt(jsi.values).astype(complex))


def box_filter_3x3(jsi: JointIntensity) -> JointIntensity:
    """3x3 box low-pass; edge cells average over their in-bounds neighbourhood."""
    values = jsi.values
    n, m = values.shape
    if n < 3 or m < 3:
        raise ValueError(f"matrix must be at least 3x3 for the box filter, got {n}x{m}")
    acc = np.zeros_like(values)
    count = np.zeros_like(values)
    for di in (-1, 0, 1):
        for dj in (-1, 0, 1):
            dst_i = slice(max(0, di), n + min(0, di))
            dst_j = slice(max(0, dj), m + min(0, dj))
            src_i = slice(max(0, -di), n + min(0, -di))
            src_j = slice(max(0, -dj), m + min(0, -dj))
            acc[dst_i, dst_j] += values[src_i, src_j]
            count[dst_i, dst_j] += 1.0
    return JointIntensity(grid=jsi.grid, values=acc / count)


def flat_phase_purity(jsi: JointIntensity) -> float:
    """Purity of the flat-phase reconstruction of a JSI."""
    return schmidt_decompose(reconstruct_flat_phase(jsi)).purity


def estimate_purity_error(jsi: JointIntensity) -> float:
    """Purity error bar: |purity(raw) - purity(box-filtered)|.

    The quoted purity stays the raw one; the filtered value only sizes the
    uncertainty.
    """
    return abs(flat_phase_purity(jsi) - flat_phase_purity(box_filter_3x3(jsi)))


def _snap_uniform(axis: np.ndarray, name: str) -> np.ndarray:
    """Regularize a file axis to exact uniform spacing.

    Grid files carry 9 significant digits, which quantizes ~1e14 Hz
    frequencies to ~1e6 Hz; a uniform axis therefore reads back with step
    jitter of the rounding quantum. Snap to linspace when the jitter is
    explainable by rounding alone, otherwise the axis is genuinely
    non-uniform and rejected.
    """
    if axis.size < 2:
        return axis
    quantum = 10.0 ** (math.floor(math.log10(float(np.max(np.abs(axis))))) - 8)
    diffs = np.diff(axis)
    step = (axis[-1] - axis[0]) / (axis.size - 1)
    if np.any(np.abs(diffs - step) > 2.0 * quantum + 1e-6 * abs(step)):
        raise ValueError(f"{name} axis is not uniform")
    return np.linspace(axis[0], axis[-1], axis.size)


def save_jsi(path, jsi: JointIntensity) -> None:
    """Write a JSI to the CSV grid format."""
    gridio.write_grid_csv(path, jsi.grid.signal_axis, jsi.grid.idler_axis, jsi.values)


def load_jsi(path) -> JointIntensity:
    """Read a JSI from the CSV grid format, validating axes and nonnegativity."""
    signal_axis, idler_axis, values = gridio.read_grid_csv(path, require_nonnegative=True)
    grid = FrequencyGrid(
        signal_axis=_snap_uniform(signal_axis, "signal"),
        idler_axis=_snap_uniform(idler_axis, "idler"),
    )
    return JointIntensity(grid=grid, values=values)
