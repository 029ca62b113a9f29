"""Discretization of the signal/idler plane and evaluation of the joint
spectral amplitude.

The JSA of a resonator-based four-wave-mixing source is

    f(nu_s, nu_i) = int dnu_p  alpha(nu_p) alpha(nu_s + nu_i - nu_p)
                    L_p(nu_p) L_p(nu_s + nu_i - nu_p) L_s*(nu_s) L_i*(nu_i)

with unit phase matching across the grid. `compute_jsa_direct` evaluates
the quadrature independently for every matrix element; `compute_jsa_fast`
exploits that the integral depends on (nu_s, nu_i) only through the sum
nu+ = nu_s + nu_i, writing f = C(nu+) L_s*(nu_s) L_i*(nu_i) with C a 1-D
autoconvolution evaluated once per distinct sum.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import PumpSpec, ResonatorSpec, lorentzian, pump_amplitude
from .errors import DegeneratePumpError

AXIS_JITTER_REL = 1e-6
MIN_GRID_POINTS = 8
MIN_PUMP_STEPS = 64


def _check_uniform_ascending(axis: np.ndarray, name: str) -> float:
    """Validate a uniform ascending axis and return its step."""
    if axis.ndim != 1 or axis.size < MIN_GRID_POINTS:
        raise ValueError(f"{name} must be a 1-D axis with at least {MIN_GRID_POINTS} points")
    diffs = np.diff(axis)
    step = float(diffs[0])
    if step <= 0:
        raise ValueError(f"{name} must be strictly ascending")
    if np.any(np.abs(diffs - step) > AXIS_JITTER_REL * step):
        raise ValueError(f"{name} is not uniform within {AXIS_JITTER_REL:g} relative jitter")
    return step


@dataclass(frozen=True, eq=False)
class FrequencyGrid:
    """Uniform signal and idler frequency axes defining the JSA sampling."""

    signal_axis: np.ndarray
    idler_axis: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "signal_axis", np.asarray(self.signal_axis, dtype=float))
        object.__setattr__(self, "idler_axis", np.asarray(self.idler_axis, dtype=float))
        _check_uniform_ascending(self.signal_axis, "signal_axis")
        _check_uniform_ascending(self.idler_axis, "idler_axis")

    @property
    def step_s(self) -> float:
        return float(self.signal_axis[1] - self.signal_axis[0])

    @property
    def step_i(self) -> float:
        return float(self.idler_axis[1] - self.idler_axis[0])

    @property
    def shape(self) -> tuple[int, int]:
        """(n_idler, n_signal) - rows are idler frequencies."""
        return (self.idler_axis.size, self.signal_axis.size)

    def same_axes(self, other: "FrequencyGrid") -> bool:
        return (
            self.signal_axis.size == other.signal_axis.size
            and self.idler_axis.size == other.idler_axis.size
            and np.allclose(self.signal_axis, other.signal_axis, rtol=0, atol=AXIS_JITTER_REL * self.step_s)
            and np.allclose(self.idler_axis, other.idler_axis, rtol=0, atol=AXIS_JITTER_REL * self.step_i)
        )


@dataclass(frozen=True, eq=False)
class JointAmplitude:
    """Complex JSA matrix sampled on a grid, indexed [idler, signal]."""

    grid: FrequencyGrid
    values: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", np.asarray(self.values, dtype=complex))
        if self.values.shape != self.grid.shape:
            raise ValueError(
                f"values shape {self.values.shape} does not match grid shape {self.grid.shape}"
            )
        if not np.all(np.isfinite(self.values)):
            raise ValueError("joint amplitude contains non-finite values")


@dataclass(frozen=True, eq=False)
class JointIntensity:
    """Nonnegative |JSA|^2 matrix sampled on a grid, indexed [idler, signal]."""

    grid: FrequencyGrid
    values: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", np.asarray(self.values, dtype=float))
        if self.values.shape != self.grid.shape:
            raise ValueError(
                f"values shape {self.values.shape} does not match grid shape {self.grid.shape}"
            )
        if not np.all(np.isfinite(self.values)):
            raise ValueError("joint intensity contains non-finite values")
        if np.any(self.values < 0):
            raise ValueError("joint intensity contains negative values")


@dataclass(frozen=True)
class QuadratureSpec:
    """Uniform pump-frequency quadrature window.

    `pump_span` is the half-width of the window about the pump centre,
    `pump_steps` the number of quadrature points (trapezoidal weights at
    the window ends).
    """

    pump_span: float
    pump_steps: int

    def __post_init__(self) -> None:
        if self.pump_span <= 0:
            raise ValueError(f"pump_span must be positive, got {self.pump_span}")
        if self.pump_steps < MIN_PUMP_STEPS:
            raise ValueError(f"pump_steps must be >= {MIN_PUMP_STEPS}, got {self.pump_steps}")

    @property
    def step(self) -> float:
        return 2.0 * self.pump_span / (self.pump_steps - 1)


def make_grid(resonator: ResonatorSpec, span_linewidths: float, n: int) -> FrequencyGrid:
    """Square grid of n x n points spanning +/- span_linewidths * Gamma
    about the signal and idler resonance centres."""
    if n < MIN_GRID_POINTS:
        raise ValueError(f"n must be >= {MIN_GRID_POINTS}, got {n}")
    if span_linewidths <= 0:
        raise ValueError(f"span_linewidths must be positive, got {span_linewidths}")
    half_s = span_linewidths * resonator.gamma_signal
    half_i = span_linewidths * resonator.gamma_idler
    return FrequencyGrid(
        signal_axis=np.linspace(resonator.signal_center - half_s, resonator.signal_center + half_s, n),
        idler_axis=np.linspace(resonator.idler_center - half_i, resonator.idler_center + half_i, n),
    )


def auto_quadrature(pump: PumpSpec, resonator: ResonatorSpec) -> QuadratureSpec:
    """Quadrature window and step resolving the resonance, the envelope and
    (for fringe-bearing pumps) the dual-pulse interference.

    Window half-width: max(8 Gamma, 4 FWHM, 4/delta_tau); step bound:
    min(Gamma/20, FWHM/20, 1/(10 delta_tau)). The delta_tau terms apply
    only when the pump actually carries fringes (0 < eta < 1).
    """
    gamma = resonator.gamma_pump
    fwhm = pump.spectral_fwhm
    span = max(8.0 * gamma, 4.0 * fwhm)
    step = min(gamma / 20.0, fwhm / 20.0)
    if pump.has_fringes:
        span = max(span, 4.0 / pump.delta_tau)
        step = min(step, 1.0 / (10.0 * pump.delta_tau))
    steps = max(MIN_PUMP_STEPS, int(np.ceil(2.0 * span / step)) + 1)
    return QuadratureSpec(pump_span=span, pump_steps=steps)


def _validate_quadrature(pump: PumpSpec, resonator: ResonatorSpec, quad: QuadratureSpec) -> None:
    bound = resonator.gamma_pump / 20.0
    if pump.has_fringes:
        bound = min(bound, 1.0 / (10.0 * pump.delta_tau))
    if quad.step > bound * (1.0 + 1e-12):
        raise ValueError(
            f"quadrature step {quad.step:.6g} Hz violates the resolution rule "
            f"(must be <= {bound:.6g} Hz for this pump/resonator)"
        )


def _validate_centering(grid: FrequencyGrid, resonator: ResonatorSpec) -> None:
    mid_s = 0.5 * (grid.signal_axis[0] + grid.signal_axis[-1])
    mid_i = 0.5 * (grid.idler_axis[0] + grid.idler_axis[-1])
    if abs(mid_s - resonator.signal_center) > grid.step_s:
        raise ValueError("signal axis is not centred on the signal resonance (within one step)")
    if abs(mid_i - resonator.idler_center) > grid.step_i:
        raise ValueError("idler axis is not centred on the idler resonance (within one step)")


def _pump_quadrature(pump: PumpSpec, quad: QuadratureSpec):
    """Quadrature nodes, trapezoid weights, pump samples and the unit-energy scale.

    The scale s makes sum |s*alpha(nu_k)|^2 * step = 1 on the nodes; the
    JSA then carries s^2 through its two pump factors.
    """
    nodes = np.linspace(pump.center - quad.pump_span, pump.center + quad.pump_span, quad.pump_steps)
    h = nodes[1] - nodes[0]
    weights = np.full(quad.pump_steps, h)
    weights[0] = weights[-1] = 0.5 * h
    alpha = pump_amplitude(nodes, pump)
    energy = float(np.sum(np.abs(alpha) ** 2)) * h
    if energy == 0.0:
        raise DegeneratePumpError(
            "pump amplitude vanishes identically on the quadrature window "
            f"(eta={pump.eta}, delta_tau={pump.delta_tau})"
        )
    scale = 1.0 / np.sqrt(energy)
    return nodes, weights, alpha, scale


def compute_jsa_direct(
    pump: PumpSpec,
    resonator: ResonatorSpec,
    grid: FrequencyGrid,
    quad: QuadratureSpec,
) -> JointAmplitude:
    """Evaluate the JSA by direct quadrature, one integral per element.

    This is the reference path; `compute_jsa_fast` must agree with it to
    better than 1e-6 relative.
    """
    _validate_quadrature(pump, resonator, quad)
    _validate_centering(grid, resonator)
    nodes, weights, alpha, scale = _pump_quadrature(pump, quad)

    wg1 = weights * alpha * lorentzian(nodes, pump.center, resonator.gamma_pump) * scale
    conj_ls = np.conj(lorentzian(grid.signal_axis, resonator.signal_center, resonator.gamma_signal))
    conj_li = np.conj(lorentzian(grid.idler_axis, resonator.idler_center, resonator.gamma_idler))

    n_i, n_s = grid.shape
    values = np.empty((n_i, n_s), dtype=complex)
    for i in range(n_i):
        # (n_s, m) matrix of the energy-conjugate pump argument per element
        shifted = (grid.idler_axis[i] + grid.signal_axis)[:, None] - nodes[None, :]
        g2 = pump_amplitude(shifted, pump) * lorentzian(shifted, pump.center, resonator.gamma_pump)
        values[i, :] = (g2 * wg1[None, :]).sum(axis=1) * scale * conj_ls * conj_li[i]
    return JointAmplitude(grid=grid, values=values)


def _energy_sum_kernel(pump: PumpSpec, resonator: ResonatorSpec, nodes, wg1, scale, nu_sum):
    """C(nu+) = int alpha L (at nu_p) * alpha L (at nu+ - nu_p) dnu_p for
    an array of sum frequencies."""
    shifted = nu_sum[:, None] - nodes[None, :]
    g2 = pump_amplitude(shifted, pump) * lorentzian(shifted, pump.center, resonator.gamma_pump)
    return (g2 * wg1[None, :]).sum(axis=1) * scale


def compute_jsa_fast(
    pump: PumpSpec,
    resonator: ResonatorSpec,
    grid: FrequencyGrid,
    quad: QuadratureSpec,
) -> JointAmplitude:
    """Evaluate the JSA through the factorization f = C(nu_s + nu_i) L_s* L_i*.

    With equal axis steps the n_s * n_i sums collapse onto n_s + n_i - 1
    distinct values and C is evaluated once per value; otherwise C is
    evaluated at every sum (same accuracy, no interpolation).
    """
    _validate_quadrature(pump, resonator, quad)
    _validate_centering(grid, resonator)
    nodes, weights, alpha, scale = _pump_quadrature(pump, quad)

    wg1 = weights * alpha * lorentzian(nodes, pump.center, resonator.gamma_pump) * scale
    conj_ls = np.conj(lorentzian(grid.signal_axis, resonator.signal_center, resonator.gamma_signal))
    conj_li = np.conj(lorentzian(grid.idler_axis, resonator.idler_center, resonator.gamma_idler))

    n_i, n_s = grid.shape
    step_s, step_i = grid.step_s, grid.step_i
    if abs(step_s - step_i) <= AXIS_JITTER_REL * step_s:
        # memoized path: nu+ takes n_s + n_i - 1 distinct values
        base = grid.idler_axis[0] + grid.signal_axis[0]
        nu_sum = base + np.arange(n_i + n_s - 1) * step_s
        c_values = _energy_sum_kernel(pump, resonator, nodes, wg1, scale, nu_sum)
        idx = np.arange(n_i)[:, None] + np.arange(n_s)[None, :]
        values = c_values[idx] * conj_li[:, None] * conj_ls[None, :]
    else:
        values = np.empty((n_i, n_s), dtype=complex)
        for i in range(n_i):
            nu_sum = grid.idler_axis[i] + grid.signal_axis
            values[i, :] = (
                _energy_sum_kernel(pump, resonator, nodes, wg1, scale, nu_sum) * conj_ls * conj_li[i]
            )
    return JointAmplitude(grid=grid, values=values)


def jsi_from_jsa(jsa: JointAmplitude) -> JointIntensity:
    """Element-wise |f|^2."""
    return JointIntensity(grid=jsa.grid, values=np.abs(jsa.values) ** 2)
