import math

import numpy as np
import pytest

import ringjsa as r


class TestResonatorSpec:
    def test_energy_matching_enforced(self):
        with pytest.raises(ValueError, match="energy matching"):
            r.ResonatorSpec(
                pump_center=193.9e12,
                signal_center=194.9e12,
                idler_center=192.9e12 + 5e3,
                linewidth=7.756e9,
            )

    def test_energy_matching_tolerance(self):
        spec = r.ResonatorSpec(
            pump_center=193.9e12,
            signal_center=194.9e12,
            idler_center=192.9e12 + 0.5e3,
            linewidth=7.756e9,
        )
        assert spec.gamma_pump == 7.756e9

    def test_shared_linewidth_with_overrides(self):
        spec = r.ResonatorSpec(
            pump_center=193.9e12,
            signal_center=194.9e12,
            idler_center=192.9e12,
            linewidth=7.756e9,
            signal_linewidth=9e9,
        )
        assert spec.gamma_pump == 7.756e9
        assert spec.gamma_signal == 9e9
        assert spec.gamma_idler == 7.756e9

    def test_from_channels_q(self):
        spec = r.ResonatorSpec.from_channels(q=2.5e4)
        assert spec.pump_center == 193.9e12
        assert spec.signal_center == 194.9e12
        assert spec.idler_center == 192.9e12
        assert spec.gamma_pump == pytest.approx(7.756e9, rel=1e-6)
        assert spec.q_factor == pytest.approx(2.5e4, rel=1e-12)

    def test_from_channels_needs_exactly_one(self):
        with pytest.raises(ValueError):
            r.ResonatorSpec.from_channels()
        with pytest.raises(ValueError):
            r.ResonatorSpec.from_channels(q=1e4, linewidth=1e9)

    @pytest.mark.parametrize("field", ["pump_center", "signal_center", "idler_center", "linewidth"])
    def test_rejects_nonpositive(self, field):
        kwargs = dict(
            pump_center=193.9e12,
            signal_center=194.9e12,
            idler_center=192.9e12,
            linewidth=7.756e9,
        )
        kwargs[field] = -1.0
        with pytest.raises(ValueError):
            r.ResonatorSpec(**kwargs)


class TestPumpSpec:
    def test_nu0_defaults_to_center(self):
        pump = r.PumpSpec(center=193.9e12, tau_p=33e-12)
        assert pump.nu0 == 193.9e12

    def test_mode_property(self):
        assert r.PumpSpec(center=1e14, tau_p=1e-11).mode == "single"
        assert r.PumpSpec(center=1e14, tau_p=1e-11, eta=0.6, delta_tau=2e-11).mode == "dual"

    def test_from_fwhm(self):
        pump = r.PumpSpec.from_fwhm(193.9e12, 52.7e9)
        assert pump.spectral_fwhm == pytest.approx(52.7e9, rel=1e-12)

    def test_validation(self):
        with pytest.raises(ValueError):
            r.PumpSpec(center=1e14, tau_p=1e-11, eta=1.2)
        with pytest.raises(ValueError):
            r.PumpSpec(center=1e14, tau_p=1e-11, delta_tau=-1e-12)
        with pytest.raises(ValueError):
            r.PumpSpec(center=1e14, tau_p=0.0)


class TestLorentzian:
    def test_peak(self):
        assert r.lorentzian(193.9e12, 193.9e12, 7.756e9) == 1.0 + 0.0j

    def test_half_power_at_half_linewidth(self):
        gamma = 7.756e9
        for sign in (+1, -1):
            value = r.lorentzian(193.9e12 + sign * gamma / 2, 193.9e12, gamma)
            assert abs(value) ** 2 == pytest.approx(0.5, abs=1e-12)

    def test_one_linewidth_detuning(self):
        # (G/2) / ((G/2) + i G) = 1 / (1 + 2i) = 0.2 - 0.4i
        value = r.lorentzian(193.9e12 + 7.756e9, 193.9e12, 7.756e9)
        assert value == pytest.approx(0.2 - 0.4j, abs=1e-12)

    def test_even_magnitude_and_monotone_decay(self):
        gamma = 2e9
        detunings = np.linspace(0.1e9, 50e9, 40)
        mags_pos = np.abs(r.lorentzian(1e14 + detunings, 1e14, gamma))
        mags_neg = np.abs(r.lorentzian(1e14 - detunings, 1e14, gamma))
        np.testing.assert_allclose(mags_pos, mags_neg, rtol=1e-12)
        assert np.all(np.diff(mags_pos) < 0)

    def test_rejects_nonpositive_gamma(self):
        with pytest.raises(ValueError):
            r.lorentzian(1e14, 1e14, 0.0)


class TestPumpAmplitude:
    def test_single_pulse_reduction(self):
        nu = np.linspace(193.8e12, 194.0e12, 101)
        single = r.PumpSpec(center=193.9e12, tau_p=33.4e-12)
        # eta = 1 ignores any delay: bitwise identical samples
        delayed = r.PumpSpec(center=193.9e12, tau_p=33.4e-12, eta=1.0, delta_tau=20e-12)
        expected = 1.0 / np.cosh((nu - 193.9e12) * 33.4e-12)
        np.testing.assert_allclose(r.pump_amplitude(nu, single), expected, rtol=1e-12)
        assert np.array_equal(r.pump_amplitude(nu, single), r.pump_amplitude(nu, delayed))

    def test_destructive_interference_at_center(self):
        pump = r.PumpSpec(center=193.9e12, tau_p=33.4e-12, eta=0.5, delta_tau=0.0)
        assert r.pump_amplitude(193.9e12, pump) == 0.0

    def test_pi_fringe_is_constructive(self):
        # half a fringe period from nu0 the two copies add: sqrt(2) * envelope
        dtau = 20e-12
        pump = r.PumpSpec(center=193.9e12, tau_p=33.4e-12, eta=0.5, delta_tau=dtau)
        nu = 193.9e12 + 1.0 / (2.0 * dtau)
        envelope = 1.0 / math.cosh((nu - 193.9e12) * 33.4e-12)
        assert abs(r.pump_amplitude(nu, pump)) == pytest.approx(
            math.sqrt(2.0) * envelope, rel=1e-12
        )

    def test_eta_zero_is_pure_phase_of_single(self):
        nu = np.linspace(193.7e12, 194.1e12, 201)
        base = dict(center=193.9e12, tau_p=33.4e-12, delta_tau=17e-12)
        a0 = r.pump_amplitude(nu, r.PumpSpec(eta=0.0, **base))
        a1 = r.pump_amplitude(nu, r.PumpSpec(eta=1.0, **base))
        np.testing.assert_allclose(np.abs(a0), np.abs(a1), rtol=1e-12)

    def test_fringe_factor_periodicity(self):
        dtau = 20e-12
        pump = r.PumpSpec(center=193.9e12, tau_p=33.4e-12, eta=0.3, delta_tau=dtau)
        nu = np.linspace(193.85e12, 193.95e12, 50)
        period = 1.0 / dtau

        def fringe(freqs):
            envelope = 1.0 / np.cosh((freqs - pump.center) * pump.tau_p)
            return np.abs(r.pump_amplitude(freqs, pump) / envelope) ** 2

        np.testing.assert_allclose(fringe(nu), fringe(nu + period), rtol=1e-9)
        np.testing.assert_allclose(fringe(nu), fringe(nu + 3 * period), rtol=1e-9)


class TestNormalizeEnergy:
    def test_two_sample_exact(self):
        out = r.normalize_energy(np.array([1.0, 1.0]), step=0.5)
        np.testing.assert_array_equal(out, np.array([1.0, 1.0]))

    def test_idempotent_on_unit_energy(self):
        rng = np.random.default_rng(3)
        a = rng.normal(size=32) + 1j * rng.normal(size=32)
        step = 0.125
        unit = r.normalize_energy(a, step)
        np.testing.assert_allclose(r.normalize_energy(unit, step), unit, rtol=1e-12)

    def test_scale_invariance(self):
        rng = np.random.default_rng(4)
        a = rng.normal(size=16) + 1j * rng.normal(size=16)
        np.testing.assert_allclose(
            r.normalize_energy(3.0 * a, 0.25), r.normalize_energy(a, 0.25), rtol=1e-12
        )

    def test_unit_energy_postcondition(self):
        rng = np.random.default_rng(5)
        for _ in range(10):
            a = rng.normal(size=64) + 1j * rng.normal(size=64)
            step = float(rng.uniform(0.01, 10.0))
            out = r.normalize_energy(a, step)
            assert np.sum(np.abs(out) ** 2) * step == pytest.approx(1.0, rel=1e-12)

    def test_zero_input_raises(self):
        with pytest.raises(r.DegeneratePumpError):
            r.normalize_energy(np.zeros(8), 1.0)
