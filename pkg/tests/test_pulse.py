import math

import numpy as np
import pytest
from scipy.integrate import simpson

from levicav.errors import GridError, NoSwapError, ValidationError
from levicav.pulse import (PhononTrace, PulseProtocol, amplification_envelope,
                           cavity_population, conditional_superposition,
                           find_swap_time, output_field_envelope,
                           phonon_expectation_direct, phonon_expectation_moments,
                           phonon_trace, pulse_envelope, refined_peak)

KAPPA = 1.177e6


def standard(g_over_kappa, **kw):
    return PulseProtocol.standard(g=g_over_kappa * KAPPA, kappa=KAPPA, **kw)


class TestTrace:
    def test_decoupled_oscillator_is_silent(self):
        trace = phonon_trace(standard(0.0))
        assert np.all(trace.n_phonon == 0.0)
        assert trace.peak_value == 0.0

    def test_strong_coupling_peak_half(self):
        trace = phonon_trace(standard(1.0))
        assert trace.peak_value == pytest.approx(0.5, abs=0.05)

    def test_weak_coupling_peak_strictly_lower(self):
        strong = phonon_trace(standard(1.0))
        weak = phonon_trace(standard(0.25))
        assert weak.peak_value < strong.peak_value

    def test_population_bounds(self):
        for g in (0.25, 0.5, 1.0, 2.0):
            trace = phonon_trace(standard(g))
            assert np.all(trace.n_phonon >= 0.0)
            assert np.all(trace.n_phonon <= 1.0 + 1e-12)

    def test_damping_lowers_peak(self):
        undamped = phonon_trace(standard(1.0))
        damped = phonon_trace(PulseProtocol.standard(g=KAPPA, kappa=KAPPA,
                                                     gamma=0.2 * KAPPA))
        assert damped.peak_value < undamped.peak_value

    def test_scaling_invariance(self):
        # (g, kappa, gamma, sigma, 1/L, 1/t) -> lam * (...) leaves the trace alone
        lam = 3.7
        base = phonon_trace(standard(1.0))
        scaled = phonon_trace(PulseProtocol(
            g=lam * KAPPA, kappa=lam * KAPPA, gamma=0.0, sigma=5.6 * lam * KAPPA,
            delay_L=5.0 / (lam * KAPPA),
            t_grid=np.linspace(0.0, 20.0 / (lam * KAPPA), 2000)))
        assert np.max(np.abs(scaled.n_phonon - base.n_phonon)) < 1e-12

    def test_grid_too_coarse_reported(self):
        with pytest.raises(GridError):
            phonon_trace(standard(1.0, n_points=60))

    def test_invalid_grid_rejected(self):
        with pytest.raises(ValidationError):
            PulseProtocol(g=KAPPA, kappa=KAPPA, gamma=0.0, sigma=KAPPA,
                          delay_L=0.0, t_grid=np.array([0.0, 0.0, 1.0]))


class TestOracles:
    def test_direct_and_moment_routes_agree_at_peak(self):
        protocol = standard(1.0)
        t_star, _ = refined_peak(phonon_trace(protocol))
        direct = phonon_expectation_direct(protocol, t_star)
        moments = phonon_expectation_moments(protocol, t_star)
        assert moments == pytest.approx(direct, rel=1e-6)

    def test_production_trace_matches_oracles(self):
        protocol = standard(1.0)
        trace = phonon_trace(protocol)
        t = float(trace.times[len(trace.times) // 2])
        n = float(trace.n_phonon[len(trace.times) // 2])
        assert n == pytest.approx(phonon_expectation_direct(protocol, t), rel=1e-8, abs=1e-14)

    def test_oracles_agree_with_damping(self):
        protocol = PulseProtocol.standard(g=KAPPA, kappa=KAPPA, gamma=0.3 * KAPPA)
        t_star, _ = refined_peak(phonon_trace(protocol))
        direct = phonon_expectation_direct(protocol, t_star)
        moments = phonon_expectation_moments(protocol, t_star)
        assert moments == pytest.approx(direct, rel=1e-6)


class TestPhotonConservation:
    def test_emitted_quanta_recover_input(self):
        # g = 0, gamma = 0: everything reflects eventually
        protocol = standard(0.0, t_max_kappa=40.0, n_points=4000)
        t = np.linspace(0.0, 40.0 / KAPPA, 24001)
        emitted = simpson(np.abs(output_field_envelope(protocol, t)) ** 2, x=t)
        assert emitted == pytest.approx(1.0, abs=1e-4)

    def test_cavity_population_decays_at_2kappa(self):
        protocol = standard(0.0)
        t1 = protocol.delay_L + 4.0 / KAPPA
        t2 = protocol.delay_L + 6.0 / KAPPA
        n1, n2 = cavity_population(protocol, np.array([t1, t2]))
        assert n2 / n1 == pytest.approx(math.exp(-2.0 * KAPPA * (t2 - t1)), rel=1e-3)


class TestSwapTime:
    def test_no_swap_on_flat_trace(self):
        trace = phonon_trace(standard(0.0))
        with pytest.raises(NoSwapError):
            find_swap_time(trace)

    def test_swap_time_near_grid_argmax(self):
        trace = phonon_trace(standard(1.0))
        t_star = find_swap_time(trace)
        step = trace.times[1] - trace.times[0]
        assert abs(t_star - trace.peak_time) <= step

    def test_delay_shift_moves_peak_rigidly(self):
        a = phonon_trace(standard(1.0, delay_kappa=5.0, t_max_kappa=20.0, n_points=4001))
        b = phonon_trace(standard(1.0, delay_kappa=7.0, t_max_kappa=22.0, n_points=4401))
        ta, va = refined_peak(a)
        tb, vb = refined_peak(b)
        assert (tb - ta) * KAPPA == pytest.approx(2.0, abs=1e-6)
        assert vb == pytest.approx(va, rel=1e-8)


class TestSuperposition:
    def test_node_at_displaced_center(self):
        state = conditional_superposition(3.2, 3.2)
        assert state.c0 == 0.0
        assert abs(state.c1) == pytest.approx(1.0, rel=1e-12)

    def test_normalization_for_random_outcomes(self):
        rng = np.random.default_rng(23)
        for _ in range(1000):
            x_L = rng.normal(0.0, 50.0)
            disp = rng.uniform(0.0, 1e4)
            s = conditional_superposition(x_L, disp)
            assert abs(s.c0) ** 2 + abs(s.c1) ** 2 == pytest.approx(1.0, abs=1e-12)

    def test_probabilities_depend_only_on_offset(self):
        # tolerance reflects the roundoff of forming x_L = u + displacement
        # with displacements up to 1e4, not the algorithm itself
        rng = np.random.default_rng(29)
        for _ in range(50):
            u = rng.normal(0.0, 2.0)
            disp = rng.uniform(0.0, 1e4)
            a = conditional_superposition(u, 0.0)
            b = conditional_superposition(u + disp, disp)
            assert abs(b.c0) == pytest.approx(abs(a.c0), abs=1e-9)
            assert abs(b.c1) == pytest.approx(abs(a.c1), abs=1e-9)

    def test_conditional_probabilities_integrate_to_marginals(self):
        # pre-measurement outcome density p(x) = (psi0^2 + psi1^2)/2;
        # integrating each branch weight recovers the 1/2 : 1/2 marginals
        disp = 3.7
        x = np.linspace(disp - 12.0, disp + 12.0, 20001)
        u = x - disp
        psi0_sq = np.exp(-u**2) / math.sqrt(math.pi)
        psi1_sq = 2.0 * u**2 * psi0_sq
        density = 0.5 * (psi0_sq + psi1_sq)
        c0_sq = np.array([abs(conditional_superposition(xi, disp).c0) ** 2 for xi in x])
        c1_sq = 1.0 - c0_sq
        p_ground = simpson(density * c0_sq, x=x)
        p_excited = simpson(density * c1_sq, x=x)
        assert p_ground == pytest.approx(0.5, abs=1e-6)
        assert p_excited == pytest.approx(0.5, abs=1e-6)

    def test_negative_displacement_rejected(self):
        with pytest.raises(ValidationError):
            conditional_superposition(0.0, -1.0)


class TestAmplification:
    def test_starts_at_unity(self):
        mu, q = amplification_envelope(2.0 * KAPPA, KAPPA, 4.1e-13, 2.2e6, 0.0)
        assert float(mu) == 1.0
        assert float(q) == pytest.approx(4.1e-13, rel=1e-15)

    def test_zero_kappa_limit_is_cosh(self):
        g = 0.8
        t = np.linspace(0.0, 5.0, 50)
        mu, _ = amplification_envelope(g, 0.0, 1.0, 1.0, t)
        assert np.max(np.abs(mu - np.cosh(g * t))) < 1e-12

    def test_asymptotic_growth(self):
        g, kappa = 2.0, 1.0
        chi = math.sqrt(g**2 + kappa**2 / 4.0)
        t = np.linspace(5.0, 30.0, 200)
        mu, _ = amplification_envelope(g, kappa, 1.0, 1.0, t)
        assert np.all(np.diff(mu) > 0.0)
        growth = np.diff(np.log(mu)) / np.diff(t)
        assert growth[-1] == pytest.approx(chi - kappa / 2.0, rel=1e-6)

    def test_oscillation_envelope(self):
        omega_t = 2.0 * math.pi * 351e3
        q_m = 4.1e-13
        t = np.linspace(0.0, 4.0 / 351e3, 500)
        mu, q = amplification_envelope(1e5, 5e4, q_m, omega_t, t)
        assert np.max(np.abs(q - q_m * mu * np.cos(omega_t * t))) < 1e-20


def test_pulse_envelope_normalized():
    sigma = 5.6 * KAPPA
    t = np.linspace(-30.0 / sigma, 30.0 / sigma, 40001)
    assert simpson(pulse_envelope(t, sigma) ** 2, x=t) == pytest.approx(1.0, rel=1e-10)
