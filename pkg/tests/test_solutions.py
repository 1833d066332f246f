import cmath

import numpy as np
import pytest

import sqbarrier as sq
from sqbarrier.errors import DegenerateWavenumberError, DomainError
from sqbarrier.model import inner_Q
from sqbarrier.radial_ode import integrate_outgoing, integrate_regular

from conftest import random_complex_k


def coeff_vector(c):
    return np.array([c.alpha_l2, c.beta_l2, c.f_l1, c.f_l2])


class TestCoefficients:
    def test_free_limit_values(self, free_barrier):
        # with Q = k the matching collapses to sin(kr) everywhere
        for k in (0.7, 2.0, 3.9):
            c = sq.coefficients(0, k, free_barrier)
            assert c.alpha_l2 == pytest.approx(-0.5j, rel=1e-12)
            assert c.beta_l2 == pytest.approx(0.5j, rel=1e-12)
            assert c.f_l1 == pytest.approx(-0.5j, rel=1e-12)
            assert c.f_l2 == pytest.approx(0.5j, rel=1e-12)

    def test_l0_against_ode_shooting(self, barrier):
        # integrate chi from the origin, then read off the outgoing/incoming
        # amplitudes from (chi, chi') at r = b and compare with F1, F2
        k = 2.0
        c = sq.coefficients(0, k, barrier)
        b = barrier.b
        grid = np.array([b])
        chi_b = integrate_regular(0, k, barrier, grid)[0]
        h = 1e-6
        chi_b_d = (integrate_regular(0, k, barrier, np.array([b + h]))[0]
                   - integrate_regular(0, k, barrier, np.array([b - h]))[0]) / (2 * h)
        eb = cmath.exp(1j * k * b)
        f1 = 0.5 * (chi_b + chi_b_d / (1j * k)) / eb
        f2 = 0.5 * (chi_b - chi_b_d / (1j * k)) * eb
        assert f1 == pytest.approx(c.f_l1, rel=1e-6)
        assert f2 == pytest.approx(c.f_l2, rel=1e-6)

    @pytest.mark.parametrize("l", [0, 1, 2])
    def test_interface_continuity(self, barrier, rng, l):
        for k in np.concatenate([rng.uniform(0.4, 5, 4), random_complex_k(rng, 4)]):
            fn = sq.RadialFunction.regular(l, k, barrier)
            for r_if, regions in ((barrier.a, ("inner", "barrier")),
                                  (barrier.b, ("barrier", "outer"))):
                for deriv in (False, True):
                    lo = fn.branch_value(regions[0], r_if, deriv)
                    hi = fn.branch_value(regions[1], r_if, deriv)
                    assert abs(lo - hi) <= 1e-10 * max(1.0, abs(lo), abs(hi))

    def test_l0_reduction_of_general_path(self, barrier):
        for k in np.linspace(0.2, 6.0, 50):
            ref = coeff_vector(sq.coefficients_l0_closed_form(k, barrier))
            scale = max(1.0, np.max(np.abs(ref)))
            for general in (sq.coefficients_linear_solve(0, k, barrier),
                            sq.coefficients_closed_form(0, k, barrier)):
                assert np.max(np.abs(coeff_vector(general) - ref)) <= 1e-12 * scale

    @pytest.mark.parametrize("l", [1, 2])
    def test_closed_form_matches_linear_solve(self, barrier, rng, l):
        for k in np.concatenate([rng.uniform(0.4, 5, 5), random_complex_k(rng, 5)]):
            a = coeff_vector(sq.coefficients_linear_solve(l, k, barrier))
            b = coeff_vector(sq.coefficients_closed_form(l, k, barrier))
            assert np.max(np.abs(a - b)) <= 1e-10 * max(1.0, np.max(np.abs(a)))

    @pytest.mark.parametrize("l", [0, 1, 2])
    def test_q_branch_invariance(self, barrier, rng, l):
        r_mid = 0.5 * (barrier.a + barrier.b)
        for k in random_complex_k(rng, 6):
            cp = sq.coefficients_linear_solve(l, k, barrier)
            cm = sq.coefficients_linear_solve(l, k, barrier, Q=-inner_Q(k, barrier))
            scale = max(1.0, abs(cp.f_l1), abs(cp.f_l2))
            assert abs(cp.f_l1 - cm.f_l1) <= 1e-12 * scale
            assert abs(cp.f_l2 - cm.f_l2) <= 1e-12 * scale
            # the barrier-region function is branch independent even though
            # the amplitude pair swaps (with an l-dependent sign)
            val_p = sq.RadialFunction.from_coefficients(cp, barrier)(r_mid)
            fn_m = sq.RadialFunction(
                l=l, k=complex(k), spec=barrier, kind="regular",
                inner_j=1 + 0j, inner_plus=0j, inner_minus=0j,
                mid_plus=cm.alpha_l2, mid_minus=cm.beta_l2,
                outer_plus=cm.f_l1, outer_minus=cm.f_l2,
                q_override=-inner_Q(k, barrier))
            assert abs(val_p - fn_m(r_mid)) <= 1e-12 * max(1.0, abs(val_p))

    def test_degenerate_wavenumber_raises(self, barrier):
        with pytest.raises(DegenerateWavenumberError):
            sq.coefficients(0, 0.0, barrier)
        # v0 = 4 puts the barrier top exactly at k = 2, making Q = 0 in floats
        spec = sq.BarrierSpec(v0=4.0, a=1.0, b=2.0)
        with pytest.raises(DegenerateWavenumberError):
            sq.coefficients(0, 2.0, spec)


class TestChi:
    def test_vanishes_at_origin(self, barrier):
        for l in (0, 1, 2):
            assert sq.chi(l, 2.0, barrier, 0.0) == 0

    def test_free_limit_is_sine(self, free_barrier):
        k = 1.3
        rs = np.linspace(0.0, 5.0, 40)
        values = sq.chi(0, k, free_barrier, rs)
        assert np.max(np.abs(values - np.sin(k * rs))) < 1e-12

    @pytest.mark.parametrize("l", [0, 1, 2])
    @pytest.mark.parametrize("k", [2.0, 1.4 - 0.6j])
    def test_matches_ode_oracle(self, barrier, l, k):
        rs = np.linspace(0.0, 3 * barrier.b, 121)
        closed = sq.chi(l, k, barrier, rs)
        oracle = integrate_regular(l, k, barrier, rs)
        assert (np.max(np.abs(closed - oracle))
                <= 1e-8 * np.max(np.abs(oracle)))

    def test_real_for_real_k(self, barrier):
        # real ODE with real initial slope: chi is real everywhere at l = 0
        rs = np.linspace(0.0, 6.0, 61)
        values = sq.chi(0, 1.7, barrier, rs)
        assert np.max(np.abs(values.imag)) <= 1e-12 * np.max(np.abs(values))

    def test_deriv_matches_finite_difference(self, barrier):
        k, l = 1.9 - 0.4j, 2
        for r in (0.4, 1.5, 3.1):
            h = 1e-6
            fd = (sq.chi(l, k, barrier, r + h) - sq.chi(l, k, barrier, r - h)) / (2 * h)
            assert sq.chi_deriv(l, k, barrier, r) == pytest.approx(fd, rel=1e-7)


class TestPsiOutgoing:
    def test_plane_wave_outside(self, barrier):
        k = 2.0 - 0.3j
        for r in (2.5, 4.0, 6.0):
            assert sq.psi_outgoing(0, k, barrier, r) == pytest.approx(
                cmath.exp(1j * k * r), rel=1e-13)

    def test_free_limit_everywhere(self, free_barrier):
        k = 1.1
        rs = np.linspace(0.1, 5.0, 30)
        values = sq.psi_outgoing(0, k, free_barrier, rs)
        assert np.max(np.abs(values - np.exp(1j * k * rs))) < 1e-12

    def test_interior_matches_backward_ode(self, barrier):
        k = 2.0 - 0.3j
        rs = np.linspace(0.05, barrier.b, 50)
        closed = sq.psi_outgoing(0, k, barrier, rs)
        oracle = integrate_outgoing(0, k, barrier, rs,
                                    cmath.exp(1j * k * barrier.b),
                                    1j * k * cmath.exp(1j * k * barrier.b))
        assert np.max(np.abs(closed - oracle)) <= 1e-8 * np.max(np.abs(oracle))

    @pytest.mark.parametrize("l", [1, 2])
    def test_higher_l_matches_backward_ode(self, barrier, l):
        k = 1.6 - 0.2j
        fn = sq.RadialFunction.outgoing(l, k, barrier)
        rs = np.linspace(0.3, barrier.b, 40)
        oracle = integrate_outgoing(l, k, barrier, rs,
                                    fn(barrier.b), fn.derivative(barrier.b))
        assert np.max(np.abs(fn(rs) - oracle)) <= 1e-8 * np.max(np.abs(oracle))

    def test_singular_at_origin(self, barrier):
        with pytest.raises(DomainError):
            sq.psi_outgoing(1, 2.0, barrier, 0.0)


class TestLippmannSchwinger:
    def test_free_limit(self, free_barrier):
        k = 1.7
        rs = np.linspace(0.2, 4.0, 17)
        plus = sq.lippmann_schwinger_ket(1, k, free_barrier, rs)
        minus = sq.lippmann_schwinger_ket(-1, k, free_barrier, rs)
        assert np.max(np.abs(plus - np.sin(k * rs))) < 1e-12
        assert np.max(np.abs(minus - np.sin(k * rs))) < 1e-12

    def test_modulus_relation(self, barrier):
        k = 2.3
        c = sq.coefficients(0, k, barrier)
        for r in (0.5, 1.5, 3.0):
            ket = sq.lippmann_schwinger_ket(1, k, barrier, r)
            assert abs(ket * c.f_l2) == pytest.approx(abs(sq.chi(0, k, barrier, r)) / 2)

    def test_ratio_is_inverse_s_matrix(self, barrier):
        k = 1.9
        s = sq.s_matrix(0, k, barrier)
        for r in (0.7, 2.2, 4.5):
            plus = sq.lippmann_schwinger_ket(1, k, barrier, r)
            minus = sq.lippmann_schwinger_ket(-1, k, barrier, r)
            assert minus / plus == pytest.approx(1 / s, rel=1e-12)

    def test_rejects_complex_k(self, barrier):
        with pytest.raises(DomainError):
            sq.lippmann_schwinger_ket(1, -2.0, barrier, 1.0)
