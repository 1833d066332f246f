"""Programmatic invariant suite over a configured barrier.

Each check measures a residual and compares it against the tolerance the
invariant is specified with.  The suite is what `sqbarrier verify` runs; the
pytest acceptance module exercises the same physics with its own pinned
parameters.  Checks that need poles degrade gracefully when the search
rectangle is empty (e.g. a zero-height barrier): they pass with a note.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SquareBarrierError
from .gamow import (
    component_wave,
    decay_probability,
    decaying_state,
    emission_speed,
    probability_density,
    verify_outgoing_condition,
)
from .green import derivative_jump, green_function, green_residue, wronskian
from .model import BarrierSpec
from .numerics import (
    ComplexRect,
    L_MAX,
    contour_residue,
    riccati_bessel_j,
    riccati_hankel,
    riccati_hankel_deriv,
)
from .radial_ode import integrate_outgoing, integrate_regular
from .resonances import find_poles, pole_pair, three_method_agreement
from .smatrix import s_matrix, s_residue
from .solutions import (
    RadialFunction,
    coefficients,
    coefficients_closed_form,
    coefficients_l0_closed_form,
    coefficients_linear_solve,
)

DEFAULT_RECT = ComplexRect(0.1, 6.0, -2.0, -1e-9)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    measured: float
    threshold: float
    note: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f"  ({self.note})" if self.note else ""
        return (f"{status}  {self.name}: measured {self.measured:.3e} "
                f"<= {self.threshold:.3e}{extra}")


def _result(name, measured, threshold, note=""):
    return CheckResult(name=name, passed=bool(measured <= threshold),
                       measured=float(measured), threshold=threshold, note=note)


def _coeff_vector(c):
    return np.array([c.alpha_l2, c.beta_l2, c.f_l1, c.f_l2])


def _random_k(rng, n, im_range=(-0.8, 0.8)):
    re = rng.uniform(0.3, 5.0, n)
    im = rng.uniform(*im_range, n)
    return re + 1j * im


def check_riccati_identity() -> CheckResult:
    zs = np.array([m * np.exp(1j * ph) for m in (0.1, 0.5, 1.0, 3.0, 10.0, 30.0)
                   for ph in np.linspace(0, 2 * np.pi, 8, endpoint=False)])
    zs = zs[np.abs(zs.imag) < 25]  # keep exponentials in range
    worst = 0.0
    for l in range(L_MAX + 1):
        hp, hm = riccati_hankel(1, l, zs), riccati_hankel(-1, l, zs)
        diff = np.abs(riccati_bessel_j(l, zs) - (hp - hm) / 2j)
        scale = np.maximum.reduce([np.abs(hp), np.abs(hm), np.ones_like(diff)])
        worst = max(worst, float(np.max(diff / scale)))
    return _result("riccati defining identity", worst, 1e-12)


def check_riccati_wronskian() -> CheckResult:
    rng = np.random.default_rng(11)
    zs = _random_k(rng, 40, im_range=(-3.0, 3.0)) * rng.uniform(0.2, 5.0, 40)
    worst = 0.0
    for l in range(L_MAX + 1):
        term_a = riccati_hankel(1, l, zs) * riccati_hankel_deriv(-1, l, zs)
        term_b = riccati_hankel_deriv(1, l, zs) * riccati_hankel(-1, l, zs)
        scale = np.maximum(2.0, np.maximum(np.abs(term_a), np.abs(term_b)))
        worst = max(worst, float(np.max(np.abs(term_a - term_b + 2j) / scale)))
    return _result("riccati Wronskian = -2i", worst, 1e-10)


def check_unitarity(spec, l_values) -> CheckResult:
    ks = np.linspace(0.05, 10.0, 200)
    worst = 0.0
    for l in l_values:
        for k in ks:
            worst = max(worst, abs(abs(s_matrix(l, k, spec)) - 1.0))
    return _result("S unitarity on the real axis", worst, 1e-12)


def check_schwarz(spec, l_values, rng) -> CheckResult:
    ks = _random_k(rng, 20, im_range=(0.05, 0.8))
    worst = 0.0
    for l in l_values:
        for k in ks:
            prod = s_matrix(l, k, spec) * np.conj(s_matrix(l, np.conj(k), spec))
            worst = max(worst, abs(prod - 1.0))
    return _result("unitarity continuation S(k) conj(S(conj k)) = 1", worst, 1e-10)


def check_continuity(spec, l_values, rng) -> CheckResult:
    ks = np.concatenate([rng.uniform(0.3, 5.0, 5), _random_k(rng, 5)])
    worst = 0.0
    for l in l_values:
        for k in ks:
            for fn in (RadialFunction.regular(l, k, spec),
                       RadialFunction.outgoing(l, k, spec)):
                for r_if, regions in ((spec.a, ("inner", "barrier")),
                                      (spec.b, ("barrier", "outer"))):
                    for deriv in (False, True):
                        lo = fn.branch_value(regions[0], r_if, deriv)
                        hi = fn.branch_value(regions[1], r_if, deriv)
                        scale = max(1.0, abs(lo), abs(hi))
                        worst = max(worst, abs(lo - hi) / scale)
    return _result("chi/psi continuity at the interfaces", worst, 1e-10)


def check_l0_reduction(spec) -> CheckResult:
    ks = np.linspace(0.2, 6.0, 50)
    worst = 0.0
    for k in ks:
        ref = _coeff_vector(coefficients_l0_closed_form(k, spec))
        scale = max(1.0, float(np.max(np.abs(ref))))
        for other in (coefficients_linear_solve(0, k, spec),
                      coefficients_closed_form(0, k, spec)):
            worst = max(worst, float(np.max(np.abs(_coeff_vector(other) - ref))) / scale)
    return _result("general-l path reduces to the l=0 closed form", worst, 1e-12)


def check_q_branch(spec, l_values, rng) -> CheckResult:
    from .model import inner_Q
    ks = _random_k(rng, 8)
    worst = 0.0
    r_mid = 0.5 * (spec.a + spec.b)
    for l in l_values:
        for k in ks:
            cp = coefficients_linear_solve(l, k, spec)
            cm = coefficients_linear_solve(l, k, spec, Q=-inner_Q(k, spec))
            scale = max(1.0, abs(cp.f_l1), abs(cp.f_l2))
            worst = max(worst, abs(cp.f_l1 - cm.f_l1) / scale,
                        abs(cp.f_l2 - cm.f_l2) / scale)
            mid_p = RadialFunction.from_coefficients(cp, spec)(r_mid)
            fn_m = RadialFunction(l=l, k=complex(k), spec=spec, kind="regular",
                                  inner_j=1.0 + 0j, inner_plus=0j, inner_minus=0j,
                                  mid_plus=cm.alpha_l2, mid_minus=cm.beta_l2,
                                  outer_plus=cm.f_l1, outer_minus=cm.f_l2,
                                  q_override=-inner_Q(k, spec))
            worst = max(worst, abs(mid_p - fn_m(r_mid)) / max(1.0, abs(mid_p)))
    return _result("Q -> -Q branch invariance", worst, 1e-12)


def check_ode_equivalence(spec, l_values, rng) -> CheckResult:
    worst = 0.0
    r_grid = np.linspace(0.0, 3 * spec.b, 121)
    ks = [2.0, 1.3 - 0.5j]
    for l in l_values:
        for k in ks:
            chi_fn = RadialFunction.regular(l, k, spec)
            chi_cf = chi_fn(r_grid)
            chi_ode = integrate_regular(l, k, spec, r_grid)
            worst = max(worst, float(np.max(np.abs(chi_cf - chi_ode))
                                     / np.max(np.abs(chi_ode))))
            psi_fn = RadialFunction.outgoing(l, k, spec)
            inner = r_grid[(r_grid > 0.05) & (r_grid <= spec.b)]
            psi_cf = psi_fn(inner)
            psi_ode = integrate_outgoing(l, k, spec, inner,
                                         psi_fn(spec.b), psi_fn.derivative(spec.b))
            worst = max(worst, float(np.max(np.abs(psi_cf - psi_ode))
                                     / np.max(np.abs(psi_ode))))
    return _result("closed forms match direct radial integration", worst, 1e-8)


def check_wronskian_identity(spec, l_values, rng) -> CheckResult:
    ks = _random_k(rng, 20)
    radii = (0.5 * spec.a, 0.5 * (spec.a + spec.b), 2.0 * spec.b)
    worst = 0.0
    for l in l_values:
        for k in ks:
            f2 = coefficients(l, k, spec).f_l2
            for r in radii:
                worst = max(worst, abs(wronskian(l, k, spec, r) / (2j * k * f2) - 1.0))
    return _result("Wronskian identity W = 2ik F2", worst, 1e-10)


def check_poles(spec, rect, l=0):
    """Pole search + mirror symmetry + three-method agreement, bundled."""
    results = []
    poles = find_poles(l, rect, spec)
    if not poles:
        note = "no poles in the search rectangle"
        results.append(_result("pole completeness (argument principle)", 0.0, 1.0, note))
        results.append(_result("pole mirror symmetry", 0.0, 1.0, note))
        results.append(_result("three-method agreement", 0.0, 1.0, note))
        return results, poles
    # find_poles already certified count and residuals; report the worst residual
    worst_res = max(max(p.method_residuals.values()) for p in poles)
    results.append(_result("pole completeness and certification", worst_res, 1e-9,
                           f"{len(poles)} poles"))
    worst_mirror = 0.0
    for p in poles:
        pole_pair(p, spec)  # raises on violation
        c = coefficients(l, -p.k_d.conjugate(), spec)
        worst_mirror = max(worst_mirror, abs(c.f_l2) / max(1.0, abs(c.f_l1)))
    results.append(_result("pole mirror symmetry |F2(-conj k)|", worst_mirror, 1e-9))
    report = three_method_agreement(l, rect, spec)
    results.append(_result("three-method agreement", report.max_distance,
                           report.tolerance, f"{len(report.poles)} poles"))
    return results, poles


def check_residues(spec, poles):
    if not poles:
        return [_result("S/G residue cross-validation", 0.0, 1.0, "no poles")]
    worst = 0.0
    for pole in poles[:3]:
        res_k, _ = s_residue(pole.l, pole, spec, validate=False)
        radius = min(0.1 * (1 + abs(pole.k_d)), 0.4 * abs(pole.k_d.real))
        oracle = contour_residue(lambda kk: s_matrix(pole.l, kk, spec),
                                 pole.k_d, radius)
        worst = max(worst, abs(res_k - oracle) / abs(res_k))
        r, rp = 0.5 * spec.a, 1.5 * spec.b
        analytic = green_residue(pole, spec, r, rp, validate=False)
        oracle_g = contour_residue(
            lambda kk: green_function(pole.l, kk, spec, r, rp), pole.k_d, radius)
        worst = max(worst, abs(analytic - oracle_g) / abs(analytic))
    return [_result("S/G residue cross-validation", worst, 1e-6)]


def check_green_jump(spec, rng) -> CheckResult:
    worst = 0.0
    ref = spec.two_m_over_hbar_sq
    for l, k, rp in ((0, 1.7, 1.5 * spec.b), (1, 2.6, 0.5 * (spec.a + spec.b))):
        jump = derivative_jump(l, k, spec, rp)
        worst = max(worst, abs(jump - ref) / ref)
    return _result("Green derivative jump = 2m/hbar^2", worst, 1e-6)


def check_decay_law(spec, poles):
    if not poles:
        return [_result("exponential decay law", 0.0, 1.0, "no poles")]
    pole = poles[0]
    v = emission_speed(pole, spec)
    r0, dr0 = 1.5 * spec.b, 0.1 * spec.b
    t0 = r0 / v
    ts = np.linspace(t0 * 1.01 + 1e-6, t0 * 1.01 + 12 * spec.hbar / pole.gamma, 50)
    logp = np.log([decay_probability(pole, spec, r0, dr0, t, "exact_shell").probability
                   for t in ts])
    slope = np.polyfit(ts, logp, 1)[0]
    worst = abs(slope + pole.gamma / spec.hbar) / (pole.gamma / spec.hbar)
    causal = decay_probability(pole, spec, r0, dr0, 0.5 * t0, "small_shell")
    ok_causal = causal.probability == 0.0 and causal.causally_zero
    results = [_result("decay-law slope = -Gamma/hbar", worst, 1e-10),
               _result("causal zero before r0/v", 0.0 if ok_causal else 1.0, 0.5)]
    # density factorization on a few samples
    rng = np.random.default_rng(3)
    worst_fac = 0.0
    for _ in range(10):
        r = spec.b * (1.0 + rng.uniform(0.05, 2.0))
        t = rng.uniform(0.0, 5.0)
        for direction in ("incoming", "outgoing"):
            for kind in ("decaying", "growing"):
                d1 = probability_density(direction, kind, pole, spec, r, t)
                d2 = abs(component_wave(direction, kind, pole, spec, r, t)) ** 2
                worst_fac = max(worst_fac, abs(d1 - d2) / max(d1, d2, 1e-300))
    results.append(_result("density = |component wave|^2", worst_fac, 1e-12))
    state = decaying_state(pole, spec)
    residuals = verify_outgoing_condition(state)
    if pole.l == 0:
        results.append(_result("purely outgoing residual (l=0)",
                               max(residuals.values()), 1e-10))
    return results


def run_invariant_suite(spec: BarrierSpec, l_values=(0, 1, 2),
                        rect: ComplexRect | None = None) -> list[CheckResult]:
    """Run every module invariant on the configured barrier."""
    rng = np.random.default_rng(2024)
    rect = rect or DEFAULT_RECT
    results = [
        check_riccati_identity(),
        check_riccati_wronskian(),
        check_unitarity(spec, l_values),
        check_schwarz(spec, l_values, rng),
        check_continuity(spec, l_values, rng),
        check_l0_reduction(spec),
        check_q_branch(spec, l_values, rng),
        check_ode_equivalence(spec, l_values, rng),
        check_wronskian_identity(spec, l_values, rng),
    ]
    try:
        pole_results, poles = check_poles(spec, rect)
        results.extend(pole_results)
        results.extend(check_residues(spec, poles))
        results.append(check_green_jump(spec, rng))
        results.extend(check_decay_law(spec, poles))
    except SquareBarrierError as exc:
        results.append(CheckResult(name=f"pole pipeline ({type(exc).__name__})",
                                   passed=False, measured=float("inf"),
                                   threshold=0.0, note=str(exc)))
    return results
