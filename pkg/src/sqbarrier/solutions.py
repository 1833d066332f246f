"""Piecewise radial solutions of the square-barrier problem.

Two solutions of the radial equation matter here.  The regular solution
chi_l vanishes at the origin and is fixed by continuity of value and slope
at r = a and r = b; with the inner amplitude normalized to 1 it reads

    chi_l(r) = j_l(kr)                                   0 < r < a
             = alpha_l2 h^+_l(Qr) + beta_l2 h^-_l(Qr)    a < r < b
             = F_l1 h^+_l(kr) + F_l2 h^-_l(kr)           b < r < infinity

(sin kr, e^{+-ikr} at l = 0).  The outgoing solution psi_l equals h^+_l(kr)
exactly beyond the barrier and is continued inward through the same two
interfaces.  F_l1 and F_l2 are the outgoing/incoming amplitudes: their ratio
gives the S matrix and the zeros of F_l2 are the resonance poles.

The matching coefficients are computed two ways: successive 2x2 linear
solves at r = a and r = b (primary path, well conditioned), and the explicit
closed forms in terms of Riccati-function Wronskians (kept as a cross-check;
they contain near-cancelling products).  At l = 0 a third, direct closed
form exists and is the dispatch target.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateWavenumberError, DomainError
from .model import BarrierSpec, inner_Q
from .numerics import (
    riccati_bessel_j,
    riccati_bessel_j_deriv,
    riccati_hankel,
    riccati_hankel_deriv,
)

# |k| or |Q| below this is treated as the degenerate threshold energy
_DEGENERATE_TOL = 1e-300


@dataclass(frozen=True)
class CoefficientSet:
    """Matching amplitudes of the regular solution at one wave number.

    alpha_l is the inner amplitude, fixed to 1 throughout; alpha_l2/beta_l2
    belong to h^+-_l(Qr) inside the barrier, f_l1/f_l2 to h^+-_l(kr) outside.
    """

    l: int
    k: complex
    alpha_l: complex
    alpha_l2: complex
    beta_l2: complex
    f_l1: complex
    f_l2: complex


def _check_wavenumbers(k, Q):
    if abs(k) < _DEGENERATE_TOL:
        raise DegenerateWavenumberError("k = 0: matching formulas divide by k")
    if abs(Q) < _DEGENERATE_TOL:
        raise DegenerateWavenumberError(
            "Q = 0 (energy at the barrier top): matching formulas divide by Q")


def _solve2(m11, m12, m21, m22, b1, b2):
    # Cramer on the 2x2 interface system; the determinant is a Riccati
    # Wronskian, identically -2i, so it only degenerates through overflow
    det = m11 * m22 - m12 * m21
    if det == 0 or not (cmath.isfinite(det) and cmath.isfinite(b1) and cmath.isfinite(b2)):
        raise DegenerateWavenumberError("singular interface system (Wronskian underflow)")
    return (b1 * m22 - b2 * m12) / det, (m11 * b2 - m21 * b1) / det


def coefficients_l0_closed_form(k: complex, spec: BarrierSpec) -> CoefficientSet:
    """The explicit l = 0 amplitudes, with inner amplitude alpha = 1."""
    k = complex(k)
    Q = inner_Q(k, spec)
    _check_wavenumbers(k, Q)
    a, b = spec.a, spec.b
    s, c = cmath.sin(k * a), cmath.cos(k * a)
    plus = s + (k / (1j * Q)) * c
    minus = s - (k / (1j * Q)) * c
    alpha_2 = 0.5 * cmath.exp(-1j * Q * a) * plus
    beta_2 = 0.5 * cmath.exp(1j * Q * a) * minus
    ep, em = cmath.exp(1j * Q * (b - a)), cmath.exp(-1j * Q * (b - a))
    f1 = cmath.exp(-1j * k * b) / 4 * ((1 + Q / k) * ep * plus + (1 - Q / k) * em * minus)
    f2 = cmath.exp(1j * k * b) / 4 * ((1 - Q / k) * ep * plus + (1 + Q / k) * em * minus)
    return CoefficientSet(l=0, k=k, alpha_l=1.0 + 0j,
                          alpha_l2=alpha_2, beta_l2=beta_2, f_l1=f1, f_l2=f2)


def coefficients_linear_solve(l: int, k: complex, spec: BarrierSpec,
                              Q: complex | None = None) -> CoefficientSet:
    """General-l amplitudes by successive 2x2 solves at r = a and r = b.

    The optional Q override exists to exercise the Q -> -Q branch invariance.
    """
    k = complex(k)
    if Q is None:
        Q = inner_Q(k, spec)
    _check_wavenumbers(k, Q)
    a, b = spec.a, spec.b
    alpha_2, beta_2 = _solve2(
        riccati_hankel(1, l, Q * a), riccati_hankel(-1, l, Q * a),
        riccati_hankel_deriv(1, l, Q * a), riccati_hankel_deriv(-1, l, Q * a),
        riccati_bessel_j(l, k * a), (k / Q) * riccati_bessel_j_deriv(l, k * a))
    mid = alpha_2 * riccati_hankel(1, l, Q * b) + beta_2 * riccati_hankel(-1, l, Q * b)
    mid_d = (alpha_2 * riccati_hankel_deriv(1, l, Q * b)
             + beta_2 * riccati_hankel_deriv(-1, l, Q * b))
    f1, f2 = _solve2(
        riccati_hankel(1, l, k * b), riccati_hankel(-1, l, k * b),
        riccati_hankel_deriv(1, l, k * b), riccati_hankel_deriv(-1, l, k * b),
        mid, (Q / k) * mid_d)
    return CoefficientSet(l=l, k=k, alpha_l=1.0 + 0j,
                          alpha_l2=alpha_2, beta_l2=beta_2, f_l1=f1, f_l2=f2)


def coefficients_closed_form(l: int, k: complex, spec: BarrierSpec) -> CoefficientSet:
    """General-l amplitudes from the explicit Wronskian-ratio closed forms."""
    k = complex(k)
    Q = inner_Q(k, spec)
    _check_wavenumbers(k, Q)
    a, b = spec.a, spec.b

    hp_Qa, hm_Qa = riccati_hankel(1, l, Q * a), riccati_hankel(-1, l, Q * a)
    hp_Qa_d, hm_Qa_d = riccati_hankel_deriv(1, l, Q * a), riccati_hankel_deriv(-1, l, Q * a)
    hp_Qb, hm_Qb = riccati_hankel(1, l, Q * b), riccati_hankel(-1, l, Q * b)
    hp_Qb_d, hm_Qb_d = riccati_hankel_deriv(1, l, Q * b), riccati_hankel_deriv(-1, l, Q * b)
    hp_kb, hm_kb = riccati_hankel(1, l, k * b), riccati_hankel(-1, l, k * b)
    hp_kb_d, hm_kb_d = riccati_hankel_deriv(1, l, k * b), riccati_hankel_deriv(-1, l, k * b)
    j_ka, j_ka_d = riccati_bessel_j(l, k * a), riccati_bessel_j_deriv(l, k * a)

    num_plus = j_ka * hm_Qa_d - (k / Q) * j_ka_d * hm_Qa
    den_plus = hp_Qa * hm_Qa_d - hp_Qa_d * hm_Qa
    num_minus = j_ka * hp_Qa_d - (k / Q) * j_ka_d * hp_Qa
    den_minus = hm_Qa * hp_Qa_d - hm_Qa_d * hp_Qa
    alpha_2 = num_plus / den_plus
    beta_2 = num_minus / den_minus

    wron_b_minus = hp_kb * hm_kb_d - hp_kb_d * hm_kb
    wron_b_plus = hm_kb * hp_kb_d - hm_kb_d * hp_kb
    f1 = ((hp_Qb * hm_kb_d - (Q / k) * hp_Qb_d * hm_kb) * num_plus / (wron_b_minus * den_plus)
          + (hm_Qb * hm_kb_d - (Q / k) * hm_Qb_d * hm_kb) * num_minus / (wron_b_minus * den_minus))
    f2 = ((hp_Qb * hp_kb_d - (Q / k) * hp_Qb_d * hp_kb) * num_plus / (wron_b_plus * den_plus)
          + (hm_Qb * hp_kb_d - (Q / k) * hm_Qb_d * hp_kb) * num_minus / (wron_b_plus * den_minus))
    return CoefficientSet(l=l, k=k, alpha_l=1.0 + 0j,
                          alpha_l2=alpha_2, beta_l2=beta_2, f_l1=f1, f_l2=f2)


def coefficients(l: int, k: complex, spec: BarrierSpec) -> CoefficientSet:
    """Matching amplitudes of chi_l: direct closed form at l = 0, 2x2 solves above."""
    if l == 0:
        return coefficients_l0_closed_form(k, spec)
    return coefficients_linear_solve(l, k, spec)


def psi_interface_coefficients(l: int, k: complex, spec: BarrierSpec):
    """Interior amplitudes (a_l1, b_l1, a_l2, b_l2) of the outgoing solution.

    psi_l is h^+_l(kr) for r > b; the interior pairs follow from the two
    interface systems, solved outside-in.
    """
    k = complex(k)
    Q = inner_Q(k, spec)
    _check_wavenumbers(k, Q)
    a, b = spec.a, spec.b
    a2, b2 = _solve2(
        riccati_hankel(1, l, Q * b), riccati_hankel(-1, l, Q * b),
        riccati_hankel_deriv(1, l, Q * b), riccati_hankel_deriv(-1, l, Q * b),
        riccati_hankel(1, l, k * b), (k / Q) * riccati_hankel_deriv(1, l, k * b))
    mid = a2 * riccati_hankel(1, l, Q * a) + b2 * riccati_hankel(-1, l, Q * a)
    mid_d = a2 * riccati_hankel_deriv(1, l, Q * a) + b2 * riccati_hankel_deriv(-1, l, Q * a)
    a1, b1 = _solve2(
        riccati_hankel(1, l, k * a), riccati_hankel(-1, l, k * a),
        riccati_hankel_deriv(1, l, k * a), riccati_hankel_deriv(-1, l, k * a),
        mid, (Q / k) * mid_d)
    return a1, b1, a2, b2


@dataclass(frozen=True)
class RadialFunction:
    """Piecewise evaluator over the three regions r < a, a < r < b, r > b.

    Region amplitudes are stored in the h^+-_l basis of the local wave
    number (k inside and outside, Q in the barrier); the inner region
    additionally carries a Riccati-Bessel amplitude so the regular solution
    stays accurate near the origin.  Evaluation at r = a and r = b uses the
    inner of the two adjoining branches.
    """

    l: int
    k: complex
    spec: BarrierSpec
    kind: str  # "regular" or "outgoing"
    inner_j: complex
    inner_plus: complex
    inner_minus: complex
    mid_plus: complex
    mid_minus: complex
    outer_plus: complex
    outer_minus: complex
    q_override: complex | None = None  # forced barrier wave number (Q-branch tests)

    @classmethod
    def regular(cls, l, k, spec) -> "RadialFunction":
        return cls.from_coefficients(coefficients(l, k, spec), spec)

    @classmethod
    def from_coefficients(cls, coeffs: CoefficientSet, spec: BarrierSpec,
                          purely_outgoing: bool = False) -> "RadialFunction":
        """Regular solution from a CoefficientSet; optionally drop the
        incoming outer amplitude (Gamow-state form)."""
        return cls(l=coeffs.l, k=coeffs.k, spec=spec, kind="regular",
                   inner_j=coeffs.alpha_l, inner_plus=0j, inner_minus=0j,
                   mid_plus=coeffs.alpha_l2, mid_minus=coeffs.beta_l2,
                   outer_plus=coeffs.f_l1,
                   outer_minus=0j if purely_outgoing else coeffs.f_l2)

    @classmethod
    def outgoing(cls, l, k, spec) -> "RadialFunction":
        a1, b1, a2, b2 = psi_interface_coefficients(l, k, spec)
        return cls(l=l, k=complex(k), spec=spec, kind="outgoing",
                   inner_j=0j, inner_plus=a1, inner_minus=b1,
                   mid_plus=a2, mid_minus=b2,
                   outer_plus=1.0 + 0j, outer_minus=0j)

    @property
    def Q(self) -> complex:
        if self.q_override is not None:
            return self.q_override
        return inner_Q(self.k, self.spec)

    def branch_value(self, region: str, r: float, deriv: bool = False) -> complex:
        """Evaluate one region's amplitude combination at r (no region check).

        Useful at the interfaces, where comparing the adjoining branches
        measures the continuity residual of the matching coefficients.
        """
        l, k = self.l, self.k
        if region == "inner":
            if r == 0:
                if self.kind == "regular":
                    # j_l(0) = 0; j_0'(0) = 1, j_l'(0) = 0 for l >= 1
                    if not deriv:
                        return 0j
                    return self.inner_j * k if l == 0 else 0j
                raise DomainError("outgoing solution is singular at r = 0")
            if deriv:
                val = self.inner_j * k * riccati_bessel_j_deriv(l, k * r)
                if self.inner_plus != 0 or self.inner_minus != 0:
                    val += k * (self.inner_plus * riccati_hankel_deriv(1, l, k * r)
                                + self.inner_minus * riccati_hankel_deriv(-1, l, k * r))
                return val
            val = self.inner_j * riccati_bessel_j(l, k * r)
            if self.inner_plus != 0 or self.inner_minus != 0:
                val += (self.inner_plus * riccati_hankel(1, l, k * r)
                        + self.inner_minus * riccati_hankel(-1, l, k * r))
            return val
        if region == "barrier":
            Q = self.Q
            if deriv:
                return Q * (self.mid_plus * riccati_hankel_deriv(1, l, Q * r)
                            + self.mid_minus * riccati_hankel_deriv(-1, l, Q * r))
            return (self.mid_plus * riccati_hankel(1, l, Q * r)
                    + self.mid_minus * riccati_hankel(-1, l, Q * r))
        if region == "outer":
            if deriv:
                return k * (self.outer_plus * riccati_hankel_deriv(1, l, k * r)
                            + self.outer_minus * riccati_hankel_deriv(-1, l, k * r))
            return (self.outer_plus * riccati_hankel(1, l, k * r)
                    + self.outer_minus * riccati_hankel(-1, l, k * r))
        raise ValueError(f"region must be inner/barrier/outer, got {region!r}")

    def _region_eval(self, r, deriv):
        if r < 0:
            raise DomainError(f"radius must be >= 0, got {r}")
        if r <= self.spec.a:
            region = "inner"
        elif r <= self.spec.b:
            region = "barrier"
        else:
            region = "outer"
        return self.branch_value(region, r, deriv)

    def __call__(self, r):
        if np.ndim(r) == 0:
            return self._region_eval(float(r), deriv=False)
        return np.array([self._region_eval(float(rr), deriv=False) for rr in np.asarray(r)])

    def derivative(self, r):
        """d/dr of the solution (analytic, region-wise chain rule)."""
        if np.ndim(r) == 0:
            return self._region_eval(float(r), deriv=True)
        return np.array([self._region_eval(float(rr), deriv=True) for rr in np.asarray(r)])


def chi(l: int, k: complex, spec: BarrierSpec, r):
    """Regular solution chi_l(r; k), normalized to unit inner amplitude."""
    return RadialFunction.regular(l, k, spec)(r)


def chi_deriv(l: int, k: complex, spec: BarrierSpec, r):
    """d chi_l / dr."""
    return RadialFunction.regular(l, k, spec).derivative(r)


def psi_outgoing(l: int, k: complex, spec: BarrierSpec, r):
    """Purely outgoing solution psi_l(r; k), equal to h^+_l(kr) for r > b."""
    return RadialFunction.outgoing(l, k, spec)(r)


def psi_outgoing_deriv(l: int, k: complex, spec: BarrierSpec, r):
    """d psi_l / dr."""
    return RadialFunction.outgoing(l, k, spec).derivative(r)


def lippmann_schwinger_ket(sign: int, k: float, spec: BarrierSpec, r):
    """Scattering eigenfunctions <r|E+-> at l = 0 and real k > 0.

    <r|E+> = (-1/2i) chi / F2 and <r|E-> = (1/2i) chi / F1; the denominators
    never vanish on the real axis.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if not (np.isrealobj(k) or complex(k).imag == 0) or not k > 0:
        raise DomainError("Lippmann-Schwinger kets are defined for real k > 0")
    coeffs = coefficients(0, float(k), spec)
    value = RadialFunction.from_coefficients(coeffs, spec)(r)
    if sign == 1:
        return (-1 / 2j) * value / coeffs.f_l2
    return (1 / 2j) * value / coeffs.f_l1
