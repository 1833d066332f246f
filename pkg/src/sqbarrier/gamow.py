"""Gamow eigenfunctions, their in/out decomposition, and the decay law.

At a pole the regular solution loses its incoming outer amplitude (F_l2 = 0)
and becomes the Gamow eigenfunction: purely outgoing beyond the barrier and
exponentially growing in r there.  The time factor e^{-izt/hbar} with
z = E_R - i Gamma/2 makes it decay in time; outside the barrier the product
factorizes into amplitude and phase waves whose densities are constant along
rays r -/+ vt with emission speed v = Gamma / (2 hbar |Im k|).

Sign convention: poles store the signed Im(k_d) < 0 of the fourth quadrant;
the closed forms below use the positive magnitude kappa = -Im(k_d)
throughout, so every exponent is written exactly as it appears in the
amplitude/density formulas.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .model import BarrierSpec
from .solutions import CoefficientSet, RadialFunction, coefficients

_DIRECTIONS = ("incoming", "outgoing")
_KINDS = ("decaying", "growing")


@dataclass(frozen=True)
class GamowState:
    """Eigenfunction at a pole, with the incoming outer amplitude removed.

    kind "decaying" lives at k_d (fourth quadrant, z = E_R - i Gamma/2);
    "growing" at k_g = -conj(k_d) (third quadrant, conjugate energy).
    """

    l: int
    k: complex
    kind: str
    spec: BarrierSpec
    coeffs: CoefficientSet
    radial: RadialFunction
    e_r: float
    gamma: float

    @classmethod
    def _build(cls, l, k, kind, spec, e_r, gamma):
        raw = coefficients(l, k, spec)
        clean = CoefficientSet(l=l, k=raw.k, alpha_l=raw.alpha_l,
                               alpha_l2=raw.alpha_l2, beta_l2=raw.beta_l2,
                               f_l1=raw.f_l1, f_l2=0j)
        radial = RadialFunction.from_coefficients(clean, spec, purely_outgoing=True)
        return cls(l=l, k=complex(k), kind=kind, spec=spec, coeffs=clean,
                   radial=radial, e_r=e_r, gamma=gamma)


def decaying_state(pole, spec: BarrierSpec) -> GamowState:
    """Decaying Gamow state at a certified ResonancePole."""
    return GamowState._build(pole.l, pole.k_d, "decaying", spec, pole.e_r, pole.gamma)


def growing_state(pole, spec: BarrierSpec) -> GamowState:
    """Growing Gamow state at the mirror wave number of a decaying pole."""
    k_g = -complex(pole.k_d).conjugate()
    return GamowState._build(pole.l, k_g, "growing", spec, pole.e_r, pole.gamma)


def gamow_wavefunction(state: GamowState, r):
    """Radial Gamow eigenfunction: chi at the pole with only h^+ outside."""
    return state.radial(r)


def gamow_wavefunction_deriv(state: GamowState, r):
    return state.radial.derivative(r)


def verify_outgoing_condition(state: GamowState, radii=None) -> dict:
    """Relative residual |chi' - ik chi| / |ik chi| at a few outer radii.

    Exactly zero at l = 0 (the outer branch is e^{ikr}); for l > 0 the
    residual decays like the h^+_l asymptotics, bounded by l(l+1)/|kr|.
    """
    if radii is None:
        b = state.spec.b
        radii = (1.5 * b, 3.0 * b, 10.0 * b)
    report = {}
    for r in radii:
        value = state.radial(r)
        deriv = state.radial.derivative(r)
        report[float(r)] = abs(deriv - 1j * state.k * value) / abs(1j * state.k * value)
    return report


def _pole_parts(pole):
    k_d = complex(pole.k_d)
    rho = k_d.real
    kappa = -k_d.imag
    if kappa <= 0 or rho <= 0:
        raise DomainError(f"not a fourth-quadrant decaying pole: k_d = {k_d}")
    return rho, kappa


@dataclass(frozen=True)
class ComponentWave:
    """One of the four labelled outer-region waves at a resonance.

    value(r, t) = amplitude_factor(r, t) * phase_factor(r, t), with the
    amplitude factor carrying the F coefficient and the real exponents, and
    the phase factor the unimodular propagation term.  direction refers to
    the phase propagation; kind selects the decaying pole or its growing
    mirror.  Valid outside the potential only (r > b).
    """

    direction: str
    kind: str
    coefficient: complex
    rho: float     # Re k magnitude
    kappa: float   # |Im k|
    e_r: float
    gamma: float
    hbar: float
    b: float

    def _check(self, r):
        if r <= self.b:
            raise DomainError(f"component waves are defined for r > b = {self.b}")

    def amplitude_factor(self, r, t):
        self._check(r)
        r_sign = 1.0 if (self.direction == "outgoing") == (self.kind == "decaying") else -1.0
        t_sign = -1.0 if self.kind == "decaying" else 1.0
        return self.coefficient * math.exp(r_sign * self.kappa * r
                                           + t_sign * self.gamma * t / (2 * self.hbar))

    def phase_factor(self, r, t):
        self._check(r)
        r_sign = 1.0 if self.direction == "outgoing" else -1.0
        return cmath.exp(1j * (r_sign * self.rho * r - self.e_r * t / self.hbar))

    def value(self, r, t):
        return self.amplitude_factor(r, t) * self.phase_factor(r, t)

    def density(self, r, t):
        return abs(self.value(r, t)) ** 2


def component_wave_factors(direction: str, kind: str, pole, spec: BarrierSpec) -> ComponentWave:
    """Build the labelled component wave for a decaying pole (or its mirror)."""
    if direction not in _DIRECTIONS:
        raise ValueError(f"direction must be one of {_DIRECTIONS}")
    if kind not in _KINDS:
        raise ValueError(f"kind must be one of {_KINDS}")
    rho, kappa = _pole_parts(pole)
    k_eval = complex(pole.k_d) if kind == "decaying" else -complex(pole.k_d).conjugate()
    c = coefficients(pole.l, k_eval, spec)
    # allowed waves carry F1, banned ones F2 (zero at a certified pole)
    use_f1 = (kind == "decaying" and direction == "outgoing") or \
             (kind == "growing" and direction == "incoming")
    coefficient = c.f_l1 if use_f1 else c.f_l2
    return ComponentWave(direction=direction, kind=kind, coefficient=coefficient,
                         rho=rho, kappa=kappa, e_r=pole.e_r, gamma=pole.gamma,
                         hbar=spec.hbar, b=spec.b)


def component_wave(direction: str, kind: str, pole, spec: BarrierSpec, r: float, t: float) -> complex:
    """Value of the labelled component wave at (r, t), r > b."""
    return component_wave_factors(direction, kind, pole, spec).value(r, t)


def probability_density(direction: str, kind: str, pole, spec: BarrierSpec,
                        r: float, t: float) -> float:
    """Closed-form density of the labelled wave; equals |component_wave|^2.

    For the decaying pole: |F2|^2 e^{-Gamma/hbar (t + r/v)} (incoming) and
    |F1|^2 e^{-Gamma/hbar (t - r/v)} (outgoing); the growing mirror flips the
    sign of the exponent.
    """
    wave = component_wave_factors(direction, kind, pole, spec)
    if r <= spec.b:
        raise DomainError(f"densities are defined for r > b = {spec.b}")
    v = emission_speed(pole, spec)
    r_sign = -1.0 if wave.direction == "incoming" else 1.0
    t_sign = -1.0 if wave.kind == "growing" else 1.0
    exponent = -pole.gamma / spec.hbar * t_sign * (t - r_sign * r / v)
    return abs(wave.coefficient) ** 2 * math.exp(exponent)


def emission_speed(pole, spec: BarrierSpec) -> float:
    """Ray speed v = Gamma / (2 hbar |Im k_d|) of the outgoing density."""
    _, kappa = _pole_parts(pole)
    return pole.gamma / (2.0 * spec.hbar * kappa)


@dataclass(frozen=True)
class DecayObservation:
    """Probability of detecting the decay in the shell [r0, r0 + dr0] at t.

    causally_zero marks times at or before the earliest arrival r0/v, where
    the probability is zero by convention rather than by evaluation.
    """

    r0: float
    dr0: float
    t: float
    probability: float
    causally_zero: bool
    mode: str


def decay_probability(pole, spec: BarrierSpec, r0: float, dr0: float, t: float,
                      mode: str = "small_shell") -> DecayObservation:
    """Resonance contribution to the shell-detection probability at time t.

    exact_shell integrates |chi_dec|^2 over [r0, r0 + dr0] in closed form on
    the outer branch and applies the decay factor e^{-Gamma t/hbar};
    small_shell is its first-order-in-dr0 form |F1|^2 dr0
    e^{-Gamma/hbar (t - r0/v)}.  Both are zero (flagged causal) for
    t <= r0/v: the emitted density travels at speed v, so nothing can be
    detected at r0 earlier.  Probabilities are relative (Gamow states are
    not square integrable), exactly as the |F1|^2 prefactor implies.
    """
    if mode not in ("exact_shell", "small_shell"):
        raise ValueError("mode must be 'exact_shell' or 'small_shell'")
    if r0 <= spec.b:
        raise DomainError(f"shell must lie outside the potential: r0 > b = {spec.b}")
    if dr0 <= 0:
        raise DomainError("shell width dr0 must be positive")
    rho, kappa = _pole_parts(pole)
    v = emission_speed(pole, spec)
    if t <= r0 / v:
        return DecayObservation(r0=r0, dr0=dr0, t=t, probability=0.0,
                                causally_zero=True, mode=mode)
    k_eval = complex(pole.k_d)
    f1 = coefficients(pole.l, k_eval, spec).f_l1
    gamma_t = pole.gamma * t / spec.hbar
    if mode == "small_shell":
        p = abs(f1) ** 2 * dr0 * math.exp(-pole.gamma / spec.hbar * (t - r0 / v))
    else:
        # integral of |F1 e^{ik_d r}|^2 = |F1|^2 e^{2 kappa r} over the shell
        p = (abs(f1) ** 2 * math.exp(-gamma_t) * math.exp(2 * kappa * r0)
             * (math.exp(2 * kappa * dr0) - 1.0) / (2 * kappa))
    return DecayObservation(r0=r0, dr0=dr0, t=t, probability=p,
                            causally_zero=False, mode=mode)
