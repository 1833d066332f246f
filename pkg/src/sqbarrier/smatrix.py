"""Partial-wave S matrix, phase shifts, and pole residues.

Outside the barrier the regular solution is a superposition of an outgoing
wave with amplitude F_l1 and an incoming wave with amplitude F_l2, so the
partial S matrix is the ratio S_l(k) = -F_l1(k) / F_l2(k).  On the real
axis |S_l| = 1; continued into the lower half k-plane, S_l is meromorphic
with poles exactly at the zeros of F_l2.
"""

from __future__ import annotations

import cmath

import numpy as np

from .errors import PoleEvaluationError, SuspiciousPoleError
from .model import BarrierSpec
from .numerics import complex_derivative, contour_residue
from .solutions import coefficients

# |F2| below this fraction of the coefficient scale counts as "at a pole";
# Newton-polished poles land at |F2| ~ 1e-13 absolute
_POLE_GUARD = 1e-11


def s_matrix(l: int, k: complex, spec: BarrierSpec) -> complex:
    """S_l(k) = -F_l1(k) / F_l2(k)."""
    c = coefficients(l, k, spec)
    scale = max(abs(c.f_l1), abs(c.f_l2))
    if abs(c.f_l2) <= _POLE_GUARD * scale:
        raise PoleEvaluationError(f"F2({k}) ~ 0: evaluation at a resonance pole")
    return -c.f_l1 / c.f_l2


def phase_shift(l: int, k: float, spec: BarrierSpec) -> float:
    """Principal-branch phase shift delta_l = arg(S_l) / 2 at one real k > 0."""
    return cmath.phase(s_matrix(l, float(k), spec)) / 2.0


def phase_shift_scan(l: int, k_values, spec: BarrierSpec,
                     jump_threshold: float = 0.9 * np.pi) -> np.ndarray:
    """delta_l along a k scan, continued across branch jumps.

    delta is defined modulo pi; whenever the raw step between neighboring
    grid points exceeds jump_threshold the nearest pi-multiple is restored.
    Resonances produce rapid but sub-pi steps at reasonable resolution, so
    they survive unwrapping.
    """
    k_values = np.asarray(k_values, dtype=float)
    out = np.empty(k_values.shape)
    prev = None
    for i, k in enumerate(k_values):
        raw = phase_shift(l, k, spec)
        if prev is not None and abs(raw - prev) > jump_threshold:
            raw += np.pi * round((prev - raw) / np.pi)
        out[i] = raw
        prev = raw
    return out


def s_residue(l: int, pole, spec: BarrierSpec, validate: bool = True,
              contour_radius: float | None = None):
    """Residues of S_l at a decaying pole, in the k plane and the E plane.

    res_k S = -F_l1(k_d) / F_l2'(k_d) with the derivative from 4th-order
    central differences (step 1e-6 (1+|k_d|)); res_E = res_k * hbar^2 k_d/m
    by the chain rule.  With validate=True the k-plane value is checked
    against the contour-integral oracle; disagreement beyond 1e-6 relative
    raises SuspiciousPoleError (the zero is probably not simple).

    Returns (res_k, res_e).
    """
    k_d = complex(getattr(pole, "k_d", pole))
    c = coefficients(l, k_d, spec)
    df2 = complex_derivative(lambda kk: coefficients(l, kk, spec).f_l2, k_d)
    res_k = -c.f_l1 / df2
    res_e = res_k * spec.hbar**2 * k_d / spec.mass
    if validate:
        if contour_radius is None:
            contour_radius = min(0.1 * (1.0 + abs(k_d)), 0.4 * abs(k_d.real) or 0.05)
        oracle = contour_residue(lambda kk: s_matrix(l, kk, spec), k_d, contour_radius)
        rel = abs(oracle - res_k) / abs(res_k)
        if rel > 1e-6:
            raise SuspiciousPoleError(
                f"S residue at {k_d}: analytic vs contour differ by {rel:.3e} "
                "(non-simple zero?)")
    return res_k, res_e
