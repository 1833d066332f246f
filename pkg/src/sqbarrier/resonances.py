"""Resonance pole location by three independent routes.

A resonance is simultaneously (i) a pole of the analytically continued S
matrix, i.e. a zero of F_l2(k); (ii) a complex eigenvalue of the radial
problem under the purely outgoing boundary condition, i.e. a zero of the
4x4 interface determinant; and (iii) a pole of the outgoing Green function,
i.e. a zero of its denominator 2ik F_l2(k).  The three conditions share
their zero set exactly; this module locates the zeros of each by the same
grid-seeded Newton scheme and certifies that they coincide.

Decaying poles sit in the fourth quadrant of the k plane (second energy
sheet, z = E_R - i Gamma/2); each has a growing partner mirrored across the
imaginary axis at k_g = -conj(k_d) with conjugate energy.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    CertificationError,
    DegenerateWavenumberError,
    IncompleteSearchError,
    MethodDisagreementError,
    RootDivergenceError,
    SymmetryViolationError,
)
from .model import BarrierSpec, ComplexEnergy, energy_from_k, inner_Q
from .numerics import (
    ComplexRect,
    count_zeros,
    find_root,
    riccati_bessel_j,
    riccati_bessel_j_deriv,
    riccati_hankel,
    riccati_hankel_deriv,
)
from .smatrix import s_residue
from .solutions import coefficients

# Certified poles must beat this scaled residual on all three conditions.
RESIDUAL_TOL = 1e-9
# Two roots closer than 1e-8 (1+|k|) are the same pole.
DEDUP_REL = 1e-8


@dataclass(frozen=True)
class ResonancePole:
    """A certified decaying resonance: fourth-quadrant k_d, z = E_R - i Gamma/2.

    method_residuals holds the dimensionless residuals |F2|, |det|, |2ikF2|
    at k_d, each scaled by its own local magnitude; certification guarantees
    all three are <= RESIDUAL_TOL.
    """

    l: int
    k_d: complex
    z: ComplexEnergy
    gamma: float
    e_r: float
    s_residue_k: complex
    s_residue_e: complex
    method_residuals: dict = field(repr=False)


@dataclass(frozen=True)
class GrowingPole:
    """Growing partner of a decaying pole: third-quadrant k_g, energy conj(z)."""

    l: int
    k_g: complex
    z_star: ComplexEnergy


def determinant_condition(l: int, k: complex, spec: BarrierSpec) -> complex:
    """4x4 interface determinant whose zeros are the outgoing eigenvalues.

    Rows are the value/slope matching conditions at r = a and r = b for the
    unknowns (alpha_l, F_l1, alpha_l2, beta_l2) with the incoming outer
    amplitude removed; the determinant vanishes exactly where F_l2 does.
    """
    k = complex(k)
    Q = inner_Q(k, spec)
    if k == 0 or Q == 0:
        raise DegenerateWavenumberError("determinant undefined at k = 0 or Q = 0")
    a, b = spec.a, spec.b
    m = np.array([
        [-riccati_bessel_j(l, k * a), 0,
         riccati_hankel(1, l, Q * a), riccati_hankel(-1, l, Q * a)],
        [-(k / Q) * riccati_bessel_j_deriv(l, k * a), 0,
         riccati_hankel_deriv(1, l, Q * a), riccati_hankel_deriv(-1, l, Q * a)],
        [0, -riccati_hankel(1, l, k * b),
         riccati_hankel(1, l, Q * b), riccati_hankel(-1, l, Q * b)],
        [0, -riccati_hankel_deriv(1, l, k * b),
         (Q / k) * riccati_hankel_deriv(1, l, Q * b),
         (Q / k) * riccati_hankel_deriv(-1, l, Q * b)],
    ], dtype=complex)
    return complex(np.linalg.det(m))


def determinant_condition_l0(k: complex, spec: BarrierSpec) -> complex:
    """The explicit l = 0 interface determinant (sin/cos/exponential entries).

    Expands to -4 k Q F2(k), i.e. the same zero set as the general form.
    """
    k = complex(k)
    Q = inner_Q(k, spec)
    if k == 0 or Q == 0:
        raise DegenerateWavenumberError("determinant undefined at k = 0 or Q = 0")
    a, b = spec.a, spec.b
    eqa, eqb, ekb = cmath.exp(1j * Q * a), cmath.exp(1j * Q * b), cmath.exp(1j * k * b)
    m = np.array([
        [cmath.sin(k * a), 0, -eqa, -1 / eqa],
        [k * cmath.cos(k * a), 0, -1j * Q * eqa, 1j * Q / eqa],
        [0, ekb, -eqb, -1 / eqb],
        [0, 1j * k * ekb, -1j * Q * eqb, 1j * Q / eqb],
    ], dtype=complex)
    return complex(np.linalg.det(m))


def resonance_condition_l0(k: complex, spec: BarrierSpec) -> complex:
    """The explicit l = 0 pole condition; equals 4 e^{-ikb} F2(k)."""
    k = complex(k)
    Q = inner_Q(k, spec)
    if k == 0 or Q == 0:
        raise DegenerateWavenumberError("condition undefined at k = 0 or Q = 0")
    a = spec.a
    s, c = cmath.sin(k * a), cmath.cos(k * a)
    plus = s + (k / (1j * Q)) * c
    minus = s - (k / (1j * Q)) * c
    w = cmath.exp(1j * Q * (spec.b - a))
    return (1 - Q / k) * w * plus + (1 + Q / k) / w * minus


def green_denominator(l: int, k: complex, spec: BarrierSpec) -> complex:
    """Denominator 2ik F_l2(k) of the outgoing Green function."""
    return 2j * k * coefficients(l, k, spec).f_l2


def _grid_newton_zeros(f, rect: ComplexRect, seed_grid=(40, 20), max_iter=40,
                       prune_factor=100.0):
    """Deduplicated Newton zeros of f inside rect, seeded from a uniform grid.

    Returns (sorted zero list, median |f| over the seed grid).  Seeds where
    |f| is huge relative to the median sit in the exponential-growth region
    and are skipped; completeness is guarded separately by count_zeros.
    """
    seeds = rect.grid(*seed_grid)
    vals = np.empty(seeds.shape)
    with np.errstate(all="ignore"):
        for i, s in enumerate(seeds):
            try:
                vals[i] = abs(f(s))
            except (DegenerateWavenumberError, ZeroDivisionError, OverflowError):
                vals[i] = np.inf
    finite = vals[np.isfinite(vals)]
    if finite.size == 0:
        return [], 1.0
    scale = float(np.median(finite))
    tol = 1e-12 * max(1.0, scale)
    roots: list[complex] = []
    for s, v in zip(seeds, vals):
        if not np.isfinite(v) or v > prune_factor * scale:
            continue
        try:
            result = find_root(f, s, tol=tol, max_iter=max_iter)
        except (RootDivergenceError, DegenerateWavenumberError):
            continue
        z = result.root
        if not rect.contains(z):
            continue
        if any(abs(z - r) < DEDUP_REL * (1.0 + abs(z)) for r in roots):
            continue
        roots.append(z)
    roots.sort(key=lambda z: z.real)
    return roots, scale


def _circle_scale(f, center, radius, n=16):
    vals = []
    for theta in 2 * np.pi * np.arange(n) / n:
        vals.append(abs(f(center + radius * cmath.exp(1j * theta))))
    return float(np.median(vals))


def find_poles(l: int, rect: ComplexRect, spec: BarrierSpec, max_poles: int = 16,
               seed_grid=(40, 20)) -> list[ResonancePole]:
    """All decaying resonance poles of partial wave l inside rect.

    Primary objective is F_l2; zeros are Newton-polished from a uniform seed
    grid, deduplicated, checked for completeness against the argument
    principle, and then certified against the determinant condition and the
    Green denominator.  Poles are returned sorted by Re k.
    """
    if rect.im_max >= 0:
        raise ValueError("search rectangle must lie in the lower half k-plane "
                         f"(im_max = {rect.im_max})")

    def f2(kk):
        return coefficients(l, kk, spec).f_l2

    roots, f2_scale = _grid_newton_zeros(f2, rect, seed_grid=seed_grid)
    expected = count_zeros(f2, rect)
    if expected != len(roots):
        raise IncompleteSearchError(
            f"seeded search found {len(roots)} zeros but the argument principle "
            f"counts {expected} in {rect}", found=len(roots), expected=expected)
    roots = roots[:max_poles]

    poles = []
    for k_d in roots:
        res_f2 = abs(f2(k_d)) / max(1.0, f2_scale)
        det_radius = 0.05 * (1.0 + abs(k_d))
        det_scale = _circle_scale(lambda kk: determinant_condition(l, kk, spec),
                                  k_d, det_radius)
        res_det = abs(determinant_condition(l, k_d, spec)) / det_scale
        res_green = abs(green_denominator(l, k_d, spec)) / max(1.0, 2 * abs(k_d) * f2_scale)
        residuals = {"smatrix": res_f2, "determinant": res_det, "green": res_green}
        bad = {name: r for name, r in residuals.items() if r > RESIDUAL_TOL}
        if bad:
            raise CertificationError(
                f"pole candidate {k_d} failed certification: scaled residuals {bad}")
        energy = energy_from_k(k_d, spec)
        res_k, res_e = s_residue(l, k_d, spec, validate=False)
        poles.append(ResonancePole(
            l=l, k_d=k_d, z=energy, gamma=energy.gamma, e_r=energy.e_r,
            s_residue_k=res_k, s_residue_e=res_e, method_residuals=residuals))
    return poles


def pole_pair(pole: ResonancePole, spec: BarrierSpec) -> GrowingPole:
    """Growing partner at k_g = -conj(k_d), verified to be a zero of F_l2."""
    k_g = -pole.k_d.conjugate()
    c = coefficients(pole.l, k_g, spec)
    scale = max(1.0, abs(c.f_l1))
    if abs(c.f_l2) > RESIDUAL_TOL * scale:
        raise SymmetryViolationError(
            f"|F2({k_g})| = {abs(c.f_l2):.3e} is not a zero; mirror symmetry "
            "violated (coefficient bug?)")
    return GrowingPole(l=pole.l, k_g=k_g, z_star=energy_from_k(k_g, spec))


@dataclass(frozen=True)
class AgreementReport:
    """Pole sets from the three methods and their maximum pairwise distance."""

    l: int
    rect: ComplexRect
    poles: tuple
    smatrix_zeros: tuple
    determinant_zeros: tuple
    green_zeros: tuple
    max_distance: float
    tolerance: float


def three_method_agreement(l: int, rect: ComplexRect, spec: BarrierSpec,
                           max_poles: int = 16, seed_grid=(40, 20)) -> AgreementReport:
    """Locate poles independently via F_l2, the determinant, and the Green
    denominator, and certify that the three zero sets coincide pairwise
    within 1e-9 (1 + |k|)."""
    poles = find_poles(l, rect, spec, max_poles=max_poles, seed_grid=seed_grid)
    s_zeros = [p.k_d for p in poles]

    det_zeros, _ = _grid_newton_zeros(
        lambda kk: determinant_condition(l, kk, spec), rect, seed_grid=seed_grid)
    green_zeros, _ = _grid_newton_zeros(
        lambda kk: green_denominator(l, kk, spec), rect, seed_grid=seed_grid)
    det_zeros, green_zeros = det_zeros[:max_poles], green_zeros[:max_poles]

    if not (len(s_zeros) == len(det_zeros) == len(green_zeros)):
        raise MethodDisagreementError(
            f"pole counts differ: S-matrix {len(s_zeros)}, determinant "
            f"{len(det_zeros)}, Green {len(green_zeros)}")

    max_distance = 0.0
    tolerance = 0.0
    for k_d in s_zeros:
        tol_here = 1e-9 * (1.0 + abs(k_d))
        tolerance = max(tolerance, tol_here)
        for other in (det_zeros, green_zeros):
            dist = min((abs(k_d - z) for z in other), default=np.inf)
            max_distance = max(max_distance, dist)
            if dist > tol_here:
                raise MethodDisagreementError(
                    f"pole {k_d}: nearest zero from another method is {dist:.3e} away "
                    f"(tolerance {tol_here:.3e})")
    return AgreementReport(
        l=l, rect=rect, poles=tuple(poles), smatrix_zeros=tuple(s_zeros),
        determinant_zeros=tuple(det_zeros), green_zeros=tuple(green_zeros),
        max_distance=max_distance, tolerance=tolerance if tolerance else 1e-9)
