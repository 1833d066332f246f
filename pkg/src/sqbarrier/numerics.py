"""Complex special functions and complex-plane numerics.

Riccati-Hankel functions h^+_l, h^-_l are evaluated from their closed forms
(polynomial in 1/z times e^{+-iz}), normalized so that h^+-_0(z) = e^{+-iz}
and h^+-_l(z) -> e^{+-i(z - l*pi/2)} for large |z|.  The Riccati-Bessel
function j_l = (h^+_l - h^-_l) / 2i is the solution regular at the origin;
for small |z| it is summed as a power series to avoid the cancellation the
difference formula suffers there.

The rest of the module is generic machinery on analytic functions of one
complex variable: a Newton root finder with finite-difference derivatives,
an argument-principle zero counter on rectangles, and trapezoidal contour
integration for residues.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from math import factorial
from typing import Callable

import numpy as np

from .errors import RootDivergenceError, UnreliableContourError, UnsupportedOrderError

# Closed-form coefficients grow like (2l)!; above this order they should be
# replaced by a recurrence with stability analysis, which we do not need.
L_MAX = 10

# c[l][m] = (l+m)! / (m! (l-m)!), exact in float64 for l <= 10
_POLY_COEFFS = [
    [factorial(l + m) // (factorial(m) * factorial(l - m)) for m in range(l + 1)]
    for l in range(L_MAX + 1)
]

_DOUBLE_FACTORIAL_ODD = [1.0]  # (2l+1)!! for l = 0..L_MAX+1
for _i in range(1, L_MAX + 3):
    _DOUBLE_FACTORIAL_ODD.append(_DOUBLE_FACTORIAL_ODD[-1] * (2 * _i + 1))


def _check_order(l):
    if not 0 <= l <= L_MAX:
        raise UnsupportedOrderError(f"order l={l} outside supported range 0..{L_MAX}")


def _is_scalar(z):
    return isinstance(z, (int, float, complex, np.integer, np.floating, np.complexfloating))


def riccati_hankel(sign: int, l: int, z):
    """Riccati-Hankel function h^sign_l(z), sign = +1 or -1.

    h^+-_0(z) = e^{+-iz}; higher orders are e^{+-iz} times a polynomial in
    1/z with integer coefficients.  Accepts complex scalars or arrays.
    """
    _check_order(l)
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    cs = _POLY_COEFFS[l]
    if _is_scalar(z):
        z = complex(z)
        if z == 0:
            raise ZeroDivisionError("Riccati-Hankel functions are singular at z = 0")
        w = sign * 0.5j / z
        poly = 0j
        for c in reversed(cs):
            poly = poly * w + c
        return (-sign * 1j) ** l * cmath.exp(sign * 1j * z) * poly
    z = np.asarray(z, dtype=complex)
    w = sign * 0.5j / z
    poly = np.zeros_like(z)
    for c in reversed(cs):
        poly = poly * w + c
    return (-sign * 1j) ** l * np.exp(sign * 1j * z) * poly


def riccati_hankel_deriv(sign: int, l: int, z):
    """d/dz of h^sign_l, via the recurrence u_l' = u_{l-1} - (l/z) u_l."""
    _check_order(l)
    if l == 0:
        if _is_scalar(z):
            return sign * 1j * cmath.exp(sign * 1j * complex(z))
        return sign * 1j * np.exp(sign * 1j * np.asarray(z, dtype=complex))
    return riccati_hankel(sign, l - 1, z) - (l / z) * riccati_hankel(sign, l, z)


def _rj_series(l, z):
    # j_l(z) = z^{l+1} sum_n (-z^2/2)^n / (n! (2l+2n+1)!!); terms decrease
    # monotonically for |z|^2 < 4l+6, so no cancellation in this branch
    term = z ** (l + 1) / _DOUBLE_FACTORIAL_ODD[l]
    total = term
    x = -0.5 * z * z
    for n in range(1, 40):
        term = term * x / (n * (2 * l + 2 * n + 1))
        total = total + term
    return total


def _rj_series_deriv(l, z):
    # term-by-term derivative: j_l'(z) = sum_n (l+1+2n) z^{l+2n} (-1/2)^n / (n!(2l+2n+1)!!)
    base = z**l / _DOUBLE_FACTORIAL_ODD[l]
    total = (l + 1) * base
    x = -0.5 * z * z
    for n in range(1, 40):
        base = base * x / (n * (2 * l + 2 * n + 1))
        total = total + (l + 1 + 2 * n) * base
    return total


def riccati_bessel_j(l: int, z):
    """Riccati-Bessel function j_l(z) = (h^+_l(z) - h^-_l(z)) / 2i.

    j_0(z) = sin z.  For l >= 1 and |z|^2 < 4l+6, where the difference of
    Hankel functions cancels catastrophically, the power series is used
    instead; the two branches agree to the accuracy of the difference form.
    """
    _check_order(l)
    if l == 0:
        return cmath.sin(complex(z)) if _is_scalar(z) else np.sin(np.asarray(z, dtype=complex))
    if _is_scalar(z):
        z = complex(z)
        if abs(z) ** 2 < 4 * l + 6:
            return _rj_series(l, z)
        return (riccati_hankel(1, l, z) - riccati_hankel(-1, l, z)) / 2j
    z = np.asarray(z, dtype=complex)
    out = np.empty_like(z)
    small = np.abs(z) ** 2 < 4 * l + 6
    if np.any(small):
        out[small] = _rj_series(l, z[small])
    big = ~small
    if np.any(big):
        out[big] = (riccati_hankel(1, l, z[big]) - riccati_hankel(-1, l, z[big])) / 2j
    return out


def riccati_bessel_j_deriv(l: int, z):
    """d/dz of j_l; j_0' = cos z, else the u_{l-1} - (l/z) u_l recurrence."""
    _check_order(l)
    if l == 0:
        return cmath.cos(complex(z)) if _is_scalar(z) else np.cos(np.asarray(z, dtype=complex))
    if _is_scalar(z):
        z = complex(z)
        if abs(z) ** 2 < 4 * l + 6:
            return _rj_series_deriv(l, z)
        return riccati_bessel_j(l - 1, z) - (l / z) * riccati_bessel_j(l, z)
    z = np.asarray(z, dtype=complex)
    out = np.empty_like(z)
    small = np.abs(z) ** 2 < 4 * l + 6
    if np.any(small):
        out[small] = _rj_series_deriv(l, z[small])
    big = ~small
    if np.any(big):
        zb = z[big]
        out[big] = riccati_bessel_j(l - 1, zb) - (l / zb) * riccati_bessel_j(l, zb)
    return out


def complex_derivative(f: Callable[[complex], complex], z: complex, h: float | None = None) -> complex:
    """4th-order central-difference derivative of an analytic f at z."""
    z = complex(z)
    if h is None:
        h = 1e-6 * (1.0 + abs(z))
    return (-f(z + 2 * h) + 8 * f(z + h) - 8 * f(z - h) + f(z - 2 * h)) / (12 * h)


@dataclass(frozen=True)
class RootResult:
    """Converged Newton root: |f(root)| = residual <= tol in <= iterations steps."""

    root: complex
    residual: float
    iterations: int
    seed: complex


def find_root(f, seed, tol: float = 1e-12, max_iter: int = 50) -> RootResult:
    """Newton iteration on an analytic f with finite-difference derivatives.

    The derivative is the 4th-order central stencil with step 1e-6 (1+|z|).
    Raises RootDivergenceError (carrying the last iterate) if |f| does not
    drop below tol within max_iter steps or the iteration leaves the domain
    where f is finite.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    z = complex(seed)
    with np.errstate(all="ignore"):
        for it in range(max_iter + 1):
            try:
                fz = complex(f(z))
            except (ZeroDivisionError, OverflowError, FloatingPointError) as exc:
                raise RootDivergenceError(
                    f"objective not evaluable at {z}", last_iterate=z
                ) from exc
            if not cmath.isfinite(fz):
                raise RootDivergenceError(f"objective non-finite at {z}", last_iterate=z)
            if abs(fz) <= tol:
                return RootResult(root=z, residual=abs(fz), iterations=it, seed=complex(seed))
            if it == max_iter:
                break
            try:
                df = complex_derivative(f, z)
            except (ZeroDivisionError, OverflowError, FloatingPointError) as exc:
                raise RootDivergenceError(
                    f"derivative not evaluable at {z}", last_iterate=z
                ) from exc
            if not cmath.isfinite(df) or df == 0:
                raise RootDivergenceError(f"vanishing/non-finite derivative at {z}",
                                          last_iterate=z, residual=abs(fz))
            z = z - fz / df
            if not cmath.isfinite(z):
                raise RootDivergenceError("iterate left the finite plane", last_iterate=z)
    raise RootDivergenceError(
        f"no convergence after {max_iter} iterations (residual {abs(fz):.3e})",
        last_iterate=z, residual=abs(fz),
    )


@dataclass(frozen=True)
class ComplexRect:
    """Axis-aligned search rectangle in the complex plane."""

    re_min: float
    re_max: float
    im_min: float
    im_max: float

    def __post_init__(self):
        if not (self.re_min < self.re_max and self.im_min < self.im_max):
            raise ValueError("rectangle must satisfy re_min < re_max and im_min < im_max")

    def contains(self, z: complex, pad: float = 0.0) -> bool:
        return (self.re_min - pad <= z.real <= self.re_max + pad
                and self.im_min - pad <= z.imag <= self.im_max + pad)

    def corners(self):
        return (complex(self.re_min, self.im_min), complex(self.re_max, self.im_min),
                complex(self.re_max, self.im_max), complex(self.re_min, self.im_max))

    def grid(self, n_re: int, n_im: int) -> np.ndarray:
        """n_re x n_im interior-covering seed grid (endpoints included)."""
        re = np.linspace(self.re_min, self.re_max, n_re)
        im = np.linspace(self.im_min, self.im_max, n_im)
        return (re[:, None] + 1j * im[None, :]).ravel()


def _boundary_samples(rect: ComplexRect, n: int) -> np.ndarray:
    c0, c1, c2, c3 = rect.corners()
    per_side = max(n // 4, 8)
    t = np.linspace(0.0, 1.0, per_side, endpoint=False)
    sides = [c0 + t * (c1 - c0), c1 + t * (c2 - c1), c2 + t * (c3 - c2), c3 + t * (c0 - c3)]
    pts = np.concatenate(sides)
    return np.append(pts, pts[0])


def count_zeros(f, rect: ComplexRect, n_boundary_points: int = 2048,
                min_modulus_ratio: float = 1e-6, max_depth: int = 24) -> int:
    """Number of zeros of f inside rect, by the argument principle.

    The phase of f is accumulated counterclockwise along the boundary.
    Segments where the phase step exceeds pi/2 are bisected recursively
    (subdivide-and-recurse).  If the boundary modulus anywhere drops below
    min_modulus_ratio times the median boundary modulus, the winding number
    is unreliable and UnreliableContourError is raised.
    """
    pts = _boundary_samples(rect, n_boundary_points)
    with np.errstate(all="ignore"):
        vals = np.array([complex(f(z)) for z in pts])
    if not np.all(np.isfinite(vals)):
        raise UnreliableContourError("objective non-finite on the rectangle boundary")
    moduli = np.abs(vals)
    floor = min_modulus_ratio * float(np.median(moduli))
    low_water = [float(np.min(moduli))]
    if low_water[0] < floor:
        raise UnreliableContourError(
            f"boundary modulus {low_water[0]:.3e} below threshold {floor:.3e}; "
            "a zero lies (nearly) on the contour")

    def segment_phase(z1, z2, f1, f2, depth):
        dphi = cmath.phase(f2 / f1)
        if abs(dphi) <= 0.5 * np.pi:
            return dphi
        if depth >= max_depth:
            raise UnreliableContourError(
                f"phase change not resolvable near {z1} (zero on the contour?)")
        zm = 0.5 * (z1 + z2)
        fm = complex(f(zm))
        if not cmath.isfinite(fm):
            raise UnreliableContourError(f"objective non-finite at {zm}")
        if abs(fm) < floor:
            raise UnreliableContourError(
                f"boundary modulus {abs(fm):.3e} below threshold {floor:.3e} at {zm}")
        low_water[0] = min(low_water[0], abs(fm))
        return (segment_phase(z1, zm, f1, fm, depth + 1)
                + segment_phase(zm, z2, fm, f2, depth + 1))

    total = 0.0
    for i in range(len(pts) - 1):
        total += segment_phase(pts[i], pts[i + 1], vals[i], vals[i + 1], 0)
    winding = total / (2 * np.pi)
    nearest = round(winding)
    if abs(winding - nearest) > 0.05:
        raise UnreliableContourError(f"winding number {winding:.6f} is not integral")
    return int(nearest)


def contour_residue(f, center: complex, radius: float, n_points: int = 256) -> complex:
    """(1/2*pi*i) contour integral of f on a circle, by the trapezoidal rule.

    Spectrally accurate for f analytic on the circle; with a single simple
    pole inside, this is the residue.
    """
    if radius <= 0:
        raise ValueError("radius must be positive")
    theta = 2 * np.pi * np.arange(n_points) / n_points
    ring = np.exp(1j * theta)
    vals = np.array([complex(f(center + radius * w)) for w in ring])
    return (radius / n_points) * np.sum(vals * ring)
