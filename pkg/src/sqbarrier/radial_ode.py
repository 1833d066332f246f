"""Direct integration of the radial equation, independent of the closed forms.

This is the cross-check path: the radial equation

    chi'' = [ l(l+1)/r^2 + (2m/hbar^2)(V(r) - E) ] chi

is integrated piecewise with an adaptive 4th/5th-order Runge-Kutta scheme,
restarting at the potential steps r = a and r = b so the integrator never
sees a discontinuous right-hand side.  Nothing here touches the Riccati
evaluations or the interface solves: the regular solution starts from its
power series at small r, and the outgoing solution is integrated backward
from caller-supplied plane-wave data at the outer edge (exact e^{ikb},
ik e^{ikb} at l = 0).
"""

from __future__ import annotations

import numpy as np
from scipy.integrate import solve_ivp

from .model import BarrierSpec


def _rhs(l, energy, spec):
    c = spec.two_m_over_hbar_sq
    a, b, v0 = spec.a, spec.b, spec.v0

    def rhs(r, y):
        v = v0 if a < r < b else 0.0
        curv = (l * (l + 1) / (r * r) + c * (v - energy)) * (y[0] + 1j * y[1])
        return (y[2], y[3], curv.real, curv.imag)

    return rhs


def _integrate_path(l, k, spec, path, value0, deriv0, rtol):
    """Integrate along a strictly monotone radius path; path[0] is the start.

    Returns the complex solution value at every point of path (including the
    start).  The equation is linear, so the initial value is normalized to 1
    and the result rescaled; this keeps the absolute-tolerance floor of the
    integrator harmless when the physical solution starts many orders of
    magnitude below 1 (high l, small k).
    """
    k = complex(k)
    scale = complex(value0)
    if scale == 0:
        raise ValueError("initial value must be nonzero")
    y0 = (1.0, 0.0, (deriv0 / scale).real, (deriv0 / scale).imag)
    rhs = _rhs(l, k * k / spec.two_m_over_hbar_sq, spec)
    path = [float(r) for r in path]
    forward = path[-1] > path[0]
    lo, hi = min(path[0], path[-1]), max(path[0], path[-1])
    cuts = sorted((x for x in (spec.a, spec.b) if lo < x < hi), reverse=not forward)
    edges = [path[0]] + cuts + [path[-1]]

    values = np.empty(len(path), dtype=complex)
    values[0] = 1.0
    y = list(y0)
    i = 1
    for seg_a, seg_b in zip(edges[:-1], edges[1:]):
        if seg_a == seg_b:
            continue
        if forward:
            targets = [r for r in path[i:] if seg_a < r <= seg_b]
        else:
            targets = [r for r in path[i:] if seg_b <= r < seg_a]
        t_eval = list(targets)
        if not t_eval or t_eval[-1] != seg_b:
            t_eval.append(seg_b)
        sol = solve_ivp(rhs, (seg_a, seg_b), y, t_eval=t_eval, rtol=rtol,
                        atol=1e-14, method="RK45")
        if not sol.success:
            raise RuntimeError(f"radial integration failed: {sol.message}")
        for j in range(len(targets)):
            values[i + j] = sol.y[0][j] + 1j * sol.y[1][j]
        i += len(targets)
        y = sol.y[:, -1]
    return scale * values


def _series_start(l, k, r0, n_terms=14):
    """Power series of the regular solution near 0 (value, derivative).

    chi(r) = (kr)^{l+1}/(2l+1)!! [1 - (kr)^2/(2(2l+3)) + ...]; at kr ~ 1e-3
    a dozen terms are exact to machine precision.
    """
    z = complex(k) * r0
    dfac = 1.0
    for i in range(1, 2 * l + 2, 2):
        dfac *= i
    term = z ** (l + 1) / dfac
    val = term
    dval = (l + 1) * term / r0
    x = -0.5 * z * z
    for n in range(1, n_terms):
        term = term * x / (n * (2 * l + 2 * n + 1))
        val += term
        dval += (l + 1 + 2 * n) * term / r0
    return val, dval


def integrate_regular(l: int, k: complex, spec: BarrierSpec, r_grid,
                      rtol: float = 1e-12, r_start: float = 1e-3):
    """chi_l on r_grid by outward integration from its series at r_start.

    Grid points at or below r_start are filled from the series itself.
    """
    r_grid = np.asarray(r_grid, dtype=float)
    out = np.empty(r_grid.shape, dtype=complex)
    small_idx = np.nonzero(r_grid <= r_start)[0]
    for i in small_idx:
        out[i] = 0.0 if r_grid[i] == 0 else _series_start(l, k, r_grid[i])[0]
    big_idx = np.nonzero(r_grid > r_start)[0]
    if big_idx.size:
        order = big_idx[np.argsort(r_grid[big_idx])]
        v0, dv0 = _series_start(l, k, r_start)
        vals = _integrate_path(l, k, spec, [r_start] + list(r_grid[order]),
                               v0, dv0, rtol)
        out[order] = vals[1:]
    return out


def integrate_outgoing(l: int, k: complex, spec: BarrierSpec, r_grid,
                       boundary_value: complex, boundary_deriv: complex,
                       r_boundary: float | None = None, rtol: float = 1e-12):
    """psi_l on r_grid from (psi, psi') at r_boundary (default the outer edge).

    Points below the boundary radius are reached by backward integration,
    points above by forward integration.
    """
    k = complex(k)
    r_grid = np.asarray(r_grid, dtype=float)
    if r_boundary is None:
        r_boundary = spec.b
    value0 = complex(boundary_value)
    deriv0 = complex(boundary_deriv)
    out = np.empty(r_grid.shape, dtype=complex)
    at_idx = np.nonzero(r_grid == r_boundary)[0]
    out[at_idx] = value0
    below_idx = np.nonzero(r_grid < r_boundary)[0]
    if below_idx.size:
        order = below_idx[np.argsort(-r_grid[below_idx])]
        vals = _integrate_path(l, k, spec, [r_boundary] + list(r_grid[order]),
                               value0, deriv0, rtol)
        out[order] = vals[1:]
    above_idx = np.nonzero(r_grid > r_boundary)[0]
    if above_idx.size:
        order = above_idx[np.argsort(r_grid[above_idx])]
        vals = _integrate_path(l, k, spec, [r_boundary] + list(r_grid[order]),
                               value0, deriv0, rtol)
        out[order] = vals[1:]
    return out
