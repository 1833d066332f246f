"""Command-line front end.

Subcommands: poles, smatrix, wavefunction, decay, green, verify.  All
parameters come from flags and an optional JSON barrier config; nothing is
interactive.  Output is CSV (comma separated, '#' header comments) or JSON,
with numbers serialized to 17 significant digits so artifacts are
byte-reproducible and round-trip safe.

Exit codes: 0 success, 1 verification/agreement failure, 2 usage/config error.
"""

from __future__ import annotations

import argparse
import cmath
import json
import sys

import numpy as np

from .errors import (
    CertificationError,
    ConfigError,
    DomainError,
    IncompleteSearchError,
    MethodDisagreementError,
    PoleEvaluationError,
    SquareBarrierError,
    SuspiciousPoleError,
    SymmetryViolationError,
    UnreliableContourError,
)
from .gamow import decay_probability, decaying_state, emission_speed, gamow_wavefunction
from .green import green_function, wronskian
from .model import BarrierSpec, reference_barrier
from .numerics import ComplexRect
from .resonances import three_method_agreement
from .smatrix import phase_shift_scan, s_matrix
from .solutions import chi, coefficients
from .verify import run_invariant_suite

_FAILURE_ERRORS = (MethodDisagreementError, IncompleteSearchError, CertificationError,
                   SuspiciousPoleError, PoleEvaluationError, SymmetryViolationError,
                   UnreliableContourError)


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{float(value):.17g}"


def _fmt_complex(z: complex) -> str:
    return f"{z.real:.17g}{z.imag:+.17g}j"


class _Float17(float):
    # json.dumps uses repr(); pin it to 17 significant digits
    def __repr__(self):
        return f"{float(self):.17g}"


def _jsonify(value):
    if isinstance(value, bool):
        return value
    if isinstance(value, (float, np.floating)):
        return _Float17(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    return value


def _emit(args, header, rows, comments=()):
    if args.format == "csv":
        lines = [f"# {c}" for c in comments]
        lines.append(",".join(header))
        lines.extend(",".join(_fmt(v) for v in row) for row in rows)
        text = "\n".join(lines) + "\n"
    else:
        payload = [{key: _jsonify(v) for key, v in zip(header, row)} for row in rows]
        text = json.dumps(payload, indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _rect_from(args) -> ComplexRect:
    return ComplexRect(args.re_min, args.re_max, args.im_min, args.im_max)


def _find_sorted_poles(args, spec):
    rect = _rect_from(args)
    report = three_method_agreement(args.l, rect, spec, max_poles=args.max_poles)
    return report


def cmd_poles(args, spec) -> int:
    report = _find_sorted_poles(args, spec)
    header = ["l", "re_k", "im_k", "e_r", "gamma",
              "residual_smatrix", "residual_determinant", "residual_green",
              "re_residue_k", "im_residue_k", "re_residue_e", "im_residue_e",
              "agreement_distance"]
    rows = [[p.l, p.k_d.real, p.k_d.imag, p.e_r, p.gamma,
             p.method_residuals["smatrix"], p.method_residuals["determinant"],
             p.method_residuals["green"],
             p.s_residue_k.real, p.s_residue_k.imag,
             p.s_residue_e.real, p.s_residue_e.imag,
             report.max_distance] for p in report.poles]
    _emit(args, header, rows,
          comments=[f"three-method agreement: max distance {report.max_distance:.3e} "
                    f"(tolerance {report.tolerance:.3e})"])
    return 0


def cmd_smatrix(args, spec) -> int:
    if not 0 < args.e_min < args.e_max:
        raise ConfigError(f"energy range must satisfy 0 < e_min < e_max, "
                          f"got [{args.e_min}, {args.e_max}]")
    if args.steps < 1:
        raise ConfigError("steps must be >= 1")
    energies = np.linspace(args.e_min, args.e_max, args.steps)
    ks = np.sqrt(spec.two_m_over_hbar_sq * energies)
    deltas = phase_shift_scan(args.l, ks, spec)
    rows = []
    for e, k, delta in zip(energies, ks, deltas):
        s = s_matrix(args.l, k, spec)
        rows.append([e, s.real, s.imag, abs(s), delta])
    _emit(args, ["E", "Re(S)", "Im(S)", "|S|", "delta_l"], rows)
    return 0


def cmd_wavefunction(args, spec) -> int:
    if (args.pole_index is None) == (args.energy is None):
        raise ConfigError("choose exactly one of --pole-index (Gamow mode) "
                          "or --energy (real scattering mode)")
    r_grid = np.linspace(0.0, args.r_max, args.r_steps)
    if args.energy is not None:
        if args.energy <= 0:
            raise ConfigError("--energy must be positive")
        k = float(np.sqrt(spec.two_m_over_hbar_sq * args.energy))
        values = chi(args.l, k, spec, r_grid)
        comment = f"chi_l at real E = {_fmt(args.energy)} (k = {_fmt(k)}), l = {args.l}"
    else:
        report = _find_sorted_poles(args, spec)
        if not 0 <= args.pole_index < len(report.poles):
            raise ConfigError(f"pole index {args.pole_index} out of range "
                              f"(found {len(report.poles)} poles)")
        pole = report.poles[args.pole_index]
        state = decaying_state(pole, spec)
        values = gamow_wavefunction(state, r_grid)
        comment = (f"decaying Gamow state at k_d = {_fmt_complex(pole.k_d)}, "
                   f"E_R = {_fmt(pole.e_r)}, Gamma = {_fmt(pole.gamma)}")
    rows = [[r, v.real, v.imag, abs(v) ** 2] for r, v in zip(r_grid, values)]
    _emit(args, ["r", "Re", "Im", "|chi|^2"], rows, comments=[comment])
    return 0


def cmd_decay(args, spec) -> int:
    if args.r0 <= spec.b:
        raise DomainError(f"detector shell must be outside the barrier: "
                          f"r0 > b = {spec.b}, got {args.r0}")
    report = _find_sorted_poles(args, spec)
    if not 0 <= args.pole_index < len(report.poles):
        raise ConfigError(f"pole index {args.pole_index} out of range "
                          f"(found {len(report.poles)} poles)")
    pole = report.poles[args.pole_index]
    v = emission_speed(pole, spec)
    t_max = args.t_max
    if t_max is None:
        t_max = args.r0 / v + 10 * spec.hbar * np.log(2.0) / pole.gamma
    ts = np.linspace(args.t_min, t_max, args.steps)
    rows = []
    for t in ts:
        exact = decay_probability(pole, spec, args.r0, args.dr0, t, "exact_shell")
        small = decay_probability(pole, spec, args.r0, args.dr0, t, "small_shell")
        rows.append([t, exact.probability, small.probability, exact.causally_zero])
    _emit(args, ["t", "P_exact", "P_small_shell", "causal_zero"], rows,
          comments=[f"pole {args.pole_index}: k_d = {_fmt_complex(pole.k_d)}, "
                    f"Gamma = {_fmt(pole.gamma)}, v = {_fmt(v)}, "
                    f"earliest arrival r0/v = {_fmt(args.r0 / v)}"])
    return 0


def cmd_green(args, spec) -> int:
    k = complex(args.k_re, args.k_im)
    w = wronskian(args.l, k, spec, 0.5 * (spec.a + spec.b))
    denom = 2j * k * coefficients(args.l, k, spec).f_l2
    r_grid = np.linspace(0.0, args.r_max, args.r_steps)
    rows = []
    for r in r_grid:
        g = green_function(args.l, k, spec, float(r), args.rprime)
        rows.append([r, g.real, g.imag])
    _emit(args, ["r", "Re(G)", "Im(G)"], rows,
          comments=[f"k = {_fmt_complex(k)}, rprime = {_fmt(args.rprime)}, l = {args.l}",
                    f"W = {_fmt_complex(w)}",
                    f"2ikF2 = {_fmt_complex(denom)}",
                    f"W/(2ikF2) = {_fmt_complex(w / denom)}"])
    return 0


def cmd_verify(args, spec) -> int:
    results = run_invariant_suite(spec)
    lines = [r.line() for r in results]
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if all(r.passed for r in results) else 1


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON barrier config "
                        '{"v0", "a", "b", "hbar", "mass"}; default is the '
                        "reference barrier V0=8, a=1, b=2, hbar=1, m=1/2")
    common.add_argument("--l", type=int, default=0, help="angular momentum (default 0)")
    common.add_argument("--format", choices=("csv", "json"), default=None,
                        help="output format (default: json for poles, csv otherwise)")
    common.add_argument("--out", help="output path (default: stdout)")

    rect = argparse.ArgumentParser(add_help=False)
    rect.add_argument("--re-min", type=float, default=0.1)
    rect.add_argument("--re-max", type=float, default=6.0)
    rect.add_argument("--im-min", type=float, default=-2.0)
    rect.add_argument("--im-max", type=float, default=-1e-9)
    rect.add_argument("--max-poles", type=int, default=16)

    parser = argparse.ArgumentParser(
        prog="sqbarrier",
        description="Resonances of the 3-D square barrier: S-matrix poles, "
                    "Gamow states, and Green-function poles.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("poles", parents=[common, rect],
                       help="locate poles by all three methods and emit the table")
    p.set_defaults(func=cmd_poles, default_format="json")

    p = sub.add_parser("smatrix", parents=[common],
                       help="scan S_l(E) over a real energy range")
    p.add_argument("--e-min", type=float, required=True)
    p.add_argument("--e-max", type=float, required=True)
    p.add_argument("--steps", type=int, default=200)
    p.set_defaults(func=cmd_smatrix, default_format="csv")

    p = sub.add_parser("wavefunction", parents=[common, rect],
                       help="radial profile of chi_l at real E or of a Gamow state")
    p.add_argument("--pole-index", type=int, default=None)
    p.add_argument("--energy", type=float, default=None)
    p.add_argument("--r-max", type=float, default=None)
    p.add_argument("--r-steps", type=int, default=301)
    p.set_defaults(func=cmd_wavefunction, default_format="csv")

    p = sub.add_parser("decay", parents=[common, rect],
                       help="shell-detection probability vs time for one pole")
    p.add_argument("--pole-index", type=int, default=0)
    p.add_argument("--r0", type=float, required=True)
    p.add_argument("--dr0", type=float, required=True)
    p.add_argument("--t-min", type=float, default=0.0)
    p.add_argument("--t-max", type=float, default=None)
    p.add_argument("--steps", type=int, default=200)
    p.set_defaults(func=cmd_decay, default_format="csv")

    p = sub.add_parser("green", parents=[common],
                       help="Green function slice G(r, r'; k) on an r grid")
    p.add_argument("--k-re", type=float, required=True)
    p.add_argument("--k-im", type=float, default=0.0)
    p.add_argument("--rprime", type=float, required=True)
    p.add_argument("--r-max", type=float, default=None)
    p.add_argument("--r-steps", type=int, default=301)
    p.set_defaults(func=cmd_green, default_format="csv")

    p = sub.add_parser("verify", parents=[common],
                       help="run the full invariant suite on the configured barrier")
    p.set_defaults(func=cmd_verify, default_format="csv")

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = args.default_format
    try:
        spec = (BarrierSpec.from_json_file(args.config) if args.config
                else reference_barrier())
        if getattr(args, "r_max", None) is None and hasattr(args, "r_max"):
            args.r_max = 3.0 * spec.b
        return args.func(args, spec)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except _FAILURE_ERRORS as exc:
        hint = ""
        if isinstance(exc, PoleEvaluationError):
            hint = " (evaluate residues at poles with the poles command instead)"
        print(f"error: {exc}{hint}", file=sys.stderr)
        return 1
    except SquareBarrierError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
