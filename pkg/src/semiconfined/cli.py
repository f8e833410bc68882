"""Command-line front end.

Subcommands: ``eval``, ``grid``, ``verify``, ``figures`` and ``spectrum``.
Exit status is 0 on success, 1 when a verification check fails and 2 for
argument or domain errors.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from .errors import AccuracyError, DomainError
from .grid import GridSpec, dumps_document, fmt
from .husimi import husimi, husimi_grid
from .limits import (default_limit_grid, hermite_limit_check, laguerre_to_hermite_check,
                     reduction_check_g0)
from .model import ModelKind, OscillatorParams, energy
from .oracle import (VerificationReport, cross_validate, gaussian_identity_check,
                     hermite_table_integral_check, normalization_check, orthonormality_check,
                     table_integral_check)

FIGURE_N = (0, 1)
FIGURE_A = (0.5, 2.0, 12.0)
FIGURE_G = (0.0, 1.0)
FIGURE_BOUND = 5.0
FIGURE_STEPS = 201


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise DomainError(message)


def _model_args(p, point=False):
    p.add_argument("--model", choices=[m.value for m in ModelKind], default="semiconfined")
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--a", type=float, default=None, help="wall distance (semiconfined only)")
    p.add_argument("--g", type=float, default=0.0)
    p.add_argument("--m0", type=float, default=1.0)
    p.add_argument("--omega", type=float, default=1.0)
    p.add_argument("--hbar", type=float, default=1.0)
    if point:
        p.add_argument("--x", type=float, required=True)
        p.add_argument("--p", type=float, required=True)


def _grid_args(p, default_steps=101):
    p.add_argument("--x-min", type=float, default=-5.0)
    p.add_argument("--x-max", type=float, default=5.0)
    p.add_argument("--p-min", type=float, default=-5.0)
    p.add_argument("--p-max", type=float, default=5.0)
    p.add_argument("--x-steps", type=int, default=default_steps)
    p.add_argument("--p-steps", type=int, default=default_steps)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="semiconfined", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", help="Husimi value at one phase-space point")
    _model_args(p, point=True)

    p = sub.add_parser("grid", help="Husimi values on a rectangular grid")
    _model_args(p)
    _grid_args(p)
    p.add_argument("--format", choices=["csv", "doc"], default="csv")
    p.add_argument("--out", default="-", help="output file, '-' for stdout")

    p = sub.add_parser("verify", help="run the oracle and limit checks")
    p.add_argument("--tol", type=float, default=1e-8, help="closed form vs quadrature tolerance")
    p.add_argument("--full", action="store_true", help="run the complete check matrices")
    p.add_argument("--format", choices=["csv", "doc"], default="csv",
                   help="csv: one line per check; doc: one structured document")
    p.add_argument("--out", default="-")

    p = sub.add_parser("figures", help="write the twelve figure grids")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--format", choices=["csv", "doc"], default="csv")
    p.add_argument("--steps", type=int, default=FIGURE_STEPS)

    p = sub.add_parser("spectrum", help="energy levels 0..n-max")
    _model_args(p)
    p.add_argument("--n-max", type=int, required=True)
    return parser


def _params(args) -> tuple[ModelKind, OscillatorParams]:
    model = ModelKind(args.model)
    if model is ModelKind.SEMICONFINED:
        if args.a is None or not math.isfinite(args.a):
            raise DomainError("the semiconfined model needs a finite --a")
        a = args.a
    else:
        a = math.inf
    return model, OscillatorParams(m0=args.m0, omega=args.omega, hbar=args.hbar, a=a, g=args.g)


def _emit(text: str, out: str, stdout) -> None:
    if out == "-":
        stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def figure_grid(a: float, steps: int = FIGURE_STEPS) -> GridSpec:
    """Figure window ``[-5, 5]²`` with x clipped to ``(-a, 5]``."""
    x_min = -FIGURE_BOUND
    if -a >= x_min:
        x_min = -a + (FIGURE_BOUND + a) / steps
    return GridSpec(x_min, FIGURE_BOUND, -FIGURE_BOUND, FIGURE_BOUND, steps, steps)


def figure_name(n: int, a: float, g: float, ext: str) -> str:
    return f"husimi_n{n}_a{fmt(a)}_g{fmt(g)}.{ext}"


def verification_suite(tol: float = 1e-8, full: bool = False) -> list[VerificationReport]:
    """Oracle and limit checks; ``full`` runs the complete matrices."""
    reports = [gaussian_identity_check(), hermite_table_integral_check()]
    for alpha, q in ((1.0, 0.0), (2.5, 1 + 0.5j), (145.0, 3.0)):
        reports.append(table_integral_check(alpha, q, tol=1e-8 if alpha > 100 else 1e-10))

    ns = (0, 1, 2, 3) if full else (0, 2)
    grid = np.linspace(-4.0, 4.0, 11 if full else 5)
    for a in (0.5, 2.0):
        for g in (0.0, 1.0):
            sc = OscillatorParams(a=a, g=g)
            xs = grid[grid > -a]
            for n in ns:
                reports.append(cross_validate(ModelKind.SEMICONFINED, n, sc, xs, grid, tol=tol))
                reports.append(orthonormality_check(ModelKind.SEMICONFINED, n, n, sc))
    for g in (0.0, 1.0):
        h = OscillatorParams(g=g)
        for n in ns:
            reports.append(cross_validate(ModelKind.HERMITE, n, h, grid, grid, tol=tol))
            reports.append(orthonormality_check(ModelKind.HERMITE, n, n, h))

    norm_cases = [(ModelKind.HERMITE, 0, math.inf, 0.0), (ModelKind.SEMICONFINED, 0, 12.0, 0.0)]
    if full:
        norm_cases = [(m, n, a if m is ModelKind.SEMICONFINED else math.inf, g)
                      for m in ModelKind for n in (0, 1) for a in (0.5, 2.0, 12.0) for g in (0.0, 1.0)]
        norm_cases = list(dict.fromkeys(norm_cases))
    for model, n, a, g in norm_cases:
        reports.append(normalization_check(model, n, OscillatorParams(a=a, g=g)))

    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(20):
        n = int(rng.integers(0, 4))
        a = float(rng.uniform(0.5, 2.0))
        pt = (float(rng.uniform(-a, 4.0)), float(rng.uniform(-4.0, 4.0)))
        worst = max(worst, reduction_check_g0(n, pt, OscillatorParams(a=a)))
    reports.append(VerificationReport("reduction_g0", worst, worst, 20, worst <= 1e-12))

    lg = default_limit_grid()
    for n, g in ((0, 0.0), (1, 1.0)):
        s = hermite_limit_check(n, g, [2.0, 4.0, 8.0, 12.0], lg, OscillatorParams())
        # the a=12, n=0, g=0 distance has a calibrated ceiling
        ok = s.monotone and (n != 0 or s.sup_differences[-1] < 0.02)
        reports.append(VerificationReport(f"hermite_limit[n={n},g={g}]", s.sup_differences[-1],
                                          s.sup_differences[-1], len(s.parameters), ok,
                                          notes=s.to_line().replace(" ", ";")))
    s = laguerre_to_hermite_check(1, 0.5, [1e2, 1e3, 1e4])
    reports.append(VerificationReport("laguerre_to_hermite[n=1,x=0.5]", s.sup_differences[-1],
                                      s.sup_differences[-1], len(s.parameters), s.monotone,
                                      notes=s.to_line().replace(" ", ";")))
    return sorted(reports, key=lambda r: r.check)


def _cmd_eval(args, stdout):
    model, params = _params(args)
    stdout.write(fmt(husimi(args.n, (args.x, args.p), params, model)) + "\n")
    return 0


def _cmd_grid(args, stdout):
    model, params = _params(args)
    spec = GridSpec(args.x_min, args.x_max, args.p_min, args.p_max, args.x_steps, args.p_steps)
    dg = husimi_grid(model, args.n, spec, params)
    _emit(dg.to_csv() if args.format == "csv" else dg.to_document(), args.out, stdout)
    return 0


def _cmd_verify(args, stdout):
    reports = verification_suite(tol=args.tol, full=args.full)
    if args.format == "csv":
        text = "".join(r.to_line() + "\n" for r in reports)
    else:
        text = dumps_document({"reports": [r.to_dict() for r in reports]})
    _emit(text, args.out, stdout)
    return 0 if all(r.passed for r in reports) else 1


def _cmd_figures(args, stdout):
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    ext = "csv" if args.format == "csv" else "json"
    for n in FIGURE_N:
        for a in FIGURE_A:
            for g in FIGURE_G:
                params = OscillatorParams(a=a, g=g)
                dg = husimi_grid(ModelKind.SEMICONFINED, n, figure_grid(a, args.steps), params)
                dg.metadata["axes"] = "x clipped to (-a, 5]" if a < FIGURE_BOUND else "x in [-5, 5]"
                path = out / figure_name(n, a, g, ext)
                dg.write(path, args.format)
                stdout.write(f"{path}\n")
    return 0


def _cmd_spectrum(args, stdout):
    if args.n_max < 0:
        raise DomainError("--n-max must be non-negative")
    _, params = _params(args)
    for n in range(args.n_max + 1):
        stdout.write(f"{n},{fmt(energy(n, params))}\n")
    return 0


_COMMANDS = {"eval": _cmd_eval, "grid": _cmd_grid, "verify": _cmd_verify,
             "figures": _cmd_figures, "spectrum": _cmd_spectrum}


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return _COMMANDS[args.command](args, stdout)
    except (DomainError, ValueError) as exc:
        stderr.write(f"error: {exc}\n")
        return 2
    except AccuracyError as exc:
        stderr.write(f"accuracy error: {exc}\n")
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
