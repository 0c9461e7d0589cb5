"""Command-line front end: ``ellgenus <subcommand> [options]``.

Exit status: 0 on success, 1 on a domain error (non-unit, non-integral,
violated claim), 2 on malformed input.  ``--order N`` counts ``q^(1/2)``
steps: output covers exponents up to ``N/2`` inclusive.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from contextlib import redirect_stderr, redirect_stdout
from fractions import Fraction
from pathlib import Path

from . import __version__
from .charclass import ManifoldData, ManifoldFormatError, format_manifold, parse_manifold_text
from .genus import (
    ClaimViolation,
    EtaRepresentative,
    elliptic_genus,
    eta_representative,
    f_s,
    f_s_closed,
    f_s_inverse,
    p_form,
)
from .modcheck import GENERATORS, GroupElement, check_modular_weight, default_digits
from .qcore import GridError, NonIntegralError, NonUnitError, QSeries, parse_series, render_series
from .theta import SCALED_CONVENTION, RealityError, ThetaKind, theta_transform_table

PROVENANCE = {
    "engine": f"ellgenus {__version__}",
    "scaled variable": SCALED_CONVENTION,
    "pontryagin": "p_j = e_j(x_1^2, ..., x_2l^2), Ahat = 1 - p_1/24 + ...",
    "reduction range": "mod Z: [0,1); mod k: [0,k)",
}


class InputError(Exception):
    """Malformed or unreadable user input (exit status 2)."""


def parse_manifold(path) -> ManifoldData:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse_manifold_text(text)
    except ManifoldFormatError as exc:
        raise InputError(f"{path}: {exc}") from None


def render_manifold(M: ManifoldData) -> str:
    return format_manifold(M)


def _read_series(path) -> QSeries:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    series = parse_series(text)
    if not series and series.order is None:
        raise InputError(f"{path}: no series terms found")
    return series


def _cut(steps: int) -> Fraction:
    if steps < 0:
        raise InputError("--order must be non-negative")
    return Fraction(steps + 1, 2)


def _emit(header: dict[str, str], series: QSeries, fmt: str) -> str:
    if fmt == "json":
        doc = {
            "header": header,
            "terms": {str(e): str(c) for e, c in series.items()},
            "cutoff": None if series.cutoff is None else str(series.cutoff),
            "provenance": PROVENANCE,
        }
        return json.dumps(doc, indent=2)
    lines = [f"{k}: {v}" for k, v in header.items()]
    lines.append(render_series(series))
    lines += [f"# {k}: {v}" for k, v in PROVENANCE.items()]
    return "\n".join(lines)


# -- subcommands -----------------------------------------------------------


def cmd_genus(args) -> str:
    M = parse_manifold(args.input)
    res = elliptic_genus(M, _cut(args.order), args.pipeline)
    return _emit(res.header(), res.series, args.format)


def cmd_pform(args) -> str:
    M = parse_manifold(args.input)
    res = p_form(M, _cut(args.order), args.pipeline)
    return _emit(res.header(), res.series, args.format)


def cmd_fs(args) -> str:
    fn = f_s_closed if args.closed else f_s
    res = fn(args.s, _cut(args.order))
    return _emit(res.header(), res.series, args.format)


def cmd_fsinv(args) -> str:
    inv = f_s_inverse(args.s, _cut(args.order))
    header = {"weight": str(-args.s), "group": "Gamma0(2)", "pipeline": f"1/f_{args.s}",
              "reduction": "none"}
    return _emit(header, inv, args.format)


def _modulus(text: str):
    if text in ("none", "integers"):
        return text
    try:
        k = int(text)
    except ValueError:
        raise InputError(f"modulus must be none, integers or a positive integer; got {text!r}") from None
    if k <= 0:
        raise InputError("modulus must be positive")
    return k


def cmd_etarep(args) -> str:
    boundary = _read_series(args.input)
    order = None if args.order is None else _cut(args.order)
    rep: EtaRepresentative = eta_representative(boundary, args.s, order, _modulus(args.modulus),
                                                args.weight)
    return _emit(rep.header(), rep.series, args.format)


def cmd_theta_table(args) -> str:
    from .modcheck import validate_transform_rule
    rows = []
    for kind in ThetaKind:
        for gen in ("T", "S"):
            rule = theta_transform_table(kind, gen)
            err = validate_transform_rule(rule) if args.validate else None
            rows.append((kind.value, gen, rule.target.value, rule.multiplier, err))
    if args.format == "json":
        return json.dumps([dict(kind=k, generator=g, target=t, multiplier=m,
                                relerr=None if e is None else f"{e:.3e}")
                           for k, g, t, m, e in rows], indent=2)
    out = []
    for k, g, t, m, e in rows:
        check = "" if e is None else f"  relerr={e:.1e}"
        out.append(f"{k:7s} {g}: -> {t:7s} multiplier {m}{check}")
    return "\n".join(out)


def cmd_modcheck(args) -> str:
    if args.input:
        series = _read_series(args.input)
    else:
        series = f_s(args.s, Fraction(args.order + 1, 2)).series
    weight = args.s if args.weight is None else args.weight
    if weight is None:
        raise InputError("--weight is required with --input")
    elements = [GroupElement.parse(e) for e in args.element] if args.element else list(GENERATORS)
    taus = [complex(t.replace("i", "j")) for t in args.tau] if args.tau else [2j, 1 + 2j, 3j]
    digits = args.digits if args.digits else default_digits()
    reports = [check_modular_weight(series, weight, g, taus, args.tol, digits) for g in elements]
    body = "\n\n".join(r.render_kv() if args.format == "json" else r.render_text() for r in reports)
    args._failed = any(r.verdict != "pass" for r in reports)
    return body


def cmd_verify(args) -> str:
    from .verify import run_all
    results = run_all(args.order)
    args._failed = not all(r.passed for r in results)
    lines = [r.line(args.timings) for r in results]
    lines.append(f"{sum(r.passed for r in results)}/{len(results)} checks passed")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ellgenus", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"ellgenus {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, order_default=20):
        sp.add_argument("--order", type=int, default=order_default,
                        help="number of q^(1/2) steps to compute (default %(default)s)")
        sp.add_argument("--format", choices=("text", "json"), default="text")

    sp = sub.add_parser("genus", help="elliptic genus of a manifold file")
    sp.add_argument("--input", required=True)
    sp.add_argument("--pipeline", choices=("bundle", "theta"), default="bundle")
    common(sp)
    sp.set_defaults(func=cmd_genus)

    sp = sub.add_parser("pform", help="twisted form P(TM, xi, tau) of a manifold file")
    sp.add_argument("--input", required=True)
    sp.add_argument("--pipeline", choices=("bundle", "theta"), default="theta")
    common(sp)
    sp.set_defaults(func=cmd_pform)

    sp = sub.add_parser("fs", help="the modular form f_s")
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--closed", action="store_true", help="use the closed theta formula (s=2,4)")
    common(sp)
    sp.set_defaults(func=cmd_fs)

    sp = sub.add_parser("fsinv", help="1/f_s")
    sp.add_argument("--s", type=int, required=True)
    common(sp)
    sp.set_defaults(func=cmd_fsinv)

    sp = sub.add_parser("etarep", help="f_s^-1 times a boundary integral, reduced")
    sp.add_argument("--input", required=True, help="series file in the canonical rendering")
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--modulus", default="integers")
    sp.add_argument("--weight", type=int, default=None, help="weight 2m+s of the boundary integral")
    sp.add_argument("--order", type=int, default=None)
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_etarep)

    sp = sub.add_parser("theta-table", help="theta transformation table")
    sp.add_argument("--validate", action="store_true")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_theta_table)

    sp = sub.add_parser("modcheck", help="numerical Gamma0(2) weight check")
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--s", type=int)
    src.add_argument("--input")
    sp.add_argument("--weight", type=int)
    sp.add_argument("--element", action="append", help="a,b,c,d (repeatable)")
    sp.add_argument("--tau", action="append", help="complex sample, e.g. 1+2i (repeatable)")
    sp.add_argument("--tol", type=float, default=1e-6)
    sp.add_argument("--digits", type=int, default=None)
    common(sp, order_default=160)
    sp.set_defaults(func=cmd_modcheck)

    sp = sub.add_parser("verify", help="run the identity and property suite")
    sp.add_argument("--order", type=int, default=20)
    sp.add_argument("--timings", action="store_true")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args._failed = False
    try:
        out = args.func(args)
    except (InputError, GridError) as exc:
        print(f"ellgenus: error: {exc}", file=sys.stderr)
        return 2
    except (ClaimViolation, RealityError, NonUnitError, NonIntegralError, ValueError) as exc:
        print(f"ellgenus: {exc}", file=sys.stderr)
        return 1
    print(out)
    return 1 if args._failed else 0


def run(argv) -> tuple[int, str, str]:
    """Run the CLI in-process, returning ``(status, stdout, stderr)``."""
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        status = main(list(argv))
    return status, out.getvalue(), err.getvalue()


if __name__ == "__main__":
    sys.exit(main())
