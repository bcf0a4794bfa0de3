"""Command-line front end: ``beanbounds <command> [options]``.

Exit status: 0 on success (all reports confirmed), 1 on usage errors,
2 when a bound is violated.
"""

from __future__ import annotations

import argparse
import cmath
import csv
import io
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

from . import bounds_engine as be
from . import search
from .caratheodory import CaratheodoryCoeffs, SchwarzParams
from .class_btb import coeffs_from_c, extremal, extremal_series, from_params
from .functionals import functional_records
from .series_core import FLOAT, TruncatedSeries, exp_series, sqrt_unit, tanh_series

MAX_ORDER = 60
BEAN_SERIES_ORDER = 80
BEAN_CHECK_RADIUS = 0.99
BEAN_CHECK_TOL = 1e-8

EXIT_OK, EXIT_USAGE, EXIT_VIOLATION = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_number(text: str):
    """``'p/q'`` or an integer gives a Fraction, a decimal gives a float and
    ``'re,im'`` gives a complex number."""
    text = text.strip()
    try:
        if "," in text:
            re_, im = text.split(",", 1)
            re_, im = parse_number(re_), parse_number(im)
            if im == 0:
                return re_
            return complex(float(re_), float(im))
        if "/" in text or text.lstrip("+-").isdigit():
            return Fraction(text)
        return float(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"malformed number {text!r}") from None


def _fmt(x) -> str:
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else str(x.numerator)
    if isinstance(x, complex):
        return repr(x.real) if x.imag == 0 else f"{x.real!r}{x.imag:+}j"
    return repr(x) if isinstance(x, float) else str(x)


def _emit(rows: list[dict], fmt: str, out) -> None:
    if fmt == "json":
        for row in rows:
            out.write(json.dumps(row, sort_keys=True) + "\n")
    elif fmt == "csv":
        w = csv.DictWriter(out, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    else:
        keys = list(rows[0])
        cells = [[str(r[k]) for k in keys] for r in rows]
        widths = [max(len(k), *(len(c[i]) for c in cells)) for i, k in enumerate(keys)]
        out.write("  ".join(k.ljust(w) for k, w in zip(keys, widths)).rstrip() + "\n")
        for c in cells:
            out.write("  ".join(v.ljust(w) for v, w in zip(c, widths)).rstrip() + "\n")


def _open_out(path):
    if path is None:
        return sys.stdout, False
    return open(path, "w", newline=""), True


# --- commands -------------------------------------------------------------

def _params_from_args(args) -> SchwarzParams:
    vals = [parse_number(getattr(args, f"tau{i}")) if getattr(args, f"tau{i}") is not None
            else None for i in range(1, 5)]
    if vals[0] is None:
        raise UsageError("--tau1 is required")
    vals[1] = 0 if vals[1] is None else vals[1]
    vals[2] = 0 if vals[2] is None else vals[2]
    try:
        return SchwarzParams(*vals)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _function_from_args(args):
    if getattr(args, "k", None) is not None:
        if args.k not in (1, 2, 3, 4):
            raise UsageError("--k must be 1, 2, 3 or 4")
        return extremal(args.k)
    if getattr(args, "c", None):
        cs = [parse_number(x) for x in args.c.split(";")]
        if not 3 <= len(cs) <= 4:
            raise UsageError("--c needs 3 or 4 values separated by ';'")
        return coeffs_from_c(CaratheodoryCoeffs(*cs))
    return from_params(_params_from_args(args), pipeline=getattr(args, "pipeline", False))


def cmd_coeffs(args) -> int:
    f = _function_from_args(args)
    rows = [{"n": n, "a_n": _fmt(a) if a is not None else "unavailable"}
            for n, a in zip(range(2, 6), f.coeffs)]
    out, close = _open_out(args.out)
    try:
        _emit(rows, args.format, out)
    finally:
        if close:
            out.close()
    return EXIT_OK


def cmd_extremal(args) -> int:
    if args.k not in (1, 2, 3, 4):
        raise UsageError("--k must be 1, 2, 3 or 4")
    if not 1 <= args.order <= MAX_ORDER:
        raise UsageError(f"--order must lie in 1..{MAX_ORDER}")
    f = extremal_series(args.k, args.order)
    rows = [{"n": n, "coeff": _fmt(c)} for n, c in enumerate(f.coeffs)]
    if args.format == "json":
        rows = [dict(r, k=args.k) for r in rows]
    out, close = _open_out(args.out)
    try:
        _emit(rows, args.format, out)
    finally:
        if close:
            out.close()
    return EXIT_OK


def cmd_functionals(args) -> int:
    f = _function_from_args(args)
    rows = functional_records(f)
    if args.format != "json":
        rows = [dict(r, routes="+".join(r["routes"]), value=_fmt_record(r["value"]))
                for r in rows]
    out, close = _open_out(args.out)
    try:
        _emit(rows, args.format, out)
    finally:
        if close:
            out.close()
    return EXIT_OK


def _fmt_record(v):
    if isinstance(v, list):
        return _fmt(complex(*v))
    if isinstance(v, str) and "/" in v:
        return _fmt(Fraction(v))
    return v if isinstance(v, str) else _fmt(v)


def cmd_lemma(args) -> int:
    name = args.name
    p = {k: parse_number(v) for k, v in vars(args).items()
         if k.startswith("p_") and v is not None}

    def need(*keys):
        missing = [k for k in keys if f"p_{k}" not in p]
        if missing:
            raise UsageError(f"lemma {name} needs --{' --'.join(missing)}")
        return [p[f"p_{k}"] for k in keys]

    try:
        if name == "Y":
            A, B, C = need("A", "B", "C")
            value, branch = be.y_eval(A, B, C)
            row = {"lemma": "Y", "value": _fmt(value), "branch": branch}
        elif name == "C":
            (v,) = need("v")
            row = {"lemma": "C", "value": _fmt(be.lemma_c_bound(v))}
        elif name == "D":
            B, D = need("B", "D")
            row = {"lemma": "D", "value": str(be.lemma_d_check(B, D)).lower()}
        elif name == "E":
            g, lam, alpha, beta = need("gamma", "lambda", "alpha", "beta")
            ok, slack = be.lemma_e_check(g, lam, alpha, beta)
            row = {"lemma": "E", "value": str(ok).lower(), "slack": _fmt(slack)}
        elif name == "F":
            B1, B2, B3 = need("B1", "B2", "B3")
            plus, minus, (pb, mb) = be.lemma_f_bounds(B1, B2, B3)
            row = {"lemma": "F", "psi_plus": _fmt(plus), "psi_minus": _fmt(minus),
                   "branch": f"{pb},{mb}"}
        else:
            raise UsageError(f"unknown lemma {name!r}")
    except be.LemmaDomainError as exc:
        raise UsageError(str(exc)) from None
    out, close = _open_out(args.out)
    try:
        _emit([row], args.format, out)
    finally:
        if close:
            out.close()
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.samples < 1:
        raise UsageError("--samples must be at least 1")
    if args.refine_iters < 0:
        raise UsageError("--refine-iters must be non-negative")
    try:
        reports = search.verify_all(
            seed=args.seed, samples=args.samples, refine_iters=args.refine_iters,
            include_extremals=not args.no_extremals, workers=args.workers,
            functionals=args.functional,
        )
    except search.UnknownFunctional as exc:
        raise UsageError(f"unknown functional {exc}") from None

    if args.out:
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        (outdir / "reports.jsonl").write_text(
            "".join(r.to_json_line() + "\n" for r in reports))
        (outdir / "summary.csv").write_text(search.summary_csv(reports))

    if args.format == "json":
        for r in reports:
            sys.stdout.write(r.to_json_line() + "\n")
    elif args.format == "csv":
        sys.stdout.write(search.summary_csv(reports))
    else:
        rows = [{"theorem_id": r.theorem_id, "bound": r.sharp_bound_exact,
                 "attained": f"{r.attained:.12g}", "gap": f"{r.gap:.3e}",
                 "by": r.attained_by, "verdict": r.verdict} for r in reports]
        _emit(rows, "table", sys.stdout)

    if search.any_violated(reports):
        return EXIT_VIOLATION
    # an unconfirmed (inconclusive) report is not a violation
    return EXIT_OK


# --- plot data --------------------------------------------------------------

def bean_closed_form(theta: float) -> complex:
    """``sqrt(1 + tanh(e^{i theta}))`` on the unit circle."""
    return cmath.sqrt(1 + cmath.tanh(cmath.exp(1j * theta)))


def bean_series_residual(order: int = BEAN_SERIES_ORDER, radius: float = BEAN_CHECK_RADIUS,
                         n_angles: int = 64) -> float:
    """Max of ``|B(z)^2/(2 - B(z)^2) - e^{2z}|`` on ``|z| = radius`` with ``B``
    the truncated series."""
    b = sqrt_unit(tanh_series(order, FLOAT) + 1)
    worst = 0.0
    for j in range(n_angles):
        z = radius * cmath.exp(2j * math.pi * j / n_angles)
        w2 = b(z) ** 2
        worst = max(worst, abs(w2 / (2 - w2) - cmath.exp(2 * z)))
    return worst


def plot_rows(target: str, resolution: int, scaled: bool = False) -> list[dict]:
    if resolution < 2:
        raise UsageError("--resolution must be at least 2")
    if target in ("psi", "psi1"):
        poly = be.psi if target == "psi" else be.psi1
        rows = []
        for i in range(resolution):
            t = Fraction(i, resolution - 1)
            v = poly(t) / 36864 if scaled else poly(t)
            rows.append({"t": repr(float(t)), "value": repr(float(v))})
        return rows
    if target == "bean":
        residual = bean_series_residual()
        if residual > BEAN_CHECK_TOL:
            raise ArithmeticError(f"bean series residual {residual:.3e} too large")
        rows = []
        for i in range(resolution):
            theta = 2 * math.pi * i / resolution
            w = bean_closed_form(theta)
            rows.append({"theta": repr(theta), "re": repr(w.real), "im": repr(w.imag)})
        return rows
    raise UsageError(f"unknown plot target {target!r}")


def svg_polyline(points: list[tuple[float, float]], width: int = 400,
                 height: int = 300, pad: int = 10) -> str:
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    sx = (width - 2 * pad) / ((x1 - x0) or 1)
    sy = (height - 2 * pad) / ((y1 - y0) or 1)
    coords = " ".join(
        f"{pad + (x - x0) * sx:.3f},{height - pad - (y - y0) * sy:.3f}" for x, y in points
    )
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">\n'
        f'<polyline fill="none" stroke="black" points="{coords}"/>\n</svg>\n'
    )


def cmd_plot(args) -> int:
    rows = plot_rows(args.target, args.resolution, args.scaled)
    out, close = _open_out(args.out)
    try:
        _emit(rows, "csv" if args.format == "table" else args.format, out)
    finally:
        if close:
            out.close()
    if args.svg:
        keys = list(rows[0])
        if args.target == "bean":
            pts = [(float(r["re"]), float(r["im"])) for r in rows]
            pts.append(pts[0])
        else:
            pts = [(float(r[keys[0]]), float(r[keys[1]])) for r in rows]
        Path(args.svg).write_text(svg_polyline(pts))
    return EXIT_OK


# --- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="beanbounds", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, default_format="table"):
        p.add_argument("--format", choices=["json", "csv", "table"], default=default_format)
        p.add_argument("--out", metavar="PATH")

    def member(p):
        p.add_argument("--k", type=int, help="extremal function f_k")
        p.add_argument("--c", help="Carathéodory coefficients 'c1;c2;c3[;c4]'")
        for i in range(1, 5):
            p.add_argument(f"--tau{i}", help="'p/q', decimal, or 're,im'")
        p.add_argument("--pipeline", action="store_true",
                       help="use the series pipeline instead of the closed form")

    p = sub.add_parser("coeffs", help="Taylor coefficients a2..a5 of a class member")
    member(p)
    common(p)
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("extremal", help="exact coefficients of f_k")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--order", type=int, default=12)
    common(p)
    p.set_defaults(func=cmd_extremal)

    p = sub.add_parser("functionals", help="all functionals of a class member")
    member(p)
    common(p)
    p.set_defaults(func=cmd_functionals)

    p = sub.add_parser("lemma", help="evaluate a lemma (Y, C, D, E, F)")
    p.add_argument("name")
    for flag in ("A", "B", "C", "D", "v", "gamma", "lambda", "alpha", "beta",
                 "B1", "B2", "B3"):
        p.add_argument(f"--{flag}", dest=f"p_{flag}")
    common(p)
    p.set_defaults(func=cmd_lemma)

    p = sub.add_parser("verify", help="numerically verify the sharp bounds")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--refine-iters", type=int, default=3)
    p.add_argument("--functional", action="append",
                   help="restrict to a theorem id (repeatable)")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--no-extremals", action="store_true",
                   help="do not inject the known extremal witnesses")
    p.add_argument("--format", choices=["json", "csv", "table"], default="table")
    p.add_argument("--out", metavar="DIR", help="write reports.jsonl and summary.csv here")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("plot", help="curve data for psi, psi1 or the bean boundary")
    p.add_argument("target", choices=["psi", "psi1", "bean"])
    p.add_argument("--resolution", type=int, default=101)
    p.add_argument("--scaled", action="store_true", help="divide psi values by 36864")
    p.add_argument("--svg", metavar="PATH")
    common(p, default_format="csv")
    p.set_defaults(func=cmd_plot)
    return parser


def _glue_negatives(argv: list[str]) -> list[str]:
    """Rewrite ``--B2 -23/768`` as ``--B2=-23/768`` so argparse does not read
    the value as an option."""
    out = []
    for tok in argv:
        if (out and out[-1].startswith("--") and "=" not in out[-1]
                and len(tok) > 1 and tok[0] == "-" and (tok[1].isdigit() or tok[1] == ".")):
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_glue_negatives(argv))
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"beanbounds {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
