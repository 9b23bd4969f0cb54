"""Command-line front end: ``periodic-sums <command> ...``.

Exit codes: 0 all checks passed, 1 a numerical check failed, 2 usage or
configuration error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from fractions import Fraction

from . import catalog as cat
from . import genfun as gf
from .errors import PeriodicSumError
from .expr import compile_expression, parse, weight_from_expression
from .periodic import ALTERNATING, COSINE_THIRD, SINE_QUARTER, PeriodicWeight
from .special import gauss_fractional_harmonic, harmonic, harmonic_series
from .sums import brute_S, weighted_sum_from_anti
from .verify import SUITES, run_suites

DEFAULT_TOL = 1e-9
TOL_ENV = "PERIODIC_SUM_TOL"

EXPRESSION_HELP = """\
expressions (for --f and --weight) use the variable k, numbers, pi, e,
+ - * / ^ and the functions sin cos tan log exp abs floor, e.g.
"sin(k*pi/2)", "cos(2*k*pi/3)", "(-1)^k", "1/(k+1)". '^' is
right-associative and binds tighter than unary minus: write (-1)^k.
"""


class UsageError(PeriodicSumError):
    pass


# -- formatting --------------------------------------------------------------

def _jsonable(x):
    if isinstance(x, Fraction):
        x = float(x)
    if isinstance(x, float) and not math.isfinite(x):
        return None
    return x


def _fmt(x):
    if x is None:
        return ""
    if isinstance(x, bool):
        return str(x).lower()
    if isinstance(x, Fraction):
        x = float(x)
    if isinstance(x, float):
        return format(x, ".15g")
    return str(x)


def render(report, fmt):
    rows = report["rows"]
    columns = list(rows[0]) if rows else []
    if fmt == "json":
        clean = {
            k: ([{c: _jsonable(v) for c, v in r.items()} for r in rows] if k == "rows" else _jsonable(v))
            for k, v in report.items()
        }
        return json.dumps(clean, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for r in rows:
            writer.writerow([_fmt(r[c]) for c in columns])
        return buf.getvalue()
    table = [columns] + [[_fmt(r[c]) for c in columns] for r in rows]
    widths = [max(len(line[i]) for line in table) for i in range(len(columns))]
    lines = ["  ".join(cell.rjust(w) for cell, w in zip(line, widths)) for line in table]
    lines.append("")
    lines.append(
        f"{report['command']}: max_abs_err={_fmt(report['max_abs_err'])} "
        f"max_rel_err={_fmt(report['max_rel_err'])} passed={_fmt(report['passed'])}"
    )
    return "\n".join(lines) + "\n"


def _report(command, params, rows, errors, passed, rel_errors=None):
    finite = [e for e in errors if e is not None]
    rel = [e for e in (rel_errors if rel_errors is not None else errors) if e is not None]
    return {
        "command": command,
        "params": params,
        "rows": rows,
        "max_abs_err": max(finite) if finite else None,
        "max_rel_err": max(rel) if rel else None,
        "passed": passed,
    }


# -- argument helpers --------------------------------------------------------

def parse_n_range(text):
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError:
        raise UsageError(f"--n expects N or A..B, got {text!r}") from None
    if lo < 0 or hi < lo:
        raise UsageError(f"--n range must be non-empty and non-negative, got {text!r}")
    return range(lo, hi + 1)


def _resolve_tol(args):
    if args.tol is not None:
        tol = args.tol
    elif os.environ.get(TOL_ENV):
        try:
            tol = float(os.environ[TOL_ENV])
        except ValueError:
            raise UsageError(f"{TOL_ENV} is not a number: {os.environ[TOL_ENV]!r}") from None
    else:
        return None
    if not tol > 0:
        raise UsageError(f"tolerance must be positive, got {tol}")
    return tol


def _sequence(args):
    """(callable f, CatalogEntry or None) from --family / --f."""
    if args.family and args.f:
        raise UsageError("give either --family or --f, not both")
    if args.family:
        entry = cat.get_entry(args.family)
        return entry.f, entry
    if args.f:
        return compile_expression(args.f), None
    raise UsageError("one of --family or --f is required")


def _c(x):
    if x is None:
        return None, None
    z = complex(x)
    return z.real, z.imag


def _same_weight(a: PeriodicWeight, b: PeriodicWeight):
    return a.q == b.q and all(abs(complex(x) - complex(y)) <= 1e-12 for x, y in zip(a.values, b.values))


# -- commands ----------------------------------------------------------------

def cmd_sum(args):
    tol = _resolve_tol(args) or DEFAULT_TOL
    f, entry = _sequence(args)
    if args.weight:
        w = weight_from_expression(parse(args.weight))
    elif entry is not None:
        w = entry.weight
    else:
        raise UsageError("--weight is required with --f")
    ns = parse_n_range(args.n)

    closed = None
    if entry is not None:
        if entry.closed_S is not None and _same_weight(w, entry.weight):
            closed = entry.closed_S
        elif w.q == entry.q:
            fam = entry.family
            closed = lambda n: weighted_sum_from_anti(w, fam, n)  # noqa: E731

    rows, errors = [], []
    passed = True
    for n in ns:
        b = brute_S(f, w, n)
        c = closed(n) if closed is not None else None
        err = float(abs(complex(b) - complex(c))) if c is not None else None
        if err is not None:
            errors.append(err)
            passed &= err <= tol * max(1.0, abs(c))
        br, bi = _c(b)
        cr, ci = _c(c)
        rows.append({"n": n, "brute_re": br, "brute_im": bi, "closed_re": cr, "closed_im": ci, "abs_err": err})
    params = {"family": args.family, "f": args.f, "weight": list(map(_weight_value, w.values)), "n": args.n, "tol": tol}
    # a mismatch here is data, not a failure
    return _report("sum", params, rows, errors, passed), 0


def _weight_value(v):
    if isinstance(v, complex):
        return [v.real, v.imag]
    return float(v) if isinstance(v, Fraction) else v


def cmd_verify(args):
    tol = _resolve_tol(args)
    names = args.suite or list(SUITES)
    results = run_suites(names, tol=tol, q_max=args.qmax, perturb=args.perturb)
    rows = [r.as_row() for r in results]
    passed = all(r.passed for r in results)
    params = {"suites": names, "qmax": args.qmax, "tol": tol}
    for r in results:
        if not r.passed:
            print(f"suite {r.name} FAILED at {r.worst} (max err {r.max_err:.3e}, tol {r.tolerance:.1e})", file=sys.stderr)
    errors = [r.max_err for r in results]
    return _report("verify", params, rows, errors, passed), (0 if passed else 1)


def cmd_gauss(args):
    tol = _resolve_tol(args) or DEFAULT_TOL
    p, q = args.p, args.q
    if q < 2 or not 1 <= p <= q - 1:
        raise UsageError(f"need 1 <= p < q, got p={p}, q={q}")
    value = gauss_fractional_harmonic(p, q)
    z = Fraction(p, q)
    digamma_route = harmonic(z)
    series = harmonic_series(z)
    err = max(abs(value - series), abs(value - digamma_route))
    row = {"p": p, "q": q, "formula": value, "harmonic": digamma_route, "series": series, "abs_err": err}
    passed = err <= tol
    return _report("gauss", {"p": p, "q": q, "tol": tol}, [row], [err], passed), (0 if passed else 1)


_SPECIAL_GF = (
    (ALTERNATING, gf.gf_alternating),
    (SINE_QUARTER, gf.gf_sine_quarter),
    (COSINE_THIRD, gf.gf_cosine_third),
)


def cmd_gf(args):
    tol = _resolve_tol(args) or DEFAULT_TOL
    N = args.N
    if N < 1 or N > gf.MAX_ORDER:
        raise UsageError(f"--N must be in 1..{gf.MAX_ORDER}, got {N}")
    f, entry = _sequence(args)
    F = gf.series_from_sequence(f, N)
    rows, errors = [], []

    if args.weight:
        w = weight_from_expression(parse(args.weight))
        series = gf.gf_weighted(F, w)
        special = next((fn(F) for sw, fn in _SPECIAL_GF if _same_weight(w, sw)), None)
        for n in range(N):
            brute = complex(brute_S(f, w, n))
            err = abs(series[n] - brute)
            if special is not None:
                err = max(err, abs(special[n] - brute))
            errors.append(float(err))
            row = {"n": n}
            row["gf_re"], row["gf_im"] = _c(series[n])
            row["brute_re"], row["brute_im"] = _c(brute)
            if special is not None:
                row["special_re"], row["special_im"] = _c(special[n])
            row["abs_err"] = float(err)
            rows.append(row)
        params = {"family": args.family, "f": args.f, "weight": list(map(_weight_value, w.values)), "N": N, "tol": tol}
    else:
        q = args.q if args.q is not None else (entry.q if entry else 2)
        p = args.p if args.p is not None else 0
        if q < 2 or not 0 <= p < q:
            raise UsageError(f"need q >= 2 and 0 <= p < q, got q={q}, p={p}")
        a = gf.gf_S_p_dft(F, q, p)
        b = gf.gf_S_p_decimate(F, q, p)
        direct = gf.direct_S_p(f, q, p, N)
        for n in range(N):
            err = float(max(abs(a[n] - direct[n]), abs(b[n] - direct[n]), abs(a[n] - b[n])))
            errors.append(err)
            row = {"n": n}
            row["dft_re"], row["dft_im"] = _c(a[n])
            row["decimate_re"], row["decimate_im"] = _c(b[n])
            row["direct_re"], row["direct_im"] = _c(direct[n])
            row["abs_err"] = err
            rows.append(row)
        params = {"family": args.family, "f": args.f, "q": q, "p": p, "N": N, "tol": tol}

    passed = all(e <= tol for e in errors)
    return _report("gf", params, rows, errors, passed), (0 if passed else 1)


def cmd_binomial(args):
    tol = _resolve_tol(args) or DEFAULT_TOL
    m, q, p, h = args.m, args.q, args.p, args.h
    if m < 0 or q < 2 or not 0 <= p < q:
        raise UsageError(f"need m >= 0, q >= 2 and 0 <= p < q, got m={m}, q={q}, p={p}")
    closed = cat.binomial_progression_sum(m, q, p, h)
    brute = float(cat.binomial_progression_brute(m, q, p, h))
    abs_err = abs(closed - brute)
    rel_err = abs_err / abs(brute) if brute != 0 else abs_err
    row = {"m": m, "q": q, "p": p, "h": h, "closed": closed, "brute": brute, "rel_err": rel_err}
    passed = rel_err <= tol
    params = {"m": m, "q": q, "p": p, "h": h, "tol": tol}
    return _report("binomial", params, [row], [abs_err], passed, [rel_err]), (0 if passed else 1)


def cmd_catalog(args):
    rows = []
    for e in cat.all_entries():
        rows.append({
            "id": e.id,
            "q": e.q,
            "weight": " ".join(_fmt(float(v)) for v in e.weight.values),
            "closed_form": e.closed_S is not None,
            "variants": " ".join(sorted(e.variants)),
            "description": e.description,
        })
    return _report("catalog", {}, rows, [], True), 0


# -- parser ------------------------------------------------------------------

def _common(p):
    p.add_argument("--format", choices=("text", "json", "csv"), default=None,
                   help="report format (default: from --out extension, else text)")
    p.add_argument("--out", metavar="PATH", help="write the report to PATH (.json or .csv selects the format)")
    p.add_argument("--tol", type=float, default=None,
                   help=f"tolerance (default {DEFAULT_TOL:g}, or ${TOL_ENV}; the flag wins)")


def _sequence_args(p):
    p.add_argument("--family", choices=cat.CATALOG_IDS, help="catalog family id")
    p.add_argument("--f", metavar="EXPR", help="sequence f(k) as an expression")
    p.add_argument("--weight", metavar="EXPR", help="periodic weight g(k) as an expression")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="periodic-sums",
        description="Sums weighted by periodic sequences: evaluation and verification.",
        epilog=EXPRESSION_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sum", help="brute-force S(n) next to the closed form",
                       epilog=EXPRESSION_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    _sequence_args(p)
    p.add_argument("--n", default="0..20", help="N or A..B (inclusive); default 0..20")
    _common(p)
    p.set_defaults(handler=cmd_sum)

    p = sub.add_parser("verify", help="run the verification suites")
    p.add_argument("--suite", action="append", choices=list(SUITES), help="suite to run (repeatable; default all)")
    p.add_argument("--qmax", type=int, default=12, help="largest q in the Gauss sweep")
    p.add_argument("--perturb", action="store_true", help=argparse.SUPPRESS)
    _common(p)
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("gf", help="generating-function coefficient table",
                       epilog=EXPRESSION_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    _sequence_args(p)
    p.add_argument("--q", type=int, default=None)
    p.add_argument("--p", type=int, default=None)
    p.add_argument("--N", type=int, default=32, help="series order")
    _common(p)
    p.set_defaults(handler=cmd_gf)

    p = sub.add_parser("gauss", help="H_{p/q} from the closed formula against the series")
    p.add_argument("p", type=int)
    p.add_argument("q", type=int)
    _common(p)
    p.set_defaults(handler=cmd_gauss)

    p = sub.add_parser("catalog", help="list the catalog families")
    _common(p)
    p.set_defaults(handler=cmd_catalog)

    p = sub.add_parser("binomial", help="sum_k C(m, qk+p) h(qk+p): closed form vs enumeration")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--h", choices=cat.H_CHOICES, default="one")
    _common(p)
    p.set_defaults(handler=cmd_binomial)
    return parser


def _output_format(args):
    if args.format:
        return args.format
    if args.out:
        ext = os.path.splitext(args.out)[1].lower()
        if ext in (".json", ".csv"):
            return ext[1:]
    return "text"


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report, code = args.handler(args)
    except PeriodicSumError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = render(report, _output_format(args))
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
