"""Command-line interface.

Subcommands: qn, fn, table, coeffs, bounds, xcheck. Every command writes a
single record as json, csv or text. Exit status: 0 success, 1 usage error,
2 domain error, 3 failed cross-check.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
import time

import mpmath as mp

from . import coeffio
from .asymptotics import rogers_asymptotic
from .bounds import bounds_report, rogers_bound
from .coeffio import dumps, format_real
from .errors import DomainError, SchlafliError
from .evaluate import f_n, identity_check_odd
from .logreal import LogScaledReal
from .oracle import oracle_f
from .recurrence import DEFAULT_N, seed_q2, seed_q3, solve, solve_many

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_CHECK = 0, 1, 2, 3

PRECISION_NOTE = ("precision-note: binary64 arithmetic; q_n is accurate to about 1e-11 "
                  "whatever N is. Use --dps for more digits.")

TABLE_COLUMNS = {
    "q(n)": "q(n)", "qn": "q(n)",
    "q(n+1)": "q(n+1)", "qn1": "q(n+1)",
    "f(n)": "f(n)", "fn": "f(n)",
    "rogers": "rogers", "coxeter": "coxeter", "quantizer": "quantizer",
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class Record:
    """Output of one command: a flat payload and optional table rows."""

    def __init__(self, kind, payload, rows=None, note=False):
        self.kind = kind
        self.payload = payload
        self.rows = rows
        self.note = note


# -- rendering ---------------------------------------------------------------

def _json_value(v):
    if isinstance(v, LogScaledReal):
        return v.to_json()
    if isinstance(v, dict):
        return {k: _json_value(x) for k, x in v.items()}
    if isinstance(v, list):
        return [_json_value(x) for x in v]
    return v


def _flatten(d):
    out = {}
    for k, v in d.items():
        if isinstance(v, LogScaledReal):
            out[f"{k}_sign"] = v.sign
            out[f"{k}_log10"] = None if v.sign == 0 else v.log10_mag
        elif isinstance(v, dict):
            for k2, v2 in _flatten(v).items():
                out[f"{k}.{k2}"] = v2
        elif isinstance(v, list):
            continue
        else:
            out[k] = v
    return out


def _cell(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return format_real(v)
    return str(v)


def _pretty(v):
    # 0.579426020542 -> 0.5794 2602 0542
    s = f"{v:.12f}"
    whole, frac = s.split(".")
    return whole + "." + " ".join(frac[i:i + 4] for i in range(0, 12, 4))


def _text_value(key, v, pretty):
    if isinstance(v, LogScaledReal):
        return str(v)
    if isinstance(v, float):
        if pretty and key.startswith("q") and not key.endswith("_err") and abs(v) < 10.0:
            return _pretty(v)
        return format_real(v)
    return _cell(v)


def render(rec: Record, fmt: str, pretty: bool = False) -> str:
    if fmt == "json":
        body = {"kind": rec.kind, **_json_value(rec.payload)}
        if rec.rows is not None:
            body["rows"] = _json_value(rec.rows)
        return dumps(body) + "\n"
    if fmt == "csv":
        rows = rec.rows if rec.rows is not None else [rec.payload]
        flat = [_flatten(r) for r in rows]
        header = list(dict.fromkeys(k for r in flat for k in r))
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for r in flat:
            w.writerow([_cell(r.get(k)) for k in header])
        return buf.getvalue()
    lines = []
    for k, v in _flatten(rec.payload).items():
        lines.append(f"{k}: {_text_value(k, v, pretty)}")
    if rec.rows is not None:
        flat = [_flatten(r) for r in rec.rows]
        header = list(dict.fromkeys(k for r in flat for k in r))
        lines.append("  ".join(header))
        for r in flat:
            lines.append("  ".join(_text_value(k, r.get(k), pretty) for k in header))
    if rec.note:
        lines.append(PRECISION_NOTE)
    return "\n".join(lines) + "\n"


# -- commands ----------------------------------------------------------------

def _q_closed(n, x):
    if not n - 1 <= x <= n + 1:
        raise DomainError(f"x={x!r} is outside [{n - 1}, {n + 1}]")
    return (seed_q2 if n == 2 else seed_q3)(x - n)


def cmd_qn(args) -> Record:
    n = args.n
    x = float(n if args.x is None else args.x)
    start = time.perf_counter()
    if args.coeffs_file:
        sol = coeffio.load(args.coeffs_file)
        n = sol.n
        x = float(n if args.x is None else args.x)
        payload = {"n": n, "x": x, "q": float(sol(x)), "err_estimate": sol.err_estimate, "N": sol.N}
    elif n < 2:
        raise DomainError(f"q_n is defined for n >= 2, got n={n}")
    elif n <= 3:
        payload = {"n": n, "x": x, "q": _q_closed(n, x), "err_estimate": 0.0, "N": None}
    else:
        if not n - 1 <= x <= n + 1:
            raise DomainError(f"x={x!r} is outside [{n - 1}, {n + 1}]")
        sol = solve(n, args.N, args.dps)
        q = sol(x)
        payload = {"n": n, "x": x, "q": float(q), "err_estimate": sol.err_estimate, "N": sol.N}
        if args.dps is not None:
            payload["q_digits"] = mp.nstr(q, args.dps)
    if args.timing:
        payload["elapsed_s"] = time.perf_counter() - start
    return Record("qn", payload, note=args.dps is None)


def cmd_fn(args) -> Record:
    n = args.n
    x = float(n if args.x is None else args.x)
    v = f_n(n, x, args.N)
    try:
        plain = v.value.to_float()
    except OverflowError:
        plain = None
    payload = {"n": n, "x": x, "f": v.value, "f_float": plain,
               "abs_err_estimate": v.abs_err_estimate, "rel_err_estimate": v.rel_err_estimate}
    return Record("fn", payload, note=True)


def _table_row(n, cols, sols, args):
    row = {"n": n}
    for col in cols:
        if col in ("q(n)", "q(n+1)"):
            x = n if col == "q(n)" else n + 1
            if n >= 4:
                row[col] = float(sols[n](x))
                row[col + "_err"] = sols[n].err_estimate
            else:
                row[col] = _q_closed(n, x)
        elif col == "f(n)":
            row["log10_f(n)"] = f_n(n, n, args.N).value.log10_mag
        elif col == "rogers":
            row["rogers"] = rogers_bound(n, not args.no_vn_factor, args.N)
        elif col == "coxeter":
            rep = bounds_report(n, args.N)
            row["coxeter"] = rep.coxeter_kissing
            row["coxeter_ambiguous"] = rep.coxeter_ambiguous
        elif col == "quantizer":
            row["quantizer"] = bounds_report(n, args.N).quantizer_msre
    return row


def cmd_table(args) -> Record:
    cols = []
    for c in args.columns:
        if c not in TABLE_COLUMNS:
            raise UsageError(f"unknown column {c!r}; choose from {sorted(set(TABLE_COLUMNS))}")
        cols.append(TABLE_COLUMNS[c])
    for n in args.n:
        if n < 2:
            raise DomainError(f"n must be at least 2, got {n}")
    needs_q = any(c.startswith("q(") for c in cols)
    sols = solve_many([n for n in args.n if n >= 4], args.N) if needs_q else {}
    rows = [_table_row(n, cols, sols, args) for n in args.n]
    return Record("table", {"N": args.N, "columns": ",".join(cols)}, rows=rows, note=True)


def cmd_coeffs(args) -> Record:
    if args.n < 4:
        raise DomainError(f"coefficients come from the recurrence, which starts at n=4 (got {args.n})")
    sol = solve(args.n, args.N, args.dps)
    d = coeffio.solution_to_dict(sol)
    rows = [{"i": i + 1, "a": float(c)} for i, c in enumerate(sol.coeffs)]
    if args.format == "csv":
        return Record("coeffs", {}, rows=rows)
    return Record("coeffs", d, note=args.dps is None)


def cmd_bounds(args) -> Record:
    rep = bounds_report(args.n, args.N)
    payload = {
        "n": rep.n,
        "rogers": rep.rogers_density_no_vn if args.no_vn_factor else rep.rogers_density,
        "rogers_with_vn": rep.rogers_density,
        "rogers_without_vn": rep.rogers_density_no_vn,
        "coxeter": rep.coxeter_kissing,
        "coxeter_ratio": rep.coxeter_ratio,
        "coxeter_ratio_err": rep.coxeter_ratio_err,
        "coxeter_ambiguous": rep.coxeter_ambiguous,
        "quantizer": rep.quantizer_msre,
    }
    for name, v in rep.inputs.items():
        payload[name] = v.value
        payload[name + "_abs_err"] = v.abs_err_estimate
    return Record("bounds", payload, note=True)


def run_checks(n: int, N: int = DEFAULT_N) -> list[dict]:
    """Cross-checks used by ``xcheck``; each entry carries its own verdict."""
    if n < 4:
        raise DomainError(f"cross-checks start at n=4, got {n}")
    checks = []

    def add(name, residual, tol):
        checks.append({"check": name, "residual": float(residual), "tolerance": float(tol),
                       "passed": bool(abs(residual) <= tol)})

    sol = solve(n, N)
    add("normalization q_n(n-1)=1", float(sol(n - 1)) - 1.0, 1e-9)
    if n <= 7:
        for x in (n - 0.5, n, n + 0.5, n + 1):
            o = oracle_f(n, x)
            p = f_n(n, x, N)
            add(f"oracle f_{n}({x:g})", o.value - p.value.to_float(),
                10.0 * (o.quad_err + p.abs_err_estimate))
    if n % 2 == 1 and n <= 11:
        for x in (n - 0.8, n - 0.4, n, n + 0.4, n + 0.8):
            lhs, rhs = identity_check_odd(n, x, N, strict=False)
            add(f"odd identity x={x:g}", lhs - rhs, 1e-8)
    if n >= 100:
        est = rogers_asymptotic(n, n)
        f = f_n(n, n, N).value
        rel = math.expm1((f.log10_mag - est.with_correction.log10_mag) * math.log(10.0))
        add("rogers asymptotic f_n(n)", rel, 100.0 / n ** 2)
    return checks


def cmd_xcheck(args) -> Record:
    checks = run_checks(args.n, args.N)
    passed = all(c["passed"] for c in checks)
    return Record("xcheck", {"n": args.n, "N": args.N, "passed": passed}, rows=checks)


# -- entry point -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--N", type=int, default=DEFAULT_N, help="series order (default 57)")
    common.add_argument("--format", choices=("json", "csv", "text"), default="text")
    common.add_argument("--pretty", action="store_true",
                        help="group decimals in blocks of four (text format)")
    common.add_argument("--out", help="write output to this path instead of stdout")

    parser = _Parser(prog="schlafli", description="Schlafli function f_n(x) and q_n(x) on [n-1, n+1]")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("qn", parents=[common], help="q_n(x)")
    p.add_argument("--n", type=int, required=False, default=None)
    p.add_argument("--x", type=float)
    p.add_argument("--dps", type=int, help="decimal digits for an mpmath run")
    p.add_argument("--coeffs-file", help="evaluate a saved coefficient file instead of solving")
    p.add_argument("--timing", action="store_true", help="report elapsed seconds")
    p.set_defaults(func=cmd_qn)

    p = sub.add_parser("fn", parents=[common], help="f_n(x) in log-scaled form")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--x", type=float)
    p.set_defaults(func=cmd_fn)

    p = sub.add_parser("table", parents=[common], help="one row per n")
    p.add_argument("--n", type=int, nargs="+", required=True)
    p.add_argument("--columns", nargs="+", default=["q(n)", "q(n+1)"],
                   help="any of q(n) q(n+1) f(n) rogers coxeter quantizer")
    p.add_argument("--no-vn-factor", action="store_true", help="omit V_n from the Rogers bound")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("coeffs", parents=[common], help="Chebyshev coefficients of q_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--dps", type=int, help="decimal digits for an mpmath run")
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("bounds", parents=[common], help="Rogers, Coxeter and quantizer bounds")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--no-vn-factor", action="store_true", help="report Rogers without V_n")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("xcheck", parents=[common], help="oracle, identity and asymptotic checks")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_xcheck)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "qn" and args.n is None and not args.coeffs_file:
        parser.error("qn needs --n or --coeffs-file")
    try:
        rec = args.func(args)
    except UsageError as exc:
        print(f"schlafli: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SchlafliError, ValueError) as exc:
        print(f"schlafli: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    text = render(rec, args.format, args.pretty)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if rec.kind == "xcheck" and not rec.payload["passed"]:
        return EXIT_CHECK
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
