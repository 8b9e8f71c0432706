"""Command-line front end.

Data goes to stdout, diagnostics to stderr.  Exit codes: 0 success, 1 a
verification failed, 2 usage error, 3 an indeterminate comparison.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .errors import L2TorsionError
from .golden import verify_table
from .logdet import logdet_closed, verify_sign_lemma
from .plancherel import density_polynomial, verify_oracle
from .report import Status, VerificationReport
from .torsion import alpha, alpha_table, dimension_to_n, torsion, verify_growth

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INDET = 0, 1, 2, 3

DEFAULT_PI_BITS = 128
MAX_PI_BITS = 4096
SUITE_DEFAULT_DMAX = {"signs": 21, "growth": 251, "table": 39, "oracle": 21}


def _digits(text: str) -> int:
    value = int(text)
    if not 1 <= value <= 200:
        raise argparse.ArgumentTypeError("digits must lie in [1, 200]")
    return value


def _pi_bits(text: str) -> int:
    value = int(text)
    if value < 4:
        raise argparse.ArgumentTypeError("pi bits must be >= 4")
    return value


def _rational_text(q) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _alpha_row(rec, digits: int) -> dict:
    return {
        "d": rec.d,
        "q": _rational_text(rec.exact.coeff),
        "pi_power": rec.exact.half_power // 2,
        "decimal": rec.decimal if digits == 6 else rec.exact.to_decimal(digits),
    }


def _latex_row(row: dict) -> str:
    num, _, den = row["q"].partition("/")
    n = -row["pi_power"]
    pi = r"\pi" if n == 1 else rf"\pi^{{{n}}}"
    frac = rf"\frac{{{num}}}{{{den + pi if den else pi}}}"
    return rf"{row['d']} & ${frac}$ & {row['decimal']} \\"


def render_rows(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps({"rows": rows}, indent=2)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=["d", "q", "pi_power", "decimal"],
                                lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        return buf.getvalue().rstrip("\n")
    if fmt == "latex":
        lines = [r"\begin{tabular}{r|c|r}", r"d & $\alpha_d$ & $\approx\alpha_d$ \\", r"\hline"]
        lines += [_latex_row(r) for r in rows]
        lines.append(r"\end{tabular}")
        return "\n".join(lines)
    header = ("d", "q", "pi_power", "decimal")
    widths = [max(len(h), *(len(str(r[h])) for r in rows)) for h in header]
    out = ["  ".join(h.rjust(w) for h, w in zip(header, widths))]
    for r in rows:
        out.append("  ".join(str(r[h]).rjust(w) for h, w in zip(header, widths)))
    return "\n".join(out)


def cmd_alpha(args) -> int:
    rec = alpha(args.d)
    row = _alpha_row(rec, args.digits)
    if args.format == "text":
        print(str(rec.exact) if args.exact else row["decimal"])
    else:
        print(render_rows([row], args.format))
    return EXIT_OK


def cmd_table(args) -> int:
    rows = [_alpha_row(rec, args.digits) for rec in alpha_table(args.d_max)]
    print(render_rows(rows, args.format))
    return EXIT_OK


def cmd_logdet(args) -> int:
    n = dimension_to_n(args.d)
    dens = logdet_closed(n, args.j)
    K = list(density_polynomial(n, args.j).K) if args.coeffs and args.j < n else None
    if args.coeffs and K is None:
        print("note: K coefficients are only defined for j < n", file=sys.stderr)
    if args.format == "json":
        doc = {"d": args.d, "n": n, "j": args.j, "value": str(dens.value), "sign": dens.sign,
               "decimal": dens.value.to_decimal(args.digits)}
        if K is not None:
            doc["K"] = K
        print(json.dumps(doc, indent=2))
    else:
        print(str(dens.value))
        if K is not None:
            print(f"K = {K}")
    return EXIT_OK


def cmd_coeffs(args) -> int:
    n = dimension_to_n(args.d)
    dens = density_polynomial(n, args.j)
    if args.format == "json":
        print(json.dumps({"d": args.d, "n": n, "j": args.j, "a": dens.a, "K": list(dens.K)}))
    else:
        print(f"K = {list(dens.K)}")
    return EXIT_OK


def cmd_torsion(args) -> int:
    tv = torsion(args.d, args.volume)
    if args.format == "json":
        print(json.dumps({"d": tv.d, "volume": tv.volume, "per_volume": str(tv.exact),
                          "value": tv.value}))
    elif args.exact:
        print(str(tv.exact))
    else:
        print(f"{tv.value:.{args.digits}g}")
    return EXIT_OK


def run_suite(suite: str, d_max: int, pi_bits: int | None) -> VerificationReport:
    n_max = dimension_to_n(d_max)
    report = VerificationReport()
    if suite in ("signs", "all"):
        for n in range(1, n_max + 1):
            report.extend(verify_sign_lemma(n))
    if suite in ("growth", "all"):
        if pi_bits is None:
            report.extend(verify_growth(d_max, DEFAULT_PI_BITS, MAX_PI_BITS))
        else:
            report.extend(verify_growth(d_max, pi_bits))
    if suite in ("table", "all"):
        report.extend(verify_table(d_max))
    if suite in ("oracle", "all"):
        report.extend(verify_oracle(d_max))
    return report


def cmd_verify(args) -> int:
    d_max = args.d_max if args.d_max is not None else SUITE_DEFAULT_DMAX.get(args.suite, 21)
    report = run_suite(args.suite, d_max, args.pi_bits)
    if args.format == "json":
        print(json.dumps({"suite": args.suite, "d_max": d_max, "exit_code": report.exit_code,
                          "checks": report.to_records()}, indent=2))
    else:
        for line in report.lines():
            print(line)
    print(f"{report.count(Status.PASS)} passed, {report.count(Status.FAIL)} failed, "
          f"{report.count(Status.INDET)} indeterminate", file=sys.stderr)
    return report.exit_code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="l2torsion",
        description="L2-torsion constants of closed odd-dimensional hyperbolic manifolds.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p, choices=("text", "csv", "json", "latex")):
        p.add_argument("--format", choices=choices, default="text")

    p = sub.add_parser("alpha", help="alpha_d for one dimension")
    p.add_argument("d", type=int)
    p.add_argument("--exact", action="store_true", help="print q * pi^-n exactly")
    p.add_argument("--digits", type=_digits, default=6)
    add_format(p)
    p.set_defaults(func=cmd_alpha)

    p = sub.add_parser("table", help="alpha_d for all odd d up to d_max")
    p.add_argument("d_max", type=int)
    p.add_argument("--digits", type=_digits, default=6)
    add_format(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("logdet", help="log-determinant density L_j")
    p.add_argument("d", type=int)
    p.add_argument("j", type=int)
    p.add_argument("--coeffs", action="store_true", help="also print the density coefficients K")
    p.add_argument("--digits", type=_digits, default=6)
    add_format(p, ("text", "json"))
    p.set_defaults(func=cmd_logdet)

    p = sub.add_parser("coeffs", help="density coefficients K for (d, j)")
    p.add_argument("d", type=int)
    p.add_argument("j", type=int)
    add_format(p, ("text", "json"))
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("torsion", help="L2-torsion for a given volume")
    p.add_argument("d", type=int)
    p.add_argument("volume", type=float)
    p.add_argument("--exact", action="store_true", help="print the exact torsion per unit volume")
    p.add_argument("--digits", type=_digits, default=6)
    add_format(p, ("text", "json"))
    p.set_defaults(func=cmd_torsion)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=("signs", "growth", "table", "oracle", "all"))
    p.add_argument("d_max", type=int, nargs="?")
    p.add_argument("--pi-bits", type=_pi_bits, default=None,
                   help=f"fixed pi precision (default: {DEFAULT_PI_BITS}, doubled on "
                        f"indeterminate results up to {MAX_PI_BITS})")
    add_format(p, ("text", "json"))
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except L2TorsionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
