"""Reference values of alpha_d as printed in the published table.

Decimal commas are normalised to dots and ``x *10^k`` to ``xek``.  Row
labels are stored exactly as printed; d = 31 has no printed value.
"""
from __future__ import annotations

from fractions import Fraction

from .exact_arith import PiMonomial
from .report import VerificationReport
from .torsion import alpha

EXACT = {
    3: "1/3 * pi^-1",
    5: "62/45 * pi^-2",
    7: "221/35 * pi^-3",
    9: "32204/945 * pi^-4",
    11: "1339661/6237 * pi^-5",
}

DECIMAL = {
    3: "0.106103",
    5: "0.139598",
    7: "0.203645",
    9: "0.349847",
    11: "0.701891",
    13: "1.61885",
    15: "4.22925",
    17: "12.3578",
    19: "39.9606",
    21: "141.729",
    23: "547.188",
    25: "2284.87",
    27: "10261.5",
    29: "49326",
    33: "252701",
    35: "1.37458e6",
    37: "7.91236e6",
    39: "4.80523e7",
}


def _exponent(x: Fraction) -> int:
    e = 0
    while Fraction(10) ** e > x:
        e -= 1
    while Fraction(10) ** (e + 1) <= x:
        e += 1
    return e


def decimal_matches(exact: PiMonomial, printed: str, max_bits: int = 4096):
    """True if ``exact`` is within one unit of the 6th significant figure of
    the printed value; None if undecided at ``max_bits``."""
    target = Fraction(printed)
    unit = Fraction(10) ** (_exponent(target) - 5)
    bits = 64
    while bits <= max_bits:
        box = exact.enclosure(bits)
        if target - unit <= box.lo and box.hi <= target + unit:
            return True
        if box.hi < target - unit or box.lo > target + unit:
            return False
        bits *= 2
    return None


def verify_table(d_max: int = 39) -> VerificationReport:
    report = VerificationReport()
    for d, text in EXACT.items():
        if d <= d_max:
            got = alpha(d).exact
            report.add("table.exact", {"d": d}, got == PiMonomial.parse(text),
                       f"computed={got} printed={text}")
    for d, text in DECIMAL.items():
        if d > d_max:
            continue
        rec = alpha(d)
        ok = decimal_matches(rec.exact, text)
        witness = f"computed={rec.decimal} printed={text}"
        if ok is False:
            hits = [e for e in range(3, d, 2) if decimal_matches(alpha(e).exact, text)]
            if hits:
                witness += f" (printed value matches computed d={hits[0]})"
        report.add("table.decimal", {"d": d}, ok, witness)
    return report
