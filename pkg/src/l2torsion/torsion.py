"""The constants alpha_d with Tor(M) = (-1)^n alpha_d Vol(M), d = 2n + 1.

alpha_d is kept exactly as ``q_d * pi^-n``.  The growth inequalities are
reduced to statements about the rationals ``q_d``; only strict monotonicity
needs pi, and that is decided against a rational enclosure.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .errors import InvalidDimension, InvalidVolume
from .exact_arith import PiMonomial, pi_enclosure
from .logdet import LogDetDensity, logdet_closed
from .report import VerificationReport


@dataclass(frozen=True)
class AlphaRecord:
    d: int
    n: int
    exact: PiMonomial
    decimal: str
    per_degree: tuple[LogDetDensity, ...]


@dataclass(frozen=True)
class TorsionValue:
    d: int
    volume: float
    value: float
    exact: PiMonomial  # (-1)^n alpha_d, i.e. torsion per unit volume


def dimension_to_n(d: int) -> int:
    if isinstance(d, bool) or not isinstance(d, int) or d < 3 or d % 2 == 0:
        raise InvalidDimension("dimension must be odd and >= 3")
    return (d - 1) // 2


@lru_cache(maxsize=None)
def _alpha_exact(d: int) -> tuple[PiMonomial, tuple[LogDetDensity, ...]]:
    n = dimension_to_n(d)
    per_degree = tuple(logdet_closed(n, j) for j in range(n + 1))
    # Tor/Vol = 2 sum_{j<n} (-1)^(j+1) L_j
    per_volume = PiMonomial.zero()
    size = PiMonomial.zero()
    for dens in per_degree[:n]:
        per_volume += dens.value * (2 * (-1) ** (dens.j + 1))
        size += abs(dens.value) * 2
    exact = per_volume * (-1) ** n
    if exact != size or exact.coeff <= 0 or exact.half_power != -2 * n:
        raise ArithmeticError(f"sign law violated at d={d}: {exact} vs {size}")
    return exact, per_degree


def alpha(d: int, digits: int = 6) -> AlphaRecord:
    exact, per_degree = _alpha_exact(d)
    return AlphaRecord(d, (d - 1) // 2, exact, exact.to_decimal(digits), per_degree)


def torsion(d: int, volume: float) -> TorsionValue:
    n = dimension_to_n(d)
    try:
        vol = float(volume)
    except (TypeError, ValueError):
        raise InvalidVolume(f"volume must be a real number, got {volume!r}") from None
    if not math.isfinite(vol) or vol < 0:
        raise InvalidVolume(f"volume must be finite and >= 0, got {volume!r}")
    exact = alpha(d).exact * (-1) ** n
    return TorsionValue(d, vol, float(exact) * vol, exact)


def alpha_table(d_max: int, digits: int = 6, workers: Optional[int] = None) -> list[AlphaRecord]:
    """Records for every odd d in [3, d_max], in increasing order.

    With ``workers > 1`` the records are computed in a process pool.
    """
    dimension_to_n(d_max)
    dims = list(range(3, d_max + 1, 2))
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(alpha, dims, [digits] * len(dims)))
    return [alpha(d, digits) for d in dims]


def exceeds_pi_multiple(x: Fraction, y: Fraction, bits: int) -> Optional[bool]:
    """Decide ``x > pi * y`` for ``y > 0``; None if the enclosure is too coarse."""
    box = pi_enclosure(bits)
    if x > box.hi * y:
        return True
    if x < box.lo * y:
        return False
    return None


def verify_growth(d_max: int, pi_bits: int = 128,
                  max_pi_bits: Optional[int] = None) -> VerificationReport:
    """Growth bounds for alpha_{2n+1}, n up to (d_max - 1) / 2.

    * recurrence: q_{2n+1} >= (n/2) q_{2n-1}
    * factorial:  q_{2n+1} >= (2/3) n! / 2^n
    * strict increase: q_{2n+1} > pi q_{2n-1}

    An indeterminate strict comparison is retried with doubled precision up
    to ``max_pi_bits`` when that is given.
    """
    n_max = dimension_to_n(d_max)
    q = {n: _alpha_exact(2 * n + 1)[0].coeff for n in range(1, n_max + 1)}
    report = VerificationReport()
    for n in range(1, n_max + 1):
        d = 2 * n + 1
        bound = Fraction(2, 3) * Fraction(math.factorial(n), 2 ** n)
        report.add("growth.factorial", {"d": d}, q[n] >= bound,
                   f"q/bound={float(q[n] / bound):.6g}")
        if n == 1:
            continue
        bound = Fraction(n, 2) * q[n - 1]
        report.add("growth.recurrence", {"d": d}, q[n] >= bound,
                   f"q/bound={float(q[n] / bound):.6g}")
        bits = pi_bits
        verdict = exceeds_pi_multiple(q[n], q[n - 1], bits)
        while verdict is None and max_pi_bits and bits < max_pi_bits:
            bits = min(2 * bits, max_pi_bits)
            verdict = exceeds_pi_multiple(q[n], q[n - 1], bits)
        report.add("growth.strict_increase", {"d": d}, verdict,
                   f"alpha ratio={float(q[n] / q[n - 1]) / math.pi:.6g} pi_bits={bits}")
    return report
