"""Log-determinant densities ``L_j = logdet(Delta_j) / Vol(M)`` of the
coclosed Laplacians on H^(2n+1), evaluated two independent ways, and the
unit-interval decomposition used to pin down their signs.

Closed form (``a = n - j``)::

    L_j = C binom(2n, j) sum_k K[k] (-1)^(k+1) 2 pi / (2k+1) a^(2k+1)

Integral form::

    L_j = -2 pi C binom(2n, j) int_0^a prod_{k=0..n} (k^2 - x^2) / (a^2 - x^2) dx

The integral is split at the integers into pieces ``f_r(t)``, ``x = t + r``,
which alternate in sign and grow in size.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import InvalidDegree, InvalidShift, NonZeroRemainder
from .exact_arith import (
    ExactPolynomial,
    PiMonomial,
    poly_divexact,
    poly_eval,
    poly_integrate,
    poly_mul,
)
from .plancherel import density_polynomial, heat_prefactor
from .report import VerificationReport

SAMPLE_POINTS = tuple(Fraction(m, 10) for m in range(1, 10))


@dataclass(frozen=True)
class LogDetDensity:
    n: int
    j: int
    a: int
    value: PiMonomial
    sign: int


@dataclass(frozen=True)
class FrDecomposition:
    n: int
    a: int
    fr_polys: tuple[ExactPolynomial, ...]
    fr_integrals: tuple[Fraction, ...]
    total: Fraction


def _check_degree(n: int, j: int, allow_middle: bool) -> None:
    if n < 1:
        raise InvalidDegree(f"n must be >= 1, got {n}")
    top = n if allow_middle else n - 1
    if not 0 <= j <= top:
        raise InvalidDegree(f"form degree j must lie in [0, {top}], got {j}")


def _density(n: int, j: int, value: PiMonomial) -> LogDetDensity:
    return LogDetDensity(n, j, n - j, value, value.sign)


def logdet_closed(n: int, j: int) -> LogDetDensity:
    _check_degree(n, j, allow_middle=True)
    if j == n:
        # middle degree vanishes (Lott); not recomputed here
        return _density(n, j, PiMonomial.zero())
    dens = density_polynomial(n, j)
    a = dens.a
    # sum_k K[k] (-1)^(k+1) a^(2k+1) / (2k+1) over a common odd denominator
    denom = math.lcm(*range(1, 2 * n + 2, 2))
    acc = 0
    a_pow = a
    a2 = a * a
    for k, c in enumerate(dens.K):
        if c:
            term = c * a_pow * (denom // (2 * k + 1))
            acc += -term if k % 2 == 0 else term
        a_pow *= a2
    series = PiMonomial(Fraction(2 * acc, denom), 2)  # includes the 2 pi
    return _density(n, j, heat_prefactor(n) * math.comb(2 * n, j) * series)


@lru_cache(maxsize=256)
def _signed_product(n: int) -> ExactPolynomial:
    """``prod_{k=0..n} (k^2 - x^2)`` as a polynomial in x."""
    out = ExactPolynomial([1])
    for k in range(n + 1):
        out = poly_mul(out, ExactPolynomial([k * k, 0, -1]))
    return out


def integrand_polynomial(n: int, a: int) -> ExactPolynomial:
    """``prod_{k=0..n} (k^2 - x^2) / (a^2 - x^2)``, divided out exactly."""
    if not 1 <= a <= n:
        raise InvalidShift(f"shift a must lie in [1, {n}], got {a}")
    return poly_divexact(_signed_product(n), ExactPolynomial([a * a, 0, -1]))


def logdet_integral(n: int, j: int) -> LogDetDensity:
    _check_degree(n, j, allow_middle=False)
    a = n - j
    area = poly_integrate(integrand_polynomial(n, a), 0, a)
    value = heat_prefactor(n) * math.comb(2 * n, j) * PiMonomial(-2 * area, 2)
    return _density(n, j, value)


def _int_linear_product(ks) -> list[int]:
    """Integer coefficients of ``prod (t + k)``."""
    out = [1]
    for k in ks:
        nxt = [0] * (len(out) + 1)
        for i, c in enumerate(out):
            nxt[i] += c * k
            nxt[i + 1] += c
        out = nxt
    return out


def _int_divide_linear(p: list[int], root: int) -> list[int]:
    """Exact quotient of p(t) by (t - root); raises if there is a remainder."""
    quot = [0] * (len(p) - 1)
    carry = 0
    for i in range(len(p) - 1, 0, -1):
        carry = p[i] + carry * root
        quot[i - 1] = carry
    if p[0] + carry * root != 0:
        raise NonZeroRemainder(f"t - {root} does not divide the product")
    return quot


@lru_cache(maxsize=4096)
def _shifted_product(n: int, r: int) -> tuple[int, ...]:
    """``(t + r) * prod_{k=-n+r..n+r} (t + k)``."""
    return tuple(_int_linear_product([r, *range(-n + r, n + r + 1)]))


def fr_polynomial(n: int, a: int, r: int) -> ExactPolynomial:
    """``f_r(t) = (t+r) / ((a+t+r)(a-t-r)) * prod_{k=-n+r..n+r} (t+k)``.

    The denominator is the pair of factors ``k = r + a`` and ``k = r - a`` of
    the product, with a sign flip for the ``a - t - r`` orientation.
    """
    p = list(_shifted_product(n, r))
    p = _int_divide_linear(p, -(r + a))
    p = _int_divide_linear(p, a - r)
    return ExactPolynomial(-c for c in p)


def fr_polynomial_bookkeeping(n: int, a: int, r: int) -> ExactPolynomial:
    """Slow reference for :func:`fr_polynomial`: multiply only the surviving factors."""
    ks = [k for k in range(-n + r, n + r + 1) if k not in (r - a, r + a)]
    return ExactPolynomial(-c for c in _int_linear_product([r, *ks]))


def fr_decomposition(n: int, a: int) -> FrDecomposition:
    if n < 1:
        raise InvalidDegree(f"n must be >= 1, got {n}")
    if not 1 <= a <= n:
        raise InvalidShift(f"shift a must lie in [1, {n}], got {a}")
    polys = tuple(fr_polynomial(n, a, r) for r in range(a))
    integrals = tuple(poly_integrate(p, 0, 1) for p in polys)
    total = poly_integrate(integrand_polynomial(n, a), 0, a)
    return FrDecomposition(n, a, polys, integrals, total)


def verify_sign_lemma(n: int, samples=SAMPLE_POINTS) -> VerificationReport:
    """Exact checks of the sign lemma for every form degree ``j < n``."""
    if n < 1:
        raise InvalidDegree(f"n must be >= 1, got {n}")
    report = VerificationReport()
    for j in range(n):
        a = n - j
        params = {"n": n, "j": j}
        closed = logdet_closed(n, j)
        integral = logdet_integral(n, j)
        report.add("signs.dual_path", params, closed.value == integral.value,
                   f"closed={closed.value} integral={integral.value}")
        expected = (-1) ** (n - j - 1)
        report.add("signs.sign", params, closed.sign == expected,
                   f"sign={closed.sign} expected={expected}")

        dec = fr_decomposition(n, a)
        lhs = (-1) ** (n + 1) * sum(dec.fr_integrals)
        report.add("signs.fr_identity", params, dec.total == lhs,
                   f"total={dec.total} alternating_sum={lhs}")
        bad = [r for r, v in enumerate(dec.fr_integrals)
               if not v or (v > 0) != ((n - r) % 2 == 0)]
        report.add("signs.fr_sign", params, not bad, f"wrong sign at r={bad}")
        sizes = [abs(v) for v in dec.fr_integrals]
        bad = [r for r in range(a - 1) if not sizes[r + 1] > sizes[r]]
        report.add("signs.fr_monotone", params, not bad, f"not strictly increasing at r={bad}")

        values = [[abs(poly_eval(p, t)) for t in samples] for p in dec.fr_polys]
        bad = [(r, str(t)) for r in range(a - 1) for i, t in enumerate(samples)
               if values[r][i] and not values[r + 1][i] > values[r][i]]
        report.add("signs.fr_pointwise", params, not bad, f"ratio <= 1 at (r, t)={bad}")
        if a >= 2:
            bad = [str(t) for i, t in enumerate(samples)
                   if not values[a - 1][i] >= 2 * values[a - 2][i]]
            report.add("signs.fr_last_ratio", params, not bad, f"ratio < 2 at t={bad}")
    return report
