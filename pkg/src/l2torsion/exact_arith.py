"""Exact arithmetic substrate: rationals, dense polynomials, rational
intervals, a certified enclosure of pi and values of the form q * pi^(p/2).

Rationals are plain :class:`fractions.Fraction` objects, which already keep
themselves in lowest terms with a positive denominator.  The polynomial
routines clear denominators and do their inner loops on Python integers.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

from .errors import NonZeroRemainder

ExactRational = Fraction
RationalLike = Union[int, Fraction, str]


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    return Fraction(x)


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------

class ExactPolynomial:
    """Dense univariate polynomial; ``coefficients[i]`` multiplies ``x**i``.

    Trailing zeros are trimmed, so the zero polynomial has no coefficients
    and degree -1.
    """

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Iterable[RationalLike] = ()):
        coeffs = [as_rational(c) for c in coefficients]
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("ExactPolynomial is immutable")

    @classmethod
    def monomial(cls, degree: int, coeff: RationalLike = 1) -> "ExactPolynomial":
        return cls([0] * degree + [coeff])

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coefficients)

    def integer_coefficients(self) -> list[int]:
        if not self.is_integral():
            raise ValueError("polynomial has non-integer coefficients")
        return [c.numerator for c in self.coefficients]

    def __eq__(self, other):
        if isinstance(other, ExactPolynomial):
            return self.coefficients == other.coefficients
        return NotImplemented

    def __hash__(self):
        return hash(self.coefficients)

    def __repr__(self):
        return f"ExactPolynomial({[str(c) for c in self.coefficients]})"

    def __add__(self, other: "ExactPolynomial") -> "ExactPolynomial":
        a, b = self.coefficients, other.coefficients
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return ExactPolynomial(out)

    def __neg__(self) -> "ExactPolynomial":
        return ExactPolynomial(-c for c in self.coefficients)

    def __sub__(self, other: "ExactPolynomial") -> "ExactPolynomial":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, ExactPolynomial):
            return poly_mul(self, other)
        c = as_rational(other)
        return ExactPolynomial(c * x for x in self.coefficients)

    __rmul__ = __mul__

    def __call__(self, x: RationalLike) -> Fraction:
        return poly_eval(self, as_rational(x))


def _integer_form(p: ExactPolynomial) -> tuple[list[int], int]:
    """Return ``(ints, D)`` with ``p = sum(ints[i] x^i) / D``."""
    denom = math.lcm(*(c.denominator for c in p.coefficients)) if p.coefficients else 1
    return [c.numerator * (denom // c.denominator) for c in p.coefficients], denom


def _from_integer_form(ints: Sequence[int], denom: int) -> ExactPolynomial:
    if denom == 1:
        return ExactPolynomial(Fraction(c) for c in ints)
    return ExactPolynomial(Fraction(c, denom) for c in ints)


def int_poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Convolution of integer coefficient lists, skipping zero entries."""
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    nz = [(j, y) for j, y in enumerate(b) if y]
    for i, x in enumerate(a):
        if x:
            for j, y in nz:
                out[i + j] += x * y
    return out


def poly_mul(p: ExactPolynomial, q: ExactPolynomial) -> ExactPolynomial:
    if p.is_zero() or q.is_zero():
        return ExactPolynomial()
    a, da = _integer_form(p)
    b, db = _integer_form(q)
    return _from_integer_form(int_poly_mul(a, b), da * db)


def poly_divexact(p: ExactPolynomial, q: ExactPolynomial) -> ExactPolynomial:
    """Return ``r`` with ``r * q == p``; raise NonZeroRemainder otherwise."""
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero():
        return ExactPolynomial()
    dq = q.degree
    if p.degree < dq:
        raise NonZeroRemainder(f"{q!r} does not divide {p!r}")
    rem = list(p.coefficients)
    lead = q.coefficients[-1]
    lower = [(k, c) for k, c in enumerate(q.coefficients[:-1]) if c]
    quot = [Fraction(0)] * (len(rem) - dq)
    for i in range(len(rem) - 1, dq - 1, -1):
        c = rem[i]
        if not c:
            continue
        c = c / lead
        quot[i - dq] = c
        base = i - dq
        for k, b in lower:
            rem[base + k] -= c * b
        rem[i] = Fraction(0)
    if any(rem[:dq]):
        raise NonZeroRemainder(f"{q!r} does not divide {p!r}")
    return ExactPolynomial(quot)


def poly_eval(p: ExactPolynomial, x: RationalLike) -> Fraction:
    x = as_rational(x)
    if p.is_zero():
        return Fraction(0)
    ints, denom = _integer_form(p)
    num, den = x.numerator, x.denominator
    # homogenised Horner: sum ints[i] num^i den^(deg-i)
    acc = ints[-1]
    den_pow = 1
    for c in reversed(ints[:-1]):
        den_pow *= den
        acc = acc * num + c * den_pow
    return Fraction(acc, denom * den_pow)


def antiderivative(p: ExactPolynomial) -> ExactPolynomial:
    return ExactPolynomial([0] + [c / (i + 1) for i, c in enumerate(p.coefficients)])


def poly_integrate(p: ExactPolynomial, lo: RationalLike, hi: RationalLike) -> Fraction:
    lo, hi = as_rational(lo), as_rational(hi)
    if lo == hi or p.is_zero():
        return Fraction(0)
    prim = antiderivative(p)
    return poly_eval(prim, hi) - poly_eval(prim, lo)


# ---------------------------------------------------------------------------
# Intervals and pi
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RatInterval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", as_rational(self.lo))
        object.__setattr__(self, "hi", as_rational(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, x) -> bool:
        x = as_rational(x)
        return self.lo <= x <= self.hi

    def issubset(self, other: "RatInterval") -> bool:
        return other.lo <= self.lo and self.hi <= other.hi

    def __mul__(self, other):
        if isinstance(other, RatInterval):
            ends = (self.lo * other.lo, self.lo * other.hi,
                    self.hi * other.lo, self.hi * other.hi)
            return RatInterval(min(ends), max(ends))
        c = as_rational(other)
        if c >= 0:
            return RatInterval(self.lo * c, self.hi * c)
        return RatInterval(self.hi * c, self.lo * c)

    __rmul__ = __mul__

    def reciprocal(self) -> "RatInterval":
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError("interval contains zero")
        return RatInterval(1 / self.hi, 1 / self.lo)

    def __pow__(self, k: int) -> "RatInterval":
        if self.lo < 0:
            raise ValueError("powers only implemented for nonnegative intervals")
        if k < 0:
            return (self ** -k).reciprocal()
        return RatInterval(self.lo ** k, self.hi ** k)

    def sqrt(self, bits: int) -> "RatInterval":
        """Outward-rounded square root on a grid of spacing 2**-bits."""
        if self.lo < 0:
            raise ValueError("sqrt of a negative interval")
        scale = 1 << (2 * bits)
        lo_floor = (self.lo.numerator * scale) // self.lo.denominator
        hi_ceil = -((-self.hi.numerator * scale) // self.hi.denominator)
        lo_root = math.isqrt(lo_floor)
        hi_root = math.isqrt(hi_ceil)
        if hi_root * hi_root < hi_ceil:
            hi_root += 1
        return RatInterval(Fraction(lo_root, 1 << bits), Fraction(hi_root, 1 << bits))


def _arctan_inv(x: int, prec: int) -> tuple[int, int]:
    """Integers ``(lo, hi)`` with ``lo < arctan(1/x) * 2**prec < hi``.

    Each truncated term carries a floor error below one unit; the series is
    stopped once a term floors to zero, so the alternating tail is also below
    one unit.
    """
    one = 1 << prec
    x2 = x * x
    power = x
    total = 0
    k = 0
    while True:
        term = one // (power * (2 * k + 1))
        if term == 0:
            break
        total += -term if k & 1 else term
        k += 1
        power *= x2
    err = k + 1
    return total - err, total + err


@lru_cache(maxsize=None)
def _pi_tight(prec: int) -> tuple[int, int]:
    # Machin: pi = 16 atan(1/5) - 4 atan(1/239)
    a_lo, a_hi = _arctan_inv(5, prec)
    b_lo, b_hi = _arctan_inv(239, prec)
    return 16 * a_lo - 4 * b_hi, 16 * a_hi - 4 * b_lo


@lru_cache(maxsize=None)
def pi_enclosure(bits: int) -> RatInterval:
    """Rational interval ``[lo, hi]`` with ``lo < pi < hi`` and width <= 2**-bits.

    Endpoints are snapped outward to a grid of spacing ``2**-(bits+3)`` with
    one extra grid step of margin, which makes enclosures for ``bits`` and
    ``bits + 8`` nested.
    """
    if bits < 4:
        raise ValueError("bits must be >= 4")
    guard = 12 + bits.bit_length()
    prec = bits + guard + 3
    lo_int, hi_int = _pi_tight(prec)
    shift = prec - (bits + 3)
    lo_grid = (lo_int >> shift) - 1
    hi_grid = -((-hi_int) >> shift) + 1
    grid = 1 << (bits + 3)
    return RatInterval(Fraction(lo_grid, grid), Fraction(hi_grid, grid))


# ---------------------------------------------------------------------------
# q * pi^(p/2)
# ---------------------------------------------------------------------------

_EXACT_RE = re.compile(
    r"^(-?\d+)(?:/(\d+))?(?: \* pi\^(?:-(\d+)|(\d+)|\((-?\d+)/2\)))?$"
)


def _round_significant(x: Fraction, digits: int) -> tuple[int, int]:
    """Round ``x > 0`` half-even to ``digits`` significant figures.

    Returns ``(m, e)`` with ``10**(digits-1) <= m < 10**digits`` and
    ``x ~= m * 10**(e - digits + 1)``.
    """
    e = len(str(x.numerator)) - len(str(x.denominator))
    while Fraction(10) ** e > x:
        e -= 1
    while Fraction(10) ** (e + 1) <= x:
        e += 1
    m = round(x * Fraction(10) ** (digits - 1 - e))
    if m == 10 ** digits:
        m //= 10
        e += 1
    return m, e


def format_significant(m: int, e: int, digits: int, negative: bool = False) -> str:
    s = str(m)
    sign = "-" if negative else ""
    if e >= 6 or e <= -5:
        mant = s[0] + ("." + s[1:] if digits > 1 else "")
        return f"{sign}{mant}e{e}"
    if e >= digits - 1:
        return sign + s + "0" * (e - digits + 1)
    if e >= 0:
        return f"{sign}{s[:e + 1]}.{s[e + 1:]}"
    return f"{sign}0.{'0' * (-e - 1)}{s}"


@dataclass(frozen=True)
class PiMonomial:
    """The exact real number ``coeff * pi**(half_power / 2)``."""

    coeff: Fraction
    half_power: int = 0

    def __post_init__(self):
        object.__setattr__(self, "coeff", as_rational(self.coeff))
        if not self.coeff:
            object.__setattr__(self, "half_power", 0)

    @classmethod
    def zero(cls) -> "PiMonomial":
        return cls(Fraction(0), 0)

    @property
    def sign(self) -> int:
        return (self.coeff > 0) - (self.coeff < 0)

    def __bool__(self):
        return bool(self.coeff)

    def __neg__(self):
        return PiMonomial(-self.coeff, self.half_power)

    def __abs__(self):
        return PiMonomial(abs(self.coeff), self.half_power)

    def __mul__(self, other):
        if isinstance(other, PiMonomial):
            return PiMonomial(self.coeff * other.coeff, self.half_power + other.half_power)
        return PiMonomial(self.coeff * as_rational(other), self.half_power)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, PiMonomial):
            return PiMonomial(self.coeff / other.coeff, self.half_power - other.half_power)
        return PiMonomial(self.coeff / as_rational(other), self.half_power)

    def __add__(self, other: "PiMonomial") -> "PiMonomial":
        if not isinstance(other, PiMonomial):
            return NotImplemented
        if not other.coeff:
            return self
        if not self.coeff:
            return other
        if self.half_power != other.half_power:
            raise ValueError("cannot add PiMonomials with different powers of pi")
        return PiMonomial(self.coeff + other.coeff, self.half_power)

    def __sub__(self, other: "PiMonomial") -> "PiMonomial":
        return self + (-other)

    def enclosure(self, bits: int) -> RatInterval:
        """Rational interval containing the value, built from pi_enclosure(bits)."""
        if not self.coeff:
            return RatInterval(0, 0)
        pi = pi_enclosure(bits)
        hp = self.half_power
        box = pi ** (hp // 2)
        if hp % 2:
            box = box * pi.sqrt(bits + 8)
        return box * self.coeff

    def to_mpf(self, dps: int = 50):
        import mpmath

        with mpmath.workdps(dps):
            value = mpmath.mpf(self.coeff.numerator) / self.coeff.denominator
            value *= mpmath.pi ** (mpmath.mpf(self.half_power) / 2)
        return value

    def __float__(self):
        return float(self.to_mpf(30))

    def to_decimal(self, digits: int = 6) -> str:
        """Half-even rounding to ``digits`` significant figures.

        The pi enclosure is refined until both endpoints round identically.
        """
        if digits < 1:
            raise ValueError("digits must be >= 1")
        if not self.coeff:
            return "0"
        bits = 64
        while True:
            box = self.enclosure(bits)
            lo, hi = sorted((abs(box.lo), abs(box.hi)))
            if lo > 0:
                r_lo = _round_significant(lo, digits)
                if r_lo == _round_significant(hi, digits):
                    return format_significant(*r_lo, digits, negative=self.coeff < 0)
            bits *= 2

    def __str__(self):
        if not self.coeff:
            return "0"
        q = self.coeff
        s = str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
        hp = self.half_power
        if hp % 2:
            return f"{s} * pi^({hp}/2)"
        if hp <= 0:
            return f"{s} * pi^-{-hp // 2}"
        return f"{s} * pi^{hp // 2}"

    @classmethod
    def parse(cls, text: str) -> "PiMonomial":
        m = _EXACT_RE.match(text.strip())
        if not m:
            raise ValueError(f"not an exact value: {text!r}")
        num, den, neg_pow, pos_pow, half = m.groups()
        coeff = Fraction(int(num), int(den) if den else 1)
        if neg_pow is not None:
            hp = -2 * int(neg_pow)
        elif pos_pow is not None:
            hp = 2 * int(pos_pow)
        elif half is not None:
            hp = int(half)
        else:
            hp = 0
        return cls(coeff, hp)
