import math
from fractions import Fraction

import mpmath
import pytest

from l2torsion.errors import InvalidDegree, InvalidShift
from l2torsion.exact_arith import ExactPolynomial, PiMonomial, poly_integrate
from l2torsion.logdet import (
    fr_decomposition,
    fr_polynomial,
    fr_polynomial_bookkeeping,
    integrand_polynomial,
    logdet_closed,
    logdet_integral,
    verify_sign_lemma,
)
from l2torsion.plancherel import gamma_half_integer, heat_trace_terms
from l2torsion.report import Status


def pm(num, den, n):
    return PiMonomial(Fraction(num, den), -2 * n)


@pytest.mark.parametrize("n, j, expected", [
    (1, 1, PiMonomial.zero()),
    (1, 0, pm(1, 6, 1)),
    (2, 1, pm(17, 45, 2)),
    (2, 0, pm(-14, 45, 2)),
])
def test_logdet_closed_examples(n, j, expected):
    dens = logdet_closed(n, j)
    assert dens.value == expected
    assert dens.a == n - j


def test_middle_degree_is_zero():
    for n in range(1, 6):
        dens = logdet_closed(n, n)
        assert dens.value == PiMonomial.zero() and dens.sign == 0


@pytest.mark.parametrize("n, j, integrand, area, expected", [
    (1, 0, [0, 0, -1], Fraction(-1, 3), pm(1, 6, 1)),
    (2, 1, [0, 0, -4, 0, 1], Fraction(-17, 15), pm(17, 45, 2)),
    (2, 0, [0, 0, -1, 0, 1], Fraction(56, 15), pm(-14, 45, 2)),
])
def test_logdet_integral_examples(n, j, integrand, area, expected):
    poly = integrand_polynomial(n, n - j)
    assert poly == ExactPolynomial(integrand)
    assert poly_integrate(poly, 0, n - j) == area
    assert logdet_integral(n, j).value == expected


@pytest.mark.parametrize("n, j", [(0, 0), (2, 3), (3, -1)])
def test_logdet_closed_rejects(n, j):
    with pytest.raises(InvalidDegree):
        logdet_closed(n, j)


def test_logdet_integral_rejects_middle_degree():
    with pytest.raises(InvalidDegree):
        logdet_integral(2, 2)


def test_dual_path_small_n():
    for n in range(1, 21):
        for j in range(n):
            closed = logdet_closed(n, j)
            assert closed.value == logdet_integral(n, j).value
            assert closed.value.half_power == -2 * n
            assert closed.sign == (-1) ** (n - j - 1)


@pytest.mark.parametrize("k", range(0, 12))
def test_continued_mellin_factor(k):
    # Gamma(k + 1/2) Gamma(-k - 1/2) = (-1)^(k+1) 2 pi / (2k + 1)
    prod = gamma_half_integer(k) * gamma_half_integer(-k - 1)
    assert prod == PiMonomial(Fraction(2 * (-1) ** (k + 1), 2 * k + 1), 2)


def _zeta_regularized(n, j):
    """L_j straight from the determinant definition, numerically.

    Small times: d/ds at 0 of (1/Gamma(s)) int_0^1 t^(s-1) tr(t) dt through
    the continued lower incomplete gamma.  Large times: quadrature of
    tr(t)/t on [1, oo).
    """
    a2 = (n - j) ** 2
    terms = [(t.coefficient.to_mpf(40), t.k) for t in heat_trace_terms(n, j)]

    def small(s):
        total = 0
        for c, k in terms:
            z = s - k - mpmath.mpf(1) / 2
            total += c * mpmath.gammainc(z, 0, a2) * mpmath.mpf(a2) ** (-z)
        return mpmath.rgamma(s) * total

    def large(t):
        return sum(c * mpmath.exp(-a2 * t) * t ** (-k - mpmath.mpf(3) / 2) for c, k in terms)

    return mpmath.diff(small, 0) + mpmath.quad(large, [1, mpmath.inf])


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_closed_form_matches_zeta_regularization(n):
    with mpmath.workdps(30):
        for j in range(n):
            ref = _zeta_regularized(n, j)
            got = logdet_closed(n, j).value.to_mpf(30)
            assert mpmath.almosteq(got, ref, rel_eps=mpmath.mpf(10) ** -15)


def test_fr_decomposition_n1():
    dec = fr_decomposition(1, 1)
    assert dec.fr_polys == (ExactPolynomial([0, 0, -1]),)
    assert dec.fr_integrals == (Fraction(-1, 3),)
    assert dec.total == Fraction(-1, 3)


def test_fr_decomposition_n2_a2():
    dec = fr_decomposition(2, 2)
    assert dec.fr_polys[0] == ExactPolynomial([0, 0, 1, 0, -1])
    # -(t+1)^2 t (t+2)
    assert dec.fr_polys[1] == ExactPolynomial([0, -2, -5, -4, -1])
    assert dec.fr_integrals == (Fraction(2, 15), Fraction(-58, 15))
    assert dec.total == Fraction(56, 15)
    assert dec.total == (-1) ** 3 * sum(dec.fr_integrals)
    assert abs(dec.fr_integrals[1]) > abs(dec.fr_integrals[0])


@pytest.mark.parametrize("n, a", [(0, 1), (3, 0), (3, 4)])
def test_fr_decomposition_rejects(n, a):
    with pytest.raises((InvalidShift, InvalidDegree)):
        fr_decomposition(n, a)


def test_fast_fr_matches_bookkeeping():
    for n in range(1, 13):
        for a in range(1, n + 1):
            for r in range(a):
                assert fr_polynomial(n, a, r) == fr_polynomial_bookkeeping(n, a, r)


def test_fr_pieces_reassemble_integrand():
    # f_r(t) = (-1)^(n+1) * integrand(t + r)
    for n in range(1, 8):
        for a in range(1, n + 1):
            integrand = integrand_polynomial(n, a)
            for r in range(a):
                f = fr_polynomial(n, a, r)
                for t in (Fraction(1, 7), Fraction(1, 2), Fraction(5, 6)):
                    assert f(t) == (-1) ** (n + 1) * integrand(t + r)


@pytest.mark.parametrize("n", [1, 2, 5, 9])
def test_verify_sign_lemma_passes(n):
    report = verify_sign_lemma(n)
    assert report.passed, report.lines()
    assert report.exit_code == 0
    ids = {c.check_id for c in report.checks}
    assert {"signs.dual_path", "signs.sign", "signs.fr_identity",
            "signs.fr_monotone", "signs.fr_pointwise"} <= ids


def test_sign_pattern_n2():
    assert (logdet_closed(2, 0).sign, logdet_closed(2, 1).sign) == (-1, 1)


def test_sign_lemma_report_records_are_machine_readable():
    records = verify_sign_lemma(2).to_records()
    assert records
    for rec in records:
        assert set(rec) == {"check_id", "parameters", "pass", "status", "witness"}
        assert rec["pass"] is True and rec["status"] == Status.PASS.value
