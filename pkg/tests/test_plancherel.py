import math
from fractions import Fraction

import mpmath
import pytest

from l2torsion.errors import InvalidDegree, NonPositiveTime
from l2torsion.exact_arith import PiMonomial, int_poly_mul
from l2torsion.plancherel import (
    DensityCoefficients,
    density_polynomial,
    density_polynomial_by_division,
    gamma_half_integer,
    heat_prefactor,
    heat_trace_numeric,
    heat_trace_quadrature,
    heat_trace_terms,
)


@pytest.mark.parametrize("n, j, K", [
    (1, 0, (0, 1)),
    (2, 1, (0, 4, 1)),
    (3, 0, (0, 4, 5, 1)),
])
def test_density_examples(n, j, K):
    dens = density_polynomial(n, j)
    assert dens.K == K
    assert dens.a == n - j


@pytest.mark.parametrize("n, j", [(0, 0), (2, 2), (2, -1), (3, 5)])
def test_density_rejects_bad_degree(n, j):
    with pytest.raises(InvalidDegree):
        density_polynomial(n, j)


def test_density_coefficients_validate():
    with pytest.raises(ValueError):
        DensityCoefficients(2, 1, 1, (1, 4, 1))
    with pytest.raises(ValueError):
        DensityCoefficients(2, 1, 1, (0, 4))


def _full_product_in_y(n):
    """prod_{i=0..n} (y + i^2) by plain convolution."""
    out = [1]
    for i in range(n + 1):
        out = int_poly_mul(out, [i * i, 1])
    return out


def test_reconstruction_identity_up_to_n_125():
    for n in range(1, 126):
        full = _full_product_in_y(n)
        for j in range(n):
            dens = density_polynomial(n, j)
            assert int_poly_mul(list(dens.K), [dens.a ** 2, 1]) == full
            assert all(isinstance(c, int) and c >= 0 for c in dens.K)
            assert dens.K[0] == 0 and dens.K[-1] == 1


def test_cancellation_agrees_with_division():
    for n in range(1, 41):
        for j in range(n):
            assert density_polynomial_by_division(n, j) == density_polynomial(n, j)


def test_cancelled_factor_order_is_irrelevant():
    # multiplying the surviving factors in reverse order gives the same K
    for n in range(1, 15):
        for j in range(n):
            a = n - j
            out = [0, 1]
            for i in range(n, 0, -1):
                if i != a:
                    out = int_poly_mul(out, [i * i, 1])
            assert tuple(out) == density_polynomial(n, j).K


@pytest.mark.parametrize("m", range(-6, 11))
def test_gamma_half_integer(m):
    with mpmath.workdps(40):
        assert mpmath.almosteq(gamma_half_integer(m).to_mpf(40), mpmath.gamma(m + mpmath.mpf(1) / 2),
                               rel_eps=mpmath.mpf(10) ** -35)


@pytest.mark.parametrize("n", range(1, 12))
def test_heat_prefactor_matches_definition(n):
    with mpmath.workdps(40):
        direct = (4 * mpmath.pi) ** -(n + mpmath.mpf(1) / 2) / mpmath.gamma(n + mpmath.mpf(1) / 2)
        assert mpmath.almosteq(heat_prefactor(n).to_mpf(40), direct, rel_eps=mpmath.mpf(10) ** -35)


def test_heat_trace_terms_n1():
    # C = 1/(4 pi^2), binom(2, 0) = 1, K[1] = 1, Gamma(3/2) = sqrt(pi)/2
    (term,) = heat_trace_terms(1, 0)
    assert term.k == 1
    assert term.coefficient == PiMonomial(Fraction(1, 8), -3)
    assert term.decay == 1
    assert term.power == Fraction(-3, 2)


def test_heat_trace_terms_skip_zero_coefficients():
    terms = heat_trace_terms(2, 1)
    assert [t.k for t in terms] == [1, 2]
    for n in range(1, 8):
        for j in range(n):
            terms = heat_trace_terms(n, j)
            assert all(t.k > 0 for t in terms)
            assert len(terms) == sum(1 for c in density_polynomial(n, j).K if c)
            assert all(t.coefficient.half_power == -2 * n - 1 for t in terms)


def test_heat_trace_numeric_n1_closed_value():
    # e^-1 Gamma(3/2) / (4 pi^2) at t = 1
    with mpmath.workdps(40):
        expected = mpmath.exp(-1) * mpmath.sqrt(mpmath.pi) / (8 * mpmath.pi ** 2)
        assert mpmath.almosteq(heat_trace_numeric(1, 0, 1), expected, rel_eps=mpmath.mpf(10) ** -25)


def test_heat_trace_numeric_against_mpmath_quad():
    # direct infinite-range integral with mpmath, independent of both code paths
    with mpmath.workdps(30):
        for n, j, t in [(1, 0, 1), (2, 0, 1), (3, 1, Fraction(1, 4))]:
            a = n - j
            t = Fraction(t)
            tt = mpmath.mpf(t.numerator) / t.denominator
            const = ((4 * mpmath.pi) ** -(n + mpmath.mpf(1) / 2) / mpmath.gamma(n + mpmath.mpf(1) / 2)
                     * math.comb(2 * n, j))

            def f(nu):
                prod = mpmath.fprod(nu ** 2 + i ** 2 for i in range(n + 1) if i != a)
                return mpmath.exp(-tt * (nu ** 2 + a * a)) * prod

            ref = const * mpmath.quad(f, [-mpmath.inf, 0, mpmath.inf])
            assert mpmath.almosteq(heat_trace_numeric(n, j, t), ref, rel_eps=mpmath.mpf(10) ** -20)


@pytest.mark.parametrize("n, j, t", [(1, 0, 1), (2, 0, 1), (2, 1, Fraction(1, 4)), (5, 2, 4)])
def test_heat_trace_matches_quadrature(n, j, t):
    exact = float(heat_trace_numeric(n, j, t))
    assert abs(exact - heat_trace_quadrature(n, j, t)) <= 1e-9 * exact


def test_heat_trace_positive_and_decaying():
    values = [heat_trace_numeric(3, 1, Fraction(k)) for k in range(1, 30)]
    assert all(v > 0 for v in values)
    assert all(b < a for a, b in zip(values, values[1:]))
    assert values[-1] < 1e-20


def test_heat_trace_rejects_nonpositive_time():
    with pytest.raises(NonPositiveTime):
        heat_trace_numeric(2, 0, 0)
    with pytest.raises(NonPositiveTime):
        heat_trace_quadrature(2, 0, Fraction(-1, 2))
    with pytest.raises(InvalidDegree):
        heat_trace_numeric(2, 2, 1)
