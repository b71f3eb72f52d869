import math
from fractions import Fraction

import mpmath
import pytest
import sympy
from hypothesis import given, strategies as st

from ngon_mod2.number_field import (
    QuadExtElement,
    cyclotomic,
    expand_chebyshev_identity,
    field,
    is_rational,
    min_poly,
    prime_coefficient_check,
    sign,
    totient,
)

ODD = list(range(3, 32, 2))
PRIMES = [7, 11, 13, 17, 19, 23, 29, 31]


def sympy_coeffs(expr, x):
    return tuple(int(c) for c in reversed(sympy.Poly(expr, x).all_coeffs()))


# -- cyclotomic polynomials and the minimal polynomial


def test_cyclotomic_examples():
    assert cyclotomic(1) == (-1, 1)
    assert cyclotomic(14) == (1, -1, 1, -1, 1, -1, 1)
    assert cyclotomic(18) == (1, 0, 0, -1, 0, 0, 1)


@pytest.mark.parametrize("m", range(1, 61))
def test_cyclotomic_against_sympy(m):
    x = sympy.Symbol("x")
    assert cyclotomic(m) == sympy_coeffs(sympy.cyclotomic_poly(m, x), x)


def test_min_poly_examples():
    assert min_poly(7) == (1, -2, -1, 1)
    assert min_poly(5) == (-1, -1, 1)
    assert min_poly(9) == (-1, -3, 0, 1)


@pytest.mark.parametrize("n", [3, 5, 7, 9, 11, 13, 15])
def test_min_poly_against_sympy(n):
    x = sympy.Symbol("x")
    oracle = sympy.minimal_polynomial(2 * sympy.cos(sympy.pi / n), x)
    assert min_poly(n) == sympy_coeffs(oracle, x)


@pytest.mark.parametrize("n", ODD)
def test_min_poly_identity_and_degree(n):
    p = min_poly(n)
    assert len(p) - 1 == totient(2 * n) // 2
    assert p[-1] == 1
    assert expand_chebyshev_identity(p) == cyclotomic(2 * n)


@pytest.mark.parametrize("n", [19, 25, 31, 45])
def test_min_poly_root_numerically(n):
    mpmath.mp.dps = 60
    lam = 2 * mpmath.cos(mpmath.pi / n)
    val = sum(c * lam**k for k, c in enumerate(min_poly(n)))
    assert abs(val) < mpmath.mpf(10) ** -40


def test_min_poly_rejects_even():
    with pytest.raises(ValueError):
        min_poly(8)


@pytest.mark.parametrize("p", [5] + PRIMES)
def test_prime_coefficient_check(p):
    assert prime_coefficient_check(p)


def test_prime_coefficient_check_fails_for_composite_degree():
    # the degree drops below (n-1)/2 when n is not prime
    assert not prime_coefficient_check(9)
    assert not prime_coefficient_check(15)


# -- arithmetic


def test_arithmetic_examples():
    F = field(7)
    lam = F.lam
    assert lam * lam.inverse() == 1
    assert lam**3 == F.element([-1, 2, 1])
    assert F.s * F.s == QuadExtElement((4 - lam * lam) / 4, F.zero)


def test_division_by_zero():
    F = field(7)
    with pytest.raises(ZeroDivisionError):
        F.one / F.zero
    with pytest.raises(ZeroDivisionError):
        F.s / F.quad(0)


def test_elements_are_reduced_and_in_lowest_terms():
    F = field(7)
    x = F.element([Fraction(2, 4), 0, 0, 0, 1])  # lambda^4 gets reduced
    assert len(x.num) == F.d
    assert math.gcd(x.den, *x.num) == 1


coeff = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def elements(n):
    d = field(n).d
    return st.lists(coeff, min_size=d, max_size=d).map(field(n).element)


@given(elements(7), elements(7), elements(7))
def test_field_axioms_n7(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    if not b.is_zero():
        assert (a / b) * b == a


@given(elements(11))
def test_inverse_n11(a):
    if not a.is_zero():
        assert a * a.inverse() == 1


@given(elements(9), elements(9), elements(9), elements(9))
def test_quadratic_extension_inverse(a, b, c, d):
    F = field(9)
    x, y = F.quad(a, b), F.quad(c, d)
    if not y.is_zero():
        assert (x / y) * y == x
    assert x * y == y * x


# -- Chebyshev values


def test_cheb_examples():
    for n in (5, 7, 11):
        F = field(n)
        assert F.cheb_c(0) == 2
        assert F.cheb_c(1) == F.lam
        assert F.cheb_c(n) == -2
        assert F.cheb_s(n) == 0


@pytest.mark.parametrize("n", [5, 7, 9, 11, 13])
def test_cheb_product_to_sum(n):
    F = field(n)
    for k in range(1, 2 * n + 1):
        assert F.cheb_c(k) * F.cheb_c(1) == F.cheb_c(k + 1) + F.cheb_c(k - 1)


@pytest.mark.parametrize("n", [7, 15, 21])
def test_cheb_interval_contains_float_target(n):
    F = field(n)
    for k in range(2 * n + 1):
        c = F.cheb_c(k)
        lo, hi = F.interval([x * 1 for x in c.num], None, 128)
        target = 2 * math.cos(k * math.pi / n)
        assert lo / c.den / 2**128 - 1e-12 <= target <= hi / c.den / 2**128 + 1e-12
        s = F.cheb_s(k)
        lo, hi = F.interval(s.num, None, 128)
        target = math.sin(k * math.pi / n) / math.sin(math.pi / n)
        assert lo / s.den / 2**128 - 1e-12 <= target <= hi / s.den / 2**128 + 1e-12


# -- sign


def test_sign_examples():
    F = field(7)
    assert sign(F.quad(0)) == 0
    for n in (5, 7, 31):
        assert sign(field(n).lam - 1) == 1
    assert sign(field(3).lam - 1) == 0  # 2cos(pi/3) = 1 exactly
    # 1 + L - L^2 at L = 1.80194 is about -0.445
    assert sign(1 + F.lam - F.lam * F.lam) == -1


def test_sign_near_cancellation():
    # s*b close to -a: only a high-precision enclosure separates them
    F = field(7)
    approx = Fraction(mpmath.mpf(mpmath.sin(mpmath.pi / 7)).__float__()).limit_denominator(10**15)
    x = F.quad(F.from_int(-approx), F.one)
    mpmath.mp.dps = 50
    truth = mpmath.sin(mpmath.pi / 7) - mpmath.mpf(approx.numerator) / approx.denominator
    assert sign(x) == (1 if truth > 0 else -1)


@given(elements(7), elements(7))
def test_sign_matches_mpmath(a, b):
    F = field(7)
    mpmath.mp.dps = 80
    lam = 2 * mpmath.cos(mpmath.pi / 7)
    s = mpmath.sin(mpmath.pi / 7)
    val = sum(mpmath.mpf(c.numerator) / c.denominator * lam**k for k, c in enumerate(a.coeffs))
    val += s * sum(mpmath.mpf(c.numerator) / c.denominator * lam**k for k, c in enumerate(b.coeffs))
    x = F.quad(a, b)
    if x.is_zero():
        assert sign(x) == 0
    else:
        assert sign(x) == (1 if val > 0 else -1)


@given(elements(11), elements(11), elements(11))
def test_sign_is_a_total_order(x, y, z):
    if (x - y).sign() > 0 and (y - z).sign() > 0:
        assert (x - z).sign() > 0
    assert (x - y).sign() == -(y - x).sign()


@given(elements(13))
def test_floor(x):
    k = x.floor()
    assert x - k >= 0
    assert x - (k + 1) < 0


def test_is_rational():
    F = field(7)
    assert is_rational(F.from_int(Fraction(3, 2)))
    assert not is_rational(F.lam)
    lam = F.lam
    assert is_rational(lam * lam - lam - lam * lam + lam + 5)
