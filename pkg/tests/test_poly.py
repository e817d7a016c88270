from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from moduli_roots.poly import T, BiPoly, IntPoly, NotDivisible, RatPoly, as_intpoly

ints = st.lists(st.integers(-50, 50), max_size=6)
rats = st.fractions(min_value=-10, max_value=10, max_denominator=12)
int_polys = ints.map(IntPoly)
rat_polys = st.lists(rats, max_size=5).map(RatPoly)
bi_polys = st.lists(st.lists(st.integers(-9, 9), max_size=4), max_size=4).map(BiPoly)


@given(int_polys, int_polys, int_polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == IntPoly()
    assert a * IntPoly([1]) == a


@given(int_polys, int_polys, rats)
def test_evaluation_is_a_ring_morphism(a, b, x):
    assert (a + b)(x) == a(x) + b(x)
    assert (a * b)(x) == a(x) * b(x)


@given(int_polys, rats)
def test_sign_at_matches_evaluation(a, x):
    v = a(x)
    assert a.sign_at(x) == (v > 0) - (v < 0)


@given(rat_polys, rat_polys)
def test_divmod_reconstructs(a, b):
    if not b:
        return
    q, r = a.divmod(b)
    assert q * b + r == a
    assert r.degree < b.degree


@given(int_polys, int_polys)
def test_exact_div_round_trip(a, b):
    if not b:
        return
    assert (a * b).exact_div(b) == a


@given(int_polys, int_polys)
def test_degree_of_product(a, b):
    if a and b:
        assert (a * b).degree == a.degree + b.degree
    else:
        assert (a * b).degree == -1


@given(int_polys, int_polys)
def test_derivative_leibniz(a, b):
    assert (a * b).derivative() == a.derivative() * b + a * b.derivative()


@given(int_polys)
def test_json_round_trip(a):
    assert IntPoly.from_json(a.to_json()) == a


@given(rat_polys)
def test_clear_denominators(a):
    c = a.clear_denominators()
    assert isinstance(c, IntPoly)
    if a:
        ratio = Fraction(c.lc) / a.lc
        assert ratio > 0
        assert RatPoly([x * ratio for x in a.coeffs]) == c


def test_trailing_zeros_stripped():
    assert IntPoly([1, 2, 0, 0]).coeffs == (1, 2)
    assert IntPoly([0, 0]).degree == -1
    assert IntPoly([0, 0]) == IntPoly()


def test_exact_div_failure():
    with pytest.raises(NotDivisible):
        IntPoly([1, 0, 1]).exact_div(IntPoly([1, 1]))
    with pytest.raises(NotDivisible):
        IntPoly([1, 2]).exact_div(2)
    with pytest.raises(ZeroDivisionError):
        IntPoly([1]).divmod(IntPoly())


def test_exact_div_keeps_integers():
    q = IntPoly([1, 2, 1]).exact_div(IntPoly([1, 1]))
    assert isinstance(q, IntPoly) and q == IntPoly([1, 1])


def test_intpoly_rejects_fractions():
    with pytest.raises((TypeError, ValueError)):
        IntPoly([Fraction(1, 2)])
    with pytest.raises(ValueError):
        RatPoly([Fraction(1, 2)]).to_intpoly()


def test_pretty_and_content():
    assert IntPoly([1, 5, 1]).pretty() == "1+5t+t^2"
    assert IntPoly([4, 6]).content() == 2
    assert IntPoly([-4, 6]).primitive() == IntPoly([-2, 3])
    assert T * T == IntPoly([0, 0, 1])


def test_as_intpoly():
    assert as_intpoly(RatPoly([Fraction(1, 2), 1])) == IntPoly([1, 2])
    assert as_intpoly(IntPoly([3])) == IntPoly([3])


@given(bi_polys, bi_polys, st.integers(-5, 5), st.integers(-5, 5))
def test_bipoly_morphism(a, b, y0, t0):
    assert (a * b)(y0, t0) == a(y0, t0) * b(y0, t0)
    assert (a + b)(y0, t0) == a(y0, t0) + b(y0, t0)
    assert a.eval_t(t0)(y0) == a(y0, t0)
    assert a.eval_y(y0)(t0) == a(y0, t0)


@given(bi_polys)
def test_bipoly_json_round_trip(a):
    assert BiPoly.from_json(a.to_json()) == a


@settings(max_examples=50)
@given(bi_polys, bi_polys)
def test_bipoly_derivatives(a, b):
    assert (a * b).derivative_y() == a.derivative_y() * b + a * b.derivative_y()
    assert (a * b).derivative_t() == a.derivative_t() * b + a * b.derivative_t()


def test_bipoly_division_by_t_factor():
    f = BiPoly([[1, 2], [0, 3]])
    g = f * IntPoly([1, 1])
    assert g.exact_div_t(IntPoly([1, 1])) == f
    with pytest.raises(NotDivisible):
        f.exact_div_t(IntPoly([1, 1]))
    assert (f * 6).exact_div_int(3) == f * 2
