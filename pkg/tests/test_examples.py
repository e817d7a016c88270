"""Worked examples for the arithmetic and recurrence layers."""

from fractions import Fraction

import pytest

from moduli_roots.poly import BiPoly, IntPoly, NotDivisible
from moduli_roots import recurrences as rec

P4, P5, P6 = IntPoly([1, 1]), IntPoly([1, 5, 1]), IntPoly([1, 16, 16, 1])


def test_add_mul_derivative():
    assert P4 + IntPoly([-1, -1]) == IntPoly()
    assert P5 + 3 == IntPoly([4, 5, 1])
    assert IntPoly() + P6 == P6
    assert P4 * P4 == IntPoly([1, 2, 1])
    assert P4 * IntPoly() == IntPoly()
    assert P5 * P4 == IntPoly([1, 6, 6, 1])
    assert P5.derivative() == IntPoly([5, 2])
    assert IntPoly([7]).derivative() == IntPoly()
    assert IntPoly([0, 0, 0, 1]).derivative() == IntPoly([0, 0, 3])


def test_eval():
    assert P5(0) == 1
    assert P4(-1) == 0
    assert P6(-1) == 0  # the listed value -2 is a slip; see the decisions ledger
    assert P5(Fraction(1, 2)) == Fraction(1) + Fraction(5, 2) + Fraction(1, 4)


def test_exact_div():
    assert IntPoly([1, 2, 1]).exact_div(P4) == P4
    assert P4.exact_div(IntPoly([1])) == P4
    with pytest.raises(NotDivisible):
        P5.exact_div(P4)


def test_bivariate_slices():
    f3 = rec.compute_f(3)
    assert f3.eval_y(1).to_intpoly() == P4
    assert rec.compute_f(2).eval_t(-1).to_intpoly() == IntPoly([0, 1])
    assert rec.compute_f(4).eval_t(-1).to_intpoly() == IntPoly([0, 12, -30, 15])


def test_recurrence_examples():
    assert rec.compute_p(2) == IntPoly([1])
    assert rec.compute_s(4) == IntPoly()
    assert rec.compute_s(5) == IntPoly([3])
    assert rec.compute_s(7) == 15 * P5 + 10 * (P4 * P4)
    assert rec.compute_g(1) == IntPoly([1]) and rec.compute_g(2) == IntPoly([0, 1])
    assert rec.compute_k(1) == IntPoly([1])
    assert rec.compute_k(2) == IntPoly([1, 1])
    assert rec.compute_k(3) == IntPoly([1, 4, 3])
    assert rec.compute_ptilde(3).exact_div(rec.ONE_PLUS_T).degree == 2
    assert rec.compute_fhat(1) == BiPoly.const(1)
    assert rec.compute_fhat(2).eval_y(1).to_intpoly() == P4
    assert rec.compute_hscaled(2) == BiPoly([[], [1]])
    assert rec.compute_hscaled(4).eval_t(0).to_intpoly() == rec.compute_g(4)


def test_ptilde_palindromic():
    for n in range(1, 18):
        cs = rec.compute_ptilde(n).coeffs
        assert cs == cs[::-1]
