import json
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from moduli_roots.poly import IntPoly
from moduli_roots.recurrences import compute_p, compute_phat, compute_ptilde, compute_s
from moduli_roots import verify as V

T_SAMPLES = (Fraction(-1, 3), Fraction(-1), Fraction(-5, 2), Fraction(-7), Fraction(-49))


def test_verdict_requires_witness_on_failure():
    with pytest.raises(ValueError):
        V.Verdict("x", 1, False)
    v = V.Verdict("x", 1, True, millis=1.23456)
    assert v.to_json() == {"claim": "x", "index": 1, "pass": True, "millis": 1.235}
    assert "millis" not in v.to_json(timing=False)


def test_verdict_json_round_trip():
    v = V.verify_real_rooted(compute_ptilde(2), 2)
    back = V.Verdict.from_json(json.loads(json.dumps(v.to_json())))
    assert back.claim == v.claim and back.passed == v.passed and back.witness == v.witness


def test_real_rooted_examples():
    assert V.verify_real_rooted(compute_p(6), 3).passed
    bad = V.verify_real_rooted(compute_ptilde(2), 2)
    assert not bad.passed and bad.witness["reason"] == "not square-free"
    assert V.verify_real_rooted(compute_phat(2), 1).passed
    assert not V.verify_real_rooted(IntPoly([1, 0, 1]), 2).passed
    assert not V.verify_real_rooted(IntPoly([-1, 1]), 1).passed  # positive root


def test_main_theorem_small():
    for n in range(4, 16):
        assert V.verify_main_theorem(n).passed


def test_interlacing_small():
    assert V.verify_interlacing(3).passed
    for n in range(4, 10):
        assert V.verify_interlacing(n).passed
    with pytest.raises(ValueError):
        V.verify_interlacing(2)


def test_rulc_examples():
    rep = V.verify_rulc([1, 16, 16, 1], 1)
    assert rep.passed and rep.margins[0] == Fraction(16, 3) ** 2 - Fraction(16, 3)
    assert V.verify_rulc([1, 42, 127, 42, 1], 2).passed
    flat = V.verify_rulc([1, 1, 1], 0)
    assert flat.passed and flat.margins == [0]
    bad = V.verify_rulc([1, 1, 5], 0)
    assert not bad.passed and bad.first_failure == 1
    assert not bad.to_verdict().passed
    with pytest.raises(ValueError):
        V.verify_rulc([1, 0, 1], 0)


@given(st.lists(st.integers(1, 500), min_size=3, max_size=8), st.integers(1, 4))
def test_rulc_monotone_in_r(seq, r):
    if V.verify_rulc(seq, r).passed:
        assert all(V.verify_rulc(seq, k).passed for k in range(r))


def test_newton_inequalities_for_real_rooted():
    # real-rooted with positive coefficients implies 1-ULC
    for roots in ([1, 2, 3], [1, 1, 4, 9], [2, 3, 5, 7, 11]):
        p = IntPoly([1])
        for r in roots:
            p = p * IntPoly([r, 1])
        assert V.verify_rulc(p.coeffs, 1).passed


def test_ulc_statuses_monotone_on_p():
    for n in range(4, 26):
        status = V.ulc_status(n, (0, 1, 2, 3, 4))
        passing = [r for r, ok in status.items() if ok]
        assert passing == list(range(len(passing)))


def test_palindrome_unimodal():
    assert V.verify_palindrome_unimodal([1, 16, 16, 1]).passed
    assert V.verify_palindrome_unimodal([1, 2, 1]).passed
    bad = V.verify_palindrome_unimodal([1, 3, 2])
    assert not bad.passed and bad.witness["reason"] == "not palindromic"
    assert not V.verify_palindrome_unimodal([2, 1, 3, 1, 2]).passed
    for n in range(3, 20):
        assert V.verify_palindrome_unimodal(compute_p(n).coeffs).passed


def test_root_location_examples():
    assert V.verify_root_location(4, -1).passed
    assert V.verify_root_location(2, Fraction(-1, 2)).passed
    v = V.verify_root_location(6, -3)
    assert v.passed
    for m in range(2, 10):
        for t0 in T_SAMPLES:
            assert V.verify_root_location(m, t0).passed
    with pytest.raises(ValueError):
        V.verify_root_location(4, 1)


def test_fhat_location_examples():
    assert V.verify_fhat_root_location(2, -1).passed
    assert V.verify_fhat_root_location(2, Fraction(-1, 2)).passed
    assert V.verify_fhat_root_location(3, -2).passed
    for n in range(2, 10):
        for t0 in T_SAMPLES:
            assert V.verify_fhat_root_location(n, t0).passed


def test_sign_alternation():
    for n in range(4, 12):
        v = V.verify_sign_alternation(n)
        assert v.passed, v.witness
    # n = 4: P_5(tau) = tau S_5(tau) with S_5 = 3
    assert compute_s(5) == IntPoly([3])


def test_sign_alternation_numeric_oracle():
    # P_6 at the roots of P_5 reads (+, -) left to right
    roots = np.sort(np.roots([1, 5, 1]).real)
    vals = [float(compute_p(6)(Fraction(r))) for r in roots]
    assert vals[0] > 0 > vals[1]


def test_fm_theorem():
    for n in range(1, 15):
        assert V.verify_fm_theorem(n).passed
        assert compute_ptilde(n)(-1) == 0


def test_g_k_roots():
    for m in range(2, 13):
        assert V.verify_g_roots(m).passed
        assert V.verify_k_roots(m).passed
