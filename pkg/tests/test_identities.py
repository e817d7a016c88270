from math import comb, factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from moduli_roots import identities as I
from moduli_roots.poly import BiPoly, IntPoly
from moduli_roots.recurrences import compute_fhat, compute_p, compute_s

ZERO = IntPoly()
int_series = st.lists(st.integers(-9, 9), min_size=5, max_size=5).map(
    lambda cs: I.TruncSeries([IntPoly([c]) for c in cs], ZERO))


def test_series_from_p_layout():
    u = I.series_from_p(4)
    assert u[1] == ZERO and u[2] == IntPoly([1]) and u[3] == IntPoly([1, 1])
    assert u[4] == IntPoly([1, 5, 1])
    low = I.series_from_p(2)
    assert low.order == 2 and low[2] == IntPoly([1])
    with pytest.raises(ValueError):
        I.series_from_p(1)


def test_egf_product_is_binomial():
    # e^x * e^x = e^{2x}: coefficients 2^k
    one = IntPoly([1])
    e = I.TruncSeries([one] * 8, ZERO)
    sq = e * e
    assert [sq[k] for k in range(8)] == [IntPoly([2 ** k]) for k in range(8)]


@given(int_series, int_series, int_series)
def test_series_ring(a, b, c):
    assert (a * b).first_mismatch(b * a) is None
    assert ((a * b) * c).first_mismatch(a * (b * c)) is None
    assert (a * (b + c)).first_mismatch(a * b + a * c) is None


@given(int_series, int_series)
def test_series_leibniz(a, b):
    lhs = (a * b).d()
    rhs = a.d() * b.truncate(3) + a.truncate(3) * b.d()
    assert lhs.first_mismatch(rhs) is None


def test_uode_and_conventions():
    for order in (3, 4, 6, 15):
        assert I.verify_uode(order).passed
    assert I.verify_convolution_convention(15).passed
    assert I.verify_phi_y_slice(15).passed


def test_ordinary_product_would_be_caught():
    # the S cross-check distinguishes exponential from ordinary convolution
    u = I.series_from_p(8)
    du = u.d()
    n = 4
    ordinary = sum((u[i] * du[n - i] for i in range(n + 1)), ZERO)
    assert ordinary != compute_s(n + 2)
    binomial = sum((comb(n, i) * (u[i] * du[n - i]) for i in range(n + 1)), ZERO)
    assert binomial == compute_s(n + 2)


def test_phi_pde():
    for order in (2, 3, 5, 15):
        assert I.verify_phi_pde(order).passed


def test_slice_slope():
    for m in range(1, 16):
        assert I.verify_slice_slope(m).passed


def test_getzler():
    xw = I.getzler_x_of_w(6)
    assert xw[1] == IntPoly([1])
    for order in (2, 4, 6, 10):
        assert I.verify_getzler_param(order).passed
    phi = I._invert(I.getzler_x_of_w(4))
    assert phi[2] == compute_p(3) and phi[4] == compute_p(5)


def test_invert_rejects_degenerate():
    with pytest.raises(I.NonInvertibleSeries):
        I._invert(I.TruncSeries([ZERO, ZERO, IntPoly([1])], ZERO))


def test_exp_log_inverse():
    # exp(log(1+w)) = 1 + w
    e = I._exp_series(I._log1p_series(8))
    assert [e[k] for k in range(9)] == [IntPoly([1]), IntPoly([1])] + [ZERO] * 7


def test_psi_power():
    ft = I.ftilde_series(3)
    assert ft[1] == BiPoly([IntPoly([1, 1])])
    assert ft[2] == BiPoly([IntPoly([1, 1])]) * compute_fhat(2)
    assert ft[2].eval_y(1).to_intpoly() == IntPoly([1, 2, 1])
    assert compute_fhat(1) == BiPoly.const(1)
    for order in (1, 3, 12):
        assert I.verify_psi_power(order).passed


def test_weight_specs():
    s = I.weight_spec("F", 2)
    # alpha*a = m-1 = 1, beta*a = 1 - 2t
    assert s.alpha_times_a == IntPoly([1]) and s.beta_times_a == IntPoly([1, -2])
    s = I.weight_spec("Fhat", 3)
    assert s.alpha_times_a == I.A_POLY + 1
    with pytest.raises(ValueError):
        I.weight_spec("G", 1)


def test_weight_identities():
    for fam in ("F", "Fhat"):
        for k in range(1, 13):
            v = I.verify_weight_identity(fam, k)
            assert v.passed, (fam, k, v.witness)


def test_wrong_weight_detected(monkeypatch):
    real = I.weight_spec

    def skewed(family, index):
        s = real(family, index)
        return I.WeightSpec(family, index, s.alpha_times_a + 1, s.beta_times_a)

    monkeypatch.setattr(I, "weight_spec", skewed)
    assert not I.verify_weight_identity("F", 4).passed


def test_g_limit_identity():
    for m in range(1, 13):
        assert I.verify_g_limit_identity(m).passed


def test_order_extension_stability():
    small = I.series_phi(6)
    big = I.series_phi(10)
    assert big.truncate(6).first_mismatch(small) is None
    assert I.ftilde_series(10).truncate(5).first_mismatch(I.ftilde_series(5)) is None


def test_full_suite_passes():
    verdicts = I.identity_suite()
    assert verdicts and all(v.passed for v in verdicts)
