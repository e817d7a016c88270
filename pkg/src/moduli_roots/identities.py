"""Truncated exponential generating functions and the identity checks built on them.

A :class:`TruncSeries` stores c_0..c_N where the series is sum_k c_k x^k / k!.
Products are binomial convolutions, differentiation is a left shift, and
multiplication by x is c_k -> k c_{k-1}. Coefficients are IntPoly (in t) or
BiPoly (in y over Z[t]); anything supporting +, -, * and int scaling works.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, factorial
from typing import Callable

from .poly import ONE, T, BiPoly, IntPoly, NotDivisible
from .recurrences import (
    ONE_PLUS_T,
    compute_f,
    compute_fhat,
    compute_g,
    compute_p,
    compute_ptilde,
    compute_s,
)
from .verify import Verdict, _Clock


class NonInvertibleSeries(ArithmeticError):
    pass


class TruncSeries:
    __slots__ = ("coeffs", "zero")

    def __init__(self, coeffs, zero):
        self.coeffs = list(coeffs)
        self.zero = zero

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def x(cls, order: int, zero, one) -> "TruncSeries":
        cs = [zero] * (order + 1)
        if order >= 1:
            cs[1] = one
        return cls(cs, zero)

    @classmethod
    def constant(cls, c, order: int, zero) -> "TruncSeries":
        return cls([c] + [zero] * order, zero)

    def __getitem__(self, k):
        return self.coeffs[k]

    def truncate(self, order: int) -> "TruncSeries":
        return TruncSeries(self.coeffs[: order + 1], self.zero)

    def _pair(self, other: "TruncSeries"):
        n = min(self.order, other.order)
        return self.coeffs[: n + 1], other.coeffs[: n + 1]

    def __add__(self, other):
        a, b = self._pair(other)
        return TruncSeries([x + y for x, y in zip(a, b)], self.zero)

    def __sub__(self, other):
        a, b = self._pair(other)
        return TruncSeries([x - y for x, y in zip(a, b)], self.zero)

    def __neg__(self):
        return TruncSeries([-c for c in self.coeffs], self.zero)

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            return TruncSeries([c * other for c in self.coeffs], self.zero)
        a, b = self._pair(other)
        out = []
        for n in range(len(a)):
            acc = self.zero
            for k in range(n + 1):
                if a[k] and b[n - k]:
                    acc = acc + comb(n, k) * (a[k] * b[n - k])
            out.append(acc)
        return TruncSeries(out, self.zero)

    def __rmul__(self, scalar):
        return TruncSeries([scalar * c for c in self.coeffs], self.zero)

    def d(self) -> "TruncSeries":
        """d/dx; the order drops by one."""
        return TruncSeries(self.coeffs[1:], self.zero)

    def mul_x(self) -> "TruncSeries":
        return TruncSeries([self.zero] + [k * self.coeffs[k - 1] for k in range(1, len(self.coeffs))], self.zero)

    def map(self, fn: Callable, zero=None) -> "TruncSeries":
        return TruncSeries([fn(c) for c in self.coeffs], self.zero if zero is None else zero)

    def power(self, k: int) -> "TruncSeries":
        out = TruncSeries.constant(_one_like(self.zero), self.order, self.zero)
        for _ in range(k):
            out = out * self
        return out

    def first_mismatch(self, other: "TruncSeries", through: int | None = None) -> int | None:
        a, b = self._pair(other)
        n = len(a) - 1 if through is None else through
        for k in range(n + 1):
            if a[k] != b[k]:
                return k
        return None


def _one_like(zero):
    return BiPoly.const(1) if isinstance(zero, BiPoly) else ONE


def _zero_series(order: int, zero) -> TruncSeries:
    return TruncSeries([zero] * (order + 1), zero)


# -- the concrete series -------------------------------------------------------


def series_from_p(order: int) -> TruncSeries:
    """U = sum_{n>=3} P_n x^{n-1}/(n-1)!, i.e. c_k = P_{k+1} for k >= 2."""
    if order < 2:
        raise ValueError("order must be >= 2")
    cs = [IntPoly(), IntPoly()] + [compute_p(k + 1) for k in range(2, order + 1)]
    return TruncSeries(cs, IntPoly())


def series_phi(order: int) -> TruncSeries:
    """Phi = sum_{m>=1} F_m x^m/m!."""
    return TruncSeries([BiPoly()] + [compute_f(m) for m in range(1, order + 1)], BiPoly())


def _mismatch_verdict(clock: _Clock, claim: str, index, k):
    return clock.verdict(claim, index, k is None, {"first_bad_coefficient": k})


def verify_uode(order: int) -> Verdict:
    """dU/dx - x = (1+t) U + t U dU/dx through x^{order-1}."""
    clock = _Clock()
    if order < 3:
        raise ValueError("order must be >= 3")
    u = series_from_p(order)
    du = u.d()
    x = TruncSeries.x(order - 1, IntPoly(), ONE)
    lhs = du - x
    rhs = u.truncate(order - 1) * ONE_PLUS_T + (u.truncate(order - 1) * du) * T
    return _mismatch_verdict(clock, "U_ode", order, lhs.first_mismatch(rhs))


def verify_convolution_convention(order: int) -> Verdict:
    """Coefficient n of U dU/dx equals S_{n+2}, for 4 <= n+2 <= order."""
    clock = _Clock()
    u = series_from_p(order)
    prod = u.truncate(order - 1) * u.d()
    bad = [n for n in range(2, order - 1) if prod[n] != compute_s(n + 2)]
    return clock.verdict("egf_convolution", order, not bad, {"bad_n": bad})


def verify_phi_pde(order: int) -> Verdict:
    """(1-(y-1)x) dPhi/dx - y(y+t-1) dPhi/dy = 1 + Phi through x^{order-1}."""
    clock = _Clock()
    if order < 2:
        raise ValueError("order must be >= 2")
    phi = series_phi(order)
    dphi = phi.d()
    y_minus_1 = BiPoly([IntPoly([-1]), ONE])
    y_yt1 = BiPoly([IntPoly(), IntPoly([-1, 1]), ONE])
    low = phi.truncate(order - 1)
    lhs = dphi - (dphi.mul_x() * y_minus_1) - low.map(lambda c: y_yt1 * c.derivative_y())
    rhs = TruncSeries.constant(BiPoly.const(1), order - 1, BiPoly()) + low
    return _mismatch_verdict(clock, "Phi_pde", order, lhs.first_mismatch(rhs))


def verify_phi_y_slice(order: int) -> Verdict:
    """dPhi/dy at y=1 equals U + U dU/dx."""
    clock = _Clock()
    phi = series_phi(order)
    left = phi.map(lambda c: c.derivative_y().eval_y(1).to_intpoly(), IntPoly()).truncate(order - 1)
    u = series_from_p(order)
    right = u.truncate(order - 1) + u.truncate(order - 1) * u.d()
    # Phi_1 = x contributes nothing to dPhi/dy; compare from x^1 on
    k = left.first_mismatch(right)
    return _mismatch_verdict(clock, "Phi_y_slice", order, k)


def verify_slice_slope(m: int) -> Verdict:
    """F_m(1,t) = P_{m+1} and, for m >= 2, dF_m/dy(1,t) = P_{m+1} + S_{m+2}."""
    clock = _Clock()
    if m < 1:
        raise ValueError("m must be >= 1")
    f = compute_f(m)
    slice_ok = f.eval_y(1).to_intpoly() == compute_p(m + 1)
    slope_ok = True
    if m >= 2:
        slope_ok = f.derivative_y().eval_y(1).to_intpoly() == compute_p(m + 1) + compute_s(m + 2)
    return clock.verdict("slice_slope", m, slice_ok and slope_ok, {"slice": slice_ok, "slope": slope_ok})


# -- Getzler parametrization ---------------------------------------------------


def _log1p_series(order: int) -> TruncSeries:
    # log(1+w): coefficient of w^k/k! is (-1)^{k-1} (k-1)!
    cs = [IntPoly()] + [IntPoly([(-1) ** (k - 1) * factorial(k - 1)]) for k in range(1, order + 1)]
    return TruncSeries(cs, IntPoly())


def _exp_series(f: TruncSeries) -> TruncSeries:
    """exp(f) for f with zero constant term, via E' = f' E."""
    if f[0]:
        raise ValueError("exp needs a series without constant term")
    e = [ONE]
    for n in range(f.order):
        acc = IntPoly()
        for k in range(n + 1):
            acc = acc + comb(n, k) * (f[k + 1] * e[n - k])
        e.append(acc)
    return TruncSeries(e, IntPoly())


def _compose(outer: TruncSeries, inner: TruncSeries) -> TruncSeries:
    """outer(inner(x)) for inner without constant term."""
    order = min(outer.order, inner.order)
    total = _zero_series(order, IntPoly())
    power = TruncSeries.constant(ONE, order, IntPoly())
    for k in range(order + 1):
        if k:
            power = power * inner
        if outer[k]:
            # inner^k / k! has integral EGF coefficients
            scaled = power.map(lambda c, k=k: c.exact_div(factorial(k)))
            total = total + scaled * outer[k]
    return total


def _invert(series: TruncSeries) -> TruncSeries:
    """Compositional inverse of a series x + O(x^2)."""
    if not series[1]:
        raise NonInvertibleSeries("linear coefficient vanishes")
    if series[1] != ONE:
        raise NonInvertibleSeries(f"linear coefficient {series[1]} is not 1")
    order = series.order
    x = TruncSeries.x(order, IntPoly(), ONE)
    w = x
    for _ in range(order):
        w = x - (_compose(series, w) - w)
    return w


def getzler_x_of_w(order: int) -> TruncSeries:
    """x = (t^2 w - (1+w)^t + 1) / (t(t-1)) as an EGF in w over Z[t].

    (1+w)^t is expanded as exp(t log(1+w)); the division by t(t-1) is exact
    coefficientwise, which is checked.
    """
    power = _exp_series(_log1p_series(order) * T)
    numer = TruncSeries.x(order, IntPoly(), T * T) - power + TruncSeries.constant(ONE, order, IntPoly())
    denom = IntPoly([0, -1, 1])
    return numer.map(lambda c: c.exact_div(denom))


def verify_getzler_param(order: int) -> Verdict:
    """Inverting the Getzler parametrization gives phi = x + U through x^order."""
    clock = _Clock()
    if order < 2:
        raise ValueError("order must be >= 2")
    try:
        xw = getzler_x_of_w(order)
    except NotDivisible as exc:
        return clock.verdict("getzler_param", order, False, {"reason": f"t(t-1) does not divide: {exc}"})
    phi = _invert(xw)
    expected = series_from_p(order) + TruncSeries.x(order, IntPoly(), ONE)
    return _mismatch_verdict(clock, "getzler_param", order, phi.first_mismatch(expected))


# -- Fulton-MacPherson power -----------------------------------------------------


def _falling(top: IntPoly, k: int) -> IntPoly:
    """top (top-1) ... (top-k+1)."""
    out = ONE
    for i in range(k):
        out = out * (top - i)
    return out


def ftilde_series(order: int) -> TruncSeries:
    """(1+Phi)^{t+1} - 1 = sum_k binom(t+1, k) Phi^k, coefficients F~_n."""
    phi = series_phi(order)
    total = _zero_series(order, BiPoly())
    power = TruncSeries.constant(BiPoly.const(1), order, BiPoly())
    for k in range(1, order + 1):
        power = power * phi
        block = power.map(lambda c, k=k: c.exact_div_int(factorial(k)))
        total = total + block * BiPoly([_falling(ONE_PLUS_T, k)])
    return total


def verify_psi_power(order: int) -> Verdict:
    """F~_n(1,t) = P~_n and F~_n = (t+1) F^_n for 1 <= n <= order."""
    clock = _Clock()
    if order < 1:
        raise ValueError("order must be >= 1")
    try:
        ft = ftilde_series(order)
    except NotDivisible as exc:
        return clock.verdict("psi_power", order, False, {"reason": f"integrality: {exc}"})
    for n in range(1, order + 1):
        if ft[n].eval_y(1).to_intpoly() != compute_ptilde(n):
            return clock.verdict("psi_power", order, False, {"reason": "slice", "n": n})
        try:
            q = ft[n].exact_div_t(ONE_PLUS_T)
        except NotDivisible:
            return clock.verdict("psi_power", order, False, {"reason": "not divisible by t+1", "n": n})
        if q != compute_fhat(n):
            return clock.verdict("psi_power", order, False, {"reason": "quotient != Fhat", "n": n})
    return clock.verdict("psi_power", order, True)


# -- weights -------------------------------------------------------------------

A_POLY = IntPoly([1, -1])  # a = 1 - t


@dataclass(frozen=True)
class WeightSpec:
    """Exponents of w(y) = y^alpha (a-y)^beta, stored as alpha*a and beta*a."""

    family: str
    index: int
    alpha_times_a: IntPoly
    beta_times_a: IntPoly


def weight_spec(family: str, index: int) -> WeightSpec:
    k = index
    if family == "F":
        return WeightSpec(family, k, IntPoly([k - 1]), IntPoly([1, -k]))
    if family == "Fhat":
        # alpha = (n + a - 2)/a, beta = ((n-1)a - n + 2)/a
        alpha = A_POLY + (k - 2)
        beta = A_POLY * (k - 1) + (2 - k)
        return WeightSpec(family, k, alpha, beta)
    raise ValueError(f"unknown family {family!r}")


def _linear_factor(family: str, k: int) -> BiPoly:
    if family == "F":
        return BiPoly([IntPoly([1 - k]), IntPoly([k])])
    return BiPoly([IntPoly([1 - k, 1]), IntPoly([k])])


def verify_weight_identity(family: str, index: int) -> Verdict:
    """The weight's log-derivative reproduces the recurrence's linear factor.

    With N = alpha*a (a - y) - beta*a y, the Sturm form d/dy(w f_k) =
    -w/(y(a-y)) f_{k+1} is equivalent to N = -a L and f_{k+1} = L f_k +
    y(y+t-1) df_k/dy with L = -N/a.
    """
    clock = _Clock()
    if index < 1:
        raise ValueError("index must be >= 1")
    spec = weight_spec(family, index)
    a = BiPoly([A_POLY])
    y = BiPoly.y()
    numer = BiPoly([spec.alpha_times_a]) * (a - y) - BiPoly([spec.beta_times_a]) * y
    lin = _linear_factor(family, index)
    cleared = numer == -(a * lin)
    try:
        derived = (-numer).exact_div_t(A_POLY)
    except NotDivisible:
        return clock.verdict(f"weight_{family}", index, False,
                             {"cleared_identity": cleared, "reason": "numerator not divisible by a"})
    compute = compute_f if family == "F" else compute_fhat
    f = compute(index)
    y_yt1 = BiPoly([IntPoly(), IntPoly([-1, 1]), ONE])
    step_ok = derived * f + y_yt1 * f.derivative_y() == compute(index + 1)
    return clock.verdict(f"weight_{family}", index, cleared and step_ok,
                         {"cleared_identity": cleared, "recurrence_step": step_ok})


def verify_g_limit_identity(m: int) -> Verdict:
    """x(1+x) [(1+x)^m G_m]' = (1+x)^m G_{m+1}."""
    clock = _Clock()
    if m < 1:
        raise ValueError("m must be >= 1")
    v = IntPoly([1, 1]) ** m
    lhs = IntPoly([0, 1, 1]) * (v * compute_g(m)).derivative()
    rhs = v * compute_g(m + 1)
    return clock.verdict("G_limit_identity", m, lhs == rhs, {"lhs": lhs.to_json(), "rhs": rhs.to_json()})


def identity_suite(order: int = 15, max_index: int = 12, slice_max: int = 15,
                   getzler_order: int = 10, psi_order: int = 12) -> list[Verdict]:
    """Every identity check at the given bounds."""
    out = [verify_uode(order), verify_phi_pde(order), verify_convolution_convention(order),
           verify_phi_y_slice(order), verify_getzler_param(getzler_order), verify_psi_power(psi_order)]
    out += [verify_slice_slope(m) for m in range(2, slice_max + 1)]
    for fam in ("F", "Fhat"):
        out += [verify_weight_identity(fam, k) for k in range(1, max_index + 1)]
    out += [verify_g_limit_identity(m) for m in range(1, max_index + 1)]
    return out
