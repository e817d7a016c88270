"""Exact yes/no checkers for the real-rootedness, interlacing and ULC claims."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Any, Sequence

from .poly import T, NotDivisible, as_intpoly
from .realroot import (
    check_interlacing,
    count_roots,
    is_square_free,
    isolate_roots,
    poly_gcd,
    root_sign_of,
)
from .recurrences import (
    ONE_PLUS_T,
    compute_f,
    compute_fhat,
    compute_g,
    compute_k,
    compute_p,
    compute_ptilde,
    compute_s,
)

INF = math.inf


@dataclass
class Verdict:
    claim: str
    index: Any
    passed: bool
    witness: Any = None
    millis: float = 0.0

    def __post_init__(self):
        if not self.passed and self.witness is None:
            raise ValueError("a failing verdict needs a witness")

    def to_json(self, timing: bool = True) -> dict:
        out: dict[str, Any] = {"claim": self.claim, "index": self.index, "pass": self.passed}
        if self.witness is not None:
            out["witness"] = self.witness
        if timing:
            out["millis"] = round(self.millis, 3)
        return out

    @classmethod
    def from_json(cls, data: dict) -> "Verdict":
        return cls(data["claim"], data["index"], data["pass"], data.get("witness"), data.get("millis", 0.0))


class _Clock:
    def __init__(self):
        self.start = time.perf_counter()

    def verdict(self, claim: str, index, passed: bool, witness=None) -> Verdict:
        ms = (time.perf_counter() - self.start) * 1000
        return Verdict(claim, index, bool(passed), None if passed else witness, ms)


def _q(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def verify_real_rooted(p, expected_count: int, claim: str = "real_rooted", index=None) -> Verdict:
    """Square-free, exactly expected_count real roots, all strictly negative."""
    clock = _Clock()
    p = as_intpoly(p)
    if not p:
        raise ValueError("zero polynomial")
    if not is_square_free(p):
        g = poly_gcd(p, p.derivative())
        return clock.verdict(claim, index, False, {"reason": "not square-free", "gcd": g.to_json()})
    total = count_roots(p)
    negative = count_roots(p, -INF, 0)
    ok = total == expected_count and negative == expected_count
    return clock.verdict(claim, index, ok,
                         {"reason": "root count", "real": total, "negative": negative,
                          "expected": expected_count})


def verify_main_theorem(n: int) -> Verdict:
    return verify_real_rooted(compute_p(n), n - 3, claim="P_real_rooted", index=n)


def verify_interlacing(n: int) -> Verdict:
    """Roots of P_{n+1} strictly interlace those of P_n."""
    clock = _Clock()
    if n < 3:
        raise ValueError("interlacing is stated for n >= 3")
    if n == 3:
        # P_3 is constant: vacuous, provided P_4 has its one root negative
        ok = count_roots(compute_p(4), -INF, 0) == 1
        return clock.verdict("interlacing", n, ok, {"reason": "P_4 root not negative"})
    ok = check_interlacing(compute_p(n), compute_p(n + 1))
    return clock.verdict("interlacing", n, ok, {"reason": "roots do not interlace"})


@dataclass
class ULCReport:
    """Exact r-ULC margins of a positive sequence."""

    label: str
    r: int
    margins: list[Fraction] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(m >= 0 for m in self.margins)

    @property
    def first_failure(self) -> int | None:
        for i, m in enumerate(self.margins, start=1):
            if m < 0:
                return i
        return None

    def to_json(self) -> dict:
        return {"label": self.label, "r": self.r, "pass": self.passed,
                "margins": [_q(m) for m in self.margins]}

    def to_verdict(self, index=None) -> Verdict:
        i = self.first_failure
        witness = None if i is None else {"index": i, "margin": _q(self.margins[i - 1])}
        return Verdict(f"{self.r}-ULC:{self.label}", index, self.passed, witness)


def verify_rulc(coeffs: Sequence[int], r: int, label: str = "") -> ULCReport:
    """Margins (a_i/C_i^r)^2 - (a_{i-1}/C_{i-1}^r)(a_{i+1}/C_{i+1}^r), C_i = binom(N, i)."""
    a = [int(c) for c in coeffs]
    if r < 0:
        raise ValueError("r must be non-negative")
    if any(c <= 0 for c in a):
        raise ValueError("r-ULC needs a positive sequence")
    n = len(a) - 1
    w = [Fraction(c, comb(n, i) ** r) for i, c in enumerate(a)]
    margins = [w[i] * w[i] - w[i - 1] * w[i + 1] for i in range(1, n)]
    return ULCReport(label, r, margins)


def verify_palindrome_unimodal(coeffs: Sequence[int], claim: str = "palindromic_unimodal", index=None) -> Verdict:
    clock = _Clock()
    a = list(coeffs)
    if not a:
        raise ValueError("empty sequence")
    if a != a[::-1]:
        i = next(i for i in range(len(a)) if a[i] != a[-1 - i])
        return clock.verdict(claim, index, False, {"reason": "not palindromic", "index": i})
    peak = max(range(len(a)), key=lambda i: a[i])
    for i in range(len(a) - 1):
        rising = i < peak
        if (rising and a[i] > a[i + 1]) or (not rising and a[i] < a[i + 1]):
            return clock.verdict(claim, index, False, {"reason": "not unimodal", "index": i})
    return clock.verdict(claim, index, True)


def verify_root_location(m: int, t0) -> Verdict:
    """F_m(., t0): simple root 0 and m-2 simple roots in (0, 1-t0), nothing else."""
    clock = _Clock()
    t0 = Fraction(t0)
    if m < 2 or t0 >= 0:
        raise ValueError("need m >= 2 and t0 < 0")
    f = as_intpoly(compute_f(m).eval_t(t0))
    a = 1 - t0
    index = {"m": m, "t": _q(t0)}
    if not is_square_free(f):
        return clock.verdict("F_root_location", index, False, {"reason": "not square-free"})
    counts = {
        "zero_root": f.sign_at(0) == 0 and f.derivative().sign_at(0) != 0,
        "interior": count_roots(f, 0, a),
        "negative": count_roots(f, -INF, 0),
        "beyond": count_roots(f, a, INF, closed=(True, False)),
    }
    ok = counts["zero_root"] and counts["interior"] == m - 2 and counts["negative"] == 0 and counts["beyond"] == 0
    return clock.verdict("F_root_location", index, ok, counts)


def verify_fhat_root_location(n: int, t0) -> Verdict:
    """F^_n(., t0): n-1 simple roots in (0, 1-t0), none elsewhere."""
    clock = _Clock()
    t0 = Fraction(t0)
    if n < 2 or t0 >= 0:
        raise ValueError("need n >= 2 and t0 < 0")
    f = as_intpoly(compute_fhat(n).eval_t(t0))
    a = 1 - t0
    index = {"n": n, "t": _q(t0)}
    if not is_square_free(f):
        return clock.verdict("Fhat_root_location", index, False, {"reason": "not square-free"})
    counts = {
        "interior": count_roots(f, 0, a),
        "nonpositive": count_roots(f, -INF, 0, closed=(False, True)),
        "beyond": count_roots(f, a, INF, closed=(True, False)),
    }
    ok = counts["interior"] == n - 1 and counts["nonpositive"] == 0 and counts["beyond"] == 0
    return clock.verdict("Fhat_root_location", index, ok, counts)


def verify_sign_alternation(n: int) -> Verdict:
    """sgn S_{n+1}(tau_i) = (-1)^{d-i} and P_{n+1}(tau_i) = tau_i S_{n+1}(tau_i) at the roots of P_n."""
    clock = _Clock()
    if n < 4:
        raise ValueError("need n >= 4")
    p, p_next, s_next = compute_p(n), compute_p(n + 1), compute_s(n + 1)
    d = n - 3
    # P_{n+1} - t S_{n+1} = (1+t) P_n vanishes at every tau
    if p_next - T * s_next != ONE_PLUS_T * p:
        return clock.verdict("sign_alternation", n, False, {"reason": "P_{n+1} != (1+t)P_n + t S_{n+1}"})
    taus = isolate_roots(p, -INF, 0)
    if len(taus) != d:
        return clock.verdict("sign_alternation", n, False, {"reason": "root count", "found": len(taus)})
    rows = []
    ok = True
    for i, iv in enumerate(taus, start=1):
        s_sign, iv = root_sign_of(s_next, p, iv)
        p_sign, iv = root_sign_of(p_next, p, iv)
        want = (-1) ** (d - i)
        good = s_sign == want and p_sign == -want and iv.hi < 0
        ok &= good
        rows.append({"i": i, "S_sign": s_sign, "P_next_sign": p_sign, "expected_S_sign": want})
    return clock.verdict("sign_alternation", n, ok, {"signs": rows})


def verify_fm_theorem(n: int) -> Verdict:
    """(1+t) | P~_n and P^_n has n-1 simple negative roots."""
    clock = _Clock()
    pt = compute_ptilde(n)
    try:
        ph = pt.exact_div(ONE_PLUS_T)
    except NotDivisible as exc:
        return clock.verdict("FM_real_rooted", n, False, {"reason": "not divisible by 1+t", "detail": str(exc)})
    inner = verify_real_rooted(ph, n - 1)
    monic = pt.degree == n and pt.lc == 1
    return clock.verdict("FM_real_rooted", n, inner.passed and monic,
                         inner.witness or {"reason": "P~_n not monic of degree n"})


def verify_g_roots(m: int) -> Verdict:
    """G_m: simple root 0 and m-2 simple roots in (-1, 0), nothing else."""
    clock = _Clock()
    g = compute_g(m)
    counts = {
        "square_free": is_square_free(g),
        "zero_simple": g.sign_at(0) == 0 and g.derivative().sign_at(0) != 0,
        "inside": count_roots(g, -1, 0),
        "left": count_roots(g, -INF, -1, closed=(False, True)),
        "right": count_roots(g, 0, INF),
    }
    ok = counts["square_free"] and counts["zero_simple"] and counts["inside"] == m - 2 \
        and counts["left"] == 0 and counts["right"] == 0
    return clock.verdict("G_roots", m, ok, counts)


def verify_k_roots(n: int) -> Verdict:
    """K_n: n-1 simple roots in [-1, 0), one exactly at -1."""
    clock = _Clock()
    k = compute_k(n)
    counts = {
        "square_free": is_square_free(k),
        "root_at_minus_one": k.sign_at(-1) == 0,
        "inside": count_roots(k, -1, 0),
        "left": count_roots(k, -INF, -1),
        "right": count_roots(k, 0, INF, closed=(True, False)),
    }
    ok = counts["square_free"] and counts["root_at_minus_one"] and counts["inside"] == n - 2 \
        and counts["left"] == 0 and counts["right"] == 0
    return clock.verdict("K_roots", n, ok, counts)


def ulc_status(n: int, rs: Sequence[int] = (0, 1, 2, 3, 4), family: str = "P") -> dict[int, bool]:
    """r-ULC pass/fail for the Betti sequence of P_n (or P~_n)."""
    poly = compute_p(n) if family == "P" else compute_ptilde(n)
    return {r: verify_rulc(poly.coeffs, r, f"{family}_{n}").passed for r in rs}


__all__ = [
    "ULCReport",
    "Verdict",
    "ulc_status",
    "verify_fhat_root_location",
    "verify_fm_theorem",
    "verify_g_roots",
    "verify_interlacing",
    "verify_k_roots",
    "verify_main_theorem",
    "verify_palindrome_unimodal",
    "verify_real_rooted",
    "verify_root_location",
    "verify_rulc",
    "verify_sign_alternation",
]
