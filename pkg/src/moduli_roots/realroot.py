"""Certified real-root counting and isolation with Sturm sequences.

Everything here is exact. Infinite endpoints are the floats ``-math.inf`` and
``math.inf``; finite endpoints are anything ``Fraction`` accepts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .poly import IntPoly, as_intpoly


class ZeroPolynomial(ValueError):
    pass


class NotSquareFree(ValueError):
    pass


class RefinementBudgetExceeded(RuntimeError):
    pass


# -- gcd and square-free part ------------------------------------------------


def _prem(a: IntPoly, b: IntPoly) -> IntPoly:
    """Pseudo-remainder scaled by |lc(b)|^delta so its sign matches rem(a, b)."""
    r = list(a.coeffs)
    db, lb = b.degree, b.lc
    delta = len(r) - 1 - db + 1
    if delta <= 0:
        return a
    for k in range(len(r) - 1 - db, -1, -1):
        lead = r[k + db]
        r = [c * lb for c in r]
        if lead:
            for j, bj in enumerate(b.coeffs):
                r[k + j] -= lead * bj
        r.pop()
    rem = IntPoly(r)
    if lb < 0 and delta % 2:
        rem = -rem
    return rem


def poly_gcd(p, q) -> IntPoly:
    """Primitive gcd with positive leading coefficient (primitive PRS)."""
    a, b = as_intpoly(p).primitive(), as_intpoly(q).primitive()
    if a.degree < b.degree:
        a, b = b, a
    while b:
        a, b = b, _prem(a, b).primitive()
    if not a:
        return a
    return a if a.lc > 0 else -a


def is_square_free(p) -> bool:
    p = as_intpoly(p)
    if not p:
        raise ZeroPolynomial("zero polynomial")
    return poly_gcd(p, p.derivative()).degree <= 0


def square_free_part(p) -> IntPoly:
    p = as_intpoly(p)
    if not p:
        raise ZeroPolynomial("zero polynomial")
    g = poly_gcd(p, p.derivative())
    if g.degree <= 0:
        return p.primitive()
    # g is primitive, so the quotient is integral (Gauss)
    return p.exact_div(g).primitive()


# -- Sturm chains ---------------------------------------------------------------


def _sign_at_infinity(p: IntPoly, direction: int) -> int:
    s = 1 if p.lc > 0 else -1
    if direction < 0 and p.degree % 2:
        s = -s
    return s


@dataclass(frozen=True)
class SturmChain:
    """Signed remainder sequence p, p', -rem(...) in Z[x], each made primitive."""

    polys: tuple[IntPoly, ...]

    @classmethod
    def of(cls, p) -> "SturmChain":
        p = as_intpoly(p)
        if not p:
            raise ZeroPolynomial("zero polynomial")
        chain = [p.primitive()]
        d = p.derivative().primitive()
        while d:
            chain.append(d)
            d = (-_prem(chain[-2], chain[-1])).primitive()
        return cls(tuple(chain))

    def __len__(self) -> int:
        return len(self.polys)

    def signs(self, x) -> list[int]:
        if isinstance(x, float) and math.isinf(x):
            direction = 1 if x > 0 else -1
            return [_sign_at_infinity(q, direction) for q in self.polys]
        return [q.sign_at(x) for q in self.polys]

    def variations(self, x) -> int:
        """Sign changes at x, zeros dropped."""
        prev = 0
        count = 0
        for s in self.signs(x):
            if s:
                if prev and s != prev:
                    count += 1
                prev = s
        return count


def _is_inf(x) -> bool:
    return isinstance(x, float) and math.isinf(x)


def _finite(x):
    if _is_inf(x):
        return x
    if isinstance(x, float):
        raise TypeError("finite endpoints must be exact; pass a Fraction or int")
    return Fraction(x)


def count_roots(p, lo=-math.inf, hi=math.inf, closed: tuple[bool, bool] = (False, False)) -> int:
    """Number of distinct real roots of p in the interval (lo, hi).

    ``closed`` says which finite endpoints are included. Infinite endpoints
    are always open.
    """
    p = as_intpoly(p)
    if not p:
        raise ZeroPolynomial("zero polynomial")
    lo, hi = _finite(lo), _finite(hi)
    if not lo < hi:
        raise ValueError(f"empty interval ({lo}, {hi})")
    q = square_free_part(p)
    chain = SturmChain.of(q)
    # V(a) - V(b) counts roots in (a, b] for square-free q
    n = chain.variations(lo) - chain.variations(hi)
    if not _is_inf(hi) and not closed[1] and q.sign_at(hi) == 0:
        n -= 1
    if not _is_inf(lo) and closed[0] and q.sign_at(lo) == 0:
        n += 1
    return n


@dataclass(frozen=True)
class RootInterval:
    """Exactly one simple root in [lo, hi]; lo == hi means the root is lo."""

    lo: Fraction
    hi: Fraction

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def overlaps(self, other: "RootInterval") -> bool:
        return not (self.hi < other.lo or other.hi < self.lo)

    def to_json(self, digits: int = 12) -> dict:
        return {"lo": _ratstr(self.lo), "hi": _ratstr(self.hi), "mid": decimal_str(self.mid, digits)}


def _ratstr(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def decimal_str(x: Fraction, digits: int = 12) -> str:
    """Fixed-point rendering of an exact rational, rounded half away from zero."""
    x = Fraction(x)
    scale = 10**digits
    v = abs(x) * scale
    n = int(v)
    if v - n >= Fraction(1, 2):
        n += 1
    s = str(n).rjust(digits + 1, "0")
    body = s[:-digits] + "." + s[-digits:] if digits else s
    return ("-" if x < 0 and n else "") + body


def cauchy_bound(p) -> Fraction:
    """Power of two strictly larger than every root's absolute value."""
    p = as_intpoly(p)
    if p.degree < 1:
        return Fraction(1)
    lc = abs(p.lc)
    m = max(abs(c) for c in p.coeffs[:-1])
    bound = 1 + Fraction(m, lc)
    k = 1
    while k <= bound:
        k *= 2
    return Fraction(k)


class _Isolator:
    """Bisection driver for one square-free polynomial."""

    def __init__(self, p: IntPoly):
        self.p = p
        self.chain = SturmChain.of(p)

    def count_open(self, a: Fraction, b: Fraction) -> int:
        n = self.chain.variations(a) - self.chain.variations(b)
        if self.p.sign_at(b) == 0:
            n -= 1
        return n

    def _detach_endpoints(self, a: Fraction, b: Fraction):
        """Move endpoints that are roots inward; the one root stays inside."""
        p = self.p
        while p.sign_at(a) == 0:
            m = (a + b) / 2
            sm = p.sign_at(m)
            if sm == 0:
                return m, m
            if self.count_open(a, m) == 0:
                a = m
            else:
                b = m
        while p.sign_at(b) == 0:
            m = (a + b) / 2
            sm = p.sign_at(m)
            if sm == 0:
                return m, m
            if self.count_open(m, b) == 0:
                b = m
            else:
                a = m
        return a, b

    def shrink(self, a: Fraction, b: Fraction, precision) -> RootInterval:
        """(a, b) holds exactly one root; tighten to width <= precision."""
        a, b = self._detach_endpoints(a, b)
        if a == b:
            return RootInterval(a, b)
        p = self.p
        sa = p.sign_at(a)
        while precision is not None and b - a > precision:
            m = (a + b) / 2
            sm = p.sign_at(m)
            if sm == 0:
                return RootInterval(m, m)
            if sm == sa:
                a = m
            else:
                b = m
        return RootInterval(a, b)

    def isolate(self, a: Fraction, b: Fraction, precision) -> list[RootInterval]:
        out: list[RootInterval] = []
        stack = [(a, b)]
        while stack:
            a, b = stack.pop()
            k = self.count_open(a, b)
            if k == 0:
                continue
            if k == 1:
                out.append(self.shrink(a, b, precision))
                continue
            m = (a + b) / 2
            if self.p.sign_at(m) == 0:
                out.append(RootInterval(m, m))
            stack.append((m, b))
            stack.append((a, m))
        out.sort(key=lambda iv: iv.lo)
        return self._separate(out)

    def _halve(self, iv: RootInterval) -> RootInterval:
        m = iv.mid
        sm = self.p.sign_at(m)
        if sm == 0:
            return RootInterval(m, m)
        if sm == self.p.sign_at(iv.lo):
            return RootInterval(m, iv.hi)
        return RootInterval(iv.lo, m)

    def _separate(self, ivs: list[RootInterval]) -> list[RootInterval]:
        # neighbours from adjacent bisection cells may share a (non-root) endpoint
        for i in range(len(ivs) - 1):
            while ivs[i].hi >= ivs[i + 1].lo:
                ivs[i] = self._halve(ivs[i])
                if ivs[i].hi >= ivs[i + 1].lo:
                    ivs[i + 1] = self._halve(ivs[i + 1])
        return ivs


def _domain(p: IntPoly, lo, hi) -> tuple[Fraction, Fraction]:
    lo, hi = _finite(lo), _finite(hi)
    if not lo < hi:
        raise ValueError(f"empty interval ({lo}, {hi})")
    bound = cauchy_bound(p)
    a = -bound if _is_inf(lo) else max(lo, -bound)
    b = bound if _is_inf(hi) else min(hi, bound)
    return a, b


def isolate_roots(p, lo=-math.inf, hi=math.inf, precision=None) -> list[RootInterval]:
    """Ordered, disjoint isolating intervals for the roots of p in (lo, hi).

    Each interval either is a single exact rational root or has endpoints
    where p takes opposite nonzero signs. With ``precision`` set, every
    interval has width at most ``precision``.
    """
    p = as_intpoly(p)
    if not p:
        raise ZeroPolynomial("zero polynomial")
    if not is_square_free(p):
        raise NotSquareFree(f"{p} has repeated roots; deflate first")
    if precision is not None:
        precision = Fraction(precision)
        if precision <= 0:
            raise ValueError("precision must be positive")
    if p.degree < 1:
        return []
    a, b = _domain(p, lo, hi)
    if not a < b:
        return []
    if p.degree == 1:
        r = Fraction(-p[0], p[1])
        return [RootInterval(r, r)] if a < r < b else []
    return _Isolator(p.primitive()).isolate(a, b, precision)


def refine(p, iv: RootInterval, precision) -> RootInterval:
    """Shrink an isolating interval of a simple root to width <= precision."""
    p = as_intpoly(p).primitive()
    if iv.exact:
        return iv
    iso = _Isolator(square_free_part(p))
    lo, hi = Fraction(iv.lo), Fraction(iv.hi)
    if p.sign_at(lo) == 0 or p.sign_at(hi) == 0:
        # closed endpoint is the root itself
        if p.sign_at(lo) == 0:
            return RootInterval(lo, lo)
        return RootInterval(hi, hi)
    return iso.shrink(lo, hi, Fraction(precision))


def root_sign_of(q, p, iv: RootInterval, budget: int = 400) -> tuple[int, RootInterval]:
    """Sign of q at the root of p isolated by iv.

    Refines iv until q has no root in the closed interval, then reads the sign
    at the midpoint. An exact iv is evaluated directly. Returns the sign and
    the interval used.
    """
    q = as_intpoly(q)
    p = as_intpoly(p)
    if iv.exact:
        return q.sign_at(iv.lo), iv
    if not q:
        return 0, iv
    if q.degree < 1:
        return (1 if q.lc > 0 else -1), iv
    g = poly_gcd(p, q)
    if g.degree > 0 and count_roots(g, iv.lo, iv.hi, closed=(True, True)):
        return 0, iv
    width = iv.width
    for _ in range(budget):
        if count_roots(q, iv.lo, iv.hi, closed=(True, True)) == 0:
            return q.sign_at(iv.mid), iv
        width /= 2
        iv = refine(p, iv, width)
        if iv.exact:
            return q.sign_at(iv.lo), iv
    raise RefinementBudgetExceeded("could not separate the root from the roots of the second polynomial")


def check_interlacing(p, q, budget: int = 400) -> bool:
    """True iff the roots of q strictly interlace those of p.

    Requires deg q = deg p + 1 and both square-free. A shared root or a
    non-real root makes the answer False.
    """
    p, q = as_intpoly(p), as_intpoly(q)
    if q.degree != p.degree + 1:
        raise ValueError(f"need deg q = deg p + 1, got {q.degree} and {p.degree}")
    for poly in (p, q):
        if not is_square_free(poly):
            raise NotSquareFree(f"{poly} has repeated roots")
    if poly_gcd(p, q).degree > 0:
        return False
    rp = isolate_roots(p)
    rq = isolate_roots(q)
    if len(rp) != p.degree or len(rq) != q.degree:
        return False
    for _ in range(budget):
        clash = False
        for i, a in enumerate(rp):
            for j, b in enumerate(rq):
                if a.overlaps(b):
                    clash = True
                    if not a.exact:
                        rp[i] = refine(p, a, a.width / 2)
                    if not b.exact:
                        rq[j] = refine(q, b, b.width / 2)
        if not clash:
            break
    else:
        raise RefinementBudgetExceeded("root intervals of p and q stayed overlapping")
    merged = sorted([(iv.lo, "q") for iv in rq] + [(iv.lo, "p") for iv in rp])
    labels = [lab for _, lab in merged]
    return labels == ["q", "p"] * p.degree + ["q"]


__all__ = [
    "RefinementBudgetExceeded",
    "RootInterval",
    "SturmChain",
    "NotSquareFree",
    "ZeroPolynomial",
    "cauchy_bound",
    "check_interlacing",
    "count_roots",
    "decimal_str",
    "is_square_free",
    "isolate_roots",
    "poly_gcd",
    "refine",
    "root_sign_of",
    "square_free_part",
]
