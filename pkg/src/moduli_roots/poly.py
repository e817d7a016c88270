"""Exact dense polynomials: univariate over Z or Q, and bivariate in y over Z[t].

Coefficients are stored lowest degree first with no trailing zeros, so the
zero polynomial is the empty tuple. Every value is immutable.
"""

from __future__ import annotations

import json
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

ExactRational = Fraction


class NotDivisible(ArithmeticError):
    """Raised when an exact division leaves a remainder."""


def _strip(coeffs: list) -> tuple:
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return tuple(coeffs)


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)) and not isinstance(x, bool):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


class _Dense:
    """Shared machinery for IntPoly and RatPoly."""

    __slots__ = ("coeffs",)
    _rank = 0

    def __init__(self, coeffs: Iterable = ()):
        object.__setattr__(self, "coeffs", _strip([self._coerce(c) for c in coeffs]))

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    @staticmethod
    def _coerce(c):
        raise NotImplementedError

    # -- structure ---------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, _Dense):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == _strip([other])
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({list(self.coeffs)!r})"

    def __str__(self) -> str:
        return self.pretty()

    # -- arithmetic --------------------------------------------------------

    def _promote(self, other):
        if isinstance(other, _Dense):
            cls = type(self) if self._rank >= other._rank else type(other)
            return cls, other.coeffs
        if isinstance(other, bool):
            return None, None
        if isinstance(other, int):
            return type(self), (other,)
        if isinstance(other, Fraction):
            return RatPoly, (other,)
        return None, None

    def __add__(self, other):
        cls, oc = self._promote(other)
        if cls is None:
            return NotImplemented
        a, b = self.coeffs, oc
        n = max(len(a), len(b))
        return cls([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return type(self)([-c for c in self.coeffs])

    def __sub__(self, other):
        cls, oc = self._promote(other)
        if cls is None:
            return NotImplemented
        return self + cls([-c for c in oc])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        cls, oc = self._promote(other)
        if cls is None:
            return NotImplemented
        a, b = self.coeffs, oc
        if not a or not b:
            return cls()
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return cls(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = type(self)([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def derivative(self):
        return type(self)([i * c for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x) -> Fraction:
        """Exact Horner evaluation at a rational point."""
        x = _as_fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    evaluate = __call__

    def sign_at(self, x) -> int:
        """Sign of the value at rational x without building a Fraction.

        Homogenized Horner: q^d p(a/q) is an integer with the same sign.
        """
        x = _as_fraction(x)
        a, q = x.numerator, x.denominator
        cs = self.coeffs
        if not cs:
            return 0
        if isinstance(cs[0], Fraction):
            return _sign(self(x))
        acc = cs[-1]
        qpow = 1
        for c in reversed(cs[:-1]):
            qpow *= q
            acc = acc * a + c * qpow
        return _sign(acc)

    def divmod(self, b: "_Dense"):
        """Quotient and remainder over Q."""
        if not b:
            raise ZeroDivisionError("polynomial division by zero")
        r = [Fraction(c) for c in self.coeffs]
        db, lb = b.degree, Fraction(b.lc)
        if len(r) - 1 < db:
            return RatPoly(), RatPoly(r)
        q = [Fraction(0)] * (len(r) - db)
        for k in range(len(r) - 1 - db, -1, -1):
            c = r[k + db] / lb
            q[k] = c
            if c:
                for j, bj in enumerate(b.coeffs):
                    r[k + j] -= c * bj
        return RatPoly(q), RatPoly(r[:db])

    def exact_div(self, b):
        """Quotient q with self = b*q; NotDivisible on a nonzero remainder."""
        if isinstance(b, int):
            b = type(self)([b])
        q, r = self.divmod(b)
        if r:
            raise NotDivisible(f"{self} is not divisible by {b}; remainder {r}")
        if isinstance(self, IntPoly) and isinstance(b, IntPoly):
            if any(c.denominator != 1 for c in q.coeffs):
                raise NotDivisible(f"{self} / {b} has non-integral quotient {q}")
            return IntPoly(q.coeffs)
        return q

    def compose_scale(self, s) -> "RatPoly":
        """p(s*x) as a polynomial in x."""
        s = _as_fraction(s)
        return RatPoly([c * s**i for i, c in enumerate(self.coeffs)])

    def reversed(self, degree: int | None = None):
        """x^d p(1/x) for d = degree (defaults to deg p)."""
        d = self.degree if degree is None else degree
        cs = list(self.coeffs) + [0] * (d + 1 - len(self.coeffs))
        return type(self)(cs[::-1])

    # -- output ------------------------------------------------------------

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    def pretty(self, var: str = "t") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                mono = var if i == 1 else f"{var}^{i}"
                body = mono if mag == 1 else f"{mag}{mono}"
            parts.append(("-" if c < 0 else "+", body))
        head_sign, head = parts[0]
        text = ("-" if head_sign == "-" else "") + head
        for sgn, body in parts[1:]:
            text += sgn + body
        return text


def _sign(v) -> int:
    return (v > 0) - (v < 0)


class IntPoly(_Dense):
    """Dense univariate polynomial with integer coefficients."""

    __slots__ = ()
    _rank = 0

    @staticmethod
    def _coerce(c):
        if isinstance(c, bool):
            raise TypeError("bool is not a coefficient")
        if isinstance(c, int):
            return c
        if isinstance(c, Fraction) and c.denominator == 1:
            return c.numerator
        if isinstance(c, str):
            return int(c)
        raise TypeError(f"IntPoly coefficient must be an integer, got {c!r}")

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "IntPoly":
        return cls(int(s) for s in data)

    def content(self) -> int:
        from math import gcd

        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def primitive(self) -> "IntPoly":
        """Divide out the content, keeping the sign of every coefficient."""
        g = self.content()
        if g <= 1:
            return self
        return IntPoly(c // g for c in self.coeffs)


class RatPoly(_Dense):
    """Dense univariate polynomial with rational coefficients."""

    __slots__ = ()
    _rank = 1

    @staticmethod
    def _coerce(c):
        return _as_fraction(c)

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "RatPoly":
        return cls(Fraction(s) for s in data)

    def to_intpoly(self) -> IntPoly:
        """Exact conversion; raises ValueError if a coefficient is not integral."""
        if any(c.denominator != 1 for c in self.coeffs):
            raise ValueError(f"{self!r} has non-integral coefficients")
        return IntPoly(c.numerator for c in self.coeffs)

    def clear_denominators(self) -> IntPoly:
        """A positive integer multiple of self, made primitive."""
        from math import lcm

        den = 1
        for c in self.coeffs:
            den = lcm(den, c.denominator)
        return IntPoly((c * den).numerator for c in self.coeffs).primitive()


def as_intpoly(p) -> IntPoly:
    """Root-preserving integer form: RatPoly is scaled by a positive constant."""
    if isinstance(p, IntPoly):
        return p
    if isinstance(p, RatPoly):
        return p.clear_denominators()
    if isinstance(p, (list, tuple)):
        return IntPoly(p)
    raise TypeError(f"expected a polynomial, got {type(p).__name__}")


T = IntPoly([0, 1])
ONE = IntPoly([1])


class BiPoly:
    """Polynomial in y whose coefficients are IntPoly in t.

    ``coeffs[j]`` is the coefficient of y**j.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = []
        for c in coeffs:
            if isinstance(c, IntPoly):
                cs.append(c)
            elif isinstance(c, int) and not isinstance(c, bool):
                cs.append(IntPoly([c]))
            elif isinstance(c, (list, tuple)):
                cs.append(IntPoly(c))
            else:
                raise TypeError(f"BiPoly coefficient must be IntPoly, got {c!r}")
        object.__setattr__(self, "coeffs", _strip(cs))

    def __setattr__(self, name, value):
        raise AttributeError("BiPoly is immutable")

    @classmethod
    def y(cls) -> "BiPoly":
        return cls([IntPoly(), ONE])

    @classmethod
    def const(cls, c) -> "BiPoly":
        return cls([c])

    @property
    def degree_y(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc_y(self) -> IntPoly:
        return self.coeffs[-1] if self.coeffs else IntPoly()

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __getitem__(self, j: int) -> IntPoly:
        return self.coeffs[j] if 0 <= j < len(self.coeffs) else IntPoly()

    def __eq__(self, other) -> bool:
        if isinstance(other, BiPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, IntPoly)):
            return self == BiPoly([other])
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"BiPoly({[list(c.coeffs) for c in self.coeffs]!r})"

    def _lift(self, other) -> "BiPoly | None":
        if isinstance(other, BiPoly):
            return other
        if isinstance(other, (IntPoly, int)) and not isinstance(other, bool):
            return BiPoly([other])
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        n = max(len(a), len(b))
        return BiPoly([(a[i] if i < len(a) else IntPoly()) + (b[i] if i < len(b) else IntPoly())
                       for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return BiPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if not a or not b:
            return BiPoly()
        out = [IntPoly()] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] = out[i + j] + ai * bj
        return BiPoly(out)

    __rmul__ = __mul__

    def derivative_y(self) -> "BiPoly":
        return BiPoly([c * j for j, c in enumerate(self.coeffs)][1:])

    def derivative_t(self) -> "BiPoly":
        return BiPoly([c.derivative() for c in self.coeffs])

    def eval_y(self, y0) -> RatPoly:
        """Polynomial in t obtained by fixing y = y0."""
        y0 = _as_fraction(y0)
        acc = RatPoly()
        for c in reversed(self.coeffs):
            acc = acc * y0 + c
        return RatPoly(acc.coeffs)

    def eval_t(self, t0) -> RatPoly:
        """Polynomial in y obtained by fixing t = t0."""
        t0 = _as_fraction(t0)
        return RatPoly([c(t0) for c in self.coeffs])

    def __call__(self, y0, t0) -> Fraction:
        return self.eval_t(t0)(y0)

    def exact_div_t(self, d: IntPoly) -> "BiPoly":
        """Divide every y-coefficient by a polynomial in t, exactly."""
        return BiPoly([c.exact_div(d) for c in self.coeffs])

    def exact_div_int(self, k: int) -> "BiPoly":
        out = []
        for c in self.coeffs:
            if any(x % k for x in c.coeffs):
                raise NotDivisible(f"coefficient {c} not divisible by {k}")
            out.append(IntPoly(x // k for x in c.coeffs))
        return BiPoly(out)

    def to_json(self) -> list[list[str]]:
        return [c.to_json() for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[Sequence[str]]) -> "BiPoly":
        return cls(IntPoly.from_json(row) for row in data)

    def pretty(self, yvar: str = "y", tvar: str = "t") -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if j == 0 else (yvar if j == 1 else f"{yvar}^{j}")
            inner = c.pretty(tvar)
            if not mono:
                terms.append(inner)
            elif inner == "1":
                terms.append(mono)
            elif len([x for x in c.coeffs if x]) == 1:
                terms.append(f"{inner}{mono}")
            else:
                terms.append(f"({inner}){mono}")
        return "+".join(terms).replace("+-", "-")

    __str__ = pretty


def dumps(p) -> str:
    """JSON text for an IntPoly, RatPoly or BiPoly."""
    return json.dumps(p.to_json())
