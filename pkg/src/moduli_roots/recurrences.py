"""Polynomial families defined by recurrence.

Index conventions are literal: ``compute_p(n)`` is P_n with P_1 = P_2 = P_3 = 1,
``compute_f(m)`` is F_m with F_1 = 1, and so on. Each family is memoized in a
process-wide table that only ever grows by appending the next index, so a
reader never sees a half-built entry.
"""

from __future__ import annotations

import json
import threading
from math import comb
from pathlib import Path
from typing import Callable

from .poly import ONE, T, BiPoly, IntPoly

FAMILIES = ("P", "F", "Fhat", "G", "K", "H")
ONE_PLUS_T = IntPoly([1, 1])
_X = IntPoly([0, 1])
_X_XPLUS1 = IntPoly([0, 1, 1])
_Y = BiPoly.y()
# y(y + t - 1) as a BiPoly: y^2 + (t - 1) y
_Y_YT1 = BiPoly([IntPoly(), IntPoly([-1, 1]), ONE])


class CacheError(ValueError):
    """Cached data failed validation."""


# -- single recurrence steps ------------------------------------------------
# Each takes the list of already-computed values (index k stored at k-1) and
# returns the value for index len(prev) + 1.


def _s_from(prev_p: list[IntPoly], n: int) -> IntPoly:
    total = IntPoly()
    for j in range(3, n - 1):
        total = total + comb(n - 2, j - 1) * (prev_p[j - 1] * prev_p[n - j])
    return total


def _step_p(prev: list[IntPoly]) -> IntPoly:
    n = len(prev) + 1
    if n <= 3:
        return ONE
    return ONE_PLUS_T * prev[n - 2] + T * _s_from(prev, n)


def _step_f(prev: list[BiPoly]) -> BiPoly:
    if not prev:
        return BiPoly.const(1)
    m = len(prev)
    f = prev[-1]
    lin = BiPoly([IntPoly([1 - m]), IntPoly([m])])
    return lin * f + _Y_YT1 * f.derivative_y()


def _step_fhat(prev: list[BiPoly]) -> BiPoly:
    if not prev:
        return BiPoly.const(1)
    n = len(prev)
    f = prev[-1]
    lin = BiPoly([IntPoly([1 - n, 1]), IntPoly([n])])
    return lin * f + _Y_YT1 * f.derivative_y()


def _step_g(prev: list[IntPoly]) -> IntPoly:
    if not prev:
        return ONE
    m = len(prev)
    g = prev[-1]
    return m * _X * g + _X_XPLUS1 * g.derivative()


def _step_k(prev: list[IntPoly]) -> IntPoly:
    if not prev:
        return ONE
    n = len(prev)
    k = prev[-1]
    return IntPoly([1, n]) * k + _X_XPLUS1 * k.derivative()


def _step_h(prev: list[BiPoly]) -> BiPoly:
    # variables: y-slot holds x, t-slot holds eps = 1/t
    if not prev:
        return BiPoly.const(1)
    m = len(prev)
    h = prev[-1]
    lin = BiPoly([IntPoly([0, -(m - 1)]), IntPoly([m])])
    quad = BiPoly([IntPoly(), IntPoly([1, -1]), ONE])
    return lin * h + quad * h.derivative_y()


_STEPS: dict[str, Callable] = {
    "P": _step_p,
    "F": _step_f,
    "Fhat": _step_fhat,
    "G": _step_g,
    "K": _step_k,
    "H": _step_h,
}

_memo: dict[str, list] = {fam: [] for fam in FAMILIES}
_lock = threading.Lock()


def _get(family: str, n: int):
    if n < 1:
        raise ValueError(f"{family} index must be >= 1, got {n}")
    table = _memo[family]
    if n <= len(table):
        return table[n - 1]
    with _lock:
        step = _STEPS[family]
        while len(table) < n:
            table.append(step(table))
        return table[n - 1]


def sequence(family: str, n: int) -> list:
    """Values for indices 1..n computed from scratch, bypassing the memo."""
    step = _STEPS[family]
    out: list = []
    while len(out) < n:
        out.append(step(out))
    return out


def clear_memo() -> None:
    with _lock:
        for table in _memo.values():
            table.clear()


# -- public families ---------------------------------------------------------


def compute_p(n: int) -> IntPoly:
    """Poincare polynomial P_n of M_{0,n}bar (P_1 = P_2 = P_3 = 1)."""
    return _get("P", n)


def compute_s(n: int) -> IntPoly:
    """Binomial convolution S_n = sum_{j=3}^{n-2} C(n-2, j-1) P_j P_{n+1-j}."""
    if n < 4:
        raise ValueError(f"S_n is defined for n >= 4, got {n}")
    compute_p(max(n - 2, 1))
    return _s_from(_memo["P"], n)


def compute_f(m: int) -> BiPoly:
    return _get("F", m)


def compute_fhat(n: int) -> BiPoly:
    return _get("Fhat", n)


def compute_g(m: int) -> IntPoly:
    return _get("G", m)


def compute_k(n: int) -> IntPoly:
    return _get("K", n)


def compute_hscaled(m: int) -> BiPoly:
    """t^{-(m-1)} F_m(t x, t) as a polynomial in x over Z[eps], eps = 1/t.

    The y-slot of the returned BiPoly is x and its t-slot is eps; fixing
    eps = 0 gives G_m.
    """
    return _get("H", m)


def compute_ptilde(n: int) -> IntPoly:
    """Poincare polynomial of the Fulton-MacPherson space P^1[n]."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    total = IntPoly()
    for j in range(n + 1):
        tpow = T ** min(n - j, 2)
        total = total + comb(n, j) * (tpow * compute_p(j + 1) * compute_p(n + 1 - j))
    return total


def compute_phat(n: int) -> IntPoly:
    """P~_n / (1 + t); raises NotDivisible if the factor is missing."""
    return compute_ptilde(n).exact_div(ONE_PLUS_T)


def double_factorial(k: int) -> int:
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


def compute(family: str, n: int):
    """Dispatch by family tag: P, S, Ptilde, Phat, G, K, F, Fhat, H."""
    table = {
        "P": compute_p,
        "S": compute_s,
        "Ptilde": compute_ptilde,
        "Phat": compute_phat,
        "G": compute_g,
        "K": compute_k,
        "F": compute_f,
        "Fhat": compute_fhat,
        "H": compute_hscaled,
    }
    try:
        fn = table[family]
    except KeyError:
        raise ValueError(f"unknown family {family!r}; expected one of {sorted(table)}") from None
    return fn(n)


# -- on-disk cache -----------------------------------------------------------

_BIVARIATE = {"F", "Fhat", "H"}


def save_cache(directory: str | Path, up_to: int) -> None:
    """Write one JSON file per family holding indices 1..up_to."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    for fam in FAMILIES:
        _get(fam, up_to)
        values = _memo[fam][:up_to]
        (directory / f"{fam}.json").write_text(json.dumps([v.to_json() for v in values]))


def _validate(fam: str, values: list) -> None:
    for k, v in enumerate(values, start=1):
        expected = _STEPS[fam](values[: k - 1])
        if v != expected:
            raise CacheError(f"{fam}_{k} does not satisfy its recurrence")
    if fam == "P":
        for n, p in enumerate(values, start=1):
            if n >= 3 and (p.degree != n - 3 or p.lc != 1 or p[0] != 1
                           or p.coeffs != p.coeffs[::-1] or any(c <= 0 for c in p)):
                raise CacheError(f"P_{n} violates monic/palindromic/positivity invariants")
    if fam in ("F", "Fhat"):
        for m, f in enumerate(values, start=1):
            if m >= 2 and (f.degree_y != m - 1 or f.lc_y != IntPoly([double_factorial(2 * m - 3)])):
                raise CacheError(f"{fam}_{m} has wrong y-degree or leading coefficient")


def load_cache(directory: str | Path) -> dict[str, int]:
    """Load and validate cached families; returns how many entries each holds.

    Nothing is installed unless every file validates.
    """
    directory = Path(directory)
    loaded: dict[str, list] = {}
    for fam in FAMILIES:
        path = directory / f"{fam}.json"
        if not path.exists():
            continue
        raw = json.loads(path.read_text())
        cls = BiPoly if fam in _BIVARIATE else IntPoly
        try:
            values = [cls.from_json(item) for item in raw]
        except (TypeError, ValueError) as exc:
            raise CacheError(f"{path}: malformed entry ({exc})") from exc
        _validate(fam, values)
        loaded[fam] = values
    with _lock:
        for fam, values in loaded.items():
            if len(values) > len(_memo[fam]):
                _memo[fam][:] = values
    return {fam: len(v) for fam, v in loaded.items()}
