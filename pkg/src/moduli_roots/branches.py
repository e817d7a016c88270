"""Positive y-root branches of F_m(y, t) and F^_n(y, t) over negative t.

Branches are labelled by order at each grid point (branch 1 is the smallest
positive root). Their crossings of y = 1 are taken from the exact slice
polynomial; the grid only certifies which branch owns each crossing.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .figure_data import FIGURE_POINTS
from .poly import BiPoly, IntPoly, as_intpoly
from .realroot import RootInterval, count_roots, decimal_str, isolate_roots
from .recurrences import compute_f, compute_fhat, compute_g, compute_p, compute_phat
from .verify import Verdict, _Clock

INF = math.inf
NEAR_ZERO = Fraction(-1, 1024)
FAR_NEGATIVE = Fraction(-(2**20))


class CountMismatch(RuntimeError):
    """A Sturm count disagreed with the guaranteed number of positive roots."""


def deformation(family: str, index: int) -> BiPoly:
    if family == "F":
        return compute_f(index)
    if family == "Fhat":
        return compute_fhat(index)
    raise ValueError(f"unknown family {family!r}")


def slice_polynomial(family: str, index: int) -> IntPoly:
    """The y = 1 slice: P_{m+1} for F_m, P^_n for F^_n."""
    return compute_p(index + 1) if family == "F" else compute_phat(index)


def branch_count(family: str, index: int) -> int:
    return max(index - 2, 0) if family == "F" else index - 1


def figure_grid() -> list[Fraction]:
    return [Fraction(t) for t, _, _ in FIGURE_POINTS]


def _ladder() -> list[Fraction]:
    # -1/1024, -1/512, ..., -1024
    return [-Fraction(2) ** k for k in range(-10, 11)]


def default_grid(family: str | None = None, index: int | None = None) -> list[Fraction]:
    """Geometric ladder from -1/1024 to -1024, decreasing.

    Given a family and index, each cell holding more than one root of the
    slice polynomial is bisected until no cell holds two.
    """
    grid = _ladder()
    if family is None:
        return grid
    sl = slice_polynomial(family, index)
    out = [grid[0]]
    for right, left in zip(grid, grid[1:]):
        cells = [(left, right)]
        pieces = []
        while cells:
            lo, hi = cells.pop()
            if count_roots(sl, lo, hi) > 1:
                mid = (lo + hi) / 2
                cells += [(lo, mid), (mid, hi)]
            else:
                pieces.append((lo, hi))
        out += sorted({lo for lo, _ in pieces}, reverse=True)
    return out


@dataclass(frozen=True)
class BranchTrace:
    family: str
    index: int
    grid: tuple[Fraction, ...]
    points: tuple[tuple[RootInterval, ...], ...]

    def branch(self, i: int) -> list[RootInterval]:
        """Intervals of branch i (1-based) along the grid."""
        return [pt[i - 1] for pt in self.points]

    def signs_vs_one(self, i: int) -> list[int]:
        """Exact sign of r_i(t) - 1 at each grid point."""
        out = []
        for iv in self.branch(i):
            if iv.exact and iv.lo == 1:
                out.append(0)
            else:
                out.append(1 if iv.mid > 1 else -1)
        return out


def positive_roots(family: str, index: int, t0, width) -> tuple[RootInterval, ...]:
    """Isolating intervals of the roots in (0, 1 - t0), never straddling y = 1."""
    t0 = Fraction(t0)
    if t0 >= 0:
        raise ValueError("grid points must be negative")
    f = as_intpoly(deformation(family, index).eval_t(t0))
    a = 1 - t0
    below = isolate_roots(f, 0, 1, width)
    at_one = (RootInterval(Fraction(1), Fraction(1)),) if f.sign_at(1) == 0 else ()
    above = isolate_roots(f, 1, a, width)
    return tuple(below) + at_one + tuple(above)


def track_branches(family: str, index: int, grid: Iterable, width) -> BranchTrace:
    grid = tuple(Fraction(t) for t in grid)
    width = Fraction(width)
    expected = branch_count(family, index)
    points = []
    for t0 in grid:
        roots = positive_roots(family, index, t0, width)
        if len(roots) != expected:
            raise CountMismatch(f"{family}_{index} at t={t0}: {len(roots)} positive roots, expected {expected}")
        points.append(roots)
    return BranchTrace(family, index, grid, tuple(points))


def _below_one(family: str, index: int, t0: Fraction) -> int:
    f = as_intpoly(deformation(family, index).eval_t(t0))
    return count_roots(f, 0, 1)


@dataclass(frozen=True)
class CrossingRecord:
    branch: int
    tau: RootInterval
    bracket: tuple[Fraction, Fraction] | None = None

    def to_json(self) -> dict:
        out = {"branch": self.branch, "tau_lo": _q(self.tau.lo), "tau_hi": _q(self.tau.hi)}
        if self.bracket is not None:
            out["bracket"] = [_q(self.bracket[0]), _q(self.bracket[1])]
        return out


def _q(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _probe_points(sl: IntPoly, iv: RootInterval) -> tuple[Fraction, Fraction]:
    """Negative rationals just left and right of the root, with no other root between."""
    if not iv.exact:
        return iv.lo, iv.hi
    delta = Fraction(1, 2**10)
    while True:
        lo, hi = iv.lo - delta, iv.lo + delta
        if hi < 0 and count_roots(sl, lo, hi, closed=(True, True)) == 1:
            return lo, hi
        delta /= 2


def sign_change_brackets(trace: BranchTrace, i: int) -> list[tuple[Fraction, Fraction]]:
    """Grid pairs (t_near, t_far) where branch i moves from below to above y = 1.

    A grid point sitting exactly on y = 1 is skipped over, so the pair
    brackets it.
    """
    signs = trace.signs_vs_one(i)
    out = []
    last_nonzero = None
    for j, s in enumerate(signs):
        if s == 0:
            continue
        if last_nonzero is not None and signs[last_nonzero] != s:
            out.append((trace.grid[last_nonzero], trace.grid[j]))
        last_nonzero = j
    return out


def find_crossings(family: str, index: int, grid: Sequence | None = None,
                   precision=Fraction(1, 2**30), width=Fraction(1, 2**20)) -> list[CrossingRecord]:
    """Crossings of y = 1, one per root of the slice polynomial.

    Branch ownership of each crossing is read from Sturm counts of the
    roots of the deformation in (0, 1) at the two ends of the tau-interval.
    When ``grid`` is given, each record also carries the grid pair where
    that branch changes side.
    """
    if family == "F" and index < 3:
        raise ValueError("F needs index >= 3 for a crossing")
    sl = slice_polynomial(family, index)
    taus = isolate_roots(sl, -INF, 0, precision)
    brackets: dict[int, tuple] = {}
    if grid is not None:
        trace = track_branches(family, index, grid, width)
        for i in range(1, branch_count(family, index) + 1):
            found = sign_change_brackets(trace, i)
            if len(found) == 1:
                brackets[i] = found[0]
    records = []
    for iv in taus:
        left, right = _probe_points(sl, iv)
        before, after = _below_one(family, index, left), _below_one(family, index, right)
        if after != before + 1:
            raise CountMismatch(f"no single downward crossing in [{left}, {right}] ({before} -> {after})")
        records.append(CrossingRecord(after, iv, brackets.get(after)))
    return records


def verify_crossings(family: str, index: int) -> Verdict:
    """One crossing per branch, with tau_i owned by branch i and taus ordered below 0."""
    clock = _Clock()
    d = branch_count(family, index)
    records = find_crossings(family, index)
    owners = [r.branch for r in records]
    ordered = all(a.tau.hi <= b.tau.lo for a, b in zip(records, records[1:]))
    ok = len(records) == d and owners == list(range(1, d + 1)) and ordered \
        and all(r.tau.hi < 0 for r in records)
    return clock.verdict(f"crossings_{family}", index, ok, {"owners": owners, "expected_count": d})


def verify_grid_crossings(family: str, index: int, grid: Sequence | None = None,
                          width=Fraction(1, 2**20)) -> Verdict:
    """Along the grid each branch changes side of y = 1 once, inside a bracket
    holding exactly one root of the slice polynomial."""
    clock = _Clock()
    grid = default_grid(family, index) if grid is None else list(grid)
    sl = slice_polynomial(family, index)
    trace = track_branches(family, index, grid, width)
    d = branch_count(family, index)
    rows = []
    ok = True
    for i in range(1, d + 1):
        signs = trace.signs_vs_one(i)
        brackets = sign_change_brackets(trace, i)
        good = len(brackets) == 1 and signs[0] == -1 and signs[-1] == 1 and signs.count(0) <= 1
        roots_inside = None
        if brackets:
            near, far = brackets[0]
            roots_inside = count_roots(sl, far, near)
            good &= roots_inside == 1
        ok &= good
        rows.append({"branch": i, "changes": len(brackets), "roots_in_bracket": roots_inside})
    n_cross = sum(1 for r in rows if r["changes"] == 1)
    ok &= n_cross == sl.degree == d
    return clock.verdict(f"grid_crossings_{family}", index, ok, {"branches": rows})


def verify_endpoint_behavior(family: str, index: int, near_t=NEAR_ZERO, far_t=FAR_NEGATIVE) -> Verdict:
    """All branches below 1 at t = near_t and above 1 at t = far_t.

    The default sentinels -1/1024 and -2^20 are close enough to the two ends
    for index <= 10; past that the largest crossing time of F_m lies in
    (-1/1024, 0) and near_t has to move closer to 0.
    """
    clock = _Clock()
    near_t, far_t = Fraction(near_t), Fraction(far_t)
    d = branch_count(family, index)
    if d == 0:
        return clock.verdict(f"endpoints_{family}", index, True)
    f = deformation(family, index)
    near = as_intpoly(f.eval_t(near_t))
    far = as_intpoly(f.eval_t(far_t))
    counts = {
        "near_at_or_above_one": count_roots(near, 1, 1 - near_t, closed=(True, False)),
        "far_at_or_below_one": count_roots(far, 0, 1, closed=(False, True)),
        "near_positive": count_roots(near, 0, 1 - near_t),
        "far_positive": count_roots(far, 0, 1 - far_t),
    }
    ok = counts["near_at_or_above_one"] == 0 and counts["far_at_or_below_one"] == 0 \
        and counts["near_positive"] == d and counts["far_positive"] == d
    return clock.verdict(f"endpoints_{family}", index, ok, counts)


def verify_scaled_limit(m: int, t_big=-(10**6), tol=Fraction(1, 1000)) -> Verdict:
    """r_i(t)/t at a large negative t sits within tol of the nonzero roots of G_m."""
    clock = _Clock()
    t_big, tol = Fraction(t_big), Fraction(tol)
    if m < 2:
        raise ValueError("m must be >= 2")
    if m == 2:
        return clock.verdict("scaled_limit", m, True)
    branches = positive_roots("F", m, t_big, tol * abs(t_big) / 4)
    scaled = sorted(iv.mid / t_big for iv in branches)
    g_roots = [iv.mid for iv in isolate_roots(compute_g(m), -1, 0, tol / 4)]
    diffs = [abs(a - b) for a, b in zip(scaled, g_roots)]
    ok = len(scaled) == len(g_roots) == m - 2 and all(d <= tol for d in diffs)
    return clock.verdict("scaled_limit", m, ok,
                         {"scaled": [float(x) for x in scaled], "G_roots": [float(x) for x in g_roots]})


# -- figure data -----------------------------------------------------------------

CSV_HEADER = ("t", "branch", "mid", "lo", "hi", "t_exact", "lo_exact", "hi_exact")


def emit_figure_data(index: int, grid: Iterable, width, digits: int = 10, family: str = "F") -> list[dict]:
    """One row per (grid point, branch) with decimal and exact columns."""
    if family == "F" and index < 3:
        raise ValueError("m must be >= 3")
    trace = track_branches(family, index, grid, width)
    rows = []
    for t0, pts in zip(trace.grid, trace.points):
        for i, iv in enumerate(pts, start=1):
            rows.append({
                "t": decimal_str(t0, digits),
                "branch": i,
                "mid": decimal_str(iv.mid, digits),
                "lo": decimal_str(iv.lo, digits),
                "hi": decimal_str(iv.hi, digits),
                "t_exact": _q(t0),
                "lo_exact": _q(iv.lo),
                "hi_exact": _q(iv.hi),
            })
    return rows


def rows_to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_HEADER, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def figure_comparison(width=Fraction(1, 10**8)) -> list[dict]:
    """F_4 branches on the printed grid next to the printed coordinates."""
    out = []
    trace = track_branches("F", 4, figure_grid(), width)
    for (t, lo_str, hi_str), pts in zip(FIGURE_POINTS, trace.points):
        out.append({
            "t": t,
            "computed": (pts[0].mid, pts[1].mid),
            "printed": (Fraction(lo_str), Fraction(hi_str)),
        })
    return out
