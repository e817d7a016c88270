import csv
import io
from fractions import Fraction

import pytest

from moduli_roots import branches as B
from moduli_roots.figure_data import FIGURE_CROSSINGS, FIGURE_POINTS
from moduli_roots.realroot import count_roots
from moduli_roots.recurrences import compute_p
from moduli_roots.verify import verify_interlacing

TOL = Fraction(5, 10**7)


def close(x, printed):
    return abs(Fraction(x) - Fraction(printed)) <= TOL


def test_track_examples():
    tr = B.track_branches("F", 4, [-1, Fraction("-5.1")], Fraction(1, 10**9))
    (a, b), (c, d) = tr.points
    assert close(a.mid, "0.55278640") and close(b.mid, "1.44721360")
    assert close(c.mid, "1.03733935") and close(d.mid, "3.69599398")
    for t0 in (Fraction(-1, 7), Fraction(-3), Fraction(-40)):
        (r,) = B.positive_roots("F", 3, t0, Fraction(1, 10**6))
        assert r.contains((2 - t0) / 3)


def test_branch_ordering_and_counts():
    grid = B.default_grid("F", 7)
    tr = B.track_branches("F", 7, grid, Fraction(1, 2**20))
    for pts in tr.points:
        assert len(pts) == 5
        for a, b in zip(pts, pts[1:]):
            assert a.hi < b.lo


def test_count_mismatch_signals(monkeypatch):
    monkeypatch.setattr(B, "branch_count", lambda family, index: 99)
    with pytest.raises(B.CountMismatch):
        B.track_branches("F", 4, [-1], Fraction(1, 100))


def test_rejects_nonnegative_t():
    with pytest.raises(ValueError):
        B.positive_roots("F", 4, 0, Fraction(1, 100))


def test_crossings_f4():
    recs = B.find_crossings("F", 4)
    assert [r.branch for r in recs] == [1, 2]
    for r, tau in zip(recs, FIGURE_CROSSINGS):
        assert r.tau.lo - TOL <= Fraction(tau) <= r.tau.hi + TOL


def test_crossings_exact_minus_one():
    (rec,) = B.find_crossings("F", 3)
    assert rec.tau.exact and rec.tau.lo == -1 and rec.branch == 1
    (rec,) = B.find_crossings("Fhat", 2)
    assert rec.tau.exact and rec.tau.lo == -1
    assert rec.to_json() == {"branch": 1, "tau_lo": "-1/1", "tau_hi": "-1/1"}


def test_crossing_verdicts():
    for m in range(3, 10):
        assert B.verify_crossings("F", m).passed
    for n in range(2, 10):
        assert B.verify_crossings("Fhat", n).passed
    with pytest.raises(ValueError):
        B.find_crossings("F", 2)


def test_crossing_count_matches_slice_degree():
    for m in range(3, 9):
        assert len(B.find_crossings("F", m)) == compute_p(m + 1).degree == m - 2
    for n in range(2, 8):
        assert len(B.find_crossings("Fhat", n)) == n - 1


def test_crossings_interlace_across_m():
    for m in range(4, 9):
        small = [r.tau for r in B.find_crossings("F", m - 1)]
        big = [r.tau for r in B.find_crossings("F", m)]
        assert verify_interlacing(m).passed
        # sigma_1 < tau_1 < sigma_2 < ... once intervals are refined apart
        merged = sorted([(iv.mid, "big") for iv in big] + [(iv.mid, "small") for iv in small])
        assert [tag for _, tag in merged] == ["big", "small"] * (m - 3) + ["big"]


def test_grid_crossings_small():
    for m in (3, 4, 5):
        v = B.verify_grid_crossings("F", m)
        assert v.passed, v.witness
    assert B.verify_grid_crossings("Fhat", 4).passed


def test_grid_crossing_bracket_records():
    recs = B.find_crossings("F", 5, grid=B.default_grid("F", 5))
    for r in recs:
        near, far = r.bracket
        assert far < near < 0
        assert count_roots(compute_p(6), far, near) == 1


def test_default_grid_shape():
    g = B.default_grid()
    assert g[0] == Fraction(-1, 1024) and g[-1] == -1024 and len(g) == 21
    dense = B.default_grid("F", 9)
    assert all(a > b for a, b in zip(dense, dense[1:]))
    sl = compute_p(10)
    for a, b in zip(dense, dense[1:]):
        assert count_roots(sl, b, a) <= 1


def test_endpoint_behavior():
    assert B.verify_endpoint_behavior("F", 4).passed
    assert B.verify_endpoint_behavior("F", 8).passed
    assert B.verify_endpoint_behavior("Fhat", 5).passed
    for k in range(2, 11):
        assert B.verify_endpoint_behavior("F", k).passed
        assert B.verify_endpoint_behavior("Fhat", k).passed


def test_endpoint_sentinel_limit():
    # past index 10 the fixed near-zero sentinel is not close enough to 0
    v = B.verify_endpoint_behavior("F", 11)
    assert not v.passed and v.witness["near_at_or_above_one"] == 1
    # the largest crossing time of F_11 already lies in (-1/1024, 0)
    assert count_roots(compute_p(12), Fraction(-1, 1024), 0) == 1
    assert B.verify_endpoint_behavior("F", 11, near_t=Fraction(-1, 2**20)).passed
    assert B.verify_endpoint_behavior("Fhat", 12, near_t=Fraction(-1, 2**20)).passed


def test_scaled_limit():
    for m in range(2, 7):
        assert B.verify_scaled_limit(m).passed
    with pytest.raises(ValueError):
        B.verify_scaled_limit(1)


def test_emit_examples():
    rows = B.emit_figure_data(4, [Fraction("-2.5"), Fraction("-0.20871215")], Fraction(1, 10**9))
    assert close(rows[0]["mid"], "0.72540333") and close(rows[1]["mid"], "2.27459667")
    assert close(rows[3]["mid"], "1.00000000")
    (row,) = B.emit_figure_data(3, [-1], Fraction(1, 10**6))
    assert row["mid"] == "1.0000000000" and row["lo_exact"] == "1/1"
    with pytest.raises(ValueError):
        B.emit_figure_data(2, [-1], Fraction(1, 10))


def test_csv_format():
    rows = B.emit_figure_data(4, B.figure_grid(), Fraction(1, 10**8))
    text = B.rows_to_csv(rows)
    assert "\r" not in text
    parsed = list(csv.DictReader(io.StringIO(text)))
    assert len(parsed) == 58
    assert tuple(parsed[0]) == B.CSV_HEADER
    for r in parsed:
        lo, hi = Fraction(r["lo_exact"]), Fraction(r["hi_exact"])
        assert lo <= hi and hi - lo <= Fraction(1, 10**8)


def test_figure_grid_matches():
    assert len(B.figure_grid()) == len(FIGURE_POINTS) == 29
    for row in B.figure_comparison():
        for c, p in zip(row["computed"], row["printed"]):
            assert abs(c - p) <= TOL
