import pytest

from polysym import oracle
from polysym.group import G, Subgroup
from polysym.oracle import Polyomino, RefusedScale, enumerate_convex, stabilizer
from polysym.qseries import TruncationSpec


def test_enumeration_counts():
    assert len(list(enumerate_convex(max_area=3))) == 9
    assert len(list(enumerate_convex(max_area=4))) == 9 + 19
    unit = list(enumerate_convex(max_halfperim=2))
    assert unit == [Polyomino.of([(0, 0)])]


def test_duplicate_free():
    polys = list(enumerate_convex(max_area=9))
    assert len({p.cells for p in polys}) == len(polys)


def _convex_by_lines(cells):
    cols, rows = {}, {}
    for c, r in cells:
        cols.setdefault(c, []).append(r)
        rows.setdefault(r, []).append(c)
    return all(max(v) - min(v) + 1 == len(v) for v in list(cols.values()) + list(rows.values()))


@pytest.mark.parametrize("n", range(1, 8))
def test_convex_matches_naive_growth(n):
    naive = {p for p in oracle.enumerate_polyominoes(n) if len(p) == n and _convex_by_lines(p)}
    ours = {p.cells for p in enumerate_convex(max_area=n) if p.area == n}
    assert ours == naive


def test_naive_growth_counts():
    # all polyominoes (fixed) up to area 6: 1, 2, 6, 19, 63, 216
    polys = oracle.enumerate_polyominoes(6)
    assert [sum(1 for p in polys if len(p) == n) for n in range(1, 7)] == [1, 2, 6, 19, 63, 216]


def test_stabilizer_examples():
    assert stabilizer(Polyomino.of([(0, 0)])) is Subgroup.D4
    assert stabilizer(Polyomino.of([(0, 0), (1, 0)])) is Subgroup.HV
    L = Polyomino.of([(0, 0), (1, 0), (0, 1)])
    assert stabilizer(L) in (Subgroup.D1, Subgroup.D2)
    fixers = {g for g in G if L.transform(g) == L}
    assert len(fixers) == 2 and G.ID in fixers


def test_census_examples():
    per = {r.size: r for r in oracle.census("perimeter", 12)}
    assert per[12].as_tuple()[1:] == (120, 2, 16, 35, 12, 14, 24, 6, 4, 72)
    area = {r.size: r for r in oracle.census("area", 9)}
    assert area[1].as_tuple()[1:] == (1, 1, 1, 1, 1, 1, 1, 1, 1, 0)
    # printed as 3452; the row's other columns force 3456
    assert area[9].as_tuple()[1:] == (3630, 2, 62, 924, 26, 38, 478, 6, 2, 3456)


def test_census_monotone():
    for r in oracle.census("area", 10):
        assert r.hv <= r.h_v <= r.id
        assert r.d1d2 <= r.d1_d2 <= r.id
        assert r.r <= r.r2 <= r.id
        assert r.hv <= r.r2 and r.d1d2 <= r.r2


def test_burnside_equals_orbit_count():
    polys = list(enumerate_convex(max_area=8))
    for r in oracle.census("area", 8):
        same = [p for p in polys if p.area == r.size]
        assert oracle.orbit_counts(same, Subgroup.C4) == r.rotation
        assert oracle.orbit_counts(same, Subgroup.D4) == r.congruence


def test_oracle_series_examples():
    spec = TruncationSpec.of("tq", 10)
    assert oracle.oracle_series("Fv", spec).coeff(t=6, q=5) == 5
    C = oracle.oracle_series("C", spec)
    assert sum(c for e, c in C.terms() if e["q"] == 6) == 176
    assert oracle.oracle_series("Fd1d2", spec).coeff(t=6, q=7) == 2


def test_refused_scale():
    with pytest.raises(RefusedScale):
        list(enumerate_convex(max_area=15))
    with pytest.raises(RefusedScale):
        oracle.enumerate_polyominoes(9)
    with pytest.raises(KeyError):
        oracle.oracle_series("nope", TruncationSpec.of("tq", 3))
