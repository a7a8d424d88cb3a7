from polysym import registry
from polysym.orbits import ORBIT_SERIES
from polysym.qseries import TruncationSpec
from polysym.reference import (KNOWN_MISPRINTS, LEADING_TERMS, TABLE_AREA, TABLE_PERIMETER,
                               leading_terms, orbit_series)


def test_tables_shape():
    assert [r[0] for r in TABLE_AREA] == list(range(1, 11))
    assert [r[0] for r in TABLE_PERIMETER] == list(range(4, 21, 2))
    assert all(len(r) == 11 for r in TABLE_AREA + TABLE_PERIMETER)


def test_misprints_point_at_real_cells():
    cols = {"asym": 10}
    for table, size, col, printed, _ in KNOWN_MISPRINTS:
        rows = TABLE_AREA if table == "area" else TABLE_PERIMETER
        row = next(r for r in rows if r[0] == size)
        assert row[cols[col]] == printed


def test_orbit_series():
    spec = TruncationSpec.of("tq", 10, t=11)
    for name, build in ORBIT_SERIES.items():
        assert build(spec) == orbit_series(name)


def test_leading_terms_are_coefficients_of_the_series():
    for name in LEADING_TERMS:
        ref = leading_terms(name)
        got = registry.series(name, 12)
        for e, c in ref.terms():
            assert got.coeff(e) == c, (name, e)
