import pytest

from polysym import symmetry as S
from polysym.oracle import oracle_series
from polysym.qseries import TruncationSpec
from polysym.reference import leading_terms
from polysym.symmetry import QPoly

TQ = TruncationSpec.of("tq", 12)


def t_count(a, t):
    return sum(c for e, c in a.terms() if e.get("t") == t)


def q_count(a, q):
    return sum(c for e, c in a.terms() if e.get("q", 0) == q)


def assert_leading(name, series):
    ref = leading_terms(name, series.spec)
    for e, c in ref.terms():
        assert series.coeff(e) == c, (name, e)


def test_ferrers_Dm():
    assert S.ferrers_Dm(0) == S.ferrers_Dm(1) == QPoly([1])
    assert S.ferrers_Dm(2) == QPoly([1, 1])
    # empty, one cell, two dominoes; three cells need half-perimeter 4
    assert S.ferrers_Dm(3) == QPoly([1, 1, 2])
    for m in range(13):
        assert S.ferrers_Dm(m) == S.ferrers_Dm_rec(m, "a") == S.ferrers_Dm_rec(m, "b")


def test_a2m():
    assert S.poly_a2m(1) == QPoly([0, 1])
    assert S.poly_a2m(2) == QPoly([0, 0, 0, 0, 1])
    assert str(S.poly_a2m(3)) == "q^5 + q^9"
    assert str(S.poly_a2m(4)) == "2*q^8 + q^12 + q^16"
    for m in range(2, 11):
        assert S.poly_a2m(m).at_one() == 2 ** (m - 2)
    for m in range(13):
        a = S.poly_a2m(m)
        assert a == S.poly_a2m_from_D(m) == S.poly_a2m_rec(m, "a") == S.poly_a2m_rec(m, "b")


def test_Fr():
    assert_leading("Fr", S.series_Fr(TQ))
    deep = S.series_Fr(TruncationSpec.of("tq", 25, t=10))
    assert [t_count(deep, 2 * m) for m in range(1, 6)] == [1, 1, 2, 4, 8]
    assert t_count(S.series_Fr(TruncationSpec.of("tq", 16, t=8)), 8) == 4


def test_Fr_routes():
    for Q in (10, 14, 18):
        spec = TruncationSpec.of("tq", Q)
        assert S.series_Fr_A(spec) == S.series_Fr_B(spec)


def test_Fr_parity():
    Fr = S.series_Fr(TruncationSpec.of("tq", 40, t=12))
    for e, _ in Fr.terms():
        assert e["t"] % 2 == 0
    # the full m x m square is the largest; the smallest area is lower (t^6 q^5)
    for m in range(1, 7):
        assert max(e["q"] for e, _ in Fr.terms() if e["t"] == 2 * m) == m * m
    assert min(e["q"] for e, _ in Fr.terms() if e["t"] == 6) == 5


def test_Fr2():
    F = S.series_Fr2(TQ)
    assert_leading("Fr2", F)
    assert q_count(F, 4) == 7
    assert S.series_Fr2_odd(TQ).coeff(t=2, q=1) == 1
    assert S.series_Fr2_even(TQ).coeff(t=2, q=1) == 0
    xy = TruncationSpec.of("xyq", 9)
    assert S.series_Fr2(xy) == oracle_series("Fr2", xy)


def test_Fv():
    F = S.series_Fv(TQ)
    assert_leading("Fv", F)
    assert t_count(S.series_Fv(TruncationSpec.of("tq", 9, t=6)), 6) == 12
    assert q_count(F, 6) == 12
    assert S.series_Fh(TQ) == F


def test_f_family():
    assert S.poly_f("oo", 2) == QPoly([0, 1])
    assert S.poly_f("oo", 4) == QPoly([0, 0, 0, 2])
    assert str(S.poly_f("eo", 5)) == "q^4 + q^6"
    assert str(S.poly_f("oo", 6)) == "3*q^5 + q^9"
    for n in range(1, 15):
        assert S.poly_f("oo", n) == S.poly_f_rec("oo", n)
        assert S.poly_f("eo", n) == S.poly_f_rec("eo", n)
        if n % 2:
            assert S.poly_f("oo", n) == QPoly([])
        else:
            assert S.poly_f("eo", n) == QPoly([])


def test_f_ee_relation():
    # f^ee_{n+2} = q^(n+1) f^oo_n
    for n in range(2, 13, 2):
        want = QPoly([0] * (n + 1) + list(S.poly_f("oo", n).c))
        assert S.poly_f("ee", n + 2) == want


def test_Fhv():
    F = S.series_Fhv(TQ)
    assert_leading("Fhv", F)
    deep = S.series_Fhv(TruncationSpec.of("tq", 49, t=14))
    for n in range(1, 15):
        fam = ("oo", "ee") if n % 2 == 0 else ("eo", "oe")
        fn = sum(S.poly_f(f, n).at_one() for f in fam)
        assert t_count(deep, n) == fn


def test_Y1():
    spec = TruncationSpec.of("xyzq", 10)
    Y1 = S.series_Y1(spec)
    assert Y1.coeff(x=1, y=1, z=1, q=1) == 1
    assert Y1 == S.series_Y1_closed(spec)
    vspec = TruncationSpec.of("vxyzq", 8)
    assert S.series_Y1(vspec) == S.series_Y1_iter(vspec)


def test_DS():
    spec = TruncationSpec.of("xyzq", 8)
    DS = S.series_DS(spec)
    assert_leading("DS", DS)
    assert DS.coeff(x=2, y=2, z=2, q=3) == 1
    assert DS.rename({"x": "y", "y": "x"}) == DS
    assert DS == S.series_Y1(spec) + S.series_Y2(spec)


def test_Y2_empty_stack_convention():
    spec = TruncationSpec.of("xyzq", 8)
    truth = oracle_series("Y2", spec)
    assert S.series_Y2(spec) == truth
    assert S.series_Y2(spec, include_empty_stack=False) != truth


def test_Fd():
    F = S.series_Fd(TQ)
    assert_leading("Fd", F)
    assert q_count(F, 7) == 14
    assert t_count(S.series_Fd(TruncationSpec.of("tq", 9, t=6)), 6) == 14


def test_E_A():
    spec = TruncationSpec.of("xzwq", 10)
    assert S.series_A(spec).coeff(x=1, z=1, w=1, q=1) == 1
    assert S.series_E2(spec) == S.series_E1(spec).rename({"z": "w", "w": "z"})
    assert S.series_E1(spec) == S.series_E1_iter(spec)
    assert S.series_A1(spec) == S.series_A1_iter(spec)
    small = TruncationSpec.of("xzwq", 8)
    assert S.series_E(small) == oracle_series("E", small)
    assert S.series_A(small) == oracle_series("A", small)


def test_Fd1d2():
    F = S.series_Fd1d2(TQ)
    assert_leading("Fd1d2", F)
    assert q_count(F, 4) == 1
    assert t_count(S.series_Fd1d2(TruncationSpec.of("tq", 25, t=10)), 10) == 24


def test_containment():
    spec = TruncationSpec.of("tq", 12)
    r2 = S.series_Fr2(spec)
    for small, big in ((S.series_Fhv, S.series_Fv), (S.series_Fd1d2, S.series_Fd),
                       (S.series_Fr, S.series_Fr2), (S.series_Fhv, S.series_Fr2),
                       (S.series_Fd1d2, S.series_Fr2)):
        assert (big(spec) - small(spec)).is_nonnegative()
    assert r2.is_nonnegative()


@pytest.mark.parametrize("cls", ["Fr", "Fr2", "Fr2_even", "Fr2_odd", "Fv", "Fhv", "Fd", "Fd1d2",
                                 "Fd1d2_even", "Fd1d2_odd"])
def test_against_oracle(cls):
    spec = TruncationSpec.of("tq", 10)
    build = getattr(S, f"series_{cls}")
    assert build(spec) == oracle_series(cls, spec)


def test_Fr2_even_division_route():
    for Q in (8, 12):
        spec = TruncationSpec.of("xyq", Q)
        assert S.series_Fr2_even_quotient(spec) == S.series_Fr2_even(spec)
    with pytest.raises(ValueError):
        S.series_Fr2_even_quotient(TQ)
