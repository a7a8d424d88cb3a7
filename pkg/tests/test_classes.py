import pytest

from polysym import classes as K
from polysym import symmetry as S
from polysym.oracle import oracle_series
from polysym.qseries import Series, TruncationSpec, coeff_extract, div_poch, from_text, mul

XYQ = TruncationSpec.of("xyq", 10)


def qsum(a, n):
    return sum(c for e, c in a.terms() if e.get("q", 0) == n)


def test_P():
    P = K.series_P(XYQ)
    assert P.coeff(x=1, y=1, q=1) == 1
    assert P.coeff(x=2, y=2, q=3) == 1
    assert qsum(P, 4) == 5


def test_P0():
    P0 = K.series_P0(TruncationSpec.of("xyq", 6, y=6))
    assert P0.coeff(y=2) == 1
    assert P0.coeff(x=1, y=1, q=1) == 1
    # an empty row can only sit above the single cell (rows weakly decrease upward)
    assert P0.coeff(x=1, y=2, q=1) == 1


def test_PS():
    PS = K.series_PS(XYQ)
    assert PS.coeff(x=3, y=2, q=5) == 1
    assert PS.coeff(x=3, y=2, q=4) == 1
    assert PS.coeff(x=1, y=1, q=1) == 1
    PSu = K.series_PS_u(TruncationSpec.of("uxyq", 8))
    assert PSu.coeff(u=3, x=3, y=2, q=5) == 1


def test_T0_and_T():
    spec = TruncationSpec.of("xyq", 8, y=8)
    T0 = K.series_T0(spec)
    geo = from_text(" + ".join(f"x^{k}*q^{k}" for k in range(9)), spec.without("y"))
    assert coeff_extract(T0, "y", 1) == geo
    T = K.series_T(XYQ)
    assert T.coeff(x=1, y=1, q=1) == 1
    assert T.coeff(x=2, y=2, q=3) == 2


def test_T0_by_height():
    spec = TruncationSpec.of("xyq", 12, y=12)
    T0 = K.series_T0(spec)
    xq = TruncationSpec.of("xq", 12)
    for n in range(1, 13):
        # T0 keeps the all-empty stack of each height, as T_{0,n} does
        assert coeff_extract(T0, "y", n) == K.series_T0n(n, xq)


def test_Vn():
    xq = TruncationSpec.of("xq", 12)
    assert K.poly_Vn(0, xq) == K.poly_Vn(1, xq) == Series.one(xq)
    assert K.poly_Vn(2, xq) == from_text("1 + x*q", xq)
    # the recurrence gives 2*x*q: T_{0,3} needs three single-cell stacks
    assert K.poly_Vn(3, xq) == from_text("1 + 2*x*q + x*q^2", xq)
    for n in range(11):
        assert K.poly_Vn(n, xq) == K.poly_Vn_closed(n, xq)


def test_T0n():
    xq = TruncationSpec.of("xq", 14)
    one = K.series_T0n(1, xq)
    assert one == div_poch(Series.one(xq), from_text("x", xq), 1)
    two = K.series_T0n(2, xq)
    assert two.coeff(x=1, q=1) == 2
    # a horizontal domino in either row; two stacked cells weigh x q^2
    assert two.coeff(x=2, q=2) == 2
    assert two.coeff(x=1, q=2) == 1
    for n in range(1, 9):
        assert K.series_T0n(n, xq, "sum") == K.series_T0n(n, xq, "quotient")


def test_T0n_intermediate_identity():
    # (1 - x q^n) T_{0,n} = 2 T_{0,n-1} - T_{0,n-2}
    xq = TruncationSpec.of("xq", 12)
    for n in range(2, 10):
        T = K.series_T0n(n, xq)
        lhs = T - T.shift({"x": 1, "q": n})
        assert lhs == K.series_T0n(n - 1, xq).scale(2) - K.series_T0n(n - 2, xq)


def test_P1():
    P1 = K.series_P1(TruncationSpec.of("uxyq", 8))
    assert P1.coeff(u=1, x=1, y=1, q=1) == 1
    assert P1.coeff(u=2, x=2, y=1, q=2) == 1
    assert P1.coeff(u=3, x=3, y=2, q=4) == 1


def test_TS():
    spec = TruncationSpec.of("uxyq", 20, x=8, y=7)
    TS = K.series_TS_iter(spec)
    assert TS.coeff(u=1, x=1, y=1, q=1) == 1
    assert TS.coeff(u=2, x=8, y=7, q=20) >= 1
    assert TS == K.series_TS_closed(spec)


def test_TS_cap_on_u_is_safe():
    full = K.series_TS_iter(TruncationSpec.of("uxyq", 20, x=8, y=7))
    capped = TruncationSpec.of("uxyq", 20, u=2, x=8, y=7)
    assert K.series_TS_iter(capped) == full.truncate(capped)


def test_TS_routes_qmax14():
    spec = TruncationSpec.of("uxyq", 14)
    assert K.series_TS_iter(spec) == K.series_TS_closed(spec)


def test_D():
    D = K.series_D(TruncationSpec.of("sxyq", 6))
    assert D.coeff(s=1, x=1, y=1, q=1) == 1
    assert qsum(D, 2) == 2
    assert qsum(D, 3) == 5


def test_D_from_Y1():
    # [z] Y1(v, x, y, z, q) is the directed convex series with v marking the bottom row
    spec = TruncationSpec.of("vxyzq", 9)
    Y1 = S.series_Y1(spec)
    D = K.series_D(TruncationSpec.of("sxyq", 9))
    # reflecting in the diagonal swaps width and height and first column with bottom row
    want = D.rename({"s": "v", "x": "y", "y": "x"})
    assert coeff_extract(Y1, "z", 1) == want.embed(want.spec).truncate(want.spec)


def test_C():
    C = K.series_C(XYQ)
    assert [qsum(C, n) for n in (1, 4)] == [1, 19]
    assert C.coeff(x=1, y=1, q=1) == 1
    C10 = K.series_C(TruncationSpec.of("tq", 10))
    assert qsum(C10, 10) == 9312
    per8 = K.series_C(TruncationSpec.of("tq", 4, t=4))
    assert sum(c for e, c in per8.terms() if e["t"] == 4) == 7


def test_C_routes():
    spec = TruncationSpec.of("xyq", 7)
    assert K.series_C(spec, "derivative") == K.series_C(spec)


@pytest.mark.parametrize("cls,build", [("P", K.series_P), ("PS", K.series_PS), ("T", K.series_T),
                                       ("C", K.series_C)])
def test_against_oracle(cls, build):
    spec = TruncationSpec.of("xyq", 8)
    assert build(spec) == oracle_series(cls, spec)


def test_D_against_oracle():
    spec = TruncationSpec.of("sxyq", 8)
    assert K.series_D(spec) == oracle_series("D", spec)


def test_nonnegative():
    for build, vars in ((K.series_P, "xyq"), (K.series_PS, "xyq"), (K.series_T, "xyq"),
                        (K.series_TS_iter, "uxyq"), (K.series_D, "sxyq"), (K.series_C, "xyq"),
                        (K.series_P1, "uxyq")):
        assert build(TruncationSpec.of(vars, 9)).is_nonnegative()
