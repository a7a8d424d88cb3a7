import pytest

from polysym.group import G, Subgroup, compose, inverse, mobius, mobius_interval


def test_group_axioms():
    for a in G:
        assert compose(a, inverse(a)) is G.ID
        for b in G:
            for c in G:
                assert compose(compose(a, b), c) is compose(a, compose(b, c))


def test_conventions():
    # quarter turn counter-clockwise; d1 reflects in y = -x, d2 in y = x
    assert G.R.apply(1, 0) == (0, 1)
    assert G.D1.apply(1, 0) == (0, -1)
    assert G.D2.apply(1, 0) == (0, 1)
    assert G.R * G.R is G.R2


def test_subgroups_closed():
    assert len(Subgroup) == 10
    for H in Subgroup:
        els = H.elements
        assert all(compose(a, b) in els for a in els for b in els)
        assert len(els) == H.order


@pytest.mark.parametrize("H,mu", [
    (Subgroup.TRIVIAL, 1), (Subgroup.R2, -1), (Subgroup.H, -1), (Subgroup.V, -1),
    (Subgroup.D1, -1), (Subgroup.D2, -1), (Subgroup.C4, 0), (Subgroup.HV, 2),
    (Subgroup.D1D2, 2), (Subgroup.D4, 0)])
def test_mobius_values(H, mu):
    assert mobius(H) == mu


def test_mobius_interval_sums_to_zero():
    for lo in Subgroup:
        for hi in Subgroup:
            if lo <= hi and lo is not hi:
                assert sum(mobius_interval(lo, K) for K in Subgroup if lo <= K <= hi) == 0
