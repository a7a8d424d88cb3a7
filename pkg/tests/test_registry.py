import pytest

from polysym import registry


@pytest.mark.parametrize("cid", [c for c in registry.CLASSES if c not in ("rotation", "congruence")])
def test_cap_equals_truncated_uncapped(cid):
    info = registry.get(cid)
    qmax = 9
    loose = info.spec(qmax, cap=qmax)
    tight = info.spec(qmax, cap=3)
    assert info.build(tight) == info.build(loose).truncate(tight)


def test_unknown_class_and_vars():
    with pytest.raises(KeyError):
        registry.get("Q")
    with pytest.raises(ValueError):
        registry.get("Fr").spec(5, vars="xyq")


def test_alt_vars_agree_after_setting_t():
    # P in (t, q) is P(t, t, q)
    a = registry.series("P", 8, vars="tq")
    b = registry.series("P", 8)
    total = lambda s, n: sum(c for e, c in s.terms() if e["q"] == n)  # noqa: E731
    assert [total(a, n) for n in range(9)] == [total(b, n) for n in range(9)]
