from math import comb

import pytest

from polysym.qfun import (eval_q1, poly_in_q, q_spec, qbinomial, qbinomial_quotient,
                          qbinomial_substituted)
from polysym.qseries import NegativeFinalExponent, mul


def test_examples():
    assert poly_in_q(qbinomial(5, 0)) == [1]
    assert poly_in_q(qbinomial(2, 1)) == [1, 1]
    assert poly_in_q(qbinomial(4, 2)) == [1, 1, 2, 1, 1]


def test_substituted_examples():
    sp = q_spec(8)
    assert poly_in_q(qbinomial_substituted(2, 1, {"q": 4}, sp)) == [1, 0, 0, 0, 1]
    assert poly_in_q(qbinomial_substituted(1, 1, {"q": -4}, sp, prefactor={"q": 4})) == [0, 0, 0, 0, 1]
    assert poly_in_q(qbinomial_substituted(3, 1, {"q": 2}, sp)) == [1, 0, 1, 0, 1]
    with pytest.raises(NegativeFinalExponent):
        qbinomial_substituted(2, 1, {"q": -4}, sp)


def test_lattice_paths_2x2():
    # area under each of the six monotone paths in a 2 x 2 box
    from itertools import combinations
    areas = []
    for ups in combinations(range(4), 2):
        h, area = 0, 0
        for i in range(4):
            if i in ups:
                h += 1
            else:
                area += h
        areas.append(area)
    assert poly_in_q(qbinomial(4, 2)) == [areas.count(a) for a in range(5)]


@pytest.mark.parametrize("n", range(13))
def test_symmetry_value_degree(n):
    for k in range(n + 1):
        p = qbinomial(n, k)
        assert p == qbinomial(n, n - k)
        assert eval_q1(p) == comb(n, k)
        assert p.max_exponent("q") == k * (n - k)


def test_quotient_route():
    sp = q_spec(20)
    for n in range(9):
        for k in range(n + 1):
            assert qbinomial_quotient(n, k, sp) == qbinomial(n, k, sp)


def test_q_vandermonde():
    sp = q_spec(60)
    for m in range(6):
        for n in range(6):
            for k in range(m + n + 1):
                rhs = qbinomial(0, 1, sp)
                for j in range(k + 1):
                    rhs = rhs + mul(qbinomial(m, j, sp), qbinomial(n, k - j, sp)).shift(
                        {"q": (m - j) * (k - j)}) if j <= m and k - j <= n else rhs
                assert qbinomial(m + n, k, sp) == rhs
