import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from polysym.qseries import (InexactDivision, InvalidExponent, NegativeFinalExponent, NotInvertible,
                             Series, SpecMismatch, TruncationSpec, add, coeff_extract, derivative,
                             divide_exact, eval_at_one, from_json, from_text, invert, make_monomial,
                             mul, pochhammer, substitute, substitute_graded, to_json)

TQ = TruncationSpec.of("tq", 10)


def S(text, spec=TQ):
    return from_text(text, spec)


def test_make_monomial():
    assert make_monomial(1, {"t": 2, "q": 1}, TQ).to_text() == "t^2*q"
    assert make_monomial(1, {"q": 11}, TQ).is_zero()
    with pytest.raises(InvalidExponent):
        make_monomial(1, {"q": -1}, TQ)


def test_add():
    assert add(S("q + q^2"), S("1 - q")) == S("1 + q^2")
    s = S("3*t*q + q^5")
    assert add(s, Series.zero(TQ)) == s
    with pytest.raises(SpecMismatch):
        add(Series.one(TruncationSpec.of("q", 5)), Series.one(TruncationSpec.of("q", 6)))


def test_mul():
    assert mul(S("1 + q"), S("1 - q")) == S("1 - q^2")
    assert mul(S("t^2*q"), S("t^4*q^4")) == S("t^6*q^5")
    assert mul(S("q^6"), S("q^5")).is_zero()


def test_invert():
    sp = TruncationSpec.of("q", 3)
    assert invert(S("1 - q", sp)) == S("1 + q + q^2 + q^3", sp)
    sp = TruncationSpec.of("xq", 2)
    assert invert(S("1 - x*q", sp)) == S("1 + x*q + x^2*q^2", sp)
    with pytest.raises(NotInvertible):
        invert(S("1 - x", TruncationSpec.of("xq", 4)))


def test_pochhammer():
    sp = TruncationSpec.of("yq", 6)
    yq = S("y*q", sp)
    assert pochhammer(yq, 2) == mul(S("1 - y*q", sp), S("1 - y*q^2", sp))
    assert pochhammer(-yq, 1) == S("1 + y*q", sp)
    assert pochhammer(yq, 0) == Series.one(sp)


def test_derivative():
    sp = TruncationSpec.of("xsq", 5)
    assert derivative(S("s^2*q", sp), "s") == S("2*s*q", sp)
    assert derivative(S("x*q", sp), "s").is_zero()
    assert derivative(S("s^3 + s", sp), "s") == S("3*s^2 + 1", sp)


def test_substitute():
    a = S("x^2*y^3*q^5", TruncationSpec.of("xyq", 10))
    out = substitute(a, {"x": (1, {"t": 2}), "y": (1, {"t": 1, "q": -1}), "q": (1, {"q": 2})}, TQ)
    assert out == S("t^7*q^7")
    sp = TruncationSpec.of("xyq", 4)
    assert substitute(S("x*y*q", sp), {}, sp) == S("x*y*q", sp)
    with pytest.raises(NegativeFinalExponent):
        substitute(S("y", sp), {"y": (1, {"q": -1})}, sp)


def test_substitute_graded():
    sp = TruncationSpec.of("xyq", 10)
    out_spec = TruncationSpec.of("txq", 10)
    f = lambda m: (1, {"t": 2 * m, "q": m * m})  # noqa: E731
    assert substitute_graded(S("y^2", sp), "y", f, out_spec) == S("t^4*q^4", out_spec)
    assert substitute_graded(S("1", sp), "y", f, out_spec) == Series.one(out_spec)
    assert substitute_graded(S("x*y", sp), "y", f, out_spec) == S("t^2*x*q", out_spec)


def test_coeff_extract():
    sp = TruncationSpec.of("xyq", 5)
    assert coeff_extract(S("x*y*q + x*y^2*q^2", sp), "y", 1) == S("x*q", sp.without("y"))
    assert coeff_extract(S("1 + y*q", sp), "y", 0) == Series.one(sp.without("y"))
    sp = TruncationSpec.of("sq", 5)
    assert coeff_extract(S("s^2*q", sp), "s", 3).is_zero()


def test_eval_at_one():
    sp = TruncationSpec.of("sq", 5)
    assert eval_at_one(S("s^2*q + s*q", sp), "s") == S("2*q", sp.without("s"))
    assert eval_at_one(S("1 + s", sp), "s") == S("2", sp.without("s"))
    assert eval_at_one(Series.zero(sp), "s").is_zero()


def test_divide_exact():
    sp = TruncationSpec.of("q", 5)
    assert divide_exact(S("1 - q^2", sp), S("1 + q", sp)) == S("1 - q", sp)
    assert divide_exact(S("2*t^2*q"), S("2")) == S("t^2*q")
    with pytest.raises(InexactDivision):
        divide_exact(S("1 + q^2", sp), S("1 + q", sp))
    with pytest.raises(InexactDivision):
        divide_exact(S("3*t*q"), S("2"))


def test_text_and_json_roundtrip():
    s = S("8*t^5*q^4 - 3*t^6*q^7 + 1")
    assert s.to_text() == "1 + 8*t^5*q^4 - 3*t^6*q^7"
    assert from_text(s.to_text(), TQ) == s
    assert from_json(to_json(s)) == s
    obj = json.loads(to_json(s))
    assert obj["vars"] == ["t", "q"] and obj["qmax"] == 10


def test_spec_equality_covers_caps():
    assert TruncationSpec.of("tq", 5) != TruncationSpec.of("tq", 5, t=3)
    assert TruncationSpec.of("qt", 5) == TruncationSpec.of("tq", 5)


# ---------------------------------------------------------------- properties

SPEC = TruncationSpec.of("xyq", 6, x=4)

terms = st.lists(st.tuples(st.integers(0, 3), st.integers(0, 2), st.integers(0, 6),
                           st.integers(-5, 5)), max_size=6)


@st.composite
def series(draw, unit=False):
    acc = Series.zero(SPEC)
    for x, y, q, c in draw(terms):
        acc = acc + make_monomial(c, {"x": x, "y": y, "q": q}, SPEC)
    if unit:
        # q^0 terms must be nilpotent under the caps, so only x (capped) may appear there
        acc = Series.from_terms(SPEC, ((e, c) for e, c in acc.terms()
                                       if e.get("q", 0) or (e.get("x", 0) and not e.get("y", 0))))
        acc = acc + Series.one(SPEC)
    return acc


@given(series(), series(), series())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert mul(a, b) == mul(b, a)
    assert (a + b) + c == a + (b + c)
    assert mul(mul(a, b), c) == mul(a, mul(b, c))
    assert mul(a, b + c) == mul(a, b) + mul(a, c)


@given(series(unit=True))
def test_invert_is_inverse(a):
    assert mul(invert(a), a) == Series.one(SPEC)


@given(series(), series())
def test_derivative_product_rule(a, b):
    assert derivative(a + b, "x") == derivative(a, "x") + derivative(b, "x")
    # y carries no cap, so the rule holds exactly there
    assert derivative(mul(a, b), "y") == mul(derivative(a, "y"), b) + mul(a, derivative(b, "y"))
    # d/dq loses the q^(qmax+1) term of the product, so compare one degree lower
    low = SPEC.replace(qmax=SPEC.qmax - 1)
    lhs = derivative(mul(a, b), "q").truncate(low)
    assert lhs == (mul(derivative(a, "q"), b) + mul(a, derivative(b, "q"))).truncate(low)


@given(series())
def test_identity_substitution(a):
    assert substitute(a, {}, SPEC) == a


@given(series())
def test_coeff_extract_reassembles(a):
    back = Series.zero(SPEC)
    for k in range(5):
        back = back + mul(coeff_extract(a, "x", k).embed(SPEC), make_monomial(1, {"x": k}, SPEC))
    assert back == a


@given(series())
def test_text_roundtrip(a):
    assert from_text(a.to_text(), SPEC) == a
    assert from_json(to_json(a)) == a
