"""Gaussian binomials and a few shared q-helpers."""

from __future__ import annotations

from functools import lru_cache

from .qseries import (ExpVec, NegativeFinalExponent, Series, TruncationSpec, invert,
                      make_monomial, mul, pochhammer)

Q_ONLY = ("q",)


def q_spec(qmax: int) -> TruncationSpec:
    return TruncationSpec(Q_ONLY, qmax)


@lru_cache(maxsize=None)
def _qbinom_coeffs(n: int, k: int) -> tuple:
    """Coefficient list of [n k]_q from [n k] = [n-1 k-1] + q^k [n-1 k]."""
    if k < 0 or k > n:
        return ()
    if k == 0 or k == n:
        return (1,)
    a = _qbinom_coeffs(n - 1, k - 1)
    b = _qbinom_coeffs(n - 1, k)
    out = [0] * (k * (n - k) + 1)
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i + k] += c
    return tuple(out)


def qbinomial(n: int, k: int, spec: TruncationSpec | None = None) -> Series:
    """The Gaussian polynomial [n k]_q, truncated to ``spec``.

    Without a spec the full polynomial is returned (qmax = its degree).
    """
    coeffs = _qbinom_coeffs(n, k)
    if spec is None:
        spec = q_spec(max(len(coeffs) - 1, 0))
    return Series.from_terms(spec, (({"q": i}, c) for i, c in enumerate(coeffs) if c))


def qbinomial_quotient(n: int, k: int, spec: TruncationSpec) -> Series:
    """[n k]_q as (q)_n / ((q)_k (q)_{n-k}); kept as an independent check."""
    if k < 0 or k > n:
        return Series.zero(spec)
    q = Series.var("q", spec)
    num = pochhammer(q, n)
    den = mul(pochhammer(q, k), pochhammer(q, n - k))
    return mul(num, invert(den))


def qbinomial_substituted(n: int, k: int, base: ExpVec, spec: TruncationSpec,
                          prefactor: ExpVec | None = None) -> Series:
    """[n k] with q replaced by the monomial ``base``, times ``prefactor``.

    ``base`` may carry a negative q-power provided the prefactor compensates;
    negative final exponents raise NegativeFinalExponent.
    """
    coeffs = _qbinom_coeffs(n, k)
    pre = dict(prefactor or {})
    terms = []
    for i, c in enumerate(coeffs):
        if not c:
            continue
        e = {v: pre.get(v, 0) + i * base.get(v, 0) for v in set(pre) | set(base)}
        terms.append((e, c))
    acc = Series.zero(spec)
    for e, c in terms:
        if e.get("q", 0) < 0:
            raise NegativeFinalExponent(f"q-exponent {e['q']} after substitution")
        acc = acc + make_monomial(c, e, spec)
    return acc


def q_int(n: int, spec: TruncationSpec) -> Series:
    """1 + q + ... + q^(n-1)."""
    return Series.from_terms(spec, (({"q": i}, 1) for i in range(n)))


def eval_q1(a: Series) -> int:
    """Sum of coefficients of a polynomial in q (its value at q = 1)."""
    return a.total()


def poly_in_q(a: Series) -> list[int]:
    """Dense coefficient list of a q-only series."""
    n = (a.max_exponent("q") or 0) + 1
    return [a.coeff(q=i) for i in range(n)] if a else []
