"""Exact sparse multivariate truncated Laurent series.

A :class:`Series` stores, for every exponent vector of the non-``q``
variables, a dense tuple of integer coefficients in ``q`` starting at
``q^0``.  Truncation is by ``q``-degree (mandatory) plus optional upper caps
on the other variables.  Coefficients are Python integers; nothing here ever
touches floating point.

Products pack each ``q``-polynomial into one big integer (Kronecker
substitution) so that the inner convolution is a single bigint multiply.
"""

from __future__ import annotations

import json
import re
import os
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Mapping, Union

VARS = ("t", "x", "y", "q", "s", "u", "v", "z", "w")
_ORDER = {v: i for i, v in enumerate(VARS)}

DEBUG = os.environ.get("POLYSYM_DEBUG", "") not in ("", "0")


class QSeriesError(ValueError):
    pass


class InvalidExponent(QSeriesError):
    pass


class SpecMismatch(QSeriesError):
    pass


class NotInvertible(QSeriesError):
    pass


class NegativeFinalExponent(QSeriesError):
    pass


class InexactDivision(QSeriesError):
    pass


def _canon_vars(vars: Iterable[str]) -> tuple[str, ...]:
    vs = set(vars)
    vs.add("q")
    bad = vs - set(VARS)
    if bad:
        raise ValueError(f"unknown variables {sorted(bad)}")
    return tuple(sorted(vs, key=_ORDER.__getitem__))


@dataclass(frozen=True)
class TruncationSpec:
    """Active variables, ``q``-cap and optional per-variable upper caps."""

    vars: tuple[str, ...]
    qmax: int
    caps: tuple[tuple[str, int], ...] = ()
    others: tuple[str, ...] = field(init=False, repr=False, compare=False)
    _capidx: tuple[tuple[int, int], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        vars = _canon_vars(self.vars)
        object.__setattr__(self, "vars", vars)
        if self.qmax < 0:
            raise ValueError("qmax must be >= 0")
        caps = dict(self.caps)
        for v, c in caps.items():
            if v not in vars or v == "q":
                raise ValueError(f"cap on inactive or q variable {v!r}")
            if c < 0:
                raise ValueError("caps must be >= 0")
        caps_t = tuple(sorted(caps.items(), key=lambda kv: _ORDER[kv[0]]))
        object.__setattr__(self, "caps", caps_t)
        others = tuple(v for v in vars if v != "q")
        object.__setattr__(self, "others", others)
        object.__setattr__(self, "_capidx", tuple((others.index(v), c) for v, c in caps_t))

    @classmethod
    def of(cls, vars: Union[str, Iterable[str]], qmax: int, **caps: int) -> "TruncationSpec":
        return cls(tuple(vars), qmax, tuple(caps.items()))

    def cap(self, var: str):
        return dict(self.caps).get(var)

    def replace(self, *, vars=None, qmax=None, caps=None) -> "TruncationSpec":
        vars = self.vars if vars is None else tuple(vars)
        qmax = self.qmax if qmax is None else qmax
        caps = dict(self.caps) if caps is None else dict(caps)
        vs = _canon_vars(vars)
        caps = {k: c for k, c in caps.items() if k in vs and k != "q"}
        return TruncationSpec(vs, qmax, tuple(caps.items()))

    def without(self, var: str) -> "TruncationSpec":
        if var == "q":
            raise ValueError("q cannot be removed")
        return self.replace(vars=[v for v in self.vars if v != var])

    def key_ok(self, key: tuple[int, ...]) -> bool:
        for i, c in self._capidx:
            if key[i] > c:
                return False
        return True

    @property
    def hard_bound(self) -> int:
        return max([4 * self.qmax, 1] + [c for _, c in self.caps])


ExpVec = Mapping[str, int]
Monomial = tuple  # (coefficient, ExpVec)


# --------------------------------------------------------------------------
# raw term-dict helpers; a term dict maps key -> tuple of q-coefficients


def _trim(p):
    n = len(p)
    while n and not p[n - 1]:
        n -= 1
    return tuple(p[:n])


def _val(p) -> int:
    for i, c in enumerate(p):
        if c:
            return i
    return len(p)


def _add_into(acc: dict, key, p, sign=1):
    old = acc.get(key)
    if old is None:
        acc[key] = tuple(p) if sign == 1 else tuple(-c for c in p)
        return
    n = max(len(old), len(p))
    new = [0] * n
    for i, c in enumerate(old):
        new[i] = c
    if sign == 1:
        for i, c in enumerate(p):
            new[i] += c
    else:
        for i, c in enumerate(p):
            new[i] -= c
    new = _trim(new)
    if new:
        acc[key] = new
    else:
        del acc[key]


def _pack(p, B: int) -> int:
    P = 0
    for c in reversed(p):
        P = (P << B) + c
    return P


_OFFSETS: dict = {}


def _unpack(P: int, B: int, n: int):
    """Signed base-2^B digits 0..n-1 of ``P``; digits must satisfy |d| < 2^(B-2)."""
    M = 1 << (B * n)
    half = M >> 1
    low = ((P + half) & (M - 1)) - half
    if low == 0:
        return ()
    off = _OFFSETS.get((B, n))
    if off is None:
        off = ((M - 1) // ((1 << B) - 1)) << (B - 1)
        _OFFSETS[(B, n)] = off
    nb = B // 8
    raw = (low + off).to_bytes(nb * n, "little")
    bias = 1 << (B - 1)
    fb = int.from_bytes
    return _trim([fb(raw[i:i + nb], "little") - bias for i in range(0, nb * n, nb)])


def _l1(t: dict) -> int:
    return sum(abs(c) for p in t.values() for c in p)


def _linf(t: dict) -> int:
    return max((abs(c) for p in t.values() for c in p), default=0)


def _as_monomial(t: dict):
    if len(t) != 1:
        return None
    (k, p), = t.items()
    v = _val(p)
    if v != len(p) - 1:
        return None
    return k, v, p[v]


def _shift(t: dict, key, qs: int, c: int, spec: TruncationSpec, qmax: int) -> dict:
    out = {}
    ok = spec.key_ok
    for k, p in t.items():
        nk = tuple(a + b for a, b in zip(k, key))
        if not ok(nk):
            continue
        if qs >= 0:
            np_ = (0,) * qs + tuple(c * x for x in p)
        else:
            if any(p[:-qs]):
                raise NegativeFinalExponent("negative q-exponent after shift")
            np_ = tuple(c * x for x in p[-qs:])
        np_ = _trim(np_[: qmax + 1])
        if np_:
            out[nk] = np_
    return out


def _mul(ta: dict, tb: dict, spec: TruncationSpec, qmax: int) -> dict:
    if not ta or not tb:
        return {}
    m = _as_monomial(tb)
    if m is not None:
        return _shift(ta, m[0], m[1], m[2], spec, qmax)
    m = _as_monomial(ta)
    if m is not None:
        return _shift(tb, m[0], m[1], m[2], spec, qmax)
    if len(ta) < len(tb):
        ta, tb = tb, ta
    bound = _l1(tb) * _linf(ta)
    B = -(-(bound.bit_length() + 2) // 8) * 8
    pb = []
    for kb, p in tb.items():
        v = _val(p)
        if v <= qmax:
            pb.append((v, kb, _pack(p[: qmax + 1], B)))
    pb.sort(key=lambda e: e[0])
    capped = bool(spec._capidx)
    ok = spec.key_ok
    acc: dict = {}
    get = acc.get
    for ka, p in ta.items():
        va = _val(p)
        if va > qmax:
            continue
        Pa = _pack(p[: qmax + 1], B)
        lim = qmax - va
        for vb, kb, Pb in pb:
            if vb > lim:
                break
            k = tuple([a + b for a, b in zip(ka, kb)])
            if capped and not ok(k):
                continue
            acc[k] = get(k, 0) + Pa * Pb
    out = {}
    n = qmax + 1
    for k, P in acc.items():
        p = _unpack(P, B, n)
        if p:
            out[k] = p
    return out


# --------------------------------------------------------------------------


class Series:
    """Immutable truncated series; see module docstring."""

    __slots__ = ("spec", "_t")

    def __init__(self, spec: TruncationSpec, terms: dict | None = None):
        self.spec = spec
        self._t = terms if terms is not None else {}
        if DEBUG:
            _check(self)

    # construction -------------------------------------------------------
    @classmethod
    def zero(cls, spec: TruncationSpec) -> "Series":
        return cls(spec)

    @classmethod
    def one(cls, spec: TruncationSpec) -> "Series":
        return make_monomial(1, {}, spec)

    @classmethod
    def const(cls, c: int, spec: TruncationSpec) -> "Series":
        return make_monomial(c, {}, spec)

    @classmethod
    def var(cls, name: str, spec: TruncationSpec) -> "Series":
        return make_monomial(1, {name: 1}, spec)

    @classmethod
    def from_terms(cls, spec: TruncationSpec, terms: Iterable[tuple[ExpVec, int]]) -> "Series":
        acc: dict = {}
        for e, c in terms:
            s = make_monomial(c, e, spec)
            for k, p in s._t.items():
                _add_into(acc, k, p)
        return cls(spec, acc)

    # inspection ---------------------------------------------------------
    def __len__(self) -> int:
        return sum(1 for p in self._t.values() for c in p if c)

    def __bool__(self) -> bool:
        return bool(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def terms(self) -> Iterator[tuple[dict, int]]:
        """(exponent dict, coefficient) pairs in canonical order."""
        others = self.spec.others
        qi = self.spec.vars.index("q")
        rows = []
        for k, p in self._t.items():
            for j, c in enumerate(p):
                if c:
                    full = list(k)
                    full.insert(qi, j)
                    rows.append((tuple(full), c))
        rows.sort()
        names = self.spec.vars
        for full, c in rows:
            yield {n: e for n, e in zip(names, full) if e}, c
        del others

    def coeff(self, exps: ExpVec | None = None, **kw: int) -> int:
        e = dict(exps or {}, **kw)
        for v in e:
            if v not in self.spec.vars:
                return 0 if e[v] else self.coeff({k: x for k, x in e.items() if k != v})
        key = tuple(e.get(v, 0) for v in self.spec.others)
        p = self._t.get(key, ())
        j = e.get("q", 0)
        return p[j] if 0 <= j < len(p) else 0

    def total(self) -> int:
        return sum(c for p in self._t.values() for c in p)

    def min_exponent(self, var: str) -> int | None:
        if var == "q":
            return min((_val(p) for p in self._t.values()), default=None)
        i = self.spec.others.index(var)
        return min((k[i] for k in self._t), default=None)

    def max_exponent(self, var: str) -> int | None:
        if var == "q":
            return max((len(p) - 1 for p in self._t.values()), default=None)
        i = self.spec.others.index(var)
        return max((k[i] for k in self._t), default=None)

    def is_nonnegative(self) -> bool:
        """All exponents and all coefficients are >= 0."""
        return all(e >= 0 for k in self._t for e in k) and all(
            c >= 0 for p in self._t.values() for c in p)

    def assert_power_series(self, what: str = "series") -> "Series":
        for k in self._t:
            if any(e < 0 for e in k):
                raise NegativeFinalExponent(f"{what}: negative exponent {dict(zip(self.spec.others, k))}")
        return self

    # arithmetic ---------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            other = Series.const(other, self.spec)
        if not isinstance(other, Series):
            return NotImplemented
        return self.spec == other.spec and self._t == other._t

    def __hash__(self):
        return hash((self.spec, frozenset(self._t.items())))

    def _coerce(self, other) -> "Series":
        if isinstance(other, int):
            return Series.const(other, self.spec)
        if not isinstance(other, Series):
            raise TypeError(type(other))
        if other.spec != self.spec:
            raise SpecMismatch(f"{self.spec} vs {other.spec}")
        return other

    def __add__(self, other):
        return add(self, self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return sub(self, self._coerce(other))

    def __rsub__(self, other):
        return sub(self._coerce(other), self)

    def __neg__(self):
        return Series(self.spec, {k: tuple(-c for c in p) for k, p in self._t.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return mul(self, self._coerce(other))

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, n: int):
        if n < 0:
            return invert(self) ** (-n)
        result = Series.one(self.spec)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c: int) -> "Series":
        if c == 0:
            return Series(self.spec)
        return Series(self.spec, {k: tuple(c * x for x in p) for k, p in self._t.items()})

    def shift(self, exps: ExpVec, c: int = 1) -> "Series":
        """Multiply by the monomial ``c * prod v^e``; q-exponent may be negative."""
        key = tuple(exps.get(v, 0) for v in self.spec.others)
        return Series(self.spec, _shift(self._t, key, exps.get("q", 0), c, self.spec, self.spec.qmax))

    # misc ----------------------------------------------------------------
    def truncate(self, spec: TruncationSpec) -> "Series":
        """Re-truncate to ``spec`` (same variables, smaller or equal caps)."""
        if spec.vars != self.spec.vars:
            raise SpecMismatch("truncate requires the same variable set")
        out = {}
        for k, p in self._t.items():
            if spec.key_ok(k):
                p = _trim(p[: spec.qmax + 1])
                if p:
                    out[k] = p
        return Series(spec, out)

    def embed(self, spec: TruncationSpec) -> "Series":
        """View in a spec with a superset of variables (extra ones at exponent 0)."""
        if not set(self.spec.vars) <= set(spec.vars):
            raise SpecMismatch("embed requires a superset of variables")
        idx = [self.spec.others.index(v) if v in self.spec.others else None for v in spec.others]
        out = {}
        for k, p in self._t.items():
            nk = tuple(k[i] if i is not None else 0 for i in idx)
            if spec.key_ok(nk):
                p = _trim(p[: spec.qmax + 1])
                if p:
                    out[nk] = p
        return Series(spec, out)

    def rename(self, mapping: Mapping[str, str], spec: TruncationSpec | None = None) -> "Series":
        """Rename variables (a permutation/relabelling of exponent slots)."""
        images = {v: (1, {mapping.get(v, v): 1}) for v in self.spec.others}
        if spec is None:
            spec = self.spec.replace(vars=[mapping.get(v, v) for v in self.spec.vars],
                                     caps={mapping.get(v, v): c for v, c in self.spec.caps})
        return substitute(self, images, spec, allow_laurent=True)

    def to_text(self) -> str:
        return to_text(self)

    def __str__(self):
        return to_text(self)

    def __repr__(self):
        return f"Series({to_text(self)!s}; qmax={self.spec.qmax})"


def _check(a: Series) -> None:
    spec = a.spec
    hb = spec.hard_bound
    n = len(spec.others)
    for k, p in a._t.items():
        assert len(k) == n, "key length"
        assert p and p[-1] != 0, "untrimmed or empty coefficient tuple"
        assert len(p) <= spec.qmax + 1, "q-degree beyond qmax"
        assert spec.key_ok(k), "cap violated"
        assert all(abs(e) <= hb for e in k), "exponent beyond hard bound"


# --------------------------------------------------------------------------
# public operations


def _key_of(e: ExpVec, spec: TruncationSpec):
    for v in e:
        if v not in spec.vars:
            if e[v]:
                raise InvalidExponent(f"variable {v!r} not active in spec")
    return tuple(int(e.get(v, 0)) for v in spec.others), int(e.get("q", 0))


def make_monomial(c: int, e: ExpVec, spec: TruncationSpec) -> Series:
    key, qe = _key_of(e, spec)
    if qe < 0:
        raise InvalidExponent("q-exponent must be >= 0")
    if c == 0 or qe > spec.qmax or not spec.key_ok(key):
        return Series(spec)
    return Series(spec, {key: (0,) * qe + (int(c),)})


def add(a: Series, b: Series) -> Series:
    if a.spec != b.spec:
        raise SpecMismatch(f"{a.spec} vs {b.spec}")
    acc = dict(a._t)
    for k, p in b._t.items():
        _add_into(acc, k, p)
    return Series(a.spec, acc)


def sub(a: Series, b: Series) -> Series:
    if a.spec != b.spec:
        raise SpecMismatch(f"{a.spec} vs {b.spec}")
    acc = dict(a._t)
    for k, p in b._t.items():
        _add_into(acc, k, p, -1)
    return Series(a.spec, acc)


def mul(a: Series, b: Series) -> Series:
    if a.spec != b.spec:
        raise SpecMismatch(f"{a.spec} vs {b.spec}")
    return Series(a.spec, _mul(a._t, b._t, a.spec, a.spec.qmax))


def product(factors: Iterable[Series], spec: TruncationSpec) -> Series:
    out = Series.one(spec)
    for f in factors:
        out = mul(out, f)
    return out


def _nilpotent_key(k, spec: TruncationSpec) -> bool:
    if any(e < 0 for e in k):
        return False
    return any(k[i] > 0 for i, _ in spec._capidx)


def invert(a: Series) -> Series:
    """Multiplicative inverse; requires a unit constant term.

    Non-constant ``q^0`` terms are accepted only when they are nilpotent under
    the variable caps (e.g. ``1 - y`` with a cap on ``y``).
    """
    spec = a.spec
    zk = (0,) * len(spec.others)
    p0 = a._t.get(zk, ())
    c0 = p0[0] if p0 else 0
    if c0 not in (1, -1):
        raise NotInvertible("constant term is not a unit")
    q0 = {}
    for k, p in a._t.items():
        if k != zk and p[0]:
            if not _nilpotent_key(k, spec):
                raise NotInvertible("non-constant q^0 term: expansion would not terminate")
            q0[k] = (p[0],)
    # inverse of the q^0 part: c0 * sum_j n^j with n = -c0 * (nilpotent part)
    x = {zk: (c0,)}
    if q0:
        n = {k: (-c0 * p[0],) for k, p in q0.items()}
        term = {zk: (1,)}
        acc = {zk: (1,)}
        while True:
            term = _mul(term, n, spec, 0)
            if not term:
                break
            for k, p in term.items():
                _add_into(acc, k, p)
        x = {k: tuple(c0 * c for c in p) for k, p in acc.items()}
    prec = 1
    qmax = spec.qmax
    while prec < qmax + 1:
        prec = min(2 * prec, qmax + 1)
        qm = prec - 1
        ax = _mul(a._t, x, spec, qm)
        e = {}
        for k, p in ax.items():
            _add_into(e, k, p, -1)
        _add_into(e, zk, (1,))
        corr = _mul(x, e, spec, qm)
        for k, p in corr.items():
            _add_into(x, k, p)
    return Series(spec, x)


def pochhammer(a: Series, n: int) -> Series:
    """(a; q)_n = prod_{k<n} (1 - a q^k)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    spec = a.spec
    out = Series.one(spec)
    one = Series.one(spec)
    for k in range(n):
        out = mul(out, sub(one, a.shift({"q": k})))
    return out


def _check_contracting(P: Series) -> None:
    for k, p in P._t.items():
        if p[0] and not _nilpotent_key(k, P.spec):
            raise NotInvertible("1 - P with a q^0 term in P that is not nilpotent")


def mul_one_minus(h: Series, P: Series) -> Series:
    """h * (1 - P)."""
    return sub(h, mul(h, P))


def div_one_minus(h: Series, P: Series) -> Series:
    """h / (1 - P) by summing h P^k; P must raise the q-degree or be nilpotent."""
    _check_contracting(P)
    acc = dict(h._t)
    d = h._t
    spec = h.spec
    while True:
        d = _mul(d, P._t, spec, spec.qmax)
        if not d:
            break
        for k, p in d.items():
            _add_into(acc, k, p)
    return Series(spec, acc)


def div_poch(h: Series, base: Series, n: int, start: int = 1) -> Series:
    """h / prod_{k=start}^{start+n-1} (1 - base q^k)."""
    for k in range(start, start + n):
        h = div_one_minus(h, base.shift({"q": k}))
    return h


def mul_poch(h: Series, base: Series, n: int, start: int = 1) -> Series:
    """h * prod_{k=start}^{start+n-1} (1 - base q^k)."""
    for k in range(start, start + n):
        h = mul_one_minus(h, base.shift({"q": k}))
    return h


def derivative(a: Series, v: str) -> Series:
    spec = a.spec
    if v not in spec.vars:
        return Series(spec)
    if v == "q":
        out = {}
        for k, p in a._t.items():
            np_ = _trim([j * c for j, c in enumerate(p)][1:])
            if np_:
                out[k] = np_
        return Series(spec, out)
    i = spec.others.index(v)
    out = {}
    for k, p in a._t.items():
        e = k[i]
        if e == 0:
            continue
        nk = k[:i] + (e - 1,) + k[i + 1:]
        _add_into(out, nk, tuple(e * c for c in p))
    return Series(spec, out)


def coeff_extract(a: Series, v: str, k: int) -> Series:
    spec = a.spec
    out_spec = spec.without(v)
    if v not in spec.others:
        return a.embed(out_spec) if k == 0 else Series(out_spec)
    i = spec.others.index(v)
    out = {}
    for key, p in a._t.items():
        if key[i] == k:
            out[key[:i] + key[i + 1:]] = p
    return Series(out_spec, out)


def eval_at_one(a: Series, v: str) -> Series:
    spec = a.spec
    out_spec = spec.without(v)
    if v not in spec.others:
        return a.embed(out_spec)
    i = spec.others.index(v)
    out: dict = {}
    for key, p in a._t.items():
        _add_into(out, key[:i] + key[i + 1:], p)
    return Series(out_spec, out)


def _image_parts(img, spec_out: TruncationSpec):
    c, e = img
    key, qe = tuple(e.get(v, 0) for v in spec_out.others), e.get("q", 0)
    for v in e:
        if v not in spec_out.vars and e[v]:
            raise SpecMismatch(f"image uses variable {v!r} not in output spec")
    return c, key, qe


def _finish(acc: dict, out_spec: TruncationSpec, allow_laurent: bool) -> Series:
    """acc: (key, qexp) -> coeff.  Truncate, then check exponents."""
    out: dict = {}
    qmax = out_spec.qmax
    ok = out_spec.key_ok
    for (k, qe), c in acc.items():
        if not c or qe > qmax or not ok(k):
            continue
        if qe < 0:
            raise NegativeFinalExponent(f"negative q-exponent {qe}")
        if not allow_laurent and any(e < 0 for e in k):
            raise NegativeFinalExponent(f"negative exponent {dict(zip(out_spec.others, k))}")
        row = out.get(k)
        if row is None:
            row = out[k] = [0] * (qmax + 1)
        row[qe] += c
    res = {}
    for k, row in out.items():
        p = _trim(row)
        if p:
            res[k] = p
    return Series(out_spec, res)


def substitute(a: Series, images: Mapping[str, Monomial], out_spec: TruncationSpec,
               allow_laurent: bool = False) -> Series:
    """Rewrite each exponent vector through monomial images ``v -> (c, ExpVec)``.

    Variables of ``a`` absent from ``images`` map to themselves.  Unless
    ``allow_laurent`` is set, any surviving term with a negative exponent is an
    error; a negative ``q``-exponent is always an error.
    """
    spec = a.spec
    parts = []
    for v in spec.vars:
        img = images.get(v)
        if img is None:
            if v not in out_spec.vars:
                raise SpecMismatch(f"no image for {v!r} and it is not in the output spec")
            img = (1, {v: 1})
        parts.append(_image_parts(img, out_spec))
    qpos = spec.vars.index("q")
    qc, qkey, qq = parts[qpos]
    oparts = parts[:qpos] + parts[qpos + 1:]
    n = len(out_spec.others)
    acc: dict = {}
    for k, p in a._t.items():
        c = 1
        key = [0] * n
        qe = 0
        for e, (ic, ik, iq) in zip(k, oparts):
            if e:
                if e < 0 and ic not in (1, -1):
                    raise InexactDivision("negative power of a non-unit coefficient")
                c *= ic ** e if e > 0 else ic ** (-e)
                for j in range(n):
                    key[j] += e * ik[j]
                qe += e * iq
        for j, cj in enumerate(p):
            if not cj:
                continue
            kk = tuple(key[i] + j * qkey[i] for i in range(n))
            t = (kk, qe + j * qq)
            acc[t] = acc.get(t, 0) + c * cj * qc ** j
    return _finish(acc, out_spec, allow_laurent)


def substitute_graded(a: Series, v: str, f: Callable[[int], Union[Series, Monomial]],
                      out_spec: TruncationSpec, images: Mapping[str, Monomial] | None = None,
                      allow_laurent: bool = False) -> Series:
    """Replace each power ``v^m`` by ``f(m)`` (a Series in out_spec or a monomial).

    The remaining variables are rewritten through ``images`` as in
    :func:`substitute`.
    """
    images = dict(images or {})
    spec = a.spec
    if v not in spec.others:
        raise ValueError(f"{v!r} is not a non-q variable of the input")
    i = spec.others.index(v)
    groups: dict = {}
    for k, p in a._t.items():
        groups.setdefault(k[i], {})[k] = p
    rest_images = dict(images)
    rest_images[v] = (1, {})
    total: dict = {}
    for m in sorted(groups):
        part = Series(spec, groups[m])
        rest = substitute(part, rest_images, out_spec, allow_laurent=True)
        fm = f(m)
        if isinstance(fm, Series):
            if fm.spec != out_spec:
                raise SpecMismatch("graded image must live in the output spec")
            term = mul(rest, fm)
        else:
            c, e = fm
            term = rest.shift(e, c)
        for k, p in term._t.items():
            _add_into(total, k, p)
    res = Series(out_spec, total)
    if not allow_laurent:
        res.assert_power_series("substitute_graded")
    return res


def divide_exact(a: Series, d: Series) -> Series:
    """Exact quotient ``a / d``.

    ``d`` must be a single term (any integer coefficient) or have a unit
    constant term.  In the second case ``a`` is treated as an exact polynomial:
    the quotient times ``d``, computed without truncation, must reproduce ``a``.
    """
    if a.spec != d.spec:
        raise SpecMismatch(f"{a.spec} vs {d.spec}")
    spec = a.spec
    if d.is_zero():
        raise ZeroDivisionError("division by zero series")
    m = _as_monomial(d._t)
    if m is not None:
        key, qs, c = m
        out = {}
        for k, p in a._t.items():
            if any(p[:qs]):
                raise InexactDivision(f"term {dict(zip(spec.others, k))} has q-degree below divisor")
            np_ = []
            for j, x in enumerate(p[qs:]):
                if x % c:
                    raise InexactDivision(
                        f"coefficient {x} of {dict(zip(spec.others, k), q=j + qs)} not divisible by {c}")
                np_.append(x // c)
            nk = tuple(x - y for x, y in zip(k, key))
            np_ = _trim(np_)
            if np_:
                out[nk] = np_
        return Series(spec, out)
    # an exact polynomial quotient has no exponent above a's, so capping each
    # variable there makes the q^0 part of d nilpotent without losing terms
    caps = dict(spec.caps)
    for v in spec.others:
        top = a.max_exponent(v)
        if top is not None and top >= 0:
            caps[v] = min(caps.get(v, top), top)
    work = spec.replace(caps=caps)
    quot = mul(a.truncate(work), invert(d.truncate(work))).embed(spec)
    dq = d.max_exponent("q") or 0
    wide = spec.replace(qmax=spec.qmax + dq)
    back = _mul(quot.embed(wide)._t, d.embed(wide)._t, wide, wide.qmax)
    diff = dict(back)
    for k, p in a._t.items():
        _add_into(diff, k, p, -1)
    if diff:
        k, p = min(diff.items(), key=lambda kv: _val(kv[1]))
        j = _val(p)
        raise InexactDivision(f"remainder term {p[j]} * {dict(zip(spec.others, k), q=j)}")
    return quot


# --------------------------------------------------------------------------
# text / JSON


def _fmt_mono(e: dict) -> str:
    parts = []
    for v in VARS:
        x = e.get(v, 0)
        if x == 1:
            parts.append(v)
        elif x:
            parts.append(f"{v}^{x}" if x > 0 else f"{v}^({x})")
    return "*".join(parts)


def to_text(a: Series, order: Callable | None = None) -> str:
    """``8*t^5*q^4 + 8*t^5*q^5 + ...`` in canonical order."""
    items = list(a.terms())
    if order is not None:
        items.sort(key=lambda ec: order(ec[0]))
    if not items:
        return "0"
    out = []
    for i, (e, c) in enumerate(items):
        mono = _fmt_mono(e)
        mag = abs(c)
        body = mono if (mag == 1 and mono) else (f"{mag}*{mono}" if mono else str(mag))
        if i == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


def to_json_obj(a: Series) -> dict:
    obj = {"vars": list(a.spec.vars), "qmax": a.spec.qmax}
    if a.spec.caps:
        obj["caps"] = {v: c for v, c in a.spec.caps}
    obj["terms"] = [{"e": e, "c": str(c)} for e, c in a.terms()]
    return obj


def to_json(a: Series) -> str:
    return json.dumps(to_json_obj(a), separators=(",", ":"))


def from_json(text: Union[str, dict]) -> Series:
    obj = json.loads(text) if isinstance(text, str) else text
    spec = TruncationSpec(tuple(obj["vars"]), int(obj["qmax"]), tuple(obj.get("caps", {}).items()))
    acc: dict = {}
    for term in obj["terms"]:
        e = {k: int(x) for k, x in term["e"].items()}
        key, qe = _key_of(e, spec)
        if qe < 0:
            raise InvalidExponent("q-exponent must be >= 0")
        if qe > spec.qmax or not spec.key_ok(key):
            raise QSeriesError("serialized term violates its spec")
        _add_into(acc, key, (0,) * qe + (int(term["c"]),))
    return Series(spec, acc)


_TERM = re.compile(r"\s*([+-])?\s*(\d+)?\s*\*?\s*((?:[a-z](?:\^\(?-?\d+\)?)?\s*\*?\s*)*)")
_FACTOR = re.compile(r"([a-z])(?:\^\(?(-?\d+)\)?)?")


def from_text(text: str, spec: TruncationSpec) -> Series:
    """Inverse of :func:`to_text`.  Terms beyond the truncation are dropped."""
    acc: dict = {}
    s = text.strip()
    if s == "0":
        return Series(spec)
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or not (m.group(2) or m.group(3).strip()):
            raise QSeriesError(f"cannot parse series text at {s[pos:pos + 20]!r}")
        c = int(m.group(2) or 1) * (-1 if m.group(1) == "-" else 1)
        e: dict = {}
        for v, x in _FACTOR.findall(m.group(3)):
            e[v] = e.get(v, 0) + int(x or 1)
        key, qe = _key_of(e, spec)
        if qe < 0:
            raise InvalidExponent("q-exponent must be >= 0")
        if c and qe <= spec.qmax and spec.key_ok(key):
            _add_into(acc, key, (0,) * qe + (c,))
        pos = m.end()
    return Series(spec, acc)
