"""Series of convex polyominoes fixed by elements and subgroups of D4.

Outputs live in ``(t, q)`` (half-perimeter, area); the r^2 series also
accepts an ``(x, y, q)`` spec.  Every formula reduces to a base class series
followed by a monomial rewrite of its terms; :func:`remap` performs those
rewrites exactly, allowing negative exponents in intermediate images and
rejecting any that survive.

Input depths: for each rewrite the docstring states how the output q-degree
bounds the input q-degree, and the input series is computed to that depth.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable, Iterable

from . import classes as K
from .qfun import qbinomial_substituted
from .qseries import (NegativeFinalExponent, Series, TruncationSpec, _finish, coeff_extract,
                      div_one_minus, divide_exact, eval_at_one, mul, substitute)

mono = K.mono

# an image is (coefficient, {var: exponent}); expansions return a list of images
Image = tuple


def remap(a: Series, out: TruncationSpec, fn: Callable[[dict], Iterable[Image]]) -> Series:
    """Send each monomial ``e`` of ``a`` to the sum of monomials ``fn(e)``.

    ``fn`` receives the non-q exponents plus ``"q"``; images may carry
    negative exponents, but a surviving term with one is an error.  Terms
    beyond the caps or qmax of ``out`` are dropped.
    """
    others = a.spec.others
    oo = out.others
    acc: dict = {}
    for key, p in a._t.items():
        base = dict(zip(others, key))
        for j, c in enumerate(p):
            if not c:
                continue
            base["q"] = j
            for ic, e in fn(base):
                k = (tuple(e.get(v, 0) for v in oo), e.get("q", 0))
                acc[k] = acc.get(k, 0) + c * ic
    return _finish(acc, out, allow_laurent=False)


def _tspec(spec: TruncationSpec) -> tuple[int, int]:
    """(qmax, t cap) of a (t, q) spec; half-perimeter never exceeds area + 1."""
    if set(spec.vars) != {"t", "q"}:
        raise ValueError(f"expected a (t, q) spec, got {spec.vars}")
    cap = spec.cap("t")
    return spec.qmax, spec.qmax + 1 if cap is None else cap


def _xyspec(spec: TruncationSpec) -> tuple[int, int, int]:
    Q = spec.qmax
    xc = spec.cap("x")
    yc = spec.cap("y")
    return Q, Q if xc is None else xc, Q if yc is None else yc


# --------------------------------------------------------------------------
# r-symmetry


@lru_cache(maxsize=None)
def ferrers_Dm(m: int) -> "QPoly":
    """D_m(q) = sum_{i<m} q^i [m-1 i]_q, with D_0 = 1."""
    if m == 0:
        return QPoly((1,))
    out = [0]
    for i in range(m):
        out = _padd(out, [0] * i + _qb(m - 1, i))
    return QPoly(out)


def ferrers_Dm_rec(m: int, which: str = "b") -> "QPoly":
    """D_m by recurrence (a) D_m = D_{m-1} + q^{m-1} sum_{h<=m-2} D_h or
    (b) D_m = (1+q) D_{m-1} + (q^{m-1} - q) D_{m-2}."""
    D = [QPoly((1,)), QPoly((1,))]
    for n in range(2, m + 1):
        if which == "a":
            acc = []
            for h in range(n - 1):
                acc = _padd(acc, D[h].c)
            D.append(QPoly(_padd(D[n - 1].c, [0] * (n - 1) + acc)))
        else:
            t1 = _padd(D[n - 1].c, [0] + list(D[n - 1].c))
            t2 = _padd([0] * (n - 1) + list(D[n - 2].c), [0] + [-c for c in D[n - 2].c])
            D.append(QPoly(_padd(t1, t2)))
    return D[m]


def poly_a2m(m: int) -> "QPoly":
    """a_{2m}(q) = q^{m^2} [sum_i q^i [m-2 i]]_{q -> q^-4} for m >= 2; a_0 = 1, a_2 = q."""
    if m == 0:
        return QPoly((1,))
    if m == 1:
        return QPoly((0, 1))
    spec = TruncationSpec(("q",), m * m)
    acc = Series.zero(spec)
    for i in range(m - 1):
        acc = acc + qbinomial_substituted(m - 2, i, {"q": -4}, spec, prefactor={"q": m * m - 4 * i})
    return QPoly.of(acc)


def poly_a2m_from_D(m: int) -> "QPoly":
    """q^{m^2} D_{m-1}(q^-4)."""
    if m == 0:
        return QPoly((1,))
    D = ferrers_Dm(m - 1).c
    out = [0] * (m * m + 1)
    for i, c in enumerate(D):
        e = m * m - 4 * i
        if c and e < 0:
            raise NegativeFinalExponent(f"a_{2 * m}: q^{e}")
        out[e] += c
    return QPoly(out)


def poly_a2m_rec(m: int, which: str = "b") -> "QPoly":
    """a_{2m} by recurrence (a) or (b), from a_0 = 1, a_2 = q, a_4 = q^4."""
    a = [QPoly((1,)), QPoly((0, 1)), QPoly((0, 0, 0, 0, 1))]
    for n in range(3, m + 1):
        if which == "a":
            acc = [0] * (2 * n - 1) + list(a[n - 1].c)
            for j in range(1, n - 1):
                acc = _padd(acc, [0] * ((n - 2) ** 2 + 4 - j * j) + list(a[j].c))
        else:
            p1 = _padd([0] * (2 * n - 5) + list(a[n - 1].c), [0] * (2 * n - 1) + list(a[n - 1].c))
            p2 = _padd([0] * 4 + list(a[n - 2].c), [0] * (4 * n - 8) + [-c for c in a[n - 2].c])
            acc = _padd(p1, p2)
        a.append(QPoly(acc))
    return a[m]


def series_Fr_A(spec: TruncationSpec) -> Series:
    """Route A: T_0(t^4, y^m -> t^{2m} q^{m^2}, q^4).

    A stack of height m, width n and area a gives half-perimeter 2m + 4n and
    area m^2 + 4a, so T_0 is needed to q-degree qmax/4 and y-degree sqrt(qmax).
    """
    Q, T = _tspec(spec)
    m_max = 0
    while (m_max + 1) ** 2 <= Q and 2 * (m_max + 1) <= T:
        m_max += 1
    if m_max == 0:
        return Series.zero(spec)
    src = TruncationSpec.of("xyq", Q // 4, x=max(T // 4, 0), y=m_max)
    t0 = K.series_T0(src)
    return remap(t0, spec, lambda e: [(1, {"t": 4 * e["x"] + 2 * e["y"], "q": 4 * e["q"] + e["y"] ** 2})])


def series_Fr_B(spec: TruncationSpec) -> Series:
    """Route B: sum_m t^{2m} q^{m^2} D_{m-1}(q^-4)."""
    Q, T = _tspec(spec)
    terms = []
    for m in range(1, T // 2 + 1):
        for i, c in enumerate(poly_a2m_from_D(m).c):
            if c:
                terms.append(({"t": 2 * m, "q": i}, c))
    return Series.from_terms(spec, terms)


series_Fr = series_Fr_A


# --------------------------------------------------------------------------
# r^2-symmetry


def _fr2_inputs(spec: TruncationSpec, odd: bool):
    """Base series for the r^2 branches and the rewrite of their x, y exponents.

    In (t, q) mode x and y both become t^2, so D is computed with x = y = t.
    Even branch: area 2c, height >= b, so D to q-degree qmax/2.  Odd branch:
    area 2c - k >= c since the leftmost column height k is at most the area.
    """
    Qd = spec.qmax if odd else spec.qmax // 2
    if "t" in spec.vars:
        Q, T = _tspec(spec)
        dspec = TruncationSpec.of("stq", Qd, t=T, s=T)
        D = K.series_D(dspec)
        tspec = TruncationSpec.of("xyq", Qd, x=(T + 1) // 2, y=T)
        Tst = K.series_T(tspec)

        def dxy(e, dy):
            return {"t": 2 * e["t"] + dy}

        def txy(e, dx, dy):
            return {"t": 2 * e["x"] + dx + e["y"] + dy}
    else:
        Q, xc, yc = _xyspec(spec)
        dspec = TruncationSpec.of("sxyq", Qd, x=(xc + 1) // 2, y=yc, s=yc)
        D = K.series_D(dspec)
        Tst = K.series_T(TruncationSpec.of("xyq", Qd, x=(xc + 1) // 2, y=yc))

        def dxy(e, dy):
            return {"x": 2 * e["x"], "y": 2 * e["y"] + dy}

        def txy(e, dx, dy):
            return {"x": 2 * e["x"] + dx, "y": e["y"] + dy}
    return D, Tst, dxy, txy


def series_Fr2_even(spec: TruncationSpec) -> Series:
    """2 (D(1/y, x^2, y^2, q^2) - D(1, x^2, y^2, q^2)) / (1 - y) - T(x^2, y, q^2).

    Per power of s: s^k -> y^{-k} (1 + y + ... + y^{k-1}), which removes the
    division by 1 - y.
    """
    D, Tst, dxy, txy = _fr2_inputs(spec, odd=False)

    def fd(e):
        k = e["s"]
        out = []
        for j in range(k):
            img = dxy(e, j - k)
            img["q"] = 2 * e["q"]
            out.append((2, img))
        return out

    def ft(e):
        img = txy(e, 0, 0)
        img["q"] = 2 * e["q"]
        return [(-1, img)]
    return remap(D, spec, fd) + remap(Tst, spec, ft)


def series_Fr2_even_quotient(spec: TruncationSpec) -> Series:
    """The even branch with the division by 1 - y carried out exactly.

    Cross-check for :func:`series_Fr2_even`; (x, y, q) without a y cap only,
    so that no truncation splits a numerator pair y^(2b-k) - y^(2b).
    """
    if "t" in spec.vars or spec.cap("y") is not None:
        raise ValueError("needs an (x, y, q) spec without a cap on y")
    D, Tst, dxy, txy = _fr2_inputs(spec, odd=False)

    def fd(e):
        # s <= height, so D(1/y, x^2, y^2, q^2) has no negative y-powers
        return [(2, dict(dxy(e, -e["s"]), q=2 * e["q"])), (-2, dict(dxy(e, 0), q=2 * e["q"]))]

    quot = divide_exact(remap(D, spec, fd), Series.one(spec) - mono(spec, y=1))
    return quot - remap(Tst, spec, lambda e: [(1, dict(txy(e, 0, 0), q=2 * e["q"]))])


def series_Fr2_odd(spec: TruncationSpec) -> Series:
    """(2/x) D(1/(yq), x^2, y^2, q^2) - (1/x) T(x^2, y/q, q^2)."""
    D, Tst, dxy, txy = _fr2_inputs(spec, odd=True)
    tmode = "t" in spec.vars

    def fd(e):
        img = dxy(e, -e["s"])
        img["t" if tmode else "x"] = img["t" if tmode else "x"] - 1
        img["q"] = 2 * e["q"] - e["s"]
        return [(2, img)]

    def ft(e):
        img = txy(e, -1, 0)
        img["q"] = 2 * e["q"] - e["y"]
        return [(-1, img)]
    return remap(D, spec, fd) + remap(Tst, spec, ft)


def series_Fr2(spec: TruncationSpec) -> Series:
    return series_Fr2_even(spec) + series_Fr2_odd(spec)


# --------------------------------------------------------------------------
# v- and hv-symmetry


def series_Fv(spec: TruncationSpec) -> Series:
    """T(t^2, t, q^2) + T(t^2, t/q, q^2) / t.

    Odd branch area 2c - b >= c (height at most area), so T to q-degree qmax.
    """
    Q, T = _tspec(spec)
    Tst = K.series_T(TruncationSpec.of("xyq", Q, x=(T + 1) // 2, y=T))

    def f(e):
        x, y, q = e["x"], e["y"], e["q"]
        return [(1, {"t": 2 * x + y, "q": 2 * q}), (1, {"t": 2 * x + y - 1, "q": 2 * q - y})]
    return remap(Tst, spec, f)


series_Fh = series_Fv

HV_BRANCHES = ("ee", "eo", "oe", "oo")


def series_Fhv_branch(branch: str, spec: TruncationSpec) -> Series:
    """One parity branch (width, height) of the hv-symmetric series.

    ee: P(t^2, t^2, q^4); eo, oe: P(t^2/q^2, t^2, q^4)/t; oo: q P(t^2/q^2, t^2/q^2, q^4)/t^2.
    Final area is at least the area c of the quarter, so P to q-degree qmax.
    """
    Q, T = _tspec(spec)
    P = K.series_P(TruncationSpec.of("xyq", Q, x=T // 2 + 1, y=T // 2 + 1))

    def f(e):
        x, y, q = e["x"], e["y"], e["q"]
        if branch == "ee":
            return [(1, {"t": 2 * x + 2 * y, "q": 4 * q})]
        if branch in ("eo", "oe"):
            return [(1, {"t": 2 * x + 2 * y - 1, "q": 4 * q - 2 * x})]
        if branch == "oo":
            return [(1, {"t": 2 * x + 2 * y - 2, "q": 4 * q - 2 * x - 2 * y + 1})]
        raise ValueError(branch)
    return remap(P, spec, f)


def series_Fhv(spec: TruncationSpec) -> Series:
    out = Series.zero(spec)
    for b in HV_BRANCHES:
        out = out + series_Fhv_branch(b, spec)
    return out


def poly_f(family: str, n: int) -> "QPoly":
    """Closed forms of f_n^{oo}, f_n^{eo}; f^{oe} = f^{eo}; f^{ee}_{n} = q^{n-1} f^{oo}_{n-2}."""
    if n < 1:
        raise ValueError("n >= 1")
    if family == "oo":
        if n % 2:
            return QPoly(())
        k = (n - 2) // 2
        acc = []
        for i in range(k + 1):
            acc = _padd(acc, _subst_q(_qb(k, i), 4))
        return QPoly([0] * (n - 1) + acc)
    if family in ("eo", "oe"):
        if n % 2 == 0:
            return QPoly(())
        k = (n - 3) // 2
        acc = []
        for i in range(k + 1):
            acc = _padd(acc, [0] * (2 * i) + _subst_q(_qb(k, i), 4))
        return QPoly([0] * (n - 1) + acc)
    if family == "ee":
        if n <= 2 or n % 2:
            return QPoly(())
        return QPoly([0] * (n - 1) + list(poly_f("oo", n - 2).c))
    raise ValueError(family)


def poly_f_rec(family: str, n: int) -> "QPoly":
    """Recurrences for f^{oo} and f^{eo} (n >= 5) from the four initial values."""
    if family not in ("oo", "eo"):
        raise ValueError(family)
    init = {"oo": [(), (), (0, 1), (), (0, 0, 0, 2)], "eo": [(), (), (), (0, 0, 1), ()]}[family]
    f = [QPoly(c) for c in init]
    for k in range(5, n + 1):
        if family == "oo":
            a = [0, 0] + [2 * c for c in f[k - 2].c]
            b = _padd([0] * 4 + [-c for c in f[k - 4].c], [0] * (2 * k - 4) + list(f[k - 4].c))
        else:
            a = _padd([0, 0] + list(f[k - 2].c), [0] * 4 + list(f[k - 2].c))
            b = _padd([0] * 6 + [-c for c in f[k - 4].c], [0] * (2 * k - 4) + list(f[k - 4].c))
        f.append(QPoly(_padd(a, b)))
    return f[n]


# --------------------------------------------------------------------------
# diagonal symmetry: D_S = Y1 + Y2


def _xyz(spec: TruncationSpec):
    """Images of x, y and z for D_S-type specs: (x, y, z, q) or (t, z, q)."""
    X, Y = K._xy(spec)
    if "z" not in spec.vars:
        raise ValueError("spec lacks z")
    return X, Y, mono(spec, z=1)


def _bottom_width_D(spec: TruncationSpec, V: Series, X: Series, Y: Series) -> Series:
    """Directed convex polyominoes with V marking the bottom-row width.

    The diagonal reflection (c, r) -> (r, c) keeps the source corner and
    exchanges width with height and the leftmost column with the bottom row.
    """
    return K.series_D(spec, S=V, X=Y, Y=X)


def series_bottom_D(spec: TruncationSpec) -> Series:
    """D(v, y, x, q) in (v, x, y, q)."""
    K._need(spec, "v", "x", "y")
    return _bottom_width_D(spec, mono(spec, v=1), mono(spec, x=1), mono(spec, y=1))


def _with_v(spec: TruncationSpec) -> TruncationSpec:
    return spec.replace(vars=spec.vars + ("v",))


@K.catalytic("v")
def series_Y1(spec: TruncationSpec) -> Series:
    """Sum form: sum_m z D_m(x, y, q) (1 + yzq) ... (1 + yzq^{m-1}).

    With v in the spec, v marks the bottom row: the shifted partition below
    the flotation line either is empty (bottom width m) or ends in its
    smallest part p, contributing yz v^p q^p prod_{p<k<m} (1 + yzq^k).
    """
    keep_v = "v" in spec.vars
    work = spec if keep_v else _with_v(spec)
    X, Y, Z = _xyz(work)
    B = _bottom_width_D(work, mono(work, v=1), X, Y)
    YZ = mul(Y, Z)
    one = Series.one(work)
    out = Series.zero(work)
    for m in range(1, spec.qmax + 1):
        Dm = coeff_extract(B, "v", m).embed(work)
        if Dm.is_zero():
            continue
        if keep_v:
            tail = mono(work, v=m)
            run = one  # prod_{p<k<m} (1 + yzq^k)
            for p in range(m - 1, 0, -1):
                tail = tail + mul(mul(YZ, run), mono(work, v=p, q=p))
                run = run + mul(run, YZ.shift({"q": p}))
        else:
            tail = one
            for k in range(1, m):
                tail = tail + mul(tail, YZ.shift({"q": k}))
        out = out + mul(Z, mul(Dm, tail))
    return out if keep_v else eval_at_one(out, "v").truncate(spec)


def series_Y1_closed(spec: TruncationSpec) -> Series:
    """sum_n z D(q^n) (-yz)^n/(q)_n  /  (1 + sum_{n>=1} q^n (-yz)^n/(q)_n).

    D(q^n) has every term >= q^n (bottom width >= 1), and so does the
    denominator's summand; both sums stop at n = qmax.
    """
    if "v" in spec.vars:
        raise ValueError("the closed form gives Y1 at v = 1")
    work = _with_v(spec)
    Xw, Yw, _ = _xyz(work)
    B = _bottom_width_D(work, mono(work, v=1), Xw, Yw)
    _, Y, Z = _xyz(spec)
    myz = -mul(Y, Z)
    num = Series.zero(spec)
    den = Series.one(spec)
    c = Series.one(spec)  # (-yz)^n / (q)_n
    for n in range(0, spec.qmax + 1):
        if n:
            c = div_one_minus(mul(c, myz), mono(spec, q=n))
            den = den + c.shift({"q": n})
        Bn = substitute(B, {"v": (1, {"q": n})}, spec)
        num = num + mul(mul(Z, Bn), c)
    return mul(num, K.invert(den))


@K.catalytic("v")
def series_Y1_iter(spec: TruncationSpec) -> Series:
    """Iterate Y1(v) = zD(v) + yz/(1 - vq) (vq Y1(1) - Y1(vq)); v in the spec."""
    K._need(spec, "v")
    X, Y, Z = _xyz(spec)
    Vv = mono(spec, v=1)
    base = mul(Z, _bottom_width_D(spec, Vv, X, Y))
    YZ = mul(Y, Z)
    vq = Vv.shift({"q": 1})
    cur = base
    for _ in range(spec.qmax + 2):
        at1 = eval_at_one(cur, "v").embed(spec)
        shifted = substitute(cur, {"v": (1, {"v": 1, "q": 1})}, spec)
        new = base + div_one_minus(mul(YZ, mul(vq, at1) - shifted), vq)
        if new == cur:
            return cur
        cur = new
    raise AssertionError("Y1 iteration did not converge")


def series_R(spec: TruncationSpec, X: Series | None = None, Y: Series | None = None) -> Series:
    """Shifted stacks whose North-East corner is not on the top row: T_S(u) - P_S(xu)."""
    K._need(spec, "u")
    if X is None:
        X, Y = K._xy(spec)
    return K.series_TS_iter(spec, X, Y) - K.series_PS(spec, mul(X, mono(spec, u=1)), Y)


def series_Y2(spec: TruncationSpec, include_empty_stack: bool = True) -> Series:
    """sum_m R_m(x, yz, q) T_{0,m}(y, q).

    T_{0,m} counts stacks of width m (rotated, empty columns allowed).  Its
    constant term, the empty stack, is the case where nothing lies above the
    security line, which is a genuine Y2 polyomino; ``include_empty_stack``
    exists only to show that dropping it breaks agreement with enumeration.
    R_m has q-degree >= m.
    """
    X, Y, Z = _xyz(spec)
    work = spec.replace(vars=spec.vars + ("u",))
    Xw, Yw, Zw = (a.embed(work) for a in (X, Y, Z))
    R = series_R(work, Xw, mul(Yw, Zw))
    out = Series.zero(spec)
    for m in range(1, spec.qmax + 1):
        Rm = coeff_extract(R, "u", m)
        if Rm.is_zero():
            continue
        stack = K.series_T0n(m, spec, X=Y)
        if not include_empty_stack:
            stack = stack - 1
        out = out + mul(_respec(Rm, spec), stack)
    return out


def _respec(a: Series, spec: TruncationSpec) -> Series:
    """Same variables and caps, re-tagged with ``spec`` (caps may differ in order only)."""
    if set(a.spec.vars) != set(spec.vars):
        raise ValueError("variable sets differ")
    return a.truncate(spec) if a.spec.vars == spec.vars else a.embed(spec)


def series_DS(spec: TruncationSpec) -> Series:
    """D_S = Y1 + Y2 in (x, y, z, q), or D_S(t, t, z, q) in (t, z, q)."""
    return series_Y1(spec) + series_Y2(spec)


def series_Fd(spec: TruncationSpec) -> Series:
    """D_S(t^2, t^2, 1/(t^2 q), q^2).

    A region of width a, height b, diagonal k and area c gives half-perimeter
    2(a + b - k) >= a + b and area 2c - k >= c, so D_S(t, t, z, q) is needed
    to q-degree qmax and t-degree equal to the t cap.
    """
    Q, T = _tspec(spec)
    ds = series_DS(TruncationSpec.of("tzq", Q, t=T))
    return remap(ds, spec, lambda e: [(1, {"t": 2 * e["t"] - 2 * e["z"], "q": 2 * e["q"] - e["z"]})])


series_Fd1 = series_Fd
series_Fd2 = series_Fd


# --------------------------------------------------------------------------
# both diagonals: doubly shifted stacks


def _ts_xz(spec: TruncationSpec) -> Series:
    """T_S(u, x, z, q) in spec (u, x, z, w, q)."""
    return K.series_TS_iter(spec, mono(spec, x=1), mono(spec, z=1))


def _zxw(spec):
    K._need(spec, "x", "z", "w")
    return spec.replace(vars=spec.vars + ("u",))


def _swap_zw(a: Series) -> Series:
    return a.rename({"z": "w", "w": "z"}, a.spec)


def _poch_neg(spec, V: Series, n: int, start: int = 1) -> Series:
    """(-Vq^start)_n = prod (1 + V q^k)."""
    out = Series.one(spec)
    for k in range(start, start + n):
        out = out + mul(out, V.shift({"q": k}))
    return out


@K.catalytic("z", "w")
def series_E1(spec: TruncationSpec) -> Series:
    """sum_m T_{S,m}(x, z, q) ((-wq)_m - 1); T_{S,m} has q-degree >= m."""
    work = _zxw(spec)
    ts = _ts_xz(work)
    W = mono(spec, w=1)
    out = Series.zero(spec)
    for m in range(1, spec.qmax + 1):
        tm = coeff_extract(ts, "u", m)
        if tm.is_zero():
            continue
        out = out + mul(_respec(tm, spec), _poch_neg(spec, W, m) - 1)
    return out


@K.catalytic("z", "w")
def series_E2(spec: TruncationSpec) -> Series:
    return _swap_zw(series_E1(spec))


@K.catalytic("z", "w")
def series_E3(spec: TruncationSpec) -> Series:
    """sum_m x^m z w q^{2m} (-zq)_{m-1} (-wq)_{m-1}   (summand >= q^{2m})."""
    K._need(spec, "x", "z", "w")
    Z, W = mono(spec, z=1), mono(spec, w=1)
    out = Series.zero(spec)
    for m in range(1, spec.qmax // 2 + 1):
        out = out + mul(mono(spec, x=m, z=1, w=1, q=2 * m),
                        mul(_poch_neg(spec, Z, m - 1), _poch_neg(spec, W, m - 1)))
    return out


@K.catalytic("z", "w")
def series_E(spec: TruncationSpec) -> Series:
    return series_E1(spec) + series_E2(spec) - series_E3(spec)


@K.catalytic("z", "w")
def series_A1(spec: TruncationSpec) -> Series:
    """sum_m w T_{S,m}(x, z, q) (-wq)_{m-1}.

    The factor w accounts for the West cell, which lies on both diagonals.
    """
    work = _zxw(spec)
    ts = _ts_xz(work)
    W = mono(spec, w=1)
    out = Series.zero(spec)
    for m in range(1, spec.qmax + 1):
        tm = coeff_extract(ts, "u", m)
        if tm.is_zero():
            continue
        out = out + mul(_respec(tm, spec), _poch_neg(spec, W, m - 1))
    return mul(W, out)


@K.catalytic("z", "w")
def series_A2(spec: TruncationSpec) -> Series:
    return _swap_zw(series_A1(spec))


@K.catalytic("z", "w")
def series_A3(spec: TruncationSpec) -> Series:
    """sum_m x^m z w q^m (-zq)_{m-1} (-wq)_{m-1}   (summand >= q^m)."""
    K._need(spec, "x", "z", "w")
    Z, W = mono(spec, z=1), mono(spec, w=1)
    out = Series.zero(spec)
    for m in range(1, spec.qmax + 1):
        out = out + mul(mono(spec, x=m, z=1, w=1, q=m),
                        mul(_poch_neg(spec, Z, m - 1), _poch_neg(spec, W, m - 1)))
    return out


@K.catalytic("z", "w")
def series_A(spec: TruncationSpec) -> Series:
    return series_A1(spec) + series_A2(spec) - series_A3(spec)


def _iterate_u(spec: TruncationSpec, base: Series, W: Series) -> Series:
    """Fixed point of F(u) = base(u) + w/(1 - uq) (uq F(1) - F(uq)), returned at u = 1."""
    uq = mono(spec, u=1, q=1)
    cur = base
    for _ in range(spec.qmax + 2):
        at1 = eval_at_one(cur, "u").embed(spec)
        shifted = substitute(cur, {"u": (1, {"u": 1, "q": 1})}, spec)
        new = base + div_one_minus(mul(W, mul(uq, at1) - shifted), uq)
        if new == cur:
            return eval_at_one(cur, "u")
        cur = new
    raise AssertionError("functional equation iteration did not converge")


@K.catalytic("z", "w")
def series_E1_iter(spec: TruncationSpec) -> Series:
    """E1(u) = uqw/(1-uq) (T_S(1) - T_S(uq)) + w/(1-uq) (uq E1(1) - E1(uq)), at u = 1."""
    work = _zxw(spec)
    ts = _ts_xz(work)
    W = mono(work, w=1)
    uq = mono(work, u=1, q=1)
    ts1 = eval_at_one(ts, "u").embed(work)
    tsq = substitute(ts, {"u": (1, {"u": 1, "q": 1})}, work)
    base = div_one_minus(mul(mul(uq, W), ts1 - tsq), uq)
    return _respec(_iterate_u(work, base, W), spec)


@K.catalytic("z", "w")
def series_A1_iter(spec: TruncationSpec) -> Series:
    """A1(u) = w T_S(u, x, z, q) + w/(1-uq) (uq A1(1) - A1(uq)), at u = 1."""
    work = _zxw(spec)
    W = mono(work, w=1)
    base = mul(W, _ts_xz(work))
    return _respec(_iterate_u(work, base, W), spec)


def _dd_spec(Q: int, T: int, odd: bool) -> TruncationSpec:
    # even: area 4c - 2i - 2j >= 2c; odd: 4c - 2i - 2j + 1 >= 2c - 1
    qin = (Q + 1) // 2 if odd else Q // 2
    xcap = (T + 2) // 4 if odd else T // 4
    return TruncationSpec.of("xzwq", qin, x=xcap)


def series_Fd1d2_even(spec: TruncationSpec) -> Series:
    """E(t^4, q^-2, q^-2, q^4)."""
    Q, T = _tspec(spec)
    E = series_E(_dd_spec(Q, T, False))
    return remap(E, spec, lambda e: [(1, {"t": 4 * e["x"], "q": 4 * e["q"] - 2 * e["z"] - 2 * e["w"]})])


def series_Fd1d2_odd(spec: TruncationSpec) -> Series:
    """(q / t^2) A(t^4, q^-2, q^-2, q^4)."""
    Q, T = _tspec(spec)
    A = series_A(_dd_spec(Q, T, True))
    return remap(A, spec, lambda e: [(1, {"t": 4 * e["x"] - 2, "q": 4 * e["q"] - 2 * e["z"] - 2 * e["w"] + 1})])


def series_Fd1d2(spec: TruncationSpec) -> Series:
    return series_Fd1d2_even(spec) + series_Fd1d2_odd(spec)


# --------------------------------------------------------------------------
# small dense q-polynomials


def _padd(a, b) -> list:
    n = max(len(a), len(b))
    out = [0] * n
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += c
    return out


def _qb(n: int, k: int) -> list:
    from .qfun import _qbinom_coeffs
    return list(_qbinom_coeffs(n, k))


def _subst_q(c: list, k: int) -> list:
    out = [0] * ((len(c) - 1) * k + 1) if c else []
    for i, x in enumerate(c):
        out[i * k] = x
    return out


class QPoly:
    """A polynomial in q with integer coefficients (trailing zeros trimmed)."""

    __slots__ = ("c",)

    def __init__(self, coeffs):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.c = tuple(c)

    @classmethod
    def of(cls, s: Series) -> "QPoly":
        if s.spec.others:
            raise ValueError("not a q-polynomial")
        n = (s.max_exponent("q") or 0) + 1
        return cls([s.coeff(q=i) for i in range(n)] if s else [])

    def terms_q(self) -> tuple:
        return self.c

    def at_one(self) -> int:
        return sum(self.c)

    def to_series(self, spec: TruncationSpec | None = None) -> Series:
        spec = spec or TruncationSpec(("q",), max(len(self.c) - 1, 0))
        return Series.from_terms(spec, (({"q": i}, c) for i, c in enumerate(self.c) if c))

    def __eq__(self, other):
        if isinstance(other, QPoly):
            return self.c == other.c
        return NotImplemented

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        return f"QPoly({list(self.c)})"

    def __str__(self):
        return self.to_series().to_text() if self.c else "0"
