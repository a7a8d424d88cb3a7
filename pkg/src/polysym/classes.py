"""Generating series of the base classes: partitions, stacks, shifted stacks,
directed convex and convex polyominoes.

Every constructor takes the output :class:`TruncationSpec`.  Most kernels
are written against generic images ``X`` and ``Y`` of the width and height
variables, so the same code produces ``C(x, y, q)`` and ``C(t, t, q)``.

Truncation of the infinite sums: each summand carries an explicit power of
``q`` (noted next to each loop), and the loop stops once that power exceeds
``qmax``.
"""

from __future__ import annotations

import functools
from functools import lru_cache

from .qfun import qbinomial
from .qseries import (Series, TruncationSpec, coeff_extract, derivative, div_one_minus,
                      div_poch, eval_at_one, invert, make_monomial, mul, mul_poch, substitute)


def mono(spec: TruncationSpec, c: int = 1, **e: int) -> Series:
    return make_monomial(c, e, spec)


def _xy(spec: TruncationSpec):
    """Images of x and y: themselves, or both t for a (t, q) spec."""
    if "x" in spec.vars and "y" in spec.vars:
        return mono(spec, x=1), mono(spec, y=1)
    if "t" in spec.vars:
        return mono(spec, t=1), mono(spec, t=1)
    raise ValueError(f"spec {spec.vars} has neither (x, y) nor t")


def catalytic(*vs: str):
    """Run without caps on the variables ``vs`` and truncate afterwards.

    Kernel-method quotients such as (u T(1) - T(uq)) / (1 - uq) rely on
    cancellation among high powers of u, which a cap on u would cut off.
    """
    def deco(fn):
        @functools.wraps(fn)
        def wrapper(spec: TruncationSpec, *args, **kw):
            if all(spec.cap(v) is None for v in vs):
                return fn(spec, *args, **kw)
            work = spec.replace(caps={k: c for k, c in spec.caps if k not in vs})
            lift = lambda a: a.embed(work) if isinstance(a, Series) else a  # noqa: E731
            out = fn(work, *map(lift, args), **{k: lift(a) for k, a in kw.items()})
            return out.truncate(spec)
        return wrapper
    return deco


def _need(spec: TruncationSpec, *vs: str):
    missing = [v for v in vs if v not in spec.vars]
    if missing:
        raise ValueError(f"spec lacks variables {missing}")


# --------------------------------------------------------------------------
# partitions


def series_P(spec: TruncationSpec, X: Series | None = None, Y: Series | None = None) -> Series:
    """Sum_{m>=1} x^m y q^m / (yq)_m   (summand >= q^m)."""
    if X is None:
        X, Y = _xy(spec)
    out = Series.zero(spec)
    term = Y.shift({})
    for m in range(1, spec.qmax + 1):
        term = div_one_minus(mul(term, X).shift({"q": 1}), mul(Y, mono(spec, q=m)))
        if term.is_zero():
            break
        out = out + term
    return out


def series_P0(spec: TruncationSpec) -> Series:
    """Sum_{m>=0} x^m y q^m / (y)_{m+1}; needs a cap on y."""
    _need(spec, "x", "y")
    X, Y = mono(spec, x=1), mono(spec, y=1)
    out = Series.zero(spec)
    term = div_one_minus(Y, Y)  # m = 0
    for m in range(0, spec.qmax + 1):
        if m:
            term = div_one_minus(mul(term, X).shift({"q": 1}), Y.shift({"q": m}))
        if term.is_zero():
            break
        out = out + term
    return out


def series_PS(spec: TruncationSpec, X: Series | None = None, Y: Series | None = None) -> Series:
    """Sum_{m>=1} x^m y q^m (-yq)_{m-1}   (summand >= q^m)."""
    if X is None:
        X, Y = _xy(spec)
    out = Series.zero(spec)
    term = Y
    for m in range(1, spec.qmax + 1):
        term = mul(term, X).shift({"q": 1})
        if m > 1:
            term = term + mul(term, Y).shift({"q": m - 1})
        if term.is_zero():
            break
        out = out + term
    return out


def series_PS_u(spec: TruncationSpec) -> Series:
    """P_S(xu, y, q)."""
    _need(spec, "u", "x", "y")
    return series_PS(spec, mono(spec, x=1, u=1), mono(spec, y=1))


# --------------------------------------------------------------------------
# stacks


def _t0_kernel(spec: TruncationSpec, X: Series, Y: Series, first_index: int = 0) -> Series:
    """Sum_{m>=0} X^m Y q^m / ((Y)_{m+1} (Y)_m)."""
    out = Series.zero(spec)
    # m = 0 : Y / (1 - Y)
    term = div_one_minus(Y, Y)
    for m in range(0, spec.qmax + 1):
        if m:
            term = mul(term, X).shift({"q": 1})
            term = div_one_minus(term, Y.shift({"q": m}))       # (Y)_{m+1}
            term = div_one_minus(term, Y.shift({"q": m - 1}))   # (Y)_m
        if term.is_zero():
            break
        if m >= first_index:
            out = out + term
    return out


def series_T0(spec: TruncationSpec) -> Series:
    """Stacks with empty end rows allowed; needs a cap on y."""
    _need(spec, "x", "y")
    return _t0_kernel(spec, mono(spec, x=1), mono(spec, y=1))


def series_T(spec: TruncationSpec, X: Series | None = None, Y: Series | None = None) -> Series:
    """T(x, y, q) = x T0(x, yq, q)."""
    if X is None:
        X, Y = _xy(spec)
    return mul(X, _t0_kernel(spec, X, Y.shift({"q": 1})))


def poly_Vn(n: int, spec: TruncationSpec) -> Series:
    """V_n by V_n = 2V_{n-1} + (x q^{n-1} - 1) V_{n-2}, V_0 = V_1 = 1."""
    _need(spec, "x")
    one = Series.one(spec)
    if n <= 1:
        return one
    a, b = one, one
    for k in range(2, n + 1):
        a, b = b, b.scale(2) + mul(mono(spec, x=1, q=k - 1) - one, a)
    return b


def poly_Vn_closed(n: int, spec: TruncationSpec) -> Series:
    """V_n = 1 + sum_{1<=k<=n/2} x^k q^{k^2} sum_{m=k}^{n-k} [m k][n-m-1 k-1]."""
    out = Series.one(spec)
    for k in range(1, n // 2 + 1):
        inner = Series.zero(spec)
        for m in range(k, n - k + 1):
            inner = inner + mul(qbinomial(m, k, spec), qbinomial(n - m - 1, k - 1, spec))
        out = out + mul(mono(spec, x=k, q=k * k), inner)
    return out


def series_T0n(n: int, spec: TruncationSpec, route: str = "quotient", X: Series | None = None) -> Series:
    """Height-n stacks with empty rows allowed, including the empty stack.

    ``route='quotient'`` uses V_n / (xq)_n; ``route='sum'`` the double sum
    over the widest row m and its position j (summand >= q^m), plus 1.
    ``X`` is the image of x (default x itself).
    """
    if X is None:
        _need(spec, "x")
        X = mono(spec, x=1)
    if n == 0:
        return Series.one(spec)
    if route == "quotient":
        return div_poch(_vn_at(n, spec, X), X, n)
    if route != "sum":
        raise ValueError(route)
    out = Series.one(spec)
    for m in range(1, spec.qmax + 1):
        inner = Series.zero(spec)
        for j in range(1, n + 1):
            inner = inner + mul(qbinomial(m + j - 1, m, spec), qbinomial(m + n - j - 1, m - 1, spec))
        out = out + mul((X ** m).shift({"q": m}), inner)
    return out


def _vn_at(n: int, spec: TruncationSpec, X: Series) -> Series:
    one = Series.one(spec)
    if n <= 1:
        return one
    a, b = one, one
    for k in range(2, n + 1):
        a, b = b, b.scale(2) + mul(X.shift({"q": k - 1}) - one, a)
    return b


# --------------------------------------------------------------------------
# shifted stacks


def _p1_kernel(spec: TruncationSpec, U: Series, X: Series, Y: Series) -> Series:
    """P1 = U x y q + y sum_{k>=2} (U x q)^k (-yq)_{k-2}   (summand >= q^k)."""
    out = mul(mul(U, X), Y).shift({"q": 1})
    uxq = mul(U, X).shift({"q": 1})
    power = uxq
    poch = Series.one(spec)
    for k in range(2, spec.qmax + 1):
        power = mul(power, uxq)
        if power.is_zero():
            break
        if k > 2:
            poch = poch + mul(poch, Y).shift({"q": k - 2})
        out = out + mul(Y, mul(power, poch))
    return out


def series_P1(spec: TruncationSpec) -> Series:
    _need(spec, "u", "x", "y")
    return _p1_kernel(spec, mono(spec, u=1), mono(spec, x=1), mono(spec, y=1))


def _u_at_one(a: Series) -> Series:
    return eval_at_one(a, "u").embed(a.spec)


def _u_times_q(a: Series, k: int = 1) -> Series:
    return substitute(a, {"u": (1, {"u": 1, "q": k})}, a.spec)


@catalytic("u")
def series_TS_iter(spec: TruncationSpec, X: Series | None = None, Y: Series | None = None) -> Series:
    """Iterate T <- P1 + x y u^2 q^2 / (1 - uq) (T(1) - T(uq)) to a fixed point.

    Each pass fixes at least one more power of q, so qmax + 2 passes suffice.
    """
    _need(spec, "u")
    if X is None:
        X, Y = _xy(spec)
    p1 = _p1_kernel(spec, mono(spec, u=1), X, Y)
    K = mul(X, Y).shift({"u": 2, "q": 2})
    uq = mono(spec, u=1, q=1)
    T = p1
    for _ in range(spec.qmax + 2):
        new = p1 + div_one_minus(mul(K, _u_at_one(T) - _u_times_q(T)), uq)
        if new == T:
            return T
        T = new
    raise AssertionError("shifted-stack iteration did not converge")


def _ts_EF(spec: TruncationSpec, X: Series, Y: Series):
    Uv = mono(spec, u=1)
    E = Series.zero(spec)
    F = Series.zero(spec)
    n = 0
    while n * n + n <= spec.qmax:
        sign = -1 if n % 2 else 1
        # E: x^n y^n u^{2n} q^{n^2+n} P1(u q^n) / (uq)_n   (>= q^{n^2+n})
        pre = mul(X ** n, Y ** n).shift({"u": 2 * n, "q": n * n + n}, sign)
        p1 = _p1_kernel(spec, Uv.shift({"q": n}), X, Y)
        E = E + div_poch(mul(pre, p1), Uv, n)
        # F: x^{n+1} y^{n+1} u^{2n+2} q^{n^2+3n+2} / (uq)_{n+1}
        pre = mul(X ** (n + 1), Y ** (n + 1)).shift({"u": 2 * n + 2, "q": n * n + 3 * n + 2}, sign)
        F = F + div_poch(pre, Uv, n + 1)
        n += 1
    return E, F


@catalytic("u")
def series_TS_closed(spec: TruncationSpec, X: Series | None = None, Y: Series | None = None) -> Series:
    """(E(u) + E(1) F(u) - E(u) F(1)) / (1 - F(1)).

    E(u) sums (-1)^n x^n y^n u^{2n} q^{n^2+n} P1(uq^n) / (uq)_n; the summand
    is >= q^{n^2+n}, so n stops once n^2 + n > qmax.
    """
    _need(spec, "u")
    if X is None:
        X, Y = _xy(spec)
    E, F = _ts_EF(spec, X, Y)
    E1, F1 = _u_at_one(E), _u_at_one(F)
    num = E + mul(E1, F) - mul(E, F1)
    return mul(num, invert(Series.one(spec) - F1))


series_TS = series_TS_iter


# --------------------------------------------------------------------------
# directed convex and convex


def _J0(spec, S, X, Y) -> Series:
    """Sum_{n>=0} (-1)^n X^n S^n q^{n(n+1)/2} / ((Sq)_n (SYq)_n)."""
    SY = mul(S, Y)
    out = Series.one(spec)
    term = Series.one(spec)
    n = 1
    while n * (n + 1) // 2 <= spec.qmax:
        term = mul(term, mul(X, S)).shift({"q": n}, -1)
        term = div_one_minus(div_one_minus(term, S.shift({"q": n})), SY.shift({"q": n}))
        out = out + term
        n += 1
    return out


def _M1(spec, S, X, Y) -> Series:
    """Sum_{n>=1} X^n q^n / (SYq)_n * (S/(SYq)_{n-1} + sum_{m<n} c_m / ((Sq)_m (SYq^{m+1})_{n-m-1})).

    c_m = (-1)^m S^m q^{m(m-1)/2}; summand >= q^n.  The inner sum obeys
    h_n = h_{n-1} / (1 - SYq^{n-1}) + c_{n-1} / (Sq)_{n-1}.
    """
    SY = mul(S, Y)
    out = Series.zero(spec)
    A = S                          # S / (SYq)_{n-1}
    h = Series.zero(spec)
    c = Series.one(spec)           # c_{n-1} / (Sq)_{n-1}
    Xq = X.shift({"q": 1})
    Xn = Series.one(spec)
    for n in range(1, spec.qmax + 1):
        Xn = mul(Xn, Xq)
        if Xn.is_zero():
            break
        if n >= 2:
            m = n - 1
            A = div_one_minus(A, SY.shift({"q": m}))
            c = div_one_minus(mul(c, S).shift({"q": m - 1}, -1), S.shift({"q": m}))
            h = div_one_minus(h, SY.shift({"q": m})) + c
        out = out + div_poch(mul(Xn, A + h), SY, n)
    return out


def series_D(spec: TruncationSpec, S: Series | None = None, X: Series | None = None,
             Y: Series | None = None) -> Series:
    """D = y (M1(s) J0(1) - M1(1) J0(s) + M1(1)) / J0(1); s marks the leftmost column height."""
    if X is None:
        X, Y = _xy(spec)
    if S is None:
        _need(spec, "s")
        S = mono(spec, s=1)
    one = Series.one(spec)
    J0s, M1s = _J0(spec, S, X, Y), _M1(spec, S, X, Y)
    if S == one:
        J01, M11 = J0s, M1s
    else:
        J01, M11 = _J0(spec, one, X, Y), _M1(spec, one, X, Y)
    body = M1s + mul(mul(M11, one - J0s), invert(J01))
    return mul(Y, body)


def _alpha(spec, S, X, Y, Qinv) -> Series:
    """Sum_{m>=1} (-1)^m X^m S^m q^{m(m+1)/2} / (Sq)_m * inner_m   (>= q^{m(m+1)/2}).

    inner_m = sum_{n<=m} d_n prod_{k=n}^{m} g_k = g_m (inner_{m-1} + d_m),
    d_n = (-1)^n S^n q^{n(n+1)/2} / (Sq)_{n-1}.
    """
    SY = mul(S, Y)
    out = Series.zero(spec)
    inner = Series.zero(spec)
    Spow = Series.one(spec)
    XS = Series.one(spec)
    m = 1
    while m * (m + 1) // 2 <= spec.qmax:
        sign = -1 if m % 2 else 1
        Spow = mul(Spow, S)
        XS = mul(XS, mul(X, S))
        d = mul(Spow.shift({"q": m * (m + 1) // 2}, sign), Qinv[m - 1])
        inner = div_one_minus(inner + d, SY.shift({"q": m}))
        out = out + mul(mul(XS.shift({"q": m * (m + 1) // 2}, sign), Qinv[m]), inner)
        m += 1
    return out


def _a(spec, S, X, Y, Qinv) -> Series:
    """The series a(s) of the convex-polyomino formula   (summand >= q^m).

    a = sum_m X^m q^m g_m ( -S^{2m-1} q^{m(m-1)} Qinv_{m-1}^2 + Y T2_m + 2 Y W_m ) where
    T2_m = g_{m-1}^2 (T2_{m-1} + e_{m-1}),  e_n = S^{2n} q^{n^2} (SYq^n - 2) Qinv_{n-1}^2,
    U_k = g_k (U_{k-1} + al_k),           al_n = (-1)^n S^n q^{n(n+1)/2} Qinv_{n-1},
    W_m = g_{m-1}^2 W_{m-1} + U_{m-1} be_{m-1},  be_k = (-1)^k S^k q^{k(k-1)/2} Qinv_k.
    """
    SY = mul(S, Y)
    zero = Series.zero(spec)
    out = zero
    T2, U, W = zero, zero, zero
    U_prev = zero
    Spows = [Series.one(spec)]
    Xq = X.shift({"q": 1})
    Xm = Series.one(spec)
    for m in range(1, spec.qmax + 1):
        Xm = mul(Xm, Xq)
        if Xm.is_zero():
            break
        while len(Spows) <= 2 * m:
            Spows.append(mul(Spows[-1], S))
        if m >= 2:
            n = m - 1
            g = SY.shift({"q": n})
            e = mul(mul(Spows[2 * n].shift({"q": n * n}), SY.shift({"q": n}) - 2),
                    mul(Qinv[n - 1], Qinv[n - 1]))
            T2 = div_one_minus(div_one_minus(T2 + e, g), g)
            al = mul(Spows[n].shift({"q": n * (n + 1) // 2}, -1 if n % 2 else 1), Qinv[n - 1])
            U = div_one_minus(U_prev + al, g)
            U_prev = U
            be = mul(Spows[n].shift({"q": n * (n - 1) // 2}, -1 if n % 2 else 1), Qinv[n])
            W = div_one_minus(div_one_minus(W, g), g) + mul(U, be)
        first = mul(Spows[2 * m - 1].shift({"q": m * (m - 1)}, -1), mul(Qinv[m - 1], Qinv[m - 1]))
        body = first + mul(Y, T2 + W.scale(2))
        out = out + div_one_minus(mul(Xm, body), SY.shift({"q": m}))
    return out


def _qinv_table(spec, S, n) -> list[Series]:
    """[1/(Sq)_k for k = 0..n]."""
    out = [Series.one(spec)]
    for k in range(1, n + 1):
        out.append(div_one_minus(out[-1], S.shift({"q": k})))
    return out


def _J1_K1(spec, X) -> tuple[Series, Series]:
    """J1 = sum X^n q^n / ((q)_{n-1} (q)_n),  K1 = -1 + sum (same) * (sum_k 2q^k/(1-q^k) + q^n/(1-q^n))."""
    one = Series.one(spec)
    q = mono(spec, q=1)
    J1 = Series.zero(spec)
    K1 = -one
    base = one               # 1 / ((q)_{n-1} (q)_n)
    harm = Series.zero(spec)  # sum_{k<n} 2 q^k / (1 - q^k)
    Xn = one
    for n in range(1, spec.qmax + 1):
        Xn = mul(Xn, X.shift({"q": 1}))
        if Xn.is_zero():
            break
        if n >= 2:
            base = div_one_minus(base, q.shift({"q": n - 2}))
            harm = harm + div_one_minus(mono(spec, 2, q=n - 1), mono(spec, q=n - 1))
        base = div_one_minus(base, q.shift({"q": n - 1}))
        term = mul(Xn, base)
        J1 = J1 + term
        K1 = K1 + mul(term, harm + div_one_minus(mono(spec, q=n), mono(spec, q=n)))
    return J1, K1


def _E_series(spec, S, X, Y) -> Series:
    """E(s) = 2 y^2 M1(1)/J0(1) alpha(s) - y a(s)."""
    one = Series.one(spec)
    Qinv = _qinv_table(spec, S, spec.qmax + 1)
    ratio = mul(_M1(spec, one, X, Y), invert(_J0(spec, one, X, Y)))
    al = _alpha(spec, S, X, Y, Qinv)
    a = _a(spec, S, X, Y, Qinv)
    return mul(mul(mul(Y, Y).scale(2), ratio), al) - mul(Y, a)


def series_C(spec: TruncationSpec, route: str = "shift") -> Series:
    """Convex polyominoes, C = J1 E'(1) - K1 E(1).

    ``route='shift'`` evaluates E at s = 1 + s' with s' capped at degree 1, so
    E(1) and E'(1) are the s'^0 and s'^1 coefficients.  ``route='derivative'``
    builds E(s) in full, differentiates and sets s = 1 (slow; for checks).
    """
    if "s" in spec.vars:
        raise ValueError("the output spec must not contain s")
    if route == "shift":
        work = spec.replace(vars=spec.vars + ("s",), caps=dict(spec.caps, s=1))
        X, Y = _xy(work)
        E = _E_series(work, Series.one(work) + mono(work, s=1), X, Y)
        E1 = coeff_extract(E, "s", 0)
        dE1 = coeff_extract(E, "s", 1)
    elif route == "derivative":
        work = spec.replace(vars=spec.vars + ("s",))
        X, Y = _xy(work)
        E = _E_series(work, mono(work, s=1), X, Y)
        E1 = eval_at_one(E, "s")
        dE1 = eval_at_one(derivative(E, "s"), "s")
    else:
        raise ValueError(route)
    X, _ = _xy(spec)
    J1, K1 = _J1_K1(spec, X)
    return mul(J1, dE1) - mul(K1, E1)


__all__ = [
    "series_P", "series_P0", "series_PS", "series_PS_u", "series_T0", "series_T", "poly_Vn",
    "poly_Vn_closed", "series_T0n", "series_P1", "series_TS", "series_TS_iter",
    "series_TS_closed", "series_D", "series_C", "mono", "mul_poch",
]
