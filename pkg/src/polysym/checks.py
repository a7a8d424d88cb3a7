"""Verification suite behind ``polysym verify``.

Each check compares two series (or q-polynomials) and reports the first
coefficient where they differ.  Levels:

* quick: every dual-route identity at qmax 10, oracle agreement to area 8;
* full: qmax 14, area 10, plus the perimeter-20 census against enumeration.
"""

from __future__ import annotations

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable

from . import classes as K
from . import oracle
from . import orbits as O
from . import registry
from . import symmetry as S
from .group import Subgroup
from .qseries import Series, TruncationSpec, _fmt_mono

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Mismatch:
    series: str
    monomial: str
    expected: int
    got: int

    def __str__(self):
        return f"({self.series}, {self.monomial}, {self.expected}, {self.got})"


@dataclass(frozen=True)
class Check:
    name: str
    run: Callable[[], "Mismatch | None"]


@dataclass(frozen=True)
class Level:
    qmax: int
    area: int
    census: bool


LEVELS = {"quick": Level(10, 8, False), "full": Level(14, 10, True)}


def first_difference(name: str, expected: Series, got: Series) -> Mismatch | None:
    """Smallest monomial (in text order) whose coefficients differ."""
    if expected.spec != got.spec:
        raise ValueError(f"{name}: comparing series with different truncations")
    diff = got - expected
    for e, _ in diff.terms():
        return Mismatch(name, _fmt_mono(e) or "1", expected.coeff(e), got.coeff(e))
    return None


def _poly_difference(name: str, a, b) -> Mismatch | None:
    a, b = tuple(a.c), tuple(b.c)
    for i in range(max(len(a), len(b))):
        x = a[i] if i < len(a) else 0
        y = b[i] if i < len(b) else 0
        if x != y:
            return Mismatch(name, f"q^{i}" if i else "1", x, y)
    return None


def _series_check(name: str, expected: Callable[[], Series], got: Callable[[], Series]) -> Check:
    return Check(name, lambda: first_difference(name, expected(), got()))


def _poly_checks(name: str, ns: Iterable[int], expected, got) -> Check:
    def run():
        for n in ns:
            bad = _poly_difference(f"{name}[{n}]", expected(n), got(n))
            if bad:
                return bad
        return None
    return Check(name, run)


def dual_route_checks(qmax: int) -> list[Check]:
    """Pairs of independent derivations of the same series."""
    xq = TruncationSpec.of("xq", qmax)
    out = [
        Check("V_n recurrence vs closed form", lambda: next(
            (m for n in range(11) if (m := first_difference(
                f"V_{n}", K.poly_Vn_closed(n, xq), K.poly_Vn(n, xq)))), None)),
        Check("T0_n quotient vs double sum", lambda: next(
            (m for n in range(1, 11) if (m := first_difference(
                f"T0_{n}", K.series_T0n(n, xq, "sum"), K.series_T0n(n, xq, "quotient")))), None)),
    ]
    uxyq = TruncationSpec.of("uxyq", qmax)
    out.append(_series_check("T_S iteration vs closed form",
                             lambda: K.series_TS_closed(uxyq), lambda: K.series_TS_iter(uxyq)))
    xyzq = TruncationSpec.of("xyzq", qmax)
    out.append(_series_check("Y1 sum vs closed form",
                             lambda: S.series_Y1_closed(xyzq), lambda: S.series_Y1(xyzq)))
    xzwq = TruncationSpec.of("xzwq", qmax)
    out.append(_series_check("E1 sum vs iteration",
                             lambda: S.series_E1_iter(xzwq), lambda: S.series_E1(xzwq)))
    out.append(_series_check("A1 sum vs iteration",
                             lambda: S.series_A1_iter(xzwq), lambda: S.series_A1(xzwq)))
    ms = range(0, 11)
    for which in ("a", "b"):
        out.append(_poly_checks(f"D_m closed vs recurrence ({which})", ms, S.ferrers_Dm,
                                lambda m, w=which: S.ferrers_Dm_rec(m, w)))
    out.append(_poly_checks("a_2m closed vs D_{m-1}(q^-4)", ms, S.poly_a2m, S.poly_a2m_from_D))
    for which in ("a", "b"):
        out.append(_poly_checks(f"a_2m closed vs recurrence ({which})", ms, S.poly_a2m,
                                lambda m, w=which: S.poly_a2m_rec(m, w)))
    for fam in ("oo", "eo"):
        out.append(_poly_checks(f"f^{fam} closed vs recurrence", range(1, 15),
                                lambda n, f=fam: S.poly_f(f, n), lambda n, f=fam: S.poly_f_rec(f, n)))
    tq = TruncationSpec.of("tq", qmax)
    out.append(_series_check("F_r route A vs route B",
                             lambda: S.series_Fr_B(tq), lambda: S.series_Fr_A(tq)))
    xyq = TruncationSpec.of("xyq", qmax)
    out.append(_series_check("F_r2 even: per-power reduction vs exact division",
                             lambda: S.series_Fr2_even_quotient(xyq), lambda: S.series_Fr2_even(xyq)))
    small = TruncationSpec.of("tq", min(qmax, 8))
    out.append(_series_check("C shift vs derivative",
                             lambda: K.series_C(small, "derivative"), lambda: K.series_C(small)))
    out.append(_series_check("asym Mobius sum vs expanded form",
                             lambda: O.series_asymmetric_expanded(tq), lambda: O.series_asymmetric(tq)))
    return out


def oracle_checks(area: int) -> list[Check]:
    """Formula vs enumeration for every class the oracle covers."""
    out = []
    for info in registry.CLASSES.values():
        if info.oracle is None:
            continue
        for vars in (info.vars,) + info.alt_vars:
            spec = info.spec(area, vars=vars)
            out.append(_series_check(
                f"{info.id}({','.join(vars)}) vs enumeration",
                lambda s=spec, i=info: oracle.oracle_series(i.oracle, s),
                lambda s=spec, i=info: i.build(s)))
    out.append(Check(f"Burnside vs direct orbit count, area <= {min(area, 8)}",
                     lambda: _burnside_vs_orbits(min(area, 8))))
    return out


def _burnside_vs_orbits(area: int) -> Mismatch | None:
    polys = list(oracle.enumerate_convex(max_area=area))
    for row in oracle.census("area", area):
        same = [p for p in polys if p.area == row.size]
        for col, H in (("rotation", Subgroup.C4), ("congruence", Subgroup.D4)):
            direct = oracle.orbit_counts(same, H)
            if getattr(row, col) != direct:
                return Mismatch(f"{col} types", f"q^{row.size}", direct, getattr(row, col))
    return None


def census_check(by: str, max: int) -> Check:
    def run():
        want = oracle.census_csv(oracle.census(by, max)).splitlines()
        got = oracle.census_csv(O.census(by, max)).splitlines()
        for a, b in zip(want, got):
            if a != b:
                return Mismatch(f"census by {by}", a.split(",")[0], a, b)
        return None
    return Check(f"census by {by} to {max}: formulas vs enumeration", run)


def checks_for(level: str) -> list[Check]:
    cfg = LEVELS[level]
    out = dual_route_checks(cfg.qmax) + oracle_checks(cfg.area)
    out.append(census_check("area", cfg.area))
    if cfg.census:
        out.append(census_check("perimeter", 20))
    return out


def run_checks(checks: list[Check], threads: int = 1,
               report: Callable[[str, "Mismatch | None", float], None] | None = None) -> Mismatch | None:
    """Run every check; return the first failure in list order."""
    def timed(c: Check):
        t0 = time.perf_counter()
        res = c.run()
        return res, time.perf_counter() - t0

    if threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            results = list(ex.map(timed, checks))
    else:
        results = [timed(c) for c in checks]
    first = None
    for c, (res, dt) in zip(checks, results):
        if report:
            report(c.name, res, dt)
        if res and first is None:
            first = res
    return first
