"""Burnside and Mobius bookkeeping over D4 for convex polyominoes.

``series_fixed_at_least(H)`` is the series of polyominoes whose stabilizer
contains H.  Orbit series follow from Burnside, the asymmetric series from
Mobius inversion on the subgroup lattice.  All series are in (t, q).
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache

from . import classes as K
from . import oracle
from . import symmetry as S
from .group import G, GroupElement, Subgroup, mobius_interval
from .oracle import CensusRow
from .qseries import Series, TruncationSpec, divide_exact

log = logging.getLogger(__name__)


def series_C_tq(spec: TruncationSpec) -> Series:
    return K.series_C(spec)


_FIXED = {
    G.ID: series_C_tq,
    G.R: S.series_Fr,
    G.R3: S.series_Fr,
    G.R2: S.series_Fr2,
    G.H: S.series_Fv,
    G.V: S.series_Fv,
    G.D1: S.series_Fd,
    G.D2: S.series_Fd,
}

# subgroups with a formula for F_{>=H}; D4 has none
_AT_LEAST = {
    Subgroup.TRIVIAL: series_C_tq,
    Subgroup.R2: S.series_Fr2,
    Subgroup.H: S.series_Fv,
    Subgroup.V: S.series_Fv,
    Subgroup.D1: S.series_Fd,
    Subgroup.D2: S.series_Fd,
    Subgroup.C4: S.series_Fr,
    Subgroup.HV: S.series_Fhv,
    Subgroup.D1D2: S.series_Fd1d2,
}


@lru_cache(maxsize=64)
def _cached(fn, spec: TruncationSpec) -> Series:
    return fn(spec)


def series_fixed(g: GroupElement, spec: TruncationSpec) -> Series:
    """Series of convex polyominoes fixed by g."""
    return _cached(_FIXED[GroupElement(g)], spec)


def has_formula(H: Subgroup) -> bool:
    return H in _AT_LEAST


def series_fixed_at_least(H: Subgroup, spec: TruncationSpec) -> Series:
    """F_{>=H}.  D4 is available from enumeration only (experimental)."""
    H = Subgroup(H)
    if H in _AT_LEAST:
        return _cached(_AT_LEAST[H], spec)
    log.warning("F>=D4 has no formula; using the enumeration oracle")
    return oracle.at_least_series(H, spec)


def series_rotation_type(spec: TruncationSpec) -> Series:
    """(C + 2 F_r + F_{r^2}) / 4."""
    total = (series_fixed(G.ID, spec) + series_fixed(G.R, spec).scale(2)
             + series_fixed(G.R2, spec))
    return divide_exact(total, Series.const(4, spec))


def series_congruence_type(spec: TruncationSpec) -> Series:
    """(C + 2 F_r + F_{r^2} + 2 F_d + 2 F_v) / 8."""
    total = sum((series_fixed(g, spec) for g in GroupElement), Series.zero(spec))
    return divide_exact(total, Series.const(8, spec))


def series_exactly(H: Subgroup, spec: TruncationSpec) -> Series:
    """Polyominoes whose stabilizer is exactly H: sum over K >= H of mu(H, K) F_{>=K}."""
    H = Subgroup(H)
    out = Series.zero(spec)
    for Kg in Subgroup:
        mu = mobius_interval(H, Kg)
        if mu:
            out = out + series_fixed_at_least(Kg, spec).scale(mu)
    return out


def series_asymmetric(spec: TruncationSpec) -> Series:
    """F_{=0} by Mobius inversion; mu(0, C4) = mu(0, D4) = 0, so no oracle is needed."""
    out = series_exactly(Subgroup.TRIVIAL, spec)
    if not out.is_nonnegative():
        raise ArithmeticError("negative coefficient in the asymmetric series")
    return out


def series_asymmetric_expanded(spec: TruncationSpec) -> Series:
    """C - 2F_d - F_{r^2} - 2F_v + 2F_{d1d2} + 2F_{hv}, written out."""
    f = lambda H: series_fixed_at_least(H, spec)  # noqa: E731
    return (f(Subgroup.TRIVIAL) - f(Subgroup.D1).scale(2) - f(Subgroup.R2)
            - f(Subgroup.V).scale(2) + f(Subgroup.D1D2).scale(2) + f(Subgroup.HV).scale(2))


ORBIT_SERIES = {
    "rotation": series_rotation_type,
    "congruence": series_congruence_type,
    "asym": series_asymmetric,
}

_CENSUS_GROUPS = (Subgroup.TRIVIAL, Subgroup.C4, Subgroup.R2, Subgroup.V, Subgroup.D1,
                  Subgroup.HV, Subgroup.D1D2)


def census_spec(by: str, max: int) -> TruncationSpec:
    """Truncation that makes every row of a census exact.

    By perimeter the largest area at half-perimeter h is floor(h/2) ceil(h/2).
    """
    if by == "area":
        return TruncationSpec.of("tq", max)
    if by == "perimeter":
        h = max // 2
        return TruncationSpec.of("tq", (h // 2) * ((h + 1) // 2), t=h)
    raise ValueError("by must be 'area' or 'perimeter'")


def census(by: str, max: int, threads: int = 1) -> list[CensusRow]:
    """Census rows computed from the formulas."""
    spec = census_spec(by, max)
    groups = list(_CENSUS_GROUPS)
    if threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            series = dict(zip(groups, ex.map(lambda H: series_fixed_at_least(H, spec), groups)))
    else:
        series = {H: series_fixed_at_least(H, spec) for H in groups}
    asym = series_asymmetric(spec)
    if by == "area":
        sizes = range(1, max + 1)

        def count(F, n):
            return sum(c for e, c in F.terms() if e.get("q", 0) == n)
    else:
        sizes = range(4, max + 1, 2)

        def count(F, n):
            return sum(c for e, c in F.terms() if 2 * e.get("t", 0) == n)
    rows = []
    for n in sizes:
        fixed = {H: count(series[H], n) for H in groups}
        rows.append(CensusRow.from_fixed(n, fixed, count(asym, n)))
    return rows
