"""Brute-force enumeration of convex polyominoes.

This module is deliberately naive: it is the ground truth that every
generating-function formula in the package is tested against.  Polyominoes
are generated column by column, each column an interval overlapping the
previous one, and then filtered by an explicit convexity check.  Class
membership (stack, directed, shifted, ...) is decided by predicates written
directly from the verbal definitions of the classes.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Callable, Iterable, Iterator

from .group import GroupElement as G, Subgroup
from .qseries import Series, TruncationSpec

MAX_AREA = 14
MAX_HALFPERIM = 12


class RefusedScale(ValueError):
    pass


Cell = tuple[int, int]


def normalize(cells: Iterable[Cell]) -> frozenset:
    cells = list(cells)
    c0 = min(c for c, _ in cells)
    r0 = min(r for _, r in cells)
    return frozenset((c - c0, r - r0) for c, r in cells)


@dataclass(frozen=True)
class Polyomino:
    """A normalized cell set; cells are (column, row)."""

    cells: frozenset

    @classmethod
    def of(cls, cells: Iterable[Cell]) -> "Polyomino":
        return cls(normalize(cells))

    @cached_property
    def area(self) -> int:
        return len(self.cells)

    @cached_property
    def width(self) -> int:
        return 1 + max(c for c, _ in self.cells)

    @cached_property
    def height(self) -> int:
        return 1 + max(r for _, r in self.cells)

    @property
    def half_perimeter(self) -> int:
        return self.width + self.height

    @cached_property
    def rows(self) -> list[tuple[int, int]]:
        """(left, right) column of every row, bottom to top (convex only)."""
        out = []
        for r in range(self.height):
            cs = [c for c, rr in self.cells if rr == r]
            out.append((min(cs), max(cs)))
        return out

    @cached_property
    def columns(self) -> list[tuple[int, int]]:
        """(bottom, top) row of every column, left to right (convex only)."""
        out = []
        for c in range(self.width):
            rs = [r for cc, r in self.cells if cc == c]
            out.append((min(rs), max(rs)))
        return out

    def transform(self, g: G) -> "Polyomino":
        return Polyomino.of(g.apply(c, r) for c, r in self.cells)

    def __lt__(self, other: "Polyomino") -> bool:
        return sorted(self.cells) < sorted(other.cells)

    def picture(self) -> str:
        return "\n".join(
            "".join("#" if (c, r) in self.cells else "." for c in range(self.width))
            for r in reversed(range(self.height)))


# --------------------------------------------------------------------------
# predicates


def is_connected(cells) -> bool:
    cells = set(cells)
    if not cells:
        return False
    start = next(iter(cells))
    seen = {start}
    stack = [start]
    while stack:
        c, r = stack.pop()
        for nb in ((c + 1, r), (c - 1, r), (c, r + 1), (c, r - 1)):
            if nb in cells and nb not in seen:
                seen.add(nb)
                stack.append(nb)
    return len(seen) == len(cells)


def _lines_are_intervals(cells, axis: int) -> bool:
    lines: dict = {}
    for cell in cells:
        lines.setdefault(cell[axis], []).append(cell[1 - axis])
    return all(max(v) - min(v) + 1 == len(v) for v in lines.values())


def is_convex(cells) -> bool:
    return (is_connected(cells) and _lines_are_intervals(cells, 0)
            and _lines_are_intervals(cells, 1))


def is_ferrers(p: Polyomino) -> bool:
    """Left-justified rows, weakly decreasing going up."""
    rows = p.rows
    lens = [b - a + 1 for a, b in rows]
    return all(a == 0 for a, _ in rows) and all(x >= y for x, y in zip(lens, lens[1:]))


def is_stack(p: Polyomino) -> bool:
    """Left-justified rows with unimodal lengths."""
    if any(a != 0 for a, _ in p.rows):
        return False
    lens = [b + 1 for _, b in p.rows]
    i = 0
    while i + 1 < len(lens) and lens[i + 1] >= lens[i]:
        i += 1
    return all(lens[j + 1] <= lens[j] for j in range(i, len(lens) - 1))


def is_shifted_partition(p: Polyomino) -> bool:
    """Rows of distinct lengths, each one cell right of the row below it."""
    rows = p.rows
    return all(rows[i + 1][0] == rows[i][0] + 1 and rows[i + 1][1] <= rows[i][1]
               for i in range(len(rows) - 1))


def is_shifted_stack(p: Polyomino) -> bool:
    """Left ends move one cell left per row going up (convexity does the rest)."""
    rows = p.rows
    return all(rows[i + 1][0] == rows[i][0] - 1 for i in range(len(rows) - 1))


def ne_reachable(cells, sources) -> bool:
    cells = set(cells)
    seen = set(sources)
    stack = list(sources)
    while stack:
        c, r = stack.pop()
        for nb in ((c + 1, r), (c, r + 1)):
            if nb in cells and nb not in seen:
                seen.add(nb)
                stack.append(nb)
    return len(seen) == len(cells)


def is_directed(p: Polyomino) -> bool:
    """Contains the bottom-left cell of its box; every cell reachable by N/E steps."""
    return (0, 0) in p.cells and ne_reachable(p.cells, [(0, 0)])


def diagonal_source(p: Polyomino) -> list[Cell]:
    d = min(c + r for c, r in p.cells)
    return sorted(cell for cell in p.cells if sum(cell) == d)


def _reflect_antidiag(cells, d: int):
    # reflection in the line c + r = d, a d1-type axis
    return {(d - r, d - c) for c, r in cells}


def is_ds(p: Polyomino) -> bool:
    """Fundamental region of a d1-symmetric convex polyomino."""
    d = min(c + r for c, r in p.cells)
    full = set(p.cells) | _reflect_antidiag(p.cells, d)
    return is_convex(full)


def is_y1(p: Polyomino) -> bool:
    """D_S polyomino whose North-East corner is in or above the flotation row."""
    src = diagonal_source(p)
    flot = max(r for _, r in src)
    right = p.width - 1
    ne = max(r for c, r in p.cells if c == right)
    return ne >= flot


def _v_staircase(p: Polyomino, parity: str):
    """Left ends of an even/acute doubly shifted stack.

    Returns (n1, n2) diagonal lengths or None.  Even: the left ends read
    bottom-to-top are X+n2-1, ..., X, X, ..., X+n1-1.  Acute: they are
    X+n2-1, ..., X, ..., X+n1-1 with the middle row shared.
    """
    lefts = [a for a, _ in p.rows]
    X = min(lefts)
    h = len(lefts)
    for mid in range(h):
        if lefts[mid] != X:
            continue
        if parity == "even":
            if mid + 1 >= h or lefts[mid + 1] != X:
                continue
            lower = lefts[: mid + 1][::-1]
            upper = lefts[mid + 1:]
        else:
            lower = lefts[: mid + 1][::-1]
            upper = lefts[mid:]
        if all(v == X + j for j, v in enumerate(lower)) and all(v == X + j for j, v in enumerate(upper)):
            return len(upper), len(lower)
    return None


def _unfold_dd(p: Polyomino, parity: str):
    """Glue the four images of an East region; returns the full cell set."""
    lefts = [a for a, _ in p.rows]
    X = min(lefts)
    st = _v_staircase(p, parity)
    n1, n2 = st
    # doubled coordinates of the centre point
    if parity == "even":
        cy2 = 2 * n2  # boundary between row n2-1 and n2
        cx2 = 2 * X
    else:
        cy2 = 2 * (n2 - 1) + 1
        cx2 = 2 * X + 1
    out = set()
    for c, r in p.cells:
        a, b = 2 * c + 1 - cx2, 2 * r + 1 - cy2
        for aa, bb in ((a, b), (-a, -b), (b, a), (-b, -a)):
            out.add(((aa + cx2 - 1) // 2, (bb + cy2 - 1) // 2))
    return out


def is_doubly_shifted(p: Polyomino, parity: str) -> bool:
    if _v_staircase(p, parity) is None:
        return False
    full = _unfold_dd(p, parity)
    return is_convex(full)


# --------------------------------------------------------------------------
# enumeration


def _check_bounds(max_area, max_halfperim):
    if max_area is None and max_halfperim is None:
        raise RefusedScale("give max_area or max_halfperim")
    ok_a = max_area is not None and max_area <= MAX_AREA
    ok_h = max_halfperim is not None and max_halfperim <= MAX_HALFPERIM
    if not (ok_a or ok_h):
        raise RefusedScale(f"oracle bounds are area <= {MAX_AREA} or half-perimeter <= {MAX_HALFPERIM}")


def _raw_convex(max_area: int, max_hp: int) -> Iterator[frozenset]:
    # columns are intervals [b, t]; the first one has b = 0
    cols: list[tuple[int, int]] = []

    def emit():
        cells = [(i, r) for i, (b, t) in enumerate(cols) for r in range(b, t + 1)]
        if is_convex(cells):
            yield normalize(cells)

    def grow(area, lo, hi):
        yield from emit()
        w = len(cols)
        pb, pt = cols[-1]
        for b in range(pb - (max_area - area) + 1, pt + 1):
            for t in range(max(b, pb), b + max_area - area):
                nlo, nhi = min(lo, b), max(hi, t)
                if area + t - b + 1 > max_area or w + 1 + nhi - nlo + 1 > max_hp:
                    continue
                # a row that is absent from the previous column and was seen
                # before would leave a gap no later column can close
                if b < pb and b <= hi and pb - 1 >= lo and max(b, lo) <= min(pb - 1, hi):
                    continue
                if t > pt and t >= lo and pt + 1 <= hi and max(pt + 1, lo) <= min(t, hi):
                    continue
                cols.append((b, t))
                yield from grow(area + t - b + 1, nlo, nhi)
                cols.pop()

    for h in range(1, max_area + 1):
        if 1 + h > max_hp:
            break
        cols.append((0, h - 1))
        yield from grow(h, 0, h - 1)
        cols.pop()


@lru_cache(maxsize=8)
def _convex_list(max_area: int, max_hp: int) -> tuple:
    return tuple(Polyomino(c) for c in _raw_convex(max_area, max_hp))


def enumerate_convex(max_area: int | None = None, max_halfperim: int | None = None) -> Iterator[Polyomino]:
    """Every convex polyomino within the bounds, once each (up to translation)."""
    _check_bounds(max_area, max_halfperim)
    h = max_halfperim if max_halfperim is not None else max_area + 1
    # a w x h box with w + h = hp holds at most floor(hp/2) * ceil(hp/2) cells
    a = (h // 2) * (h - h // 2)
    if max_area is not None:
        a = min(a, max_area)
    yield from _convex_list(a, h)


def enumerate_polyominoes(max_area: int) -> list[frozenset]:
    """All polyominoes (not necessarily convex) by naive growth; tests only."""
    if max_area > 8:
        raise RefusedScale("naive polyomino growth is limited to area 8")
    level = {frozenset([(0, 0)])}
    out = list(level)
    for _ in range(max_area - 1):
        nxt = set()
        for p in level:
            for c, r in p:
                for nb in ((c + 1, r), (c - 1, r), (c, r + 1), (c, r - 1)):
                    if nb not in p:
                        nxt.add(normalize(p | {nb}))
        level = nxt
        out.extend(level)
    return out


# --------------------------------------------------------------------------
# stabilizers and census


def stabilizer(p: Polyomino) -> Subgroup:
    return Subgroup.from_elements(g for g in G if p.transform(g) == p)


def canonical(p: Polyomino) -> Polyomino:
    return min(p.transform(g) for g in G)


def orbit_counts(polys: Iterable[Polyomino], group: Subgroup) -> int:
    reps = set()
    for p in polys:
        reps.add(min(p.transform(g) for g in group.elements))
    return len(reps)


CENSUS_HEADER = ("size", "id", "r", "r2", "rotation", "h_v", "d1_d2", "congruence", "hv", "d1d2", "asym")


@dataclass(frozen=True)
class CensusRow:
    size: int
    id: int
    r: int
    r2: int
    rotation: int
    h_v: int
    d1_d2: int
    congruence: int
    hv: int
    d1d2: int
    asym: int

    def as_tuple(self) -> tuple:
        return tuple(getattr(self, k) for k in CENSUS_HEADER)

    @classmethod
    def from_fixed(cls, size: int, fixed: dict, asym: int) -> "CensusRow":
        """Build a row from at-least-stabilizer counts; Burnside fills the orbit columns."""
        c1, r, r2 = fixed[Subgroup.TRIVIAL], fixed[Subgroup.C4], fixed[Subgroup.R2]
        hv1, d1 = fixed[Subgroup.V], fixed[Subgroup.D1]
        rot, rem = divmod(c1 + 2 * r + r2, 4)
        con, rem2 = divmod(c1 + 2 * r + r2 + 2 * hv1 + 2 * d1, 8)
        if rem or rem2:
            raise ArithmeticError(f"Burnside sum not divisible at size {size}")
        return cls(size, c1, r, r2, rot, hv1, d1, con, fixed[Subgroup.HV], fixed[Subgroup.D1D2], asym)


def census(by: str, max: int) -> list[CensusRow]:
    """Census rows from exact stabilizers.

    ``by='area'`` gives rows for areas 1..max; ``by='perimeter'`` gives rows
    for perimeters 4, 6, ..., max.
    """
    if by == "area":
        polys = enumerate_convex(max_area=max)
        sizes = range(1, max + 1)
        key = lambda p: p.area  # noqa: E731
    elif by == "perimeter":
        polys = enumerate_convex(max_halfperim=max // 2)
        sizes = range(4, max + 1, 2)
        key = lambda p: 2 * p.half_perimeter  # noqa: E731
    else:
        raise ValueError("by must be 'area' or 'perimeter'")
    at_least = {s: {H: 0 for H in Subgroup} for s in sizes}
    asym = {s: 0 for s in sizes}
    for p in polys:
        s = key(p)
        if s not in at_least:
            continue
        st = stabilizer(p)
        for H in Subgroup:
            if H <= st:
                at_least[s][H] += 1
        if st is Subgroup.TRIVIAL:
            asym[s] += 1
    return [CensusRow.from_fixed(s, at_least[s], asym[s]) for s in sizes]


def census_csv(rows: Iterable[CensusRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CENSUS_HEADER)
    for row in rows:
        w.writerow(row.as_tuple())
    return buf.getvalue()


# --------------------------------------------------------------------------
# series by direct summation


def _sum_weights(spec: TruncationSpec, items: Iterable[dict]) -> Series:
    terms: dict = {}
    for e in items:
        k = tuple(sorted(e.items()))
        terms[k] = terms.get(k, 0) + 1
    return Series.from_terms(spec, ((dict(k), c) for k, c in terms.items()))


def _fixed_by(p: Polyomino, *gs: G) -> bool:
    return all(p.transform(g) == p for g in gs)


def _tq(p: Polyomino) -> dict:
    return {"t": p.half_perimeter, "q": p.area}


def _xyq(p: Polyomino) -> dict:
    return {"x": p.width, "y": p.height, "q": p.area}


def _sequences(max_len: int, max_sum: int, ok) -> Iterator[tuple]:
    """Tuples of nonnegative row lengths accepted by ``ok`` (prefix-closed)."""
    def rec(seq, total):
        if seq:
            yield seq
        if len(seq) == max_len:
            return
        for r in range(0, max_sum - total + 1):
            nxt = seq + (r,)
            if ok(nxt):
                yield from rec(nxt, total + r)
    yield from rec((), 0)


def _unimodal_prefix(seq) -> bool:
    # a prefix of a weakly increasing then weakly decreasing sequence
    down = False
    for a, b in zip(seq, seq[1:]):
        if b < a:
            down = True
        elif b > a and down:
            return False
    return True


def _row_objects(spec, ok):
    ycap = spec.cap("y")
    if ycap is None:
        raise RefusedScale("classes with empty rows need a cap on y")
    for seq in _sequences(ycap, spec.qmax, ok):
        yield {"x": max(seq), "y": len(seq), "q": sum(seq)}


def _p0(polys, spec):
    # rows bottom to top, weakly decreasing, empty rows allowed
    return _row_objects(spec, lambda s: len(s) < 2 or s[-1] <= s[-2])


def _t0(polys, spec):
    # unimodal row lengths; zeros can then only sit at either end
    return _row_objects(spec, _unimodal_prefix)


def _d(polys, spec):
    for p in polys:
        if is_directed(p):
            yield {"s": p.columns[0][1] + 1, "x": p.width, "y": p.height, "q": p.area}


def _ds_weight(p):
    return {"x": p.width, "y": p.height, "z": len(diagonal_source(p)), "q": p.area}


def _ds(polys, spec):
    return (_ds_weight(p) for p in polys if is_ds(p))


def _y1(polys, spec):
    for p in polys:
        if is_ds(p) and is_y1(p):
            e = _ds_weight(p)
            if "v" in spec.vars:
                a, b = p.rows[0]
                e["v"] = b - a + 1
            yield e


def _y2(polys, spec):
    return (_ds_weight(p) for p in polys if is_ds(p) and not is_y1(p))


def _ts(polys, spec):
    for p in polys:
        if is_shifted_stack(p):
            a, b = p.rows[-1]
            yield {"u": b - a + 1, "x": p.width, "y": p.height, "q": p.area}


def _p1(polys, spec):
    # shifted stacks with a full-width top row and no second row of width - 1
    for p in polys:
        if not is_shifted_stack(p):
            continue
        rows = p.rows
        a, b = rows[-1]
        if b - a + 1 != p.width:
            continue
        if len(rows) == 1 or rows[-2][1] - rows[-2][0] + 1 <= p.width - 2:
            yield {"u": p.width, "x": p.width, "y": p.height, "q": p.area}


def _dd(parity):
    def build(polys, spec):
        for p in polys:
            if is_doubly_shifted(p, parity):
                upper, lower = _v_staircase(p, parity)
                # z marks the lower (d1) diagonal, w the upper (d2) one
                yield {"x": p.width, "z": lower, "w": upper, "q": p.area}
    return build


def _by_predicate(pred):
    def build(polys, spec):
        weight = _tq if "t" in spec.vars else _xyq
        return (weight(p) for p in polys if pred(p))
    return build


def _is_fixed(*gs):
    return lambda p: _fixed_by(p, *gs)


PREDICATES: dict = {
    "C": lambda p: True,
    "P": is_ferrers,
    "PS": is_shifted_partition,
    "T": is_stack,
    "Fr": _is_fixed(G.R),
    "Fr3": _is_fixed(G.R3),
    "Fr2": _is_fixed(G.R2),
    "Fr2_even": lambda p: p.width % 2 == 0 and _fixed_by(p, G.R2),
    "Fr2_odd": lambda p: p.width % 2 == 1 and _fixed_by(p, G.R2),
    "Fv": _is_fixed(G.V),
    "Fh": _is_fixed(G.H),
    "Fhv": _is_fixed(G.H, G.V),
    "Fd1": _is_fixed(G.D1),
    "Fd2": _is_fixed(G.D2),
    "Fd1d2": _is_fixed(G.D1, G.D2),
    "Fd1d2_even": lambda p: p.width % 2 == 0 and _fixed_by(p, G.D1, G.D2),
    "Fd1d2_odd": lambda p: p.width % 2 == 1 and _fixed_by(p, G.D1, G.D2),
    "FD4": _is_fixed(G.R, G.H),
    "asym": lambda p: stabilizer(p) is Subgroup.TRIVIAL,
}
PREDICATES["Fd"] = PREDICATES["Fd1"]

_CLASSES: dict = {k: _by_predicate(v) for k, v in PREDICATES.items()}
_CLASSES.update({
    "P0": _p0,
    "T0": _t0,
    "D": _d,
    "TS": _ts,
    "P1": _p1,
    "DS": _ds,
    "Y1": _y1,
    "Y2": _y2,
    "E": _dd("even"),
    "A": _dd("acute"),
})

ORACLE_CLASSES = tuple(_CLASSES)


def exact_stabilizer_series(H: Subgroup, spec: TruncationSpec) -> Series:
    """(t, q) series of polyominoes whose stabilizer is exactly H."""
    polys = enumerate_convex(max_area=spec.qmax)
    return _sum_weights(spec, (_tq(p) for p in polys if stabilizer(p) is H))


def at_least_series(H: Subgroup, spec: TruncationSpec) -> Series:
    """(t, q) series of polyominoes whose stabilizer contains H."""
    polys = enumerate_convex(max_area=spec.qmax)
    return _sum_weights(spec, (_tq(p) for p in polys if H <= stabilizer(p)))


def oracle_series(cls: str, spec: TruncationSpec) -> Series:
    """Series of a class by summing weights over enumerated polyominoes.

    The area bound is ``spec.qmax``; so every coefficient up to the
    truncation is exact.
    """
    if cls not in _CLASSES:
        raise KeyError(f"unknown oracle class {cls!r}; known: {', '.join(_CLASSES)}")
    _check_bounds(spec.qmax, None)
    polys = enumerate_convex(max_area=spec.qmax)
    return _sum_weights(spec, _CLASSES[cls](polys, spec))
