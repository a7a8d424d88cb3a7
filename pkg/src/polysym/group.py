"""The dihedral group D4 acting on lattice cells, its subgroup lattice and Mobius function.

Kept separate from :mod:`polysym.orbits` so that the oracle and the formula
layer share a single definition of every map (in particular which diagonal
is ``d1``).
"""

from __future__ import annotations

from enum import Enum
from functools import lru_cache


class GroupElement(Enum):
    ID = "1"
    R = "r"
    R2 = "r2"
    R3 = "r3"
    H = "h"
    V = "v"
    D1 = "d1"
    D2 = "d2"

    @property
    def matrix(self):
        return MATRICES[self]

    def apply(self, c: int, r: int) -> tuple[int, int]:
        (a, b), (cc, d) = MATRICES[self]
        return a * c + b * r, cc * c + d * r

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return compose(self, other)


# Action on a cell (column, row).  r is a quarter turn counter-clockwise.
# d1 is the reflection in the line y = -x, d2 the one in y = x.
MATRICES = {
    GroupElement.ID: ((1, 0), (0, 1)),
    GroupElement.R: ((0, -1), (1, 0)),
    GroupElement.R2: ((-1, 0), (0, -1)),
    GroupElement.R3: ((0, 1), (-1, 0)),
    GroupElement.H: ((1, 0), (0, -1)),
    GroupElement.V: ((-1, 0), (0, 1)),
    GroupElement.D1: ((0, -1), (-1, 0)),
    GroupElement.D2: ((0, 1), (1, 0)),
}
_BY_MATRIX = {m: g for g, m in MATRICES.items()}


def _matmul(a, b):
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(2)) for j in range(2)) for i in range(2))


def compose(g: GroupElement, h: GroupElement) -> GroupElement:
    """g after h."""
    return _BY_MATRIX[_matmul(g.matrix, h.matrix)]


def inverse(g: GroupElement) -> GroupElement:
    for h in GroupElement:
        if compose(g, h) is GroupElement.ID:
            return h
    raise AssertionError("group is not closed")


G = GroupElement


class Subgroup(Enum):
    TRIVIAL = "0"
    R2 = "<r2>"
    H = "<h>"
    V = "<v>"
    D1 = "<d1>"
    D2 = "<d2>"
    C4 = "C4"
    HV = "<h,v>"
    D1D2 = "<d1,d2>"
    D4 = "D4"

    @property
    def elements(self) -> frozenset:
        return _ELEMENTS[self]

    @property
    def order(self) -> int:
        return len(_ELEMENTS[self])

    def __le__(self, other: "Subgroup") -> bool:
        return self.elements <= other.elements

    def __lt__(self, other: "Subgroup") -> bool:
        return self.elements < other.elements

    @classmethod
    def from_elements(cls, elems) -> "Subgroup":
        elems = frozenset(elems)
        for H in cls:
            if H.elements == elems:
                return H
        raise ValueError(f"not a subgroup: {sorted(e.value for e in elems)}")


def _closure(gens) -> frozenset:
    elems = {G.ID}
    frontier = set(gens)
    while frontier:
        elems |= frontier
        frontier = {compose(a, b) for a in elems for b in elems} - elems
    return frozenset(elems)


_ELEMENTS = {
    Subgroup.TRIVIAL: _closure([]),
    Subgroup.R2: _closure([G.R2]),
    Subgroup.H: _closure([G.H]),
    Subgroup.V: _closure([G.V]),
    Subgroup.D1: _closure([G.D1]),
    Subgroup.D2: _closure([G.D2]),
    Subgroup.C4: _closure([G.R]),
    Subgroup.HV: _closure([G.H, G.V]),
    Subgroup.D1D2: _closure([G.D1, G.D2]),
    Subgroup.D4: _closure([G.R, G.H]),
}


@lru_cache(maxsize=None)
def mobius_interval(lo: Subgroup, hi: Subgroup) -> int:
    """mu(lo, hi) on the subgroup lattice, by the defining recursion."""
    if not lo <= hi:
        return 0
    if lo is hi:
        return 1
    return -sum(mobius_interval(lo, K) for K in Subgroup if lo <= K and K < hi)


def mobius(H: Subgroup) -> int:
    return mobius_interval(Subgroup.TRIVIAL, H)
