"""Named series: every class the CLI and the verification suite know about."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from . import classes as K
from . import orbits as O
from . import symmetry as S
from .qseries import Series, TruncationSpec

Builder = Callable[[TruncationSpec], Series]


@dataclass(frozen=True)
class ClassInfo:
    id: str
    build: Builder
    vars: str
    kind: str                       # "base", "symmetry" or "orbit"
    oracle: str | None = None       # oracle class id, if enumeration covers it
    alt_vars: tuple[str, ...] = ()
    capped: tuple[str, ...] = ()    # variables that must carry a cap
    about: str = ""

    def spec(self, qmax: int, cap: int | None = None, vars: str | None = None) -> TruncationSpec:
        """Default truncation.  ``cap`` bounds every non-q variable; variables
        listed in ``capped`` get ``qmax`` when no cap is given."""
        vars = vars or self.vars
        if vars != self.vars and vars not in self.alt_vars:
            raise ValueError(f"class {self.id} supports variables {(self.vars,) + self.alt_vars}")
        caps = {}
        for v in vars:
            if v == "q":
                continue
            if cap is not None:
                caps[v] = cap
            elif v in self.capped:
                caps[v] = qmax
        return TruncationSpec.of(vars, qmax, **caps)


_ENTRIES = [
    ClassInfo("C", K.series_C, "tq", "base", "C", ("xyq",), about="convex polyominoes"),
    ClassInfo("P", K.series_P, "xyq", "base", "P", ("tq",), about="Ferrers diagrams"),
    ClassInfo("P0", K.series_P0, "xyq", "base", "P0", capped=("y",),
              about="Ferrers diagrams, empty rows allowed"),
    ClassInfo("PS", K.series_PS, "xyq", "base", "PS", ("tq",), about="shifted Ferrers diagrams"),
    ClassInfo("P1", K.series_P1, "uxyq", "base", "P1",
              about="shifted Ferrers diagrams, u marking the top row"),
    ClassInfo("T", K.series_T, "xyq", "base", "T", ("tq",), about="stacks"),
    ClassInfo("T0", K.series_T0, "xyq", "base", "T0", capped=("y",),
              about="stacks, empty rows allowed"),
    ClassInfo("TS", K.series_TS_iter, "uxyq", "base", "TS",
              about="shifted stacks, u marking the top row"),
    ClassInfo("D", K.series_D, "sxyq", "base", "D",
              about="directed convex, s marking the first column"),
    ClassInfo("DS", S.series_DS, "xyzq", "base", "DS",
              about="shifted directed convex, z marking the diagonal source"),
    ClassInfo("Y1", S.series_Y1, "xyzq", "base", "Y1", ("vxyzq",), about="D_S, first kind"),
    ClassInfo("Y2", S.series_Y2, "xyzq", "base", "Y2", about="D_S, second kind"),
    ClassInfo("E", S.series_E, "xzwq", "base", "E", about="even doubly shifted stacks"),
    ClassInfo("A", S.series_A, "xzwq", "base", "A", about="acute doubly shifted stacks"),
    ClassInfo("Fr", S.series_Fr, "tq", "symmetry", "Fr", about="fixed by a quarter turn"),
    ClassInfo("Fr3", S.series_Fr, "tq", "symmetry", "Fr3", about="fixed by r^3"),
    ClassInfo("Fr2", S.series_Fr2, "tq", "symmetry", "Fr2", ("xyq",), about="fixed by a half turn"),
    ClassInfo("Fr2_even", S.series_Fr2_even, "tq", "symmetry", "Fr2_even", ("xyq",)),
    ClassInfo("Fr2_odd", S.series_Fr2_odd, "tq", "symmetry", "Fr2_odd", ("xyq",)),
    ClassInfo("Fv", S.series_Fv, "tq", "symmetry", "Fv", about="fixed by the vertical reflection"),
    ClassInfo("Fh", S.series_Fh, "tq", "symmetry", "Fh"),
    ClassInfo("Fhv", S.series_Fhv, "tq", "symmetry", "Fhv"),
    ClassInfo("Fd", S.series_Fd, "tq", "symmetry", "Fd", about="fixed by a diagonal reflection"),
    ClassInfo("Fd1", S.series_Fd1, "tq", "symmetry", "Fd1"),
    ClassInfo("Fd2", S.series_Fd2, "tq", "symmetry", "Fd2"),
    ClassInfo("Fd1d2", S.series_Fd1d2, "tq", "symmetry", "Fd1d2"),
    ClassInfo("Fd1d2_even", S.series_Fd1d2_even, "tq", "symmetry", "Fd1d2_even"),
    ClassInfo("Fd1d2_odd", S.series_Fd1d2_odd, "tq", "symmetry", "Fd1d2_odd"),
    ClassInfo("rotation", O.series_rotation_type, "tq", "orbit",
              about="rotation types (orbits under C4)"),
    ClassInfo("congruence", O.series_congruence_type, "tq", "orbit",
              about="congruence types (orbits under D4)"),
    ClassInfo("asym", O.series_asymmetric, "tq", "orbit", "asym",
              about="trivial stabilizer"),
]

CLASSES: dict[str, ClassInfo] = {e.id: e for e in _ENTRIES}


def get(class_id: str) -> ClassInfo:
    try:
        return CLASSES[class_id]
    except KeyError:
        raise KeyError(f"unknown class {class_id!r}; known: {', '.join(CLASSES)}") from None


def series(class_id: str, qmax: int, cap: int | None = None, vars: str | None = None) -> Series:
    info = get(class_id)
    return info.build(info.spec(qmax, cap, vars))
