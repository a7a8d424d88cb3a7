"""Rotation-type, congruence-type and asymmetric series through q^10,
compared coefficient by coefficient with the printed reference."""

from polysym.orbits import ORBIT_SERIES
from polysym.qseries import TruncationSpec
from polysym.reference import orbit_series

spec = TruncationSpec.of("tq", 10, t=11)
for name, build in ORBIT_SERIES.items():
    got = build(spec)
    want = orbit_series(name, spec)
    print(f"{name}: {'matches' if got == want else 'DIFFERS'} ({len(got)} terms)")
    print("  " + got.to_text())
