"""The exact orientation predicates and their float filter.

orient2d/orient3d return the exact sign of a determinant.  A fast float
evaluation with a forward error bound handles the easy cases; whenever
the bound cannot certify the sign, the call falls back to arbitrary-
precision rational arithmetic.  Instrumented counters show which path
each call took.

Run:  python3 demos/02_exact_predicates.py
"""

from gmpy2 import mpq

from tritri import numeric
from tritri.numeric import LPIPoint, exact_coordinates, orient2d, orient3d

# an easy case: the filter certifies the sign immediately
numeric.reset_call_counts()
s = orient3d((0.0, 0.0, 0.0), (1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0))
print(f"well-separated point: sign={s.name}, counts={dict(numeric.get_call_counts())}")

# a hard case: the point is one representable step off a diagonal line,
# far below what a float determinant can resolve
numeric.reset_call_counts()
s = orient2d((0.5, 0.5), (12.0, 12.0), (24.0, 24.0 + 2.0 ** -48))
print(f"one ulp off the line:  sign={s.name}, counts={dict(numeric.get_call_counts())}")

# rational inputs work unchanged, and represent values no float can
s = orient2d((mpq(1, 2), mpq(1, 2)), (mpq(12), mpq(12)),
             (mpq(24), mpq(24) + mpq(1, 2 ** 52)))
print(f"rational coordinates:  sign={s.name}")

# implicit points: a line-plane intersection is stored by its five
# defining points and never rounded
lpi = LPIPoint(
    (1.0, 1.0, -1.0), (1.0, 1.0, 2.0),                      # the line
    (0.0, 0.0, 0.0), (5.0, 0.0, 0.0), (0.0, 5.0, 0.0),      # the plane
)
print(f"implicit point coordinates: {exact_coordinates(lpi)}")
s = orient3d((0.0, 0.0, 0.0), (5.0, 0.0, 0.0), (0.0, 5.0, 0.0), lpi)
print(f"implicit point on its own plane: sign={s.name} (exactly ZERO)")

# TRITRI_FORCE_EXACT=1 (or set_force_exact) disables the filter entirely
with numeric.forced_exact():
    numeric.reset_call_counts()
    orient3d((0.0, 0.0, 0.0), (1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0))
    print(f"forced exact mode:     counts={dict(numeric.get_call_counts())}")
