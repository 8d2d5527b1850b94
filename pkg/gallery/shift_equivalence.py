"""Shift equivalence of finite dynamical systems as interleaving along N.

A two-point system collapsing onto a fixed point is shift equivalent with
lag 1 to the one-point system, and not with lag 0.  The same witnesses are
found by searching interleavings along the lag future equivalence.
"""

from catinterleave import DynSystem, ShiftCategory, ShiftMorphism, search_shift_equivalence, shift_compose
from catinterleave.dynsys import search_lag_interleaving

two = DynSystem(["0", "1"], {"0": "1", "1": "1"})
one = DynSystem(["1"], {"1": "1"})
for lag in range(3):
    shift = search_shift_equivalence(two, one, lag)
    inter = search_lag_interleaving(two, one, lag)
    print(f"lag {lag}: shift equivalence {shift}, interleaving {inter}")

c = ShiftCategory(1)
a, b = ShiftMorphism("a", 0), ShiftMorphism("b", 0)
print("in I_1: b∘a =", shift_compose(c, b, a), " a∘b =", shift_compose(c, a, b))
print("        a∘φ^2 =", shift_compose(c, a, ShiftMorphism("phi", 2)))
