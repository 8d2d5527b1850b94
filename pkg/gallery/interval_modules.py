"""Two interval modules on a grid and their distance over the epsilon family.

M_0 lives on [0, inf) and M_1 on [1, inf).  The search over the two-copy
categories I_0, I_1/2 and I_1 succeeds first at 1, so 1 is the reported
upper bound.  Shifting copy 1 down by 1 instead gives a zero-weight cospan
that also interleaves them.
"""

from fractions import Fraction

from catinterleave import Grid, hausdorff_weight, interleaving_distance, interval_module, standard_family
from catinterleave.zoo import module_functor, translated_cospan

grid = Grid.regular(0, 2, Fraction(1, 2))
m0 = module_functor(interval_module(grid, 0, "inf"))
m1 = module_functor(interval_module(grid, 1, "inf"), target=m0.target)

family = standard_family(grid, [0, Fraction(1, 2), 1])
for e in family:
    print(f"{e.label:>6}: weight {hausdorff_weight(e)}")
bound = interleaving_distance(m0, m1, family)
print("distance over the family:", bound.value, "witness", family[bound.witness].label, "(upper bound)")

shifted = translated_cospan(grid, -1)
bound = interleaving_distance(m0, m1, family + [shifted])
print("adding the translated cospan:", bound.value, "witness", (family + [shifted])[bound.witness].label)
