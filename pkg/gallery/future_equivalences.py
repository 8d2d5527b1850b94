"""Future equivalences between small chains and the cospans they induce.

For each pair of grids the script lists the least future-equivalence
weight, the Gromov-Hausdorff bound over the induced cospans, and its
symmetric version.  Collapsing a chain to a point costs 1/2 as a future
equivalence, yet no symmetric weight on a full cospan can be finite there.
"""

import itertools

from catinterleave import Grid, future_equivalence_distance, grid_line_category, phi_object
from catinterleave.cospan import gh_distance
from catinterleave.futequiv import enumerate_future_equivalences

grids = [[0], [0, 1], [0, 2], [0, 1, 2]]
print(f"{'P':>10} {'Q':>10} {'#FE':>4} {'d_Fut':>6} {'d_GH':>6} {'sym':>6}")
for vp, vq in itertools.combinations_with_replacement(grids, 2):
    P, Q = grid_line_category(Grid(vp)), grid_line_category(Grid(vq))
    fes = enumerate_future_equivalences(P, Q)
    fam = [phi_object(fe) for fe in fes]
    fut = future_equivalence_distance(P, Q).value
    directed = gh_distance(fam).value
    sym = gh_distance(fam, symmetric=True).value
    print(f"{str(vp):>10} {str(vq):>10} {len(fes):>4} {str(fut):>6} {str(directed):>6} {str(sym):>6}")
