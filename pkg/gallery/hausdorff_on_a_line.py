"""Directed and symmetric Hausdorff distances on three points of a line.

On a symmetric space the offset form agrees with the sup-inf form, and the
offset-interleaving distance matches both.  Directing the line breaks that.
"""

from catinterleave import hausdorff, hausdorff_via_offsets, offset, offset_interleaving_distance, sym_hausdorff
from catinterleave.metric import from_points_on_line

line = from_points_on_line([0, 1, 3])
A, B = ["0"], ["1", "3"]
print("symmetric line")
print("  d(A,B)          =", hausdorff(line, A, B))
print("  via offsets     =", hausdorff_via_offsets(line, A, B))
print("  symmetric       =", sym_hausdorff(line, A, B))
print("  offset distance =", offset_interleaving_distance(line, A, B))

directed = from_points_on_line([0, 1, 3], directed=True)
print("directed line (only moving right is free of infinity)")
print("  1-offset of {0} into the future:", sorted(offset(directed, ["0"], 1)))
print("  d(A,B) =", hausdorff(directed, A, B), " d(B,A) =", hausdorff(directed, B, A))
print("  symmetric =", sym_hausdorff(directed, A, B))
