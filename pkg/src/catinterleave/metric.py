"""Finite Lawvere metric spaces and Hausdorff distances.

Distances may be asymmetric, infinite, and zero between distinct points.
All infima over ``r >= 0`` are taken over a finite candidate set on which
every relevant offset membership changes, so the minima are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .category import Report
from .weights import INF, ZERO, Weight, WeightLike, as_weight, wmax, wmin


class EmptySubsetError(ValueError):
    """Raised when a Hausdorff-type distance is asked of an empty subset."""


@dataclass(frozen=True)
class LawvereSpace:
    points: tuple[str, ...]
    dist: Sequence[Sequence[Weight]]

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        n = len(self.points)
        rows = tuple(tuple(as_weight(x) for x in row) for row in self.dist)
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValueError("distance matrix shape does not match the point set")
        object.__setattr__(self, "dist", rows)

    @cached_property
    def index(self) -> dict[str, int]:
        return {p: i for i, p in enumerate(self.points)}

    def d(self, x: str, y: str) -> Weight:
        return self.dist[self.index[x]][self.index[y]]

    def __len__(self) -> int:
        return len(self.points)

    @property
    def is_symmetric(self) -> bool:
        n = len(self.points)
        return all(self.dist[i][j] == self.dist[j][i] for i in range(n) for j in range(i))

    def candidates(self) -> list[Weight]:
        """Zero together with every finite matrix entry, sorted."""
        vals = {ZERO}
        for row in self.dist:
            vals.update(x for x in row if x.is_finite)
        return sorted(vals)


def validate_lawvere(s: LawvereSpace) -> Report:
    report = Report()
    n = len(s.points)
    if len(set(s.points)) != n:
        report.add("duplicate point id")
    for i, x in enumerate(s.points):
        if s.dist[i][i] != ZERO:
            report.add(f"d({x},{x}) != 0")
    for i in range(n):
        for j in range(n):
            dij = s.dist[i][j]
            for k in range(n):
                if s.dist[i][k] > dij + s.dist[j][k]:
                    x, y, z = s.points[i], s.points[j], s.points[k]
                    report.add(f"triangle inequality fails on ({x},{y},{z})")
    return report


def _members(s: LawvereSpace, A: Iterable[str]) -> list[str]:
    members = list(dict.fromkeys(A))
    for a in members:
        if a not in s.index:
            raise KeyError(f"{a!r} is not a point of the space")
    return members


def _nonempty(s: LawvereSpace, A: Iterable[str]) -> list[str]:
    members = _members(s, A)
    if not members:
        raise EmptySubsetError("Hausdorff distance is undefined for an empty subset")
    return members


def distance_from(s: LawvereSpace, A: Iterable[str], m: str) -> Weight:
    """``inf_{a in A} d(a, m)``."""
    return wmin(s.d(a, m) for a in A)


def distance_to(s: LawvereSpace, m: str, A: Iterable[str]) -> Weight:
    """``inf_{a in A} d(m, a)``."""
    return wmin(s.d(m, a) for a in A)


def offset(s: LawvereSpace, A: Iterable[str], r: WeightLike, direction: str = "future") -> frozenset[str]:
    """Future offset ``{m : d(A, m) <= r}`` or past offset ``{m : d(m, A) <= r}``."""
    r = as_weight(r)
    A = _members(s, A)
    if direction == "future":
        return frozenset(m for m in s.points if distance_from(s, A, m) <= r)
    if direction == "past":
        return frozenset(m for m in s.points if distance_to(s, m, A) <= r)
    raise ValueError("direction must be 'future' or 'past'")


def hausdorff(s: LawvereSpace, A: Iterable[str], B: Iterable[str]) -> Weight:
    """Directed Hausdorff distance; both terms measure ``d(a, b)`` with a in A."""
    A, B = _nonempty(s, A), _nonempty(s, B)
    forward = wmax(wmin(s.d(a, b) for b in B) for a in A)
    backward = wmax(wmin(s.d(a, b) for a in A) for b in B)
    return max(forward, backward)


def hausdorff_via_offsets(s: LawvereSpace, A: Iterable[str], B: Iterable[str]) -> Weight:
    """Least candidate r with ``A ⊆ past_r(B)`` and ``B ⊆ future_r(A)``."""
    A, B = _nonempty(s, A), _nonempty(s, B)
    for r in s.candidates():
        if set(A) <= offset(s, B, r, "past") and set(B) <= offset(s, A, r, "future"):
            return r
    return INF


def sym_hausdorff(s: LawvereSpace, A: Iterable[str], B: Iterable[str]) -> Weight:
    A, B = list(A), list(B)
    return max(hausdorff(s, A, B), hausdorff(s, B, A))


def offset_candidates(s: LawvereSpace) -> list[Weight]:
    """Matrix entries, zero, and positive differences of finite entries."""
    base = s.candidates()
    vals = set(base)
    for x in base:
        for y in base:
            if x > y:
                vals.add(x - y)
    return sorted(vals)


def offset_interleaving_distance(s: LawvereSpace, A: Iterable[str], B: Iterable[str]) -> Weight:
    """Interleaving distance of the future-offset families of A and B.

    Two families are r-interleaved when ``A^a ⊆ B^(a+r)`` and ``B^a ⊆ A^(a+r)``
    for every level a.  Offsets only change at matrix entries, so checking
    levels from :meth:`LawvereSpace.candidates` is exhaustive; r ranges over
    :func:`offset_candidates`, which contains the exact infimum.
    """
    A, B = _nonempty(s, A), _nonempty(s, B)
    levels = s.candidates()
    fam_a = {a: offset(s, A, a) for a in levels}
    fam_b = {a: offset(s, B, a) for a in levels}
    for r in offset_candidates(s):
        if all(
            fam_a[a] <= offset(s, B, a + r) and fam_b[a] <= offset(s, A, a + r)
            for a in levels
        ):
            return r
    return INF


def underlying_category(s: LawvereSpace):
    """One morphism ``x -> y`` exactly when ``d(x, y) < inf``, weighted by the distance."""
    from .category import thin_category

    return thin_category(
        s.points,
        lambda x, y: s.d(x, y).is_finite,
        lambda x, y: s.d(x, y),
    )


def from_points_on_line(values: Sequence, directed: bool = False, names: Sequence[str] | None = None) -> LawvereSpace:
    """Points of the rational line; ``directed`` gives ``d(x,y) = y-x`` if ``y >= x`` else inf."""
    from fractions import Fraction

    vals = [Fraction(v) for v in values]
    names = list(names) if names is not None else [str(v) for v in vals]
    rows = []
    for x in vals:
        row = []
        for y in vals:
            if directed:
                row.append(Weight(y - x) if y >= x else INF)
            else:
                row.append(Weight(abs(y - x)))
        rows.append(row)
    return LawvereSpace(names, rows)
