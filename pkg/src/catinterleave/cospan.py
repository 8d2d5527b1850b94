"""Embedding pairs ``P -> I <- Q``, their pushout composite, and interleavings.

Distances here are minima over explicit candidate families of cospans.  The
true infima range over all cospans and are not computable, so every reported
distance is an upper bound.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from scipy.cluster.hierarchy import DisjointSet

from .category import (
    Category,
    Functor,
    Report,
    compose_functors,
    embedding_report,
    identity_functor,
    induced_metric,
    validate_category,
    validate_functor,
    validate_weighted,
)
from .metric import EmptySubsetError, hausdorff, sym_hausdorff
from .weights import INF, Weight, wmin


class BoundsExceeded(RuntimeError):
    """A search would exceed its configured caps; distinct from "no solution"."""


@dataclass(frozen=True)
class EmbeddingPair:
    leg_p: Functor
    leg_q: Functor
    window_p: frozenset[str] | None = None
    window_q: frozenset[str] | None = None
    label: str = ""

    def __post_init__(self):
        if self.leg_p.target is not self.leg_q.target and self.leg_p.target != self.leg_q.target:
            raise ValueError("legs of a cospan must share their target")
        for name in ("window_p", "window_q"):
            w = getattr(self, name)
            if w is not None:
                object.__setattr__(self, name, frozenset(w))

    @property
    def P(self) -> Category:
        return self.leg_p.source

    @property
    def Q(self) -> Category:
        return self.leg_q.source

    @property
    def I(self) -> Category:
        return self.leg_p.target

    def with_windows(self, window_p: Iterable[str] | None, window_q: Iterable[str] | None) -> "EmbeddingPair":
        return EmbeddingPair(
            self.leg_p,
            self.leg_q,
            None if window_p is None else frozenset(window_p),
            None if window_q is None else frozenset(window_q),
            self.label,
        )


def identity_cospan(P: Category) -> EmbeddingPair:
    leg = identity_functor(P)
    return EmbeddingPair(leg, leg, label="identity")


def validate_cospan(e: EmbeddingPair) -> Report:
    report = validate_weighted(e.I) if e.I.is_weighted else validate_category(e.I)
    if not report.ok:
        return report
    for name, leg in (("P", e.leg_p), ("Q", e.leg_q)):
        report.extend(validate_functor(leg), f"leg {name}: ")
        if report.ok:
            report.extend(embedding_report(leg), f"leg {name}: ")
    return report


# ---------------------------------------------------------------------------
# pushout


@dataclass(frozen=True)
class CrossClass:
    """One morphism of the pushout between the two outer parts.

    ``members`` are pairs ``(second, first)`` of morphism ids: for the
    I-to-J direction ``first`` lives in I and ``second`` in J, and the other
    way around for the J-to-I direction.
    """

    id: str
    source: str
    target: str
    direction: str  # "IJ" or "JI"
    members: tuple[tuple[str, str], ...]
    weight: Weight | None

    @property
    def representative(self) -> tuple[str, str]:
        return self.members[0]


@dataclass
class _PushoutData:
    I: Category
    J: Category
    G: Functor  # Q -> I
    H: Functor  # Q -> J
    q_in_i: set[str] = field(default_factory=set)
    q_in_j: set[str] = field(default_factory=set)
    j2i_obj: dict[str, str] = field(default_factory=dict)
    j2i_mor: dict[str, str] = field(default_factory=dict)
    i2j_mor: dict[str, str] = field(default_factory=dict)


def _prepare(e1: EmbeddingPair, e2: EmbeddingPair) -> _PushoutData:
    if e1.Q is not e2.P and e1.Q != e2.P:
        raise ValueError("middle categories of the two cospans differ")
    d = _PushoutData(e1.I, e2.I, e1.leg_q, e2.leg_p)
    Q = e1.Q
    d.q_in_i = {d.G.obj_map[q] for q in Q.objects}
    d.q_in_j = {d.H.obj_map[q] for q in Q.objects}
    d.j2i_obj = {d.H.obj_map[q]: d.G.obj_map[q] for q in Q.objects}
    for m in Q.morphisms:
        d.j2i_mor[d.H.mor_map[m]] = d.G.mor_map[m]
        d.i2j_mor[d.G.mor_map[m]] = d.H.mor_map[m]
    return d


def cross_classes(e1: EmbeddingPair, e2: EmbeddingPair) -> list[CrossClass]:
    """Equivalence classes of pairs through the shared middle, both directions.

    The relation is generated by ``(g∘h, f) ~ (g, h∘f)`` for every morphism
    ``h`` of the middle category, and closed with a disjoint-set forest.
    """
    d = _prepare(e1, e2)
    I, J, G, H, Q = d.I, d.J, d.G, d.H, e1.Q
    weighted = I.is_weighted and J.is_weighted
    outer_i = [x for x in I.objects if x not in d.q_in_i]
    outer_j = [y for y in J.objects if y not in d.q_in_j]
    classes: list[CrossClass] = []

    def build(x: str, y: str, direction: str) -> None:
        pairs: list[tuple[str, str]] = []
        if direction == "IJ":
            for q in Q.objects:
                for f in I.hom(x, G.obj_map[q]):
                    for g in J.hom(H.obj_map[q], y):
                        pairs.append((g, f))
        else:
            for q in Q.objects:
                for g in J.hom(x, H.obj_map[q]):
                    for f in I.hom(G.obj_map[q], y):
                        pairs.append((f, g))
        if not pairs:
            return
        forest = DisjointSet(pairs)
        for h, (q1, q2) in Q.morphisms.items():
            if direction == "IJ":
                # (g' ∘ H h, f) ~ (g', G h ∘ f)
                for f in I.hom(x, G.obj_map[q1]):
                    for g2 in J.hom(H.obj_map[q2], y):
                        forest.merge((J.compose(g2, H.mor_map[h]), f), (g2, I.compose(G.mor_map[h], f)))
            else:
                # (f' ∘ G h, g) ~ (f', H h ∘ g)
                for g in J.hom(x, H.obj_map[q1]):
                    for f2 in I.hom(G.obj_map[q2], y):
                        forest.merge((I.compose(f2, G.mor_map[h]), g), (f2, J.compose(H.mor_map[h], g)))
        seen: dict[tuple[str, str], list[tuple[str, str]]] = {}
        for pair in pairs:
            seen.setdefault(forest[pair], []).append(pair)
        for members in seen.values():
            rep = members[0]
            if direction == "IJ":
                cid = f"[J:{rep[0]}|I:{rep[1]}]"
                src, dst = f"I:{x}", f"J:{y}"
                w = wmin(J.weights[g] + I.weights[f] for g, f in members) if weighted else None
            else:
                cid = f"[I:{rep[0]}|J:{rep[1]}]"
                src, dst = f"J:{x}", f"I:{y}"
                w = wmin(I.weights[f] + J.weights[g] for f, g in members) if weighted else None
            classes.append(CrossClass(cid, src, dst, direction, tuple(members), w))

    for x in outer_i:
        for y in outer_j:
            build(x, y, "IJ")
    for y in outer_j:
        for x in outer_i:
            build(y, x, "JI")
    return classes


def pushout(e1: EmbeddingPair, e2: EmbeddingPair) -> EmbeddingPair:
    """Horizontal composite of ``P -> I <- Q`` and ``Q -> J <- R``."""
    return pushout_with_classes(e1, e2)[0]


def pushout_with_classes(e1: EmbeddingPair, e2: EmbeddingPair) -> tuple[EmbeddingPair, list[CrossClass]]:
    d = _prepare(e1, e2)
    I, J = d.I, d.J
    weighted = I.is_weighted and J.is_weighted
    classes = cross_classes(e1, e2)
    class_of: dict[tuple[str, str, str], str] = {}
    for c in classes:
        for pair in c.members:
            class_of[(c.direction,) + pair] = c.id

    def obj_id(side: str, x: str) -> str:
        if side == "J" and x in d.q_in_j:
            return f"I:{d.j2i_obj[x]}"
        return f"{side}:{x}"

    objects = [f"I:{x}" for x in I.objects] + [f"J:{y}" for y in J.objects if y not in d.q_in_j]
    morphisms: dict[str, tuple[str, str]] = {}
    weights: dict[str, Weight] = {}
    segments: dict[str, list[tuple[str, str]]] = {}
    for m, (a, b) in I.morphisms.items():
        mid = f"I:{m}"
        morphisms[mid] = (f"I:{a}", f"I:{b}")
        segments[mid] = [("I", m)]
        if weighted:
            weights[mid] = I.weights[m]
    for m, (a, b) in J.morphisms.items():
        if a in d.q_in_j and b in d.q_in_j:
            continue
        mid = f"J:{m}"
        morphisms[mid] = (obj_id("J", a), obj_id("J", b))
        segments[mid] = [("J", m)]
        if weighted:
            weights[mid] = J.weights[m]
    for c in classes:
        morphisms[c.id] = (c.source, c.target)
        second, first = c.representative
        if c.direction == "IJ":
            segments[c.id] = [("I", first), ("J", second)]
        else:
            segments[c.id] = [("J", first), ("I", second)]
        if weighted:
            weights[c.id] = c.weight

    cat = {"I": I, "J": J}

    def ends(seg: tuple[str, str]) -> tuple[str, str]:
        return cat[seg[0]].morphisms[seg[1]]

    def inside_q(seg: tuple[str, str]) -> bool:
        a, b = ends(seg)
        qs = d.q_in_i if seg[0] == "I" else d.q_in_j
        return a in qs and b in qs

    def switch(seg: tuple[str, str]) -> tuple[str, str]:
        side, m = seg
        return ("J", d.i2j_mor[m]) if side == "I" else ("I", d.j2i_mor[m])

    def normalize(segs: list[tuple[str, str]]) -> str:
        segs = list(segs)
        changed = True
        while changed:
            changed = False
            for k in range(len(segs) - 1):
                if segs[k][0] == segs[k + 1][0]:
                    side = segs[k][0]
                    segs[k : k + 2] = [(side, cat[side].compose(segs[k + 1][1], segs[k][1]))]
                    changed = True
                    break
            if changed:
                continue
            for k, seg in enumerate(segs):
                if len(segs) > 1 and inside_q(seg):
                    neighbour = segs[k - 1] if k > 0 else segs[k + 1]
                    if neighbour[0] != seg[0]:
                        segs[k] = switch(seg)
                        changed = True
                        break
        if len(segs) == 1:
            seg = segs[0]
            if seg[0] == "J" and inside_q(seg):
                seg = switch(seg)
            return f"{seg[0]}:{seg[1]}"
        if len(segs) != 2:
            raise AssertionError("zigzag did not reduce; legs are not embeddings")
        (s1, m1), (s2, m2) = segs
        if s1 == "I":
            return class_of[("IJ", m2, m1)]
        return class_of[("JI", m2, m1)]

    composition = {}
    out: dict[str, list[str]] = {}
    for m, (a, _) in morphisms.items():
        out.setdefault(a, []).append(m)
    for f, (_, b) in morphisms.items():
        for g in out.get(b, []):
            composition[(f, g)] = normalize(segments[f] + segments[g])
    identities = {f"I:{x}": f"I:{I.identities[x]}" for x in I.objects}
    identities.update({f"J:{y}": f"J:{J.identities[y]}" for y in J.objects if y not in d.q_in_j})
    result = Category(tuple(objects), morphisms, identities, composition, weights if weighted else None)

    contract = "weight-preserving" if weighted else "none"
    P, R = e1.P, e2.Q
    leg_p = Functor(
        P,
        result,
        {p: f"I:{e1.leg_p.obj_map[p]}" for p in P.objects},
        {m: f"I:{e1.leg_p.mor_map[m]}" for m in P.morphisms},
        contract,
    )

    def j_mor(n: str) -> str:
        a, b = J.morphisms[n]
        if a in d.q_in_j and b in d.q_in_j:
            return f"I:{d.j2i_mor[n]}"
        return f"J:{n}"

    leg_r = Functor(
        R,
        result,
        {r: obj_id("J", e2.leg_q.obj_map[r]) for r in R.objects},
        {m: j_mor(e2.leg_q.mor_map[m]) for m in R.morphisms},
        contract,
    )
    return EmbeddingPair(leg_p, leg_r, label=f"({e2.label})∘({e1.label})"), classes


def glue_extensions(e1: EmbeddingPair, ext1: Functor, e2: EmbeddingPair, ext2: Functor) -> tuple[EmbeddingPair, Functor]:
    """Extension over the pushout built from extensions over the two factors.

    A cross class is sent to the composite of the two extensions applied to
    any representative; the extensions agree on the shared middle, so the
    choice does not matter.
    """
    composite, classes = pushout_with_classes(e1, e2)
    L, C = composite.I, ext1.target
    ext = {"I": ext1, "J": ext2}
    obj_map = {}
    for x in L.objects:
        side, raw = x.split(":", 1)
        obj_map[x] = ext[side].obj_map[raw]
    mor_map = {}
    for c in classes:
        second, first = c.representative
        if c.direction == "IJ":
            mor_map[c.id] = C.compose(ext2.mor_map[second], ext1.mor_map[first])
        else:
            mor_map[c.id] = C.compose(ext1.mor_map[second], ext2.mor_map[first])
    for m in L.morphisms:
        if m not in mor_map:
            side, raw = m.split(":", 1)
            mor_map[m] = ext[side].mor_map[raw]
    return composite, Functor(L, C, obj_map, mor_map)


# ---------------------------------------------------------------------------
# Hausdorff weight of a cospan


def _window(leg: Functor, window: Iterable[str] | None) -> list[str]:
    objs = list(leg.source.objects) if window is None else [p for p in leg.source.objects if p in set(window)]
    if window is not None:
        extra = set(window) - set(leg.source.objects)
        if extra:
            raise ValueError(f"window names objects outside the leg's source: {sorted(extra)}")
    if not objs:
        raise EmptySubsetError("empty window")
    return [leg.obj_map[p] for p in objs]


def hausdorff_weight(
    e: EmbeddingPair,
    symmetric: bool = False,
    window_p: Iterable[str] | None = None,
    window_q: Iterable[str] | None = None,
) -> Weight:
    """Hausdorff distance between the images of P and Q in the metric of I.

    Windows default to the ones stored on the pair; they restrict the two
    images to subsets (given as object ids of P and Q).
    """
    if window_p is None:
        window_p = e.window_p
    if window_q is None:
        window_q = e.window_q
    space = induced_metric(e.I)
    A = _window(e.leg_p, window_p)
    B = _window(e.leg_q, window_q)
    return sym_hausdorff(space, A, B) if symmetric else hausdorff(space, A, B)


# ---------------------------------------------------------------------------
# interleavings


def check_interleaving_extension(e: EmbeddingPair, F: Functor, G: Functor, H: Functor) -> bool:
    """True iff ``H : I -> C`` is a functor with ``H∘iP = F`` and ``H∘iQ = G``."""
    if F.source != e.P or G.source != e.Q or H.source != e.I:
        raise ValueError("functor sources do not match the cospan")
    if not (F.target == G.target == H.target):
        raise ValueError("functors must share a target category")
    if not validate_functor(H).ok:
        return False
    return compose_functors(H, e.leg_p).same_tables(F) and compose_functors(H, e.leg_q).same_tables(G)


_FINVECT = re.compile(r"^F(\d+)\^(\d+)$")
_FINSET = re.compile(r"^S(\d+)$")


def _check_mode(mode: str | None, objs: Iterable[str], dim_cap: int) -> None:
    if mode is None:
        return
    if mode == "finset":
        for o in objs:
            if not _FINSET.match(o):
                raise ValueError(f"object {o!r} is not a finite set of the finset target")
        return
    if mode.startswith("finvect"):
        p = int(mode.split(":", 1)[1]) if ":" in mode else None
        if p is not None and p not in (2, 3):
            raise BoundsExceeded(f"prime {p} outside the supported set {{2, 3}}")
        for o in objs:
            m = _FINVECT.match(o)
            if not m:
                raise ValueError(f"object {o!r} is not a vector space of the finvect target")
            if p is not None and int(m.group(1)) != p:
                raise ValueError(f"object {o!r} is over the wrong field")
            if int(m.group(2)) > dim_cap:
                raise BoundsExceeded(f"dimension of {o} exceeds dim_cap={dim_cap}")
        return
    raise ValueError(f"unknown search mode {mode!r}")


def _generators(I: Category, known: set[str], free: list[str]) -> list[str]:
    """Free morphisms which, with ``known``, determine the rest by composition."""
    ident = set(I.identities.values())
    decomposable = set()
    for (f, g), h in I.composition.items():
        if f not in ident and g not in ident and h != f and h != g:
            decomposable.add(h)
    have = set(known)
    gens: list[str] = []
    remaining = list(free)

    def close() -> None:
        grew = True
        while grew:
            grew = False
            for (f, g), h in I.composition.items():
                if h not in have and f in have and g in have:
                    have.add(h)
                    grew = True

    close()
    while True:
        missing = [m for m in remaining if m not in have]
        if not missing:
            return gens
        pick = next((m for m in missing if m not in decomposable), missing[0])
        gens.append(pick)
        have.add(pick)
        close()


def search_interleaving_extension(
    e: EmbeddingPair,
    F: Functor,
    G: Functor,
    mode: str | None = None,
    search_cap: int = 12,
    dim_cap: int = 2,
) -> Functor | None:
    """Find ``H : I -> C`` extending F and G along the legs, or None.

    Values on a set of generating cross morphisms are enumerated; all other
    morphisms are forced by composition, and a branch dies as soon as a
    composite disagrees.  Raises :class:`BoundsExceeded` when the generator
    count exceeds ``search_cap``.
    """
    I, C = e.I, F.target
    if G.target != C:
        raise ValueError("F and G must share a target")
    if F.source != e.P or G.source != e.Q:
        raise ValueError("functor sources do not match the cospan")
    _check_mode(mode, list(F.obj_map.values()) + list(G.obj_map.values()), dim_cap)

    obj_fixed: dict[str, str] = {}
    mor_fixed: dict[str, str] = {}
    for leg, K in ((e.leg_p, F), (e.leg_q, G)):
        for a in leg.source.objects:
            x, v = leg.obj_map[a], K.obj_map[a]
            if obj_fixed.setdefault(x, v) != v:
                return None
        for m in leg.source.morphisms:
            x, v = leg.mor_map[m], K.mor_map[m]
            if mor_fixed.setdefault(x, v) != v:
                return None
    free_objs = [x for x in I.objects if x not in obj_fixed]
    free_objects_choices = itertools.product(C.objects, repeat=len(free_objs))
    if free_objs and len(C.objects) ** len(free_objs) > 10**4:
        raise BoundsExceeded("too many objects outside the images of the legs")

    for choice in free_objects_choices:
        omap = dict(obj_fixed)
        omap.update(zip(free_objs, choice))
        mfix = dict(mor_fixed)
        for x in free_objs:
            mfix[I.identities[x]] = C.identities[omap[x]]
        free = [m for m in I.morphisms if m not in mfix]
        gens = _generators(I, set(mfix), free)
        if len(gens) > search_cap:
            raise BoundsExceeded(f"{len(gens)} cross generators exceed search_cap={search_cap}")
        found = _search(I, C, omap, mfix, gens)
        if found is not None:
            return Functor(I, C, omap, found)
    return None


def _search(I: Category, C: Category, omap: dict[str, str], fixed: dict[str, str], gens: list[str]) -> dict[str, str] | None:
    by_factor: dict[str, list[tuple[str, str, str]]] = {}
    for (f, g), h in I.composition.items():
        by_factor.setdefault(f, []).append((f, g, h))
        if g != f:
            by_factor.setdefault(g, []).append((f, g, h))

    def propagate(values: dict[str, str], start: Sequence[str]) -> bool:
        work = list(start)
        while work:
            m = work.pop()
            for f, g, h in by_factor.get(m, ()):
                vf, vg = values.get(f), values.get(g)
                if vf is None or vg is None:
                    continue
                v = C.composition[(vf, vg)]
                old = values.get(h)
                if old is None:
                    values[h] = v
                    work.append(h)
                elif old != v:
                    return False
        return True

    base = dict(fixed)
    if not propagate(base, list(base)):
        return None

    def rec(k: int, values: dict[str, str]) -> dict[str, str] | None:
        if k == len(gens):
            if len(values) != len(I.morphisms):
                return None
            return values
        m = gens[k]
        if m in values:
            return rec(k + 1, values)
        a, b = I.morphisms[m]
        for v in C.hom(omap[a], omap[b]):
            trial = dict(values)
            trial[m] = v
            if propagate(trial, [m]):
                res = rec(k + 1, trial)
                if res is not None:
                    return res
        return None

    return rec(0, base)


@dataclass
class DistanceBound:
    """Minimum over a candidate family; always an upper bound on the infimum."""

    value: Weight
    witness: int | None
    extension: Functor | None = None
    upper_bound: bool = True

    def __iter__(self) -> Iterator:
        return iter((self.value, self.witness))


def interleaving_distance(
    F: Functor,
    G: Functor,
    family: Sequence[EmbeddingPair],
    symmetric: bool = False,
    windows: Sequence[tuple[Iterable[str] | None, Iterable[str] | None] | None] | None = None,
    mode: str | None = None,
    search_cap: int = 12,
) -> DistanceBound:
    """Least Hausdorff weight over family members admitting an extension."""
    best = DistanceBound(INF, None)
    for k, e in enumerate(family):
        wp, wq = (None, None)
        if windows is not None and windows[k] is not None:
            wp, wq = windows[k]
        weight = hausdorff_weight(e, symmetric, wp, wq)
        if best.witness is not None and not weight < best.value:
            continue
        ext = search_interleaving_extension(e, F, G, mode, search_cap)
        if ext is not None:
            best = DistanceBound(weight, k, ext)
    return best


def gh_distance(
    family: Sequence[EmbeddingPair],
    symmetric: bool = False,
) -> DistanceBound:
    """Least Hausdorff weight over a family of cospans with common legs' sources."""
    best = DistanceBound(INF, None)
    for k, e in enumerate(family):
        weight = hausdorff_weight(e, symmetric)
        if best.witness is None or weight < best.value:
            best = DistanceBound(weight, k)
    return best


def postcompose_interleaving(H: Functor, e: EmbeddingPair, F: Functor, G: Functor, ext: Functor) -> bool:
    """Whether ``H∘ext`` witnesses an interleaving of ``H∘F`` and ``H∘G``."""
    return check_interleaving_extension(
        e, compose_functors(H, F), compose_functors(H, G), compose_functors(H, ext)
    )


# ---------------------------------------------------------------------------
# Gromov-Hausdorff candidate family


def gh_family(
    P: Category,
    Q: Category,
    values: Sequence,
    limit: int = 5000,
) -> list[EmbeddingPair]:
    """Cospans on ``P ⊔ Q`` with quantized cross weights, for thin P and Q.

    Each cross pair ``(p, q)`` and ``(q, p)`` gets either no morphism or one
    morphism weighted by an entry of ``values``.  Assignments that do not
    close up into a weighted category are pruned as soon as a violated
    composite is fully assigned.  At most ``limit`` candidates are returned.
    """
    if not (P.is_thin and Q.is_thin):
        raise ValueError("gh_family needs thin categories")
    choices: list[Weight | None] = [None] + sorted({Weight(v) for v in values})
    pw = {P.morphisms[m]: P.weights[m] for m in P.morphisms}
    qw = {Q.morphisms[m]: Q.weights[m] for m in Q.morphisms}
    cells = [("PQ", p, q) for p in P.objects for q in Q.objects] + [
        ("QP", q, p) for q in Q.objects for p in P.objects
    ]
    index = {c: k for k, c in enumerate(cells)}

    # constraints: (result cell or internal weight, [parts]) where parts are cells or internal weights
    constraints: list[tuple[object, list[object]]] = []
    for p in P.objects:
        for q in Q.objects:
            for q2 in Q.objects:
                if (q, q2) in qw:  # p->q->q2
                    constraints.append((index[("PQ", p, q2)], [index[("PQ", p, q)], qw[(q, q2)]]))
                if (q2, q) in qw:  # q2->q->p
                    constraints.append((index[("QP", q2, p)], [qw[(q2, q)], index[("QP", q, p)]]))
            for p2 in P.objects:
                if (p2, p) in pw:  # p2->p->q
                    constraints.append((index[("PQ", p2, q)], [pw[(p2, p)], index[("PQ", p, q)]]))
                if (p, p2) in pw:  # q->p->p2
                    constraints.append((index[("QP", q, p2)], [index[("QP", q, p)], pw[(p, p2)]]))
                # p->q->p2 must land in P
                constraints.append((pw.get((p, p2), "missing"), [index[("PQ", p, q)], index[("QP", q, p2)]]))
    for q in Q.objects:
        for p in P.objects:
            for q2 in Q.objects:
                constraints.append((qw.get((q, q2), "missing"), [index[("QP", q, p)], index[("PQ", p, q2)]]))

    by_cell: dict[int, list[int]] = {}
    for k, (res, parts) in enumerate(constraints):
        for x in [res] + parts:
            if isinstance(x, int):
                by_cell.setdefault(x, []).append(k)

    assign: list[Weight | None | str] = ["?"] * len(cells)

    def value(x):
        return assign[x] if isinstance(x, int) else x

    def violated(k: int) -> bool:
        res, parts = constraints[k]
        vals = [value(x) for x in parts]
        if any(v == "?" for v in vals) or value(res) == "?":
            return False
        if any(v is None for v in vals):
            return False
        r = value(res)
        if r is None or r == "missing":
            return True
        total = vals[0]
        for v in vals[1:]:
            total = total + v
        return r > total

    out: list[EmbeddingPair] = []

    def rec(k: int) -> None:
        if len(out) >= limit:
            return
        if k == len(cells):
            out.append(_gh_candidate(P, Q, cells, list(assign)))
            return
        for v in choices:
            assign[k] = v
            if not any(violated(c) for c in by_cell.get(k, ())):
                rec(k + 1)
            assign[k] = "?"

    rec(0)
    return out


def _gh_candidate(P: Category, Q: Category, cells, assign) -> EmbeddingPair:
    objects = [f"P:{p}" for p in P.objects] + [f"Q:{q}" for q in Q.objects]
    rel: dict[tuple[str, str], Weight] = {}
    for m, (a, b) in P.morphisms.items():
        rel[(f"P:{a}", f"P:{b}")] = P.weights[m]
    for m, (a, b) in Q.morphisms.items():
        rel[(f"Q:{a}", f"Q:{b}")] = Q.weights[m]
    for (kind, x, y), w in zip(cells, assign):
        if w is None:
            continue
        if kind == "PQ":
            rel[(f"P:{x}", f"Q:{y}")] = w
        else:
            rel[(f"Q:{x}", f"P:{y}")] = w
    from .category import thin_category

    I = thin_category(objects, lambda a, b: (a, b) in rel, lambda a, b: rel[(a, b)])
    pm = {m: f"{a}->{b}" for m, (a, b) in ((m, (f"P:{a}", f"P:{b}")) for m, (a, b) in P.morphisms.items())}
    qm = {m: f"{a}->{b}" for m, (a, b) in ((m, (f"Q:{a}", f"Q:{b}")) for m, (a, b) in Q.morphisms.items())}
    leg_p = Functor(P, I, {p: f"P:{p}" for p in P.objects}, pm, "weight-preserving")
    leg_q = Functor(Q, I, {q: f"Q:{q}" for q in Q.objects}, qm, "weight-preserving")
    return EmbeddingPair(leg_p, leg_q, label="gh")
