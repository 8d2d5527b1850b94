"""Finite categories given by full composition tables.

A :class:`Category` stores every morphism explicitly together with the
composite of every composable pair, so equality of morphisms is equality of
ids and all checks are table lookups.  Weights are optional; a category
carrying a weight per morphism is a weighted category.

Composition is keyed by ``(first, then)``: ``composition[(f, g)]`` is the id
of ``g ∘ f``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .weights import INF, ZERO, Weight, WeightLike, as_weight, wmin

CONTRACTS = ("none", "nonexpansive", "weight-preserving")


@dataclass
class Report:
    """Outcome of a validation: ok iff there are no violations."""

    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def add(self, message: str) -> None:
        self.violations.append(message)

    def extend(self, other: "Report", prefix: str = "") -> None:
        self.violations.extend(prefix + v for v in other.violations)

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        return "; ".join(self.violations)


@dataclass(frozen=True)
class Category:
    objects: tuple[str, ...]
    morphisms: Mapping[str, tuple[str, str]]
    identities: Mapping[str, str]
    composition: Mapping[tuple[str, str], str]
    weights: Mapping[str, Weight] | None = None

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(self.objects))
        if self.weights is not None:
            object.__setattr__(
                self, "weights", {m: as_weight(w) for m, w in self.weights.items()}
            )

    @property
    def is_weighted(self) -> bool:
        return self.weights is not None

    def src(self, m: str) -> str:
        return self.morphisms[m][0]

    def dst(self, m: str) -> str:
        return self.morphisms[m][1]

    def identity(self, a: str) -> str:
        return self.identities[a]

    def compose(self, g: str, f: str) -> str:
        """``g ∘ f`` (f first)."""
        return self.composition[(f, g)]

    def then(self, *ms: str) -> str:
        """Compose a path given in diagrammatic order."""
        result = ms[0]
        for m in ms[1:]:
            result = self.composition[(result, m)]
        return result

    def weight(self, m: str) -> Weight:
        if self.weights is None:
            raise ValueError("category is not weighted")
        return self.weights[m]

    @cached_property
    def _homs(self) -> dict[tuple[str, str], list[str]]:
        homs: dict[tuple[str, str], list[str]] = {}
        for m, (a, b) in self.morphisms.items():
            homs.setdefault((a, b), []).append(m)
        return homs

    @cached_property
    def _out(self) -> dict[str, list[str]]:
        out: dict[str, list[str]] = {a: [] for a in self.objects}
        for m, (a, _) in self.morphisms.items():
            out.setdefault(a, []).append(m)
        return out

    @cached_property
    def _in(self) -> dict[str, list[str]]:
        inc: dict[str, list[str]] = {a: [] for a in self.objects}
        for m, (_, b) in self.morphisms.items():
            inc.setdefault(b, []).append(m)
        return inc

    def hom(self, a: str, b: str) -> list[str]:
        return self._homs.get((a, b), [])

    def outgoing(self, a: str) -> list[str]:
        return self._out.get(a, [])

    def incoming(self, b: str) -> list[str]:
        return self._in.get(b, [])

    def composable_pairs(self) -> Iterator[tuple[str, str]]:
        """All ``(f, g)`` with ``dst(f) == src(g)``."""
        for f, (_, b) in self.morphisms.items():
            for g in self.outgoing(b):
                yield f, g

    @property
    def is_thin(self) -> bool:
        return all(len(ms) <= 1 for ms in self._homs.values())

    def with_weights(self, weights: Mapping[str, WeightLike] | None) -> "Category":
        return Category(self.objects, self.morphisms, self.identities, self.composition, weights)

    def __repr__(self) -> str:
        kind = "weighted " if self.is_weighted else ""
        return f"<{kind}Category: {len(self.objects)} objects, {len(self.morphisms)} morphisms>"


# ---------------------------------------------------------------------------
# validation


def validate_category(c: Category, max_reports: int = 20) -> Report:
    report = Report()
    objects = set(c.objects)
    if len(objects) != len(c.objects):
        report.add("duplicate object id")
    for m, (a, b) in c.morphisms.items():
        if a not in objects or b not in objects:
            report.add(f"morphism {m} has endpoint outside the object set")
    for a in c.objects:
        i = c.identities.get(a)
        if i is None:
            report.add(f"object {a} has no identity")
        elif c.morphisms.get(i) != (a, a):
            report.add(f"identity {i} of {a} has wrong endpoints")
    for (f, g), h in c.composition.items():
        if f not in c.morphisms or g not in c.morphisms or h not in c.morphisms:
            report.add(f"composition entry ({f}, {g}) -> {h} names an unknown morphism")
        elif c.dst(f) != c.src(g):
            report.add(f"composition entry ({f}, {g}) for a non-composable pair")
        elif c.morphisms[h] != (c.src(f), c.dst(g)):
            report.add(f"composite {g}∘{f} = {h} has wrong endpoints")
    if not report.ok:
        return report

    missing = [(f, g) for f, g in c.composable_pairs() if (f, g) not in c.composition]
    for f, g in missing[:max_reports]:
        report.add(f"composition not total: {g}∘{f} missing")
    if missing:
        return report

    for m, (a, b) in c.morphisms.items():
        if c.compose(m, c.identities[a]) != m or c.compose(c.identities[b], m) != m:
            report.add(f"identity not neutral for {m}")
    bad = 0
    for f, g in c.composable_pairs():
        gf = c.composition[(f, g)]
        for h in c.outgoing(c.dst(g)):
            if c.composition[(gf, h)] != c.composition[(f, c.composition[(g, h)])]:
                report.add(f"associativity fails on ({f}, {g}, {h})")
                bad += 1
                if bad >= max_reports:
                    return report
    return report


def validate_weighted(c: Category) -> Report:
    report = validate_category(c)
    if not report.ok:
        return report
    if c.weights is None:
        report.add("category has no weights")
        return report
    for m in c.morphisms:
        if m not in c.weights:
            report.add(f"morphism {m} has no weight")
    if not report.ok:
        return report
    for a in c.objects:
        if c.weights[c.identities[a]] != ZERO:
            report.add(f"identity weight nonzero at {a}")
    for f, g in c.composable_pairs():
        h = c.composition[(f, g)]
        if c.weights[h] > c.weights[f] + c.weights[g]:
            report.add(f"subadditivity fails: w({g}∘{f}) > w({g}) + w({f})")
    return report


# ---------------------------------------------------------------------------
# functors and natural transformations


@dataclass(frozen=True)
class Functor:
    source: Category
    target: Category
    obj_map: Mapping[str, str]
    mor_map: Mapping[str, str]
    contract: str = "none"

    def __post_init__(self):
        if self.contract not in CONTRACTS:
            raise ValueError(f"unknown weight contract {self.contract!r}")

    def __call__(self, x: str) -> str:
        """Apply to a morphism id."""
        return self.mor_map[x]

    def ob(self, a: str) -> str:
        return self.obj_map[a]

    def same_tables(self, other: "Functor") -> bool:
        return dict(self.obj_map) == dict(other.obj_map) and dict(self.mor_map) == dict(other.mor_map)


def validate_functor(F: Functor) -> Report:
    report = Report()
    P, Q = F.source, F.target
    for a in P.objects:
        if F.obj_map.get(a) not in Q.identities:
            report.add(f"object {a} is not mapped to an object of the target")
    for m in P.morphisms:
        if F.mor_map.get(m) not in Q.morphisms:
            report.add(f"morphism {m} is not mapped to a morphism of the target")
    if not report.ok:
        return report
    for m, (a, b) in P.morphisms.items():
        if Q.morphisms[F.mor_map[m]] != (F.obj_map[a], F.obj_map[b]):
            report.add(f"endpoints not preserved by {m}")
    for a in P.objects:
        if F.mor_map[P.identities[a]] != Q.identities[F.obj_map[a]]:
            report.add(f"identity of {a} not preserved")
    if not report.ok:
        return report
    for (f, g), h in P.composition.items():
        if Q.composition.get((F.mor_map[f], F.mor_map[g])) != F.mor_map[h]:
            report.add(f"composite {g}∘{f} not preserved")
    if F.contract != "none":
        if P.weights is None or Q.weights is None:
            report.add("weight contract declared between unweighted categories")
            return report
        for m in P.morphisms:
            wp, wq = P.weights[m], Q.weights[F.mor_map[m]]
            if F.contract == "nonexpansive" and wq > wp:
                report.add(f"not nonexpansive on {m}: {wq} > {wp}")
            if F.contract == "weight-preserving" and wq != wp:
                report.add(f"not weight-preserving on {m}: {wq} != {wp}")
    return report


def identity_functor(c: Category, contract: str | None = None) -> Functor:
    if contract is None:
        contract = "weight-preserving" if c.is_weighted else "none"
    return Functor(c, c, {a: a for a in c.objects}, {m: m for m in c.morphisms}, contract)


def compose_functors(G: Functor, F: Functor) -> Functor:
    """``G ∘ F``; the weight contract of the result is the weaker of the two."""
    if F.target is not G.source and F.target != G.source:
        raise ValueError("target of F does not match source of G")
    contract = CONTRACTS[min(CONTRACTS.index(F.contract), CONTRACTS.index(G.contract))]
    return Functor(
        F.source,
        G.target,
        {a: G.obj_map[b] for a, b in F.obj_map.items()},
        {m: G.mor_map[n] for m, n in F.mor_map.items()},
        contract,
    )


def embedding_report(F: Functor) -> Report:
    """Reasons why ``F`` fails to be a (weighted) embedding, if any."""
    report = Report()
    P, Q = F.source, F.target
    if len(set(F.obj_map[a] for a in P.objects)) != len(P.objects):
        report.add("not injective on objects")
        return report
    for a in P.objects:
        for b in P.objects:
            image = [F.mor_map[m] for m in P.hom(a, b)]
            if len(set(image)) != len(image):
                report.add(f"not faithful on ({a},{b})")
            elif len(image) != len(Q.hom(F.obj_map[a], F.obj_map[b])):
                report.add(f"not full on ({a},{b})")
    if P.is_weighted and Q.is_weighted:
        for m in P.morphisms:
            if P.weights[m] != Q.weights[F.mor_map[m]]:
                report.add(f"not weight-preserving on {m}")
    return report


def check_embedding(F: Functor) -> bool:
    """Injective on objects, bijective on hom-sets, weight-preserving if weighted."""
    return embedding_report(F).ok


@dataclass(frozen=True)
class NatTrans:
    source: Functor
    target: Functor
    components: Mapping[str, str]

    def __getitem__(self, a: str) -> str:
        return self.components[a]


def validate_nat_trans(t: NatTrans) -> Report:
    report = Report()
    F, G = t.source, t.target
    C = F.target
    for a in F.source.objects:
        comp = t.components.get(a)
        if comp not in C.morphisms:
            report.add(f"missing component at {a}")
        elif C.morphisms[comp] != (F.obj_map[a], G.obj_map[a]):
            report.add(f"component at {a} has wrong endpoints")
    if not report.ok:
        return report
    for m, (a, b) in F.source.morphisms.items():
        left = C.compose(t.components[b], F.mor_map[m])
        right = C.compose(G.mor_map[m], t.components[a])
        if left != right:
            report.add(f"naturality square fails at {m}")
    return report


def identity_nat_trans(F: Functor) -> NatTrans:
    return NatTrans(F, F, {a: F.target.identities[F.obj_map[a]] for a in F.source.objects})


def vertical_compose(beta: NatTrans, alpha: NatTrans) -> NatTrans:
    """``beta ∘ alpha`` for ``alpha: F ⇒ G`` and ``beta: G ⇒ H``."""
    C = alpha.source.target
    return NatTrans(
        alpha.source,
        beta.target,
        {a: C.compose(beta.components[a], alpha.components[a]) for a in alpha.components},
    )


def whisker_left(H: Functor, alpha: NatTrans) -> NatTrans:
    """``H alpha : H F ⇒ H G``."""
    return NatTrans(
        compose_functors(H, alpha.source),
        compose_functors(H, alpha.target),
        {a: H.mor_map[m] for a, m in alpha.components.items()},
    )


def whisker_right(alpha: NatTrans, K: Functor) -> NatTrans:
    """``alpha K : F K ⇒ G K``."""
    return NatTrans(
        compose_functors(alpha.source, K),
        compose_functors(alpha.target, K),
        {x: alpha.components[K.obj_map[x]] for x in K.source.objects},
    )


def horizontal_compose(beta: NatTrans, alpha: NatTrans) -> NatTrans:
    """``beta * alpha : K F ⇒ K' F'`` for ``alpha: F ⇒ F'``, ``beta: K ⇒ K'``."""
    F2 = alpha.target
    D = beta.source.target
    comps = {
        a: D.compose(beta.components[F2.obj_map[a]], beta.source.mor_map[alpha.components[a]])
        for a in alpha.source.source.objects
    }
    return NatTrans(
        compose_functors(beta.source, alpha.source),
        compose_functors(beta.target, alpha.target),
        comps,
    )


# ---------------------------------------------------------------------------
# induced metric


def induced_metric(c: Category):
    """Lawvere space on the objects: d(x, y) = least weight in the hom-set."""
    from .metric import LawvereSpace

    if c.weights is None:
        raise ValueError("induced metric needs a weighted category")
    dist = [[wmin(c.weights[m] for m in c.hom(x, y)) for y in c.objects] for x in c.objects]
    return LawvereSpace(c.objects, dist)


def cheapest(c: Category, a: str, b: str) -> str | None:
    """Lowest-weight morphism ``a -> b``; ties go to the earliest declared."""
    best, best_w = None, INF
    for m in c.hom(a, b):
        if best is None or c.weights[m] < best_w:
            best, best_w = m, c.weights[m]
    return best


# ---------------------------------------------------------------------------
# constructors


def thin_category(
    objects: Sequence[str],
    leq: Callable[[str, str], bool],
    weight: Callable[[str, str], WeightLike] | None = None,
    name: Callable[[str, str], str] = lambda a, b: f"{a}->{b}",
) -> Category:
    """Category of a preorder; ``leq`` must be reflexive and transitive."""
    morphisms: dict[str, tuple[str, str]] = {}
    ident: dict[str, str] = {}
    ids: dict[tuple[str, str], str] = {}
    for a in objects:
        for b in objects:
            if leq(a, b):
                m = name(a, b)
                morphisms[m] = (a, b)
                ids[(a, b)] = m
        ident[a] = ids[(a, a)]
    comp = {}
    for (a, b), f in ids.items():
        for c in objects:
            g = ids.get((b, c))
            if g is not None:
                comp[(f, g)] = ids[(a, c)]
    weights = None
    if weight is not None:
        weights = {m: (ZERO if a == b else as_weight(weight(a, b))) for m, (a, b) in morphisms.items()}
    return Category(tuple(objects), morphisms, ident, comp, weights)


def discrete_category(objects: Sequence[str], weighted: bool = False) -> Category:
    return thin_category(objects, lambda a, b: a == b, (lambda a, b: 0) if weighted else None)


def terminal_category(obj: str = "*", weighted: bool = True) -> Category:
    return discrete_category([obj], weighted)


def chain_category(n: int, weighted: bool = True, unit: WeightLike = 1) -> Category:
    """The poset ``0 < 1 < ... < n-1``; weight of ``i <= j`` is ``(j - i) * unit``."""
    objs = [str(i) for i in range(n)]
    u = as_weight(unit)
    return thin_category(
        objs,
        lambda a, b: int(a) <= int(b),
        (lambda a, b: Weight((int(b) - int(a)) * u.value)) if weighted else None,
    )


def path_category(
    n: int,
    edges: Iterable[tuple[int, int, WeightLike]],
    cap: WeightLike | None = None,
    names: Sequence[str] | None = None,
) -> Category:
    """Free category on a DAG with vertices ``0..n-1`` (edges must go forward).

    Morphisms are directed paths; a path weighs the sum of its edge weights,
    truncated at ``cap`` when given (truncation keeps subadditivity).
    """
    names = list(names) if names is not None else [f"v{i}" for i in range(n)]
    edges = list(edges)
    for i, j, _ in edges:
        if not 0 <= i < j < n:
            raise ValueError("path_category needs forward edges")
    cap_w = None if cap is None else as_weight(cap)
    out: dict[int, list[tuple[int, int, Weight]]] = {i: [] for i in range(n)}
    for k, (i, j, w) in enumerate(edges):
        out[i].append((k, j, as_weight(w)))

    paths: dict[tuple[int, ...], tuple[int, int, Weight]] = {}

    def extend(start: int, at: int, word: tuple[int, ...], w: Weight) -> None:
        paths[(start,) + word] = (start, at, w)
        for k, j, ew in out[at]:
            extend(start, j, word + (k,), w + ew)

    for v in range(n):
        extend(v, v, (), ZERO)

    def pid(key: tuple[int, ...]) -> str:
        start = key[0]
        if len(key) == 1:
            return f"1_{names[start]}"
        return "p" + "".join(f"_{k}" for k in key[1:])

    morphisms = {pid(k): (names[s], names[t]) for k, (s, t, _) in paths.items()}
    weights = {}
    for k, (_, _, w) in paths.items():
        if cap_w is not None and w > cap_w:
            w = cap_w
        weights[pid(k)] = w
    ident = {names[v]: f"1_{names[v]}" for v in range(n)}
    comp = {}
    for k1, (s1, t1, _) in paths.items():
        for k2, (s2, t2, _) in paths.items():
            if t1 == s2:
                comp[(pid(k1), pid(k2))] = pid((s1,) + k1[1:] + k2[1:])
    return Category(tuple(names), morphisms, ident, comp, weights)


def full_subcategory(c: Category, objects: Iterable[str]) -> tuple[Category, Functor]:
    """Full subcategory on ``objects`` and its (weight-preserving) inclusion."""
    objs = [a for a in c.objects if a in set(objects)]
    keep = set(objs)
    morphisms = {m: ab for m, ab in c.morphisms.items() if ab[0] in keep and ab[1] in keep}
    comp = {
        (f, g): h for (f, g), h in c.composition.items() if f in morphisms and g in morphisms
    }
    weights = None if c.weights is None else {m: c.weights[m] for m in morphisms}
    sub = Category(tuple(objs), morphisms, {a: c.identities[a] for a in objs}, comp, weights)
    incl = Functor(
        sub,
        c,
        {a: a for a in objs},
        {m: m for m in morphisms},
        "weight-preserving" if weights is not None else "none",
    )
    return sub, incl


def relabel(c: Category, obj: Callable[[str], str], mor: Callable[[str], str]) -> Category:
    return Category(
        tuple(obj(a) for a in c.objects),
        {mor(m): (obj(a), obj(b)) for m, (a, b) in c.morphisms.items()},
        {obj(a): mor(i) for a, i in c.identities.items()},
        {(mor(f), mor(g)): mor(h) for (f, g), h in c.composition.items()},
        None if c.weights is None else {mor(m): w for m, w in c.weights.items()},
    )


# ---------------------------------------------------------------------------
# enumeration


def enumerate_functors(
    P: Category, Q: Category, contract: str = "none", limit: int | None = None
) -> list[Functor]:
    """All functors ``P -> Q`` honouring the weight contract, in canonical order."""
    result: list[Functor] = []
    pm = list(P.morphisms)
    non_ident = [m for m in pm if m not in set(P.identities.values())]
    for images in itertools.product(Q.objects, repeat=len(P.objects)):
        omap = dict(zip(P.objects, images))
        mmap = {P.identities[a]: Q.identities[omap[a]] for a in P.objects}
        domains = []
        for m in non_ident:
            a, b = P.morphisms[m]
            cands = Q.hom(omap[a], omap[b])
            if contract != "none":
                cands = [
                    n for n in cands
                    if (Q.weights[n] <= P.weights[m] if contract == "nonexpansive"
                        else Q.weights[n] == P.weights[m])
                ]
            domains.append(cands)
        for mmap_full in _assign(P, Q, non_ident, domains, mmap):
            result.append(Functor(P, Q, omap, mmap_full, contract))
            if limit is not None and len(result) >= limit:
                return result
    return result


def _assign(P: Category, Q: Category, order: list[str], domains: list[list[str]], fixed: dict[str, str]):
    """Backtracking over morphism images, checking composites as soon as known."""
    assignment = dict(fixed)
    # constraints involving a morphism, checked once all three images are known
    touching: dict[str, list[tuple[str, str, str]]] = {}
    for (f, g), h in P.composition.items():
        for x in {f, g, h}:
            touching.setdefault(x, []).append((f, g, h))

    def consistent(m: str) -> bool:
        for f, g, h in touching.get(m, ()):
            if f in assignment and g in assignment and h in assignment:
                if Q.composition[(assignment[f], assignment[g])] != assignment[h]:
                    return False
        return True

    def rec(i: int):
        if i == len(order):
            yield dict(assignment)
            return
        m = order[i]
        for n in domains[i]:
            assignment[m] = n
            if consistent(m):
                yield from rec(i + 1)
            del assignment[m]

    yield from rec(0)


def enumerate_nat_trans(F: Functor, G: Functor) -> list[NatTrans]:
    P, C = F.source, F.target
    objs = list(P.objects)
    domains = [C.hom(F.obj_map[a], G.obj_map[a]) for a in objs]
    result = []
    comps: dict[str, str] = {}

    def ok_upto(k: int) -> bool:
        done = set(objs[: k + 1])
        for m, (a, b) in P.morphisms.items():
            if a in done and b in done and (a == objs[k] or b == objs[k]):
                if C.compose(comps[b], F.mor_map[m]) != C.compose(G.mor_map[m], comps[a]):
                    return False
        return True

    def rec(k: int):
        if k == len(objs):
            result.append(NatTrans(F, G, dict(comps)))
            return
        for c in domains[k]:
            comps[objs[k]] = c
            if ok_upto(k):
                rec(k + 1)
        comps.pop(objs[k], None)

    rec(0)
    return result
