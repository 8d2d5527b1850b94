"""Future equivalences between finite categories and their cospan images.

A future equivalence from P to Q is a quadruple ``(Γ, K, η, ν)`` with
``Γ: P -> Q``, ``K: Q -> P``, ``η: Id_P ⇒ KΓ`` and ``ν: Id_Q ⇒ ΓK`` such that
``Γη = νΓ`` and ``Kν = ηK``.  :func:`phi_object` turns one into an embedding
pair whose cross hom-sets are copies of ``Q(Γp, q)`` and ``P(Kq, p)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .category import (
    Category,
    Functor,
    NatTrans,
    Report,
    compose_functors,
    embedding_report,
    enumerate_functors,
    enumerate_nat_trans,
    identity_functor,
    validate_functor,
    validate_nat_trans,
)
from .cospan import BoundsExceeded, DistanceBound, EmbeddingPair, pushout_with_classes
from .weights import INF, Weight, wmax


@dataclass(frozen=True)
class FutureEquivalence:
    gamma: Functor
    K: Functor
    eta: Mapping[str, str]
    nu: Mapping[str, str]

    @property
    def P(self) -> Category:
        return self.gamma.source

    @property
    def Q(self) -> Category:
        return self.gamma.target

    @property
    def key(self) -> tuple:
        """Canonical tuple of component tables, used for ordering and dedup."""
        return (
            tuple(sorted(self.gamma.obj_map.items())),
            tuple(sorted(self.gamma.mor_map.items())),
            tuple(sorted(self.K.obj_map.items())),
            tuple(sorted(self.K.mor_map.items())),
            tuple(sorted(self.eta.items())),
            tuple(sorted(self.nu.items())),
        )

    def eta_trans(self) -> NatTrans:
        return NatTrans(identity_functor(self.P), compose_functors(self.K, self.gamma), dict(self.eta))

    def nu_trans(self) -> NatTrans:
        return NatTrans(identity_functor(self.Q), compose_functors(self.gamma, self.K), dict(self.nu))


def identity_future_equivalence(P: Category) -> FutureEquivalence:
    ident = identity_functor(P, "nonexpansive" if P.is_weighted else "none")
    comps = {a: P.identities[a] for a in P.objects}
    return FutureEquivalence(ident, ident, comps, dict(comps))


def validate_future_equivalence(fe: FutureEquivalence) -> Report:
    report = Report()
    G, K = fe.gamma, fe.K
    if K.source != G.target or K.target != G.source:
        report.add("Γ and K do not form a round trip P -> Q -> P")
        return report
    report.extend(validate_functor(G), "Γ: ")
    report.extend(validate_functor(K), "K: ")
    if not report.ok:
        return report
    report.extend(validate_nat_trans(fe.eta_trans()), "η: ")
    report.extend(validate_nat_trans(fe.nu_trans()), "ν: ")
    if not report.ok:
        return report
    for p in fe.P.objects:
        if G.mor_map[fe.eta[p]] != fe.nu[G.obj_map[p]]:
            report.add(f"coherence Γη = νΓ fails at {p}")
    for q in fe.Q.objects:
        if K.mor_map[fe.nu[q]] != fe.eta[K.obj_map[q]]:
            report.add(f"coherence Kν = ηK fails at {q}")
    return report


@dataclass(frozen=True)
class FutMorphism:
    source: FutureEquivalence
    target: FutureEquivalence
    alpha: Mapping[str, str]  # Γ ⇒ Γ'
    beta: Mapping[str, str]  # K ⇒ K'

    @property
    def key(self) -> tuple:
        return (tuple(sorted(self.alpha.items())), tuple(sorted(self.beta.items())))


def validate_fut_morphism(m: FutMorphism) -> Report:
    report = Report()
    fe, fe2 = m.source, m.target
    P, Q = fe.P, fe.Q
    report.extend(validate_nat_trans(NatTrans(fe.gamma, fe2.gamma, dict(m.alpha))), "α: ")
    report.extend(validate_nat_trans(NatTrans(fe.K, fe2.K, dict(m.beta))), "β: ")
    if not report.ok:
        return report
    for p in P.objects:
        # (β*α)_p = β_{Γ'p} ∘ K(α_p)
        star = P.compose(m.beta[fe2.gamma.obj_map[p]], fe.K.mor_map[m.alpha[p]])
        if P.compose(star, fe.eta[p]) != fe2.eta[p]:
            report.add(f"triangle for η fails at {p}")
    for q in Q.objects:
        star = Q.compose(m.alpha[fe2.K.obj_map[q]], fe.gamma.mor_map[m.beta[q]])
        if Q.compose(star, fe.nu[q]) != fe2.nu[q]:
            report.add(f"triangle for ν fails at {q}")
    return report


def identity_fut_morphism(fe: FutureEquivalence) -> FutMorphism:
    Q, P = fe.Q, fe.P
    return FutMorphism(
        fe,
        fe,
        {p: Q.identities[fe.gamma.obj_map[p]] for p in P.objects},
        {q: P.identities[fe.K.obj_map[q]] for q in Q.objects},
    )


def compose_fut_morphisms(m2: FutMorphism, m1: FutMorphism) -> FutMorphism:
    """Componentwise vertical composite ``(α'∘α, β'∘β)``."""
    P, Q = m1.source.P, m1.source.Q
    return FutMorphism(
        m1.source,
        m2.target,
        {p: Q.compose(m2.alpha[p], m1.alpha[p]) for p in P.objects},
        {q: P.compose(m2.beta[q], m1.beta[q]) for q in Q.objects},
    )


def compose_future_equivalences(fe2: FutureEquivalence, fe1: FutureEquivalence) -> FutureEquivalence:
    """``(ΛΓ, KM, (KσΓ)η, (ΛνM)τ)`` for ``fe1 = (Γ,K,η,ν)`` and ``fe2 = (Λ,M,σ,τ)``."""
    if fe1.Q != fe2.P:
        raise ValueError("middle categories of the two future equivalences differ")
    G, K, L, M = fe1.gamma, fe1.K, fe2.gamma, fe2.K
    P, R = fe1.P, fe2.Q
    eta = {p: P.compose(K.mor_map[fe2.eta[G.obj_map[p]]], fe1.eta[p]) for p in P.objects}
    nu = {r: R.compose(L.mor_map[fe1.nu[M.obj_map[r]]], fe2.nu[r]) for r in R.objects}
    return FutureEquivalence(compose_functors(L, G), compose_functors(K, M), eta, nu)


@dataclass(frozen=True)
class FutWeight:
    W_eta: Weight
    W_nu: Weight
    omega: Weight


def future_equivalence_weight(fe: FutureEquivalence) -> FutWeight:
    P, Q = fe.P, fe.Q
    if not (P.is_weighted and Q.is_weighted):
        raise ValueError("weights need weighted categories")
    w_eta = wmax(P.weights[fe.eta[p]] for p in P.objects)
    w_nu = wmax(Q.weights[fe.nu[q]] for q in Q.objects)
    return FutWeight(w_eta, w_nu, max(w_eta, w_nu).half())


def check_fut_interleaving(
    fe: FutureEquivalence,
    F: Functor,
    G: Functor,
    phi: Mapping[str, str],
    psi: Mapping[str, str],
) -> bool:
    """Whether ``φ: F ⇒ GΓ`` and ``ψ: G ⇒ FK`` interleave F and G along fe.

    The equations are read componentwise as ``ψ_{Γp} ∘ φ_p = F(η_p)`` and
    ``φ_{Kq} ∘ ψ_q = G(ν_q)``.
    """
    if F.source != fe.P or G.source != fe.Q:
        raise ValueError("functor sources do not match the future equivalence")
    if F.target != G.target:
        raise ValueError("F and G must share a target")
    C = F.target
    if not validate_nat_trans(NatTrans(F, compose_functors(G, fe.gamma), dict(phi))).ok:
        return False
    if not validate_nat_trans(NatTrans(G, compose_functors(F, fe.K), dict(psi))).ok:
        return False
    for p in fe.P.objects:
        if C.compose(psi[fe.gamma.obj_map[p]], phi[p]) != F.mor_map[fe.eta[p]]:
            return False
    for q in fe.Q.objects:
        if C.compose(phi[fe.K.obj_map[q]], psi[q]) != G.mor_map[fe.nu[q]]:
            return False
    return True


def search_fut_interleaving(fe: FutureEquivalence, F: Functor, G: Functor) -> tuple[dict, dict] | None:
    """First pair ``(φ, ψ)`` in enumeration order satisfying the interleaving equations."""
    for phi in enumerate_nat_trans(F, compose_functors(G, fe.gamma)):
        for psi in enumerate_nat_trans(G, compose_functors(F, fe.K)):
            if check_fut_interleaving(fe, F, G, phi.components, psi.components):
                return dict(phi.components), dict(psi.components)
    return None


# ---------------------------------------------------------------------------
# Φ on objects


def pq_id(p: str, m: str) -> str:
    return f"PQ:{p}:{m}"


def qp_id(q: str, n: str) -> str:
    return f"QP:{q}:{n}"


def phi_object(fe: FutureEquivalence) -> EmbeddingPair:
    """The embedding pair ``P -> I_{Γ,K} <- Q`` of a future equivalence.

    Objects are ``P:p`` and ``Q:q``.  A cross morphism ``p -> q`` is stored as
    ``PQ:p:m`` for ``m`` in ``Q(Γp, q)``, and ``q -> p`` as ``QP:q:n`` for ``n``
    in ``P(Kq, p)``.  When weighted, cross morphisms weigh ``w(m) + ω``.
    """
    P, Q, G, K = fe.P, fe.Q, fe.gamma, fe.K
    weighted = P.is_weighted and Q.is_weighted
    omega = future_equivalence_weight(fe).omega if weighted else None
    objects = [f"P:{p}" for p in P.objects] + [f"Q:{q}" for q in Q.objects]
    morphisms: dict[str, tuple[str, str]] = {}
    weights: dict[str, Weight] = {}
    # decoded form: (kind, anchor, morphism) with kind in P, Q, PQ, QP
    decode: dict[str, tuple[str, str, str]] = {}
    for m, (a, b) in P.morphisms.items():
        morphisms[f"P:{m}"] = (f"P:{a}", f"P:{b}")
        decode[f"P:{m}"] = ("P", a, m)
        if weighted:
            weights[f"P:{m}"] = P.weights[m]
    for m, (a, b) in Q.morphisms.items():
        morphisms[f"Q:{m}"] = (f"Q:{a}", f"Q:{b}")
        decode[f"Q:{m}"] = ("Q", a, m)
        if weighted:
            weights[f"Q:{m}"] = Q.weights[m]
    for p in P.objects:
        for m in Q.outgoing(G.obj_map[p]):
            mid = pq_id(p, m)
            morphisms[mid] = (f"P:{p}", f"Q:{Q.dst(m)}")
            decode[mid] = ("PQ", p, m)
            if weighted:
                weights[mid] = Q.weights[m] + omega
    for q in Q.objects:
        for n in P.outgoing(K.obj_map[q]):
            mid = qp_id(q, n)
            morphisms[mid] = (f"Q:{q}", f"P:{P.dst(n)}")
            decode[mid] = ("QP", q, n)
            if weighted:
                weights[mid] = P.weights[n] + omega

    def compose(f: str, g: str) -> str:
        kf, af, mf = decode[f]
        kg, ag, mg = decode[g]
        if kf == "P" and kg == "P":
            return f"P:{P.compose(mg, mf)}"
        if kf == "Q" and kg == "Q":
            return f"Q:{Q.compose(mg, mf)}"
        if kf == "P" and kg == "PQ":
            return pq_id(af, Q.compose(mg, G.mor_map[mf]))
        if kf == "PQ" and kg == "Q":
            return pq_id(af, Q.compose(mg, mf))
        if kf == "Q" and kg == "QP":
            return qp_id(af, P.compose(mg, K.mor_map[mf]))
        if kf == "QP" and kg == "P":
            return qp_id(af, P.compose(mg, mf))
        if kf == "PQ" and kg == "QP":
            # p -> KΓp -> Kq -> p'
            return f"P:{P.compose(mg, P.compose(K.mor_map[mf], fe.eta[af]))}"
        if kf == "QP" and kg == "PQ":
            return f"Q:{Q.compose(mg, Q.compose(G.mor_map[mf], fe.nu[af]))}"
        raise AssertionError("unreachable composable pair")

    by_source: dict[str, list[str]] = {}
    for m, (a, _) in morphisms.items():
        by_source.setdefault(a, []).append(m)
    composition = {}
    for f, (_, b) in morphisms.items():
        for g in by_source.get(b, ()):
            composition[(f, g)] = compose(f, g)
    identities = {f"P:{p}": f"P:{P.identities[p]}" for p in P.objects}
    identities.update({f"Q:{q}": f"Q:{Q.identities[q]}" for q in Q.objects})
    I = Category(tuple(objects), morphisms, identities, composition, weights if weighted else None)
    contract = "weight-preserving" if weighted else "none"
    leg_p = Functor(P, I, {p: f"P:{p}" for p in P.objects}, {m: f"P:{m}" for m in P.morphisms}, contract)
    leg_q = Functor(Q, I, {q: f"Q:{q}" for q in Q.objects}, {m: f"Q:{m}" for m in Q.morphisms}, contract)
    return EmbeddingPair(leg_p, leg_q, label="Φ")


def phi_morphism(m: FutMorphism, source_pair: EmbeddingPair | None = None, target_pair: EmbeddingPair | None = None) -> Functor:
    """Functor ``Φ(target) -> Φ(source)`` pulling cross morphisms back along α and β."""
    fe, fe2 = m.source, m.target
    I = phi_object(fe).I if source_pair is None else source_pair.I
    I2 = phi_object(fe2).I if target_pair is None else target_pair.I
    P, Q = fe.P, fe.Q
    mor_map = {}
    for x in I2.morphisms:
        kind = x.split(":", 1)[0]
        if kind in ("P", "Q"):
            mor_map[x] = x
        elif kind == "PQ":
            _, p, n = x.split(":", 2)
            mor_map[x] = pq_id(p, Q.compose(n, m.alpha[p]))
        else:
            _, q, n = x.split(":", 2)
            mor_map[x] = qp_id(q, P.compose(n, m.beta[q]))
    return Functor(I2, I, {o: o for o in I2.objects}, mor_map)


def enumerate_cospan_morphisms(e_from: EmbeddingPair, e_to: EmbeddingPair) -> list[Functor]:
    """All functors ``e_from.I -> e_to.I`` commuting with both legs."""
    from .category import _assign

    I, J = e_from.I, e_to.I
    omap: dict[str, str] = {}
    fixed: dict[str, str] = {}
    for lf, lt in ((e_from.leg_p, e_to.leg_p), (e_from.leg_q, e_to.leg_q)):
        for a in lf.source.objects:
            omap[lf.obj_map[a]] = lt.obj_map[a]
        for x in lf.source.morphisms:
            fixed[lf.mor_map[x]] = lt.mor_map[x]
    if set(omap) != set(I.objects):
        raise ValueError("cospan morphisms are only enumerated when the legs cover every object")
    order = [x for x in I.morphisms if x not in fixed]
    domains = [J.hom(omap[I.src(x)], omap[I.dst(x)]) for x in order]
    return [Functor(I, J, dict(omap), mm) for mm in _assign(I, J, order, domains, fixed)]


# ---------------------------------------------------------------------------
# comparison between the pushout of images and the image of the composite


@dataclass
class ComparisonReport:
    report: Report
    chi: dict[str, str] = field(default_factory=dict)
    xi: Functor | None = None
    weights: list[tuple[str, Weight | None, Weight | None]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.report.ok


def phi_comparison(fe1: FutureEquivalence, fe2: FutureEquivalence) -> ComparisonReport:
    """Check that χ and ξ are inverse bijections on every cross hom-set.

    χ sends the class of ``(PQ:q:k, PQ:p:m)`` to ``PQ:p:(k ∘ Λm)`` and the class
    of ``(QP:q:n2, QP:r:n)`` to ``QP:r:(n2 ∘ Kn)``.  ξ sends ``PQ:p:h`` to the
    class of ``(PQ:Γp:h, PQ:p:1)`` and ``QP:r:h`` to that of ``(QP:Mr:h, QP:r:1)``.
    The weights of matched morphisms are recorded but not compared.
    """
    out = ComparisonReport(Report())
    report = out.report
    e1, e2 = phi_object(fe1), phi_object(fe2)
    L, classes = pushout_with_classes(e1, e2)
    comp = compose_future_equivalences(fe2, fe1)
    Mpair = phi_object(comp)
    M = Mpair.I
    G, K, Lam, Mu = fe1.gamma, fe1.K, fe2.gamma, fe2.K
    P, Q, R = fe1.P, fe1.Q, fe2.Q
    member_of: dict[tuple[str, str, str], str] = {}
    for c in classes:
        for second, first in c.members:
            member_of[(c.direction, second, first)] = c.id
        images = set()
        for second, first in c.members:
            if c.direction == "IJ":
                _, _, mm = first.split(":", 2)  # PQ:p:m in Φ(fe1)
                _, _, k = second.split(":", 2)  # PQ:q:k in Φ(fe2)
                p = c.source.split(":", 2)[2]
                images.add(pq_id(p, R.compose(k, Lam.mor_map[mm])))
            else:
                _, _, n = first.split(":", 2)  # QP:r:n in Φ(fe2)
                _, _, n2 = second.split(":", 2)  # QP:q:n2 in Φ(fe1)
                r = c.source.split(":", 2)[2]
                images.add(qp_id(r, P.compose(n2, K.mor_map[n])))
        if len(images) != 1:
            report.add(f"χ is not constant on class {c.id}")
            continue
        out.chi[c.id] = images.pop()

    xi_mor: dict[str, str] = {}
    for x in M.morphisms:
        kind, rest = x.split(":", 1)
        if kind == "P":
            xi_mor[x] = L.leg_p.mor_map[rest]
        elif kind == "Q":
            xi_mor[x] = L.leg_q.mor_map[rest]
        elif kind == "PQ":
            p, h = rest.split(":", 1)
            q = G.obj_map[p]
            key = ("IJ", pq_id(q, h), pq_id(p, Q.identities[q]))
            xi_mor[x] = member_of.get(key, "?")
        else:
            r, h = rest.split(":", 1)
            q = Mu.obj_map[r]
            key = ("JI", qp_id(q, h), qp_id(r, Q.identities[q]))
            xi_mor[x] = member_of.get(key, "?")
    if "?" in xi_mor.values():
        report.add("ξ misses a cross morphism")
        return out
    obj_map = {f"P:{p}": L.leg_p.obj_map[p] for p in P.objects}
    obj_map.update({f"Q:{r}": L.leg_q.obj_map[r] for r in R.objects})
    xi = Functor(M, L.I, obj_map, xi_mor)
    out.xi = xi
    report.extend(validate_functor(xi), "ξ: ")
    if report.ok:
        # structural check only; weights of matched morphisms are reported, not compared
        bare = Functor(M.with_weights(None), L.I.with_weights(None), obj_map, xi_mor)
        report.extend(embedding_report(bare), "ξ: ")
    if not compose_functors(xi, Mpair.leg_p).same_tables(L.leg_p):
        report.add("ξ does not commute with the P legs")
    if not compose_functors(xi, Mpair.leg_q).same_tables(L.leg_q):
        report.add("ξ does not commute with the R legs")
    for cid, target in out.chi.items():
        if xi_mor.get(target) != cid:
            report.add(f"ξχ is not the identity at {cid}")
    for x, cid in xi_mor.items():
        if x.split(":", 1)[0] in ("PQ", "QP") and out.chi.get(cid) != x:
            report.add(f"χξ is not the identity at {x}")
    if L.I.is_weighted and M.is_weighted:
        out.weights = [(cid, L.I.weights[cid], M.weights[t]) for cid, t in out.chi.items()]
    return out


# ---------------------------------------------------------------------------
# enumeration and distance


def _check_caps(c: Category, max_objects: int, max_morphisms: int) -> None:
    if len(c.objects) > max_objects or len(c.morphisms) > max_morphisms:
        raise BoundsExceeded(
            f"category with {len(c.objects)} objects and {len(c.morphisms)} morphisms exceeds the caps "
            f"({max_objects} objects, {max_morphisms} morphisms)"
        )


def enumerate_future_equivalences(
    P: Category, Q: Category, max_objects: int = 4, max_morphisms: int = 12
) -> list[FutureEquivalence]:
    """Every future equivalence from P to Q, ordered by component tables."""
    _check_caps(P, max_objects, max_morphisms)
    _check_caps(Q, max_objects, max_morphisms)
    contract = "nonexpansive" if P.is_weighted and Q.is_weighted else "none"
    out: dict[tuple, FutureEquivalence] = {}
    gammas = enumerate_functors(P, Q, contract)
    ks = enumerate_functors(Q, P, contract)
    for G, K in itertools.product(gammas, ks):
        KG = compose_functors(K, G)
        GK = compose_functors(G, K)
        etas = enumerate_nat_trans(identity_functor(P, contract), KG)
        if not etas:
            continue
        nus = enumerate_nat_trans(identity_functor(Q, contract), GK)
        for eta in etas:
            for nu in nus:
                fe = FutureEquivalence(G, K, dict(eta.components), dict(nu.components))
                if _coherent(fe):
                    out.setdefault(fe.key, fe)
    return [out[k] for k in sorted(out)]


def _coherent(fe: FutureEquivalence) -> bool:
    G, K = fe.gamma, fe.K
    return all(G.mor_map[fe.eta[p]] == fe.nu[G.obj_map[p]] for p in fe.P.objects) and all(
        K.mor_map[fe.nu[q]] == fe.eta[K.obj_map[q]] for q in fe.Q.objects
    )


def enumerate_fut_morphisms(fe: FutureEquivalence, fe2: FutureEquivalence) -> list[FutMorphism]:
    out = []
    for alpha in enumerate_nat_trans(fe.gamma, fe2.gamma):
        for beta in enumerate_nat_trans(fe.K, fe2.K):
            m = FutMorphism(fe, fe2, dict(alpha.components), dict(beta.components))
            if validate_fut_morphism(m).ok:
                out.append(m)
    return out


def future_equivalence_distance(
    P: Category | None = None,
    Q: Category | None = None,
    candidates: Sequence[FutureEquivalence] | None = None,
    max_objects: int = 4,
    max_morphisms: int = 12,
) -> DistanceBound:
    """Least ω over the future equivalences from P to Q.

    With ``candidates`` given, the minimum is over that list and the result is
    flagged as an upper bound; otherwise every future equivalence is enumerated
    and the value is exact.
    """
    exhaustive = candidates is None
    if exhaustive:
        if P is None or Q is None:
            raise ValueError("give either both categories or a candidate list")
        candidates = enumerate_future_equivalences(P, Q, max_objects, max_morphisms)
    best = DistanceBound(INF, None, upper_bound=not exhaustive)
    for k, fe in enumerate(candidates):
        w = future_equivalence_weight(fe).omega
        if best.witness is None or w < best.value:
            best = DistanceBound(w, k, upper_bound=not exhaustive)
    return best
