from __future__ import annotations

import itertools
import random
from fractions import Fraction

from gen import make_category

from catinterleave import (
    Functor,
    chain_category,
    check_fut_interleaving,
    compose_functors,
    compose_future_equivalences,
    future_equivalence_distance,
    future_equivalence_weight,
    hausdorff_weight,
    phi_comparison,
    phi_morphism,
    phi_object,
    search_interleaving_extension,
    validate_category,
    validate_cospan,
    validate_fut_morphism,
    validate_functor,
    validate_future_equivalence,
    validate_weighted,
)
from catinterleave.category import discrete_category, enumerate_functors, identity_functor, terminal_category
from catinterleave.cospan import BoundsExceeded, gh_distance, gh_family, pushout_with_classes
from catinterleave.futequiv import (
    FutMorphism,
    FutureEquivalence,
    compose_fut_morphisms,
    enumerate_cospan_morphisms,
    enumerate_fut_morphisms,
    enumerate_future_equivalences,
    identity_fut_morphism,
    identity_future_equivalence,
    search_fut_interleaving,
)
from catinterleave.weights import INF
from catinterleave.zoo import Grid, finset_category, grid_line_category, interval_module, module_functor

import pytest

GRID3 = grid_line_category(Grid([0, 1, 2]))


def thin_functor(P, Q, obj: dict, contract="nonexpansive") -> Functor:
    return Functor(P, Q, obj, {m: f"{obj[a]}->{obj[b]}" for m, (a, b) in P.morphisms.items()}, contract)


def clamped_shift(c, s: int) -> FutureEquivalence:
    """``Γ = K = a -> min(a + s, top)`` on a grid line with integer labels."""
    top = max(int(a) for a in c.objects)
    obj = {a: str(min(int(a) + s, top)) for a in c.objects}
    G = thin_functor(c, c, obj)
    twice = {a: obj[obj[a]] for a in c.objects}
    comps = {a: f"{a}->{twice[a]}" for a in c.objects}
    return FutureEquivalence(G, G, comps, dict(comps))


# -- validation -------------------------------------------------------------


def test_identity_future_equivalence_is_valid():
    for c in (chain_category(3), GRID3):
        fe = identity_future_equivalence(c)
        assert validate_future_equivalence(fe).ok
        assert future_equivalence_weight(fe).omega == 0


def test_thin_categories_are_coherent_automatically():
    for s in (0, 1, 2):
        assert validate_future_equivalence(clamped_shift(GRID3, s)).ok


def test_constant_bottom_has_no_unit():
    c = chain_category(2)
    bottom = thin_functor(c, c, {"0": "0", "1": "0"})
    fe = FutureEquivalence(bottom, bottom, {"0": "0->0", "1": "1->1"}, {"0": "0->0", "1": "1->1"})
    report = validate_future_equivalence(fe)
    assert any(v.startswith("η: component at 1") for v in report.violations)


def test_fut_morphism_examples():
    fe1, fe2 = clamped_shift(GRID3, 1), clamped_shift(GRID3, 2)
    assert validate_fut_morphism(identity_fut_morphism(fe1)).ok
    m = FutMorphism(
        fe1, fe2,
        {a: f"{fe1.gamma.obj_map[a]}->{fe2.gamma.obj_map[a]}" for a in GRID3.objects},
        {a: f"{fe1.K.obj_map[a]}->{fe2.K.obj_map[a]}" for a in GRID3.objects},
    )
    assert validate_fut_morphism(m).ok
    assert enumerate_fut_morphisms(fe2, fe1) == []  # shift 2 is never below shift 1 at 0
    bad = FutMorphism(fe1, fe2, dict(m.alpha, **{"0": "0->0"}), m.beta)
    assert not validate_fut_morphism(bad).ok


# -- composition and weights ------------------------------------------------


def test_compose_with_identity_is_unchanged():
    fe = clamped_shift(GRID3, 1)
    ident = identity_future_equivalence(GRID3)
    assert compose_future_equivalences(ident, fe).key == fe.key
    assert compose_future_equivalences(fe, ident).key == fe.key


def test_clamped_shifts_compose():
    fe = clamped_shift(GRID3, 1)
    comp = compose_future_equivalences(fe, fe)
    assert validate_future_equivalence(comp).ok
    assert comp.key == clamped_shift(GRID3, 2).key
    # η''_a : a -> min(a + 4, 2)
    assert comp.eta == {"0": "0->2", "1": "1->2", "2": "2->2"}


def test_clamped_shift_weight():
    w = future_equivalence_weight(clamped_shift(GRID3, 1))
    assert (w.W_eta, w.W_nu, w.omega) == (2, 2, 1)
    comp = compose_future_equivalences(clamped_shift(GRID3, 1), clamped_shift(GRID3, 1))
    assert future_equivalence_weight(comp).omega == 1 < 1 + 1


def test_composition_is_associative_on_thin_examples():
    fes = [clamped_shift(GRID3, s) for s in (0, 1, 2)] + enumerate_future_equivalences(GRID3, GRID3)[:6]
    for a, b, c in itertools.product(fes[:6], repeat=3):
        left = compose_future_equivalences(c, compose_future_equivalences(b, a))
        right = compose_future_equivalences(compose_future_equivalences(c, b), a)
        assert left.key == right.key


def test_omega_subadditive_on_random_thin_instances():
    rng = random.Random(17)
    pool = [[0], [0, 1], [0, 2], [0, 1, 2], [0, Fraction(1, 2), 2], [0, 1, 3]]
    cats = [grid_line_category(Grid(v)) for v in pool]
    for _ in range(40):
        P, Q, R = (rng.choice(cats) for _ in range(3))
        left, right = enumerate_future_equivalences(P, Q), enumerate_future_equivalences(Q, R)
        if not left or not right:
            continue
        fe1, fe2 = rng.choice(left), rng.choice(right)
        w = future_equivalence_weight(compose_future_equivalences(fe2, fe1)).omega
        assert not future_equivalence_weight(fe1).omega + future_equivalence_weight(fe2).omega < w


# -- interleavings along a future equivalence ------------------------------


def test_identity_interleaving_and_broken_naturality():
    g = Grid([0, 1, 2])
    M = module_functor(interval_module(g, 0, "inf"))
    fe = identity_future_equivalence(M.source)
    ident = {a: M.target.identities[M.obj_map[a]] for a in M.source.objects}
    assert check_fut_interleaving(fe, M, M, ident, ident)
    broken = dict(ident, **{"1": "F2^1->F2^1:0"})
    assert not check_fut_interleaving(fe, M, M, broken, ident)


def test_interleaving_matches_extension_over_phi():
    rng = random.Random(23)
    C = finset_category(2)
    c2, c3 = chain_category(2), chain_category(3)
    compared = 0
    for P, Q in ((c2, c2), (c2, c3), (c3, c2)):
        fes = enumerate_future_equivalences(P, Q)
        Fs = enumerate_functors(P, C, limit=60)
        Gs = enumerate_functors(Q, C, limit=60)
        for _ in range(12):
            F, G = rng.choice(Fs), rng.choice(Gs)
            for fe in fes:
                direct = search_fut_interleaving(fe, F, G)
                if direct is not None:
                    assert check_fut_interleaving(fe, F, G, *direct)
                via_phi = search_interleaving_extension(phi_object(fe), F, G, mode="finset")
                assert (direct is None) == (via_phi is None)
                compared += 1
    assert compared > 100


# -- Φ ----------------------------------------------------------------------


def test_phi_of_identity_copies_hom_sets():
    fe = identity_future_equivalence(GRID3)
    e = phi_object(fe)
    assert validate_cospan(e).ok
    for a in GRID3.objects:
        for b in GRID3.objects:
            cross = e.I.hom(f"P:{a}", f"Q:{b}")
            assert len(cross) == len(GRID3.hom(a, b))
            for m in cross:
                assert e.I.weights[m] == GRID3.weights[m.split(":", 2)[2]]


def test_phi_of_clamped_shift():
    e = phi_object(clamped_shift(GRID3, 1))
    assert validate_cospan(e).ok and validate_weighted(e.I).ok
    for p in range(3):
        for q in range(3):
            cross = e.I.hom(f"P:{p}", f"Q:{q}")
            start = min(p + 1, 2)
            assert len(cross) == (1 if start <= q else 0)
            if cross:
                assert e.I.weights[cross[0]] == (q - start) + 1


def test_phi_composition_associative_and_weighted_on_grids():
    for vals_p, vals_q in itertools.product([[0, 1], [0, 2], [0, 1, 2]], repeat=2):
        P, Q = grid_line_category(Grid(vals_p)), grid_line_category(Grid(vals_q))
        for fe in enumerate_future_equivalences(P, Q):
            e = phi_object(fe)
            assert validate_category(e.I).ok
            assert validate_weighted(e.I).ok


def test_phi_morphism_examples():
    fe1, fe2 = clamped_shift(GRID3, 1), clamped_shift(GRID3, 2)
    ident = phi_morphism(identity_fut_morphism(fe1))
    assert ident.same_tables(identity_functor(phi_object(fe1).I))
    (m,) = enumerate_fut_morphisms(fe1, fe2)
    F = phi_morphism(m)
    assert validate_functor(F).ok
    assert F.source == phi_object(fe2).I and F.target == phi_object(fe1).I


def test_phi_is_contravariant_on_chains():
    c2 = chain_category(2)
    fes = enumerate_future_equivalences(c2, c2)
    pairs = {fe.key: phi_object(fe) for fe in fes}
    for a, b, c in itertools.product(fes, repeat=3):
        for m1 in enumerate_fut_morphisms(a, b):
            for m2 in enumerate_fut_morphisms(b, c):
                whole = phi_morphism(compose_fut_morphisms(m2, m1), pairs[a.key], pairs[c.key])
                parts = compose_functors(
                    phi_morphism(m1, pairs[a.key], pairs[b.key]), phi_morphism(m2, pairs[b.key], pairs[c.key])
                )
                assert whole.same_tables(parts)


def test_phi_is_full_and_faithful_on_two_chain():
    c2 = chain_category(2)
    fes = enumerate_future_equivalences(c2, c2)
    for fe1, fe2 in itertools.product(fes, repeat=2):
        e1, e2 = phi_object(fe1), phi_object(fe2)
        images = {tuple(sorted(phi_morphism(m, e1, e2).mor_map.items())) for m in enumerate_fut_morphisms(fe1, fe2)}
        targets = {tuple(sorted(F.mor_map.items())) for F in enumerate_cospan_morphisms(e2, e1)}
        assert images == targets


def retraction_category():
    """Two parallel arrows ``u, v: q0 -> q1`` with a common retraction ``r``."""
    arrows = {"u": ("q0", "q1"), "v": ("q0", "q1"), "r": ("q1", "q0"), "e1": ("q1", "q1"), "e2": ("q1", "q1")}
    rel = {
        ("u", "r"): "1q0", ("v", "r"): "1q0",
        ("r", "u"): "e1", ("r", "v"): "e2",
        ("u", "e1"): "u", ("v", "e1"): "u", ("u", "e2"): "v", ("v", "e2"): "v",
        ("e1", "e1"): "e1", ("e2", "e1"): "e1", ("e1", "e2"): "e2", ("e2", "e2"): "e2",
        ("e1", "r"): "r", ("e2", "r"): "r",
    }
    return make_category(["q0", "q1"], arrows, rel, {m: 0 for m in arrows})


def test_non_thin_comparison():
    Q = retraction_category()
    assert validate_weighted(Q).ok and not Q.is_thin
    P, R = terminal_category("p"), terminal_category("s")
    to_q = {m: "1q0" for m in P.morphisms}
    G = Functor(P, Q, {"p": "q0"}, to_q, "nonexpansive")
    K = Functor(Q, P, {"q0": "p", "q1": "p"}, {m: "p->p" for m in Q.morphisms}, "nonexpansive")
    fe1 = FutureEquivalence(G, K, {"p": "p->p"}, {"q0": "1q0", "q1": "r"})
    L = Functor(Q, R, {"q0": "s", "q1": "s"}, {m: "s->s" for m in Q.morphisms}, "nonexpansive")
    M = Functor(R, Q, {"s": "q0"}, {"s->s": "1q0"}, "nonexpansive")
    fe2 = FutureEquivalence(L, M, {"q0": "1q0", "q1": "r"}, {"s": "s->s"})
    assert validate_future_equivalence(fe1).ok and validate_future_equivalence(fe2).ok
    _, classes = pushout_with_classes(phi_object(fe1), phi_object(fe2))
    composite = phi_object(compose_future_equivalences(fe2, fe1))
    for direction, a, b in (("IJ", "P:p", "Q:s"), ("JI", "Q:s", "P:p")):
        mine = [c for c in classes if c.direction == direction]
        assert len(mine) == 1 == len(composite.I.hom(a, b))
        assert len(mine[0].members) == 3
    assert phi_comparison(fe1, fe2).ok


def test_comparison_with_identities_and_shifts():
    fe = clamped_shift(GRID3, 1)
    ident = identity_future_equivalence(GRID3)
    for a, b in ((fe, ident), (ident, fe), (fe, fe)):
        result = phi_comparison(a, b)
        assert result.ok, str(result.report)
        assert result.xi is not None


# -- enumeration and distance ----------------------------------------------


def brute_force_thin_fes(P, Q):
    """Pairs of monotone nonexpansive maps with ``id <= KΓ`` and ``id <= ΓK``."""
    def monotone_maps(A, B):
        for images in itertools.product(B.objects, repeat=len(A.objects)):
            f = dict(zip(A.objects, images))
            if all(B.hom(f[a], f[b]) and B.weights[B.hom(f[a], f[b])[0]] <= A.weights[m]
                   for m, (a, b) in A.morphisms.items()):
                yield f

    out = []
    for g in monotone_maps(P, Q):
        for k in monotone_maps(Q, P):
            if all(P.hom(p, k[g[p]]) for p in P.objects) and all(Q.hom(q, g[k[q]]) for q in Q.objects):
                w_eta = max(P.weights[P.hom(p, k[g[p]])[0]] for p in P.objects)
                w_nu = max(Q.weights[Q.hom(q, g[k[q]])[0]] for q in Q.objects)
                out.append((g, k, max(w_eta, w_nu).half()))
    return out


def test_enumeration_examples():
    point = terminal_category()
    (only,) = enumerate_future_equivalences(point, point)
    assert only.key == identity_future_equivalence(point).key
    c2 = chain_category(2)
    assert len(enumerate_future_equivalences(c2, c2)) == len(brute_force_thin_fes(c2, c2)) == 4
    assert enumerate_future_equivalences(c2, discrete_category(["a", "b"], weighted=True)) == []


def test_enumeration_caps():
    big = chain_category(5)
    with pytest.raises(BoundsExceeded):
        enumerate_future_equivalences(big, big)
    with pytest.raises(BoundsExceeded):
        future_equivalence_distance(big, big)


def test_distance_examples():
    assert future_equivalence_distance(GRID3, GRID3).value == 0
    sub = grid_line_category(Grid([0, 2]))
    result = future_equivalence_distance(GRID3, sub)
    oracle = min(w for _, _, w in brute_force_thin_fes(GRID3, sub))
    assert result.value == oracle == 1
    assert not result.upper_bound
    listed = future_equivalence_distance(candidates=[clamped_shift(GRID3, 1)])
    assert listed.value == 1 and listed.upper_bound
    assert future_equivalence_distance(candidates=[]).value == INF


def test_collapse_of_two_chain_has_finite_omega_but_infinite_symmetric_weight():
    c2, point = chain_category(2), terminal_category("a")
    assert future_equivalence_distance(c2, point).value == Fraction(1, 2)
    fes = enumerate_future_equivalences(c2, point)
    assert all(hausdorff_weight(phi_object(fe), symmetric=True) == INF for fe in fes)
    assert gh_distance(gh_family(c2, point, [0, Fraction(1, 2), 1]), symmetric=True).value == INF
