from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gen import lawvere_spaces

from catinterleave import (
    Category,
    Functor,
    NatTrans,
    chain_category,
    check_embedding,
    compose_functors,
    identity_functor,
    induced_metric,
    thin_category,
    validate_category,
    validate_functor,
    validate_nat_trans,
    validate_weighted,
)
from catinterleave.category import (
    discrete_category,
    enumerate_functors,
    enumerate_nat_trans,
    full_subcategory,
    identity_nat_trans,
    path_category,
    terminal_category,
)
from catinterleave.metric import underlying_category, validate_lawvere
from catinterleave.weights import INF, Weight
from catinterleave.zoo import Grid, finset_category, grid_line_category


def parallel_arrows(w_u=3, w_v=1) -> Category:
    morphisms = {"1a": ("a", "a"), "1b": ("b", "b"), "u": ("a", "b"), "v": ("a", "b")}
    comp = {("1a", "1a"): "1a", ("1b", "1b"): "1b"}
    for m in ("u", "v"):
        comp[("1a", m)] = m
        comp[(m, "1b")] = m
    weights = {"1a": 0, "1b": 0, "u": w_u, "v": w_v}
    return Category(("a", "b"), morphisms, {"a": "1a", "b": "1b"}, comp, weights)


# -- validate_category ------------------------------------------------------


def test_terminal_category_is_valid():
    assert validate_category(terminal_category()).ok


def test_missing_identity_composite_reported():
    c = chain_category(2, weighted=False)
    comp = dict(c.composition)
    del comp[("0->1", "1->1")]
    broken = Category(c.objects, c.morphisms, c.identities, comp)
    report = validate_category(broken)
    assert not report.ok
    assert any("composition not total" in v for v in report.violations)


def test_perturbed_table_names_associativity_triple():
    c = finset_category(2)
    found = None
    for (f, g), h in sorted(c.composition.items()):
        if h in c.identities.values() or f in c.identities.values() or g in c.identities.values():
            continue
        for alt in c.hom(*c.morphisms[h]):
            if alt == h:
                continue
            comp = dict(c.composition)
            comp[(f, g)] = alt
            report = validate_category(Category(c.objects, c.morphisms, c.identities, comp))
            if any("associativity fails" in v for v in report.violations):
                found = report
                break
        if found:
            break
    assert found is not None
    assert "associativity fails on (" in found.violations[0]


def test_unknown_endpoint_reported():
    c = Category(("a",), {"1a": ("a", "a"), "f": ("a", "z")}, {"a": "1a"}, {("1a", "1a"): "1a"})
    assert "endpoint outside" in str(validate_category(c))


# -- validate_weighted ------------------------------------------------------


def test_two_chain_with_unit_weight_is_weighted():
    assert validate_weighted(chain_category(2)).ok


def test_identity_weight_must_vanish():
    c = chain_category(2)
    w = dict(c.weights)
    w["0->0"] = Weight(1)
    report = validate_weighted(c.with_weights(w))
    assert any("identity weight nonzero" in v for v in report.violations)


def test_subadditivity_violation():
    c = chain_category(3)
    w = dict(c.weights)
    w["0->2"] = Weight(3)
    report = validate_weighted(c.with_weights(w))
    assert any("subadditivity" in v for v in report.violations)


# -- functors ---------------------------------------------------------------


def test_identity_functor_is_valid():
    for c in (chain_category(3), parallel_arrows(), finset_category(2)):
        assert validate_functor(identity_functor(c)).ok


def chain_inclusion(n=2, m=3) -> Functor:
    small, big = chain_category(n), chain_category(m)
    return Functor(small, big, {a: a for a in small.objects}, {f: f for f in small.morphisms}, "weight-preserving")


def test_chain_inclusion_is_weight_preserving_embedding():
    F = chain_inclusion()
    assert validate_functor(F).ok
    assert check_embedding(F)


def test_nonexpansive_contract_violation():
    one, two = chain_category(2, unit=1), chain_category(2, unit=2)
    F = Functor(one, two, {"0": "0", "1": "1"}, {m: m for m in one.morphisms}, "nonexpansive")
    report = validate_functor(F)
    assert any("not nonexpansive on 0->1" in v for v in report.violations)


def test_swapped_parallel_arrows_break_naturality():
    c = parallel_arrows()
    swap = Functor(c, c, {"a": "a", "b": "b"}, {"1a": "1a", "1b": "1b", "u": "v", "v": "u"})
    assert validate_functor(swap).ok
    t = NatTrans(identity_functor(c), swap, {"a": "1a", "b": "1b"})
    report = validate_nat_trans(t)
    assert not report.ok and "naturality square fails" in report.violations[0]
    assert enumerate_nat_trans(identity_functor(c), swap) == []


def test_thin_nat_trans_always_natural():
    c = chain_category(3)
    F = identity_functor(c)
    shift = {"0": "1", "1": "2", "2": "2"}
    G = Functor(c, c, shift, {m: f"{shift[a]}->{shift[b]}" for m, (a, b) in c.morphisms.items()})
    t = NatTrans(F, G, {"0": "0->1", "1": "1->2", "2": "2->2"})
    assert validate_nat_trans(t).ok
    assert validate_nat_trans(identity_nat_trans(G)).ok


def test_embedding_examples():
    g01 = grid_line_category(Grid([0, 1]))
    g012 = grid_line_category(Grid([0, 1, 2]))
    incl = Functor(g01, g012, {"0": "0", "1": "1"}, {m: m for m in g01.morphisms}, "weight-preserving")
    assert check_embedding(incl)

    c2 = chain_category(2)
    point = terminal_category("*")
    collapse = Functor(c2, point, {"0": "*", "1": "*"}, {m: "*->*" for m in c2.morphisms})
    assert validate_functor(collapse).ok
    assert not check_embedding(collapse)

    disc = discrete_category(["0", "1"], weighted=True)
    into_chain = Functor(disc, c2, {"0": "0", "1": "1"}, {"0->0": "0->0", "1->1": "1->1"}, "weight-preserving")
    assert validate_functor(into_chain).ok
    assert not check_embedding(into_chain)


def test_composition_examples():
    F = chain_inclusion(2, 3)
    assert compose_functors(identity_functor(F.target), F).same_tables(F)
    G = chain_inclusion(3, 4)
    GF = compose_functors(G, F)
    assert check_embedding(GF) and GF.same_tables(chain_inclusion(2, 4))
    point = terminal_category("*")
    c3 = chain_category(3)
    collapse = Functor(c3, point, {a: "*" for a in c3.objects}, {m: "*->*" for m in c3.morphisms})
    assert not check_embedding(compose_functors(collapse, F))
    with pytest.raises(ValueError):
        compose_functors(F, F)


def test_contract_of_composite_is_weaker():
    F = chain_inclusion(2, 3)
    loose = identity_functor(F.target, "nonexpansive")
    assert compose_functors(loose, F).contract == "nonexpansive"


# -- induced metric ---------------------------------------------------------


def test_induced_metric_examples():
    c = parallel_arrows(3, 1)
    d = induced_metric(c)
    assert d.d("a", "a") == 0 and d.d("a", "b") == 1 and d.d("b", "a") == INF
    disc = induced_metric(discrete_category(["x", "y"], weighted=True))
    assert disc.d("x", "y") == INF


# -- properties -------------------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(lawvere_spaces())
def test_induced_metric_is_lawvere(space):
    c = underlying_category(space)
    assert validate_weighted(c).ok
    d = induced_metric(c)
    assert validate_lawvere(d).ok
    assert d.dist == space.dist


@settings(max_examples=40, deadline=None)
@given(lawvere_spaces(), st.data())
def test_embeddings_preserve_and_nonexpansive_maps_shrink(space, data):
    c = underlying_category(space)
    keep = data.draw(st.lists(st.sampled_from(c.objects), min_size=1, unique=True))
    sub, incl = full_subcategory(c, keep)
    assert check_embedding(incl)
    ds, dc = induced_metric(sub), induced_metric(c)
    for a in sub.objects:
        for b in sub.objects:
            assert ds.d(a, b) == dc.d(a, b)
    for F in enumerate_functors(c, c, "nonexpansive", limit=20):
        for a in c.objects:
            for b in c.objects:
                assert not dc.d(a, b) < dc.d(F.obj_map[a], F.obj_map[b])


def test_functor_composition_associative_and_unital():
    cats = [chain_category(2), chain_category(3), grid_line_category(Grid([0, 1, 2]))]
    fs = {}
    for i, P in enumerate(cats):
        for j, Q in enumerate(cats):
            fs[(i, j)] = enumerate_functors(P, Q, limit=6)
    for (i, j), F_list in fs.items():
        for F in F_list:
            assert compose_functors(identity_functor(F.target), F).same_tables(F)
            assert compose_functors(F, identity_functor(F.source)).same_tables(F)
            for k in range(len(cats)):
                for G in fs[(j, k)]:
                    for l in range(len(cats)):
                        for H in fs[(k, l)][:2]:
                            left = compose_functors(H, compose_functors(G, F))
                            right = compose_functors(compose_functors(H, G), F)
                            assert left.same_tables(right)


def test_path_category_is_weighted_and_not_thin():
    c = path_category(3, [(0, 1, 1), (0, 1, 2), (1, 2, Fraction(1, 2))])
    assert validate_weighted(c).ok
    assert not c.is_thin
    assert len(c.hom("v0", "v2")) == 2


def test_thin_category_from_order():
    c = thin_category(["a", "b"], lambda x, y: x <= y, lambda x, y: 2)
    assert c.is_thin and c.weights["a->b"] == 2 and c.weights["a->a"] == 0
