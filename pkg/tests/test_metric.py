from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gen import lawvere_spaces

from catinterleave import (
    EmptySubsetError,
    LawvereSpace,
    hausdorff,
    hausdorff_via_offsets,
    offset,
    offset_interleaving_distance,
    sym_hausdorff,
    underlying_category,
    validate_lawvere,
)
from catinterleave.metric import from_points_on_line
from catinterleave.weights import INF

ASYM = LawvereSpace(["x", "y"], [[0, 3], [5, 0]])
LINE = from_points_on_line([0, 1, 3])
DIRECTED = from_points_on_line([0, 1, 3], directed=True)


def test_validate_examples():
    assert validate_lawvere(LawvereSpace(["p"], [[0]])).ok
    assert validate_lawvere(ASYM).ok
    bad = LawvereSpace(["x", "y", "z"], [[0, 1, 10], [1, 0, 1], [10, 1, 0]])
    report = validate_lawvere(bad)
    assert "triangle inequality fails on (x,y,z)" in report.violations


def test_nonzero_diagonal_reported():
    assert not validate_lawvere(LawvereSpace(["x"], [[1]])).ok


def test_offsets_on_directed_line():
    assert offset(DIRECTED, ["0"], 1, "future") == {"0", "1"}
    assert offset(DIRECTED, ["0"], 1, "past") == {"0"}
    assert offset(LINE, ["0", "3"], 0) == {"0", "3"}
    with pytest.raises(ValueError):
        offset(LINE, ["0"], 1, "sideways")


def test_hausdorff_examples():
    assert hausdorff(ASYM, ["x", "y"], ["x", "y"]) == 0
    assert hausdorff(ASYM, ["x"], ["y"]) == 3
    assert hausdorff(ASYM, ["y"], ["x"]) == 5
    assert hausdorff(LINE, ["0"], ["3"]) == 3


def test_offset_form_examples():
    assert hausdorff_via_offsets(ASYM, ["x"], ["x"]) == 0
    assert hausdorff_via_offsets(ASYM, ["x"], ["y"]) == 3


def test_symmetric_examples():
    assert sym_hausdorff(ASYM, ["x"], ["x"]) == 0
    assert sym_hausdorff(ASYM, ["x"], ["y"]) == 5


def test_offset_interleaving_examples():
    assert offset_interleaving_distance(LINE, ["0"], ["3"]) == 3
    assert offset_interleaving_distance(LINE, ["1"], ["1"]) == 0


def test_empty_subsets_rejected():
    for fn in (hausdorff, hausdorff_via_offsets, sym_hausdorff, offset_interleaving_distance):
        with pytest.raises(EmptySubsetError):
            fn(LINE, [], ["0"])


def test_unknown_point_rejected():
    with pytest.raises(KeyError):
        hausdorff(LINE, ["7"], ["0"])


def test_underlying_category_examples():
    full = underlying_category(LINE)
    assert all(len(full.hom(a, b)) == 1 for a in full.objects for b in full.objects)
    c = underlying_category(LawvereSpace(["x", "y"], [[0, INF], [2, 0]]))
    assert c.hom("x", "y") == [] and c.hom("y", "x") == ["y->x"]
    poset = underlying_category(DIRECTED)
    assert sorted(poset.morphisms) == sorted(f"{a}->{b}" for a in "013" for b in "013" if int(a) <= int(b))


def test_asymmetric_offset_distance_reported_without_claim():
    # off the symmetric case the two numbers can differ
    s = LawvereSpace(["x", "y"], [[0, 1], [INF, 0]])
    assert hausdorff(s, ["x"], ["y"]) == 1
    assert offset_interleaving_distance(s, ["x"], ["y"]) == INF


# -- properties -------------------------------------------------------------


subsets = st.lists(st.integers(0, 7), min_size=1, max_size=4)


def pick(space, idx):
    return [space.points[i % len(space.points)] for i in idx]


@settings(max_examples=150, deadline=None)
@given(lawvere_spaces(max_points=6), subsets, subsets, subsets)
def test_hausdorff_properties(space, ia, ib, ic):
    A, B, C = pick(space, ia), pick(space, ib), pick(space, ic)
    assert hausdorff(space, A, B) == hausdorff_via_offsets(space, A, B)
    assert not hausdorff(space, A, B) + hausdorff(space, B, C) < hausdorff(space, A, C)
    assert sym_hausdorff(space, A, B) == sym_hausdorff(space, B, A)
    assert not sym_hausdorff(space, A, B) + sym_hausdorff(space, B, C) < sym_hausdorff(space, A, C)
    assert not sym_hausdorff(space, A, B) < hausdorff(space, A, B)


@settings(max_examples=100, deadline=None)
@given(lawvere_spaces(max_points=6), subsets, subsets, st.sampled_from([0, 1, 2, 5]), st.sampled_from([0, 1, 3]))
def test_offsets_compose_and_grow_with_the_set(space, ia, ib, r, s):
    A = pick(space, ia)
    B = sorted(set(A) | set(pick(space, ib)))
    assert offset(space, offset(space, A, r), s) <= offset(space, A, r + s)
    assert offset(space, offset(space, A, r, "past"), s, "past") <= offset(space, A, r + s, "past")
    assert offset(space, A, r) <= offset(space, B, r)
    assert offset(space, A, r, "past") <= offset(space, B, r, "past")


@settings(max_examples=100, deadline=None)
@given(lawvere_spaces(max_points=6, symmetric=True), subsets, subsets)
def test_offset_interleaving_matches_on_symmetric_spaces(space, ia, ib):
    A, B = pick(space, ia), pick(space, ib)
    assert offset_interleaving_distance(space, A, B) == hausdorff(space, A, B)
