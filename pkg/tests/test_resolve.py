import random
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _oracle import PairOracle
from gridresolve.errors import InputError
from gridresolve.grid import Grid, Vertex, apply_symmetry, symmetries
from gridresolve.resolve import (
    all_locally_resolved,
    distance_signature,
    has_locally_resolved_neighbourhood,
    is_minimal,
    is_resolving,
    minimal_mask,
    resolving_mask,
    unresolved_pairs,
)


@pytest.mark.parametrize(
    "s, v, expected",
    [
        ([(0, 0), (2, 0)], (1, 2), [3, 3]),
        ([(0, 0)], (0, 0), [0]),
        ([(0, 0), (2, 0), (1, 1)], (2, 2), [4, 2, 2]),
    ],
)
def test_distance_signature_examples(g3, s, v, expected):
    assert distance_signature(g3, s, v) == expected


def test_distance_signature_follows_canonical_order(g3):
    # landmarks are re-sorted to (0,0), (1,1), (2,0)
    assert distance_signature(g3, [(0, 0), (2, 0), (1, 1)], (2, 2)) == [4, 2, 2]


def test_distance_signature_needs_landmarks(g3):
    with pytest.raises(InputError):
        distance_signature(g3, [], (0, 0))


def test_is_resolving_examples(g3):
    assert is_resolving(g3, [(0, 0), (2, 0)])  # two corners sharing a side
    assert not is_resolving(g3, [(0, 0), (2, 2)])  # opposite corners
    assert not is_resolving(g3, [(0, 0), (1, 0)])
    assert not is_resolving(g3, [])


def test_adjacent_boundary_pair_witness(g3):
    # (1,1) and (2,0) both sit at distances (2, 1) from (0,0), (1,0)
    assert ((Vertex(1, 1), Vertex(2, 0))) in unresolved_pairs(g3, [(0, 0), (1, 0)])


def test_unresolved_pairs_examples(g3):
    assert unresolved_pairs(g3, [(0, 0), (2, 0)]) == []
    assert (Vertex(0, 1), Vertex(1, 0)) in unresolved_pairs(g3, [(0, 0)])
    assert (Vertex(0, 1), Vertex(1, 0)) in unresolved_pairs(g3, [(0, 0), (2, 2)])


def test_unresolved_pairs_opposite_corners_by_brute_force(g3):
    s = [(0, 0), (2, 2)]
    expected = sorted(
        (u, v)
        for u, v in combinations(g3.vertices(), 2)
        if all(abs(a[0] - u.x) + abs(a[1] - u.y) == abs(a[0] - v.x) + abs(a[1] - v.y) for a in s)
    )
    assert unresolved_pairs(g3, s) == expected


def test_is_minimal_examples(g3):
    assert is_minimal(g3, [(0, 0), (2, 0)])
    assert not is_minimal(g3, [(0, 0), (2, 0), (1, 1)])
    assert is_minimal(g3, [(0, 1), (2, 1), (1, 0)])


def test_local_neighbourhood_examples(g3):
    assert not has_locally_resolved_neighbourhood(g3, [(0, 0)], (0, 0))
    assert has_locally_resolved_neighbourhood(g3, [(0, 0), (2, 0)], (1, 1))
    assert not has_locally_resolved_neighbourhood(g3, [], (1, 1))


def test_all_locally_resolved_examples(g3):
    assert all_locally_resolved(g3, [(0, 0), (2, 0)])
    assert not all_locally_resolved(g3, [(0, 0), (2, 2)])
    assert not all_locally_resolved(g3, [])


def test_all_locally_resolved_matches_per_vertex_test():
    g = Grid(4, 3)
    rng = random.Random(7)
    for _ in range(300):
        s = rng.sample(g.vertices(), rng.randint(0, 5))
        per_vertex = all(has_locally_resolved_neighbourhood(g, s, v) for v in g.vertices())
        assert all_locally_resolved(g, s) == per_vertex


def test_local_resolution_equals_resolution_on_every_3x3_subset(g3):
    vs = g3.vertices()
    for mask in range(1 << len(vs)):
        s = [v for i, v in enumerate(vs) if mask >> i & 1]
        assert all_locally_resolved(g3, s) == is_resolving(g3, s)


@pytest.mark.parametrize("w, h", [(3, 3), (3, 4), (4, 4)])
def test_is_resolving_agrees_with_pair_oracle(w, h):
    g = Grid(w, h)
    oracle = PairOracle(w, h)
    rng = random.Random(w * 10 + h)
    for _ in range(400):
        s = rng.sample(g.vertices(), rng.randint(0, 5))
        assert is_resolving(g, s) == oracle.resolving(s)
        assert is_minimal(g, s) == oracle.minimal(s)


@pytest.mark.parametrize("w, h, k", [(3, 3, 3), (3, 4, 4), (4, 4, 3), (5, 3, 2)])
def test_batched_masks_match_scalar_predicates(w, h, k):
    g = Grid(w, h)
    combos = np.array(list(combinations(range(g.size), k)))
    sets = [[g.vertex(i) for i in row] for row in combos]
    assert resolving_mask(g, combos).tolist() == [is_resolving(g, s) for s in sets]
    assert minimal_mask(g, combos).tolist() == [is_minimal(g, s) for s in sets]


def test_unpackable_signatures_fall_back_to_rows():
    # 40 + 40 - 1 = 79; 79**11 overflows the packed code
    g = Grid(40, 40)
    s = [(0, 0), (39, 0)] + [(i, i) for i in range(1, 10)]
    assert is_resolving(g, s)
    assert not is_resolving(g, [(0, 0), (39, 39)] + [(i, i) for i in range(1, 10)])


landmark_sets = st.tuples(st.integers(3, 5), st.integers(3, 5)).flatmap(
    lambda wh: st.tuples(
        st.just(Grid(*wh)),
        st.sets(st.tuples(st.integers(0, wh[0] - 1), st.integers(0, wh[1] - 1)), max_size=6),
    )
)


@given(landmark_sets, st.data())
@settings(max_examples=150)
def test_resolution_is_monotone(gs, data):
    g, s = gs
    extra = data.draw(st.sampled_from(g.vertices()))
    if is_resolving(g, s):
        assert is_resolving(g, s | {extra})


@given(landmark_sets, st.data())
@settings(max_examples=150)
def test_predicates_are_symmetry_invariant(gs, data):
    g, s = gs
    sym = data.draw(st.sampled_from(symmetries(g)))
    image = apply_symmetry(g, sym, s)
    assert is_resolving(g, image) == is_resolving(g, s)
    assert is_minimal(g, image) == is_minimal(g, s)


@given(landmark_sets)
@settings(max_examples=150)
def test_minimal_sets_have_no_resolving_proper_subset(gs):
    g, s = gs
    s = sorted(s)
    assert (unresolved_pairs(g, s) == []) == is_resolving(g, s)
    if is_minimal(g, s):
        assert is_resolving(g, s)
        for k in range(len(s)):
            for sub in combinations(s, k):
                assert not is_resolving(g, sub)
