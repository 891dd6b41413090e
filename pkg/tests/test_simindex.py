"""Usage similarity, distance, points, and neighborhood queries."""
from __future__ import annotations

import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cousage import Point, UsageVector, dist, neighbors, or_all, pairwise_distances, usim

from conftest import random_client_sets
from oracles import usage_distance


def vec(indices, length=8) -> UsageVector:
    return UsageVector.from_indices(indices, length)


class TestUsim:
    def test_documented_pair_is_half(self):
        # client sets {c1,c2,c3,c6} and {c1,c2}: 2 shared of 4 total
        a = vec([0, 1, 2, 5])
        b = vec([0, 1])
        assert usim(a, b) == 0.5
        assert dist(a, b) == 0.5

    def test_identical_nonempty(self):
        a = vec([1, 3, 4])
        assert usim(a, a) == 1.0
        assert dist(a, a) == 0.0

    def test_disjoint(self):
        assert usim(vec([0]), vec([1])) == 0.0
        assert dist(vec([0]), vec([1])) == 1.0

    def test_both_empty_is_zero_by_convention(self):
        assert usim(vec([]), vec([])) == 0.0
        assert dist(vec([]), vec([])) == 1.0

    def test_length_mismatch_rejected(self):
        with pytest.raises(ValueError, match="length mismatch"):
            usim(vec([0], 4), vec([0], 5))


bit_lists = st.lists(st.booleans(), min_size=1, max_size=16)


@given(st.data(), st.integers(2, 16))
@settings(max_examples=150, deadline=None)
def test_usim_symmetric_and_self_similarity(data, length):
    a = UsageVector(data.draw(st.lists(st.booleans(), min_size=length, max_size=length)))
    b = UsageVector(data.draw(st.lists(st.booleans(), min_size=length, max_size=length)))
    assert usim(a, b) == usim(b, a)
    if a.cardinality:
        assert usim(a, a) == 1.0


@given(st.data(), st.integers(2, 12))
@settings(max_examples=200, deadline=None)
def test_triangle_inequality(data, length):
    bits = st.lists(st.booleans(), min_size=length, max_size=length)
    a, b, c = (UsageVector(data.draw(bits)) for _ in range(3))
    assert dist(a, c) <= dist(a, b) + dist(b, c) + 1e-12


class TestPoints:
    def test_composite_vector_is_union(self):
        p1 = Point.atomic("a", vec([0, 1]))
        p2 = Point.atomic("b", vec([1, 2]))
        comp = Point.composite([p1, p2], 0.25)
        assert comp.vector.client_indices() == (0, 1, 2)
        assert comp.member_libraries() == ("a", "b")
        assert comp.formed_at == 0.25

    def test_cardinality_monotone_under_aggregation(self):
        rng = random.Random(5)
        for _ in range(50):
            sets = random_client_sets(rng, 4, 10)
            points = [Point.atomic(f"l{i}", vec(s, 10)) for i, s in enumerate(sets)]
            comp = Point.composite(points, 0.5)
            assert comp.vector.cardinality >= max(p.vector.cardinality for p in points)
            assert set(comp.vector.client_indices()) == set().union(*sets)

    def test_composite_needs_two_children(self):
        with pytest.raises(ValueError, match=">= 2 children"):
            Point.composite([Point.atomic("a", vec([0]))], 0.1)

    def test_atomic_cannot_have_children(self):
        a = Point.atomic("a", vec([0]))
        with pytest.raises(ValueError):
            Point(vector=vec([0]), library="b", children=(a, a))

    def test_formed_at_must_be_a_ratio(self):
        kids = [Point.atomic("a", vec([0])), Point.atomic("b", vec([1]))]
        with pytest.raises(ValueError):
            Point.composite(kids, 1.5)

    def test_or_all_empty_rejected(self):
        with pytest.raises(ValueError):
            or_all([])


class TestNeighbors:
    def test_epsilon_zero_groups_identical_vectors_only(self):
        points = [
            Point.atomic("a", vec([0, 1])),
            Point.atomic("b", vec([0, 1])),
            Point.atomic("c", vec([2])),
        ]
        assert neighbors(points, 0, 0.0) == {1}
        assert neighbors(points, 1, 0.0) == {0}
        assert neighbors(points, 2, 0.0) == set()

    def test_epsilon_one_is_the_full_ball(self):
        points = [Point.atomic(f"l{i}", vec([i])) for i in range(4)]
        for i in range(4):
            assert neighbors(points, i, 1.0) == set(range(4)) - {i}

    def test_matches_brute_force_scan(self):
        rng = random.Random(11)
        for trial in range(30):
            sets = random_client_sets(rng, 10, 8)
            points = [Point.atomic(f"l{i}", vec(s, 8)) for i, s in enumerate(sets)]
            eps = rng.random()
            for i in range(10):
                expected = {j for j in range(10) if j != i
                            and usage_distance(sets[j], sets[i]) <= eps}
                assert neighbors(points, i, eps) == expected, f"trial {trial} point {i}"

    def test_symmetry(self):
        rng = random.Random(12)
        sets = random_client_sets(rng, 12, 6)
        points = [Point.atomic(f"l{i}", vec(s, 6)) for i, s in enumerate(sets)]
        for eps in (0.0, 0.3, 0.6, 1.0):
            for i in range(12):
                for j in neighbors(points, i, eps):
                    assert i in neighbors(points, j, eps)

    def test_epsilon_out_of_range_rejected(self):
        points = [Point.atomic("a", vec([0])), Point.atomic("b", vec([1]))]
        with pytest.raises(ValueError):
            neighbors(points, 0, 1.5)


def test_pairwise_distances_match_scalar_dist():
    rng = random.Random(13)
    sets = random_client_sets(rng, 15, 9, allow_empty=True)
    points = [Point.atomic(f"l{i}", vec(s, 9)) for i, s in enumerate(sets)]
    matrix = pairwise_distances(points)
    for i in range(15):
        for j in range(15):
            if i == j:
                continue
            assert matrix[i, j] == dist(points[i].vector, points[j].vector)
    assert np.array_equal(matrix, matrix.T)
