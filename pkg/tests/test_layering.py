"""Multi-layer mining: schedule, nesting, oracles, and invariants."""
from __future__ import annotations

import random

import numpy as np
import pytest

from cousage import (DependencyMatrix, MiningConfig, epsilon_dbscan, epsilon_schedule,
                     flatten, layer_paths, puc)

from conftest import build_walkthrough_matrix, matrix_from_client_sets, random_client_sets
from oracles import replayed_layer_partition


class TestEpsilonSchedule:
    def test_worked_example_schedule(self):
        cfg = MiningConfig(max_epsilon=0.55, epsilon_step=0.25)
        assert epsilon_schedule(cfg) == [0.0, 0.25, 0.5]

    def test_upper_bound_is_open(self):
        cfg = MiningConfig(max_epsilon=0.5, epsilon_step=0.25)
        assert epsilon_schedule(cfg) == [0.0, 0.25]

    def test_default_grid(self):
        cfg = MiningConfig(max_epsilon=0.5, epsilon_step=0.05)
        schedule = epsilon_schedule(cfg)
        assert len(schedule) == 10
        assert schedule[0] == 0.0
        assert schedule[-1] == pytest.approx(0.45, abs=1e-12)
        assert all(schedule[i] < schedule[i + 1] for i in range(9))

    def test_float_noise_does_not_close_the_bound(self):
        # 3 * 0.15 is 0.44999999999999996 in binary; it must not sneak below 0.45
        cfg = MiningConfig(max_epsilon=0.45, epsilon_step=0.15)
        assert epsilon_schedule(cfg) == [0.0, 0.15, 0.3]

    def test_zero_max_epsilon_gives_no_passes(self):
        assert epsilon_schedule(MiningConfig(max_epsilon=0.0)) == []

    def test_values_above_one_collapse_to_a_single_final_pass(self):
        cfg = MiningConfig(max_epsilon=1.3, epsilon_step=0.3)
        schedule = epsilon_schedule(cfg)
        assert schedule == pytest.approx([0.0, 0.3, 0.6, 0.9, 1.0], abs=1e-12)
        assert schedule[-1] == 1.0

    def test_config_validation(self):
        with pytest.raises(ValueError):
            MiningConfig(max_epsilon=-0.1)
        with pytest.raises(ValueError):
            MiningConfig(epsilon_step=0.0)
        with pytest.raises(ValueError):
            MiningConfig(min_pts=1)


class TestWorkedExample:
    def test_full_walkthrough(self):
        m = build_walkthrough_matrix()
        result = epsilon_dbscan(m, MiningConfig(max_epsilon=0.55, epsilon_step=0.25))

        assert len(result.patterns) == 2
        layered, pair = result.patterns
        assert flatten(layered) == {"lib1", "lib2", "lib3", "lib7"}
        assert layered.formed_at == 0.5
        inner = [c for c in layered.root.children if not c.is_atomic]
        leaves = [c for c in layered.root.children if c.is_atomic]
        assert len(inner) == 1 and len(leaves) == 1
        assert set(inner[0].member_libraries()) == {"lib1", "lib2", "lib3"}
        assert inner[0].formed_at == 0.0
        assert leaves[0].library == "lib7"

        assert flatten(pair) == {"lib4", "lib5"}
        assert pair.formed_at == 0.0

        assert set(result.noise) == {"lib6", "lib8"}

    def test_trace_records_every_step(self):
        m = build_walkthrough_matrix()
        result = epsilon_dbscan(m, MiningConfig(max_epsilon=0.55, epsilon_step=0.25))
        steps = [(t.epsilon, t.points_in, t.clusters_formed, t.noise_points)
                 for t in result.trace]
        assert steps == [(0.0, 8, 2, 3), (0.25, 5, 0, 5), (0.5, 5, 1, 3)]

    def test_layer_paths(self):
        m = build_walkthrough_matrix()
        result = epsilon_dbscan(m, MiningConfig(max_epsilon=0.55, epsilon_step=0.25))
        paths = dict(layer_paths(result.patterns[0]))
        assert paths["lib7"] == (0.5,)
        assert paths["lib1"] == (0.5, 0.0)
        assert paths["lib2"] == (0.5, 0.0)
        pair_paths = dict(layer_paths(result.patterns[1]))
        assert pair_paths == {"lib4": (0.0,), "lib5": (0.0,)}


def test_identical_libraries_single_layer_zero_pattern():
    m = DependencyMatrix.from_client_map(
        {f"c{i}": ["a", "b", "c", "d"] for i in range(5)})
    result = epsilon_dbscan(m, MiningConfig(max_epsilon=0.5, epsilon_step=0.1))
    assert len(result.patterns) == 1
    assert flatten(result.patterns[0]) == {"a", "b", "c", "d"}
    assert result.patterns[0].formed_at == 0.0
    assert result.noise == ()
    assert all(path == (0.0,) for _, path in layer_paths(result.patterns[0]))


def test_three_layer_nesting_matches_hand_construction():
    # a=b always co-used; c joins their aggregate at distance 0.25; d at 0.5
    sets = [set(range(8)), set(range(8)), set(range(6)), set(range(4))]
    m = matrix_from_client_sets(sets, 8)
    result = epsilon_dbscan(m, MiningConfig(max_epsilon=0.55, epsilon_step=0.25))
    assert len(result.patterns) == 1
    paths = dict(layer_paths(result.patterns[0]))
    assert paths == {
        "lib0": (0.5, 0.25, 0.0),
        "lib1": (0.5, 0.25, 0.0),
        "lib2": (0.5, 0.25),
        "lib3": (0.5,),
    }
    assert flatten(result.patterns[0]) == {"lib0", "lib1", "lib2", "lib3"}


def test_random_instances_match_replayed_union_find_oracle():
    rng = random.Random(404)
    for trial in range(40):
        n = 15
        sets = random_client_sets(rng, n, rng.randint(3, 9))
        m = matrix_from_client_sets(sets, 9)
        cfg = MiningConfig(max_epsilon=0.5, epsilon_step=0.1)
        result = epsilon_dbscan(m, cfg)
        got_patterns = {frozenset(int(lib[3:]) for lib in flatten(p))
                        for p in result.patterns}
        got_noise = frozenset(int(lib[3:]) for lib in result.noise)
        want_patterns, want_noise = replayed_layer_partition(
            sets, epsilon_schedule(cfg))
        assert got_patterns == want_patterns, f"trial {trial}"
        assert got_noise == want_noise, f"trial {trial}"


class TestInvariants:
    def _random_result(self, seed):
        rng = random.Random(seed)
        sets = random_client_sets(rng, rng.randint(4, 20), rng.randint(3, 10))
        m = matrix_from_client_sets(sets, 10)
        cfg = MiningConfig(max_epsilon=rng.choice([0.3, 0.5, 0.8]), epsilon_step=0.1)
        return m, epsilon_dbscan(m, cfg)

    def test_patterns_and_noise_partition_the_libraries(self):
        for seed in range(25):
            m, result = self._random_result(seed)
            member_sets = [flatten(p) for p in result.patterns]
            for i in range(len(member_sets)):
                for j in range(i + 1, len(member_sets)):
                    assert not member_sets[i] & member_sets[j]
            covered = frozenset().union(*member_sets) if member_sets else frozenset()
            assert covered | set(result.noise) == set(m.libraries)
            assert not covered & set(result.noise)

    def test_layer_epsilons_non_increasing_toward_leaves(self):
        for seed in range(25):
            _, result = self._random_result(seed)
            for pattern in result.patterns:
                for _, path in layer_paths(pattern):
                    assert all(path[i] >= path[i + 1] for i in range(len(path) - 1))

    def test_layer_zero_purity(self):
        for seed in range(25):
            m, result = self._random_result(seed)
            for pattern in result.patterns:
                for node in _composites(pattern.root):
                    if node.formed_at == 0.0:
                        rows = {tuple(m.row(lib)) for lib in node.member_libraries()}
                        assert len(rows) == 1
                        assert puc(node.member_libraries(), m) == 1.0

    def test_determinism_including_trace(self):
        m = build_walkthrough_matrix()
        cfg = MiningConfig(max_epsilon=0.55, epsilon_step=0.25)
        first = epsilon_dbscan(m, cfg)
        second = epsilon_dbscan(m, cfg)
        assert first == second

    def test_every_library_chain_collapses_above_one(self):
        m = build_walkthrough_matrix()
        result = epsilon_dbscan(m, MiningConfig(max_epsilon=1.05, epsilon_step=0.05))
        assert len(result.patterns) == 1
        assert flatten(result.patterns[0]) == set(m.libraries)
        assert result.noise == ()


def _composites(point):
    if point.is_atomic:
        return
    yield point
    for child in point.children:
        yield from _composites(child)


def test_empty_library_matrix():
    m = DependencyMatrix(("c1",), (), np.zeros((0, 1), dtype=bool))
    result = epsilon_dbscan(m, MiningConfig())
    assert result.patterns == () and result.noise == ()
