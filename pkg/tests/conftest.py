"""Shared corpus fixtures: the 8x8 worked example and synthetic plants."""
from __future__ import annotations

import random

import numpy as np
import pytest

from cousage import DependencyMatrix, make_folds

# The 8-client / 8-library matrix behind the staged clustering walkthrough:
# lib1..lib3 share one client set exactly, lib4/lib5 share another, lib7 sits
# at distance exactly 0.5 from the {lib1,lib2,lib3} aggregate, and lib6/lib8
# stay farther than 0.55 from everything at every stage.
WALKTHROUGH_CLIENT_MAP = {
    "c1": ["lib1", "lib2", "lib3", "lib7"],
    "c2": ["lib1", "lib2", "lib3", "lib7"],
    "c3": ["lib1", "lib2", "lib3", "lib8"],
    "c4": ["lib4", "lib5", "lib8"],
    "c5": ["lib4", "lib5", "lib8"],
    "c6": ["lib1", "lib2", "lib3", "lib8"],
    "c7": ["lib6", "lib8"],
    "c8": ["lib8"],
}


def build_walkthrough_matrix() -> DependencyMatrix:
    return DependencyMatrix.from_client_map(WALKTHROUGH_CLIENT_MAP)


@pytest.fixture
def walkthrough_matrix() -> DependencyMatrix:
    return build_walkthrough_matrix()


def build_modular_corpus(groups: int = 10, clients_per_group: int = 20,
                         libs_per_group: int = 6) -> DependencyMatrix:
    """Disjoint client groups, each using exactly its own library block.

    Within a group every client uses every group library, so patterns are
    pure at layer 0 and perfectly consistent across any client split.
    """
    mapping = {}
    for g in range(groups):
        libs = [f"g{g}:lib{j}" for j in range(libs_per_group)]
        for i in range(clients_per_group):
            mapping[f"g{g}c{i}"] = list(libs)
    return DependencyMatrix.from_client_map(mapping)


def build_planted_corpus(groups: int = 10, clients_per_group: int = 20,
                         core_libs: int = 4, satellite_libs: int = 2) -> DependencyMatrix:
    """Planted groups with a tight core plus looser satellites.

    Core libraries are used by all of a group's clients; each satellite by
    exactly the first half. The satellite-to-core distance is exactly 0.5,
    so mining with max_epsilon <= 0.5 keeps cores pure and anything beyond
    absorbs the satellites as an outer layer.
    """
    assert clients_per_group % 2 == 0
    mapping: dict[str, list[str]] = {}
    for g in range(groups):
        cores = [f"g{g}:core{j}" for j in range(core_libs)]
        satellites = [f"g{g}:sat{j}" for j in range(satellite_libs)]
        for i in range(clients_per_group):
            libs = list(cores)
            if i < clients_per_group // 2:
                libs.extend(satellites)
            mapping[f"g{g}c{i}"] = libs
    return DependencyMatrix.from_client_map(mapping)


def build_breakage_corpus(k: int = 10, seed: int = 7, broken_fold: int = 0
                          ) -> tuple[DependencyMatrix, frozenset[str]]:
    """Corpus whose co-usage breaks exactly in one fold's validation clients.

    Clients destined (by the deterministic fold plan for this seed) for
    ``broken_fold`` use only half of the planted pattern, so that fold's run
    sees clean training cohesion but degraded validation cohesion. Returns
    the matrix and the planted pattern's library set.
    """
    libs = [f"grp:lib{j}" for j in range(6)]
    names = [f"c{i:02d}" for i in range(40)]
    plan = make_folds(names, k, seed)
    mapping = {}
    for name in names:
        if plan.assignment[name] == broken_fold:
            mapping[name] = libs[:3]
        else:
            mapping[name] = list(libs)
    return DependencyMatrix.from_client_map(mapping), frozenset(libs)


def random_client_sets(rng: random.Random, n_libs: int, n_clients: int,
                       allow_empty: bool = False) -> list[set[int]]:
    """Random client index sets, non-empty unless told otherwise."""
    out = []
    for _ in range(n_libs):
        size_floor = 0 if allow_empty else 1
        size = rng.randint(size_floor, n_clients)
        out.append(set(rng.sample(range(n_clients), size)))
    return out


def matrix_from_client_sets(client_sets: list[set[int]], n_clients: int
                            ) -> DependencyMatrix:
    """Matrix with libraries lib0..libN and clients c0..cM from index sets."""
    clients = [f"c{i}" for i in range(n_clients)]
    libraries = [f"lib{i}" for i in range(len(client_sets))]
    usage = np.zeros((len(libraries), n_clients), dtype=bool)
    for i, members in enumerate(client_sets):
        usage[i, sorted(members)] = True
    return DependencyMatrix(clients, libraries, usage)
