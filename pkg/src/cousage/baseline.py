"""Association-rule + collaborative-filtering comparison baseline.

Clients are transactions over libraries. Frequent itemsets come from a
level-wise Apriori pass, get filtered down to closed itemsets (no proper
superset with equal support), and rules are enumerated from the closed sets.
Each rule's flat itemset doubles as a pattern for cohesion comparison
against the layered miner. A k-nearest-neighbor vote over client profiles
provides the collaborative-filtering signal.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Mapping, Sequence, Set

from .corpus import DependencyMatrix, LibraryId

Itemset = frozenset


@dataclass(frozen=True)
class BaselineConfig:
    minsup: float = 0.002
    minconf: float = 0.8
    neighbors: int = 25

    def __post_init__(self):
        if not 0.0 < self.minsup <= 1.0:
            raise ValueError(f"minsup must be in (0, 1], got {self.minsup}")
        if not 0.0 < self.minconf <= 1.0:
            raise ValueError(f"minconf must be in (0, 1], got {self.minconf}")
        if self.neighbors < 1:
            raise ValueError(f"neighbors must be >= 1, got {self.neighbors}")


@dataclass(frozen=True)
class AssociationRule:
    antecedent: frozenset[LibraryId]
    consequent: frozenset[LibraryId]
    support: float
    confidence: float

    def __post_init__(self):
        if not self.antecedent or not self.consequent:
            raise ValueError("rule sides must be non-empty")
        if self.antecedent & self.consequent:
            raise ValueError("rule sides must be disjoint")


def _sort_key(itemset: Itemset) -> tuple:
    return (len(itemset), tuple(sorted(itemset)))


def _transactions(m: DependencyMatrix) -> list[frozenset[LibraryId]]:
    return [frozenset(m.libraries_of(c)) for c in m.clients]


def mine_frequent_itemsets(m: DependencyMatrix,
                           minsup: float) -> list[tuple[Itemset, float]]:
    """All itemsets with support >= minsup, by level-wise candidate generation.

    Support is the fraction of clients whose library set contains the
    itemset. Output is sorted by (size, lexicographic members). Raises
    AssertionError if the mined collection ever violates downward closure
    (every subset of a frequent itemset must be frequent).
    """
    if not 0.0 < minsup <= 1.0:
        raise ValueError(f"minsup must be in (0, 1], got {minsup}")
    transactions = _transactions(m)
    n = len(transactions)
    if n == 0:
        return []

    def support_counts(candidates: list[Itemset]) -> dict[Itemset, int]:
        counts = {c: 0 for c in candidates}
        for t in transactions:
            for c in candidates:
                if c <= t:
                    counts[c] += 1
        return counts

    frequent: dict[Itemset, float] = {}
    current = [frozenset([lib]) for lib in sorted(m.libraries)]
    level = 1
    while current:
        counts = support_counts(current)
        kept = {c: counts[c] / n for c in current if counts[c] / n >= minsup}
        for itemset, sup in kept.items():
            if level > 1:
                for subset in combinations(sorted(itemset), level - 1):
                    if frozenset(subset) not in frequent:
                        raise AssertionError(
                            f"downward closure violated: {sorted(itemset)} frequent "
                            f"but subset {list(subset)} is not")
            frequent[itemset] = sup
        level += 1
        current = _join_level(sorted(kept, key=_sort_key), level)
        # prune candidates with an infrequent (level-1)-subset
        current = [c for c in current
                   if all(frozenset(s) in frequent
                          for s in combinations(sorted(c), level - 1))]
    return sorted(frequent.items(), key=lambda kv: _sort_key(kv[0]))


def _join_level(itemsets: Sequence[Itemset], k: int) -> list[Itemset]:
    """Classic Apriori join: merge pairs sharing the first k-2 sorted items."""
    out = []
    seen = set()
    items = [tuple(sorted(s)) for s in itemsets]
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            if items[i][:-1] == items[j][:-1]:
                merged = frozenset(items[i]) | frozenset(items[j])
                if len(merged) == k and merged not in seen:
                    seen.add(merged)
                    out.append(merged)
    return sorted(out, key=_sort_key)


def closed_itemsets(frequent: Sequence[tuple[Itemset, float]]) -> list[tuple[Itemset, float]]:
    """Frequent itemsets with no proper superset of equal support.

    Assumes the input is complete down to its minsup, so every frequent
    superset that could close an itemset is present.
    """
    supports = dict(frequent)
    out = []
    for itemset, sup in frequent:
        closed = not any(itemset < other and supports[other] == sup
                         for other in supports)
        if closed:
            out.append((itemset, sup))
    return sorted(out, key=lambda kv: _sort_key(kv[0]))


def _subset_support(itemset: Itemset, closed: Mapping[Itemset, float]) -> float:
    """Support of an arbitrary frequent itemset, from closed sets only.

    An itemset's support equals the largest support among its closed
    supersets (the support of its closure).
    """
    best = None
    for other, sup in closed.items():
        if itemset <= other and (best is None or sup > best):
            best = sup
    if best is None:
        raise ValueError(f"itemset {sorted(itemset)} has no closed superset")
    return best


def generate_rules(closed: Sequence[tuple[Itemset, float]],
                   minconf: float) -> list[AssociationRule]:
    """Rules X -> Y over closed itemsets with confidence >= minconf.

    For each closed itemset Z and each nonempty proper subset X of Z, the
    rule X -> Z \\ X has confidence support(Z) / support(X); subset supports
    are recovered from the closed collection.
    """
    if not 0.0 < minconf <= 1.0:
        raise ValueError(f"minconf must be in (0, 1], got {minconf}")
    closed_map = dict(closed)
    rules: dict[tuple, AssociationRule] = {}
    for itemset, sup in closed:
        if len(itemset) < 2:
            continue
        members = sorted(itemset)
        for size in range(1, len(members)):
            for antecedent_items in combinations(members, size):
                antecedent = frozenset(antecedent_items)
                confidence = sup / _subset_support(antecedent, closed_map)
                if confidence >= minconf:
                    consequent = itemset - antecedent
                    key = (tuple(sorted(antecedent)), tuple(sorted(consequent)))
                    rules[key] = AssociationRule(
                        antecedent=antecedent, consequent=consequent,
                        support=sup, confidence=confidence)
    return [rules[key] for key in sorted(rules)]


def knn_cf_scores(target: Set[LibraryId], m: DependencyMatrix,
                  neighbors: int = 25) -> dict[LibraryId, float]:
    """Similarity-weighted vote of the most similar client profiles.

    Client-to-target similarity is the Jaccard coefficient of library sets;
    zero-similarity clients carry no signal and are never selected. Each
    neighbor votes its own libraries with its similarity as weight, and
    votes are normalized by the selected neighbors' total similarity.
    Libraries already in the target are not scored.
    """
    if not target:
        raise ValueError("empty target library set")
    if neighbors < 1:
        raise ValueError(f"neighbors must be >= 1, got {neighbors}")
    target = set(target)
    sims: list[tuple[float, int, frozenset[LibraryId]]] = []
    for idx, client in enumerate(m.clients):
        libs = frozenset(m.libraries_of(client))
        union = len(target | libs)
        sim = len(target & libs) / union if union else 0.0
        if sim > 0.0:
            sims.append((sim, idx, libs))
    sims.sort(key=lambda item: (-item[0], item[1]))
    selected = sims[:neighbors]
    total = sum(sim for sim, _, _ in selected)
    if total == 0.0:
        return {}
    votes: dict[LibraryId, float] = {}
    for sim, _, libs in selected:
        for lib in libs - target:
            votes[lib] = votes.get(lib, 0.0) + sim
    scored = {lib: votes[lib] / total for lib in votes}
    return dict(sorted(scored.items(), key=lambda kv: (-kv[1], kv[0])))


def baseline_patterns(rules: Sequence[AssociationRule]) -> list[frozenset[LibraryId]]:
    """Flat library sets behind the rules (antecedent | consequent), deduplicated."""
    unique = {rule.antecedent | rule.consequent for rule in rules}
    return sorted(unique, key=_sort_key)


def baseline_recommend(target: Set[LibraryId], rules: Sequence[AssociationRule],
                       m: DependencyMatrix, cfg: BaselineConfig) -> dict[LibraryId, float]:
    """Fused rule/CF candidate scores for a target library profile.

    A candidate's score is the best rule confidence among rules whose
    antecedent is contained in the target and whose consequent contains the
    candidate, or its collaborative-filtering vote, whichever is larger.
    """
    if not target:
        raise ValueError("empty target library set")
    target = set(target)
    scores: dict[LibraryId, float] = {}
    for rule in rules:
        if rule.antecedent <= target:
            for lib in rule.consequent - target:
                if rule.confidence > scores.get(lib, 0.0):
                    scores[lib] = rule.confidence
    for lib, score in knn_cf_scores(target, m, cfg.neighbors).items():
        if score > scores.get(lib, 0.0):
            scores[lib] = score
    return dict(sorted(scores.items(), key=lambda kv: (-kv[1], kv[0])))
