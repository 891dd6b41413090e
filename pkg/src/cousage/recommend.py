"""Pattern-based library recommendation and ranking evaluation.

Candidates come from the mined patterns that overlap what a client already
uses; each candidate is scored by its best usage similarity to the reference
libraries and ranked. The evaluation drops half of each validation client's
libraries and checks whether the dropped ones resurface near the top.

Two modes exist because the replicated protocol leaks: scoring candidates
against the held-out ground truth ("faithful") reproduces the published
setup but is not deployable. The default "holdout-safe" mode selects
patterns by and scores against the retained libraries only.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Sequence, Set

from .corpus import DependencyMatrix, LibraryId
from .evaluation import FoldPlan, training_matrix
from .layering import MiningResult
from .simindex import UsageVector, usim

MODES = ("holdout-safe", "faithful")
DEFAULT_KS = (1, 3, 5, 7, 10)


def rec_score(candidate: LibraryId, reference: Set[LibraryId],
              m: DependencyMatrix) -> float:
    """Best usage similarity between the candidate and any reference library."""
    if not reference:
        raise ValueError("empty reference set")
    cand = UsageVector(m.row(candidate))
    return max(usim(cand, UsageVector(m.row(lib))) for lib in reference)


@dataclass(frozen=True)
class Recommendation:
    """Ranked candidates (score non-increasing, ties by library id)."""

    ranked: tuple[tuple[LibraryId, float], ...]
    seed_libs: frozenset[LibraryId]

    def libraries(self) -> list[LibraryId]:
        return [lib for lib, _ in self.ranked]


def recommend(seed: Set[LibraryId], mining: MiningResult, m: DependencyMatrix,
              k: int = 10, mode: str = "holdout-safe",
              ground_truth: Set[LibraryId] | None = None) -> Recommendation:
    """Top-k libraries from patterns overlapping the client's libraries.

    holdout-safe: patterns are selected by, and candidates scored against,
    the seed (retained) libraries. faithful: selection and scoring use the
    ground-truth set verbatim, replicating the published evaluation; it
    requires ``ground_truth`` and exists for replication only. In both modes
    the seed libraries themselves are never recommended.

    Reference libraries unknown to the matrix are ignored; an empty
    candidate pool yields an empty (valid) recommendation.
    """
    if not seed:
        raise ValueError("empty seed set")
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    if mode == "faithful":
        if not ground_truth:
            raise ValueError("faithful mode requires a ground-truth set")
        reference = set(ground_truth)
    else:
        reference = set(seed)

    pool: set[LibraryId] = set()
    for pattern in mining.patterns:
        members = pattern.member_libraries
        if members & reference:
            pool.update(members)
    pool -= set(seed)
    pool &= set(m.libraries)

    scorable = [lib for lib in reference if lib in m.libraries]
    scored: list[tuple[LibraryId, float]] = []
    for lib in sorted(pool):
        score = rec_score(lib, set(scorable), m) if scorable else 0.0
        scored.append((lib, score))
    scored.sort(key=lambda item: (-item[1], item[0]))
    return Recommendation(ranked=tuple(scored[:k]), seed_libs=frozenset(seed))


@dataclass(frozen=True)
class RankingEval:
    """recall@k table and mean reciprocal rank over evaluated systems."""

    recall_at_k: dict[int, float]
    mrr: float
    system_count: int
    skipped: int


def eval_ranking(m: DependencyMatrix, fold_minings: Sequence[MiningResult],
                 folds: FoldPlan, ks: Sequence[int] = DEFAULT_KS, seed: int = 0,
                 mode: str = "holdout-safe") -> RankingEval:
    """Drop-half recommendation evaluation across cross-validation folds.

    For every validation client with >= 2 libraries, a seeded split retains
    ceil(n/2) libraries and drops the rest as ground truth. A system counts
    as a hit at k when at least one dropped library appears in the top-k
    list. The reciprocal rank of a system with no relevant recommendation at
    any rank contributes 0. Clients with fewer than 2 libraries are skipped
    and counted.

    Candidates are scored against the fold's training matrix: validation
    co-usage stays invisible to the recommender.
    """
    if len(fold_minings) != folds.k:
        raise ValueError(f"expected {folds.k} mining results, got {len(fold_minings)}")
    ks = sorted(set(ks))
    if not ks or ks[0] < 1:
        raise ValueError("ks must be positive")
    max_k = ks[-1]
    rng = random.Random(seed)

    hits = {k: 0 for k in ks}
    reciprocal_ranks: list[float] = []
    evaluated = 0
    skipped = 0
    for fold in range(folds.k):
        mining = fold_minings[fold]
        tm = training_matrix(m, folds, fold)
        for client in folds.fold_clients(fold, m.clients):
            libs = list(m.libraries_of(client))
            if len(libs) < 2:
                skipped += 1
                continue
            retained_count = math.ceil(len(libs) / 2)
            retained = set(rng.sample(libs, retained_count))
            dropped = [lib for lib in libs if lib not in retained]
            if mode == "faithful":
                rec = recommend(retained, mining, tm, k=max_k, mode="faithful",
                                ground_truth=set(dropped))
            else:
                rec = recommend(retained, mining, tm, k=max_k, mode="holdout-safe")
            ranked = rec.libraries()
            first_hit = next((i + 1 for i, lib in enumerate(ranked) if lib in set(dropped)),
                             None)
            evaluated += 1
            if first_hit is not None:
                reciprocal_ranks.append(1.0 / first_hit)
                for k in ks:
                    if first_hit <= k:
                        hits[k] += 1
            else:
                reciprocal_ranks.append(0.0)

    if evaluated == 0:
        raise ValueError("no evaluable clients (all have < 2 libraries)")
    recall = {k: hits[k] / evaluated for k in ks}
    mrr = sum(reciprocal_ranks) / evaluated
    return RankingEval(recall_at_k=recall, mrr=mrr,
                       system_count=evaluated, skipped=skipped)
