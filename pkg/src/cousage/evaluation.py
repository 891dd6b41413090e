"""Cross-validation of pattern generalizability and sensitivity sweeps.

The k-fold protocol mines patterns from the training clients only, then asks
whether each pattern keeps its usage cohesion among the held-out validation
clients. Patterns none of whose libraries appear in the validation context
are not judged at all (they are ineligible, not inconsistent).
"""
from __future__ import annotations

import logging
import random
import statistics
import time
from dataclasses import dataclass
from typing import Sequence, Set

from .corpus import ClientId, DependencyMatrix, LibraryId
from .layering import MiningConfig, MiningResult, Pattern, epsilon_dbscan, flatten
from .metrics import PatternMetrics, consistency, is_informative, puc

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class FoldPlan:
    """Seeded client -> fold assignment; fold sizes differ by at most one."""

    k: int
    assignment: dict[ClientId, int]
    seed: int

    def fold_clients(self, fold: int, clients: Sequence[ClientId]) -> list[ClientId]:
        return [c for c in clients if self.assignment[c] == fold]

    def training_clients(self, fold: int, clients: Sequence[ClientId]) -> list[ClientId]:
        return [c for c in clients if self.assignment[c] != fold]


def make_folds(clients: Sequence[ClientId], k: int, seed: int) -> FoldPlan:
    """Shuffle clients with the seed, then deal them round-robin into k folds."""
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    if len(clients) < k:
        raise ValueError(f"need at least k={k} clients, got {len(clients)}")
    shuffled = list(clients)
    random.Random(seed).shuffle(shuffled)
    assignment = {client: i % k for i, client in enumerate(shuffled)}
    return FoldPlan(k=k, assignment=assignment, seed=seed)


def training_matrix(m: DependencyMatrix, plan: FoldPlan, fold: int) -> DependencyMatrix:
    """Matrix restricted to the fold's training clients.

    Libraries left with zero training clients are dropped for the run; they
    cannot be clustered or scored without any usage signal.
    """
    training = plan.training_clients(fold, m.clients)
    return m.restrict(clients=training, drop_empty_libraries=True)


def eligible_patterns(patterns: Sequence[Pattern], validation_clients: Set[ClientId],
                      m: DependencyMatrix) -> list[Pattern]:
    """Patterns with at least one library actually used by a validation client.

    Returned in input order (stable), without duplicates.
    """
    bad = set(validation_clients) - set(m.clients)
    if bad:
        raise ValueError(f"validation clients not in matrix: {sorted(bad)}")
    out = []
    for pattern in patterns:
        used = any(
            any(c in validation_clients for c in m.clients_of(lib))
            for lib in pattern.member_libraries if lib in m.libraries
        )
        if used:
            out.append(pattern)
    return out


@dataclass(frozen=True)
class CvPatternRow:
    libraries: frozenset[LibraryId]
    metrics: PatternMetrics


@dataclass(frozen=True)
class CvRun:
    fold: int
    pattern_count: int
    eligible_count: int
    rows: tuple[CvPatternRow, ...]
    avg_puc_training: float | None
    max_puc_training: float | None
    std_puc_training: float | None
    avg_puc_validation: float | None
    max_puc_validation: float | None
    std_puc_validation: float | None


@dataclass(frozen=True)
class CvReport:
    """Per-fold pattern cohesion in training and validation contexts.

    Training statistics cover every mined pattern of the run; validation
    statistics cover eligible patterns only.
    """

    k: int
    seed: int
    runs: tuple[CvRun, ...]
    warnings: tuple[str, ...] = ()

    def aggregate_avg_training(self) -> float | None:
        values = [r.avg_puc_training for r in self.runs if r.avg_puc_training is not None]
        return statistics.fmean(values) if values else None

    def aggregate_avg_validation(self) -> float | None:
        values = [r.avg_puc_validation for r in self.runs if r.avg_puc_validation is not None]
        return statistics.fmean(values) if values else None


def _spread(values: Sequence[float]) -> tuple[float | None, float | None, float | None]:
    if not values:
        return None, None, None
    return statistics.fmean(values), max(values), statistics.pstdev(values)


def cross_validate(m: DependencyMatrix, cfg: MiningConfig, k: int = 10,
                   seed: int = 0) -> CvReport:
    """k-fold cross-validation of mined pattern cohesion.

    Each run mines on the training clients, scores every pattern's PUC in
    the training scope, and scores eligible patterns in the validation
    scope. Runs whose training matrix comes out empty are skipped with a
    warning.
    """
    plan = make_folds(m.clients, k, seed)
    runs: list[CvRun] = []
    warnings: list[str] = []
    for fold in range(k):
        validation = set(plan.fold_clients(fold, m.clients))
        training = set(plan.training_clients(fold, m.clients))
        try:
            tm = training_matrix(m, plan, fold)
        except ValueError:
            tm = None
        if tm is None or tm.library_count == 0 or tm.client_count == 0:
            warnings.append(f"fold {fold}: empty training matrix, run skipped")
            log.warning("fold %d: empty training matrix, run skipped", fold)
            continue
        mining = epsilon_dbscan(tm, cfg)
        eligible = set(eligible_patterns(mining.patterns, validation, m))
        rows: list[CvPatternRow] = []
        for pattern in mining.patterns:
            libs = pattern.member_libraries
            puc_t = puc(libs, m, client_scope=training)
            assert puc_t is not None  # members have >= 1 training client by construction
            if pattern in eligible:
                puc_v = puc(libs, m, client_scope=validation)
                assert puc_v is not None  # eligibility guarantees a validation client
                row_metrics = PatternMetrics(
                    puc_training=puc_t,
                    puc_validation=puc_v,
                    consistency=consistency(puc_t, puc_v),
                    informative=is_informative(puc_t),
                    eligible=True,
                )
            else:
                row_metrics = PatternMetrics(
                    puc_training=puc_t, puc_validation=None, consistency=None,
                    informative=is_informative(puc_t), eligible=False,
                )
            rows.append(CvPatternRow(libraries=libs, metrics=row_metrics))
        t_stats = _spread([r.metrics.puc_training for r in rows])
        v_stats = _spread([r.metrics.puc_validation for r in rows
                           if r.metrics.puc_validation is not None])
        runs.append(CvRun(
            fold=fold,
            pattern_count=len(rows),
            eligible_count=len(eligible),
            rows=tuple(rows),
            avg_puc_training=t_stats[0], max_puc_training=t_stats[1],
            std_puc_training=t_stats[2],
            avg_puc_validation=v_stats[0], max_puc_validation=v_stats[1],
            std_puc_validation=v_stats[2],
        ))
    return CvReport(k=k, seed=seed, runs=tuple(runs), warnings=tuple(warnings))


@dataclass(frozen=True)
class SweepRow:
    max_epsilon: float
    library_count: int
    avg_puc: float | None
    pattern_count: int
    avg_pattern_size: float | None
    avg_clients_per_pattern: float | None
    wall_time_s: float


@dataclass(frozen=True)
class SweepReport:
    rows: tuple[SweepRow, ...]


def _mining_row(m: DependencyMatrix, cfg: MiningConfig) -> tuple[SweepRow, MiningResult]:
    start = time.perf_counter()
    mining = epsilon_dbscan(m, cfg)
    elapsed = time.perf_counter() - start
    pucs = []
    sizes = []
    client_counts = []
    for pattern in mining.patterns:
        value = puc(flatten(pattern), m)
        assert value is not None  # mined members always have >= 1 client
        pucs.append(value)
        sizes.append(len(flatten(pattern)))
        client_counts.append(pattern.root.vector.cardinality)
    return SweepRow(
        max_epsilon=cfg.max_epsilon,
        library_count=m.library_count,
        avg_puc=statistics.fmean(pucs) if pucs else None,
        pattern_count=len(mining.patterns),
        avg_pattern_size=statistics.fmean(sizes) if sizes else None,
        avg_clients_per_pattern=statistics.fmean(client_counts) if client_counts else None,
        wall_time_s=elapsed,
    ), mining


def sweep_max_epsilon(m: DependencyMatrix, epsilons: Sequence[float],
                      step: float = 0.05, min_pts: int = 2) -> SweepReport:
    """One mining run per max-epsilon value, with cohesion and size metrics."""
    if list(epsilons) != sorted(epsilons):
        raise ValueError("epsilons must be sorted ascending")
    rows = []
    for eps in epsilons:
        cfg = MiningConfig(max_epsilon=eps, epsilon_step=step, min_pts=min_pts)
        row, _ = _mining_row(m, cfg)
        rows.append(row)
    return SweepReport(rows=tuple(rows))


def sweep_dataset_size(m: DependencyMatrix, sizes: Sequence[int],
                       cfg: MiningConfig, seed: int = 0) -> SweepReport:
    """Mining runs over nested random library subsets of growing size.

    The subsets are prefixes of one seeded shuffle, so run i's libraries are
    contained in run i+1's.
    """
    if list(sizes) != sorted(sizes):
        raise ValueError("sizes must be sorted ascending")
    if not sizes or sizes[0] < 1 or sizes[-1] > m.library_count:
        raise ValueError(f"sizes must be within [1, {m.library_count}]")
    order = list(m.libraries)
    random.Random(seed).shuffle(order)
    rows = []
    for size in sizes:
        sub = m.restrict(libraries=order[:size])
        row, _ = _mining_row(sub, cfg)
        rows.append(row)
    return SweepReport(rows=tuple(rows))
