"""Multi-layer pattern mining: DBSCAN iterated under a rising epsilon.

The miner starts from one atomic point per library at epsilon 0, which
groups libraries that are always used together. After each pass, every
cluster collapses into a single composite point whose usage vector is the
OR of its members, the noise points are carried forward unchanged, and
epsilon grows by one step. Relaxing epsilon this way wraps tight cores in
progressively looser layers, so each pattern records, per layer, how
cohesive its libraries' co-usage is.

Epsilon passes run at 0, step, 2*step, ... strictly below ``max_epsilon``
(values above 1 are capped at a single pass at 1.0, where any two used
libraries are neighbors).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .corpus import DependencyMatrix, LibraryId
from .dbscan import run_dbscan
from .simindex import Point, UsageVector

log = logging.getLogger(__name__)

_EPS_TOLERANCE = 1e-9


@dataclass(frozen=True)
class MiningConfig:
    """Mining parameters. Defaults: moderate relaxation, pairs may cluster."""

    max_epsilon: float = 0.5
    epsilon_step: float = 0.05
    min_pts: int = 2

    def __post_init__(self):
        if self.max_epsilon < 0:
            raise ValueError(f"max_epsilon must be >= 0, got {self.max_epsilon}")
        if self.epsilon_step <= 0:
            raise ValueError(f"epsilon_step must be > 0, got {self.epsilon_step}")
        if self.min_pts < 2:
            raise ValueError(f"min_pts must be >= 2, got {self.min_pts}")


def epsilon_schedule(cfg: MiningConfig) -> list[float]:
    """The epsilon values the mining loop visits, in order.

    Multiples of the step strictly below max_epsilon, compared with a small
    tolerance so binary floating point cannot turn the open upper bound into
    a closed one. Values above 1.0 collapse into one final pass at 1.0.
    """
    values: list[float] = []
    k = 0
    while True:
        eps = k * cfg.epsilon_step
        if eps >= cfg.max_epsilon - _EPS_TOLERANCE:
            break
        eps = min(eps, 1.0)
        if not values or eps != values[-1]:
            values.append(eps)
        if eps == 1.0:
            break
        k += 1
    return values


@dataclass(frozen=True)
class Pattern:
    """A nested tree of co-usage layers over >= 2 libraries.

    The root is a composite point; each composite's ``formed_at`` tags the
    layer's epsilon, non-increasing from root to leaf.
    """

    root: Point

    def __post_init__(self):
        if self.root.is_atomic:
            raise ValueError("a pattern root must be a composite point")

    @property
    def member_libraries(self) -> frozenset[LibraryId]:
        return frozenset(self.root.member_libraries())

    @property
    def formed_at(self) -> float:
        assert self.root.formed_at is not None
        return self.root.formed_at

    def __repr__(self) -> str:
        libs = ",".join(sorted(self.member_libraries))
        return f"Pattern(eps={self.formed_at:g}, libs={{{libs}}})"


def flatten(p: Pattern) -> frozenset[LibraryId]:
    """All member libraries of a pattern, layers discarded."""
    return p.member_libraries


def layer_paths(p: Pattern) -> list[tuple[LibraryId, tuple[float, ...]]]:
    """Per member library, the epsilon chain of its enclosing layers.

    Outermost epsilon first; the chain is non-increasing toward the leaf.
    A library that joined at the outer layer has a single-element chain.
    """
    out: list[tuple[LibraryId, tuple[float, ...]]] = []

    def walk(point: Point, prefix: tuple[float, ...]):
        if point.is_atomic:
            assert point.library is not None
            out.append((point.library, prefix))
            return
        assert point.formed_at is not None
        for child in point.children:
            walk(child, prefix + (point.formed_at,))

    walk(p.root, ())
    return out


@dataclass(frozen=True)
class TraceStep:
    epsilon: float
    points_in: int
    clusters_formed: int
    noise_points: int


@dataclass(frozen=True)
class MiningResult:
    """Patterns plus leftover noise libraries and the per-step trace.

    Pattern member sets are pairwise disjoint and, together with the noise
    set, cover every library of the mined matrix exactly once.
    """

    patterns: tuple[Pattern, ...]
    noise: tuple[LibraryId, ...]
    trace: tuple[TraceStep, ...]
    config: MiningConfig = field(default_factory=MiningConfig)

    @property
    def noise_set(self) -> frozenset[LibraryId]:
        return frozenset(self.noise)


def epsilon_dbscan(m: DependencyMatrix, cfg: MiningConfig | None = None) -> MiningResult:
    """Mine multi-layer co-usage patterns from a dependency matrix.

    Returns every composite that survives the loop as a pattern (each holds
    >= 2 libraries by construction) and every never-clustered library as
    noise, ordered by the matrix's library order.
    """
    cfg = cfg or MiningConfig()
    points: list[Point] = [
        Point.atomic(lib, UsageVector(m.row(lib))) for lib in m.libraries
    ]
    trace: list[TraceStep] = []
    for eps in epsilon_schedule(cfg):
        result = run_dbscan(points, eps, cfg.min_pts)
        step = TraceStep(
            epsilon=eps,
            points_in=len(points),
            clusters_formed=len(result.clusters),
            noise_points=len(result.noise),
        )
        trace.append(step)
        log.info("epsilon=%g points_in=%d clusters=%d noise=%d",
                 step.epsilon, step.points_in, step.clusters_formed, step.noise_points)
        merged = [
            Point.composite([points[i] for i in members], eps)
            for members in result.clusters
        ]
        points = merged + [points[i] for i in result.noise]

    patterns = tuple(Pattern(p) for p in points if not p.is_atomic)
    leftover = {p.library for p in points if p.is_atomic}
    noise = tuple(lib for lib in m.libraries if lib in leftover)
    return MiningResult(patterns=patterns, noise=noise, trace=tuple(trace), config=cfg)
