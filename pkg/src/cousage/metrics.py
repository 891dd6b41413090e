"""Cohesion and quality metrics for mined patterns.

Pattern usage cohesion (PUC) measures co-usage uniformity: over every client
that touches a pattern at all, the average fraction of the pattern's
libraries that client actually uses. 1.0 means the libraries are always
adopted as a block; values near 0 mean the grouping is incidental.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Set

import numpy as np

from .corpus import ClientId, DependencyMatrix, LibraryId

INFORMATIVE_THRESHOLD = 0.75


def puc(pattern_libs: Iterable[LibraryId], m: DependencyMatrix,
        client_scope: Set[ClientId] | None = None) -> float | None:
    """Mean fraction of the pattern's libraries used by each of its clients.

    A pattern's clients are the (in-scope) clients using at least one of its
    libraries; by default the scope is every client of the matrix. Returns
    None when no in-scope client touches the pattern: cohesion is undefined
    there, and callers must not fold it into averages as a zero.
    """
    libs = list(pattern_libs)
    if not libs:
        raise ValueError("puc of an empty pattern")
    unknown = [lib for lib in libs if lib not in m.libraries]
    if unknown:
        raise ValueError(f"pattern libraries not in matrix: {unknown}")
    if client_scope is not None:
        bad = set(client_scope) - set(m.clients)
        if bad:
            raise ValueError(f"scope clients not in matrix: {sorted(bad)}")

    rows = np.stack([m.row(lib) for lib in libs])
    in_scope = np.ones(m.client_count, dtype=bool)
    if client_scope is not None:
        in_scope = np.array([c in client_scope for c in m.clients])
    pattern_clients = rows.any(axis=0) & in_scope
    if not pattern_clients.any():
        return None
    used_counts = rows[:, pattern_clients].sum(axis=0)
    ratios = used_counts / len(libs)
    return float(ratios.mean())


def consistency(puc_training: float, puc_validation: float) -> float:
    """How well cohesion carries over to a new client context: 1 - |dT - dV|."""
    for name, value in (("puc_training", puc_training), ("puc_validation", puc_validation)):
        if not 0.0 <= value <= 1.0:
            raise ValueError(f"{name} must be in [0, 1], got {value}")
    return 1.0 - abs(puc_training - puc_validation)


def is_informative(puc_value: float, threshold: float = INFORMATIVE_THRESHOLD) -> bool:
    """Strictly above the threshold; exactly 0.75 does not qualify."""
    if not 0.0 <= puc_value <= 1.0:
        raise ValueError(f"puc must be in [0, 1], got {puc_value}")
    return puc_value > threshold


def precision(eligible: Set, informative: Set) -> float | None:
    """Share of eligible patterns that are informative; None when none eligible."""
    if not eligible:
        return None
    return len(set(eligible) & set(informative)) / len(eligible)


@dataclass(frozen=True)
class PatternMetrics:
    """Per-pattern evaluation record for one train/validation split."""

    puc_training: float
    puc_validation: float | None
    consistency: float | None
    informative: bool
    eligible: bool

    def __post_init__(self):
        if (self.puc_validation is None) != (self.consistency is None):
            raise ValueError("consistency must be present exactly when puc_validation is")
