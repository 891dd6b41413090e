"""Usage vectors, Jaccard usage similarity, and epsilon-neighborhood queries.

Two libraries are similar when they share client systems: similarity is the
Jaccard coefficient of their client sets, and distance is its complement.
Both atomic libraries and aggregated clusters are represented as points
carrying a usage vector; a cluster's vector is the bitwise OR of its members.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .corpus import LibraryId


class UsageVector:
    """Immutable binary vector over client positions, with cached popcount."""

    __slots__ = ("bits", "cardinality")

    def __init__(self, bits: np.ndarray | Sequence[bool]):
        arr = np.array(bits, dtype=bool)
        if arr.ndim != 1:
            raise ValueError("usage vector must be one-dimensional")
        arr.setflags(write=False)
        self.bits: np.ndarray = arr
        self.cardinality: int = int(np.count_nonzero(arr))

    @classmethod
    def from_indices(cls, indices: Iterable[int], length: int) -> "UsageVector":
        arr = np.zeros(length, dtype=bool)
        arr[list(indices)] = True
        return cls(arr)

    def __len__(self) -> int:
        return len(self.bits)

    def client_indices(self) -> tuple[int, ...]:
        return tuple(int(i) for i in np.flatnonzero(self.bits))

    def union(self, other: "UsageVector") -> "UsageVector":
        return UsageVector(self.bits | other.bits)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UsageVector):
            return NotImplemented
        return bool(np.array_equal(self.bits, other.bits))

    def __hash__(self) -> int:
        return hash((len(self.bits), self.bits.tobytes()))

    def __repr__(self) -> str:
        return f"UsageVector({self.cardinality}/{len(self.bits)} clients)"


def or_all(vectors: Sequence[UsageVector]) -> UsageVector:
    """Bitwise OR of several usage vectors (logical disjunction of clients)."""
    if not vectors:
        raise ValueError("or_all of no vectors")
    out = vectors[0].bits
    for v in vectors[1:]:
        out = out | v.bits
    return UsageVector(out)


@dataclass(frozen=True)
class Point:
    """An atomic library or an OR-aggregated composite cluster.

    Atomic points carry a library id; composites carry >= 2 children and the
    epsilon at which the cluster formed. A composite's vector is always the
    OR of its children's vectors, so its client set is their union.
    """

    vector: UsageVector
    library: LibraryId | None = None
    children: tuple["Point", ...] = ()
    formed_at: float | None = None

    def __post_init__(self):
        if self.library is None:
            if len(self.children) < 2:
                raise ValueError("composite point needs >= 2 children")
            if self.formed_at is None or not 0.0 <= self.formed_at <= 1.0:
                raise ValueError("composite point needs formed_at in [0, 1]")
        elif self.children:
            raise ValueError("atomic point cannot have children")

    @classmethod
    def atomic(cls, library: LibraryId, vector: UsageVector) -> "Point":
        return cls(vector=vector, library=library)

    @classmethod
    def composite(cls, children: Sequence["Point"], formed_at: float) -> "Point":
        vector = or_all([c.vector for c in children])
        return cls(vector=vector, children=tuple(children), formed_at=formed_at)

    @property
    def is_atomic(self) -> bool:
        return self.library is not None

    def member_libraries(self) -> tuple[LibraryId, ...]:
        """All atomic library ids under this point, in leaf order."""
        if self.library is not None:
            return (self.library,)
        out: list[LibraryId] = []
        for child in self.children:
            out.extend(child.member_libraries())
        return tuple(out)


def usim(a: UsageVector, b: UsageVector) -> float:
    """Jaccard similarity of two libraries' client sets.

    Degenerate case: two empty vectors have similarity 0 (a library with no
    clients cannot co-occur with anything).
    """
    if len(a) != len(b):
        raise ValueError(f"vector length mismatch: {len(a)} vs {len(b)}")
    union = int(np.count_nonzero(a.bits | b.bits))
    if union == 0:
        return 0.0
    inter = int(np.count_nonzero(a.bits & b.bits))
    return inter / union


def dist(a: UsageVector, b: UsageVector) -> float:
    """Usage distance: 1 - usim. A metric on non-empty client sets."""
    return 1.0 - usim(a, b)


def pairwise_distances(points: Sequence[Point]) -> np.ndarray:
    """Dense distance matrix over points, identical to pairwise dist() calls.

    Pairs of empty vectors get distance 1.0 (usim 0 by convention).
    """
    n = len(points)
    if n == 0:
        return np.zeros((0, 0))
    bits = np.stack([p.vector.bits for p in points]).astype(np.int64)
    inter = bits @ bits.T
    cards = bits.sum(axis=1)
    union = cards[:, None] + cards[None, :] - inter
    with np.errstate(invalid="ignore", divide="ignore"):
        sim = np.where(union > 0, inter / np.maximum(union, 1), 0.0)
    return 1.0 - sim


def neighbors(points: Sequence[Point], i: int, epsilon: float,
              distances: np.ndarray | None = None) -> set[int]:
    """Indices of all points within the closed epsilon-ball around point i.

    The point itself is excluded. With epsilon 0 only exactly-identical
    vectors qualify, which is what groups always-co-used libraries.
    """
    if not 0.0 <= epsilon <= 1.0:
        raise ValueError(f"epsilon must be in [0, 1], got {epsilon}")
    if distances is None:
        distances = pairwise_distances(points)
    row = distances[i]
    return {int(j) for j in np.flatnonzero(row <= epsilon) if int(j) != i}
