"""Greedy disjoint packing of triple supports."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .triples import CollectionStats, _support_of, collection_stats

__all__ = ["PackingResult", "PackingVerification", "greedy_pack", "verify_packing", "TRACE_LIMIT"]

TRACE_LIMIT = 10_000


@dataclass(frozen=True)
class PackingResult:
    selected: list[int]
    guaranteed_lower_bound: Fraction
    stats_used: CollectionStats
    removal_trace: list[tuple[int, list[int]]] | None

    @property
    def size(self) -> int:
        return len(self.selected)

    def to_dict(self) -> dict:
        return {
            "selected": list(self.selected),
            "guaranteed_lower_bound": str(self.guaranteed_lower_bound),
            "stats": self.stats_used.to_dict(),
            "removal_trace": None
            if self.removal_trace is None
            else [[s, list(r)] for s, r in self.removal_trace],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "PackingResult":
        trace = d.get("removal_trace")
        return cls(
            selected=list(d["selected"]),
            guaranteed_lower_bound=Fraction(d["guaranteed_lower_bound"]),
            stats_used=CollectionStats.from_dict(d["stats"]),
            removal_trace=None if trace is None else [(s, list(r)) for s, r in trace],
        )


def _packing_bound(stats: CollectionStats) -> Fraction:
    # |S| / (M b n), with b n = max |S_t|
    return Fraction(stats.count) / (stats.M * stats.b * stats.n)


def greedy_pack(collection: Sequence, n: int, keep_trace: bool | None = None) -> PackingResult:
    """Select a maximal pairwise-disjoint subcollection in input order.

    The first surviving item is selected, its coordinates are marked used,
    and every surviving item meeting it (itself included) is removed.  Items
    are triples or plain coordinate sets.  ``keep_trace`` defaults to True
    below ``TRACE_LIMIT`` items.

    Raises:
        ValueError: empty collection, an empty support, or a coordinate
            outside ``1..n``.
    """
    sups = [_support_of(t) for t in collection]
    if not sups:
        raise ValueError("cannot pack an empty collection")
    if any(not s for s in sups):
        raise ValueError("every support must be nonempty")
    stats = collection_stats(sups, n)
    if keep_trace is None:
        keep_trace = len(sups) < TRACE_LIMIT

    incidence: dict[int, list[int]] = {}
    for idx, s in enumerate(sups):
        for i in s:
            incidence.setdefault(i, []).append(idx)

    alive = [True] * len(sups)
    selected: list[int] = []
    trace: list[tuple[int, list[int]]] = []
    for idx, s in enumerate(sups):
        if not alive[idx]:
            continue
        selected.append(idx)
        removed = []
        for i in sorted(s):
            for other in incidence[i]:
                if alive[other]:
                    alive[other] = False
                    removed.append(other)
        if keep_trace:
            trace.append((idx, sorted(removed)))

    return PackingResult(
        selected=selected,
        guaranteed_lower_bound=_packing_bound(stats),
        stats_used=stats,
        removal_trace=trace if keep_trace else None,
    )


@dataclass(frozen=True)
class PackingVerification:
    ok: bool
    disjoint: bool
    meets_bound: bool
    bound: Fraction | None
    conflict: tuple[int, int, int] | None  # (index, index, shared coordinate)

    def __bool__(self) -> bool:
        return self.ok


def verify_packing(collection: Sequence, selected: Sequence[int], n: int) -> PackingVerification:
    """Independent re-check of disjointness and the size bound.

    Raises:
        IndexError: a selected index is out of range.
    """
    sups = [_support_of(t) for t in collection]
    for idx in selected:
        if not 0 <= idx < len(sups):
            raise IndexError(f"selected index {idx} out of range")
    conflict = None
    owner: dict[int, int] = {}
    for idx in selected:
        for i in sorted(sups[idx]):
            if i in owner:
                conflict = (owner[i], idx, i)
                break
            owner[i] = idx
        if conflict:
            break
    stats = collection_stats(sups, n)
    if stats.empty:
        bound = None
        meets = True
    else:
        bound = _packing_bound(stats)
        meets = len(selected) >= math.ceil(bound)
    disjoint = conflict is None
    return PackingVerification(disjoint and meets, disjoint, meets, bound, conflict)
