"""Matroid oracles and weighted matroid intersection, desk scale.

Used to compute minimum-weight unions of k arc-disjoint branchings: the
intersection of the k-fold union of the cycle matroid of the underlying
graph with the head-partition matroid (capacity k per non-root head, zero
at the root).  Oracles are deliberately simple; the Nash-Williams forest
condition is checked by direct subset scan, which is plenty below a dozen
vertices and keeps the code honest.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Protocol, Sequence


class Matroid(Protocol):
    def independent(self, subset: frozenset[int]) -> bool: ...


@dataclass(frozen=True)
class ForestUnionMatroid:
    """k-fold union of the cycle matroid of a multigraph.

    Elements are abstract ids with unordered endpoint pairs; a set is
    independent iff it splits into k forests, i.e. iff every vertex subset
    W spans at most k(|W| - 1) chosen elements (Nash-Williams).
    """

    n: int
    endpoints: tuple[tuple[int, int], ...]
    k: int

    def independent(self, subset: frozenset[int]) -> bool:
        if len(subset) > self.k * max(self.n - 1, 0):
            return False
        support = 0
        masks = []
        for e in subset:
            u, v = self.endpoints[e]
            m = (1 << u) | (1 << v)
            masks.append(m)
            support |= m
        verts = [v for v in range(self.n) if (support >> v) & 1]
        if len(subset) > self.k * max(len(verts) - 1, 0):
            return False
        for size in range(2, len(verts) + 1):
            for combo in itertools.combinations(verts, size):
                w = 0
                for v in combo:
                    w |= 1 << v
                inside = sum(1 for m in masks if m & ~w == 0)
                if inside > self.k * (size - 1):
                    return False
        return True


@dataclass(frozen=True)
class PartitionMatroid:
    """Capacity per class; element e belongs to class_of[e]."""

    class_of: tuple[int, ...]
    capacity: tuple[int, ...]

    def independent(self, subset: frozenset[int]) -> bool:
        counts: dict[int, int] = {}
        for e in subset:
            c = self.class_of[e]
            counts[c] = counts.get(c, 0) + 1
            if counts[c] > self.capacity[c]:
                return False
        return True


def min_weight_common_independent(
    m: int,
    m1: Matroid,
    m2: Matroid,
    weights: Sequence[Fraction],
    target_size: int,
) -> list[frozenset[int]]:
    """Minimum-weight common independent set of each size 0..target_size.

    Successive shortest augmenting paths in the exchange digraph, path
    length measured over visited elements (+w outside the set, -w inside),
    ties broken by fewest arcs.  Returns the extreme sets it reached; the
    caller checks whether target_size was attainable.
    """
    sets: list[frozenset[int]] = [frozenset()]
    current: frozenset[int] = frozenset()
    while len(current) < target_size:
        inside = sorted(current)
        outside = [e for e in range(m) if e not in current]
        add1 = {x: m1.independent(current | {x}) for x in outside}
        add2 = {x: m2.independent(current | {x}) for x in outside}
        sources = [x for x in outside if add1[x]]
        sinks = {x for x in outside if add2[x]}
        arcs: list[tuple[int, int]] = []
        for x in outside:
            if add1[x]:
                arcs.extend((y, x) for y in inside)
            else:
                for y in inside:
                    if m1.independent(current - {y} | {x}):
                        arcs.append((y, x))
            if add2[x]:
                arcs.extend((x, y) for y in inside)
            else:
                for y in inside:
                    if m2.independent(current - {y} | {x}):
                        arcs.append((x, y))
        best: dict[int, tuple[Fraction, int]] = {}

        def length(e: int) -> Fraction:
            return weights[e] if e not in current else -weights[e]

        for x in sources:
            best[x] = (length(x), 0)
        preds: dict[int, list[int]] = {}
        for (u, v) in arcs:
            preds.setdefault(v, []).append(u)
        for _ in range(m + 1):
            changed = False
            for (u, v) in arcs:
                if u not in best:
                    continue
                cand = (best[u][0] + length(v), best[u][1] + 1)
                if v not in best or cand < best[v]:
                    best[v] = cand
                    changed = True
            if not changed:
                break
        end = None
        end_key = None
        for x in sorted(sinks):
            if x in best:
                key = (best[x][0], best[x][1], x)
                if end_key is None or key < end_key:
                    end, end_key = x, key
        if end is None:
            break
        # walk back along converged labels; hop counts strictly decrease,
        # so the walk is finite and vertex-disjoint
        path = [end]
        while True:
            v = path[-1]
            if v in sources and best[v] == (length(v), 0):
                break
            step = None
            for u in sorted(preds.get(v, [])):
                if u in best and best[u] == (best[v][0] - length(v), best[v][1] - 1):
                    step = u
                    break
            if step is None:
                raise RuntimeError("augmenting path reconstruction failed")
            path.append(step)
        current = current.symmetric_difference(path)
        sets.append(current)
    return sets
