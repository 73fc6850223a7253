"""Exact weighted set multicover with lazily generated constraints.

Augmentation problems over monotone targets (doubling edges, deorienting
arcs) reduce to: pick a minimum-weight element subset that supplies every
deficient cut with enough crossing elements.  Constraints are discovered on
demand by a verifier callback, so the engine stays exact on instances whose
full cut family would be astronomically large.

Optimal covers are ordered by (total weight, cardinality, lexicographic
element tuple); the reported witness is the least one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .result import SolveResult


@dataclass(frozen=True)
class Constraint:
    """At least `need` of `elements` must be chosen."""

    elements: tuple[int, ...]
    need: int

    def __post_init__(self) -> None:
        if self.need < 1:
            raise ValueError("constraint with nonpositive need")
        if len(set(self.elements)) != len(self.elements):
            raise ValueError("constraint with repeated elements")


class _Search:
    """Branch and bound over one fixed constraint family."""

    def __init__(self, m: int, constraints: Sequence[Constraint], weights: Sequence[Fraction]):
        self.m = m
        self.weights = weights
        self.elements = [c.elements for c in constraints]
        self.need = [c.need for c in constraints]
        self.by_element: list[list[int]] = [[] for _ in range(m)]
        for ci, c in enumerate(constraints):
            for e in c.elements:
                self.by_element[e].append(ci)
        self.nodes = 0

    # state: chosen set, per-constraint chosen count, per-constraint available list
    def solve(self) -> tuple[Fraction, int, tuple[int, ...]] | None:
        nc = len(self.need)
        have = [0] * nc
        banned = [False] * self.m
        chosen: list[int] = []
        best: list[tuple[Fraction, int, tuple[int, ...]] | None] = [None]

        def avail_of(ci: int) -> list[int]:
            return [e for e in self.elements[ci] if not banned[e] and e not in chosen_set]

        chosen_set: set[int] = set()

        def bound() -> tuple[Fraction, int] | None:
            # disjoint unsatisfied constraints give an additive weight/count bound
            used = [False] * self.m
            wlb = Fraction(0)
            clb = 0
            for ci in range(nc):
                left = self.need[ci] - have[ci]
                if left <= 0:
                    continue
                avail = avail_of(ci)
                if len(avail) < left:
                    return None
                if any(used[e] for e in avail):
                    continue
                for e in avail:
                    used[e] = True
                ws = sorted(self.weights[e] for e in avail)
                wlb += sum(ws[:left], Fraction(0))
                clb += left
            return wlb, clb

        def dfs(weight: Fraction) -> None:
            self.nodes += 1
            bnd = bound()
            if bnd is None:
                return
            wlb, clb = bnd
            if best[0] is not None:
                if (weight + wlb, len(chosen) + clb) > (best[0][0], best[0][1]):
                    return
            pick = -1
            pick_slack = None
            for ci in range(nc):
                left = self.need[ci] - have[ci]
                if left <= 0:
                    continue
                slack = len(avail_of(ci)) - left
                if pick_slack is None or slack < pick_slack:
                    pick, pick_slack = ci, slack
                    if slack == 0:
                        break
            if pick < 0:
                cand = (weight, len(chosen), tuple(sorted(chosen)))
                if best[0] is None or cand < best[0]:
                    best[0] = cand
                return
            options = avail_of(pick)
            banned_here: list[int] = []
            for e in options:
                chosen.append(e)
                chosen_set.add(e)
                for ci in self.by_element[e]:
                    have[ci] += 1
                dfs(weight + self.weights[e])
                for ci in self.by_element[e]:
                    have[ci] -= 1
                chosen_set.remove(e)
                chosen.pop()
                banned[e] = True
                banned_here.append(e)
            for e in banned_here:
                banned[e] = False

        dfs(Fraction(0))
        return best[0]


def solve_lazy_cover(
    m: int,
    verifier: Callable[[tuple[int, ...]], list[Constraint]],
    weights: Sequence[Fraction | int] | None = None,
    initial: Iterable[Constraint] = (),
) -> SolveResult:
    """Exact minimum cover against a lazily revealed constraint family.

    verifier(chosen) returns constraints violated by `chosen` (empty list
    means chosen is genuinely feasible).  Every returned constraint must
    hold for all feasible sets, which makes the loop sound; each round adds
    at least one new constraint, which makes it finite.
    """
    w = [Fraction(x) for x in weights] if weights is not None else [Fraction(1)] * m
    family: list[Constraint] = []
    seen: set[tuple[tuple[int, ...], int]] = set()
    nodes = 0

    def absorb(violated: Iterable[Constraint]) -> bool:
        fresh = False
        for c in violated:
            key = (c.elements, c.need)
            if key not in seen:
                seen.add(key)
                family.append(c)
                fresh = True
        return fresh

    absorb(initial)
    while True:
        search = _Search(m, family, w)
        solved = search.solve()
        nodes += search.nodes
        if solved is None:
            return SolveResult.infeasible(
                "a deficiency cannot be repaired by any element choice", nodes=nodes
            )
        weight, _size, witness = solved
        violated = verifier(witness)
        if not violated:
            opt: int | Fraction = int(weight) if weight.denominator == 1 else weight
            return SolveResult.ok(opt, witness, nodes=nodes)
        if not absorb(violated):
            raise RuntimeError("verifier flagged a cover yet produced no new constraint")
