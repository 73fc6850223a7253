"""Exhaustive and branch-and-bound exact solvers at desk scale.

These double as the referees that certify every polynomial algorithm and
reduction in the package, so they favour transparent search over cleverness:
subset search by increasing cardinality for reversals and orientations, and
an exact lazily-constrained multicover for the monotone augmentation
problems (deorienting, doubling).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import connectivity as conn
from .core import Arc, GraphError, MixedGraph, PartialOrientation, SizeCapError
from .cover import Constraint, solve_lazy_cover
from .result import SolveResult

SUBSET_SEARCH_MAX_ELEMENTS = 22
ORIENTATION_SCAN_MAX_EDGES = 10
ASSIGNMENT_MAX_VARIABLES = 20
VIOLATION_BATCH = 12


# ---------------------------------------------------------------------------
# targets


@dataclass(frozen=True)
class Strong:
    """Mixed graph must be k-strong."""

    k: int

    def __post_init__(self) -> None:
        if self.k < 1:
            raise GraphError("k must be positive")


@dataclass(frozen=True)
class ArcStrong:
    """Mixed graph must be k-arc-strong."""

    k: int

    def __post_init__(self) -> None:
        if self.k < 1:
            raise GraphError("k must be positive")


@dataclass(frozen=True)
class Requirement:
    """Pairwise local arc-connectivity demands r(x, y); zero entries are free."""

    pairs: Mapping[tuple[int, int], int] = field(default_factory=dict)

    def get(self, x: int, y: int) -> int:
        return self.pairs.get((x, y), 0)

    def support(self) -> list[tuple[int, int, int]]:
        out = []
        for (x, y), r in sorted(self.pairs.items()):
            if r > 0 and x != y:
                out.append((x, y, r))
        return out

    @staticmethod
    def uniform(n: int, r: int) -> "Requirement":
        return Requirement({(x, y): r for x in range(n) for y in range(n) if x != y})


Target = Strong | ArcStrong | Requirement


def meets_target(m: MixedGraph, target: Target) -> bool:
    if isinstance(target, Strong):
        return conn.is_k_strong(m, target.k)
    if isinstance(target, ArcStrong):
        return conn.is_k_arc_strong(m, target.k)
    for x, y, r in target.support():
        if conn.local_arc_connectivity(m, x, y) < r:
            return False
    return True


# ---------------------------------------------------------------------------
# minimum arc reversals


def min_reversals(d: MixedGraph, target: Target, budget: int | None = None) -> SolveResult:
    """Fewest arcs whose reversal meets the target (2-strong or k-arc-strong).

    Reversals are not monotone, so this is a cardinality-level subset
    search.  With a budget only levels up to it are explored (the optimum,
    when found, is still exact); an exhausted budget reports infeasible.
    The effort cap bounds the number of candidate subsets either way.
    """
    if not d.is_digraph:
        raise GraphError("min_reversals expects a digraph")
    if isinstance(target, Requirement):
        raise GraphError("reversal search supports strong / arc-strong targets only")
    if isinstance(target, Strong) and target.k != 2:
        raise GraphError("vertex-connectivity reversal target is fixed at k=2")
    top = d.m_arcs if budget is None else min(budget, d.m_arcs)
    effort = sum(math.comb(d.m_arcs, r) for r in range(top + 1))
    if effort > 1 << SUBSET_SEARCH_MAX_ELEMENTS:
        raise SizeCapError(
            f"reversal subset search would visit {effort} subsets; "
            f"cap is 2^{SUBSET_SEARCH_MAX_ELEMENTS}"
        )
    ug = d.underlying_graph()
    if isinstance(target, Strong):
        if not conn.check_kstrong_orientation_condition(ug, 2):
            return SolveResult.infeasible(
                "underlying graph admits no 2-strong orientation"
            )
    else:
        if not conn.is_k_edge_connected(ug, 2 * target.k):
            return SolveResult.infeasible(
                f"underlying graph is not {2 * target.k}-edge-connected"
            )
    nodes = 0
    for r in range(top + 1):
        for combo in itertools.combinations(range(d.m_arcs), r):
            nodes += 1
            if meets_target(d.reverse_arcs(combo), target):
                return SolveResult.ok(r, tuple(combo), nodes=nodes)
    detail = "no reversal set works" if budget is None else (
        f"no reversal set of size at most {budget} works"
    )
    return SolveResult.infeasible(detail, nodes=nodes)


# ---------------------------------------------------------------------------
# minimum deorientations (lazy multicover)


def _strong_violations(
    d: MixedGraph,
    chosen_arcs: set[int],
    k: int,
    universe_pos: dict[int, int],
    limit: int,
) -> list[Constraint]:
    """Constraints from (S, Z) pairs the current deorientation leaves stranded."""
    m = d.deorient_arcs(sorted(chosen_arcs))
    out_m = conn.out_masks(m)
    in_m = conn.in_masks(m)
    full = (1 << d.n) - 1
    found: list[Constraint] = []
    for size in range(k):
        for combo in itertools.combinations(range(d.n), size):
            smask = 0
            for v in combo:
                smask |= 1 << v
            allowed = full & ~smask
            start = (allowed & -allowed).bit_length() - 1
            fwd = conn.reach_mask(out_m, start, allowed)
            zs = []
            if fwd != allowed:
                zs.append(fwd)
            bwd = conn.reach_mask(in_m, start, allowed)
            if bwd != allowed:
                zs.append(allowed & ~bwd)
            for zmask in zs:
                elements = sorted(
                    universe_pos[i]
                    for i, a in enumerate(d.arcs)
                    if i in universe_pos
                    and (zmask >> a.head) & 1
                    and (allowed >> a.tail) & 1
                    and not (zmask >> a.tail) & 1
                )
                found.append(Constraint(tuple(elements), 1))
                if len(found) >= limit:
                    return found
    return found


def _arc_strong_violations(
    d: MixedGraph,
    chosen_arcs: set[int],
    k: int,
    limit: int,
) -> list[Constraint]:
    m = d.deorient_arcs(sorted(chosen_arcs))
    found: list[Constraint] = []
    seen_masks: set[int] = set()
    for v in range(1, d.n):
        for (x, y) in ((0, v), (v, 0)):
            val, side = conn.local_arc_connectivity_with_cut(m, x, y)
            if val >= k or side in seen_masks:
                continue
            seen_masks.add(side)
            outs = sum(
                1 for a in d.arcs if (side >> a.tail) & 1 and not (side >> a.head) & 1
            )
            elements = tuple(
                i
                for i, a in enumerate(d.arcs)
                if (side >> a.head) & 1 and not (side >> a.tail) & 1
            )
            if k - outs >= 1:
                found.append(Constraint(elements, k - outs))
            if len(found) >= limit:
                return found
    return found


def _requirement_violations(
    d: MixedGraph,
    chosen_arcs: set[int],
    req: Requirement,
    limit: int,
) -> list[Constraint]:
    m = d.deorient_arcs(sorted(chosen_arcs))
    found: list[Constraint] = []
    for x, y, r in req.support():
        val, side = conn.local_arc_connectivity_with_cut(m, x, y)
        if val >= r:
            continue
        outs = sum(1 for a in d.arcs if (side >> a.tail) & 1 and not (side >> a.head) & 1)
        elements = tuple(
            i for i, a in enumerate(d.arcs) if (side >> a.head) & 1 and not (side >> a.tail) & 1
        )
        if r - outs >= 1:
            found.append(Constraint(elements, r - outs))
        if len(found) >= limit:
            return found
    return found


def min_deorientations(d: MixedGraph, target: Target) -> SolveResult:
    """Fewest arcs whose deorientation meets the target.

    Deorienting is monotone for every supported target, so the optimum is an
    exact minimum multicover of deficient cuts, solved with lazily extracted
    constraints; this stays exact far beyond raw subset-search sizes.
    """
    if not d.is_digraph:
        raise GraphError("min_deorientations expects a digraph")
    everything = d.deorient_arcs(range(d.m_arcs))
    if isinstance(target, Strong) and d.n <= target.k:
        return SolveResult.infeasible("too few vertices for the strength target")
    if not meets_target(everything, target):
        return SolveResult.infeasible("even deorienting every arc fails the target")

    if isinstance(target, Strong):
        universe = d.digon_free_arc_indices()
        pos = {arc: i for i, arc in enumerate(universe)}

        def verifier(chosen: tuple[int, ...]) -> list[Constraint]:
            arcs = {universe[i] for i in chosen}
            return _strong_violations(d, arcs, target.k, pos, VIOLATION_BATCH)

        res = solve_lazy_cover(len(universe), verifier)
        if not res.feasible:
            return res
        witness = tuple(universe[i] for i in res.witness)
        return SolveResult.ok(res.optimum, witness, nodes=res.nodes_explored)

    if isinstance(target, ArcStrong):
        def verifier(chosen: tuple[int, ...]) -> list[Constraint]:
            return _arc_strong_violations(d, set(chosen), target.k, VIOLATION_BATCH)
    else:
        def verifier(chosen: tuple[int, ...]) -> list[Constraint]:
            return _requirement_violations(d, set(chosen), target, VIOLATION_BATCH)

    return solve_lazy_cover(d.m_arcs, verifier)


# ---------------------------------------------------------------------------
# minimum doubling


def min_doubling(
    g: MixedGraph,
    c: int,
    weights: Sequence[Fraction | int] | None = None,
    require_vertex_condition: bool = False,
) -> SolveResult:
    """Min-weight edge set whose doubling makes the graph c-edge-connected.

    With require_vertex_condition the doubled graph must additionally stay
    2-edge-connected after deleting any single vertex (the input domain of
    the 2-strong orientation theorem).
    """
    if not g.is_graph:
        raise GraphError("min_doubling expects an all-undirected graph")
    if c < 1:
        raise GraphError("target connectivity must be positive")
    if weights is not None and len(weights) != g.m_edges:
        raise GraphError("one weight per edge required")
    if weights is not None and any(Fraction(w) < 0 for w in weights):
        raise GraphError("weights must be nonnegative")
    if not conn.is_k_edge_connected(g, (c + 1) // 2):
        return SolveResult.infeasible(
            f"doubling cannot repair a cut below {(c + 1) // 2} edges"
        )
    if require_vertex_condition:
        for v in range(g.n):
            sub, _ = g.delete_vertices([v])
            if not conn.is_connected(sub):
                return SolveResult.infeasible(
                    "a vertex deletion disconnects the graph; doubling cannot help"
                )

    def verifier(chosen: tuple[int, ...]) -> list[Constraint]:
        gg = g.double_edges(chosen)
        found: list[Constraint] = []
        seen: set[frozenset[int]] = set()
        # global c-edge-connectivity
        for v in range(1, g.n):
            for (x, y) in ((0, v), (v, 0)):
                val, side = conn.local_arc_connectivity_with_cut(gg, x, y)
                if val >= c:
                    continue
                key = frozenset(w for w in range(g.n) if (side >> w) & 1)
                if key in seen:
                    continue
                seen.add(key)
                elements = tuple(
                    i
                    for i, e in enumerate(g.edges)
                    if ((side >> e.u) & 1) != ((side >> e.v) & 1)
                )
                base = len(elements)
                if c - base >= 1:
                    found.append(Constraint(elements, c - base))
                if len(found) >= VIOLATION_BATCH:
                    return found
        if require_vertex_condition:
            for v in range(g.n):
                sub, remap = gg.delete_vertices([v])
                inv = {nv: ov for ov, nv in remap.items()}
                for w in range(1, sub.n):
                    for (x, y) in ((0, w), (w, 0)):
                        val, side = conn.local_arc_connectivity_with_cut(sub, x, y)
                        if val >= 2:
                            continue
                        orig_side = {inv[z] for z in range(sub.n) if (side >> z) & 1}
                        key = frozenset(orig_side) | {-(v + 1)}
                        if key in seen:
                            continue
                        seen.add(key)
                        elements = tuple(
                            i
                            for i, e in enumerate(g.edges)
                            if not e.touches(v) and (e.u in orig_side) != (e.v in orig_side)
                        )
                        base = len(elements)
                        if 2 - base >= 1:
                            found.append(Constraint(elements, 2 - base))
                        if len(found) >= VIOLATION_BATCH:
                            return found
        return found

    return solve_lazy_cover(g.m_edges, verifier, weights=weights)


# ---------------------------------------------------------------------------
# maximum partial orientation (vectorized exhaustive scan)


def _orientation_tables(
    g: MixedGraph, target: Target
) -> tuple[np.ndarray, np.ndarray]:
    """Per-constraint lookup tables for the 3-state-per-edge scan.

    Returns (table, need) where table[c, e, s] is edge e's contribution to
    constraint c in state s (0 keep, 1 orient u->v as stored, 2 reverse).
    """
    rows: list[list[list[int]]] = []
    needs: list[int] = []

    def add_cut_row(allowed: int, zmask: int, need: int) -> None:
        # contribution towards "elements leaving zmask within allowed"
        fwd_row = []
        for e in g.edges:
            if not ((allowed >> e.u) & 1 and (allowed >> e.v) & 1):
                fwd_row.append([0, 0, 0])
                continue
            u_in = (zmask >> e.u) & 1
            v_in = (zmask >> e.v) & 1
            if u_in == v_in:
                fwd_row.append([0, 0, 0])
            elif u_in:
                fwd_row.append([1, 1, 0])
            else:
                fwd_row.append([1, 0, 1])
        rows.append(fwd_row)
        needs.append(need)

    full = (1 << g.n) - 1
    if isinstance(target, ArcStrong):
        for rest in range(1 << (g.n - 1)):
            zmask = (rest << 1) | 1
            if zmask == full:
                continue
            add_cut_row(full, zmask, target.k)
            add_cut_row(full, full & ~zmask, target.k)
    elif isinstance(target, Strong):
        for size in range(target.k):
            for combo in itertools.combinations(range(g.n), size):
                smask = 0
                for v in combo:
                    smask |= 1 << v
                allowed = full & ~smask
                sub = [v for v in range(g.n) if (allowed >> v) & 1]
                if len(sub) < 2:
                    continue
                for rest in range(1 << (len(sub) - 1)):
                    zmask = 1 << sub[0]
                    for j in range(1, len(sub)):
                        if (rest >> (j - 1)) & 1:
                            zmask |= 1 << sub[j]
                    zc = allowed & ~zmask
                    if zc == 0:
                        continue
                    add_cut_row(allowed, zmask, 1)
                    add_cut_row(allowed, zc, 1)
    else:
        raise GraphError("partial orientation supports strong / arc-strong targets")
    table = np.array(rows, dtype=np.int16)
    return table, np.array(needs, dtype=np.int16)


def max_partial_orientation(g: MixedGraph, target: Target) -> SolveResult:
    """Max number of orientable edges keeping the mixed graph on target.

    Scans all 3^m keep/forward/reverse assignments with vectorized cut
    counters; exact and deterministic, capped at 10 edges.
    """
    if not g.is_graph:
        raise GraphError("max_partial_orientation expects an all-undirected graph")
    if not isinstance(target, (Strong, ArcStrong)):
        raise GraphError("partial orientation supports strong / arc-strong targets")
    if g.m_edges > ORIENTATION_SCAN_MAX_EDGES:
        raise SizeCapError(
            f"orientation scan capped at {ORIENTATION_SCAN_MAX_EDGES} edges, got {g.m_edges}"
        )
    if isinstance(target, Strong) and g.n <= target.k:
        return SolveResult.infeasible("too few vertices for the strength target")
    if not meets_target(g, target):
        return SolveResult.infeasible("the unoriented graph already misses the target")

    m = g.m_edges
    total = 3**m
    table, needs = _orientation_tables(g, target)
    digits = np.empty((m, total), dtype=np.int8)
    idx = np.arange(total)
    for e in range(m):
        digits[e] = (idx // (3**e)) % 3
    feasible = np.ones(total, dtype=bool)
    for cidx in range(table.shape[0]):
        cnt = np.zeros(total, dtype=np.int16)
        for e in range(m):
            col = table[cidx, e]
            if col.any():
                cnt += col[digits[e]]
        feasible &= cnt >= needs[cidx]
    oriented = np.zeros(total, dtype=np.int16)
    for e in range(m):
        oriented += digits[e] != 0
    if not feasible.any():
        return SolveResult.infeasible("no partial orientation meets the target", nodes=total)
    scores = np.where(feasible, oriented, -1)
    best = int(scores.max())
    first = int(np.argmax(scores == best))
    decisions: list[tuple[int, int] | None] = []
    for e in range(m):
        s = int(digits[e, first])
        edge = g.edges[e]
        if s == 0:
            decisions.append(None)
        elif s == 1:
            decisions.append((edge.u, edge.v))
        else:
            decisions.append((edge.v, edge.u))
    po = PartialOrientation(g, tuple(decisions))
    return SolveResult.ok(best, po, nodes=total)


# ---------------------------------------------------------------------------
# vertex cover / max 2-sat / local-connectivity orientation


def vertex_cover(g: MixedGraph) -> SolveResult:
    """Exact minimum vertex cover by branch and bound.

    Branching on an uncovered edge (u, v): either u joins the cover, or u
    stays out and every uncovered neighbor of u must join.  A greedy
    matching supplies the lower bound; ties go to the lexicographically
    least cover.
    """
    if not g.is_graph:
        raise GraphError("vertex_cover expects an all-undirected graph")
    pairs = sorted(set(e.pair() for e in g.edges))
    best: list[tuple[int, tuple[int, ...]] | None] = [None]
    nodes = [0]

    def dfs(chosen: frozenset[int]) -> None:
        nodes[0] += 1
        remaining = [p for p in pairs if p[0] not in chosen and p[1] not in chosen]
        if not remaining:
            cand = (len(chosen), tuple(sorted(chosen)))
            if best[0] is None or cand < best[0]:
                best[0] = cand
            return
        used: set[int] = set()
        lb = 0
        for (u, v) in remaining:
            if u not in used and v not in used:
                used.add(u)
                used.add(v)
                lb += 1
        if best[0] is not None and len(chosen) + lb > best[0][0]:
            return
        u, _v = remaining[0]
        dfs(chosen | {u})
        mates = frozenset(x if y == u else y for (x, y) in remaining if u in (x, y))
        dfs(chosen | mates)

    dfs(frozenset())
    assert best[0] is not None
    return SolveResult.ok(best[0][0], best[0][1], nodes=nodes[0])


@dataclass(frozen=True)
class SatInstance:
    """2-SAT clause list over variables 0..num_vars-1.

    Literals are DIMACS style: +v+1 for the variable, -(v+1) for its
    negation.
    """

    num_vars: int
    clauses: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        for cl in self.clauses:
            for lit in cl:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise GraphError(f"literal {lit} out of range")

    def occurrences(self, var: int) -> tuple[int, int]:
        """(positive, negative) occurrence counts for 0-based var."""
        pos = sum(1 for cl in self.clauses for lit in cl if lit == var + 1)
        neg = sum(1 for cl in self.clauses for lit in cl if lit == -(var + 1))
        return pos, neg

    def is_three_bounded(self) -> bool:
        return all(
            sum(self.occurrences(v)) == 3 and all(c >= 1 for c in self.occurrences(v))
            for v in range(self.num_vars)
        )

    def is_special_three_bounded(self) -> bool:
        return all(self.occurrences(v) == (2, 1) for v in range(self.num_vars))

    def satisfied_count(self, assignment: Sequence[bool]) -> int:
        def lit_true(lit: int) -> bool:
            val = assignment[abs(lit) - 1]
            return val if lit > 0 else not val

        return sum(1 for cl in self.clauses if lit_true(cl[0]) or lit_true(cl[1]))


def max2sat(sat: SatInstance) -> SolveResult:
    """Exact MAX-2-SAT by assignment enumeration."""
    if sat.num_vars > ASSIGNMENT_MAX_VARIABLES:
        raise SizeCapError(
            f"assignment enumeration capped at {ASSIGNMENT_MAX_VARIABLES} variables"
        )
    best = -1
    witness: tuple[bool, ...] = ()
    for mask in range(1 << sat.num_vars):
        assignment = tuple(bool((mask >> v) & 1) for v in range(sat.num_vars))
        got = sat.satisfied_count(assignment)
        if got > best:
            best = got
            witness = assignment
    return SolveResult.ok(best, witness, nodes=1 << sat.num_vars)


def best_orientation_for_requirement(g: MixedGraph, req: Requirement) -> SolveResult:
    """Find an orientation meeting all local connectivity demands, if any.

    Decision problem: optimum is 0 when feasible and the witness is the
    per-edge (tail, head) tuple.  Pairs are checked in decreasing demand
    order so hopeless orientations die on their hardest pair first.
    """
    if not g.is_graph:
        raise GraphError("orientation search expects an all-undirected graph")
    if g.m_edges > 16:
        raise SizeCapError("orientation enumeration capped at 16 edges")
    pairs = sorted(req.support(), key=lambda t: -t[2])
    nodes = 0
    for mask in range(1 << g.m_edges):
        decisions = [
            (e.u, e.v) if not (mask >> i) & 1 else (e.v, e.u)
            for i, e in enumerate(g.edges)
        ]
        oriented = MixedGraph.digraph(g.n, decisions)
        nodes += 1
        ok = True
        for x, y, r in pairs:
            if conn.local_arc_connectivity(oriented, x, y) < r:
                ok = False
                break
        if ok:
            return SolveResult.ok(0, tuple(decisions), nodes=nodes)
    return SolveResult.infeasible("no orientation meets the requirements", nodes=nodes)


# ---------------------------------------------------------------------------
# brute-force referee for independent 2-strong orientation of mixed graphs


def i2vcomg(m: MixedGraph, independent: Iterable[int]) -> SolveResult:
    """Is there a 2-arc-strong orientation strong after deleting each t in T?

    T must be independent in the underlying graph.  Brute force over all
    edge orientations; the witness is the per-edge (tail, head) tuple.
    """
    t_set = sorted(set(independent))
    und = m.underlying_graph()
    for i, x in enumerate(t_set):
        for y in t_set[i + 1 :]:
            if conn._adjacent(und, x, y):
                raise GraphError("T must be independent in the underlying graph")
    if m.m_edges > 16:
        raise SizeCapError("orientation enumeration capped at 16 edges")
    nodes = 0
    for mask in range(1 << m.m_edges):
        decisions = tuple(
            (e.u, e.v) if not (mask >> i) & 1 else (e.v, e.u)
            for i, e in enumerate(m.edges)
        )
        d = MixedGraph(m.n, (), m.arcs + tuple(Arc(t, h) for t, h in decisions))
        nodes += 1
        if not conn.is_k_arc_strong(d, 2):
            continue
        ok = True
        for t in t_set:
            sub, _ = d.delete_vertices([t])
            if not conn.is_strong(sub):
                ok = False
                break
        if ok:
            return SolveResult.ok(0, decisions, nodes=nodes)
    return SolveResult.infeasible("no orientation works", nodes=nodes)
