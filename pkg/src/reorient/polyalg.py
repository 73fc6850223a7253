"""Polynomial-time and approximation algorithms.

Strong partial orientations via ear sequences, 3-edge-connectivity
augmentation through the cactus quotient, degree-driven deorientation by
min-cost flow, the branching-packing 2-approximation for k-arc-strong
deorientation, and the doubling wrapper that delegates the 3-to-4 step to a
pluggable inner solver.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from . import connectivity as conn
from .core import GraphError, MixedGraph, PartialOrientation
from .cover import Constraint, solve_lazy_cover
from .matroidal import ForestUnionMatroid, PartitionMatroid, min_weight_common_independent
from .result import SolveResult


# ---------------------------------------------------------------------------
# strong partial orientations (bridge-count bound)


def _ear_sequence(g: MixedGraph, comp_vertices: list[int], comp_edges: list[int]) -> list[tuple[int, tuple[int, int]]]:
    """Edge ids with forward directions, ear by ear, for one 2EC component.

    Orienting any prefix of this sequence along the stored directions keeps
    the component strong as a mixed graph: every ear is a trail between
    already-reached vertices, so forward arcs never strand anybody.
    """
    if not comp_edges:
        return []
    unused = set(comp_edges)
    reached = {min(comp_vertices)}
    seq: list[tuple[int, tuple[int, int]]] = []
    while unused:
        start_edge = None
        for ei in sorted(unused):
            e = g.edges[ei]
            if e.u in reached or e.v in reached:
                start_edge = ei
                break
        if start_edge is None:
            raise GraphError("component is not connected")
        e = g.edges[start_edge]
        u = e.u if e.u in reached else e.v
        w = e.other(u)
        ear: list[tuple[int, tuple[int, int]]] = [(start_edge, (u, w))]
        if w not in reached:
            # BFS back to the reached set through unused edges
            prev: dict[int, tuple[int, int]] = {}
            queue = [w]
            seen = {w}
            hit = None
            while queue and hit is None:
                x = queue.pop(0)
                for ei in sorted(unused):
                    if ei == start_edge:
                        continue
                    edge = g.edges[ei]
                    if not edge.touches(x):
                        continue
                    y = edge.other(x)
                    if y in seen:
                        continue
                    prev[y] = (ei, x)
                    if y in reached:
                        hit = y
                        break
                    seen.add(y)
                    queue.append(y)
            if hit is None:
                raise GraphError("no return path; component is not 2-edge-connected")
            back: list[tuple[int, tuple[int, int]]] = []
            y = hit
            while y != w:
                ei, x = prev[y]
                back.append((ei, (x, y)))
                y = x
            ear.extend(reversed(back))
        for ei, (a, b) in ear:
            unused.discard(ei)
            reached.add(a)
            reached.add(b)
        seq.extend(ear)
    return seq


def robbins_partial_orientation(g: MixedGraph, k: int) -> SolveResult:
    """Strong partial orientation with exactly k oriented edges, if one exists.

    Feasible iff the graph is connected and k <= |E| - (number of bridges);
    an infeasible result reports that bound in `optimum`.  Oriented edges
    are a prefix of per-component ear sequences, bridges stay undirected.
    """
    if not g.is_graph:
        raise GraphError("partial orientation starts from an all-undirected graph")
    if k < 0:
        raise GraphError("k must be nonnegative")
    if not conn.is_connected(g):
        return SolveResult.infeasible("graph is not connected")
    bound = g.m_edges - len(conn.bridges(g))
    if k > bound:
        return SolveResult.infeasible(
            f"at most {bound} edges are orientable", optimum=bound
        )
    bridge_set = set(conn.bridges(g))
    comps = conn.two_edge_connected_components(g)
    sequence: list[tuple[int, tuple[int, int]]] = []
    for comp in comps:
        cset = set(comp)
        comp_edges = [
            i
            for i, e in enumerate(g.edges)
            if i not in bridge_set and e.u in cset and e.v in cset
        ]
        sequence.extend(_ear_sequence(g, comp, comp_edges))
    decisions: list[tuple[int, int] | None] = [None] * g.m_edges
    for ei, direction in sequence[:k]:
        decisions[ei] = direction
    po = PartialOrientation(g, tuple(decisions))
    return SolveResult.ok(k, po)


# ---------------------------------------------------------------------------
# 3-edge-connectivity augmentation by doubling (quotient + spanning tree)


@dataclass(frozen=True)
class CactusQuotient:
    """Quotient by the 'three edge-disjoint paths' equivalence.

    quotient: one vertex per class, one edge per source edge between
    distinct classes; class_of[v] is v's quotient vertex; edge_origin[i] is
    the source edge id of quotient edge i.
    """

    quotient: MixedGraph
    class_of: tuple[int, ...]
    edge_origin: tuple[int, ...]


def cactus_quotient(g: MixedGraph) -> CactusQuotient:
    """Contract classes of pairwise local edge connectivity >= 3.

    On a 2-edge-connected graph the quotient is a cactus: every pair of
    distinct quotient vertices has local edge connectivity exactly two.
    """
    if not g.is_graph:
        raise GraphError("cactus quotient expects an all-undirected graph")
    parent = list(range(g.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u in range(g.n):
        for v in range(u + 1, g.n):
            if find(u) == find(v):
                continue
            if conn.local_edge_connectivity(g, u, v) >= 3:
                parent[find(v)] = find(u)
    roots = sorted({find(v) for v in range(g.n)})
    index = {r: i for i, r in enumerate(roots)}
    class_of = tuple(index[find(v)] for v in range(g.n))
    qedges = []
    origin = []
    for i, e in enumerate(g.edges):
        cu, cv = class_of[e.u], class_of[e.v]
        if cu != cv:
            qedges.append((cu, cv))
            origin.append(i)
    quotient = MixedGraph.graph(len(roots), qedges)
    return CactusQuotient(quotient, class_of, tuple(origin))


def w23eda(g: MixedGraph, weights: Sequence[Fraction | int] | None = None) -> SolveResult:
    """Min-weight edge set whose doubling yields a 3-edge-connected graph.

    Quotient classes of local connectivity >= 3, then pick a minimum
    spanning tree of the quotient under the lifted weights: doubling a
    cactus 3-connects it exactly when the doubled set spans it.
    """
    if not g.is_graph:
        raise GraphError("w23eda expects an all-undirected graph")
    if weights is not None and len(weights) != g.m_edges:
        raise GraphError("one weight per edge required")
    if not conn.is_k_edge_connected(g, 2):
        return SolveResult.infeasible("input graph is not 2-edge-connected")
    cq = cactus_quotient(g)
    q = cq.quotient
    if q.n <= 1:
        return SolveResult.ok(0, ())
    w = (
        [Fraction(weights[i]) for i in cq.edge_origin]
        if weights is not None
        else [Fraction(1)] * q.m_edges
    )
    order = sorted(range(q.m_edges), key=lambda i: (w[i], cq.edge_origin[i]))
    parent = list(range(q.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    chosen: list[int] = []
    total = Fraction(0)
    for i in order:
        e = q.edges[i]
        ru, rv = find(e.u), find(e.v)
        if ru == rv:
            continue
        parent[ru] = rv
        chosen.append(cq.edge_origin[i])
        total += w[i]
    if len(chosen) != q.n - 1:
        return SolveResult.infeasible("quotient is not connected")
    opt: int | Fraction = int(total) if total.denominator == 1 else total
    return SolveResult.ok(opt, tuple(sorted(chosen)))


# ---------------------------------------------------------------------------
# degree deorientation by min-cost flow


def degree_deorientation(d: MixedGraph, k: int) -> SolveResult:
    """Fewest deorientations giving min(out+und, in+und) >= k at every vertex.

    Network: s -> v_out-copy and v_in-copy -> t with lower bound k; each arc
    contributes a free forward copy and a unit-cost reverse copy.  The
    reverse copies carrying flow are the arcs to deorient.
    """
    if not d.is_digraph:
        raise GraphError("degree deorientation expects a digraph")
    if k < 0:
        raise GraphError("k must be nonnegative")
    if k == 0:
        return SolveResult.ok(0, ())
    n = d.n
    net = conn.FlowNetwork(2 + 2 * n, source=0, sink=1)
    v1 = lambda v: 2 + v
    v2 = lambda v: 2 + n + v
    for v in range(n):
        net.add_arc(0, v1(v), capacity=k * n, lower=k)
        net.add_arc(v2(v), 1, capacity=k * n, lower=k)
    forward_ids = []
    reverse_ids = []
    for a in d.arcs:
        forward_ids.append(net.add_arc(v1(a.tail), v2(a.head), capacity=1, cost=0))
    for a in d.arcs:
        reverse_ids.append(net.add_arc(v1(a.head), v2(a.tail), capacity=1, cost=1))
    res = conn.min_cost_feasible_flow(net)
    if not res.feasible:
        return SolveResult.infeasible("degree demands exceed what deorienting can give")
    chosen = tuple(i for i, fid in enumerate(reverse_ids) if res.flows[fid] > 0)
    assert res.cost == len(chosen)
    return SolveResult.ok(len(chosen), chosen)


# ---------------------------------------------------------------------------
# minimum-weight branching packings


@dataclass(frozen=True)
class BranchingPacking:
    """k arc-disjoint spanning out- or in-branchings rooted at `root`."""

    root: int
    direction: str  # "out" | "in"
    branchings: tuple[tuple[int, ...], ...]

    @property
    def arc_ids(self) -> tuple[int, ...]:
        return tuple(sorted(i for b in self.branchings for i in b))


def _lambda_at_least(d: MixedGraph, arc_ids: Sequence[int], s: int, k: int) -> bool:
    sub = MixedGraph(d.n, (), tuple(d.arcs[i] for i in arc_ids))
    if k == 0:
        return True
    for v in range(d.n):
        if v != s and conn.local_arc_connectivity(sub, s, v) < k:
            return False
    return True


def _extract_branching(
    d: MixedGraph, pool: list[int], s: int, still_needed: int
) -> tuple[tuple[int, ...], list[int]]:
    """Peel one spanning out-branching from pool leaving a (still_needed-1)-packable rest."""
    tree: list[int] = []
    reached = {s}
    while len(reached) < d.n:
        progressed = False
        for aid in sorted(set(pool) - set(tree)):
            a = d.arcs[aid]
            if a.tail not in reached or a.head in reached:
                continue
            rest = [x for x in pool if x != aid and x not in tree]
            if _lambda_at_least(d, rest, s, still_needed - 1):
                tree.append(aid)
                reached.add(a.head)
                progressed = True
                break
        if not progressed:
            raise RuntimeError("branching extraction stalled; packing was not valid")
    rest = [x for x in pool if x not in tree]
    return tuple(sorted(tree)), rest


def min_weight_branching_packing(
    d: MixedGraph,
    k: int,
    root: int,
    weights: Sequence[Fraction | int] | None = None,
    direction: str = "out",
) -> SolveResult:
    """Minimum-total-weight union of k arc-disjoint spanning branchings.

    Unions of k disjoint out-branchings are the common bases of the k-fold
    forest matroid and the head-partition matroid, so weighted matroid
    intersection finds the cheapest one; it is then peeled into individual
    branchings.  In-branchings reduce to out-branchings on the reverse graph.
    If no packing exists the witness is a certificate cut X containing the
    root with fewer than k arcs leaving.
    """
    if not d.is_digraph:
        raise GraphError("branching packings live in digraphs")
    if k < 1:
        raise GraphError("k must be positive")
    if not (0 <= root < d.n):
        raise GraphError("root out of range")
    if direction not in ("out", "in"):
        raise GraphError("direction must be 'out' or 'in'")
    if d.n < 2:
        return SolveResult.ok(0, BranchingPacking(root, direction, ((),) * k))
    if direction == "in":
        rev = d.reverse_arcs(range(d.m_arcs))
        res = min_weight_branching_packing(rev, k, root, weights, "out")
        if not res.feasible:
            return res
        packing: BranchingPacking = res.witness
        return SolveResult.ok(
            res.optimum,
            BranchingPacking(root, "in", packing.branchings),
            nodes=res.nodes_explored,
        )

    w = [Fraction(x) for x in weights] if weights is not None else [Fraction(0)] * d.m_arcs
    if len(w) != d.m_arcs:
        raise GraphError("one weight per arc required")
    if any(x < 0 for x in w):
        raise GraphError("weights must be nonnegative")

    # Edmonds feasibility: k arc-disjoint paths from the root to everybody
    for v in range(d.n):
        if v == root:
            continue
        val, side = conn.local_arc_connectivity_with_cut(d, root, v)
        if val < k:
            cert = frozenset(x for x in range(d.n) if (side >> x) & 1)
            return SolveResult(
                "infeasible",
                witness=cert,
                detail=f"cut with {val} leaving arcs blocks {k} branchings",
            )

    m1 = ForestUnionMatroid(d.n, tuple(a.pair() for a in d.arcs), k)
    caps = [k] * d.n
    caps[root] = 0
    m2 = PartitionMatroid(tuple(a.head for a in d.arcs), tuple(caps))
    target = k * (d.n - 1)
    chain = min_weight_common_independent(d.m_arcs, m1, m2, w, target)
    if len(chain) <= target:
        raise RuntimeError("matroid intersection missed a packing certified feasible")
    chosen = sorted(chain[target])
    total = sum((w[i] for i in chosen), Fraction(0))
    pool = list(chosen)
    branchings = []
    for b in range(k, 0, -1):
        tree, pool = _extract_branching(d, pool, root, b)
        branchings.append(tree)
    opt: int | Fraction = int(total) if total.denominator == 1 else total
    return SolveResult.ok(opt, BranchingPacking(root, "out", tuple(branchings)))


# ---------------------------------------------------------------------------
# 2-approximation for k-arc-strong deorientation


def deor_k_arc_2approx(d: MixedGraph, k: int, root: int = 0) -> SolveResult:
    """Deorientation set F, k-arc-strong after applying, |F| <= 2 * optimum.

    Adds a unit-weight reverse copy of every arc, packs k cheapest
    out-branchings and k cheapest in-branchings at the root, and deorients
    the arcs whose reverse copies got used.
    """
    if not d.is_digraph:
        raise GraphError("deorientation approximation expects a digraph")
    if k < 1:
        raise GraphError("k must be positive")
    if d.n < 2:
        return SolveResult.ok(0, ())
    if not conn.is_k_edge_connected(d.underlying_graph(), k):
        return SolveResult.infeasible(
            f"underlying graph is not {k}-edge-connected; even deorienting all arcs fails"
        )
    m = d.m_arcs
    doubled = d
    for a in d.arcs:
        doubled = doubled.add_arc(a.head, a.tail)
    weights = [Fraction(0)] * m + [Fraction(1)] * m
    used: set[int] = set()
    for direction in ("out", "in"):
        res = min_weight_branching_packing(doubled, k, root, weights, direction)
        if not res.feasible:
            raise RuntimeError("packing must exist once the underlying graph is k-edge-connected")
        used.update(res.witness.arc_ids)
    chosen = tuple(sorted(i - m for i in used if i >= m))
    return SolveResult.ok(len(chosen), chosen)


# ---------------------------------------------------------------------------
# doubling to 4-edge-connectivity, approximation wrapper


def edges_in_two_cuts(g: MixedGraph) -> list[int]:
    """Edge ids lying in some 2-edge-cut of a 2-edge-connected graph."""
    out = []
    for i in range(g.m_edges):
        rest = MixedGraph(
            g.n, tuple(e for j, e in enumerate(g.edges) if j != i), ()
        )
        if conn.bridges(rest):
            out.append(i)
    return out


def exact_r34eca(gprime: MixedGraph, candidates: Sequence[int], source: MixedGraph) -> list[int]:
    """Exact inner solver: cheapest candidate subset whose doubling 4-connects.

    `candidates` are source edge ids; gprime already has the forced copies.
    Serves as the default plug where the published 1.393-approximation
    would otherwise sit.
    """
    cand = list(candidates)
    # gprime keeps the source edges as a prefix, so source ids index it too

    def verifier(chosen: tuple[int, ...]) -> list[Constraint]:
        gg = gprime.double_edges([cand[i] for i in chosen])
        found: list[Constraint] = []
        seen: set[int] = set()
        for v in range(1, gg.n):
            for (x, y) in ((0, v), (v, 0)):
                val, side = conn.local_arc_connectivity_with_cut(gg, x, y)
                if val >= 4 or side in seen:
                    continue
                seen.add(side)
                elements = tuple(
                    i
                    for i, src in enumerate(cand)
                    if ((side >> source.edges[src].u) & 1)
                    != ((side >> source.edges[src].v) & 1)
                )
                base = sum(
                    1
                    for e in gprime.edges
                    if ((side >> e.u) & 1) != ((side >> e.v) & 1)
                )
                if 4 - base >= 1:
                    found.append(Constraint(elements, 4 - base))
                if len(found) >= 8:
                    return found
        return found

    res = solve_lazy_cover(len(cand), verifier)
    if not res.feasible:
        raise GraphError("inner augmentation instance is infeasible")
    return [cand[i] for i in res.witness]


def m4eda_approx(
    g: MixedGraph,
    inner: Callable[[MixedGraph, Sequence[int], MixedGraph], list[int]] | None = None,
) -> SolveResult:
    """Doubling set making g 4-edge-connected; quality tracks the inner solver.

    Forced edges first: every edge inside a 2-edge-cut belongs to any
    solution, doubling them leaves a 3-edge-connected core, and the inner
    solver finishes the job from the remaining candidate copies.
    """
    if not g.is_graph:
        raise GraphError("m4eda expects an all-undirected graph")
    if not conn.is_k_edge_connected(g, 2):
        return SolveResult.infeasible("input graph is not 2-edge-connected")
    f1 = edges_in_two_cuts(g)
    gprime = g.double_edges(f1)
    candidates = [i for i in range(g.m_edges) if i not in set(f1)]
    plug = inner if inner is not None else exact_r34eca
    f2 = plug(gprime, candidates, g)
    chosen = tuple(sorted(set(f1) | set(f2)))
    return SolveResult.ok(len(chosen), chosen)
