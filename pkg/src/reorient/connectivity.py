"""Cut and connectivity oracles for mixed multigraphs.

Everything here is a pure function of an immutable graph.  Directed
questions run on the digon expansion (each edge becomes two opposite unit
arcs); vertex questions run on the standard vertex-splitting network.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .core import GraphError, MixedGraph, SizeCapError

INF = 10**9

CUT_ENUMERATION_MAX_VERTICES = 20


# ---------------------------------------------------------------------------
# bitmask adjacency + reachability


def out_masks(m: MixedGraph) -> list[int]:
    """out_masks[v] = bitmask of w reachable from v in one step (arc v->w or edge vw)."""
    masks = [0] * m.n
    for e in m.edges:
        masks[e.u] |= 1 << e.v
        masks[e.v] |= 1 << e.u
    for a in m.arcs:
        masks[a.tail] |= 1 << a.head
    return masks


def in_masks(m: MixedGraph) -> list[int]:
    masks = [0] * m.n
    for e in m.edges:
        masks[e.u] |= 1 << e.v
        masks[e.v] |= 1 << e.u
    for a in m.arcs:
        masks[a.head] |= 1 << a.tail
    return masks


def reach_mask(masks: Sequence[int], start: int, allowed: int) -> int:
    """Bitmask BFS closure from `start` through vertices in `allowed`."""
    seen = (1 << start) & allowed
    frontier = seen
    while frontier:
        nxt = 0
        f = frontier
        while f:
            v = (f & -f).bit_length() - 1
            f &= f - 1
            nxt |= masks[v]
        frontier = nxt & allowed & ~seen
        seen |= frontier
    return seen


def is_strong_within(out_m: Sequence[int], in_m: Sequence[int], allowed: int) -> bool:
    """Is the sub-mixed-graph induced by the `allowed` vertex mask strong?"""
    if allowed == 0:
        return True
    start = (allowed & -allowed).bit_length() - 1
    if reach_mask(out_m, start, allowed) != allowed:
        return False
    return reach_mask(in_m, start, allowed) == allowed


def is_strong(m: MixedGraph) -> bool:
    """Strong = every vertex reaches every other (edges usable both ways)."""
    if m.n <= 1:
        return True
    full = (1 << m.n) - 1
    return is_strong_within(out_masks(m), in_masks(m), full)


def is_connected(m: MixedGraph) -> bool:
    if m.n <= 1:
        return True
    und = m.underlying_graph()
    full = (1 << m.n) - 1
    return reach_mask(out_masks(und), 0, full) == full


# ---------------------------------------------------------------------------
# flow networks


@dataclass
class FlowArc:
    tail: int
    head: int
    capacity: int
    lower: int = 0
    cost: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        if self.capacity < 0 or self.lower < 0:
            raise GraphError("negative capacity or lower bound")
        if self.cost < 0:
            raise GraphError("negative arc cost")
        # lower > capacity is legal to build and reported as infeasible


@dataclass
class FlowNetwork:
    """Integral-capacity network with optional lower bounds and rational costs."""

    n: int
    source: int
    sink: int
    arcs: list[FlowArc] = field(default_factory=list)

    def __post_init__(self) -> None:
        if self.source == self.sink:
            raise GraphError("source equals sink")

    def add_node(self) -> int:
        self.n += 1
        return self.n - 1

    def add_arc(
        self,
        tail: int,
        head: int,
        capacity: int,
        lower: int = 0,
        cost: Fraction | int = 0,
    ) -> int:
        if not (0 <= tail < self.n and 0 <= head < self.n):
            raise GraphError("flow arc endpoint out of range")
        self.arcs.append(FlowArc(tail, head, capacity, lower, Fraction(cost)))
        return len(self.arcs) - 1


@dataclass(frozen=True)
class FlowResult:
    feasible: bool
    value: int = 0
    cost: Fraction = Fraction(0)
    flows: tuple[int, ...] = ()


class _Dinic:
    def __init__(self, n: int):
        self.n = n
        self.head: list[list[int]] = [[] for _ in range(n)]
        self.to: list[int] = []
        self.cap: list[int] = []

    def add(self, u: int, v: int, c: int) -> int:
        i = len(self.to)
        self.head[u].append(i)
        self.to.append(v)
        self.cap.append(c)
        self.head[v].append(i + 1)
        self.to.append(u)
        self.cap.append(0)
        return i

    def max_flow(self, s: int, t: int) -> int:
        total = 0
        while True:
            level = [-1] * self.n
            level[s] = 0
            queue = [s]
            for u in queue:
                for i in self.head[u]:
                    v = self.to[i]
                    if self.cap[i] > 0 and level[v] < 0:
                        level[v] = level[u] + 1
                        queue.append(v)
            if level[t] < 0:
                return total
            it = [0] * self.n

            def dfs(u: int, limit: int) -> int:
                if u == t:
                    return limit
                while it[u] < len(self.head[u]):
                    i = self.head[u][it[u]]
                    v = self.to[i]
                    if self.cap[i] > 0 and level[v] == level[u] + 1:
                        pushed = dfs(v, min(limit, self.cap[i]))
                        if pushed:
                            self.cap[i] -= pushed
                            self.cap[i ^ 1] += pushed
                            return pushed
                    it[u] += 1
                return 0

            while True:
                pushed = dfs(s, INF)
                if not pushed:
                    break
                total += pushed

    def min_cut_side(self, s: int) -> int:
        """Bitmask of vertices residual-reachable from s (call after max_flow)."""
        seen = 1 << s
        queue = [s]
        for u in queue:
            for i in self.head[u]:
                v = self.to[i]
                if self.cap[i] > 0 and not (seen >> v) & 1:
                    seen |= 1 << v
                    queue.append(v)
        return seen


def max_flow(net: FlowNetwork) -> FlowResult:
    """Maximum integral s-t flow; respects lower bounds when present."""
    if any(a.lower > a.capacity for a in net.arcs):
        return FlowResult(False)
    if all(a.lower == 0 for a in net.arcs):
        d = _Dinic(net.n)
        ids = [d.add(a.tail, a.head, a.capacity) for a in net.arcs]
        value = d.max_flow(net.source, net.sink)
        flows = tuple(net.arcs[k].capacity - d.cap[i] for k, i in enumerate(ids))
        return FlowResult(True, value, Fraction(0), flows)

    # standard excess transformation; circulation via a sink->source arc
    d = _Dinic(net.n + 2)
    ss, tt = net.n, net.n + 1
    excess = [0] * net.n
    ids = []
    for a in net.arcs:
        ids.append(d.add(a.tail, a.head, a.capacity - a.lower))
        excess[a.head] += a.lower
        excess[a.tail] -= a.lower
    back = d.add(net.sink, net.source, INF)
    need = 0
    for v in range(net.n):
        if excess[v] > 0:
            d.add(ss, v, excess[v])
            need += excess[v]
        elif excess[v] < 0:
            d.add(v, tt, -excess[v])
    if d.max_flow(ss, tt) != need:
        return FlowResult(False)
    base = INF - d.cap[back]
    d.cap[back] = 0
    d.cap[back ^ 1] = 0
    value = base + d.max_flow(net.source, net.sink)
    flows = tuple(
        net.arcs[k].lower + (net.arcs[k].capacity - net.arcs[k].lower - d.cap[i])
        for k, i in enumerate(ids)
    )
    return FlowResult(True, value, Fraction(0), flows)


class _MinCostFlow:
    """Successive shortest paths with Johnson potentials; Fraction costs >= 0."""

    def __init__(self, n: int):
        self.n = n
        self.head: list[list[int]] = [[] for _ in range(n)]
        self.to: list[int] = []
        self.cap: list[int] = []
        self.cost: list[Fraction] = []

    def add(self, u: int, v: int, c: int, w: Fraction) -> int:
        i = len(self.to)
        self.head[u].append(i)
        self.to.append(v)
        self.cap.append(c)
        self.cost.append(w)
        self.head[v].append(i + 1)
        self.to.append(u)
        self.cap.append(0)
        self.cost.append(-w)
        return i

    def run(self, s: int, t: int, want: int) -> tuple[int, Fraction]:
        import heapq

        sent = 0
        total = Fraction(0)
        pot = [Fraction(0)] * self.n
        while sent < want:
            dist: list[Fraction | None] = [None] * self.n
            dist[s] = Fraction(0)
            prev_arc = [-1] * self.n
            heap = [(Fraction(0), s)]
            while heap:
                dv, v = heapq.heappop(heap)
                if dist[v] is None or dv > dist[v]:
                    continue
                for i in self.head[v]:
                    if self.cap[i] <= 0:
                        continue
                    w = self.to[i]
                    nd = dv + self.cost[i] + pot[v] - pot[w]
                    if dist[w] is None or nd < dist[w]:
                        dist[w] = nd
                        prev_arc[w] = i
                        heapq.heappush(heap, (nd, w))
            if dist[t] is None:
                return sent, total
            for v in range(self.n):
                if dist[v] is not None:
                    pot[v] += dist[v]
            # bottleneck along the path
            push = want - sent
            v = t
            while v != s:
                i = prev_arc[v]
                push = min(push, self.cap[i])
                v = self.to[i ^ 1]
            v = t
            while v != s:
                i = prev_arc[v]
                self.cap[i] -= push
                self.cap[i ^ 1] += push
                total += self.cost[i] * push
                v = self.to[i ^ 1]
            sent += push
        return sent, total


def min_cost_feasible_flow(net: FlowNetwork) -> FlowResult:
    """Minimum-cost feasible integral flow (value free within the bounds).

    Lower bounds are removed by the excess transformation, a sink->source
    arc closes the circulation, and the supersource/supersink demand is met
    by successive shortest paths.  Infeasible bounds yield feasible=False.
    """
    if any(a.lower > a.capacity for a in net.arcs):
        return FlowResult(False)
    mcf = _MinCostFlow(net.n + 2)
    ss, tt = net.n, net.n + 1
    excess = [0] * net.n
    base_cost = Fraction(0)
    ids = []
    for a in net.arcs:
        ids.append(mcf.add(a.tail, a.head, a.capacity - a.lower, a.cost))
        excess[a.head] += a.lower
        excess[a.tail] -= a.lower
        base_cost += a.cost * a.lower
    mcf.add(net.sink, net.source, INF, Fraction(0))
    need = 0
    for v in range(net.n):
        if excess[v] > 0:
            mcf.add(ss, v, excess[v], Fraction(0))
            need += excess[v]
        elif excess[v] < 0:
            mcf.add(v, tt, -excess[v], Fraction(0))
    sent, cost = mcf.run(ss, tt, need)
    if sent != need:
        return FlowResult(False)
    flows = []
    value = 0
    for k, i in enumerate(ids):
        f = net.arcs[k].lower + (net.arcs[k].capacity - net.arcs[k].lower - mcf.cap[i])
        flows.append(f)
        if net.arcs[k].tail == net.source:
            value += f
        if net.arcs[k].head == net.source:
            value -= f
    return FlowResult(True, value, base_cost + cost, tuple(flows))


# ---------------------------------------------------------------------------
# local connectivities (Menger values)


def _digon_expansion(m: MixedGraph, s: int, t: int) -> _Dinic:
    d = _Dinic(m.n)
    for a in m.arcs:
        d.add(a.tail, a.head, 1)
    for e in m.edges:
        d.add(e.u, e.v, 1)
        d.add(e.v, e.u, 1)
    return d


def local_arc_connectivity(m: MixedGraph, x: int, y: int) -> int:
    """Maximum number of arc/edge-disjoint directed x->y paths."""
    if x == y:
        raise GraphError("local connectivity needs two distinct vertices")
    d = _digon_expansion(m, x, y)
    return d.max_flow(x, y)


def local_arc_connectivity_with_cut(m: MixedGraph, x: int, y: int) -> tuple[int, int]:
    """(lambda(x, y), bitmask of a minimising cut side containing x)."""
    if x == y:
        raise GraphError("local connectivity needs two distinct vertices")
    d = _digon_expansion(m, x, y)
    value = d.max_flow(x, y)
    return value, d.min_cut_side(x)


def local_edge_connectivity(g: MixedGraph, x: int, y: int) -> int:
    if not g.is_graph:
        raise GraphError("edge connectivity query on a graph with arcs")
    return local_arc_connectivity(g, x, y)


def local_vertex_connectivity(m: MixedGraph, x: int, y: int, cap: int | None = None) -> int:
    """Max internally vertex-disjoint x->y paths via vertex splitting.

    Every arc and edge copy carries capacity one, so parallel elements
    contribute with multiplicity (a direct x->y arc is one more path).
    """
    if x == y:
        raise GraphError("vertex connectivity needs two distinct vertices")
    big = m.m_arcs + 2 * m.m_edges + 1
    d = _Dinic(2 * m.n)
    for v in range(m.n):
        d.add(2 * v, 2 * v + 1, 1 if v not in (x, y) else big)
    for a in m.arcs:
        d.add(2 * a.tail + 1, 2 * a.head, 1)
    for e in m.edges:
        d.add(2 * e.u + 1, 2 * e.v, 1)
        d.add(2 * e.v + 1, 2 * e.u, 1)
    value = d.max_flow(2 * x + 1, 2 * y)
    return value if cap is None else min(value, cap)


# ---------------------------------------------------------------------------
# global tests


def is_k_arc_strong(m: MixedGraph, k: int) -> bool:
    """Every nonempty proper X has (arcs leaving X) + (edges crossing X) >= k."""
    if k < 1:
        raise GraphError("k must be positive")
    if m.n <= 1:
        return True
    if not is_strong(m):
        return False
    for v in range(1, m.n):
        if local_arc_connectivity(m, 0, v) < k:
            return False
        if local_arc_connectivity(m, v, 0) < k:
            return False
    return True


def arc_strong_deficient_cut(m: MixedGraph, k: int) -> int | None:
    """Bitmask of some X with d+(X)+d_E(X) < k, or None if k-arc-strong."""
    if m.n <= 1:
        return None
    for v in range(1, m.n):
        val, side = local_arc_connectivity_with_cut(m, 0, v)
        if val < k:
            return side
        val, side = local_arc_connectivity_with_cut(m, v, 0)
        if val < k:
            return side
    return None


def _adjacent(m: MixedGraph, x: int, y: int) -> bool:
    for a in m.arcs:
        if a.tail == x and a.head == y:
            return True
    for e in m.edges:
        if e.touches(x) and e.other(x) == y:
            return True
    return False


def is_k_strong(m: MixedGraph, k: int) -> bool:
    """More than k vertices, and removing any < k vertices leaves it strong.

    Small instances are answered by enumerating deletions with bitmask
    reachability; larger ones by split-network max flows over ordered
    vertex pairs (skipping pairs joined by a direct arc or edge, whose
    pair connectivity is unbounded).
    """
    if k < 1:
        raise GraphError("k must be positive")
    if m.n <= k:
        return False
    import math

    deletions = sum(math.comb(m.n, i) for i in range(k))
    if deletions <= 4096:
        return _is_k_strong_by_deletion(m, k)
    for x in range(m.n):
        for y in range(m.n):
            if x == y or _adjacent(m, x, y):
                continue
            if local_vertex_connectivity(m, x, y, cap=k) < k:
                return False
    return True


def _is_k_strong_by_deletion(m: MixedGraph, k: int) -> bool:
    return k_strong_violation(m, k) is None


def k_strong_violation(m: MixedGraph, k: int) -> tuple[int, int] | None:
    """Find (deleted-set mask, stranded-set mask) violating k-strongness.

    The stranded set Z has no arc and no edge leaving it once the deleted
    vertices are removed; returns None when m is k-strong.  Requires n > k.
    """
    if m.n <= k:
        raise GraphError("k-strong violation search needs more than k vertices")
    out_m = out_masks(m)
    in_m = in_masks(m)
    full = (1 << m.n) - 1
    for size in range(k):
        for combo in itertools.combinations(range(m.n), size):
            smask = 0
            for v in combo:
                smask |= 1 << v
            allowed = full & ~smask
            start = (allowed & -allowed).bit_length() - 1
            fwd = reach_mask(out_m, start, allowed)
            if fwd != allowed:
                return smask, fwd
            bwd = reach_mask(in_m, start, allowed)
            if bwd != allowed:
                return smask, allowed & ~bwd
    return None


def is_k_strong_in(m: MixedGraph, subset: Iterable[int], k: int) -> bool:
    """k internally disjoint paths between every ordered pair inside `subset`.

    Unlike is_k_strong this counts paths, so direct arcs and edges help
    exactly once per parallel element.
    """
    if k < 1:
        raise GraphError("k must be positive")
    verts = sorted(set(subset))
    for x in verts:
        for y in verts:
            if x == y:
                continue
            if local_vertex_connectivity(m, x, y, cap=k) < k:
                return False
    return True


# ---------------------------------------------------------------------------
# undirected basics


def bridges(g: MixedGraph) -> list[int]:
    """Edge indices whose removal disconnects their component."""
    if not g.is_graph:
        raise GraphError("bridges are defined on all-undirected graphs")
    adj: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    for i, e in enumerate(g.edges):
        adj[e.u].append((e.v, i))
        adj[e.v].append((e.u, i))
    disc = [-1] * g.n
    low = [0] * g.n
    out: list[int] = []
    timer = 0
    for root in range(g.n):
        if disc[root] != -1:
            continue
        stack: list[tuple[int, int, int]] = [(root, -1, 0)]
        order = []
        while stack:
            v, pe, idx = stack.pop()
            if idx == 0:
                disc[v] = low[v] = timer
                timer += 1
                order.append((v, pe))
            advanced = False
            while idx < len(adj[v]):
                w, ei = adj[v][idx]
                idx += 1
                if ei == pe:
                    continue
                if disc[w] == -1:
                    stack.append((v, pe, idx))
                    stack.append((w, ei, 0))
                    advanced = True
                    break
                low[v] = min(low[v], disc[w])
            if not advanced and idx >= len(adj[v]):
                pass
        for v, pe in reversed(order):
            if pe != -1:
                e = g.edges[pe]
                parent = e.other(v)
                low[parent] = min(low[parent], low[v])
                if low[v] > disc[parent]:
                    out.append(pe)
    return sorted(out)


def edge_connectivity(g: MixedGraph) -> int | float:
    """Global edge connectivity; +inf on graphs with at most one vertex."""
    if not g.is_graph:
        raise GraphError("edge connectivity is defined on all-undirected graphs")
    if g.n <= 1:
        return float("inf")
    best: int | float = float("inf")
    for v in range(1, g.n):
        best = min(best, local_edge_connectivity(g, 0, v))
        if best == 0:
            return 0
    return best


def is_k_edge_connected(g: MixedGraph, k: int) -> bool:
    if g.n <= 1:
        return True
    return edge_connectivity(g) >= k


def two_edge_connected_components(g: MixedGraph) -> list[list[int]]:
    """Vertex classes of the bridge-free subgraph, in ascending order."""
    br = set(bridges(g))
    masks = [0] * g.n
    for i, e in enumerate(g.edges):
        if i in br:
            continue
        masks[e.u] |= 1 << e.v
        masks[e.v] |= 1 << e.u
    seen = 0
    comps = []
    full = (1 << g.n) - 1
    for v in range(g.n):
        if (seen >> v) & 1:
            continue
        comp = reach_mask(masks, v, full & ~seen) | (1 << v)
        seen |= comp
        comps.append([w for w in range(g.n) if (comp >> w) & 1])
    return comps


# ---------------------------------------------------------------------------
# cut enumeration


@dataclass(frozen=True)
class CutSet:
    """One side X of a vertex bipartition with its crossing elements."""

    side: frozenset[int]
    crossing_edges: tuple[int, ...]
    arcs_out: tuple[int, ...]
    arcs_in: tuple[int, ...]

    @property
    def d(self) -> int:
        return len(self.crossing_edges)

    @property
    def d_plus(self) -> int:
        return len(self.arcs_out)

    @property
    def d_minus(self) -> int:
        return len(self.arcs_in)

    @property
    def d_total(self) -> int:
        return self.d + self.d_plus + self.d_minus


def cut_of(m: MixedGraph, side: Iterable[int]) -> CutSet:
    s = frozenset(side)
    if not s or len(s) >= m.n:
        raise GraphError("cut side must be a nonempty proper subset")
    edges = tuple(
        i for i, e in enumerate(m.edges) if (e.u in s) != (e.v in s)
    )
    outs = tuple(i for i, a in enumerate(m.arcs) if a.tail in s and a.head not in s)
    ins = tuple(i for i, a in enumerate(m.arcs) if a.head in s and a.tail not in s)
    return CutSet(s, edges, outs, ins)


def cut_of_mask(m: MixedGraph, mask: int) -> CutSet:
    return cut_of(m, [v for v in range(m.n) if (mask >> v) & 1])


def enumerate_cuts_up_to(m: MixedGraph, c: int | float) -> list[CutSet]:
    """All bipartitions with at most c crossing elements, one per complement pair.

    The representative side contains vertex 0.  Capped at 20 vertices; the
    intent is gadget verification, not production cut listing.
    """
    if m.n > CUT_ENUMERATION_MAX_VERTICES:
        raise SizeCapError(
            f"cut enumeration capped at {CUT_ENUMERATION_MAX_VERTICES} vertices, got {m.n}"
        )
    if m.n < 2:
        return []
    cuts = []
    for rest in range(1 << (m.n - 1)):
        mask = (rest << 1) | 1
        if mask == (1 << m.n) - 1:
            continue
        cut = cut_of_mask(m, mask)
        if cut.d_total <= c:
            cuts.append(cut)
    return cuts


def small_edge_cut_sides(g: MixedGraph, c: int) -> list[frozenset[int]]:
    """All cut sides X with d(X) <= c in a connected graph, via edge subsets.

    Works for any vertex count by checking which <=c edge subsets disconnect
    the graph, so it stays exact on gadget-sized graphs where subset-of-
    vertices enumeration is hopeless.  One representative per complement
    pair (the side not containing vertex 0).

    Completeness needs every <=c cut side connected, which holds whenever
    the edge connectivity is at least ceil((c+1)/2); that is required.
    """
    if not g.is_graph:
        raise GraphError("edge cut listing is defined on all-undirected graphs")
    if not is_k_edge_connected(g, (c + 2) // 2):
        raise GraphError(
            f"edge cut listing up to {c} needs {(c + 2) // 2}-edge-connectivity"
        )
    masks_all = out_masks(g.underlying_graph())
    full = (1 << g.n) - 1
    sides: set[frozenset[int]] = set()
    for size in range(1, c + 1):
        for combo in itertools.combinations(range(g.m_edges), size):
            masks = list(masks_all)
            for i in combo:
                e = g.edges[i]
                # removal may leave parallel copies; rebuild those adjacency bits
                masks[e.u] &= ~(1 << e.v)
                masks[e.v] &= ~(1 << e.u)
            for i, e in enumerate(g.edges):
                if i in combo:
                    continue
                masks[e.u] |= 1 << e.v
                masks[e.v] |= 1 << e.u
            comp0 = reach_mask(masks, 0, full)
            if comp0 == full:
                continue
            rest = full & ~comp0
            while rest:
                v = (rest & -rest).bit_length() - 1
                comp = reach_mask(masks, v, full)
                rest &= ~comp
                side = frozenset(w for w in range(g.n) if (comp >> w) & 1)
                if cut_of(g, side).d <= c:
                    sides.add(side)
    return sorted(sides, key=lambda s: sorted(s))


# ---------------------------------------------------------------------------
# orientation condition


def check_kstrong_orientation_condition(g: MixedGraph, k: int) -> bool:
    """For every X with |X| < k, is G - X 2(k-|X|)-edge-connected?

    For k = 1 this is plain 2-edge-connectivity; for k = 2 it asks for a
    4-edge-connected graph whose every vertex-deleted subgraph stays
    2-edge-connected.
    """
    if k < 1:
        raise GraphError("k must be positive")
    if not g.is_graph:
        raise GraphError("orientation condition is defined on all-undirected graphs")
    for size in range(k):
        for combo in itertools.combinations(range(g.n), size):
            sub, _ = g.delete_vertices(combo)
            if not is_k_edge_connected(sub, 2 * (k - size)):
                return False
    return True
