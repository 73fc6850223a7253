"""Gadget builders and instance transformations, with solution lifting.

Every builder returns a witness object carrying the constructed instance,
per-element provenance labels, the transformed budget, and the maps needed
to lift solutions forward (source witness to target witness) and back.
Arbitrary choices are pinned to lowest-index rules so instances are
reproducible byte for byte.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from . import connectivity as conn
from .core import Arc, Edge, GraphError, MixedGraph
from .exact import Requirement, SatInstance


# ---------------------------------------------------------------------------
# rockets


@dataclass(frozen=True)
class Rocket:
    """Three guarded chains, an apex, and a tip arc.

    Reversing the tip in any 2-strong reorientation of a host that embeds
    the rocket (with interior degrees preserved) forces at least size+1
    total reversals.
    """

    kind: str  # "out" | "in"
    size: int
    graph: MixedGraph
    x: tuple[int, ...]
    y: tuple[int, ...]
    z: tuple[int, ...]
    apex: int
    vstar: int
    tip_arc: int

    @property
    def exterior(self) -> tuple[int, int, int, int]:
        return (self.x[0], self.y[0], self.z[0], self.vstar)

    @property
    def interior(self) -> tuple[int, ...]:
        ext = set(self.exterior)
        return tuple(v for v in range(self.graph.n) if v not in ext)


def rocket_arc_names(k: int) -> list[tuple[str, str]]:
    """Arc list of the out-rocket on symbolic names, in canonical order."""
    arcs: list[tuple[str, str]] = []
    for i in range(1, k + 1):
        arcs.append((f"x{i}", f"y{i}"))
        arcs.append((f"y{i}", f"z{i}"))
        arcs.append((f"z{i}", f"x{i}"))
    for i in range(k):
        arcs.append((f"x{i}", f"x{i + 1}"))
        arcs.append((f"y{i}", f"y{i + 1}"))
        arcs.append((f"z{i + 1}", f"z{i}"))
    arcs.append((f"x{k}", "u"))
    arcs.append((f"y{k}", "u"))
    arcs.append(("u", f"z{k}"))
    arcs.append(("u", "v*"))
    return arcs


def build_rocket(kind: str, k: int) -> Rocket:
    """Free-standing rocket gadget; 3(k+1)+2 vertices, 6k+4 arcs."""
    if kind not in ("out", "in"):
        raise GraphError("rocket kind must be 'out' or 'in'")
    if k < 1:
        raise GraphError("rocket size must be positive")
    names: dict[str, int] = {}
    for i in range(k + 1):
        names[f"x{i}"] = i
        names[f"y{i}"] = (k + 1) + i
        names[f"z{i}"] = 2 * (k + 1) + i
    names["u"] = 3 * (k + 1)
    names["v*"] = 3 * (k + 1) + 1
    arcs = []
    for tail, head in rocket_arc_names(k):
        t, h = names[tail], names[head]
        if kind == "in":
            t, h = h, t
        arcs.append(Arc(t, h, label=f"{tail}->{head}"))
    g = MixedGraph(3 * (k + 1) + 2, (), tuple(arcs))
    return Rocket(
        kind,
        k,
        g,
        tuple(names[f"x{i}"] for i in range(k + 1)),
        tuple(names[f"y{i}"] for i in range(k + 1)),
        tuple(names[f"z{i}"] for i in range(k + 1)),
        names["u"],
        names["v*"],
        tip_arc=len(arcs) - 1,
    )


# ---------------------------------------------------------------------------
# mixed-graph independent-orientation instances to 2-strong arc reversal


@dataclass(frozen=True)
class M2sarReduction:
    """Digraph whose 2-strong reorientations within budget mirror the
    2-arc-strong T-independent orientations of the source mixed graph."""

    source: MixedGraph
    t_set: tuple[int, ...]
    digraph: MixedGraph
    budget: int
    vertex_labels: tuple[str, ...]
    link_arc: tuple[int, ...]  # per source edge: arc id in the digraph
    link_dir: tuple[tuple[int, int], ...]  # per source edge: (tail, head) in source ids
    rockets: tuple[tuple[int, ...], ...]  # per source arc: its arc ids in the digraph
    tip_arcs: tuple[int, ...]  # per source arc: tip arc id
    chosen_va: tuple[int, ...]  # per source arc

    def lift_orientation(self, decisions: Sequence[tuple[int, int]]) -> tuple[int, ...]:
        """Orientation of the source edges -> arcs to reverse in the digraph."""
        if len(decisions) != self.source.m_edges:
            raise GraphError("one decision per source edge required")
        out = []
        for i, d in enumerate(decisions):
            e = self.source.edges[i]
            if set(d) != {e.u, e.v}:
                raise GraphError(f"decision {d} does not orient edge {e.pair()}")
            if d != self.link_dir[i]:
                out.append(self.link_arc[i])
        return tuple(sorted(out))

    def lift_reversals(self, arc_ids: Iterable[int]) -> tuple[tuple[int, int], ...]:
        """Reversal set in the digraph -> orientation of the source edges."""
        flipped = set(arc_ids)
        out = []
        for i in range(self.source.m_edges):
            t, h = self.link_dir[i]
            out.append((h, t) if self.link_arc[i] in flipped else (t, h))
        return tuple(out)


def reduce_i2vcomg_to_m2sar(m: MixedGraph, t_set: Iterable[int]) -> M2sarReduction:
    """Build the arc-reversal instance for a mixed graph with independent T.

    Every mixed-graph vertex outside T becomes a biclique of ports, every
    edge a single linking arc between its ports, and every source arc a
    rocket of size |E(M)| whose tip stands in for the arc.  Budget |E(M)|.
    """
    ts = tuple(sorted(set(t_set)))
    und = m.underlying_graph()
    for a, b in itertools.combinations(ts, 2):
        if conn._adjacent(und, a, b):
            raise GraphError("T must be independent in the underlying graph")
    if m.m_arcs > 0 and m.m_edges == 0:
        raise GraphError("rocket size is |E(M)|; arcs need at least one edge present")

    chosen_va = []
    for a in m.arcs:
        eligible = [w for w in (a.tail, a.head) if w not in ts]
        chosen_va.append(min(eligible))

    labels: list[str] = []
    port: dict[tuple[int, str], int] = {}  # (source vertex, element key) -> digraph id
    x_blocks: dict[int, list[int]] = {}

    def new_vertex(label: str) -> int:
        labels.append(label)
        return len(labels) - 1

    for t in ts:
        vid = new_vertex(f"t{t}")
        for i, e in enumerate(m.edges):
            if e.touches(t):
                port[(t, f"e{i}")] = vid
        for i, a in enumerate(m.arcs):
            if a.touches(t):
                port[(t, f"a{i}")] = vid
    for v in range(m.n):
        if v in ts:
            continue
        block: list[int] = []
        for i, e in enumerate(m.edges):
            if e.touches(v):
                vid = new_vertex(f"x^{{{v},e{i}}}")
                port[(v, f"e{i}")] = vid
                block.append(vid)
        for i, a in enumerate(m.arcs):
            if a.touches(v) and chosen_va[i] != v:
                vid = new_vertex(f"x^{{{v},a{i}}}")
                port[(v, f"a{i}")] = vid
                block.append(vid)
        for i, a in enumerate(m.arcs):
            if a.touches(v) and chosen_va[i] == v:
                for part in ("x0", "y0", "z0"):
                    vid = new_vertex(f"{part}^{{{v},a{i}}}")
                    port[(v, f"{part}a{i}")] = vid
                    block.append(vid)
        x_blocks[v] = block

    arcs: list[Arc] = []

    def add_arc(t: int, h: int, label: str) -> int:
        arcs.append(Arc(t, h, label))
        return len(arcs) - 1

    for v in sorted(x_blocks):
        for a, b in itertools.combinations(x_blocks[v], 2):
            add_arc(a, b, f"biclique:{v}")
            add_arc(b, a, f"biclique:{v}")

    link_arc = []
    link_dir = []
    for i, e in enumerate(m.edges):
        lo, hi = min(e.u, e.v), max(e.u, e.v)
        link_arc.append(add_arc(port[(lo, f"e{i}")], port[(hi, f"e{i}")], f"link:e{i}"))
        link_dir.append((lo, hi))

    rockets: list[tuple[int, ...]] = []
    tip_arcs: list[int] = []
    size = m.m_edges
    for i, a in enumerate(m.arcs):
        va = chosen_va[i]
        other = a.head if va == a.tail else a.tail
        kind = "out" if va == a.tail else "in"
        exterior_names = {
            "x0": port[(va, f"x0a{i}")],
            "y0": port[(va, f"y0a{i}")],
            "z0": port[(va, f"z0a{i}")],
            "v*": port[(other, f"a{i}")],
        }
        interior: dict[str, int] = {}
        for j in range(1, size + 1):
            for part in ("x", "y", "z"):
                interior[f"{part}{j}"] = new_vertex(f"R{i}:{part}{j}")
        interior["u"] = new_vertex(f"R{i}:u")
        ids = {**exterior_names, **interior}
        my_arcs = []
        tip = -1
        for tail, head in rocket_arc_names(size):
            t, h = ids[tail], ids[head]
            if kind == "in":
                t, h = h, t
            aid = add_arc(t, h, f"R{i}:{tail}->{head}")
            my_arcs.append(aid)
            if (tail, head) == ("u", "v*"):
                tip = aid
        rockets.append(tuple(my_arcs))
        tip_arcs.append(tip)

    d = MixedGraph(len(labels), (), tuple(arcs))
    return M2sarReduction(
        source=m,
        t_set=ts,
        digraph=d,
        budget=m.m_edges,
        vertex_labels=tuple(labels),
        link_arc=tuple(link_arc),
        link_dir=tuple(link_dir),
        rockets=tuple(rockets),
        tip_arcs=tuple(tip_arcs),
        chosen_va=tuple(chosen_va),
    )


# ---------------------------------------------------------------------------
# the graph class of doubly subdivided cubic graphs


@dataclass(frozen=True)
class SubdividedInstance:
    """Doubly subdivided cubic graph with the cover-size correspondence."""

    cubic: MixedGraph
    graph: MixedGraph
    sub_a: tuple[int, ...]  # per cubic edge: subdivision vertex next to e.u
    sub_b: tuple[int, ...]  # per cubic edge: subdivision vertex next to e.v
    vertex_labels: tuple[str, ...]
    cover_shift: int  # |E(cubic)|: VC optimum rises by exactly this

    def lift_cover_forward(self, cover: Iterable[int]) -> tuple[int, ...]:
        s = set(cover)
        out = set(s)
        for i, e in enumerate(self.cubic.edges):
            if e.u in s and e.v in s:
                out.add(self.sub_a[i])
            elif e.u in s:
                out.add(self.sub_b[i])
            elif e.v in s:
                out.add(self.sub_a[i])
            else:
                raise GraphError(f"not a vertex cover: edge {e.pair()} uncovered")
        return tuple(sorted(out))

    def lift_cover_back(self, cover: Iterable[int]) -> tuple[int, ...]:
        s = set(cover)
        for i, e in enumerate(self.cubic.edges):
            while self.sub_a[i] in s and self.sub_b[i] in s:
                s.discard(self.sub_a[i])
                s.add(e.u)
        return tuple(sorted(v for v in s if v < self.cubic.n))


def _check_cubic_two_connected(g: MixedGraph) -> None:
    if not g.is_graph:
        raise GraphError("expected an all-undirected graph")
    if g.n < 4:
        raise GraphError("cubic 2-connected input needs at least 4 vertices")
    if any(g.edge_degree(v) != 3 for v in range(g.n)):
        raise GraphError("input graph is not cubic")
    if not conn.is_connected(g):
        raise GraphError("input graph is not connected")
    for v in range(g.n):
        sub, _ = g.delete_vertices([v])
        if not conn.is_connected(sub):
            raise GraphError("input graph has a cutvertex")


def class_g_instance(cubic: MixedGraph) -> SubdividedInstance:
    """Subdivide every edge of a cubic 2-connected graph twice."""
    _check_cubic_two_connected(cubic)
    labels = [f"v{v}" for v in range(cubic.n)]
    edges: list[Edge] = []
    sub_a = []
    sub_b = []
    for i, e in enumerate(cubic.edges):
        a = len(labels)
        labels.append(f"e{i}:a")
        b = len(labels)
        labels.append(f"e{i}:b")
        sub_a.append(a)
        sub_b.append(b)
        edges.append(Edge(e.u, a, f"e{i}:1"))
        edges.append(Edge(a, b, f"e{i}:2"))
        edges.append(Edge(b, e.v, f"e{i}:3"))
    g = MixedGraph(len(labels), tuple(edges), ())
    return SubdividedInstance(
        cubic, g, tuple(sub_a), tuple(sub_b), tuple(labels), cubic.m_edges
    )


# ---------------------------------------------------------------------------
# legal path decompositions


@dataclass(frozen=True)
class PathPiece:
    vertices: tuple[int, ...]
    edges: tuple[int, ...]


@dataclass(frozen=True)
class LegalDecomposition:
    """Edge partition into 1- and 2-edge paths, two paths per vertex."""

    graph: MixedGraph
    ones: tuple[PathPiece, ...]
    twos: tuple[PathPiece, ...]

    def paths_of_vertex(self, v: int) -> list[tuple[str, int]]:
        out = []
        for i, p in enumerate(self.ones):
            if v in p.vertices:
                out.append(("one", i))
        for i, p in enumerate(self.twos):
            if v in p.vertices:
                out.append(("two", i))
        return out


def in_class_g(g: MixedGraph) -> bool:
    """Is g a doubly subdivided cubic 2-connected graph?"""
    try:
        _decompose_class_g(g)
        return True
    except GraphError:
        return False


def _decompose_class_g(g: MixedGraph) -> MixedGraph:
    """Recover the cubic origin or raise; returns the contracted cubic graph."""
    if not g.is_graph or g.n == 0:
        raise GraphError("not a class member")
    deg3 = [v for v in range(g.n) if g.edge_degree(v) == 3]
    deg2 = [v for v in range(g.n) if g.edge_degree(v) == 2]
    if len(deg3) + len(deg2) != g.n or not deg3:
        raise GraphError("degrees other than 2 and 3 present")
    if not conn.is_connected(g):
        raise GraphError("not connected")
    # every chain between degree-3 vertices must have exactly two inner vertices
    used_edges: set[int] = set()
    cubic_edges = []
    for v in deg3:
        for ei in g.incident_edges(v):
            if ei in used_edges:
                continue
            chain = [ei]
            prev, cur = v, g.edges[ei].other(v)
            while g.edge_degree(cur) == 2:
                nxt_edges = [j for j in g.incident_edges(cur) if j != chain[-1]]
                if len(nxt_edges) != 1:
                    raise GraphError("malformed chain")
                chain.append(nxt_edges[0])
                prev, cur = cur, g.edges[nxt_edges[0]].other(cur)
            if len(chain) != 3:
                raise GraphError("chain between branch vertices is not doubly subdivided")
            used_edges.update(chain)
            cubic_edges.append((v, cur))
    if len(used_edges) != g.m_edges:
        raise GraphError("edges not covered by chains")
    index = {v: i for i, v in enumerate(deg3)}
    edges = []
    for (a, b) in cubic_edges:
        if a == b:
            raise GraphError("chain closes a loop; not a subdivision")
        edges.append((index[a], index[b]))
    cubic = MixedGraph.graph(len(deg3), sorted(edges))
    _check_cubic_two_connected(cubic)
    return cubic


def legal_decomposition(g: MixedGraph) -> LegalDecomposition:
    """Two lowest-index edges at each branch vertex form its 2-path."""
    _decompose_class_g(g)
    twos = []
    used: set[int] = set()
    for v in range(g.n):
        if g.edge_degree(v) != 3:
            continue
        e1, e2 = sorted(g.incident_edges(v))[:2]
        a = g.edges[e1].other(v)
        b = g.edges[e2].other(v)
        twos.append(PathPiece((a, v, b), (e1, e2)))
        used.update((e1, e2))
    ones = []
    for i, e in enumerate(g.edges):
        if i not in used:
            ones.append(PathPiece((e.u, e.v), (i,)))
    return LegalDecomposition(g, tuple(ones), tuple(twos))


def check_legal(dec: LegalDecomposition) -> bool:
    g = dec.graph
    all_edges = sorted(
        e for p in dec.ones + dec.twos for e in p.edges
    )
    if all_edges != list(range(g.m_edges)):
        return False
    if any(len(p.edges) != 1 for p in dec.ones):
        return False
    if any(len(p.edges) != 2 for p in dec.twos):
        return False
    for v in range(g.n):
        if len(dec.paths_of_vertex(v)) != 2:
            return False
    return True


# ---------------------------------------------------------------------------
# vertex cover to 4-edge-connectivity augmentation by doubling


_GADGET_EDGES: tuple[tuple[str, str], ...] = (
    ("u", "2"),
    ("u", "3"),
    ("u", "4"),
    ("u", "5"),
    ("v", "1"),
    ("v", "8"),
    ("w", "7"),
    ("w", "8"),
    ("1", "2"),
    ("1", "8"),
    ("2", "3"),
    ("3", "4"),
    ("4", "5"),
    ("5", "6"),
    ("6", "7"),
    ("6", "8"),
    ("7", "8"),
)


@dataclass(frozen=True)
class Vc4edaReduction:
    """Doubling-augmentation instance built from a vertex cover instance."""

    source: MixedGraph  # the doubly subdivided cubic graph
    decomposition: LegalDecomposition
    graph: MixedGraph  # H
    budget: int | None
    vertex_labels: tuple[str, ...]
    x_single: tuple[int, ...]  # per 1-path: its hub-facing vertex
    gadget: tuple[Mapping[str, int], ...]  # per 2-path: role -> vertex of H
    gadget_edge: tuple[Mapping[tuple[str, str], int], ...]  # per 2-path: role pair -> edge id
    hub: int
    ev_edge: tuple[int, ...]  # per source vertex: its e_v edge id
    y_edge: tuple[int, ...]  # per 1-path: its hub edge id

    def gadget_role(self, j: int, v: int) -> str:
        p = self.decomposition.twos[j]
        if v == p.vertices[1]:
            return "v"
        lo, hi = sorted((p.vertices[0], p.vertices[2]))
        return "u" if v == lo else "w"

    def three_cut_inventory(self) -> list[frozenset[int]]:
        """Exactly the advertised 3-edge-cut sides, smaller side listed."""
        cuts: list[frozenset[int]] = []
        for xp in self.x_single:
            cuts.append(frozenset([xp]))
        for roles in self.gadget:
            cuts.append(frozenset(roles.values()))
            for r in ("v", "w", "1", "2", "3", "4", "5", "6", "7"):
                cuts.append(frozenset([roles[r]]))
            cuts.append(frozenset(roles[r] for r in ("u", "2", "3", "4", "5")))
        return cuts

    def lift_cover(self, cover: Iterable[int]) -> tuple[int, ...]:
        """Vertex cover of the source -> doubling set of size |S| + |V(source)|."""
        s = set(cover)
        out = {self.ev_edge[v] for v in s}
        for j, p in enumerate(self.decomposition.twos):
            center = p.vertices[1]
            ge = self.gadget_edge[j]
            if center in s:
                out.update(
                    (ge[("1", "2")], ge[("3", "4")], ge[("5", "6")], ge[("w", "7")])
                )
            else:
                out.update(
                    (ge[("v", "1")], ge[("2", "3")], ge[("4", "5")], ge[("6", "7")])
                )
        return tuple(sorted(out))

    def lift_doubling(self, doubling: Iterable[int]) -> tuple[int, ...]:
        """Feasible doubling set -> vertex cover of size <= |F| - |V(source)|.

        Repeatedly rewrites the set path by path into the canonical shape
        without growing it (the cut inventory keeps every rewrite feasible),
        then reads the cover off the e_v edges.
        """
        f = set(doubling)
        ev_of = {e: v for v, e in enumerate(self.ev_edge)}
        changed = True
        while changed:
            changed = False
            for i, p in enumerate(self.decomposition.ones):
                a, b = p.vertices
                if self.ev_edge[a] in f or self.ev_edge[b] in f:
                    continue
                if self.y_edge[i] not in f:
                    raise GraphError("doubling set misses a hub cut; not feasible")
                f.discard(self.y_edge[i])
                f.add(self.ev_edge[min(a, b)])
                changed = True
            for j, p in enumerate(self.decomposition.twos):
                center = p.vertices[1]
                lo, hi = sorted((p.vertices[0], p.vertices[2]))
                ge = self.gadget_edge[j]
                gadget_ids = set(ge.values())
                inside = f & gadget_ids
                has_c = self.ev_edge[center] in f
                has_u = self.ev_edge[lo] in f
                has_w = self.ev_edge[hi] in f
                if (has_c or (has_u and has_w)) and len(inside) >= 4:
                    continue
                if len(inside) < 4:
                    raise GraphError("doubling set under-covers a path gadget")
                if not (has_u or has_w or has_c):
                    raise GraphError("doubling set misses a gadget boundary cut")
                f -= gadget_ids
                f.update(
                    (ge[("v", "1")], ge[("2", "3")], ge[("4", "5")], ge[("6", "7")])
                )
                f.add(self.ev_edge[lo] if not has_u else self.ev_edge[hi])
                changed = True
        return tuple(sorted(ev_of[e] for e in f if e in ev_of))


def reduce_vc_to_4eda(g: MixedGraph, k: int | None = None) -> Vc4edaReduction:
    """Build the doubling instance from a doubly subdivided cubic graph.

    One hub-linked vertex per 1-path, an 11-vertex gadget per 2-path, and
    one e_v edge per source vertex joining its two paths; budget k + |V|.
    """
    dec = legal_decomposition(g)
    if g.n < 5:
        raise GraphError("construction needs at least 5 source vertices")
    labels: list[str] = []

    def new_vertex(label: str) -> int:
        labels.append(label)
        return len(labels) - 1

    x_single = tuple(new_vertex(f"x_P{i}") for i in range(len(dec.ones)))
    gadget: list[dict[str, int]] = []
    for j in range(len(dec.twos)):
        roles: dict[str, int] = {}
        for r in ("u", "v", "w", "1", "2", "3", "4", "5", "6", "7", "8"):
            roles[r] = new_vertex(f"x_P{j}^{r}")
        gadget.append(roles)
    hub = new_vertex("y")

    edges: list[Edge] = []

    def add_edge(a: int, b: int, label: str) -> int:
        edges.append(Edge(a, b, label))
        return len(edges) - 1

    gadget_edge: list[dict[tuple[str, str], int]] = []
    for j, roles in enumerate(gadget):
        ge: dict[tuple[str, str], int] = {}
        for (a, b) in _GADGET_EDGES:
            ge[(a, b)] = add_edge(roles[a], roles[b], f"g{j}:{a}-{b}")
        gadget_edge.append(ge)
    y_edge = tuple(
        add_edge(x_single[i], hub, f"y:P{i}") for i in range(len(dec.ones))
    )

    ev_edge: list[int] = []
    for v in range(g.n):
        homes = dec.paths_of_vertex(v)
        if len(homes) != 2:
            raise GraphError("decomposition is not legal")
        ends = []
        for kind, idx in homes:
            if kind == "one":
                ends.append(x_single[idx])
            else:
                p = dec.twos[idx]
                if v == p.vertices[1]:
                    role = "v"
                else:
                    lo, hi = sorted((p.vertices[0], p.vertices[2]))
                    role = "u" if v == lo else "w"
                ends.append(gadget[idx][role])
        if len(set(ends)) != 2:
            raise GraphError("a vertex joins one path twice")
        ev_edge.append(add_edge(ends[0], ends[1], f"e_v:{v}"))

    h = MixedGraph(len(labels), tuple(edges), ())
    return Vc4edaReduction(
        source=g,
        decomposition=dec,
        graph=h,
        budget=None if k is None else k + g.n,
        vertex_labels=tuple(labels),
        x_single=x_single,
        gadget=tuple(gadget),
        gadget_edge=tuple(gadget_edge),
        hub=hub,
        ev_edge=tuple(ev_edge),
        y_edge=y_edge,
    )


# ---------------------------------------------------------------------------
# bounded-occurrence MAX-2-SAT shaping


def normalize_to_s3bmax2sat(sat: SatInstance) -> tuple[SatInstance, tuple[int, ...]]:
    """Flip variables appearing once positively so all appear (2 pos, 1 neg).

    The flip set is returned; assignments correspond by negating exactly
    those variables, so satisfied-clause counts are preserved.
    """
    flips = []
    for v in range(sat.num_vars):
        pos, neg = sat.occurrences(v)
        if pos + neg != 3 or pos < 1 or neg < 1:
            raise GraphError(
                f"variable {v} occurs {pos}+{neg} times; need exactly 3 with both signs"
            )
        if pos == 1:
            flips.append(v)
    flip_set = set(flips)
    clauses = []
    for a, b in sat.clauses:
        na = -a if abs(a) - 1 in flip_set else a
        nb = -b if abs(b) - 1 in flip_set else b
        clauses.append((na, nb))
    return SatInstance(sat.num_vars, tuple(clauses)), tuple(flips)


# ---------------------------------------------------------------------------
# special MAX-2-SAT to 3-strong deorientation


@dataclass(frozen=True)
class S3bTo3sdoReduction:
    sat: SatInstance
    ell: int
    digraph: MixedGraph
    budget: int
    vertex_labels: tuple[str, ...]
    orderings: tuple[tuple[int, int, int], ...]  # per variable: (C1, C2, C3)
    vertex_of: Mapping[str, int]
    s_vertices: tuple[int, ...]
    true_menu: tuple[tuple[int, ...], ...]  # per variable: 6 arcs
    false_menu: tuple[tuple[int, ...], ...]
    q2_arc: tuple[int, ...]  # per variable: the arc q_(x,C2) -> v_C2
    slack_arc: tuple[int, ...]  # per clause: s_C -> v_C

    def lift_assignment(self, phi: Sequence[bool]) -> tuple[int, ...]:
        if len(phi) != self.sat.num_vars:
            raise GraphError("one truth value per variable required")
        out: set[int] = set()
        for x, val in enumerate(phi):
            out.update(self.true_menu[x] if val else self.false_menu[x])
        for c in range(len(self.sat.clauses)):
            lits = self.sat.clauses[c]
            sat_here = any(
                (lit > 0) == phi[abs(lit) - 1] for lit in lits
            )
            if not sat_here:
                out.add(self.slack_arc[c])
        return tuple(sorted(out))

    def lift_deorientations(self, arc_ids: Iterable[int]) -> tuple[bool, ...]:
        f = set(arc_ids)
        return tuple(self.q2_arc[x] not in f for x in range(self.sat.num_vars))


def _variable_orderings(
    sat: SatInstance, overrides: Mapping[int, tuple[int, int, int]] | None
) -> list[tuple[int, int, int]]:
    orderings = []
    for v in range(sat.num_vars):
        pos = [c for c, cl in enumerate(sat.clauses) if (v + 1) in cl]
        neg = [c for c, cl in enumerate(sat.clauses) if -(v + 1) in cl]
        if len(pos) != 2 or len(neg) != 1:
            raise GraphError(f"variable {v} is not (2 positive, 1 negative)")
        if len({*pos, *neg}) != 3:
            raise GraphError(f"variable {v} repeats a clause")
        default = (pos[0], neg[0], pos[1])
        if overrides and v in overrides:
            c1, c2, c3 = overrides[v]
            if sorted((c1, c2, c3)) != sorted(default):
                raise GraphError(f"override for variable {v} lists wrong clauses")
            if (v + 1) not in sat.clauses[c1] or (v + 1) not in sat.clauses[c3]:
                raise GraphError(f"override for variable {v} misplaces positives")
            if -(v + 1) not in sat.clauses[c2]:
                raise GraphError(f"override for variable {v} misplaces the negative")
            orderings.append((c1, c2, c3))
        else:
            orderings.append(default)
    return orderings


def reduce_s3bmax2sat_to_3sdo(
    sat: SatInstance,
    ell: int,
    orderings: Mapping[int, tuple[int, int, int]] | None = None,
) -> S3bTo3sdoReduction:
    """Build the 3-strong deorientation instance; budget 6|X| + |C| - ell.

    Needs the special shape (two positive and one negative occurrence per
    variable, two distinct variables per clause).  Clause orderings default
    to ascending index and can be pinned per variable.
    """
    if not sat.is_special_three_bounded():
        raise GraphError("instance is not in the special bounded shape")
    for cl in sat.clauses:
        if abs(cl[0]) == abs(cl[1]):
            raise GraphError("clauses must use two distinct variables")
    if not (0 <= ell <= len(sat.clauses)):
        raise GraphError("clause target out of range")
    ordering = _variable_orderings(sat, orderings)

    labels: list[str] = []
    vertex_of: dict[str, int] = {}

    def new_vertex(name: str) -> int:
        vertex_of[name] = len(labels)
        labels.append(name)
        return vertex_of[name]

    nvars = sat.num_vars
    nclauses = len(sat.clauses)
    for x in range(nvars):
        for c in ordering[x]:
            for part in ("p", "q", "s"):
                new_vertex(f"{part}({x},{c})")
    for x in range(nvars):
        for name in ("p", "q", "s1", "s2", "s3", "s4", "w1", "w2", "w3", "w4"):
            new_vertex(f"{name}_{x}")
    for c in range(nclauses):
        new_vertex(f"v_C{c}")
        new_vertex(f"s_C{c}")

    arcs: list[Arc] = []

    def add_arc(t: str, h: str, label: str | None = None) -> int:
        arcs.append(Arc(vertex_of[t], vertex_of[h], label or f"{t}->{h}"))
        return len(arcs) - 1

    def add_digon(a: str, b: str) -> None:
        add_arc(a, b, f"digon:{a}<->{b}")
        add_arc(b, a, f"digon:{b}<->{a}")

    for x in range(nvars):
        for c in ordering[x]:
            add_digon(f"p({x},{c})", f"q({x},{c})")
            add_digon(f"p({x},{c})", f"s({x},{c})")
            add_digon(f"q({x},{c})", f"s({x},{c})")
    for x in range(nvars):
        add_digon(f"p_{x}", f"q_{x}")
        add_digon(f"p_{x}", f"s3_{x}")
        add_digon(f"q_{x}", f"s3_{x}")
        for i in (1, 2, 3, 4):
            for j in (1, 2):
                add_digon(f"w{i}_{x}", f"s{j}_{x}")

    true_menu: list[tuple[int, ...]] = []
    false_menu: list[tuple[int, ...]] = []
    q2_arc: list[int] = []
    for x in range(nvars):
        c1, c2, c3 = ordering[x]
        a_q1w1 = add_arc(f"q({x},{c1})", f"w1_{x}")
        a_p2w1 = add_arc(f"p({x},{c2})", f"w1_{x}")
        a_q2w2 = add_arc(f"q({x},{c2})", f"w2_{x}")
        a_p3w2 = add_arc(f"p({x},{c3})", f"w2_{x}")
        a_q3w3 = add_arc(f"q({x},{c3})", f"w3_{x}")
        a_pxw3 = add_arc(f"p_{x}", f"w3_{x}")
        a_qxw4 = add_arc(f"q_{x}", f"w4_{x}")
        a_p1w4 = add_arc(f"p({x},{c1})", f"w4_{x}")
        a_p1v1 = add_arc(f"p({x},{c1})", f"v_C{c1}")
        add_arc(f"v_C{c1}", f"q({x},{c1})")
        a_q2v2 = add_arc(f"q({x},{c2})", f"v_C{c2}")
        add_arc(f"v_C{c2}", f"p({x},{c2})")
        a_p3v3 = add_arc(f"p({x},{c3})", f"v_C{c3}")
        add_arc(f"v_C{c3}", f"q({x},{c3})")
        a_qxs4 = add_arc(f"q_{x}", f"s4_{x}")
        add_arc(f"s4_{x}", f"p_{x}")
        true_menu.append((a_q1w1, a_q2w2, a_q3w3, a_qxw4, a_p1v1, a_p3v3))
        false_menu.append((a_p1w4, a_p2w1, a_p3w2, a_pxw3, a_q2v2, a_qxs4))
        q2_arc.append(a_q2v2)

    slack_arc = [add_arc(f"s_C{c}", f"v_C{c}") for c in range(nclauses)]

    s_names = (
        [f"s({x},{c})" for x in range(nvars) for c in ordering[x]]
        + [f"s{j}_{x}" for x in range(nvars) for j in (1, 2, 3, 4)]
        + [f"s_C{c}" for c in range(nclauses)]
    )
    s_ids = sorted(vertex_of[nm] for nm in s_names)
    for a, b in itertools.combinations(s_ids, 2):
        na, nb = labels[a], labels[b]
        add_digon(na, nb)

    d = MixedGraph(len(labels), (), tuple(arcs))
    return S3bTo3sdoReduction(
        sat=sat,
        ell=ell,
        digraph=d,
        budget=6 * nvars + nclauses - ell,
        vertex_labels=tuple(labels),
        orderings=tuple(ordering),
        vertex_of=dict(vertex_of),
        s_vertices=tuple(s_ids),
        true_menu=tuple(true_menu),
        false_menu=tuple(false_menu),
        q2_arc=tuple(q2_arc),
        slack_arc=tuple(slack_arc),
    )


# ---------------------------------------------------------------------------
# lifting strength targets above three


@dataclass(frozen=True)
class StrengthLift:
    digraph: MixedGraph
    added: tuple[int, ...]
    budget: int | None


def lift_3sdo_to_lstrong(d: MixedGraph, ell: int, budget: int | None = None) -> StrengthLift:
    """Add ell-3 universally digon-linked vertices; budget is unchanged."""
    if ell < 4:
        raise GraphError("lift applies to strength targets of at least 4")
    g = d
    added = []
    for _ in range(ell - 3):
        g = g.add_vertices(1)
        w = g.n - 1
        for v in range(w):
            g = g.add_arc(w, v, f"lift:{w}->{v}").add_arc(v, w, f"lift:{v}->{w}")
        added.append(w)
    return StrengthLift(g, tuple(added), budget)


# ---------------------------------------------------------------------------
# local connectivity orientation: hardening and deorientation form


@dataclass(frozen=True)
class HardenedLco:
    source: MixedGraph
    requirement: Requirement
    graph: MixedGraph
    hardened: Requirement
    a: int
    b: int

    def lift_forward(self, decisions: Sequence[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
        """Orientation of the source -> orientation of the hardened graph."""
        n = self.source.n
        out = list(decisions)
        for e in self.graph.edges[self.source.m_edges :]:
            if {e.u, e.v} == {self.a, self.b}:
                out.append((self.b, self.a))
            elif self.a in (e.u, e.v):
                x = e.other(self.a)
                out.append((self.a, x))
            else:
                x = e.other(self.b)
                out.append((x, self.b))
        return tuple(out)

    def lift_back(self, decisions: Sequence[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
        """Orientation of the hardened graph -> orientation of the source.

        Normalizes by reversing a directed cycle through the a-b arc when
        needed (cycle reversal preserves every cut's out-degree, hence all
        local connectivities), then restricts to the source edges.
        """
        arcs = list(decisions)
        ab_pos = None
        for i in range(self.source.m_edges, len(arcs)):
            if set(arcs[i]) == {self.a, self.b}:
                ab_pos = i
        assert ab_pos is not None
        if arcs[ab_pos] == (self.a, self.b):
            d = MixedGraph.digraph(self.graph.n, arcs)
            # find a directed cycle through the a->b arc: a path b .. a
            parent = {self.b: None}
            queue = [self.b]
            while queue:
                x = queue.pop(0)
                for aid in d.out_arcs(x):
                    h = d.arcs[aid].head
                    if h not in parent:
                        parent[h] = (x, aid)
                        queue.append(h)
            if self.a not in parent:
                raise GraphError("orientation does not route b back to a")
            flip = {ab_pos}
            cur = self.a
            while parent[cur] is not None:
                x, aid = parent[cur]
                flip.add(aid)
                cur = x
            arcs = [(h, t) if i in flip else (t, h) for i, (t, h) in enumerate(arcs)]
        return tuple(arcs[: self.source.m_edges])


def harden_lco(g: MixedGraph, req: Requirement) -> HardenedLco:
    """Embed an instance so every demand is at least one.

    Two apex vertices force themselves into every orientation; original
    demands rise by one, demands touching the apexes are one, and the apex
    pair demands (|V|, 1).
    """
    if not g.is_graph:
        raise GraphError("orientation instances are all-undirected")
    n = g.n
    gg = g.add_vertices(2)
    a, b = n, n + 1
    gg = gg.add_edge(a, b, "apex:ab")
    for x in range(n):
        gg = gg.add_edge(a, x, f"apex:a-{x}")
        gg = gg.add_edge(b, x, f"apex:b-{x}")
    pairs: dict[tuple[int, int], int] = {}
    for x in range(n):
        for y in range(n):
            if x != y:
                pairs[(x, y)] = req.get(x, y) + 1
    pairs[(a, b)] = n
    pairs[(b, a)] = 1
    for x in range(n):
        pairs[(x, a)] = pairs[(a, x)] = 1
        pairs[(x, b)] = pairs[(b, x)] = 1
    return HardenedLco(g, req, gg, Requirement(pairs), a, b)


@dataclass(frozen=True)
class LcoToLcdoReduction:
    source: MixedGraph
    requirement: Requirement
    digraph: MixedGraph
    lifted_requirement: Requirement
    budget: int
    midpoint: tuple[int, ...]  # per source edge: its splitting vertex
    arc_u: tuple[int, ...]  # per source edge: arc e.u -> w_e
    arc_v: tuple[int, ...]  # per source edge: arc e.v -> w_e

    def lift_orientation(self, decisions: Sequence[tuple[int, int]]) -> tuple[int, ...]:
        out = []
        for i, e in enumerate(self.source.edges):
            t, h = decisions[i]
            if {t, h} != {e.u, e.v}:
                raise GraphError("decision does not match the edge")
            out.append(self.arc_v[i] if h == self.source.edges[i].v else self.arc_u[i])
        return tuple(sorted(out))

    def lift_deorientations(self, arc_ids: Iterable[int]) -> tuple[tuple[int, int], ...]:
        f = set(arc_ids)
        out = []
        for i, e in enumerate(self.source.edges):
            if self.arc_v[i] in f:
                out.append((e.u, e.v))
            elif self.arc_u[i] in f:
                out.append((e.v, e.u))
            else:
                raise GraphError(f"midpoint of edge {i} is unreachable; not feasible")
        return tuple(out)


def reduce_lco_to_lcdo(g: MixedGraph, req: Requirement) -> LcoToLcdoReduction:
    """Split every edge into two inward arcs; budget |E(G)|.

    Requires every original ordered pair to demand at least one.  New
    midpoints demand one toward every original vertex and nothing is
    demanded toward them.
    """
    if not g.is_graph:
        raise GraphError("orientation instances are all-undirected")
    for x in range(g.n):
        for y in range(g.n):
            if x != y and req.get(x, y) < 1:
                raise GraphError("reduction needs every original demand at least 1")
    arcs = []
    midpoint = []
    arc_u = []
    arc_v = []
    n = g.n
    for i, e in enumerate(g.edges):
        w = n + i
        midpoint.append(w)
        arc_u.append(len(arcs))
        arcs.append(Arc(e.u, w, f"e{i}:{e.u}->w"))
        arc_v.append(len(arcs))
        arcs.append(Arc(e.v, w, f"e{i}:{e.v}->w"))
    d = MixedGraph(n + g.m_edges, (), tuple(arcs))
    pairs: dict[tuple[int, int], int] = {}
    for x in range(g.n):
        for y in range(g.n):
            if x != y:
                pairs[(x, y)] = req.get(x, y)
    for i in range(g.m_edges):
        for y in range(g.n):
            pairs[(midpoint[i], y)] = 1
    return LcoToLcdoReduction(
        source=g,
        requirement=req,
        digraph=d,
        lifted_requirement=Requirement(pairs),
        budget=g.m_edges,
        midpoint=tuple(midpoint),
        arc_u=tuple(arc_u),
        arc_v=tuple(arc_v),
    )
