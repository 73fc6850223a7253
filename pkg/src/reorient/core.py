"""Mixed multigraph data model.

A mixed graph couples a multiset of undirected edges with a multiset of
directed arcs over densely indexed vertices ``0..n-1``.  Loops are rejected
at construction, parallel elements are legal and are distinguished by their
insertion index, and every edit operation returns a new graph, so values can
be shared freely.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class GraphError(ValueError):
    """Structurally invalid graph construction or edit."""


class SizeCapError(GraphError):
    """Instance exceeds the documented desk-scale cap for this operation."""


@dataclass(frozen=True)
class Edge:
    """Undirected edge. The (u, v) order is storage order only."""

    u: int
    v: int
    label: str | None = None

    def pair(self) -> tuple[int, int]:
        return (self.u, self.v) if self.u <= self.v else (self.v, self.u)

    def other(self, w: int) -> int:
        if w == self.u:
            return self.v
        if w == self.v:
            return self.u
        raise GraphError(f"vertex {w} is not an endpoint of {self}")

    def touches(self, w: int) -> bool:
        return w == self.u or w == self.v


@dataclass(frozen=True)
class Arc:
    tail: int
    head: int
    label: str | None = None

    def pair(self) -> tuple[int, int]:
        t, h = self.tail, self.head
        return (t, h) if t <= h else (h, t)

    def reversed(self) -> "Arc":
        return Arc(self.head, self.tail, self.label)

    def touches(self, w: int) -> bool:
        return w == self.tail or w == self.head


def _check_endpoint(v: int, n: int) -> None:
    if not (0 <= v < n):
        raise GraphError(f"vertex {v} out of range for {n} vertices")


@dataclass(frozen=True)
class MixedGraph:
    """Immutable mixed multigraph M = (V, E, A)."""

    n: int
    edges: tuple[Edge, ...] = ()
    arcs: tuple[Arc, ...] = ()

    def __post_init__(self) -> None:
        if self.n < 0:
            raise GraphError("negative vertex count")
        for e in self.edges:
            _check_endpoint(e.u, self.n)
            _check_endpoint(e.v, self.n)
            if e.u == e.v:
                raise GraphError(f"loop edge at vertex {e.u}")
        for a in self.arcs:
            _check_endpoint(a.tail, self.n)
            _check_endpoint(a.head, self.n)
            if a.tail == a.head:
                raise GraphError(f"loop arc at vertex {a.tail}")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def build(
        n: int,
        edges: Iterable[tuple[int, int]] = (),
        arcs: Iterable[tuple[int, int]] = (),
    ) -> "MixedGraph":
        return MixedGraph(
            n,
            tuple(Edge(u, v) for u, v in edges),
            tuple(Arc(t, h) for t, h in arcs),
        )

    @staticmethod
    def graph(n: int, edges: Iterable[tuple[int, int]]) -> "MixedGraph":
        return MixedGraph.build(n, edges=edges)

    @staticmethod
    def digraph(n: int, arcs: Iterable[tuple[int, int]]) -> "MixedGraph":
        return MixedGraph.build(n, arcs=arcs)

    # -- basic queries -----------------------------------------------------

    @property
    def m_edges(self) -> int:
        return len(self.edges)

    @property
    def m_arcs(self) -> int:
        return len(self.arcs)

    @property
    def is_graph(self) -> bool:
        return not self.arcs

    @property
    def is_digraph(self) -> bool:
        return not self.edges

    def edge_pairs(self) -> list[tuple[int, int]]:
        return [e.pair() for e in self.edges]

    def arc_pairs(self) -> list[tuple[int, int]]:
        return [(a.tail, a.head) for a in self.arcs]

    def out_degree(self, v: int) -> int:
        return sum(1 for a in self.arcs if a.tail == v)

    def in_degree(self, v: int) -> int:
        return sum(1 for a in self.arcs if a.head == v)

    def edge_degree(self, v: int) -> int:
        return sum(1 for e in self.edges if e.touches(v))

    def total_degree(self, v: int) -> int:
        return self.out_degree(v) + self.in_degree(v) + self.edge_degree(v)

    def incident_edges(self, v: int) -> list[int]:
        return [i for i, e in enumerate(self.edges) if e.touches(v)]

    def out_arcs(self, v: int) -> list[int]:
        return [i for i, a in enumerate(self.arcs) if a.tail == v]

    def in_arcs(self, v: int) -> list[int]:
        return [i for i, a in enumerate(self.arcs) if a.head == v]

    # -- edits (all return new graphs) -------------------------------------

    def add_vertices(self, count: int = 1) -> "MixedGraph":
        if count < 0:
            raise GraphError("cannot add a negative number of vertices")
        return MixedGraph(self.n + count, self.edges, self.arcs)

    def add_edge(self, u: int, v: int, label: str | None = None) -> "MixedGraph":
        _check_endpoint(u, self.n)
        _check_endpoint(v, self.n)
        if u == v:
            raise GraphError(f"loop edge at vertex {u}")
        return MixedGraph(self.n, self.edges + (Edge(u, v, label),), self.arcs)

    def add_arc(self, tail: int, head: int, label: str | None = None) -> "MixedGraph":
        _check_endpoint(tail, self.n)
        _check_endpoint(head, self.n)
        if tail == head:
            raise GraphError(f"loop arc at vertex {tail}")
        return MixedGraph(self.n, self.edges, self.arcs + (Arc(tail, head, label),))

    def delete_vertices(self, drop: Iterable[int]) -> tuple["MixedGraph", dict[int, int]]:
        """Delete a vertex set, reindex densely, return (graph, old->new map)."""
        dropped = set(drop)
        for v in dropped:
            _check_endpoint(v, self.n)
        remap: dict[int, int] = {}
        nxt = 0
        for v in range(self.n):
            if v not in dropped:
                remap[v] = nxt
                nxt += 1
        edges = tuple(
            Edge(remap[e.u], remap[e.v], e.label)
            for e in self.edges
            if e.u not in dropped and e.v not in dropped
        )
        arcs = tuple(
            Arc(remap[a.tail], remap[a.head], a.label)
            for a in self.arcs
            if a.tail not in dropped and a.head not in dropped
        )
        return MixedGraph(nxt, edges, arcs), remap

    def _check_arc_indices(self, indices: Iterable[int]) -> list[int]:
        out = []
        for i in indices:
            if not (0 <= i < len(self.arcs)):
                raise GraphError(f"arc index {i} out of range")
            out.append(i)
        if len(set(out)) != len(out):
            raise GraphError("repeated arc index")
        return out

    def _check_edge_indices(self, indices: Iterable[int]) -> list[int]:
        out = []
        for i in indices:
            if not (0 <= i < len(self.edges)):
                raise GraphError(f"edge index {i} out of range")
            out.append(i)
        if len(set(out)) != len(out):
            raise GraphError("repeated edge index")
        return out

    def reverse_arcs(self, indices: Iterable[int]) -> "MixedGraph":
        """Exchange head and tail of the listed arcs."""
        flip = set(self._check_arc_indices(indices))
        arcs = tuple(a.reversed() if i in flip else a for i, a in enumerate(self.arcs))
        return MixedGraph(self.n, self.edges, arcs)

    def deorient_arcs(self, indices: Iterable[int]) -> "MixedGraph":
        """Replace the listed arcs by undirected edges on the same endpoints."""
        drop = set(self._check_arc_indices(indices))
        new_edges = tuple(
            Edge(a.tail, a.head, a.label) for i, a in enumerate(self.arcs) if i in drop
        )
        arcs = tuple(a for i, a in enumerate(self.arcs) if i not in drop)
        return MixedGraph(self.n, self.edges + new_edges, arcs)

    def edge_to_digon(self) -> "MixedGraph":
        """Replace every edge by a pair of opposite arcs."""
        arcs = list(self.arcs)
        for e in self.edges:
            arcs.append(Arc(e.u, e.v, e.label))
            arcs.append(Arc(e.v, e.u, e.label))
        return MixedGraph(self.n, (), tuple(arcs))

    def digon_to_edge(self) -> "MixedGraph":
        """Greedily pair opposite arcs into undirected edges until no digon remains.

        Scanning in index order, each arc grabs the earliest unused opposite
        arc; the result is deterministic and inverts edge_to_digon exactly.
        """
        waiting: dict[tuple[int, int], list[int]] = {}
        drop: set[int] = set()
        new_edges: list[Edge] = []
        for i, a in enumerate(self.arcs):
            opp = waiting.get((a.head, a.tail))
            if opp:
                j = opp.pop(0)
                drop.add(i)
                drop.add(j)
                new_edges.append(Edge(self.arcs[j].tail, self.arcs[j].head, self.arcs[j].label))
            else:
                waiting.setdefault((a.tail, a.head), []).append(i)
        arcs = tuple(a for i, a in enumerate(self.arcs) if i not in drop)
        return MixedGraph(self.n, self.edges + tuple(new_edges), arcs)

    def double_edges(self, indices: Iterable[int]) -> "MixedGraph":
        """Append one parallel copy of each listed edge."""
        chosen = self._check_edge_indices(indices)
        copies = tuple(Edge(self.edges[i].u, self.edges[i].v, self.edges[i].label) for i in sorted(chosen))
        return MixedGraph(self.n, self.edges + copies, self.arcs)

    def underlying_graph(self) -> "MixedGraph":
        """Forget orientations: every arc becomes an edge."""
        extra = tuple(Edge(a.tail, a.head, a.label) for a in self.arcs)
        return MixedGraph(self.n, self.edges + extra, ())

    def contract(self, block: Iterable[int]) -> tuple["MixedGraph", dict[int, int]]:
        """Merge a vertex set into one vertex, dropping the loops this creates.

        The merged vertex takes the position of min(block); indices are
        recompacted. Returns (graph, old->new map).
        """
        blk = set(block)
        if not blk:
            raise GraphError("cannot contract an empty set")
        for v in blk:
            _check_endpoint(v, self.n)
        rep = min(blk)
        keep = [v for v in range(self.n) if v not in blk or v == rep]
        remap = {}
        for i, v in enumerate(keep):
            remap[v] = i
        for v in blk:
            remap[v] = remap[rep]
        edges = tuple(
            Edge(remap[e.u], remap[e.v], e.label)
            for e in self.edges
            if remap[e.u] != remap[e.v]
        )
        arcs = tuple(
            Arc(remap[a.tail], remap[a.head], a.label)
            for a in self.arcs
            if remap[a.tail] != remap[a.head]
        )
        return MixedGraph(len(keep), edges, arcs), remap

    def identify(self, groups: Sequence[Iterable[int]]) -> tuple["MixedGraph", dict[int, int]]:
        """Contract several disjoint vertex sets at once."""
        g = self
        remap = {v: v for v in range(self.n)}
        for grp in groups:
            g, step = g.contract({remap[v] for v in grp})
            remap = {v: step[w] for v, w in remap.items()}
        return g, remap

    def subdivide(self, edge_index: int, times: int) -> "MixedGraph":
        """Replace one edge by a path with `times` fresh internal vertices."""
        (edge_index,) = self._check_edge_indices([edge_index])
        if times < 0:
            raise GraphError("negative subdivision count")
        if times == 0:
            return self
        e = self.edges[edge_index]
        inner = list(range(self.n, self.n + times))
        chain = [e.u] + inner + [e.v]
        edges = [x for i, x in enumerate(self.edges) if i != edge_index]
        for a, b in zip(chain, chain[1:]):
            edges.append(Edge(a, b, e.label))
        return MixedGraph(self.n + times, tuple(edges), self.arcs)

    # -- digon bookkeeping -------------------------------------------------

    def digon_free_arc_indices(self) -> list[int]:
        """One canonical arc index per directed pair lacking an opposite arc.

        Useful as a deorientation candidate set when only reachability
        matters: arcs opposed by a parallel arc, and duplicate parallels,
        never change vertex connectivity when deoriented.
        """
        dirs: dict[tuple[int, int], int] = {}
        for i, a in enumerate(self.arcs):
            dirs.setdefault((a.tail, a.head), i)
        out = []
        for (t, h), i in dirs.items():
            if (h, t) not in dirs:
                out.append(i)
        return sorted(out)


@dataclass(frozen=True)
class PartialOrientation:
    """An all-undirected source graph plus a per-edge keep/orient decision.

    decisions[i] is None to keep edge i undirected, or (tail, head) to
    orient it; oriented pairs must match the edge's endpoints.
    """

    source: MixedGraph
    decisions: tuple[tuple[int, int] | None, ...]

    def __post_init__(self) -> None:
        if not self.source.is_graph:
            raise GraphError("partial orientations start from an all-undirected graph")
        if len(self.decisions) != self.source.m_edges:
            raise GraphError("one decision per source edge required")
        for e, d in zip(self.source.edges, self.decisions):
            if d is None:
                continue
            if set(d) != {e.u, e.v}:
                raise GraphError(f"decision {d} does not match edge {e.pair()}")

    @property
    def oriented_count(self) -> int:
        return sum(1 for d in self.decisions if d is not None)

    @property
    def undirected_count(self) -> int:
        return len(self.decisions) - self.oriented_count

    def realized(self) -> MixedGraph:
        edges = []
        arcs = []
        for e, d in zip(self.source.edges, self.decisions):
            if d is None:
                edges.append(e)
            else:
                arcs.append(Arc(d[0], d[1], e.label))
        return MixedGraph(self.source.n, tuple(edges), tuple(arcs))
