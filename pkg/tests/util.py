"""Shared samplers and tiny named graphs for the test suite."""

from __future__ import annotations

import itertools
import random

from reorient import connectivity as conn
from reorient.core import MixedGraph


def cycle(n: int) -> MixedGraph:
    return MixedGraph.graph(n, [(i, (i + 1) % n) for i in range(n)])


def directed_cycle(n: int) -> MixedGraph:
    return MixedGraph.digraph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> MixedGraph:
    return MixedGraph.graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def complete_digraph(n: int) -> MixedGraph:
    return MixedGraph.digraph(n, [(u, v) for u in range(n) for v in range(n) if u != v])


def theta_graph() -> MixedGraph:
    return MixedGraph.graph(2, [(0, 1), (0, 1), (0, 1)])


def k4() -> MixedGraph:
    return complete_graph(4)


def random_mixed(rng: random.Random, n: int, m_edges: int, m_arcs: int) -> MixedGraph:
    edges = []
    for _ in range(m_edges):
        u = rng.randrange(n)
        v = rng.randrange(n - 1)
        if v >= u:
            v += 1
        edges.append((u, v))
    arcs = []
    for _ in range(m_arcs):
        t = rng.randrange(n)
        h = rng.randrange(n - 1)
        if h >= t:
            h += 1
        arcs.append((t, h))
    return MixedGraph.build(n, edges, arcs)


def sample_with(rng: random.Random, n_range, m_range, predicate, count, directed=False):
    """Rejection-sample `count` graphs satisfying predicate."""
    out = []
    guard = 0
    while len(out) < count:
        guard += 1
        if guard > 200_000:
            raise RuntimeError("sampler starved; weaken the predicate")
        n = rng.randrange(n_range[0], n_range[1] + 1)
        m = rng.randrange(m_range[0], m_range[1] + 1)
        if directed:
            g = random_mixed(rng, n, 0, m)
        else:
            g = random_mixed(rng, n, m, 0)
        if predicate(g):
            out.append(g)
    return out


def is_two_vertex_connected(g: MixedGraph) -> bool:
    if g.n < 3 or not conn.is_connected(g):
        return False
    for v in range(g.n):
        sub, _ = g.delete_vertices([v])
        if not conn.is_connected(sub):
            return False
    return True


def all_subsets(items):
    items = list(items)
    for r in range(len(items) + 1):
        yield from itertools.combinations(items, r)
