"""Deterministic instance generators and small-graph enumerators."""

from __future__ import annotations

import itertools
import random
from typing import Iterator

from . import connectivity as conn
from .core import GraphError, MixedGraph
from .exact import SatInstance
from .reductions import Rocket, build_rocket


def random_digraph(n: int, m: int, seed: int) -> MixedGraph:
    """m arcs drawn uniformly over ordered pairs, reproducible by seed."""
    if n < 2 and m > 0:
        raise GraphError("arcs need at least two vertices")
    rng = random.Random(seed)
    arcs = []
    for _ in range(m):
        t = rng.randrange(n)
        h = rng.randrange(n - 1)
        if h >= t:
            h += 1
        arcs.append((t, h))
    return MixedGraph.digraph(n, arcs)


def random_multigraph(n: int, m: int, seed: int) -> MixedGraph:
    if n < 2 and m > 0:
        raise GraphError("edges need at least two vertices")
    rng = random.Random(seed)
    edges = []
    for _ in range(m):
        u = rng.randrange(n)
        v = rng.randrange(n - 1)
        if v >= u:
            v += 1
        edges.append((min(u, v), max(u, v)))
    return MixedGraph.graph(n, edges)


def random_cactus(n: int, seed: int) -> MixedGraph:
    """Cycle blocks glued at cut vertices; every vertex pair has local
    edge connectivity exactly two (two parallel edges count as a cycle)."""
    if n < 1:
        raise GraphError("need at least one vertex")
    if n == 1:
        return MixedGraph.graph(1, [])
    rng = random.Random(seed)
    edges: list[tuple[int, int]] = []
    first = min(n, rng.randint(2, 5))
    for i in range(first - 1):
        edges.append((i, i + 1))
    edges.append((0, first - 1))  # for first == 2 this is the parallel closer
    count = first
    while count < n:
        anchor = rng.randrange(count)
        grow = min(n - count, rng.randint(1, 4))
        chain = [anchor] + list(range(count, count + grow))
        for a, b in zip(chain, chain[1:]):
            edges.append((min(a, b), max(a, b)))
        edges.append((min(anchor, chain[-1]), max(anchor, chain[-1])))
        count += grow
    return MixedGraph.graph(n, edges)


def random_s3b_sat(num_vars: int, seed: int) -> SatInstance:
    """Special bounded shape: two positive and one negative slot per
    variable, paired into two-literal clauses over distinct variables."""
    if num_vars < 2 or num_vars % 2:
        raise GraphError("the special shape needs an even variable count >= 2")
    rng = random.Random(seed)
    slots = []
    for v in range(num_vars):
        slots.extend([v + 1, v + 1, -(v + 1)])
    for _ in range(10_000):
        rng.shuffle(slots)
        ok = True
        for i in range(0, len(slots), 2):
            if abs(slots[i]) == abs(slots[i + 1]):
                ok = False
                break
        if ok:
            clauses = tuple(
                (slots[i], slots[i + 1]) for i in range(0, len(slots), 2)
            )
            return SatInstance(num_vars, clauses)
    raise GraphError("could not pair literal slots; try another seed")


def gen_rocket(k: int, kind: str) -> Rocket:
    return build_rocket(kind, k)


# ---------------------------------------------------------------------------
# exhaustive small-graph enumeration (canonical forms)


def _canon_multigraph(n: int, pairs: tuple[tuple[int, int], ...]) -> tuple:
    best = None
    for perm in itertools.permutations(range(n)):
        mapped = tuple(
            sorted(tuple(sorted((perm[u], perm[v]))) for (u, v) in pairs)
        )
        if best is None or mapped < best:
            best = mapped
    return (n, best)


def _canon_digraph(n: int, pairs: tuple[tuple[int, int], ...]) -> tuple:
    best = None
    for perm in itertools.permutations(range(n)):
        mapped = tuple(sorted((perm[t], perm[h]) for (t, h) in pairs))
        if best is None or mapped < best:
            best = mapped
    return (n, best)


def connected_multigraphs(n: int, max_edges: int) -> Iterator[MixedGraph]:
    """All connected multigraphs on exactly n labeled-then-canonicalized
    vertices with no isolated vertex, one representative per isomorphism
    class."""
    slots = [(u, v) for u in range(n) for v in range(u + 1, n)]
    seen: set[tuple] = set()
    for m in range(max(n - 1, 0), max_edges + 1):
        for combo in itertools.combinations_with_replacement(slots, m):
            g = MixedGraph.graph(n, combo)
            if any(g.edge_degree(v) == 0 for v in range(n)):
                continue
            if not conn.is_connected(g):
                continue
            key = _canon_multigraph(n, tuple(combo))
            if key in seen:
                continue
            seen.add(key)
            yield g


def digraphs_with_arcs(n: int, max_arcs: int) -> Iterator[MixedGraph]:
    """All digraphs on n vertices, no isolated vertex, up to isomorphism."""
    slots = [(t, h) for t in range(n) for h in range(n) if t != h]
    seen: set[tuple] = set()
    for m in range(0, max_arcs + 1):
        for combo in itertools.combinations_with_replacement(slots, m):
            g = MixedGraph.digraph(n, combo)
            if n > 1 and any(
                g.out_degree(v) + g.in_degree(v) == 0 for v in range(n)
            ):
                continue
            key = _canon_digraph(n, tuple(combo))
            if key in seen:
                continue
            seen.add(key)
            yield g
