import itertools
import random
from fractions import Fraction

import pytest

from reorient import connectivity as conn
from reorient import exact
from reorient.core import GraphError, MixedGraph, SizeCapError

from util import (
    complete_digraph,
    complete_graph,
    cycle,
    directed_cycle,
    random_mixed,
    theta_graph,
)


# -- reversals ------------------------------------------------------------------


def test_min_reversals_already_good():
    assert exact.min_reversals(complete_digraph(4), exact.Strong(2)).optimum == 0
    assert exact.min_reversals(directed_cycle(4), exact.ArcStrong(1)).optimum == 0


def test_min_reversals_infeasible_by_condition():
    res = exact.min_reversals(directed_cycle(4), exact.Strong(2))
    assert not res.feasible


def test_min_reversals_finds_witness():
    # reversing one arc of this digraph makes it strong
    d = MixedGraph.digraph(3, [(0, 1), (2, 1), (2, 0)])
    res = exact.min_reversals(d, exact.ArcStrong(1))
    assert res.optimum == 1
    assert conn.is_k_arc_strong(d.reverse_arcs(res.witness), 1)


def test_min_reversals_cap():
    big = MixedGraph.digraph(12, [(i % 12, (i + 1) % 12) for i in range(23)])
    with pytest.raises(SizeCapError):
        exact.min_reversals(big, exact.ArcStrong(1))


def brute_min_reversals(d, pred):
    for r in range(d.m_arcs + 1):
        for combo in itertools.combinations(range(d.m_arcs), r):
            if pred(d.reverse_arcs(combo)):
                return r
    return None


def test_min_reversals_isomorphism_invariance():
    rng = random.Random(17)
    for _ in range(6):
        base = random_mixed(rng, 4, 0, 7)
        ug = base.underlying_graph()
        if not conn.check_kstrong_orientation_condition(ug, 1):
            continue
        perm = list(range(4))
        rng.shuffle(perm)
        arcs = [(perm[a.tail], perm[a.head]) for a in base.arcs]
        relabeled = MixedGraph.digraph(4, arcs)
        r1 = exact.min_reversals(base, exact.ArcStrong(1))
        r2 = exact.min_reversals(relabeled, exact.ArcStrong(1))
        assert r1.status == r2.status
        if r1.feasible:
            assert r1.optimum == r2.optimum


# -- deorientations ---------------------------------------------------------------


def test_min_deorientations_trivial_and_path():
    assert exact.min_deorientations(directed_cycle(3), exact.Strong(1)).optimum == 0
    path = MixedGraph.digraph(3, [(0, 1), (1, 2)])
    res = exact.min_deorientations(path, exact.Strong(1))
    # oracle: enumerate all 4 subsets
    best = min(
        len(f)
        for f in itertools.chain.from_iterable(
            itertools.combinations(range(2), r) for r in range(3)
        )
        if conn.is_strong(path.deorient_arcs(f))
    )
    assert res.optimum == best == 2


def test_min_deorientations_requirement_equals_strong_one():
    rng = random.Random(23)
    for _ in range(12):
        d = random_mixed(rng, rng.randrange(2, 5), 0, rng.randrange(1, 7))
        r_all = exact.Requirement.uniform(d.n, 1)
        a = exact.min_deorientations(d, exact.Strong(1))
        b = exact.min_deorientations(d, r_all)
        assert a.status == b.status
        if a.feasible:
            assert a.optimum == b.optimum


def test_min_deorientations_matches_subset_oracle():
    rng = random.Random(29)
    checked = 0
    while checked < 20:
        d = random_mixed(rng, rng.randrange(3, 6), 0, rng.randrange(2, 8))
        for target in (exact.Strong(1), exact.Strong(2), exact.ArcStrong(1), exact.ArcStrong(2)):
            res = exact.min_deorientations(d, target)
            brute = None
            for r in range(d.m_arcs + 1):
                for combo in itertools.combinations(range(d.m_arcs), r):
                    if exact.meets_target(d.deorient_arcs(combo), target):
                        brute = r
                        break
                if brute is not None:
                    break
            if res.feasible:
                assert res.optimum == brute
                applied = d.deorient_arcs(res.witness)
                assert exact.meets_target(applied, target)
            else:
                assert brute is None
        checked += 1


def test_min_deorientations_infeasible():
    d = MixedGraph.digraph(4, [(0, 1), (2, 3)])  # disconnected underlying graph
    assert not exact.min_deorientations(d, exact.Strong(1)).feasible
    assert not exact.min_deorientations(directed_cycle(4), exact.Strong(4)).feasible
    assert not exact.min_deorientations(directed_cycle(4), exact.ArcStrong(3)).feasible
    # deorienting everything leaves the undirected cycle, which is 2-arc-strong
    res = exact.min_deorientations(directed_cycle(4), exact.ArcStrong(2))
    assert res.feasible and res.optimum == 4


def test_min_deorientations_monotone_in_target():
    rng = random.Random(31)
    for _ in range(10):
        d = random_mixed(rng, 4, 0, rng.randrange(4, 9))
        prev = 0
        for k in (1, 2):
            res = exact.min_deorientations(d, exact.ArcStrong(k))
            if not res.feasible:
                break
            assert res.optimum >= prev
            prev = res.optimum


# -- doubling ----------------------------------------------------------------------


def test_min_doubling_examples():
    assert exact.min_doubling(theta_graph(), 3).optimum == 0
    for n in (3, 4, 5, 6):
        res = exact.min_doubling(cycle(n), 3)
        assert res.optimum == n - 1
    res = exact.min_doubling(cycle(4), 4)
    assert res.optimum == 4


def test_min_doubling_subset_oracle():
    rng = random.Random(37)
    done = 0
    while done < 12:
        g = random_mixed(rng, rng.randrange(3, 6), rng.randrange(3, 8), 0)
        if conn.edge_connectivity(g) < 2:
            continue
        done += 1
        res = exact.min_doubling(g, 3)
        brute = min(
            len(f)
            for r in range(g.m_edges + 1)
            for f in itertools.combinations(range(g.m_edges), r)
            if conn.is_k_edge_connected(g.double_edges(f), 3)
        )
        assert res.optimum == brute
        assert conn.is_k_edge_connected(g.double_edges(res.witness), 3)


def test_min_doubling_weighted():
    g = cycle(3)
    res = exact.min_doubling(g, 3, weights=[1, 2, 3])
    assert res.optimum == 3
    assert res.witness == (0, 1)
    res = exact.min_doubling(g, 3, weights=[Fraction(1, 2), Fraction(1, 3), Fraction(5)])
    assert res.optimum == Fraction(5, 6)


def test_min_doubling_infeasible():
    path = MixedGraph.graph(3, [(0, 1), (1, 2)])
    assert not exact.min_doubling(path, 3).feasible


def test_min_doubling_vertex_condition():
    # double triangle sharing a vertex: 4EC reachable, vertex condition not
    g = MixedGraph.graph(
        5,
        [(0, 1), (0, 1), (1, 2), (1, 2), (0, 2), (0, 2),
         (2, 3), (2, 3), (3, 4), (3, 4), (2, 4), (2, 4)],
    )
    plain = exact.min_doubling(g, 4)
    assert plain.feasible
    cond = exact.min_doubling(g, 4, require_vertex_condition=True)
    assert not cond.feasible


def test_min_doubling_vertex_condition_oracle():
    rng = random.Random(41)
    done = 0
    while done < 8:
        g = random_mixed(rng, rng.randrange(3, 6), rng.randrange(4, 9), 0)
        if conn.edge_connectivity(g) < 2:
            continue
        done += 1
        res = exact.min_doubling(g, 4, require_vertex_condition=True)

        def good(h):
            if not conn.is_k_edge_connected(h, 4):
                return False
            return all(
                conn.is_k_edge_connected(h.delete_vertices([v])[0], 2)
                for v in range(h.n)
            )

        brute = None
        for r in range(g.m_edges + 1):
            for f in itertools.combinations(range(g.m_edges), r):
                if good(g.double_edges(f)):
                    brute = r
                    break
            if brute is not None:
                break
        if res.feasible:
            assert res.optimum == brute
        else:
            assert brute is None


# -- partial orientations ------------------------------------------------------------


def test_max_partial_orientation_c4():
    res = exact.max_partial_orientation(cycle(4), exact.ArcStrong(2))
    assert res.optimum == 0
    # brute oracle over all 3^4 assignments
    best = -1
    for states in itertools.product((None, 0, 1), repeat=4):
        decisions = []
        for e, s in zip(cycle(4).edges, states):
            if s is None:
                decisions.append(None)
            else:
                decisions.append((e.u, e.v) if s == 0 else (e.v, e.u))
        from reorient.core import PartialOrientation

        m = PartialOrientation(cycle(4), tuple(decisions)).realized()
        if conn.is_k_arc_strong(m, 2):
            best = max(best, sum(1 for d in decisions if d))
    assert best == 0


def test_max_partial_orientation_fully_orientable():
    g = complete_graph(5)  # 4-edge-connected, so a 2-arc-strong orientation exists
    res = exact.max_partial_orientation(g, exact.ArcStrong(2))
    assert res.optimum == g.m_edges
    m = res.witness.realized()
    assert conn.is_k_arc_strong(m, 2)


def test_max_partial_orientation_infeasible():
    path = MixedGraph.graph(3, [(0, 1), (1, 2)])
    assert not exact.max_partial_orientation(path, exact.ArcStrong(2)).feasible


def test_max_partial_orientation_strong_target():
    g = complete_graph(5)
    res = exact.max_partial_orientation(g, exact.Strong(2))
    assert res.feasible
    m = res.witness.realized()
    assert conn.is_k_strong(m, 2)


def test_max_partial_orientation_cap():
    g = MixedGraph.graph(4, [(0, 1)] * 11)
    with pytest.raises(SizeCapError):
        exact.max_partial_orientation(g, exact.ArcStrong(2))


# -- covers, sat, orientations --------------------------------------------------------


def test_vertex_cover_examples():
    assert exact.vertex_cover(cycle(4)).optimum == 2
    assert exact.vertex_cover(complete_graph(4)).optimum == 3
    res = exact.vertex_cover(MixedGraph.graph(5, [(0, 1), (0, 2), (0, 3), (0, 4)]))
    assert res.optimum == 1 and res.witness == (0,)


def test_vertex_cover_random_oracle():
    rng = random.Random(43)
    for _ in range(15):
        g = random_mixed(rng, rng.randrange(2, 6), rng.randrange(0, 8), 0)
        res = exact.vertex_cover(g)
        brute = min(
            len(s)
            for r in range(g.n + 1)
            for s in itertools.combinations(range(g.n), r)
            if all(e.u in s or e.v in s for e in g.edges)
        )
        assert res.optimum == brute
        assert all(e.u in res.witness or e.v in res.witness for e in g.edges)


def test_max2sat_degenerate_forms():
    # tautological clause (x or not x) and a repeated-literal clause
    sat = exact.SatInstance(1, ((1, -1), (1, 1)))
    res = exact.max2sat(sat)
    assert res.optimum == 2 and res.witness == (True,)
    sat2 = exact.SatInstance(2, ((1, 2), (-1, -2), (1, -2)))
    res2 = exact.max2sat(sat2)
    brute = max(
        sat2.satisfied_count(a)
        for a in itertools.product((False, True), repeat=2)
    )
    assert res2.optimum == brute == 3


def test_lco_tree_infeasible():
    tree = MixedGraph.graph(3, [(0, 1), (1, 2)])
    req = exact.Requirement({(0, 2): 1, (2, 0): 1})
    assert not exact.best_orientation_for_requirement(tree, req).feasible


def test_lco_cycle_feasible():
    req = exact.Requirement.uniform(4, 1)
    res = exact.best_orientation_for_requirement(cycle(4), req)
    assert res.feasible
    d = MixedGraph.digraph(4, res.witness)
    assert conn.is_strong(d)


# -- witness revalidation ----------------------------------------------------------


def test_witnesses_revalidate():
    rng = random.Random(47)
    for _ in range(10):
        d = random_mixed(rng, 4, 0, rng.randrange(3, 9))
        for target in (exact.Strong(1), exact.ArcStrong(1)):
            res = exact.min_deorientations(d, target)
            if res.feasible:
                assert exact.meets_target(d.deorient_arcs(res.witness), target)
                assert len(res.witness) == res.optimum
        ug = d.underlying_graph()
        if conn.edge_connectivity(ug) >= 2:
            res = exact.min_doubling(ug, 3)
            assert conn.is_k_edge_connected(ug.double_edges(res.witness), 3)
            assert len(res.witness) == res.optimum


def test_i2vcomg_referee():
    # a 4-edge-connected graph orients 2-arc-strongly
    g = cycle(4).double_edges(range(4))
    res = exact.i2vcomg(g, [])
    assert res.feasible
    d = MixedGraph.digraph(g.n, res.witness)
    assert conn.is_k_arc_strong(d, 2)
    # C4 has no 2-arc-strong orientation
    assert not exact.i2vcomg(cycle(4), []).feasible
    with pytest.raises(GraphError):
        exact.i2vcomg(cycle(4), [0, 1])
