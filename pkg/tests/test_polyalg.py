import itertools
import random
from fractions import Fraction

from reorient import connectivity as conn
from reorient import exact, polyalg
from reorient.core import MixedGraph

from util import cycle, directed_cycle, random_mixed


# -- strong partial orientation ---------------------------------------------------


def test_robbins_c4_full():
    res = polyalg.robbins_partial_orientation(cycle(4), 4)
    assert res.feasible
    m = res.witness.realized()
    assert m.m_arcs == 4 and conn.is_strong(m)


def test_robbins_bound_reported():
    g = MixedGraph.graph(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (2, 3)])
    res = polyalg.robbins_partial_orientation(g, 7)
    assert not res.feasible and res.optimum == 6


def test_robbins_zero_is_identity():
    g = MixedGraph.graph(4, [(0, 1), (1, 2), (2, 3)])
    res = polyalg.robbins_partial_orientation(g, 0)
    assert res.feasible and res.witness.oriented_count == 0
    assert conn.is_strong(res.witness.realized())


def test_robbins_disconnected():
    g = MixedGraph.graph(4, [(0, 1), (2, 3)])
    assert not polyalg.robbins_partial_orientation(g, 0).feasible


def test_robbins_every_feasible_k_strong():
    rng = random.Random(3)
    done = 0
    while done < 10:
        g = random_mixed(rng, rng.randrange(2, 6), rng.randrange(1, 9), 0)
        if not conn.is_connected(g):
            continue
        done += 1
        bound = g.m_edges - len(conn.bridges(g))
        for k in range(bound + 1):
            res = polyalg.robbins_partial_orientation(g, k)
            assert res.feasible
            m = res.witness.realized()
            assert res.witness.oriented_count == k
            assert conn.is_strong(m)
        assert not polyalg.robbins_partial_orientation(g, bound + 1).feasible


# -- cactus quotient + doubling to 3-edge-connectivity ------------------------------


def test_quotient_trivial_when_3ec():
    g = cycle(4).double_edges(range(4))  # 4-edge-connected
    res = polyalg.w23eda(g)
    assert res.optimum == 0 and res.witness == ()
    assert polyalg.cactus_quotient(g).quotient.n == 1


def test_w23eda_c5():
    assert polyalg.w23eda(cycle(5)).optimum == 4


def test_w23eda_weighted_triangle():
    res = polyalg.w23eda(cycle(3), weights=[1, 2, 3])
    assert res.optimum == 3 and res.witness == (0, 1)


def test_w23eda_infeasible():
    assert not polyalg.w23eda(MixedGraph.graph(3, [(0, 1), (1, 2)])).feasible


def is_cactus(g):
    return all(
        conn.local_edge_connectivity(g, u, v) == 2
        for u in range(g.n)
        for v in range(u + 1, g.n)
    )


def test_quotient_is_cactus_and_has_degree_two_vertex():
    rng = random.Random(11)
    done = 0
    while done < 15:
        g = random_mixed(rng, rng.randrange(3, 8), rng.randrange(4, 12), 0)
        if conn.edge_connectivity(g) < 2:
            continue
        done += 1
        cq = polyalg.cactus_quotient(g)
        if cq.quotient.n > 1:
            assert is_cactus(cq.quotient)
            assert any(
                cq.quotient.edge_degree(v) == 2 for v in range(cq.quotient.n)
            )


def test_cactus_doubling_connectivity_criterion():
    # on a cactus: doubling F 3-connects iff (V, F) spans and connects
    from reorient.generators import random_cactus

    for seed in range(6):
        g = random_cactus(6, seed)
        assert is_cactus(g)
        for r in range(min(g.m_edges, 6) + 1):
            for f in itertools.combinations(range(g.m_edges), r):
                doubled = g.double_edges(f)
                member = MixedGraph.graph(g.n, [g.edges[i].pair() for i in f])
                assert conn.is_k_edge_connected(doubled, 3) == conn.is_connected(
                    member
                ) or g.n == 1


def test_w23eda_matches_exact_doubling():
    rng = random.Random(13)
    done = 0
    while done < 10:
        g = random_mixed(rng, rng.randrange(3, 7), rng.randrange(4, 9), 0)
        if conn.edge_connectivity(g) < 2:
            continue
        done += 1
        weights = [Fraction(rng.randrange(1, 6), rng.choice((1, 2))) for _ in range(g.m_edges)]
        fast = polyalg.w23eda(g, weights)
        slow = exact.min_doubling(g, 3, weights)
        assert fast.optimum == slow.optimum


# -- degree deorientation -------------------------------------------------------------


def test_degree_deorientation_examples():
    assert polyalg.degree_deorientation(directed_cycle(3), 1).optimum == 0
    res = polyalg.degree_deorientation(directed_cycle(3), 2)
    assert res.optimum == 3
    # out-star: the center lacks in-capability and every leaf lacks
    # out-capability until its arc is deoriented, so all three must go
    star = MixedGraph.digraph(4, [(0, 1), (0, 2), (0, 3)])
    assert polyalg.degree_deorientation(star, 1).optimum == 3


def degree_ok(m, k):
    for v in range(m.n):
        und = m.edge_degree(v)
        if min(m.out_degree(v) + und, m.in_degree(v) + und) < k:
            return False
    return True


def test_degree_deorientation_matches_brute():
    rng = random.Random(17)
    for _ in range(25):
        d = random_mixed(rng, rng.randrange(2, 6), 0, rng.randrange(1, 8))
        for k in (1, 2):
            res = polyalg.degree_deorientation(d, k)
            brute = None
            for r in range(d.m_arcs + 1):
                for f in itertools.combinations(range(d.m_arcs), r):
                    if degree_ok(d.deorient_arcs(f), k):
                        brute = r
                        break
                if brute is not None:
                    break
            if res.feasible:
                assert res.optimum == brute
                assert degree_ok(d.deorient_arcs(res.witness), k)
            else:
                assert brute is None


# -- branching packings ---------------------------------------------------------------


def test_packing_k1_is_min_arborescence():
    d = MixedGraph.digraph(4, [(0, 1), (0, 2), (1, 3), (2, 3), (1, 2)])
    res = polyalg.min_weight_branching_packing(d, 1, 0, [2, 1, 3, 1, 1])
    assert res.feasible
    (tree,) = res.witness.branchings
    assert len(tree) == 3
    # brute force: all arc subsets of size n-1 reaching everybody
    best = None
    for combo in itertools.combinations(range(d.m_arcs), 3):
        sub = MixedGraph(4, (), tuple(d.arcs[i] for i in combo))
        if all(v == 0 or conn.local_arc_connectivity(sub, 0, v) >= 1 for v in range(4)):
            w = sum([2, 1, 3, 1, 1][i] for i in combo)
            best = w if best is None else min(best, w)
    assert res.optimum == best


def test_packing_bidirected_triangle():
    bt = MixedGraph.digraph(3, [(0, 1), (1, 0), (1, 2), (2, 1), (0, 2), (2, 0)])
    res = polyalg.min_weight_branching_packing(bt, 2, 0, [1] * 6)
    assert res.optimum == 4
    b1, b2 = res.witness.branchings
    assert not (set(b1) & set(b2))


def test_packing_infeasible_certificate():
    path = MixedGraph.digraph(3, [(0, 1), (1, 2)])
    res = polyalg.min_weight_branching_packing(path, 2, 0)
    assert not res.feasible
    side = res.witness
    outs = sum(1 for a in path.arcs if a.tail in side and a.head not in side)
    assert 0 in side and outs < 2


def test_packing_validates_by_flow():
    rng = random.Random(19)
    done = 0
    while done < 8:
        d = random_mixed(rng, rng.randrange(3, 6), 0, rng.randrange(5, 12))
        k = rng.choice((1, 2))
        res = polyalg.min_weight_branching_packing(d, k, 0)
        if not res.feasible:
            continue
        done += 1
        packing = res.witness
        ids = [i for b in packing.branchings for i in b]
        assert len(ids) == len(set(ids)) == k * (d.n - 1)
        for b in packing.branchings:
            sub = MixedGraph(d.n, (), tuple(d.arcs[i] for i in b))
            for v in range(d.n):
                assert sub.in_degree(v) == (0 if v == 0 else 1)
            assert all(
                v == 0 or conn.local_arc_connectivity(sub, 0, v) >= 1
                for v in range(d.n)
            )
        union = MixedGraph(d.n, (), tuple(d.arcs[i] for i in ids))
        for v in range(1, d.n):
            assert conn.local_arc_connectivity(union, 0, v) >= k


def test_packing_in_direction():
    d = MixedGraph.digraph(3, [(1, 0), (2, 1), (0, 2), (2, 0)])
    res = polyalg.min_weight_branching_packing(d, 1, 0, direction="in")
    assert res.feasible
    (tree,) = res.witness.branchings
    sub = MixedGraph(3, (), tuple(d.arcs[i] for i in tree))
    for v in range(1, 3):
        assert conn.local_arc_connectivity(sub, v, 0) >= 1
        assert sub.out_degree(v) == 1
    assert sub.out_degree(0) == 0


def test_packing_weight_optimal_vs_brute():
    rng = random.Random(23)
    done = 0
    while done < 6:
        d = random_mixed(rng, 4, 0, rng.randrange(6, 10))
        k = 2
        weights = [Fraction(rng.randrange(0, 4)) for _ in range(d.m_arcs)]
        res = polyalg.min_weight_branching_packing(d, k, 0, weights)
        size = k * (d.n - 1)
        best = None
        for combo in itertools.combinations(range(d.m_arcs), size):
            sub = MixedGraph(d.n, (), tuple(d.arcs[i] for i in combo))
            if all(
                v == 0 or conn.local_arc_connectivity(sub, 0, v) >= k
                for v in range(d.n)
            ):
                w = sum((weights[i] for i in combo), Fraction(0))
                best = w if best is None else min(best, w)
        if res.feasible:
            assert best is not None and res.optimum == best
            done += 1
        else:
            assert best is None


# -- deorientation 2-approximation ------------------------------------------------------


def test_2approx_zero_on_strong():
    assert polyalg.deor_k_arc_2approx(directed_cycle(3), 1).optimum == 0


def test_2approx_path():
    path = MixedGraph.digraph(3, [(0, 1), (1, 2)])
    res = polyalg.deor_k_arc_2approx(path, 1, 0)
    assert res.feasible
    assert set(res.witness) == {0, 1}
    opt = exact.min_deorientations(path, exact.ArcStrong(1))
    assert opt.optimum == 2  # ratio 1 here


def test_2approx_guarantee_sampled():
    rng = random.Random(29)
    done = 0
    while done < 15:
        d = random_mixed(rng, rng.randrange(3, 6), 0, rng.randrange(4, 10))
        k = rng.choice((1, 2))
        if conn.edge_connectivity(d.underlying_graph()) < k:
            assert not polyalg.deor_k_arc_2approx(d, k).feasible
            continue
        done += 1
        res = polyalg.deor_k_arc_2approx(d, k)
        assert res.feasible
        assert conn.is_k_arc_strong(d.deorient_arcs(res.witness), k)
        opt = exact.min_deorientations(d, exact.ArcStrong(k))
        assert opt.feasible and len(res.witness) <= 2 * opt.optimum


# -- doubling wrapper -----------------------------------------------------------------


def test_m4eda_already_connected():
    g = cycle(4).double_edges(range(4))
    assert polyalg.m4eda_approx(g).witness == ()


def test_m4eda_c4_forced():
    res = polyalg.m4eda_approx(cycle(4))
    assert res.optimum == 4 and res.witness == (0, 1, 2, 3)
    brute = exact.min_doubling(cycle(4), 4)
    assert brute.optimum == 4


def test_m4eda_exact_plug_matches_optimum():
    rng = random.Random(31)
    done = 0
    while done < 10:
        g = random_mixed(rng, rng.randrange(3, 7), rng.randrange(4, 10), 0)
        if conn.edge_connectivity(g) < 2:
            continue
        done += 1
        res = polyalg.m4eda_approx(g)
        assert conn.is_k_edge_connected(g.double_edges(res.witness), 4)
        brute = exact.min_doubling(g, 4)
        assert res.optimum == brute.optimum


def test_m4eda_requires_2ec():
    assert not polyalg.m4eda_approx(MixedGraph.graph(3, [(0, 1), (1, 2)])).feasible
