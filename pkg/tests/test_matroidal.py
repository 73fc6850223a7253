import itertools
import random
from fractions import Fraction

from reorient.matroidal import (
    ForestUnionMatroid,
    PartitionMatroid,
    min_weight_common_independent,
)


def brute_forest_partition(n, endpoints, subset, k):
    """Can the subset be colored with k colors so each color is a forest?"""
    subset = list(subset)
    if not subset:
        return True

    def is_forest(ids):
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in ids:
            u, v = endpoints[e]
            ru, rv = find(u), find(v)
            if ru == rv:
                return False
            parent[ru] = rv
        return True

    for colors in itertools.product(range(k), repeat=len(subset)):
        groups = [[] for _ in range(k)]
        for e, c in zip(subset, colors):
            groups[c].append(e)
        if all(is_forest(g) for g in groups):
            return True
    return False


def test_forest_union_matches_brute():
    rng = random.Random(3)
    for _ in range(40):
        n = rng.randrange(3, 6)
        m = rng.randrange(1, 8)
        endpoints = []
        for _ in range(m):
            u = rng.randrange(n)
            v = rng.randrange(n - 1)
            if v >= u:
                v += 1
            endpoints.append((min(u, v), max(u, v)))
        k = rng.choice((1, 2))
        mat = ForestUnionMatroid(n, tuple(endpoints), k)
        subset = frozenset(e for e in range(m) if rng.random() < 0.6)
        assert mat.independent(subset) == brute_forest_partition(n, endpoints, subset, k)


def test_partition_matroid():
    mat = PartitionMatroid((0, 0, 1, 1, 1), (1, 2))
    assert mat.independent(frozenset({0, 2, 3}))
    assert not mat.independent(frozenset({0, 1}))
    assert not mat.independent(frozenset({2, 3, 4}))


def brute_min_common(m, m1, m2, weights, size):
    best = None
    for combo in itertools.combinations(range(m), size):
        s = frozenset(combo)
        if m1.independent(s) and m2.independent(s):
            w = sum(weights[e] for e in combo)
            if best is None or w < best:
                best = w
    return best


def test_weighted_intersection_matches_brute():
    rng = random.Random(9)
    for trial in range(25):
        n = rng.randrange(3, 5)
        m = rng.randrange(3, 9)
        endpoints = []
        for _ in range(m):
            u = rng.randrange(n)
            v = rng.randrange(n - 1)
            if v >= u:
                v += 1
            endpoints.append((min(u, v), max(u, v)))
        k = rng.choice((1, 2))
        m1 = ForestUnionMatroid(n, tuple(endpoints), k)
        caps = tuple(rng.randrange(0, 3) for _ in range(n))
        m2 = PartitionMatroid(tuple(e[0] for e in endpoints), caps)
        weights = [Fraction(rng.randrange(0, 5)) for _ in range(m)]
        chain = min_weight_common_independent(m, m1, m2, weights, m)
        for size, got in enumerate(chain):
            assert m1.independent(got) and m2.independent(got)
            assert len(got) == size
            expect = brute_min_common(m, m1, m2, weights, size)
            assert expect is not None
            assert sum((weights[e] for e in got), Fraction(0)) == expect
        # maximality: no common independent set of the next size exists
        assert brute_min_common(m, m1, m2, weights, len(chain)) is None
