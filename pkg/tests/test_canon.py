import itertools
import random

from satforge.canon import canonical_form, canonical_relabel, same_orbit
from satforge.graphs import (
    build_graph,
    complete_graph,
    disjoint_union,
    graph6_decode,
    path_graph,
)


def permuted(g, perm):
    return build_graph(g.n, [(perm[u], perm[v]) for u, v in g.edges()])


def all_labeled_graphs(n):
    pairs = list(itertools.combinations(range(n), 2))
    for bits in range(1 << len(pairs)):
        yield build_graph(n, [e for i, e in enumerate(pairs) if bits >> i & 1])


def test_equal_codes_for_relabelings():
    p4a = build_graph(4, [(0, 1), (1, 2), (2, 3)])
    p4b = build_graph(4, [(2, 0), (0, 3), (3, 1)])
    assert canonical_form(p4a) == canonical_form(p4b)


def test_distinct_codes_for_distinct_classes():
    p4 = path_graph(4)
    star = build_graph(4, [(0, 1), (0, 2), (0, 3)])
    assert canonical_form(p4) != canonical_form(star)


def test_order4_class_count():
    codes = {canonical_form(g) for g in all_labeled_graphs(4)}
    assert len(codes) == 11


def test_order5_class_count():
    codes = {canonical_form(g) for g in all_labeled_graphs(5)}
    assert len(codes) == 34


def test_code_decodes_to_member_of_class():
    g = build_graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)])
    back = graph6_decode(canonical_form(g))
    assert canonical_form(back) == canonical_form(g)


def test_permutation_invariance_random():
    rng = random.Random(5)
    for _ in range(40):
        n = rng.randrange(1, 9)
        g = build_graph(
            n,
            [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.4],
        )
        perm = list(range(n))
        rng.shuffle(perm)
        assert canonical_form(g) == canonical_form(permuted(g, perm))


def test_permutation_invariance_trees():
    # exercises the rooted-code path for trees, including bicentral ones
    rng = random.Random(9)
    for _ in range(40):
        n = rng.randrange(2, 16)
        edges = [(rng.randrange(0, v), v) for v in range(1, n)]
        g = build_graph(n, edges)
        perm = list(range(n))
        rng.shuffle(perm)
        assert canonical_form(g) == canonical_form(permuted(g, perm))


def test_disconnected_canonical_sorting():
    a = disjoint_union(path_graph(3), complete_graph(3))
    b = disjoint_union(complete_graph(3), path_graph(3))
    assert canonical_form(a) == canonical_form(b)


def test_canonical_relabel_preserves_class():
    g = build_graph(6, [(0, 3), (3, 1), (1, 4), (4, 2), (2, 5), (5, 0)])
    assert canonical_relabel(g).edge_count == g.edge_count
    assert canonical_form(canonical_relabel(g)) == canonical_form(g)


def brute_orbits(g):
    """Vertex orbit ids via explicit automorphism enumeration (oracle)."""
    n = g.n
    edges = {frozenset(e) for e in g.edges()}
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for perm in itertools.permutations(range(n)):
        if {frozenset((perm[u], perm[v])) for u, v in edges} == edges:
            for v in range(n):
                a, b = find(v), find(perm[v])
                if a != b:
                    parent[a] = b
    return [find(v) for v in range(n)]


def test_same_orbit_against_bruteforce():
    rng = random.Random(17)
    graphs = [
        build_graph(
            n,
            [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p],
        )
        for n, p in [(4, 0.3), (5, 0.4), (5, 0.7), (6, 0.3), (6, 0.5), (6, 0.9)]
    ]
    graphs.append(complete_graph(5))
    graphs.append(path_graph(6))
    for g in graphs:
        orb = brute_orbits(g)
        for u in range(g.n):
            for v in range(u + 1, g.n):
                assert same_orbit(g, u, v) == (orb[u] == orb[v]), (g, u, v)
