import itertools
import random

import pytest

from satforge.constructions import make_g0, make_star, make_t1k
from satforge.graphs import (
    build_graph,
    complete_graph,
    cycle_graph,
    disjoint_union,
    empty_graph,
    join,
    path_graph,
)
from satforge.saturation import (
    Clique,
    DisjointUnion,
    ForbiddenFamily,
    JoinK1,
    Path,
    check_saturated,
    contains_member,
    creates_member,
    member_witness_ok,
    parse_family,
    saturation_gap,
)


def random_graph(rng, n, p=0.4):
    return build_graph(
        n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    )


class TestFamilyParsing:
    def test_round_trip(self):
        for text in ("K3", "P10", "K3,P10", "K3+P10", "K1*[2,3]", "K1*[2,2],P4"):
            fam = parse_family(text)
            assert str(fam) == text
            assert parse_family(str(fam)) == fam

    def test_structure(self):
        fam = parse_family("K3+P10")
        assert fam.members == (DisjointUnion((Clique(3), Path(10))),)
        fam = parse_family("K1*[2,3]")
        assert fam.members == (JoinK1((2, 3)),)

    def test_validation(self):
        with pytest.raises(ValueError):
            parse_family("K1")
        with pytest.raises(ValueError):
            parse_family("P1")
        with pytest.raises(ValueError):
            parse_family("K1*[1]")
        with pytest.raises(ValueError):
            parse_family("")
        with pytest.raises(ValueError):
            parse_family("Q7")


class TestContainsMember:
    def test_layered_tree_is_free(self):
        assert contains_member(make_t1k(10), parse_family("K3,P10")) is None

    def test_k4_has_triangle(self):
        w = contains_member(complete_graph(4), parse_family("K3"))
        assert w.parts == ((0, 1, 2),)

    def test_g0_is_union_free(self):
        assert contains_member(make_g0(100, 10), parse_family("K3+P10")) is None

    def test_first_member_wins(self):
        g = complete_graph(4)
        w = contains_member(g, parse_family("P3,K3"))
        assert w.kind == "path"
        w = contains_member(g, parse_family("K3,P3"))
        assert w.kind == "clique"

    def test_witness_validates(self):
        rng = random.Random(19)
        fams = [parse_family(t) for t in ("K3", "P4", "P2+P2", "K3+P3", "K1*[2,2]")]
        for _ in range(60):
            g = random_graph(rng, rng.randrange(3, 9), 0.5)
            for fam in fams:
                w = contains_member(g, fam)
                if w is None:
                    continue
                member = next(
                    m for m in fam.members if contains_member(g, ForbiddenFamily((m,)))
                )
                assert member_witness_ok(g, member, w)


class TestCheckSaturated:
    def test_layered_tree(self):
        assert check_saturated(make_t1k(10), parse_family("K3,P10")).is_saturated

    def test_c6_missing_long_chord(self):
        v = check_saturated(cycle_graph(6), parse_family("K3"))
        assert v.status == "missing_edge" and v.missing_edge == (0, 3)

    def test_star_saturated(self):
        assert check_saturated(make_star(10), parse_family("K3,P10")).is_saturated

    def test_contains_member_verdict(self):
        v = check_saturated(complete_graph(4), parse_family("K3"))
        assert v.status == "contains_member"
        assert member_witness_ok(complete_graph(4), Clique(3), v.witness)

    def test_complete_graph_vacuous(self):
        assert check_saturated(complete_graph(3), parse_family("K4")).is_saturated

    def test_family_order_invariance(self):
        rng = random.Random(29)
        members = (Clique(3), Path(5))
        for _ in range(30):
            g = random_graph(rng, 7, 0.35)
            verdicts = {
                check_saturated(g, ForbiddenFamily(perm)).status
                for perm in itertools.permutations(members)
            }
            assert len(verdicts) == 1

    def test_saturated_graphs_recreate_on_random_nonedges(self):
        fam = parse_family("K3,P10")
        g = make_t1k(10)
        rng = random.Random(37)
        pairs = list(g.non_edges())
        for u, v in rng.sample(pairs, min(100, len(pairs))):
            assert creates_member(g, fam, u, v)

    def test_threads_do_not_change_verdict(self):
        g = cycle_graph(6)
        fam = parse_family("K3")
        assert (
            check_saturated(g, fam, threads=2).missing_edge
            == check_saturated(g, fam).missing_edge
        )
        sat = make_star(9)
        assert check_saturated(sat, parse_family("K3"), threads=2).is_saturated


class TestSaturationGap:
    def test_saturated_tree_has_empty_gap(self):
        assert saturation_gap(make_t1k(10), parse_family("K3,P10")) == []

    def test_p5_gap_nonempty(self):
        gap = saturation_gap(path_graph(5), parse_family("K3,P10"))
        assert gap and gap[0] == (0, 3)

    def test_star_plus_tree_composite(self):
        g = disjoint_union(make_star(5), make_t1k(10))
        gap = saturation_gap(g, parse_family("K3,P10"))
        assert gap  # cross edges from star leaves reach too little

    def test_rejects_member_containing_graph(self):
        with pytest.raises(ValueError):
            saturation_gap(complete_graph(4), parse_family("K3"))


class TestScanEquivalence:
    """The structure-aware scans must agree with the generic detector scan."""

    def _generic_failures(self, g, fam):
        out = []
        for u, v in g.non_edges():
            if contains_member(g.add_edge(u, v), fam) is None:
                out.append((u, v))
        return out

    def test_forest_fast_path_matches_generic(self):
        rng = random.Random(43)
        for _ in range(40):
            n = rng.randrange(4, 12)
            comps = []
            left = n
            while left > 2:
                size = rng.randrange(2, left + 1)
                comps.append(size)
                left -= size
            g = empty_graph(left)
            for size in comps:
                g = disjoint_union(
                    g, build_graph(size, [(rng.randrange(0, v), v) for v in range(1, size)])
                )
            k = rng.choice([4, 5, 6])
            fam = parse_family(f"K3,P{k}")
            if contains_member(g, fam) is not None:
                continue
            assert saturation_gap(g, fam) == self._generic_failures(g, fam)

    def test_union_fast_path_matches_generic(self):
        rng = random.Random(47)
        checked = 0
        for _ in range(80):
            g = random_graph(rng, rng.randrange(5, 10), rng.choice([0.15, 0.3]))
            k = rng.choice([3, 4, 5])
            fam = parse_family(f"K3+P{k}")
            if contains_member(g, fam) is not None:
                continue
            checked += 1
            assert saturation_gap(g, fam) == self._generic_failures(g, fam), g
        assert checked >= 10


class TestJoinDuality:
    def test_hub_join_saturation_matches_base(self):
        # over every class of order <= 6
        from satforge.search import enumerate_graphs

        fam_join = parse_family("K1*[2,2]")
        fam_base = parse_family("P2+P2")
        for n in range(1, 7):
            for h in enumerate_graphs(n):
                lhs = check_saturated(join(empty_graph(1), h), fam_join).is_saturated
                rhs = check_saturated(h, fam_base).is_saturated
                assert lhs == rhs, h
