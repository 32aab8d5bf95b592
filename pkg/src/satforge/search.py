"""Isomorph-free enumeration of small graphs and trees, brute-force
saturation numbers, and exhaustive tree scans.

Free trees come from the classical successor algorithm on canonical rooted
level sequences, filtered to centre rootings so each free tree appears
exactly once.  Graphs come from canonical augmentation: children of a
canonical parent are deduplicated per parent by canonical code, and a child
survives only when its new vertex sits in the canonical-deletion orbit, so
every class is produced exactly once across all parents.  Both streams are
deterministic and shardable by index.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterator, Sequence

from .canon import canonical_form, canonical_last_vertex, same_orbit
from .constructions import make_small_tree, make_t0k, make_t1k
from .graphs import Graph, build_graph, graph6_decode, graph6_encode
from .patterns import subtree_contains
from .saturation import (
    Clique,
    ForbiddenFamily,
    Path,
    check_saturated,
)

DEFAULT_TREE_BUDGET = 22
DEFAULT_GRAPH_BUDGET = 8


class BudgetExceededError(ValueError):
    """Requested order is over the enumeration cap."""


class NoSaturatedGraphError(RuntimeError):
    """No saturated graph of the requested order exists."""


def _env_budget(key: str, default: int) -> int:
    """Budget caps, overridable via SATFORGE_BUDGET.

    Accepts either a bare integer (applied to both caps) or a comma list of
    key=value entries with keys `trees` and `graphs`.
    """
    raw = os.environ.get("SATFORGE_BUDGET")
    if not raw:
        return default
    raw = raw.strip()
    if raw.isdigit():
        return int(raw)
    for item in raw.split(","):
        if "=" not in item:
            raise ValueError(f"bad SATFORGE_BUDGET entry {item!r}")
        name, _, value = item.partition("=")
        if name.strip() == key:
            return int(value)
    return default


def tree_budget() -> int:
    return _env_budget("trees", DEFAULT_TREE_BUDGET)


def graph_budget() -> int:
    return _env_budget("graphs", DEFAULT_GRAPH_BUDGET)


# ---------------------------------------------------------------------------
# free trees via canonical rooted level sequences
# ---------------------------------------------------------------------------


def _rooted_level_sequences(n: int) -> Iterator[list[int]]:
    """All canonical rooted trees on n vertices as level sequences
    (root level 1, children non-increasing), in decreasing lex order."""
    if n < 1:
        return
    levels = list(range(1, n + 1))
    while True:
        yield levels
        p = -1
        for i in range(n - 1, -1, -1):
            if levels[i] > 2:
                p = i
                break
        if p < 0:
            return
        q = p - 1
        while levels[q] != levels[p] - 1:
            q -= 1
        period = p - q
        nxt = levels[:p]
        for i in range(p, n):
            nxt.append(nxt[i - period])
        levels = nxt


def _free_tree_info(levels: list[int]) -> tuple[bool, int]:
    """(is this rooted sequence the canonical rooting of its free tree,
    diameter of that free tree).

    Unicentral trees are accepted at their centre (at least two principal
    subtrees of full height); bicentral trees at the centre endpoint whose
    half dominates the other half lexicographically.
    """
    n = len(levels)
    if n == 1:
        return True, 0
    h = max(levels)
    starts = [i for i in range(1, n) if levels[i] == 2]
    ends = starts[1:] + [n]
    reach = [max(levels[s:e]) for s, e in zip(starts, ends)]
    deep = sum(1 for r in reach if r == h)
    if deep >= 2:
        return True, 2 * (h - 1)
    # bicentral candidate: the first (tallest) subtree is the other half
    second = max(reach[1:], default=1)
    if second != h - 1:
        return False, 0
    half_b = [x - 1 for x in levels[starts[0] : ends[0]]]
    half_a = [1] + levels[ends[0] :]
    if half_a >= half_b:
        return True, 2 * h - 3
    return False, 0


def _levels_to_graph(levels: Sequence[int]) -> Graph:
    """Preorder level sequence to a tree; vertex ids follow preorder."""
    n = len(levels)
    edges = []
    chain = [0] * (max(levels) + 1)
    for i in range(1, n):
        lvl = levels[i]
        edges.append((chain[lvl - 1], i))
        chain[lvl] = i
    return build_graph(n, edges)


def _iter_free_trees(n: int) -> Iterator[tuple[list[int], int]]:
    """(level sequence, diameter) per free tree on n vertices."""
    for levels in _rooted_level_sequences(n):
        ok, diam = _free_tree_info(levels)
        if ok:
            yield levels, diam


def write_graph6_stream(graphs: Iterator[Graph] | Sequence[Graph], path: str) -> int:
    """Spill a stream to a file, one graph6 class per line; returns count."""
    count = 0
    with open(path, "wb") as fh:
        for g in graphs:
            fh.write(graph6_encode(g) + b"\n")
            count += 1
    return count


def read_graph6_stream(path: str) -> Iterator[Graph]:
    with open(path, "rb") as fh:
        for line in fh:
            line = line.strip()
            if line:
                yield graph6_decode(line)


def enumerate_trees(n: int, shards: int = 1, shard: int = 0) -> Iterator[Graph]:
    """One representative per isomorphism class of free trees on n vertices.

    Deterministic order; with shards > 1 only every shards-th tree (offset
    `shard`) of the same global stream is yielded.
    """
    if not 1 <= n <= tree_budget():
        raise BudgetExceededError(f"tree order {n} outside 1..{tree_budget()}")
    if not 0 <= shard < shards:
        raise ValueError("need 0 <= shard < shards")
    for i, (levels, _) in enumerate(_iter_free_trees(n)):
        if i % shards == shard:
            yield _levels_to_graph(levels)


# ---------------------------------------------------------------------------
# graphs via canonical augmentation
# ---------------------------------------------------------------------------


def _augmented(parent: Graph, neighborhood: int) -> Graph:
    rows = [r for r in parent.rows]
    new_row = neighborhood
    for v in range(parent.n):
        if (neighborhood >> v) & 1:
            rows[v] |= 1 << parent.n
    rows.append(new_row)
    return Graph(parent.n + 1, tuple(rows))


def _children(parent: Graph) -> list[Graph]:
    """Canonical children of a canonical parent, one per child class."""
    seen: set[bytes] = set()
    out: list[Graph] = []
    m = parent.n
    for subset in range(1 << m):
        child = _augmented(parent, subset)
        code = canonical_form(child)
        if code in seen:
            continue
        seen.add(code)
        if same_orbit(child, m, canonical_last_vertex(child)):
            out.append(child)
    return out


def _graph_level(n: int) -> list[Graph]:
    level = [build_graph(1, [])]
    for _ in range(n - 1):
        level = [child for parent in level for child in _children(parent)]
    return level


def enumerate_graphs(n: int, shards: int = 1, shard: int = 0) -> Iterator[Graph]:
    """One representative per isomorphism class of graphs on n vertices."""
    if not 1 <= n <= graph_budget():
        raise BudgetExceededError(f"graph order {n} outside 1..{graph_budget()}")
    if not 0 <= shard < shards:
        raise ValueError("need 0 <= shard < shards")
    if n == 1:
        if shard == 0:
            yield build_graph(1, [])
        return
    parents = _graph_level(n - 1)
    i = 0
    for parent in parents:
        for child in _children(parent):
            if i % shards == shard:
                yield child
            i += 1


# ---------------------------------------------------------------------------
# brute-force saturation numbers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BruteForceResult:
    value: int
    witnesses: tuple[bytes, ...]  # graph6 of every minimum saturated class
    classes_examined: int


def sat_bruteforce(n: int, fam: ForbiddenFamily) -> BruteForceResult:
    """Minimum edge count over all fam-saturated graphs of order n, with all
    minimum witnesses, by exhausting the canonical catalogue."""
    best: int | None = None
    witnesses: list[bytes] = []
    examined = 0
    for g in enumerate_graphs(n):
        examined += 1
        if best is not None and g.edge_count > best:
            continue
        if check_saturated(g, fam).is_saturated:
            if best is None or g.edge_count < best:
                best = g.edge_count
                witnesses = [graph6_encode(g)]
            elif g.edge_count == best:
                witnesses.append(graph6_encode(g))
    if best is None:
        raise NoSaturatedGraphError(f"no {fam}-saturated graph of order {n}")
    return BruteForceResult(best, tuple(sorted(witnesses)), examined)


# ---------------------------------------------------------------------------
# saturated-tree scans
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TreeWitness:
    graph6: bytes
    order: int
    is_star: bool
    contains: tuple[tuple[str, bool], ...]  # per claimed pattern

    def contains_any(self) -> bool:
        return any(flag for _, flag in self.contains)


@dataclass(frozen=True)
class ScanReport:
    orders: tuple[int, ...]
    k: int
    exclude_stars: bool
    prefilter: bool
    trees_scanned: int
    trees_checked: int
    saturated_count: int
    min_edges: int | None
    witnesses: tuple[TreeWitness, ...]
    pattern_names: tuple[str, ...]

    def to_json_dict(self) -> dict:
        return {
            "orders": list(self.orders),
            "k": self.k,
            "exclude_stars": self.exclude_stars,
            "prefilter": self.prefilter,
            "trees_scanned": self.trees_scanned,
            "trees_checked": self.trees_checked,
            "saturated_count": self.saturated_count,
            "min_edges": self.min_edges,
            "pattern_names": list(self.pattern_names),
            "witnesses": [
                {
                    "graph6": w.graph6.decode("ascii"),
                    "order": w.order,
                    "is_star": w.is_star,
                    "contains": {name: flag for name, flag in w.contains},
                }
                for w in self.witnesses
            ],
        }


def claimed_patterns(k: int) -> list[tuple[str, Graph]]:
    """Containment targets recorded for saturated non-star trees."""
    if k == 5:
        return [("T1", make_small_tree("T1"))]
    if k == 6:
        return [("T2", make_small_tree("T2")), ("T3", make_small_tree("T3"))]
    if k == 7:
        return [("T0_7", make_t0k(7))]
    patterns = [(f"T0_{k}", make_t0k(k))]
    if k >= 8:
        patterns.append((f"T1_{k}", make_t1k(k)))
    return patterns


def _k3_pk(k: int) -> ForbiddenFamily:
    return ForbiddenFamily((Clique(3), Path(k)))


def scan_saturated_trees(
    orders: Sequence[int],
    k: int,
    exclude_stars: bool = True,
    prefilter: bool = True,
    shards: int = 1,
    shard: int = 0,
) -> ScanReport:
    """Saturation-scan all free trees of the given orders against
    {triangle, k-path}; saturated trees are reported with containment flags
    against the claimed minimum trees.

    The prefilter keeps only diameters k-3 and k-2 (plus stars, which have
    diameter 2); an audit run with prefilter=False checks every tree.
    """
    if k < 5:
        raise ValueError("scan needs k >= 5")
    cap = tree_budget()
    orders = tuple(sorted(orders))
    if not orders or orders[0] < 1 or orders[-1] > cap:
        raise BudgetExceededError(f"orders must sit inside 1..{cap}")
    fam = _k3_pk(k)
    patterns = claimed_patterns(k)
    scanned = checked = sat_count = 0
    witnesses: list[TreeWitness] = []
    index = 0
    for n in orders:
        for levels, diam in _iter_free_trees(n):
            index += 1
            if (index - 1) % shards != shard:
                continue
            scanned += 1
            is_star = n <= 2 or diam <= 2
            if exclude_stars and is_star:
                continue
            if prefilter and not is_star and diam not in (k - 3, k - 2):
                continue
            tree = _levels_to_graph(levels)
            checked += 1
            if not check_saturated(tree, fam).is_saturated:
                continue
            sat_count += 1
            flags = tuple(
                (name, subtree_contains(tree, pat) is not None)
                for name, pat in patterns
            )
            witnesses.append(
                TreeWitness(graph6_encode(tree), n, is_star, flags)
            )
    min_edges = min((w.order - 1 for w in witnesses), default=None)
    return ScanReport(
        orders=orders,
        k=k,
        exclude_stars=exclude_stars,
        prefilter=prefilter,
        trees_scanned=scanned,
        trees_checked=checked,
        saturated_count=sat_count,
        min_edges=min_edges,
        witnesses=tuple(witnesses),
        pattern_names=tuple(name for name, _ in patterns),
    )


def merge_scan_reports(reports: Sequence[ScanReport]) -> ScanReport:
    """Combine shard reports of one scan into the single-run report."""
    if not reports:
        raise ValueError("nothing to merge")
    base = reports[0]
    for r in reports[1:]:
        if (r.orders, r.k, r.exclude_stars, r.prefilter) != (
            base.orders,
            base.k,
            base.exclude_stars,
            base.prefilter,
        ):
            raise ValueError("shard reports disagree on scan parameters")
    witnesses = tuple(
        sorted(
            (w for r in reports for w in r.witnesses),
            key=lambda w: (w.order, w.graph6),
        )
    )
    return ScanReport(
        orders=base.orders,
        k=base.k,
        exclude_stars=base.exclude_stars,
        prefilter=base.prefilter,
        trees_scanned=sum(r.trees_scanned for r in reports),
        trees_checked=sum(r.trees_checked for r in reports),
        saturated_count=sum(r.saturated_count for r in reports),
        min_edges=min((r.min_edges for r in reports if r.min_edges is not None), default=None),
        witnesses=witnesses,
        pattern_names=base.pattern_names,
    )


def min_saturated_tree_order(k: int, search_cap: int) -> tuple[int, Graph]:
    """Smallest order admitting a non-star saturated tree, with a witness."""
    if k < 5:
        raise ValueError("needs k >= 5")
    if search_cap > tree_budget():
        raise BudgetExceededError(f"cap {search_cap} over budget {tree_budget()}")
    fam = _k3_pk(k)
    for n in range(2, search_cap + 1):
        for levels, diam in _iter_free_trees(n):
            if diam <= 2 or diam not in (k - 3, k - 2):
                continue
            tree = _levels_to_graph(levels)
            if check_saturated(tree, fam).is_saturated:
                return n, tree
    raise NoSaturatedGraphError(
        f"no non-star saturated tree of order <= {search_cap} for k={k}"
    )
