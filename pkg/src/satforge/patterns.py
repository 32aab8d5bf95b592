"""Exact detectors for the forbidden patterns and tree-structure tools.

All detectors explore vertices in ascending id order, so returned witnesses
are deterministic and usable as golden test fixtures.  Path existence is
decided exactly: tree components by diameter, components with few independent
cycles by branching over cycle-edge deletions (every simple path misses at
least one edge of any fixed cycle), and dense leftovers by depth-first
backtracking with reachability pruning.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .graphs import (
    Graph,
    component_masks,
    distance_matrix,
    full_mask,
    is_tree,
    iter_bits,
)

MAX_DFS_COMPONENT = 256
MAX_CYCLE_RANK_FOR_DELETION = 12


@dataclass(frozen=True)
class Witness:
    """Concrete vertex embedding certifying a pattern occurrence."""

    kind: str
    parts: tuple[tuple[int, ...], ...]

    def vertices(self) -> tuple[int, ...]:
        return tuple(v for part in self.parts for v in part)


def _is_path_in(g: Graph, seq: Sequence[int]) -> bool:
    return all(g.has_edge(seq[i], seq[i + 1]) for i in range(len(seq) - 1))


def witness_ok(g: Graph, w: Witness) -> bool:
    """Structural validity: distinct vertices, all claimed edges present."""
    verts = w.vertices()
    if len(set(verts)) != len(verts):
        return False
    if any(not 0 <= v < g.n for v in verts):
        return False
    if w.kind == "clique":
        (cl,) = w.parts
        return all(g.has_edge(u, v) for i, u in enumerate(cl) for v in cl[i + 1 :])
    if w.kind == "path":
        (seq,) = w.parts
        return _is_path_in(g, seq)
    if w.kind == "clique_path":
        cl, seq = w.parts
        return all(
            g.has_edge(u, v) for i, u in enumerate(cl) for v in cl[i + 1 :]
        ) and _is_path_in(g, seq)
    if w.kind == "linear_forest":
        return all(_is_path_in(g, seq) for seq in w.parts)
    if w.kind == "join_k1":
        (hub,) = w.parts[0]
        return all(
            _is_path_in(g, seq) and all(g.has_edge(hub, v) for v in seq)
            for seq in w.parts[1:]
        )
    if w.kind in ("subtree", "disjoint_union"):
        # per-part edge checks need the pattern shapes; the callers that
        # know them (subtree_contains, member_witness_ok) do the rest
        return True
    return False


# ---------------------------------------------------------------------------
# cliques
# ---------------------------------------------------------------------------


def iter_cliques(g: Graph, p: int, mask: int | None = None) -> Iterator[tuple[int, ...]]:
    """All p-cliques within mask, in ascending lexicographic order."""
    if p < 1:
        raise ValueError("clique order must be >= 1")
    m = full_mask(g.n) if mask is None else mask
    rows = g.rows

    def extend(chosen: list[int], cand: int) -> Iterator[tuple[int, ...]]:
        if len(chosen) == p:
            yield tuple(chosen)
            return
        if len(chosen) + cand.bit_count() < p:
            return
        for v in iter_bits(cand):
            chosen.append(v)
            yield from extend(chosen, cand & rows[v] & ~((1 << (v + 1)) - 1))
            chosen.pop()

    yield from extend([], m)


def has_clique(g: Graph, p: int) -> Witness | None:
    """Lexicographically least p-clique, or None."""
    for cl in iter_cliques(g, p):
        return Witness("clique", (cl,))
    return None


# ---------------------------------------------------------------------------
# exact path existence
# ---------------------------------------------------------------------------


def _farthest_from(rows: Sequence[int], src: int, mask: int) -> tuple[int, int]:
    """(smallest farthest vertex, distance) within mask."""
    seen = 1 << src
    frontier = seen
    dist = 0
    last = frontier
    while True:
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= rows[v]
        frontier = nxt & mask & ~seen
        if not frontier:
            break
        seen |= frontier
        last = frontier
        dist += 1
    return (last & -last).bit_length() - 1, dist


def _shortest_path(rows: Sequence[int], a: int, b: int, mask: int) -> list[int]:
    """Shortest a..b path, smallest-id tie-breaks (a and b must be connected)."""
    dist = {a: 0}
    frontier = 1 << a
    seen = frontier
    d = 0
    while not (seen >> b) & 1:
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= rows[v]
        frontier = nxt & mask & ~seen
        d += 1
        for v in iter_bits(frontier):
            dist[v] = d
        seen |= frontier
    path = [b]
    cur = b
    while cur != a:
        step = dist[cur] - 1
        for u in iter_bits(rows[cur] & mask):
            if dist.get(u) == step:
                path.append(u)
                cur = u
                break
    path.reverse()
    return path


def _tree_diameter_path(rows: Sequence[int], comp: int) -> list[int]:
    """A longest path of a tree component (deterministic double sweep)."""
    src = (comp & -comp).bit_length() - 1
    a, _ = _farthest_from(rows, src, comp)
    b, _ = _farthest_from(rows, a, comp)
    return _shortest_path(rows, min(a, b), max(a, b), comp)


def _find_cycle_edges(rows: Sequence[int], comp: int) -> list[tuple[int, int]]:
    """Edges of one cycle in the component (deterministic DFS)."""
    start = (comp & -comp).bit_length() - 1
    parent = {start: -1}
    stack = [start]
    order = []
    while stack:
        v = stack.pop()
        order.append(v)
        for u in iter_bits(rows[v] & comp):
            if u == parent[v]:
                continue
            if u in parent:
                # back edge v-u closes a cycle through the parent chain
                chain_v = []
                x = v
                while x != -1:
                    chain_v.append(x)
                    x = parent[x]
                anc = set(chain_v)
                chain_u = []
                x = u
                while x not in anc:
                    chain_u.append(x)
                    x = parent[x]
                meet = x
                cyc = chain_v[: chain_v.index(meet) + 1] + chain_u[::-1]
                return [(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc))]
            parent[u] = v
            stack.append(u)
    raise AssertionError("no cycle in a component with cycle rank > 0")


def _lp_component(rows: list[int], comp: int, k: int, seen_removed: set, removed: frozenset) -> list[int] | None:
    size = comp.bit_count()
    if size < k:
        return None
    m = sum((rows[v] & comp).bit_count() for v in iter_bits(comp)) // 2
    rank = m - size + 1
    if rank == 0:
        path = _tree_diameter_path(rows, comp)
        return path if len(path) >= k else None
    if rank <= MAX_CYCLE_RANK_FOR_DELETION:
        for u, v in _find_cycle_edges(rows, comp):
            key = removed | {(min(u, v), max(u, v))}
            if key in seen_removed:
                continue
            seen_removed.add(key)
            rows2 = list(rows)
            rows2[u] &= ~(1 << v)
            rows2[v] &= ~(1 << u)
            # removing a cycle edge keeps the component connected
            res = _lp_component(rows2, comp, k, seen_removed, key)
            if res is not None:
                return res
        return None
    if size > MAX_DFS_COMPONENT:
        raise RuntimeError(
            f"path search budget exceeded: dense component of order {size}"
        )
    return _lp_dfs(rows, comp, k)


def _reachable(rows: Sequence[int], src_mask: int, mask: int) -> int:
    seen = src_mask & mask
    frontier = seen
    while frontier:
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= rows[v]
        frontier = nxt & mask & ~seen
        seen |= frontier
    return seen


def _lp_dfs(rows: Sequence[int], comp: int, k: int) -> list[int] | None:
    """First path with exactly k vertices, ascending exploration."""
    path: list[int] = []

    def extend(v: int, used: int) -> bool:
        path.append(v)
        if len(path) == k:
            return True
        free = comp & ~used
        reach = _reachable(rows, rows[v] & free, free)
        if len(path) + reach.bit_count() >= k:
            for u in iter_bits(rows[v] & free):
                if extend(u, used | (1 << u)):
                    return True
        path.pop()
        return False

    for s in iter_bits(comp):
        if extend(s, 1 << s):
            return path
    return None


def find_path_of_order(g: Graph, k: int, mask: int | None = None) -> list[int] | None:
    """A simple path on >= k vertices (full path returned), or None.  Exact."""
    if k < 1:
        raise ValueError("path order must be >= 1")
    m = full_mask(g.n) if mask is None else mask
    if k == 1:
        return [(m & -m).bit_length() - 1] if m else None
    rows = list(g.rows)
    for comp in component_masks(g, m):
        masked = [rows[v] & comp if (comp >> v) & 1 else 0 for v in range(g.n)]
        res = _lp_component(masked, comp, k, set(), frozenset())
        if res is not None:
            return res
    return None


def has_path_of_order(g: Graph, k: int) -> Witness | None:
    path = find_path_of_order(g, k)
    if path is None:
        return None
    return Witness("path", (tuple(path[:k]),))


def longest_path_from(g: Graph, v: int) -> Witness:
    """A maximum-order simple path starting at v (exact)."""
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range")
    comp = next(c for c in component_masks(g) if (c >> v) & 1)
    rows = [g.rows[u] & comp if (comp >> u) & 1 else 0 for u in range(g.n)]
    path = _lpf_component(rows, comp, v, set(), frozenset())
    return Witness("path", (tuple(path),))


def _lpf_component(rows: list[int], comp: int, v: int, seen_removed: set, removed: frozenset) -> list[int]:
    size = comp.bit_count()
    m = sum((rows[u] & comp).bit_count() for u in iter_bits(comp)) // 2
    rank = m - size + 1
    if rank == 0:
        far, _ = _farthest_from(rows, v, comp)
        return _shortest_path(rows, v, far, comp) if far != v else [v]
    if rank <= MAX_CYCLE_RANK_FOR_DELETION:
        best: list[int] = [v]
        for a, b in _find_cycle_edges(rows, comp):
            key = removed | {(min(a, b), max(a, b))}
            if key in seen_removed:
                continue
            seen_removed.add(key)
            rows2 = list(rows)
            rows2[a] &= ~(1 << b)
            rows2[b] &= ~(1 << a)
            cand = _lpf_component(rows2, comp, v, seen_removed, key)
            if len(cand) > len(best) or (len(cand) == len(best) and cand < best):
                best = cand
        return best
    if size > MAX_DFS_COMPONENT:
        raise RuntimeError(
            f"path search budget exceeded: dense component of order {size}"
        )
    best: list[int] = []

    def extend(u: int, used: int, cur: list[int]) -> None:
        nonlocal best
        cur.append(u)
        if len(cur) > len(best) or (len(cur) == len(best) and cur < best):
            best = list(cur)
        free = comp & ~used
        reach = _reachable(rows, rows[u] & free, free)
        if len(cur) + reach.bit_count() > len(best):
            for w in iter_bits(rows[u] & free):
                extend(w, used | (1 << w), cur)
        cur.pop()

    extend(v, 1 << v, [])
    return best


# ---------------------------------------------------------------------------
# composite patterns
# ---------------------------------------------------------------------------


def contains_disjoint_clique_path(g: Graph, p: int, k: int) -> Witness | None:
    """A K_p copy plus a vertex-disjoint path on >= k vertices, or None."""
    if p < 1 or k < 1:
        raise ValueError("pattern orders must be >= 1")
    m = full_mask(g.n)
    for cl in iter_cliques(g, p):
        used = 0
        for v in cl:
            used |= 1 << v
        path = find_path_of_order(g, k, m & ~used)
        if path is not None:
            return Witness("clique_path", (cl, tuple(path[:k])))
    return None


def _iter_paths_exact(g: Graph, order: int, mask: int) -> Iterator[tuple[int, ...]]:
    """Paths with exactly `order` vertices within mask (each once, ascending)."""
    rows = g.rows
    if order == 1:
        for v in iter_bits(mask):
            yield (v,)
        return

    def extend(seq: list[int], used: int) -> Iterator[tuple[int, ...]]:
        if len(seq) == order:
            if seq[0] < seq[-1]:
                yield tuple(seq)
            return
        for u in iter_bits(rows[seq[-1]] & mask & ~used):
            seq.append(u)
            yield from extend(seq, used | (1 << u))
            seq.pop()

    for s in iter_bits(mask):
        yield from extend([s], 1 << s)


def contains_linear_forest(g: Graph, orders: Sequence[int], mask: int | None = None) -> Witness | None:
    """Vertex-disjoint paths with the given orders, or None.  Exact."""
    if not orders or any(o < 1 for o in orders):
        raise ValueError("path orders must all be >= 1")
    m = full_mask(g.n) if mask is None else mask
    # search longest parts first, then restore the requested part order
    idx = sorted(range(len(orders)), key=lambda i: (-orders[i], i))
    placed: dict[int, tuple[int, ...]] = {}

    def place(i: int, free: int) -> bool:
        if i == len(idx):
            return True
        want = orders[idx[i]]
        for seq in _iter_paths_exact(g, want, free):
            used = 0
            for v in seq:
                used |= 1 << v
            placed[idx[i]] = seq
            if place(i + 1, free & ~used):
                return True
        placed.pop(idx[i], None)
        return False

    if not place(0, m):
        return None
    return Witness("linear_forest", tuple(placed[i] for i in range(len(orders))))


def contains_join_k1(g: Graph, orders: Sequence[int]) -> Witness | None:
    """A hub vertex whose neighbourhood hosts the given linear forest."""
    for v in range(g.n):
        if g.rows[v].bit_count() < sum(orders):
            continue
        w = contains_linear_forest(g, orders, mask=g.rows[v])
        if w is not None:
            return Witness("join_k1", ((v,),) + w.parts)
    return None


# ---------------------------------------------------------------------------
# subtree containment (tree-in-tree subgraph isomorphism)
# ---------------------------------------------------------------------------


def subtree_contains(host: Graph, pattern: Graph) -> Witness | None:
    """Embedding of the pattern tree into the host tree as a subgraph.

    Polynomial matching-based search: pattern vertex p (entered from its
    parent) maps onto host vertex h iff the pattern children of p can be
    matched into distinct host children of h, each match feasible
    recursively.
    """
    for name, t in (("host", host), ("pattern", pattern)):
        if not is_tree(t):
            raise ValueError(f"{name} is not a tree")
    if pattern.n > host.n:
        return None
    if pattern.n == 1:
        return Witness("subtree", ((0,),))

    memo: dict[tuple[int, int, int, int], bool] = {}

    def kids(g: Graph, v: int, parent: int) -> list[int]:
        return [u for u in g.neighbors(v) if u != parent]

    def emb(p: int, pp: int, h: int, hp: int) -> bool:
        key = (p, pp, h, hp)
        if key in memo:
            return memo[key]
        memo[key] = False  # cut (p,h) reentry; trees cannot actually recurse here
        pk = kids(pattern, p, pp)
        hk = kids(host, h, hp)
        ok = len(pk) <= len(hk) and _match(pk, hk, p, h) is not None
        memo[key] = ok
        return ok

    def _match(pk: list[int], hk: list[int], p: int, h: int) -> dict[int, int] | None:
        assign: dict[int, int] = {}
        taken: dict[int, int] = {}

        def augment(i: int, visited: set[int]) -> bool:
            for cand in hk:
                if cand in visited or not emb(pk[i], p, cand, h):
                    continue
                visited.add(cand)
                if cand not in taken or augment(taken[cand], visited):
                    taken[cand] = i
                    assign[pk[i]] = cand
                    return True
            return False

        for i in range(len(pk)):
            if not augment(i, set()):
                return None
        for cand, i in taken.items():
            assign[pk[i]] = cand
        return assign

    mapping = [-1] * pattern.n

    def extract(p: int, pp: int, h: int, hp: int) -> None:
        mapping[p] = h
        pk = kids(pattern, p, pp)
        hk = [c for c in kids(host, h, hp)]
        assign = _match(pk, hk, p, h)
        for child in pk:
            extract(child, p, assign[child], h)

    for h in range(host.n):
        if emb(0, -1, h, -1):
            extract(0, -1, h, -1)
            return Witness("subtree", (tuple(mapping),))
    return None


# ---------------------------------------------------------------------------
# layer decomposition
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LayerMap:
    """Per-vertex layer labels of a tree, measured from the middle of a
    deterministically chosen longest path."""

    layers: tuple[int, ...]
    reference_path: tuple[int, ...]

    def layer_sizes(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for layer in self.layers:
            out[layer] = out.get(layer, 0) + 1
        return out

    def max_layer(self) -> int:
        return max(self.layers)


def layer_decompose(t: Graph) -> LayerMap:
    """Layer labels: middle vertex/vertices of the lexicographically least
    longest path get layer 1; every other vertex gets 1 + its distance to
    that middle set."""
    if not is_tree(t):
        raise ValueError("layer decomposition needs a tree")
    dist = distance_matrix(t)
    d = max(max(row) for row in dist)
    if d < 2:
        raise ValueError("layer decomposition needs diameter >= 2")
    best: list[int] | None = None
    for a in range(t.n):
        if max(dist[a]) != d:
            continue
        if best is not None and a > best[0]:
            break
        for b in range(t.n):
            if dist[a][b] != d:
                continue
            path = _shortest_path(t.rows, a, b, full_mask(t.n))
            if best is None or path < best:
                best = path
    assert best is not None
    middle = (
        [best[d // 2]] if d % 2 == 0 else [best[(d - 1) // 2], best[(d + 1) // 2]]
    )
    layers = [1 + min(dist[m][v] for m in middle) for v in range(t.n)]
    return LayerMap(tuple(layers), tuple(best))
