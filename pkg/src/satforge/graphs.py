"""Immutable simple graphs on dense integer vertex ids, with bitset adjacency.

Every graph lives on vertices 0..n-1.  Adjacency is kept as one Python int
per vertex (bit u of rows[v] set iff uv is an edge), which keeps the hot
algorithms (BFS layers, neighbourhood intersections) down to a few big-int
operations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

INFINITE = math.inf


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph; immutable and safe to share across workers."""

    n: int
    rows: tuple[int, ...]

    @cached_property
    def edge_count(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def neighbors(self, v: int) -> Iterator[int]:
        return iter_bits(self.rows[v])

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            for v in iter_bits(self.rows[u] >> (u + 1) << (u + 1)):
                yield (u, v)

    def non_edges(self) -> Iterator[tuple[int, int]]:
        """Non-adjacent unordered pairs, ascending."""
        full = (1 << self.n) - 1
        for u in range(self.n):
            missing = full & ~self.rows[u] & ~((1 << (u + 1)) - 1)
            for v in iter_bits(missing):
                yield (u, v)

    def add_edge(self, u: int, v: int) -> "Graph":
        if u == v:
            raise ValueError(f"self-loop at vertex {u}")
        rows = list(self.rows)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        return Graph(self.n, tuple(rows))

    def degree_sequence(self) -> tuple[int, ...]:
        return tuple(sorted((r.bit_count() for r in self.rows), reverse=True))


def iter_bits(mask: int) -> Iterator[int]:
    """Indices of set bits, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def build_graph(order: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Graph on 0..order-1 with the given edges (duplicates collapsed)."""
    if order < 0:
        raise ValueError("order must be >= 0")
    rows = [0] * order
    for u, v in edges:
        if u == v:
            raise ValueError(f"self-loop at vertex {u}")
        if not (0 <= u < order and 0 <= v < order):
            raise ValueError(f"edge ({u},{v}) has an endpoint outside 0..{order - 1}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(order, tuple(rows))


def empty_graph(n: int) -> Graph:
    return build_graph(n, [])


def complete_graph(n: int) -> Graph:
    return build_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def path_graph(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    """Vertex-disjoint union; g2's vertices are shifted up by |g1|."""
    shift = g1.n
    rows = list(g1.rows) + [r << shift for r in g2.rows]
    return Graph(g1.n + g2.n, tuple(rows))


def join(g1: Graph, g2: Graph) -> Graph:
    """Disjoint union plus every edge between the two sides."""
    shift = g1.n
    left_mask = (1 << shift) - 1
    right_mask = ((1 << g2.n) - 1) << shift
    rows = [r | right_mask for r in g1.rows]
    rows += [(r << shift) | left_mask for r in g2.rows]
    return Graph(g1.n + g2.n, tuple(rows))


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Graph:
    """Subgraph induced on the given vertices, relabelled in ascending order."""
    keep = sorted(set(vertices))
    pos = {v: i for i, v in enumerate(keep)}
    edges = [
        (pos[u], pos[v]) for u, v in g.edges() if u in pos and v in pos
    ]
    return build_graph(len(keep), edges)


def delete_vertex(g: Graph, v: int) -> Graph:
    return induced_subgraph(g, (u for u in range(g.n) if u != v))


def full_mask(n: int) -> int:
    return (1 << n) - 1


def component_masks(g: Graph, mask: int | None = None) -> list[int]:
    """Connected components (as bitmasks) within mask, ascending by least vertex."""
    todo = full_mask(g.n) if mask is None else mask
    rows = g.rows
    out = []
    while todo:
        seed = todo & -todo
        comp = seed
        frontier = seed
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= rows[v]
            frontier = nxt & todo & ~comp
            comp |= frontier
        out.append(comp)
        todo &= ~comp
    return out


def connected_components(g: Graph) -> list[list[int]]:
    """Vertex partition into components, ascending by minimum vertex."""
    return [list(iter_bits(m)) for m in component_masks(g)]


def bfs_levels(g: Graph, src: int, mask: int) -> list[int]:
    """Frontier bitmasks by distance from src, restricted to mask."""
    rows = g.rows
    seen = 1 << src
    frontier = seen
    levels = [frontier]
    while True:
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= rows[v]
        frontier = nxt & mask & ~seen
        if not frontier:
            return levels
        seen |= frontier
        levels.append(frontier)


def distances_from(g: Graph, src: int, mask: int | None = None) -> list[int]:
    """Distance from src to every vertex (-1 if unreachable or outside mask)."""
    m = full_mask(g.n) if mask is None else mask
    dist = [-1] * g.n
    for d, level in enumerate(bfs_levels(g, src, m)):
        for v in iter_bits(level):
            dist[v] = d
    return dist


def distance_matrix(g: Graph, mask: int | None = None) -> list[list[int]]:
    m = full_mask(g.n) if mask is None else mask
    return [
        distances_from(g, v, m) if (m >> v) & 1 else [-1] * g.n
        for v in range(g.n)
    ]


def diameter(g: Graph) -> int | float:
    """Largest pairwise distance; INFINITE when disconnected, 0 for order <= 1."""
    if g.n <= 1:
        return 0
    comps = component_masks(g)
    if len(comps) > 1:
        return INFINITE
    best = 0
    for v in range(g.n):
        levels = bfs_levels(g, v, full_mask(g.n))
        best = max(best, len(levels) - 1)
    return best


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(component_masks(g)) == 1


def is_tree(g: Graph) -> bool:
    return g.n >= 1 and is_connected(g) and g.edge_count == g.n - 1


def is_forest(g: Graph) -> bool:
    return all(
        induced_mask_edge_count(g, m) == m.bit_count() - 1 for m in component_masks(g)
    )


def induced_mask_edge_count(g: Graph, mask: int) -> int:
    return sum((g.rows[v] & mask).bit_count() for v in iter_bits(mask)) // 2


# ---------------------------------------------------------------------------
# graph6 (bit-exact standard encoding) and plain edge-list text
# ---------------------------------------------------------------------------


def _g6_size_bytes(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126, (n >> 12) + 63, ((n >> 6) & 63) + 63, (n & 63) + 63])
    raise ValueError("graph6 supports at most 258047 vertices here")


def graph6_encode(g: Graph) -> bytes:
    """Standard graph6 bytes for g (upper triangle in column order)."""
    n = g.n
    out = bytearray(_g6_size_bytes(n))
    bits = 0
    nbits = 0
    for v in range(1, n):
        col = g.rows[v]
        for u in range(v):
            bits = (bits << 1) | (col >> u & 1)
            nbits += 1
            if nbits == 6:
                out.append(bits + 63)
                bits = nbits = 0
    if nbits:
        out.append((bits << (6 - nbits)) + 63)
    return bytes(out)


def graph6_decode(data: bytes | str) -> Graph:
    """Inverse of graph6_encode; raises ValueError on malformed input."""
    if isinstance(data, str):
        data = data.encode("ascii")
    data = data.strip()
    if data.startswith(b">>graph6<<"):
        data = data[10:]
    if not data:
        raise ValueError("empty graph6 string")
    vals = [b - 63 for b in data]
    if any(v < 0 or v > 63 for v in vals):
        raise ValueError("graph6 byte out of range")
    if vals[0] == 63:
        if len(vals) < 4:
            raise ValueError("truncated graph6 header")
        n = (vals[1] << 12) | (vals[2] << 6) | vals[3]
        body = vals[4:]
    else:
        n = vals[0]
        body = vals[1:]
    need = (n * (n - 1) // 2 + 5) // 6
    if len(body) != need:
        raise ValueError(f"graph6 body has {len(body)} bytes, expected {need}")
    edges = []
    idx = 0
    for v in range(1, n):
        for u in range(v):
            if body[idx // 6] >> (5 - idx % 6) & 1:
                edges.append((u, v))
            idx += 1
    if body and idx % 6 and body[-1] & ((1 << (6 - idx % 6)) - 1):
        raise ValueError("graph6 padding bits are not zero")
    return build_graph(n, edges)


def write_edgelist(g: Graph) -> str:
    """Plain text: 'n m' header then one 'u v' line per edge."""
    lines = [f"{g.n} {g.edge_count}"]
    lines += [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def parse_edgelist(text: str) -> Graph:
    rows = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not rows or len(rows[0]) != 2:
        raise ValueError("edge list must start with an 'n m' header line")
    n, m = int(rows[0][0]), int(rows[0][1])
    edges = [(int(a), int(b)) for a, b in rows[1:]]
    if len(edges) != m:
        raise ValueError(f"header promises {m} edges, found {len(edges)}")
    return build_graph(n, edges)
