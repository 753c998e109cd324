"""Immutable simple graphs on at most 64 vertices with bitset adjacency rows.

Vertex ``i`` is bit ``1 << i``. Every neighbourhood computation is integer
set algebra on those rows, so a graph is just its order plus a tuple of ints.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

MAX_ORDER = 64
GRAPH6_MAX_ORDER = 62


class GraphError(ValueError):
    """Raised for malformed graph construction or serialization input."""


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Graph:
    """A simple undirected graph; ``adj[v]`` is the neighbour bitset of ``v``."""

    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_ORDER:
            raise GraphError(f"order must be in 1..{MAX_ORDER}, got {self.n}")
        if len(self.adj) != self.n:
            raise GraphError("adjacency length does not match order")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise GraphError(f"vertex {v} has a neighbour outside 0..{self.n - 1}")
            if row >> v & 1:
                raise GraphError(f"self-loop at vertex {v}")
            for u in iter_bits(row):
                if not self.adj[u] >> v & 1:
                    raise GraphError(f"asymmetric adjacency between {v} and {u}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        if not 1 <= n <= MAX_ORDER:
            raise GraphError(f"order must be in 1..{MAX_ORDER}, got {n}")
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def m(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.adj[v]))

    def closed_neighborhood(self, v: int) -> int:
        return self.adj[v] | (1 << v)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        """Edges as pairs ``(u, v)`` with ``u < v``, sorted."""
        return [(u, v) for u in range(self.n) for v in iter_bits(self.adj[u] >> (u + 1) << (u + 1))]

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, g6={to_graph6(self).decode('ascii')!r})"


def circulant(n: int, offsets: Iterable[int]) -> Graph:
    """Circulant graph: ``i ~ j`` iff ``(j - i) mod n`` or ``(i - j) mod n`` is an offset."""
    offs = set(offsets)
    if n < 3:
        raise GraphError("circulant graphs need n >= 3")
    if not offs:
        raise GraphError("offset set must be nonempty")
    for k in offs:
        if not 1 <= k <= n - 1:
            raise GraphError(f"offset {k} outside 1..{n - 1}")
    rows = [0] * n
    for i in range(n):
        for k in offs:
            for j in ((i + k) % n, (i - k) % n):
                rows[i] |= 1 << j
    return Graph(n, tuple(rows))


def cycle(n: int) -> Graph:
    return circulant(n, {1})


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~(1 << v) for v in range(n)))


def empty(n: int) -> Graph:
    return Graph(n, (0,) * n)


def star(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def g13() -> Graph:
    """The 13-vertex 4-regular circulant with offsets {1, 5, 8, 12}."""
    return circulant(13, {1, 5, 8, 12})


def disjoint_union(*graphs: Graph) -> Graph:
    rows: list[int] = []
    shift = 0
    for g in graphs:
        rows.extend(row << shift for row in g.adj)
        shift += g.n
    return Graph(shift, tuple(rows))


def add_edges(g: Graph, edges: Iterable[tuple[int, int]]) -> Graph:
    return Graph.from_edges(g.n, list(g.edges()) + list(edges))


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Return the graph with vertex ``v`` renamed to ``perm[v]``."""
    rows = [0] * g.n
    for v in range(g.n):
        row = 0
        for u in iter_bits(g.adj[v]):
            row |= 1 << perm[u]
        rows[perm[v]] = row
    return Graph(g.n, tuple(rows))


def complement(g: Graph) -> Graph:
    full = g.vertex_mask
    return Graph(g.n, tuple(full & ~row & ~(1 << v) for v, row in enumerate(g.adj)))


def induced_subgraph(g: Graph, vertices: int | Iterable[int]) -> tuple[Graph, list[int]]:
    """Induced subgraph on ``vertices`` (a bitset or iterable), relabelled 0..k-1.

    Returns the subgraph and ``mapping`` with ``mapping[new] = old``.
    """
    mask = vertices if isinstance(vertices, int) else mask_of(vertices)
    mapping = list(iter_bits(mask & g.vertex_mask))
    if not mapping:
        raise GraphError("induced subgraph must keep at least one vertex")
    index = {old: new for new, old in enumerate(mapping)}
    rows = []
    for old in mapping:
        row = 0
        for u in iter_bits(g.adj[old] & mask):
            row |= 1 << index[u]
        rows.append(row)
    return Graph(len(mapping), tuple(rows)), mapping


def delete_vertices(g: Graph, removed: int | Iterable[int]) -> tuple[Graph, list[int]]:
    """``G \\ S``: the subgraph induced by the vertices outside ``removed``."""
    mask = removed if isinstance(removed, int) else mask_of(removed)
    keep = g.vertex_mask & ~mask
    if not keep:
        raise GraphError("cannot delete every vertex")
    return induced_subgraph(g, keep)


def component_masks(adj: Sequence[int], vertices: int) -> list[int]:
    """Connected components of the subgraph induced by the bitset ``vertices``."""
    comps = []
    rest = vertices
    while rest:
        seed = rest & -rest
        comp = seed
        frontier = seed
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= adj[v]
            frontier = nxt & rest & ~comp
            comp |= frontier
        comps.append(comp)
        rest &= ~comp
    return comps


def components(g: Graph) -> list[tuple[Graph, list[int]]]:
    """Connected components as (subgraph, mapping new->old), ordered by least vertex."""
    return [induced_subgraph(g, c) for c in component_masks(g.adj, g.vertex_mask)]


def is_connected(g: Graph) -> bool:
    return len(component_masks(g.adj, g.vertex_mask)) == 1


def is_triangle_free(g: Graph) -> bool:
    for u in range(g.n):
        higher = g.adj[u] >> (u + 1) << (u + 1)
        for v in iter_bits(higher):
            if g.adj[u] & g.adj[v]:
                return False
    return True


def find_triangle(g: Graph) -> tuple[int, int, int] | None:
    for u in range(g.n):
        for v in iter_bits(g.adj[u] >> (u + 1) << (u + 1)):
            common = g.adj[u] & g.adj[v]
            if common:
                return (u, v, (common & -common).bit_length() - 1)
    return None


def degree_sequence(g: Graph) -> list[int]:
    return [row.bit_count() for row in g.adj]


def degree_stats(g: Graph) -> tuple[int, int, list[int]]:
    """(minimum degree, maximum degree, per-vertex degrees)."""
    degs = degree_sequence(g)
    return min(degs), max(degs), degs


def bridges(g: Graph) -> list[tuple[int, int]]:
    """Bridges by iterative DFS low-link, as sorted ``(u, v)`` pairs with ``u < v``."""
    disc = [-1] * g.n
    low = [0] * g.n
    found = []
    clock = 0
    for root in range(g.n):
        if disc[root] >= 0:
            continue
        disc[root] = low[root] = clock
        clock += 1
        stack = [(root, -1, iter_bits(g.adj[root]))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] < 0:
                    disc[w] = low[w] = clock
                    clock += 1
                    stack.append((w, v, iter_bits(g.adj[w])))
                    advanced = True
                    break
                if w != parent:
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if parent >= 0:
                low[parent] = min(low[parent], low[v])
                if low[v] > disc[parent]:
                    found.append((min(parent, v), max(parent, v)))
    return sorted(found)


def cut_vertices(adj: Sequence[int], n: int) -> int:
    """Bitset of articulation points of a graph given by its rows."""
    disc = [-1] * n
    low = [0] * n
    cuts = 0
    clock = 0
    for root in range(n):
        if disc[root] >= 0:
            continue
        disc[root] = low[root] = clock
        clock += 1
        root_children = 0
        stack = [(root, -1, iter_bits(adj[root]))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] < 0:
                    disc[w] = low[w] = clock
                    clock += 1
                    stack.append((w, v, iter_bits(adj[w])))
                    advanced = True
                    break
                if w != parent:
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if parent >= 0:
                low[parent] = min(low[parent], low[v])
                if parent == root:
                    root_children += 1
                elif low[v] >= disc[parent]:
                    cuts |= 1 << parent
        if root_children > 1:
            cuts |= 1 << root
    return cuts


# graph6 ---------------------------------------------------------------------


def to_graph6(g: Graph) -> bytes:
    if g.n > GRAPH6_MAX_ORDER:
        raise GraphError(f"graph6 encoding supports n <= {GRAPH6_MAX_ORDER}")
    bits = [g.adj[i] >> j & 1 for j in range(1, g.n) for i in range(j)]
    bits.extend([0] * (-len(bits) % 6))
    out = bytearray([g.n + 63])
    for k in range(0, len(bits), 6):
        value = 0
        for b in bits[k:k + 6]:
            value = value << 1 | b
        out.append(value + 63)
    return bytes(out)


def from_graph6(text: bytes | str) -> Graph:
    data = text.encode("ascii") if isinstance(text, str) else bytes(text)
    data = data.rstrip(b"\r\n")
    if data.startswith(b">>graph6<<"):
        data = data[len(b">>graph6<<"):]
    if not data:
        raise GraphError("empty graph6 string")
    if any(not 63 <= c <= 126 for c in data):
        raise GraphError("graph6 byte outside the printable range 63..126")
    n = data[0] - 63
    if n == 63:
        raise GraphError("extended graph6 headers (n > 62) are not supported")
    if n < 1:
        raise GraphError("graph6 order must be at least 1")
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = data[1:]
    if len(body) != nbytes:
        kind = "truncated" if len(body) < nbytes else "trailing bytes in"
        raise GraphError(f"{kind} graph6 body: expected {nbytes} bytes, got {len(body)}")
    value = 0
    for c in body:
        value = value << 6 | (c - 63)
    pad = nbytes * 6 - nbits
    if value & ((1 << pad) - 1):
        raise GraphError("nonzero graph6 padding bits")
    value >>= pad
    rows = [0] * n
    k = nbits - 1
    for j in range(1, n):
        for i in range(j):
            if value >> k & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k -= 1
    return Graph(n, tuple(rows))
