"""Exact solvers for matching, independence, clique and chromatic numbers.

Each solver returns a :class:`SolveWitness` whose certificate can be checked
against the graph in linear time; ``SolveWitness.check`` does exactly that.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .graph import Graph, GraphError, complement, component_masks, delete_vertices, iter_bits, is_connected

MATCHING = "matching"
INDEPENDENT_SET = "independent-set"
CLIQUE = "clique"
COLORING = "coloring"

CHROMATIC_MAX_ORDER = 20


class CertificateError(AssertionError):
    """A solver produced a certificate that does not validate."""


@dataclass(frozen=True)
class SolveWitness:
    """An invariant value together with a certificate.

    ``certificate`` is a tuple of edges for matchings, a sorted tuple of
    vertices for independent sets and cliques, and a per-vertex colour tuple
    for colourings.
    """

    kind: str
    value: int
    certificate: tuple

    def check(self, g: Graph) -> None:
        """Raise :class:`CertificateError` unless the certificate is valid for ``g``."""
        if self.kind == MATCHING:
            used = 0
            for u, v in self.certificate:
                if not g.has_edge(u, v):
                    raise CertificateError(f"({u}, {v}) is not an edge")
                if used >> u & 1 or used >> v & 1:
                    raise CertificateError("matching edges share a vertex")
                used |= 1 << u | 1 << v
            count = len(self.certificate)
        elif self.kind in (INDEPENDENT_SET, CLIQUE):
            verts = self.certificate
            if len(set(verts)) != len(verts):
                raise CertificateError("repeated vertex in certificate")
            for i, u in enumerate(verts):
                for v in verts[i + 1:]:
                    if g.has_edge(u, v) != (self.kind == CLIQUE):
                        raise CertificateError(f"pair ({u}, {v}) violates the {self.kind} property")
            count = len(verts)
        elif self.kind == COLORING:
            colors = self.certificate
            if len(colors) != g.n:
                raise CertificateError("colouring does not cover every vertex")
            for u, v in g.edges():
                if colors[u] == colors[v]:
                    raise CertificateError(f"edge ({u}, {v}) is monochromatic")
            count = len(set(colors))
        else:
            raise CertificateError(f"unknown witness kind {self.kind!r}")
        if count != self.value:
            raise CertificateError(f"certificate size {count} != value {self.value}")

    def to_dict(self) -> dict:
        return {"kind": self.kind, "value": self.value, "certificate": [list(c) if isinstance(c, tuple) else c for c in self.certificate]}


# Matching ------------------------------------------------------------------


def _greedy_mates(adj: Sequence[int], n: int) -> list[int]:
    mate = [-1] * n
    for v in sorted(range(n), key=lambda x: adj[x].bit_count()):
        if mate[v] >= 0:
            continue
        for u in iter_bits(adj[v]):
            if mate[u] < 0:
                mate[v], mate[u] = u, v
                break
    return mate


def _augment_from(nbrs: Sequence[Sequence[int]], mate: list[int], root: int) -> bool:
    """Search one augmenting path from the exposed vertex ``root`` (Edmonds).

    Blossoms are contracted implicitly through the ``base`` array. On success
    the path is flipped in ``mate`` and True is returned.
    """
    n = len(mate)
    parent = [-1] * n
    base = list(range(n))
    even = [False] * n
    even[root] = True
    queue = [root]
    head = 0

    def lca(a: int, b: int) -> int:
        seen = [False] * n
        while True:
            a = base[a]
            seen[a] = True
            if mate[a] < 0:
                break
            a = parent[mate[a]]
        while True:
            b = base[b]
            if seen[b]:
                return b
            b = parent[mate[b]]

    def mark(v: int, b: int, child: int, blossom: list[bool]) -> None:
        while base[v] != b:
            blossom[base[v]] = blossom[base[mate[v]]] = True
            parent[v] = child
            child = mate[v]
            v = parent[mate[v]]

    while head < len(queue):
        v = queue[head]
        head += 1
        for to in nbrs[v]:
            if base[v] == base[to] or mate[v] == to:
                continue
            if to == root or (mate[to] >= 0 and parent[mate[to]] >= 0):
                b = lca(v, to)
                blossom = [False] * n
                mark(v, b, to, blossom)
                mark(to, b, v, blossom)
                for i in range(n):
                    if blossom[base[i]]:
                        base[i] = b
                        if not even[i]:
                            even[i] = True
                            queue.append(i)
            elif parent[to] < 0:
                parent[to] = v
                if mate[to] < 0:
                    while to >= 0:
                        pv = parent[to]
                        nxt = mate[pv]
                        mate[to], mate[pv] = pv, to
                        to = nxt
                    return True
                even[mate[to]] = True
                queue.append(mate[to])
    return False


def _neighbor_lists(adj: Sequence[int]) -> list[list[int]]:
    return [list(iter_bits(row)) for row in adj]


def maximum_mates(g: Graph) -> list[int]:
    """Mate array of a maximum matching (``-1`` for exposed vertices)."""
    mate = _greedy_mates(g.adj, g.n)
    nbrs = _neighbor_lists(g.adj)
    for v in range(g.n):
        if mate[v] < 0 and g.adj[v]:
            _augment_from(nbrs, mate, v)
    return mate


def _mates_to_edges(mate: Sequence[int]) -> tuple[tuple[int, int], ...]:
    return tuple((v, u) for v, u in enumerate(mate) if v < u)


def max_matching(g: Graph) -> SolveWitness:
    edges = _mates_to_edges(maximum_mates(g))
    return SolveWitness(MATCHING, len(edges), edges)


def matching_number(g: Graph) -> int:
    return sum(1 for v in maximum_mates(g) if v >= 0) // 2


def has_perfect_matching(g: Graph) -> bool:
    return g.n % 2 == 0 and 2 * matching_number(g) == g.n


def inessential_vertices(g: Graph, mate: list[int] | None = None) -> int:
    """Bitset of vertices missed by at least one maximum matching.

    For a matched vertex ``v`` with mate ``u``, removing ``v`` leaves a matching
    one short of maximum; ``beta(G - v) == beta(G)`` iff an augmenting path
    starts at ``u`` in ``G - v``, so one search per vertex suffices.
    """
    if mate is None:
        mate = maximum_mates(g)
    missed = 0
    for v in range(g.n):
        u = mate[v]
        if u < 0:
            missed |= 1 << v
            continue
        keep = ~(1 << v)
        nbrs = [list(iter_bits(row & keep)) if w != v else [] for w, row in enumerate(g.adj)]
        trial = list(mate)
        trial[v] = trial[u] = -1
        if _augment_from(nbrs, trial, u):
            missed |= 1 << v
    return missed


def is_factor_critical(g: Graph) -> bool:
    if g.n % 2 == 0 or not is_connected(g):
        return False
    if g.n == 1:
        return True
    return all(has_perfect_matching(delete_vertices(g, 1 << v)[0]) for v in range(g.n))


# Independence / clique ------------------------------------------------------


def _max_independent_mask(adj: Sequence[int], vertices: int) -> int:
    """Maximum independent subset of the bitset ``vertices``.

    Branch and bound: vertices of residual degree <= 1 are taken greedily,
    otherwise branch on a maximum-degree vertex (lowest index on ties),
    first including it and deleting its closed neighbourhood, then excluding it.
    """
    best = [0, 0]

    def rec(cand: int, chosen: int, size: int) -> None:
        while True:
            if not cand:
                if size > best[1]:
                    best[0], best[1] = chosen, size
                return
            if size + cand.bit_count() <= best[1]:
                return
            pick = -1
            pick_deg = -1
            forced = -1
            for v in iter_bits(cand):
                d = (adj[v] & cand).bit_count()
                if d <= 1:
                    forced = v
                    break
                if d > pick_deg:
                    pick, pick_deg = v, d
            if forced < 0:
                break
            chosen |= 1 << forced
            size += 1
            cand &= ~(adj[forced] | 1 << forced)
        rec(cand & ~(adj[pick] | 1 << pick), chosen | 1 << pick, size + 1)
        rec(cand & ~(1 << pick), chosen, size)

    rec(vertices, 0, 0)
    return best[0]


def independent_set_mask(g: Graph, vertices: int | None = None) -> int:
    """Maximum independent set of ``G[vertices]`` as a bitset, solved per component."""
    if vertices is None:
        vertices = g.vertex_mask
    out = 0
    for comp in component_masks(g.adj, vertices):
        out |= _max_independent_mask(g.adj, comp)
    return out


def independence_number(g: Graph) -> SolveWitness:
    verts = tuple(iter_bits(independent_set_mask(g)))
    return SolveWitness(INDEPENDENT_SET, len(verts), verts)


def alpha(g: Graph, vertices: int | None = None) -> int:
    if vertices == 0:
        return 0
    return independent_set_mask(g, vertices).bit_count()


def clique_number(g: Graph) -> SolveWitness:
    verts = tuple(iter_bits(independent_set_mask(complement(g))))
    return SolveWitness(CLIQUE, len(verts), verts)


# Colouring -----------------------------------------------------------------


def _dsatur_greedy(adj: Sequence[int], verts: list[int]) -> dict[int, int]:
    colors: dict[int, int] = {}
    classes: list[int] = []
    todo = set(verts)
    while todo:
        v = max(sorted(todo), key=lambda x: (sum(1 for c in classes if adj[x] & c), (adj[x]).bit_count()))
        for c, cls in enumerate(classes):
            if not adj[v] & cls:
                break
        else:
            c = len(classes)
            classes.append(0)
        classes[c] |= 1 << v
        colors[v] = c
        todo.discard(v)
    return colors


def _k_coloring(adj: Sequence[int], verts: list[int], seed: list[int], k: int) -> dict[int, int] | None:
    """A proper colouring of ``verts`` with at most ``k`` colours, or None.

    The clique ``seed`` is precoloured 0..len(seed)-1; other vertices are
    chosen by maximum saturation and may open at most one new colour.
    """
    classes = [0] * k
    colors: dict[int, int] = {}
    for c, v in enumerate(seed):
        classes[c] |= 1 << v
        colors[v] = c
    rest = [v for v in verts if v not in colors]

    def rec(used: int) -> bool:
        if len(colors) == len(verts):
            return True
        best_v = -1
        best_key = (-1, -1)
        best_options: list[int] = []
        for v in rest:
            if v in colors:
                continue
            options = [c for c in range(used) if not adj[v] & classes[c]]
            key = (used - len(options), (adj[v]).bit_count())
            if key > best_key:
                best_v, best_key, best_options = v, key, options
        if not best_options and used >= k:
            return False
        if used < k:
            best_options.append(used)
        v = best_v
        for c in best_options:
            classes[c] |= 1 << v
            colors[v] = c
            if rec(max(used, c + 1)):
                return True
            classes[c] &= ~(1 << v)
            del colors[v]
        return False

    if len(seed) > k:
        return None
    return colors if rec(len(seed)) else None


def _component_coloring(g: Graph, comp: int) -> dict[int, int]:
    verts = list(iter_bits(comp))
    seed = list(iter_bits(independent_set_mask(complement(g), comp)))
    upper = _dsatur_greedy(g.adj, verts)
    best = upper
    ub = len(set(upper.values()))
    for k in range(len(seed), ub):
        found = _k_coloring(g.adj, verts, seed, k)
        if found is not None:
            best = found
            break
    return best


def chromatic_number(g: Graph) -> SolveWitness:
    if g.n > CHROMATIC_MAX_ORDER:
        raise GraphError(f"chromatic_number is exact only for n <= {CHROMATIC_MAX_ORDER}")
    colors = [0] * g.n
    for comp in component_masks(g.adj, g.vertex_mask):
        for v, c in _component_coloring(g, comp).items():
            colors[v] = c
    return SolveWitness(COLORING, len(set(colors)), tuple(colors))
