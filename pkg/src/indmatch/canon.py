"""Canonical labelling by equitable partition refinement and backtracking.

The search individualizes one vertex of the first non-singleton cell at a
time, refines to an equitable partition, and keeps the leaf whose relabelled
adjacency rows are lexicographically smallest. Automorphisms found at
leaves prune sibling branches that lie in the same orbit of the pointwise
stabilizer of the current prefix; the collected automorphisms generate the
full automorphism group, which the enumerator relies on for orbit tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .graph import Graph, GraphError, iter_bits, relabel, to_graph6

CANON_MAX_ORDER = 16


@dataclass(frozen=True)
class Labeling:
    lab: tuple[int, ...]  # lab[i] = vertex placed at canonical position i
    generators: tuple[tuple[int, ...], ...]
    orbits: tuple[int, ...]  # orbits[v] = least vertex in the orbit of v

    @property
    def position(self) -> list[int]:
        pos = [0] * len(self.lab)
        for i, v in enumerate(self.lab):
            pos[v] = i
        return pos


def refine(adj: Sequence[int], cells: list[int], splitters: list[int]) -> list[int]:
    """Refine an ordered partition (cells are bitsets) until it is equitable.

    A split cell is replaced in place by its fragments ordered by their
    neighbour count into the splitter, so the result is label-invariant.
    """
    stack = list(reversed(splitters))
    n_total = sum(c.bit_count() for c in cells)
    while stack and len(cells) < n_total:
        w = stack.pop()
        out = []
        for cell in cells:
            if not cell & (cell - 1):
                out.append(cell)
                continue
            buckets: dict[int, int] = {}
            for v in iter_bits(cell):
                k = (adj[v] & w).bit_count()
                buckets[k] = buckets.get(k, 0) | 1 << v
            if len(buckets) == 1:
                out.append(cell)
                continue
            frags = [buckets[k] for k in sorted(buckets)]
            out.extend(frags)
            stack.extend(reversed(frags))
        cells = out
    return cells


def _orbit_roots(n: int, gens: list[tuple[int, ...]]) -> list[int]:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for v in range(n):
            a, b = find(v), find(g[v])
            if a != b:
                if a < b:
                    parent[b] = a
                else:
                    parent[a] = b
    return [find(v) for v in range(n)]


def canonical_labeling(adj: Sequence[int], n: int, cells: list[int] | None = None) -> Labeling:
    """Canonical labelling of a (vertex-coloured) graph given by bitset rows.

    ``cells`` is an ordered colour partition; colours are respected by both
    the labelling and the automorphisms.
    """
    if cells is None:
        cells = [(1 << n) - 1]
    start = refine(adj, list(cells), list(cells))

    best_cert: tuple[int, ...] | None = None
    best_lab: list[int] = []
    first_cert: tuple[int, ...] | None = None
    first_lab: list[int] = []
    gens: list[tuple[int, ...]] = []

    def leaf(part: list[int]) -> None:
        nonlocal best_cert, best_lab, first_cert, first_lab
        lab = [c.bit_length() - 1 for c in part]
        pos = [0] * n
        for i, v in enumerate(lab):
            pos[v] = i
        cert = []
        for v in lab:
            row = 0
            for u in iter_bits(adj[v]):
                row |= 1 << pos[u]
            cert.append(row)
        cert_t = tuple(cert)
        if first_cert is None:
            first_cert, first_lab = cert_t, lab
            best_cert, best_lab = cert_t, lab
            return
        for ref_cert, ref_lab in ((first_cert, first_lab), (best_cert, best_lab)):
            if cert_t == ref_cert:
                perm = [0] * n
                for a, b in zip(ref_lab, lab):
                    perm[a] = b
                if any(perm[v] != v for v in range(n)):
                    gens.append(tuple(perm))
                return
        if cert_t < best_cert:
            best_cert, best_lab = cert_t, lab

    def search(part: list[int], prefix: list[int]) -> None:
        target = -1
        for i, c in enumerate(part):
            if c & (c - 1):
                target = i
                break
        if target < 0:
            leaf(part)
            return
        cell = part[target]
        tried: list[int] = []
        for v in iter_bits(cell):
            if tried:
                stab = [g for g in gens if all(g[p] == p for p in prefix)]
                if stab:
                    roots = _orbit_roots(n, stab)
                    if any(roots[v] == roots[t] for t in tried):
                        continue
            tried.append(v)
            single = 1 << v
            child = part[:target] + [single, cell & ~single] + part[target + 1:]
            search(refine(adj, child, [single]), prefix + [v])

    search(start, [])
    orbits = _orbit_roots(n, gens)
    return Labeling(tuple(best_lab), tuple(gens), tuple(orbits))


def canonical_graph(g: Graph) -> Graph:
    if g.n > CANON_MAX_ORDER:
        raise GraphError(f"canonical labelling supports n <= {CANON_MAX_ORDER}")
    lab = canonical_labeling(g.adj, g.n)
    return relabel(g, lab.position)


def canonical_form(g: Graph) -> bytes:
    """graph6 string of the canonically relabelled graph; equal iff isomorphic."""
    return to_graph6(canonical_graph(g))


def automorphism_orbits(g: Graph) -> tuple[int, ...]:
    return canonical_labeling(g.adj, g.n).orbits


def is_isomorphic(a: Graph, b: Graph) -> bool:
    return a.n == b.n and a.m == b.m and canonical_form(a) == canonical_form(b)
