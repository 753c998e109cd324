"""Isomorph-free generation of small graph classes by canonical augmentation.

Graphs grow one vertex at a time. A child survives only if its new vertex
lies in the automorphism orbit of the child's canonical deletion vertex, and
only one augmentation per orbit of the parent's automorphism group is tried,
so every isomorphism class is produced exactly once without a global table.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Iterator

from .canon import CANON_MAX_ORDER, canonical_labeling
from .graph import Graph, GraphError, component_masks, cut_vertices, from_graph6, iter_bits

GENERATION_MAX_ORDER = CANON_MAX_ORDER


@dataclass(frozen=True)
class ClassConstraints:
    """The graph class to generate.

    ``max_degree`` and ``triangle_free`` are hereditary and pruned during
    growth; ``regular_degree`` and ``min_degree`` only filter emitted graphs,
    but also prune partial graphs that can no longer reach them by
    ``max_order``.
    """

    max_order: int
    triangle_free: bool = False
    max_degree: int | None = None
    connected: bool = False
    regular_degree: int | None = None
    min_degree: int | None = None
    min_order: int = 1

    def __post_init__(self) -> None:
        if not 1 <= self.max_order <= GENERATION_MAX_ORDER:
            raise GraphError(f"max_order must be in 1..{GENERATION_MAX_ORDER}")
        if self.min_order < 1:
            raise GraphError("min_order must be at least 1")
        for name in ("max_degree", "regular_degree", "min_degree"):
            value = getattr(self, name)
            if value is not None and value < 0:
                raise GraphError(f"{name} must be nonnegative")

    @property
    def degree_cap(self) -> int:
        caps = [self.max_order - 1]
        if self.max_degree is not None:
            caps.append(self.max_degree)
        if self.regular_degree is not None:
            caps.append(self.regular_degree)
        return min(caps)

    @property
    def degree_floor(self) -> int:
        floors = [0]
        if self.min_degree is not None:
            floors.append(self.min_degree)
        if self.regular_degree is not None:
            floors.append(self.regular_degree)
        return max(floors)

    def admits(self, g: Graph) -> bool:
        """Post-hoc membership test, independent of the generator's pruning."""
        from .graph import is_connected, is_triangle_free

        degs = [row.bit_count() for row in g.adj]
        if not self.min_order <= g.n <= self.max_order:
            return False
        if self.triangle_free and not is_triangle_free(g):
            return False
        if self.max_degree is not None and max(degs) > self.max_degree:
            return False
        if self.min_degree is not None and min(degs) < self.min_degree:
            return False
        if self.regular_degree is not None and any(d != self.regular_degree for d in degs):
            return False
        if self.connected and not is_connected(g):
            return False
        return True


# A node of the augmentation tree is the tuple of adjacency rows.
Rows = tuple[int, ...]


def _feasible(rows: Rows, cons: ClassConstraints) -> bool:
    """Can this partial graph still be an induced subgraph of an admissible one?"""
    floor = cons.degree_floor
    if not floor:
        return True
    room = cons.max_order - len(rows)
    need = 0
    for row in rows:
        deficit = floor - row.bit_count()
        if deficit > room:
            return False
        if deficit > 0:
            need += deficit
    return need <= room * cons.degree_cap


def _emit(rows: Rows, cons: ClassConstraints) -> bool:
    n = len(rows)
    if n < cons.min_order:
        return False
    floor = cons.degree_floor
    if floor and any(row.bit_count() < floor for row in rows):
        return False
    if cons.regular_degree is not None and any(row.bit_count() != cons.regular_degree for row in rows):
        return False
    if cons.connected and len(component_masks(rows, (1 << n) - 1)) != 1:
        return False
    return True


def _candidate_sets(rows: Rows, cons: ClassConstraints) -> list[int]:
    """Neighbourhoods allowed for a new vertex, as bitsets, in a fixed order."""
    k = len(rows)
    cap = cons.degree_cap
    open_vs = [v for v in range(k) if rows[v].bit_count() < cap]
    out: list[int] = []

    def grow(start: int, chosen: int, size: int, blocked: int) -> None:
        out.append(chosen)
        if size == cap:
            return
        for idx in range(start, len(open_vs)):
            v = open_vs[idx]
            if blocked >> v & 1:
                continue
            nb = blocked | (rows[v] if cons.triangle_free else 0)
            grow(idx + 1, chosen | 1 << v, size + 1, nb)

    grow(0, 0, 0, 0)
    if cons.connected and k > 0:
        out = [s for s in out if s]
    return out


def _orbit_representatives(sets: list[int], gens: Iterable[tuple[int, ...]]) -> list[int]:
    gens = list(gens)
    if not gens:
        return sets
    index = {s: i for i, s in enumerate(sets)}
    parent = list(range(len(sets)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, s in enumerate(sets):
        for g in gens:
            img = 0
            for v in iter_bits(s):
                img |= 1 << g[v]
            a, b = find(i), find(index[img])
            if a != b:
                if a < b:
                    parent[b] = a
                else:
                    parent[a] = b
    return [s for i, s in enumerate(sets) if find(i) == i]


def _deletion_key(rows: Rows, v: int) -> tuple[int, int]:
    nbr_sum = 0
    for u in iter_bits(rows[v]):
        nbr_sum += rows[u].bit_count()
    return (-rows[v].bit_count(), -nbr_sum)


def _is_canonical_child(rows: Rows, connected: bool) -> bool:
    """Is the last vertex in the orbit of the canonical deletion vertex?

    The deletion vertex is chosen among non-cut vertices (connected classes)
    of maximum degree, then maximum neighbour-degree sum; remaining ties are
    broken by the last position in a labelling coloured by that choice.
    """
    n = len(rows)
    new = n - 1
    pool = (1 << n) - 1
    if connected and n > 2:
        pool &= ~cut_vertices(rows, n)
    keys = {v: _deletion_key(rows, v) for v in iter_bits(pool)}
    best = min(keys.values())
    if keys[new] != best:
        return False
    best_class = 0
    for v, key in keys.items():
        if key == best:
            best_class |= 1 << v
    if best_class == 1 << new:
        return True
    rest = ((1 << n) - 1) & ~best_class
    cells = [rest, best_class] if rest else [best_class]
    lab = canonical_labeling(rows, n, cells)
    return lab.orbits[new] == lab.orbits[lab.lab[-1]]


def _children(rows: Rows, cons: ClassConstraints) -> list[Rows]:
    k = len(rows)
    gens = canonical_labeling(rows, k).generators if k > 1 else ()
    sets = _orbit_representatives(_candidate_sets(rows, cons), gens)
    out = []
    for s in sets:
        child = list(rows)
        for v in iter_bits(s):
            child[v] |= 1 << k
        child.append(s)
        child_t = tuple(child)
        if not _feasible(child_t, cons):
            continue
        if _is_canonical_child(child_t, cons.connected):
            out.append(child_t)
    return out


def _subtree(rows: Rows, cons: ClassConstraints) -> Iterator[Rows]:
    """Depth-first walk below ``rows`` (inclusive), yielding admissible graphs."""
    stack = [rows]
    while stack:
        node = stack.pop()
        if _emit(node, cons):
            yield node
        if len(node) < cons.max_order:
            stack.extend(reversed(_children(node, cons)))


def _expand_unit(args: tuple[Rows, ClassConstraints]) -> list[Rows]:
    return list(_subtree(*args))


def enumerate_graphs(cons: ClassConstraints, workers: int = 1, split_order: int = 6) -> Iterator[Graph]:
    """One representative per isomorphism class admitted by ``cons``.

    Nodes of order below ``split_order`` are walked serially; each node at
    ``split_order`` is an independent work unit. Output order is fixed by
    unit order and does not depend on ``workers``.
    """
    root: Rows = (0,)
    if not _feasible(root, cons):
        return
    split = max(1, min(split_order, cons.max_order))
    units: list[Rows] = []
    stack = [root]
    while stack:
        node = stack.pop()
        if len(node) == split:
            units.append(node)
            continue
        if _emit(node, cons):
            yield Graph(len(node), node)
        stack.extend(reversed(_children(node, cons)))
    if workers > 1 and len(units) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for batch in pool.map(_expand_unit, [(u, cons) for u in units], chunksize=4):
                for rows in batch:
                    yield Graph(len(rows), rows)
    else:
        for unit in units:
            for rows in _subtree(unit, cons):
                yield Graph(len(rows), rows)


def count_by_order(cons: ClassConstraints, workers: int = 1) -> dict[int, int]:
    counts = {n: 0 for n in range(cons.min_order, cons.max_order + 1)}
    for g in enumerate_graphs(cons, workers=workers):
        counts[g.n] += 1
    return counts


@dataclass(frozen=True)
class IngestError:
    line_number: int
    text: str
    message: str


def ingest_graph6(lines: Iterable[bytes | str]) -> Iterator[tuple[Graph, int] | IngestError]:
    """Decode newline-delimited graph6, yielding ``(graph, line_number)`` or an
    :class:`IngestError` per bad line. Blank lines are skipped; numbering is 1-based.
    """
    for number, line in zip(itertools.count(1), lines):
        raw = line.encode("ascii", "replace") if isinstance(line, str) else line
        raw = raw.strip()
        if not raw:
            continue
        try:
            yield from_graph6(raw), number
        except GraphError as exc:
            yield IngestError(number, raw.decode("ascii", "replace"), str(exc))
