"""Gallai–Edmonds decomposition and the odd-component bookkeeping built on it."""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import Graph, GraphError, component_masks, induced_subgraph, is_triangle_free, iter_bits, mask_of
from .solvers import inessential_vertices, is_factor_critical, matching_number, maximum_mates


@dataclass(frozen=True)
class GallaiEdmonds:
    """A separator ``x`` with the components of ``G \\ x`` split by parity.

    ``odd_components`` holds the vertex tuples (original labels) of the odd
    components, ordered by least vertex; ``even_part`` is every vertex lying
    in an even component.
    """

    n: int
    x: tuple[int, ...]
    odd_components: tuple[tuple[int, ...], ...]
    even_part: tuple[int, ...]

    @classmethod
    def from_separator(cls, g: Graph, x) -> GallaiEdmonds:
        xmask = mask_of(x)
        odd, even = [], 0
        for comp in component_masks(g.adj, g.vertex_mask & ~xmask):
            if comp.bit_count() % 2:
                odd.append(tuple(iter_bits(comp)))
            else:
                even |= comp
        return cls(g.n, tuple(iter_bits(xmask)), tuple(odd), tuple(iter_bits(even)))

    @property
    def odd_count(self) -> int:
        return len(self.odd_components)

    @property
    def deficiency(self) -> int:
        """``o(G \\ X) - |X|``, which equals ``n - 2 beta`` for a valid decomposition."""
        return self.odd_count - len(self.x)

    @property
    def implied_matching_number(self) -> float:
        return (self.n + len(self.x) - self.odd_count) / 2

    def odd_component_graphs(self, g: Graph) -> list[tuple[Graph, list[int]]]:
        return [induced_subgraph(g, comp) for comp in self.odd_components]

    def to_dict(self) -> dict:
        return {
            "X": list(self.x),
            "odd_components": [list(c) for c in self.odd_components],
            "R": list(self.even_part),
            "odd_count": self.odd_count,
            "deficiency": self.deficiency,
        }


def gallai_edmonds(g: Graph) -> GallaiEdmonds:
    """Canonical decomposition with ``X = A(G)``, the neighbours of ``D(G)`` outside it.

    ``D(G)`` is the set of vertices missed by some maximum matching.
    """
    mate = maximum_mates(g)
    d = inessential_vertices(g, mate)
    nbrs = 0
    for v in iter_bits(d):
        nbrs |= g.adj[v]
    return GallaiEdmonds.from_separator(g, iter_bits(nbrs & ~d))


@dataclass
class GEVerdict:
    checks: dict[str, bool] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_dict(self) -> dict:
        return {"ok": self.ok, "checks": dict(self.checks), "notes": list(self.notes)}


def verify_ge(g: Graph, d: GallaiEdmonds) -> GEVerdict:
    """Re-check a claimed decomposition of ``g`` from scratch.

    Accepts any separator, not only the canonical one: the partition must be
    exact, the matching identity must hold against a fresh maximum matching,
    and every odd component must be factor-critical.
    """
    verdict = GEVerdict()
    xmask = mask_of(d.x)
    comps = component_masks(g.adj, g.vertex_mask & ~xmask)
    odd = sorted(c for c in comps if c.bit_count() % 2)
    even = 0
    for c in comps:
        if c.bit_count() % 2 == 0:
            even |= c
    claimed_odd = sorted(mask_of(c) for c in d.odd_components)
    verdict.checks["partition"] = (
        d.n == g.n
        and len(set(d.x)) == len(d.x)
        and claimed_odd == odd
        and mask_of(d.even_part) == even
        and len(d.x) + sum(c.bit_count() for c in odd) + even.bit_count() == g.n
    )
    beta = matching_number(g)
    twice = g.n + len(d.x) - d.odd_count
    verdict.checks["beta_identity"] = twice == 2 * beta
    if twice % 2:
        verdict.notes.append(f"n + |X| - o = {twice} is odd")
    elif twice != 2 * beta:
        verdict.notes.append(f"identity gives {twice // 2}, matching number is {beta}")
    bad = [c for c in d.odd_components if not is_factor_critical(induced_subgraph(g, c)[0])]
    verdict.checks["factor_critical"] = not bad
    if bad:
        verdict.notes.append(f"not factor-critical: {[list(c) for c in bad]}")
    return verdict


@dataclass(frozen=True)
class LedgerCounts:
    """Odd components of ``G \\ X`` bucketed by order, plus ``|R|`` and ``|X|``."""

    c1: int
    c5: int
    c7: int
    c9: int
    c_ge11: int
    n_ge11: int
    r_size: int
    x_size: int

    @property
    def odd_count(self) -> int:
        return self.c1 + self.c5 + self.c7 + self.c9 + self.c_ge11

    @property
    def covered(self) -> int:
        return self.c1 + 5 * self.c5 + 7 * self.c7 + 9 * self.c9 + self.n_ge11 + self.r_size + self.x_size

    def to_dict(self) -> dict:
        return {
            "c1": self.c1, "c5": self.c5, "c7": self.c7, "c9": self.c9,
            "c_ge11": self.c_ge11, "n_ge11": self.n_ge11, "r_size": self.r_size, "x_size": self.x_size,
        }


def ledger_counts(g: Graph, d: GallaiEdmonds) -> LedgerCounts:
    if not is_triangle_free(g):
        raise GraphError("ledger counts need a triangle-free graph")
    buckets = {1: 0, 5: 0, 7: 0, 9: 0}
    c_ge11 = n_ge11 = 0
    for comp in d.odd_components:
        size = len(comp)
        if size == 3:
            raise GraphError(f"odd component of order 3 {list(comp)} cannot be factor-critical here")
        if size >= 11:
            c_ge11 += 1
            n_ge11 += size
        else:
            buckets[size] += 1
    counts = LedgerCounts(buckets[1], buckets[5], buckets[7], buckets[9], c_ge11, n_ge11, len(d.even_part), len(d.x))
    if counts.covered != g.n:
        raise GraphError(f"partition identity fails: {counts.covered} != {g.n}")
    return counts
