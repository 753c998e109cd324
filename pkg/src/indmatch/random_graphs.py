"""Random graph samplers used by the CLI spot checks and the test-suite."""

from __future__ import annotations

import random

from .graph import Graph


def gnp(n: int, p: float, rng: random.Random) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p])


def random_triangle_free(n: int, rng: random.Random, max_degree: int | None = None, keep: float = 1.0) -> Graph:
    """Random triangle-free graph grown by a shuffled edge sweep.

    An edge is added when it creates no triangle, respects ``max_degree``, and
    a ``keep``-biased coin agrees; ``keep=1`` yields a maximal graph.
    """
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    rng.shuffle(pairs)
    rows = [0] * n
    for u, v in pairs:
        if rows[u] & rows[v]:
            continue
        if max_degree is not None and (rows[u].bit_count() >= max_degree or rows[v].bit_count() >= max_degree):
            continue
        if keep < 1.0 and rng.random() >= keep:
            continue
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, tuple(rows))


def random_low_degree_member(n: int, rng: random.Random, max_degree: int = 4) -> Graph:
    """Triangle-free, maximum degree <= ``max_degree``, with some vertex below it."""
    g = random_triangle_free(n, rng, max_degree, keep=rng.uniform(0.6, 1.0))
    if all(r.bit_count() == max_degree for r in g.adj):
        u, v = rng.choice(g.edges())
        rows = list(g.adj)
        rows[u] &= ~(1 << v)
        rows[v] &= ~(1 << u)
        g = Graph(n, tuple(rows))
    return g
