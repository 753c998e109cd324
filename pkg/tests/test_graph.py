import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from indmatch.graph import (
    Graph,
    GraphError,
    bridges,
    circulant,
    complement,
    complete,
    components,
    cycle,
    degree_stats,
    delete_vertices,
    disjoint_union,
    from_graph6,
    g13,
    is_triangle_free,
    path,
    petersen,
    star,
    to_graph6,
)
from indmatch.random_graphs import gnp
from oracles import bridges_by_deletion, triple_loop_triangle_free


@st.composite
def graphs(draw, max_n=10):
    n = draw(st.integers(1, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [p for p, keep in zip(pairs, mask) if keep])


def test_g13_shape():
    g = g13()
    assert g.n == 13 and g.m == 26
    assert degree_stats(g)[:2] == (4, 4)
    assert is_triangle_free(g)


def test_small_circulants():
    c5 = circulant(5, {1, 4})
    assert c5.m == 5 and c5 == cycle(5)
    assert degree_stats(circulant(13, {1, 12}))[2] == [2] * 13


@pytest.mark.parametrize("n, offsets", [(2, {1}), (5, set()), (5, {5}), (5, {0})])
def test_circulant_rejects(n, offsets):
    with pytest.raises(GraphError):
        circulant(n, offsets)


def test_graph_rejects_bad_rows():
    with pytest.raises(GraphError):
        Graph(2, (0b10, 0))  # asymmetric
    with pytest.raises(GraphError):
        Graph(1, (1,))  # loop
    with pytest.raises(GraphError):
        Graph(0, ())
    with pytest.raises(GraphError):
        Graph.from_edges(65, [])


def test_complement_examples():
    assert complement(complete(1)) == complete(1)
    cg = complement(g13())
    assert degree_stats(cg)[:2] == (8, 8)


def test_complement_involution_random():
    rng = random.Random(7)
    for _ in range(500):
        g = gnp(rng.randint(1, 14), rng.random(), rng)
        assert complement(complement(g)) == g


def test_components():
    assert [c.n for c, _ in components(cycle(5))] == [5]
    parts = components(disjoint_union(cycle(5), complete(1)))
    assert sorted(c.n for c, _ in parts) == [1, 5]
    assert parts[1][1] == [5]


def test_g13_minus_closed_neighbourhood():
    g = g13()
    rest, mapping = delete_vertices(g, g.closed_neighborhood(0))
    assert rest.n == 8 and len(components(rest)) == 1
    # 1-indexed v3,v4,v5,v10,v11,v12,v7,v8 are 2,3,4,9,10,11,6,7 here
    assert sorted(mapping) == [2, 3, 4, 6, 7, 9, 10, 11]
    idx = {old: new for new, old in enumerate(mapping)}
    ring = [2, 3, 4, 9, 10, 11, 6, 7]
    for a, b in zip(ring, ring[1:] + ring[:1]):
        assert rest.has_edge(idx[a], idx[b])
    assert rest.has_edge(idx[2], idx[10]) and rest.has_edge(idx[3], idx[11])
    assert rest.m == 10


def test_delete_vertices():
    p4, _ = delete_vertices(cycle(5), [0])
    assert degree_stats(p4)[2] == [1, 2, 2, 1] and p4.m == 3
    g = petersen()
    assert delete_vertices(g, [])[0] == g
    with pytest.raises(GraphError):
        delete_vertices(cycle(3), [0, 1, 2])


def test_triangle_examples():
    assert not is_triangle_free(complete(3))
    assert is_triangle_free(g13())
    assert is_triangle_free(petersen())


@settings(max_examples=300, deadline=None)
@given(graphs())
def test_triangle_free_matches_triple_loop(g):
    assert is_triangle_free(g) == triple_loop_triangle_free(g)


def test_degree_stats_examples():
    assert degree_stats(complete(1))[:2] == (0, 0)
    assert degree_stats(star(3))[:2] == (1, 3)


def test_bridges_examples():
    assert bridges(path(3)) == [(0, 1), (1, 2)]
    assert bridges(cycle(5)) == []
    two = disjoint_union(cycle(5), cycle(5))
    linked = Graph.from_edges(10, two.edges() + [(0, 5)])
    assert bridges(linked) == [(0, 5)]
    assert bridges_by_deletion(linked) == [(0, 5)]


@settings(max_examples=300, deadline=None)
@given(graphs(max_n=8))
def test_bridges_match_deletion_oracle(g):
    assert bridges(g) == bridges_by_deletion(g)


def test_graph6_known_strings():
    assert to_graph6(complete(1)) == b"@"
    assert to_graph6(complete(2)) == b"A_"
    assert from_graph6("A_") == complete(2)
    assert from_graph6(b"@") == complete(1)


@pytest.mark.parametrize("bad", [b"", b"A", b"A__", b"A`", b"~??", b"B\x20", b"?"])
def test_graph6_rejects(bad):
    with pytest.raises(GraphError):
        from_graph6(bad)


def test_graph6_round_trip_random():
    rng = random.Random(11)
    for _ in range(1000):
        g = gnp(rng.randint(1, 32), rng.random(), rng)
        assert from_graph6(to_graph6(g)) == g


def test_graph6_round_trip_largest():
    g = gnp(62, 0.5, random.Random(3))
    assert from_graph6(to_graph6(g)) == g
    with pytest.raises(GraphError):
        to_graph6(Graph.from_edges(63, []))


@settings(max_examples=200, deadline=None)
@given(graphs(max_n=12))
def test_graph_invariants(g):
    for v, row in enumerate(g.adj):
        assert not row >> v & 1
        for u in range(g.n):
            assert (row >> u & 1) == (g.adj[u] >> v & 1)
    assert 2 * g.m == sum(degree_stats(g)[2])
    seen = sorted(v for _, mapping in components(g) for v in mapping)
    assert seen == list(range(g.n))
