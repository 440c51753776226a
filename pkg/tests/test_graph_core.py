from __future__ import annotations

import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import matrix_power_distances, naive_girth
from szeged_wiener.graph_core import (
    INFINITE,
    DisconnectedGraphError,
    EdgeListError,
    Graph,
    Graph6Error,
    GraphError,
    all_pairs_distances,
    blocks,
    encode_graph6,
    format_edge_list,
    girth,
    has_dominated_pair,
    is_bipartite,
    is_complete,
    is_connected,
    is_two_connected,
    parse_edge_list,
    parse_graph6,
    require_connected,
)

C5 = Graph.cycle(5)
P3 = Graph.path(3)
BOWTIE = Graph.from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
K42 = Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (3, 0), (3, 1)])


@st.composite
def graphs(draw, max_n=20):
    n = draw(st.integers(1, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, keep in zip(pairs, mask) if keep])


# graph6

def test_graph6_edgeless_five():
    g = parse_graph6(b"D??")
    assert g.n == 5 and g.m == 0


def test_graph6_single_vertex_is_at_sign():
    assert encode_graph6(Graph(1, (0,))) == b"@"


def test_graph6_k2_sets_top_bit():
    code = encode_graph6(Graph.complete(2))
    assert code[0] == 65
    assert (code[1] - 63) == 0b100000


def test_graph6_c5_round_trip_keeps_labels():
    assert parse_graph6(encode_graph6(C5)) == C5
    assert encode_graph6(C5) == b"Dhc"


def test_graph6_matches_networkx_bits():
    rng = random.Random(7)
    for _ in range(200):
        n = rng.randrange(1, 30)
        g = nx.gnp_random_graph(n, 0.4, seed=rng.randrange(10**9))
        ours = Graph.from_edges(n, g.edges())
        assert encode_graph6(ours) == nx.to_graph6_bytes(g, header=False).strip()


@settings(max_examples=1000, deadline=None)
@given(graphs())
def test_graph6_round_trip_random(g):
    assert parse_graph6(encode_graph6(g)) == g


def test_graph6_extended_header():
    g = Graph.cycle(70)
    code = encode_graph6(g)
    assert code[0] == 126 and len(code) == 4 + (70 * 69 // 2 + 5) // 6
    assert parse_graph6(code) == g


def test_graph6_accepts_str_and_header_prefix():
    assert parse_graph6(">>graph6<<Dhc\n") == C5


@pytest.mark.parametrize(
    "bad, offset",
    [(b"D?", None), (b"D???", None), (b"D?!", 2), (b"", None), (b"Dhd", None)],
)
def test_graph6_rejects_malformed(bad, offset):
    with pytest.raises(Graph6Error) as info:
        parse_graph6(bad)
    if offset is not None:
        assert info.value.offset == offset


# edge lists

def test_edge_list_examples():
    assert parse_edge_list("3 3\n0 1\n1 2\n0 2") == Graph.complete(3)
    assert parse_edge_list("2 0") == Graph(2, (0, 0))
    assert parse_edge_list("4 4\n0 1\n1 2\n2 3\n3 0") == Graph.cycle(4)


@pytest.mark.parametrize(
    "text",
    ["", "3", "3 1\n0 0", "3 1\n0 5", "3 2\n0 1", "x y", "3 1\n0 a"],
)
def test_edge_list_errors(text):
    with pytest.raises(EdgeListError):
        parse_edge_list(text)


def test_edge_list_round_trip():
    assert parse_edge_list(format_edge_list(BOWTIE)) == BOWTIE


def test_graph_validation():
    with pytest.raises(GraphError):
        Graph.from_edges(3, [(0, 0)])
    with pytest.raises(GraphError):
        Graph.from_edges(3, [(0, 3)])


# distances

def test_distance_examples():
    k4 = all_pairs_distances(Graph.complete(4))
    assert all(k4.d[i][j] == (i != j) for i in range(4) for j in range(4))
    assert all_pairs_distances(P3).d[0][2] == 2
    c5 = all_pairs_distances(C5)
    for v in range(5):
        assert sorted(c5.d[v]) == [0, 1, 1, 2, 2]


def test_distances_match_matrix_powers():
    rng = random.Random(11)
    for _ in range(300):
        n = rng.randrange(1, 8)
        edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < 0.35]
        dm = all_pairs_distances(Graph.from_edges(n, edges))
        ref = matrix_power_distances(n, edges)
        for i in range(n):
            for j in range(n):
                expected = -1 if ref[i][j] == float("inf") else ref[i][j]
                assert dm.d[i][j] == expected


def test_disconnected_is_reported():
    g = Graph.from_edges(4, [(0, 1), (2, 3)])
    assert not is_connected(g)
    assert not all_pairs_distances(g).connected
    with pytest.raises(DisconnectedGraphError):
        require_connected(g)


# predicates

def test_predicate_examples():
    assert is_two_connected(C5) and not is_bipartite(C5) and girth(C5) == 5
    assert is_two_connected(K42) and not is_complete(K42)
    assert not is_two_connected(P3)
    assert girth(P3) == INFINITE
    assert is_bipartite(Graph.cycle(6)) and girth(Graph.cycle(6)) == 6


def test_girth_matches_brute_force():
    rng = random.Random(5)
    for _ in range(300):
        n = rng.randrange(1, 9)
        edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < 0.3]
        assert girth(Graph.from_edges(n, edges)) == naive_girth(n, edges)


def test_predicates_match_networkx():
    rng = random.Random(3)
    for _ in range(500):
        n = rng.randrange(1, 10)
        h = nx.gnp_random_graph(n, rng.random(), seed=rng.randrange(10**9))
        g = Graph.from_edges(n, h.edges())
        assert is_connected(g) == nx.is_connected(h)
        assert is_bipartite(g) == nx.is_bipartite(h)
        expected_two = n >= 3 and nx.is_connected(h) and nx.is_biconnected(h)
        assert is_two_connected(g) == expected_two


# blocks

def test_block_examples():
    p3 = blocks(P3)
    assert set(p3.blocks) == {frozenset({0, 1}), frozenset({1, 2})}
    assert set(p3.cut_vertices) == {1}
    bow = blocks(BOWTIE)
    assert sorted(len(b) for b in bow.blocks) == [3, 3] and set(bow.cut_vertices) == {2}
    c5 = blocks(C5)
    assert len(c5.blocks) == 1 and not c5.cut_vertices


def test_blocks_match_networkx():
    rng = random.Random(9)
    checked = 0
    while checked < 400:
        n = rng.randrange(2, 12)
        h = nx.gnp_random_graph(n, rng.uniform(0.15, 0.6), seed=rng.randrange(10**9))
        if not nx.is_connected(h):
            continue
        g = Graph.from_edges(n, h.edges())
        dec = blocks(g)
        assert set(dec.blocks) == {frozenset(c) for c in nx.biconnected_components(h)}
        assert set(dec.cut_vertices) == set(nx.articulation_points(h))
        checked += 1


def test_blocks_invariants():
    rng = random.Random(21)
    for _ in range(200):
        n = rng.randrange(2, 14)
        h = nx.connected_watts_strogatz_graph(n, 2, 0.5, seed=rng.randrange(10**9)) if n > 3 else nx.path_graph(n)
        g = Graph.from_edges(n, h.edges())
        dec = blocks(g)
        # every edge in exactly one block; cut vertices are exactly the shared ones
        for u, v in g.edges():
            assert sum(1 for b in dec.blocks if u in b and v in b) == 1
        shared = {v for v in range(n) if sum(v in b for b in dec.blocks) > 1}
        assert shared == set(dec.cut_vertices)


def test_blocks_rejects_disconnected():
    with pytest.raises(DisconnectedGraphError):
        blocks(Graph.from_edges(4, [(0, 1), (2, 3)]))


def test_dominated_pair():
    # pendant vertex in K_4^2 style graph: N[3] = {0,1,3} within N[0]
    assert has_dominated_pair(K42, 3)
    assert not any(has_dominated_pair(C5, u) for u in range(5))
