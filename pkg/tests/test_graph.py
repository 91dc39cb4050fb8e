import json
import math

import pytest
from hypothesis import given, strategies as st

from grouporders.arithmetic import factorize, primes_up_to
from grouporders.graph import (
    HolderGraph, build_graph, central_subsets, decompose, degrees, edge_profile,
    edge_strength, from_json, initial_vertices, terminal_vertices, to_dict, to_dot, to_json,
)

SMALL_PRIMES = primes_up_to(200)


def named_edges(g):
    return {(g.vertices[i], g.vertices[j]) for i, j in g.edges}


def test_edges_1827():
    g = build_graph(1827)
    assert named_edges(g) == {((3, 2), (7, 1)), ((7, 1), (29, 1))}
    assert edge_strength(g, (0, 1)) == "weak"


def test_edges_255_and_30():
    assert build_graph(255).edges == {}
    assert named_edges(build_graph(30)) == {((2, 1), (3, 1)), ((2, 1), (5, 1))}


def test_strengths():
    g = build_graph(7575)
    assert edge_strength(g, (g.index(5), g.index(101))) == "strong"
    g = build_graph(75)
    assert edge_strength(g, (g.index(3), g.index(5))) == "weak"
    g = build_graph(3 * 49)
    assert edge_strength(g, (g.index(3), g.index(7))) == "strong"


def test_strength_rejects_other_edges():
    g = build_graph(1827)
    with pytest.raises(ValueError):
        edge_strength(g, (1, 2))
    with pytest.raises(ValueError):
        edge_strength(g, (0, 2))


def test_profiles():
    assert edge_profile(3, 2, 7, 1) == {(1, 1)}
    assert edge_profile(5, 2, 101, 1) == {(1, 1), (2, 1)}
    assert edge_profile(3, 1, 5, 2) == {(1, 2)}
    assert edge_profile(3, 1, 7, 2) == {(1, 1), (1, 2)}
    assert edge_profile(3, 2, 17, 2) == {(1, 2), (2, 2)}
    assert edge_profile(5, 1, 3, 1) == frozenset()


def test_decompose_examples():
    d = decompose(build_graph(1155))
    assert sorted(tuple(c.primes) for c in d.components) == [(3, 7), (5, 11)]
    assert d.cyclic_part == 1
    d = decompose(build_graph(255))
    assert d.components == () and d.cyclic_part == 255
    d = decompose(build_graph(1827))
    assert len(d.components) == 1 and d.cyclic_part == 1


def test_decompose_keeps_isolated_prime_powers_apart():
    d = decompose(build_graph(9 * 5))
    assert d.components == () and d.prime_powers == ((3, 2),)
    assert d.cyclic_part == 5


@given(st.integers(1, 10**7))
def test_decompose_reassembles(n):
    assert decompose(build_graph(n)).reassemble() == n


def test_central_subsets_examples():
    assert set(central_subsets(build_graph(30))) == {frozenset({2, 3, 5}), frozenset({3, 5})}
    assert central_subsets(build_graph(7)) == [frozenset({7})]
    assert set(central_subsets(build_graph(6))) == {frozenset({2, 3}), frozenset({3})}


def test_central_subsets_need_squarefree():
    with pytest.raises(ValueError):
        central_subsets(build_graph(12))


def _squarefree(max_factors=4):
    return st.lists(st.sampled_from(SMALL_PRIMES), min_size=1, max_size=max_factors, unique=True).map(math.prod)


@given(_squarefree())
def test_central_subsets_closed_upward(n):
    g = build_graph(n)
    cs = set(central_subsets(g))
    assert frozenset(g.primes) in cs
    for s in cs:
        for p in g.primes:
            assert s | {p} in cs


@given(_squarefree(), _squarefree())
def test_graph_of_coprime_product_contains_both(a, b):
    if math.gcd(a, b) != 1:
        return
    g, ga, gb = build_graph(a * b), build_graph(a), build_graph(b)
    edges = {(g.vertices[i], g.vertices[j]) for i, j in g.edges}
    for h in (ga, gb):
        assert {(h.vertices[i], h.vertices[j]) for i, j in h.edges} <= edges


def test_degrees_and_literal_naming():
    g30 = build_graph(30)
    two = g30.index(2)
    assert degrees(g30, two) == (0, 2)
    assert two in terminal_vertices(g30)
    g = build_graph(7)
    assert degrees(g, 0) == (0, 0)
    assert initial_vertices(g) == terminal_vertices(g) == [0]
    g1827 = build_graph(1827)
    v = g1827.index(29)
    assert degrees(g1827, v) == (1, 0)
    assert initial_vertices(g1827) == [v]


def test_dot_output():
    assert to_dot(build_graph(6)).count("->") == 1
    dot = to_dot(build_graph(1827))
    assert dot.count("->") == 2 and dot.count("dashed") == 1
    dot = to_dot(build_graph(255))
    assert "->" not in dot and dot.count('";') == 3


@given(st.integers(1, 10**9))
def test_json_round_trip(n):
    g = build_graph(n)
    text = to_json(g)
    assert from_json(text) == g
    assert json.loads(text)["n"] == n


def test_json_shape():
    d = to_dict(build_graph(1827))
    assert d["vertices"] == [{"p": 3, "a": 2}, {"p": 7, "a": 1}, {"p": 29, "a": 1}]
    assert [(e["from"], e["to"], e["strength"]) for e in d["edges"]] == [
        ("3^2", "7^1", "weak"), ("7^1", "29^1", "n/a")]


def test_build_graph_accepts_factorization():
    assert build_graph(factorize(1827)) == build_graph(1827)
    assert isinstance(build_graph(1), HolderGraph) and len(build_graph(1)) == 0
