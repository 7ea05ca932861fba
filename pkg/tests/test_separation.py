import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lmg.classes import is_ancestral, is_mag
from lmg.errors import EnumerationLimit, InvalidQuery, MalformedPath
from lmg.graph import HEAD, TAIL, MixedGraph, graph
from lmg.separation import (
    IndependenceModel, _reach, independence_model, is_m_connecting, m_connecting_paths,
    m_separated, separating_sets,
)

from tests.strategies import mixed_graphs, seeded

COLLISION = graph("i -> k, j -> k")
CHAIN = graph("i -> k, k -> j")


def test_is_m_connecting():
    assert not is_m_connecting(COLLISION, ["i", "k", "j"], set())
    assert is_m_connecting(COLLISION, ["i", "k", "j"], {"k"})
    assert not is_m_connecting(CHAIN, ["i", "k", "j"], {"k"})


def test_single_edge_path_always_connects():
    assert is_m_connecting(graph("a <-> b, c -> a"), ["a", "b"], {"c"})


def test_malformed_paths():
    with pytest.raises(MalformedPath):
        is_m_connecting(COLLISION, ["i", "j"], ())
    with pytest.raises(MalformedPath):
        is_m_connecting(COLLISION, ["i", "k", "i"], ())
    with pytest.raises(MalformedPath):
        is_m_connecting(COLLISION, ["i"], ())


def test_m_separated():
    assert m_separated(COLLISION, "i", "j", ())
    assert not m_separated(COLLISION, "i", "j", {"k"})
    g = graph("a -> b, b <-> c, c -- d", None)
    with pytest.raises(InvalidQuery):
        m_separated(g, "a", "a", ())
    with pytest.raises(InvalidQuery):
        m_separated(g, "a", "b", "a")
    with pytest.raises(InvalidQuery):
        m_separated(g, (), "b")


def test_adjacent_never_separated():
    g = graph("a -> b, c -- d", "a b c d")
    for c in [(), ("c",), ("c", "d")]:
        assert not m_separated(g, "a", "b", c)


def test_descendant_of_collider_opens():
    g = graph("i -> k, j -> k, k -> d")
    assert not m_separated(g, "i", "j", "d")
    assert not m_separated(g, "i", "j", "d", method="paths")


def test_independence_model_examples():
    assert independence_model(MixedGraph(["a", "b"])).statements == (("a", "b", ()),)
    complete = graph("a -> b, b <-> c, a -> c")
    assert len(independence_model(complete)) == 0
    assert independence_model(CHAIN).statements == (("i", "j", ("k",)),)


def test_model_lines_and_lookup():
    m = independence_model(graph("a -> b", "a b c"))
    assert m.lines() == ["a ⊥ c |", "a ⊥ c | b", "b ⊥ c |", "b ⊥ c | a"]
    assert ("c", "a", ("b",)) in m
    assert m.separated({"a", "b"}, "c")


def test_model_guard():
    g = MixedGraph([f"n{k:02d}" for k in range(13)])
    with pytest.raises(EnumerationLimit):
        independence_model(g)


def test_max_condition_size():
    m = independence_model(CHAIN, max_condition_size=0)
    assert m.statements == ()


def test_walks_do_not_bounce_through_lines():
    # v5 sits between a line and two arrowheads, so the graph is not
    # ancestral; the walk v3 -> v5 -- v1 -- v5 <- v4 must not count.
    g = graph("v1 -- v5, v3 -> v5, v4 -> v5", "v1 v2 v3 v4 v5")
    assert m_separated(g, "v3", "v4", "v2")
    assert m_separated(g, "v3", "v4", "v2", method="paths")


# -- properties --------------------------------------------------------------


def _queries(g, data):
    a, b = data.draw(st.lists(st.sampled_from(g.nodes), min_size=2, max_size=2, unique=True))
    rest = [v for v in g.nodes if v not in (a, b)]
    c = data.draw(st.sets(st.sampled_from(rest))) if rest else set()
    return a, b, c


@given(mixed_graphs(min_nodes=2, max_nodes=7), st.data())
def test_reach_agrees_with_paths(g, data):
    for _ in range(5):
        a, b, c = _queries(g, data)
        assert m_separated(g, a, b, c) == m_separated(g, a, b, c, method="paths")


@given(seeded("ancestral", 2, 7), st.data())
def test_walk_search_agrees_on_ancestral_graphs(g, data):
    f = g.fast
    for _ in range(5):
        a, b, c = _queries(g, data)
        walk = bool(_reach(g, f.index[a], f.mask(c)) >> f.index[b] & 1)
        path = next(m_connecting_paths(g, a, b, c), None) is not None
        assert walk == path


@given(mixed_graphs(min_nodes=2, max_nodes=6), st.data())
def test_pairwise_reduction(g, data):
    nodes = list(g.nodes)
    a = set(data.draw(st.sets(st.sampled_from(nodes), min_size=1)))
    rest = [v for v in nodes if v not in a]
    if not rest:
        return
    b = set(data.draw(st.sets(st.sampled_from(rest), min_size=1)))
    rest = [v for v in rest if v not in b]
    c = set(data.draw(st.sets(st.sampled_from(rest)))) if rest else set()
    whole = m_separated(g, a, b, c)
    assert whole == all(m_separated(g, x, y, c) for x in a for y in b)
    assert whole == independence_model(g).separated(a, b, c)


@given(mixed_graphs(max_nodes=6), st.data())
def test_adding_an_edge_only_removes_statements(g, data):
    missing = [p for p in itertools.combinations(g.nodes, 2) if not g.adjacent(*p)]
    if not missing:
        return
    u, v = data.draw(st.sampled_from(missing))
    marks = data.draw(st.sampled_from([(TAIL, TAIL), (TAIL, HEAD), (HEAD, TAIL), (HEAD, HEAD)]))
    h = g.with_edge(u, v, *marks)
    assert set(independence_model(h)) <= set(independence_model(g))


@given(seeded("mag", 2, 6))
def test_mags_separate_non_adjacent_pairs(g):
    assert is_mag(g)
    model = independence_model(g)
    for a, b in itertools.combinations(g.nodes, 2):
        if not g.adjacent(a, b):
            assert any(s[:2] == (a, b) for s in model)
            assert next(separating_sets(g, a, b), None) is not None


@given(mixed_graphs(max_nodes=6))
def test_model_is_canonical(g):
    m = independence_model(g)
    assert list(m.statements) == sorted(set(m.statements))
    for i, j, c in m:
        assert i < j and i not in c and j not in c and list(c) == sorted(c)
    assert isinstance(m, IndependenceModel)
