import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lmg.classes import is_rcg
from lmg.equivalence import (
    collider_paths, colliders_with_order, discriminating_paths, distinguish, equivalent_cross,
    equivalent_dags, equivalent_mags, equivalent_rcgs, equivalent_simple, minimal_collider_paths,
    unshielded_colliders,
)
from lmg.errors import ClassViolation, DomainMismatch
from lmg.graph import graph
from lmg.oracle import models_equal
from lmg.sampling import random_same_skeleton

from tests.strategies import seeded


def test_discriminating_path_definition():
    g = graph("j -> q, q <-> l, q -> i, l <-> i")
    paths = discriminating_paths(g)
    assert [p.nodes for p in paths] == [("j", "q", "l", "i")]
    assert paths[0].target == ("q", "l", "i")
    assert discriminating_paths(graph("a -- b, b -- c")) == []


def test_dags_have_no_discriminating_paths_of_length_three():
    for p in discriminating_paths(graph("a -> b, b -> c, a -> c, d -> a")):
        assert len(p.nodes) >= 4


def test_colliders_with_order_examples():
    assert colliders_with_order(graph("i -> k, j -> k")).as_dict() == {("i", "k", "j"): 0}
    assert len(colliders_with_order(graph("a -- b, b -- c"))) == 0


def test_collider_of_order_one():
    # <i, j, k, h> discriminates for k: i -> j is not needed, i <-> j works
    g = graph("i <-> j, j <-> k, j -> h, k <-> h")
    table = colliders_with_order(g).as_dict()
    assert table[("i", "j", "k")] == 0
    assert table[("h", "k", "j")] == 1


def test_minimal_collider_paths_examples():
    cp = minimal_collider_paths(graph("i <-> j, j <-> k, k <-> l"))
    assert cp.paths == {("i", "j", "k"), ("j", "k", "l"), ("i", "j", "k", "l")}
    assert cp.cycles == frozenset()
    assert minimal_collider_paths(graph("a -- b, b -- c")).paths == frozenset()
    assert minimal_collider_paths(graph("i -> k, j -> k")).paths == {("i", "k", "j")}


def test_non_minimal_collider_path():
    g = graph("i <-> j, j <-> k, k <-> h, j <-> h")
    cp = minimal_collider_paths(g)
    assert ("h", "j", "i") in cp.paths or ("h", "j", "i")[::-1] in cp.paths
    assert not any(set(p) == {"i", "j", "k", "h"} for p in cp.paths)


@pytest.mark.parametrize("method", ["order", "paths"])
def test_equivalent_mags_examples(method):
    chains = [graph("i -> k, k -> j"), graph("j -> k, k -> i"), graph("k -> i, k -> j")]
    collider = graph("i -> k, j -> k")
    for a, b in itertools.combinations(chains, 2):
        assert equivalent_mags(a, b, method)
    for a in chains:
        assert not equivalent_mags(a, collider, method)
    singles = [graph("i -- j"), graph("i -> j"), graph("i <-> j")]
    for a, b in itertools.combinations(singles, 2):
        assert equivalent_mags(a, b, method)
    assert equivalent_mags(collider, collider, method)


def test_equivalent_mags_errors():
    with pytest.raises(DomainMismatch):
        equivalent_mags(graph("a -> b"), graph("a -> c"))
    with pytest.raises(ClassViolation):
        equivalent_mags(graph("a -- b, c -> b"), graph("a -- b, b -- c"))
    with pytest.raises(ValueError):
        equivalent_mags(graph("a -> b"), graph("a -> b"), method="bogus")


def test_equivalent_dags():
    assert not equivalent_dags(graph("a -> b, c -> b"), graph("a -> b, b -> c"))
    assert equivalent_dags(graph("a -> b, b -> c"), graph("b -> a, c -> b"))
    g = graph("a -> b, a -> c")
    assert equivalent_dags(g, g)


def test_equivalent_simple():
    g = graph("a -- b", "a b c")
    assert equivalent_simple(g, g)
    assert not equivalent_simple(g, graph("a -- b, b -- c"))
    k3 = graph("a <-> b, b <-> c, a <-> c")
    assert equivalent_simple(k3, k3)
    with pytest.raises(ClassViolation):
        equivalent_simple(g, graph("a <-> b", "a b c"))


def _rcg_pattern(missing_lji: bool):
    """RCG with unshielded colliders <l,h,k>, <l,j,i>, <k,i,j>."""
    edges = ["l -> h", "k -> h", "k <-> i", "i <-> j", "l -> j" if not missing_lji else "j -> l"]
    return graph(", ".join(edges))


def test_rcg_pattern_with_three_unshielded_colliders():
    g1 = _rcg_pattern(False)
    assert is_rcg(g1)
    assert unshielded_colliders(g1) == {("k", "h", "l"), ("i", "j", "l"), ("j", "i", "k")}
    g2 = graph("l -> h, k -> h, k <-> i, i <-> j, l <-> j", "h i j k l")
    assert is_rcg(g2)
    assert equivalent_rcgs(g1, g2) and models_equal(g1, g2)
    g3 = _rcg_pattern(True)
    assert is_rcg(g3)
    assert not equivalent_rcgs(g1, g3) and not models_equal(g1, g3)


def test_cross_class():
    assert equivalent_cross(graph("a -> b, c -> b"), graph("a <-> b, b <-> c"))
    assert equivalent_cross(graph("a -- b"), graph("a <-> b"))
    assert not equivalent_cross(graph("a -- b, b -- c"), graph("a <-> b, b <-> c"))


def test_distinguish():
    a, b = graph("i -> k, j -> k"), graph("i -> k, k -> j")
    assert "only in first graph" in distinguish(a, b, "order")
    assert distinguish(a, b, "paths").startswith("minimal collider path <i,k,j>")
    assert distinguish(a, b, "oracle") == "statement i ⊥ j | holds only in first graph"
    assert distinguish(a, graph("i -> k, j -> k, i -> j"), "order").startswith("skeleton edge")
    assert distinguish(a, a) is None


# -- properties --------------------------------------------------------------


@given(seeded("mag", 2, 5), st.integers(0, 2**32 - 1))
def test_criteria_agree_with_oracle(g, seed):
    h = random_same_skeleton(g, "mag", random.Random(seed))
    if h is None:
        return
    truth = models_equal(g, h)
    assert equivalent_mags(g, h, "order") == truth
    assert equivalent_mags(g, h, "paths") == truth


@given(seeded("mag", 1, 5), seeded("mag", 1, 5), seeded("mag", 1, 5))
def test_equivalence_relation(a, b, c):
    if not (a.nodes == b.nodes == c.nodes):
        return
    assert equivalent_mags(a, a)
    assert equivalent_mags(a, b) == equivalent_mags(b, a)
    if equivalent_mags(a, b) and equivalent_mags(b, c):
        assert equivalent_mags(a, c)


@given(seeded("rcg", 1, 6))
def test_rcg_orders_are_unshielded(g):
    for (a, _, b), _order in colliders_with_order(g).entries:
        assert not g.adjacent(a, b)


@given(seeded("rcg", 1, 6))
def test_rcg_minimal_collider_paths_are_chordless(g):
    for p in minimal_collider_paths(g).paths:
        for x, y in itertools.combinations(range(len(p)), 2):
            if y > x + 1:
                assert not g.adjacent(p[x], p[y])


@given(seeded("mag", 1, 5))
def test_collider_paths_are_collider_paths(g):
    for p in collider_paths(g):
        assert all(g.is_collider(*p[k:k + 3]) for k in range(len(p) - 2))
    cp = minimal_collider_paths(g)
    for p in cp.paths:
        assert not g.adjacent(p[0], p[-1]) and p[0] < p[-1]
    for p in cp.cycles:
        assert g.adjacent(p[0], p[-1]) and p[0] < p[-1]


@given(seeded("mag", 1, 5))
def test_order_zero_is_unshielded(g):
    table = colliders_with_order(g)
    for (a, m, b), order in table.entries:
        assert (order == 0) == (not g.adjacent(a, b))
        assert g.is_collider(a, m, b)
