import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lmg.classes import in_class
from lmg.errors import PreconditionViolated
from lmg.graph import graph
from lmg.oracle import models_equal
from lmg.representation import representable
from lmg.transform import mcs_order, to_bg, to_dag, to_rcg, to_ug, transform

from tests.strategies import seeded


def test_to_dag_example():
    r = to_dag(graph("a -- b, b -> c, c <-> d"), verify=True)
    assert r.output == graph("a -> b, b -> c, d -> c")
    assert r.lines() == ["step 2: a~b a -- b => a -> b", "step 3: c~d c <-> d => d -> c"]
    assert r.verified and r.replay() == r.output


def test_to_rcg_example():
    r = to_rcg(graph("i <-> j, j <-> k, i -> k"), verify=True)
    assert r.output == graph("i -> j, j <-> k, i -> k")
    assert [s.step for s in r.steps] == [1] and r.verified


def test_to_ug_and_to_bg():
    chain = graph("a -> b, b -> c")
    assert to_ug(chain).output == graph("a -- b, b -- c")
    collider = graph("a -> b, c -> b")
    assert to_bg(collider, verify=True).output == graph("a <-> b, b <-> c")


def test_preconditions():
    with pytest.raises(PreconditionViolated) as info:
        to_dag(graph("a -- b, b -- c, c -- d, d -- a"))
    assert not info.value.verdict.possible
    with pytest.raises(PreconditionViolated):
        to_ug(graph("a -> b, c -> b"))
    with pytest.raises(PreconditionViolated):
        to_bg(graph("a -> b, b -> c"))


def test_forced_runs_are_unverified():
    r = to_ug(graph("a -> b, c -> b"), force=True)
    assert r.output == graph("a -- b, b -- c") and r.verified is False
    r = to_ug(graph("a -> b, c -> b"), force=True, verify=True)
    assert r.verified is False


def test_transform_dispatch():
    g = graph("a -> b")
    r = transform(g, "dag")
    assert r.output is g and r.steps == []
    with pytest.raises(ValueError):
        transform(g, "pag")


def test_mcs_order():
    o = mcs_order(graph("a -- b, b -- c"))
    assert o.sequence == ["a", "b", "c"] and o.ordering["a"] == 1


# -- properties --------------------------------------------------------------


TARGETS = ["dag", "ug", "bg", "rcg"]


@given(seeded("mag", 1, 6), st.sampled_from(TARGETS))
def test_output_is_equivalent_member(g, target):
    if not representable(g, target):
        with pytest.raises(PreconditionViolated):
            transform(g, target)
        return
    r = transform(g, target, verify=True)
    assert r.verified
    assert in_class(r.output, target)
    assert r.output.skeleton_pairs() == g.skeleton_pairs()


@given(seeded("mag", 1, 6), st.sampled_from(TARGETS))
def test_idempotent_and_replayable(g, target):
    if not representable(g, target):
        return
    r = transform(g, target)
    assert r.replay() == r.output
    again = transform(r.output, target)
    assert again.output == r.output and again.steps == []


@given(seeded("mag", 1, 6), st.sampled_from(TARGETS))
def test_deterministic(g, target):
    if not representable(g, target):
        return
    assert transform(g, target).output == transform(g, target).output


@given(seeded("mag", 2, 6), st.integers(0, 2**32 - 1))
def test_rewrite_order_does_not_matter(g, seed):
    rng = random.Random(seed)
    if representable(g, "dag"):
        out = to_dag(g, rng=rng).output
        assert in_class(out, "dag") and models_equal(out, g)
    if representable(g, "rcg"):
        out = to_rcg(g, rng=rng).output
        assert in_class(out, "rcg") and models_equal(out, g)
