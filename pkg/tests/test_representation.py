import pytest
from hypothesis import given

from lmg.classes import is_bg, is_rcg, is_ug
from lmg.errors import ClassViolation
from lmg.graph import graph
from lmg.oracle import exhaustive_representable, models_equal
from lmg.representation import (
    Reason, ReprVerdict, dag_necessary_condition, representable, representable_as_bg,
    representable_as_bg_ug, representable_as_dag, representable_as_dag_bg,
    representable_as_dag_rcg, representable_as_dag_ug, representable_as_rcg,
    representable_as_ug, representable_as_ug_bg,
)

from tests.strategies import seeded

C4_UG = graph("a -- b, b -- c, c -- d, d -- a")
P4_BG = graph("a <-> b, b <-> c, c <-> d")


def test_ug_examples():
    assert representable_as_dag_ug(graph("a -- b, b -- c, a -- c"))
    v = representable_as_dag_ug(C4_UG)
    assert not v and v.violated_condition is Reason.NON_CHORDAL
    assert not representable_as_dag(C4_UG)


def test_bg_examples():
    assert representable_as_dag_bg(graph("a <-> b, b <-> c"))
    v = representable_as_dag_bg(P4_BG)
    assert not v and v.violated_condition is Reason.P4C4 and v.witness == ("a", "b", "c", "d")


def test_rcg_examples():
    assert representable_as_dag_rcg(graph("a -- b, b -> c, d -> c"))
    v = representable_as_dag_rcg(graph("a -> b, b <-> c, c <-> d, e -> d"))
    assert not v and v.violated_condition is Reason.COLLIDER_P4C4


def test_mag_dag_obstruction():
    v = representable_as_dag(P4_BG)
    assert not v and v.violated_condition is Reason.MINIMAL_COLLIDER_PATH_4
    assert v.witness == ("a", "b", "c", "d")
    assert representable_as_dag(graph("a <-> b, b <-> c"))


def test_ug_and_bg_targets():
    v = representable_as_ug(graph("a -> b, c -> b"))
    assert not v and v.witness == ("a", "b", "c")
    assert representable_as_ug(graph("a -> b, b -> c"))
    v = representable_as_bg(graph("a -> b, b -> c"))
    assert not v and v.violated_condition is Reason.UNSHIELDED_NONCOLLIDER
    assert representable_as_bg(graph("a -> b, c -> b"))


def test_ug_bg_completeness_per_component():
    assert representable_as_ug_bg(graph("a <-> b", "a b c"))
    assert not representable_as_ug_bg(graph("a <-> b, b <-> c"))
    assert representable_as_bg_ug(graph("a -- b, b -- c, a -- c", "a b c d"))
    v = representable_as_bg_ug(graph("a -- b, b -- c"))
    assert not v and v.violated_condition is Reason.NON_COMPLETE and v.witness == ("a", "c")


def test_rcg_target():
    # the arc-direction-preserving cycle i -> k <-> j <-> i is not covered
    assert representable_as_rcg(graph("i <-> j, j <-> k, i -> k"))
    assert representable_as_rcg(graph("a <-> b, b <-> c"))
    # v4 -> v1 <-> v3 pins the head at v1, so v1 -> v2 <-> v3 <-> v1 cannot be undone
    g = graph("v1 -> v2, v1 <-> v3, v4 -> v1, v2 <-> v3")
    v = representable_as_rcg(g)
    assert not v and v.violated_condition is Reason.ARC_DIR_CYCLE
    assert exhaustive_representable(g, "rcg") is None


def test_rcg_target_literal_condition_is_conservative():
    # The covered-cycle condition rejects this MAG although the DAG
    # v3 -> v1, v4 -> v1, v1 -> v2, v3 -> v2, v4 -> v2 is equivalent to it.
    g = graph("v1 -> v2, v3 -> v1, v1 <-> v4, v3 -> v2, v2 <-> v4")
    assert not representable_as_rcg(g)
    dag = graph("v3 -> v1, v4 -> v1, v1 -> v2, v3 -> v2, v4 -> v2")
    assert models_equal(g, dag)


def test_dispatch_and_errors():
    assert representable(graph("a -> b"), "dag")
    assert representable(C4_UG, "ug")
    assert representable(C4_UG, "dag").violated_condition is Reason.NON_CHORDAL
    with pytest.raises(ValueError):
        representable(C4_UG, "pag")
    with pytest.raises(ClassViolation):
        representable_as_dag_ug(P4_BG)
    with pytest.raises(ClassViolation):
        representable_as_ug(graph("a -- b, c -> b"))


def test_verdict_invariants():
    with pytest.raises(ValueError):
        ReprVerdict(True, Reason.P4C4)
    with pytest.raises(ValueError):
        ReprVerdict(False)
    v = representable_as_dag(P4_BG)
    assert v.explain() == "MinimalColliderPath4: <a,b,c,d>"
    assert ReprVerdict(True).explain() == "possible"


def test_necessary_condition_examples():
    assert dag_necessary_condition(graph("a <-> b, b <-> c"))
    chk = dag_necessary_condition(P4_BG)
    assert not chk and chk.witness == ("a", "b", "c", "d")


# -- properties --------------------------------------------------------------


@given(seeded("mag", 1, 6))
def test_dispatch_is_consistent_with_general_conditions(g):
    # the class-specific and MAG-level predicates must give the same verdict
    general = bool(representable_as_dag(g))
    assert bool(representable(g, "dag")) == general
    if is_ug(g):
        assert bool(representable_as_dag_ug(g)) == general
    if is_bg(g):
        assert bool(representable_as_dag_bg(g)) == general
    if is_rcg(g):
        assert bool(representable_as_dag_rcg(g)) == general


@given(seeded("mag", 1, 6))
def test_necessary_condition_is_necessary(g):
    if not dag_necessary_condition(g):
        assert not representable_as_dag(g)


@given(seeded("mag", 1, 6))
def test_at_least_variant_agrees(g):
    assert bool(representable_as_dag(g)) == bool(representable_as_dag(g, at_least=True))


@given(seeded("ug", 1, 6))
def test_ug_to_bg_matches_general(g):
    assert bool(representable_as_bg_ug(g)) == bool(representable_as_bg(g))


@given(seeded("bg", 1, 6))
def test_bg_to_ug_matches_general(g):
    assert bool(representable_as_ug_bg(g)) == bool(representable_as_ug(g))


@given(seeded("mag", 1, 6))
def test_verdicts_are_well_formed(g):
    for target in ("dag", "ug", "bg", "rcg"):
        v = representable(g, target)
        assert v.possible == (v.violated_condition is None) == (v.witness is None)
