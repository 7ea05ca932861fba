"""Can a graph of one class be Markov equivalent to some graph of another?

Each predicate returns a ``ReprVerdict``.  ``violated_condition`` names are
a stable, machine-readable contract used by the CLI.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Any, Optional

from lmg.classes import Check, chain_components, in_class, is_bg, is_rcg, is_ug, require
from lmg.equivalence import minimal_collider_paths, unshielded_colliders, unshielded_noncolliders
from lmg.graph import (
    EdgeType, MixedGraph, _is_chordless, arc_direction_preserving_cycles, chordless_cycles,
    collider_p4_or_c4, connected_components, dominating_node, induced_p4_or_c4, is_chordal,
)

__all__ = [
    "Reason", "ReprVerdict", "representable_as_dag", "representable_as_dag_bg",
    "representable_as_dag_ug", "representable_as_dag_rcg", "dag_necessary_condition",
    "representable_as_ug", "representable_as_bg", "representable_as_ug_bg",
    "representable_as_bg_ug", "representable_as_rcg", "rcg_obstructions", "representable",
    "TARGETS",
]

TARGETS = ("dag", "ug", "bg", "rcg")


class Reason(str, Enum):
    NON_CHORDAL_LINES = "NonChordalLines"
    MINIMAL_COLLIDER_PATH_4 = "MinimalColliderPath4"
    UNSHIELDED_COLLIDER = "UnshieldedCollider"
    UNSHIELDED_NONCOLLIDER = "UnshieldedNonCollider"
    ARC_DIR_CYCLE = "ArcDirPreservingCycleObstruction"
    COLLIDER_P4C4 = "ColliderP4C4"
    P4C4 = "P4C4"
    NON_CHORDAL = "NonChordal"
    NON_COMPLETE = "NonComplete"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class ReprVerdict:
    possible: bool
    violated_condition: Optional[Reason] = None
    witness: Any = None

    def __post_init__(self):
        if self.possible != (self.violated_condition is None):
            raise ValueError("a verdict is possible exactly when no condition is violated")

    def __bool__(self):
        return self.possible

    def explain(self) -> str:
        if self.possible:
            return "possible"
        w = self.witness
        if isinstance(w, tuple) and all(isinstance(x, str) for x in w):
            w = "<" + ",".join(w) + ">"
        return f"{self.violated_condition}: {w}"


YES = ReprVerdict(True)


def _no(reason: Reason, witness) -> ReprVerdict:
    return ReprVerdict(False, reason, witness)


def _lines_chordal(g: MixedGraph, reason: Reason) -> Optional[ReprVerdict]:
    lines = g.edge_type_subgraph(EdgeType.LINE)
    if is_chordal(lines):
        return None
    return _no(reason, chordless_cycles(lines)[0])


# -- DAG target --------------------------------------------------------------

# Minimal collider paths of exactly four nodes rule a DAG out, and so do
# minimal collider cycles on four nodes when they induce a chordless C4.
# A 4-cycle with a chord can always be oriented without a collider path.
# ``at_least=True`` widens both to four or more nodes.
DEFAULT_AT_LEAST = False


def _four_node_obstruction(g: MixedGraph, at_least: bool) -> Optional[tuple]:
    mcp = minimal_collider_paths(g, check=False)
    fits = (lambda p: len(p) >= 4) if at_least else (lambda p: len(p) == 4)
    found = [p for p in mcp.paths if fits(p)]
    found += [c for c in mcp.cycles if fits(c) and _is_chordless(g, c)]
    return min(found) if found else None


def representable_as_dag(g: MixedGraph, at_least: bool = DEFAULT_AT_LEAST) -> ReprVerdict:
    """A MAG has an equivalent DAG iff its lines form a chordal graph and it
    has no minimal collider path, or chordless minimal collider cycle, on
    four nodes."""
    require(g, "mag")
    bad = _lines_chordal(g, Reason.NON_CHORDAL_LINES)
    if bad is not None:
        return bad
    four = _four_node_obstruction(g, at_least)
    if four is not None:
        return _no(Reason.MINIMAL_COLLIDER_PATH_4, four)
    return YES


def representable_as_dag_bg(g: MixedGraph) -> ReprVerdict:
    require(g, "bg")
    seq = induced_p4_or_c4(g)
    return YES if seq is None else _no(Reason.P4C4, seq)


def representable_as_dag_ug(g: MixedGraph) -> ReprVerdict:
    require(g, "ug")
    bad = _lines_chordal(g, Reason.NON_CHORDAL)
    return YES if bad is None else bad


def representable_as_dag_rcg(g: MixedGraph) -> ReprVerdict:
    """Chordal lines, and no collider P4/C4 inside any ``τ ∪ pa(τ)``."""
    require(g, "rcg")
    bad = _lines_chordal(g, Reason.NON_CHORDAL_LINES)
    if bad is not None:
        return bad
    chains = chain_components(g)
    for k, comp in enumerate(chains.components):
        sub = g.induced_subgraph(set(comp) | chains.parents_of(g, k))
        seq = collider_p4_or_c4(sub)
        if seq is not None:
            return _no(Reason.COLLIDER_P4C4, seq)
    return YES


def _arc_components(g: MixedGraph) -> list[list[str]]:
    return connected_components(g.edge_type_subgraph(EdgeType.ARC))


def _dominated(g: MixedGraph, groups) -> Check:
    for nodes in groups:
        if dominating_node(g.induced_subgraph(nodes)) is None:
            return Check(False, tuple(sorted(nodes)), "no node adjacent to all others")
    return Check(True)


def dag_necessary_condition(g: MixedGraph) -> Check:
    """Cheap necessary condition for DAG-representability.

    BGs: every connected component has a node adjacent to the rest of it.
    RCGs: such a node exists in every ``τ ∪ pa(τ)``.  Other MAGs: the same,
    with ``τ`` ranging over connected components of the arc subgraph.
    A false result guarantees the graph has no equivalent DAG.
    """
    if is_bg(g):
        return _dominated(g, connected_components(g))
    if is_rcg(g):
        chains = chain_components(g)
        return _dominated(g, [set(c) | chains.parents_of(g, k)
                              for k, c in enumerate(chains.components)])
    require(g, "mag")
    groups = []
    for comp in _arc_components(g):
        pa = set()
        for v in comp:
            pa |= g.parents(v)
        groups.append(set(comp) | pa)
    return _dominated(g, groups)


# -- UG and BG targets -------------------------------------------------------


def representable_as_ug(g: MixedGraph) -> ReprVerdict:
    require(g, "mag")
    found = sorted(unshielded_colliders(g))
    return _no(Reason.UNSHIELDED_COLLIDER, found[0]) if found else YES


def representable_as_bg(g: MixedGraph) -> ReprVerdict:
    require(g, "mag")
    found = sorted(unshielded_noncolliders(g))
    return _no(Reason.UNSHIELDED_NONCOLLIDER, found[0]) if found else YES


def _missing_pair(g: MixedGraph):
    """Non-adjacent pair inside one connected component."""
    for comp in connected_components(g):
        for x, u in enumerate(comp):
            for v in comp[x + 1:]:
                if not g.adjacent(u, v):
                    return (u, v)
    return None


def representable_as_ug_bg(g: MixedGraph) -> ReprVerdict:
    """A BG has an equivalent UG iff each connected component is complete."""
    require(g, "bg")
    pair = _missing_pair(g)
    return YES if pair is None else _no(Reason.NON_COMPLETE, pair)


def representable_as_bg_ug(g: MixedGraph) -> ReprVerdict:
    """A UG has an equivalent BG iff each connected component is complete."""
    require(g, "ug")
    pair = _missing_pair(g)
    return YES if pair is None else _no(Reason.NON_COMPLETE, pair)


# -- RCG target --------------------------------------------------------------


def _arc_into_arrow(g: MixedGraph, cycle: tuple[str, ...]) -> list[tuple[str, str, str]]:
    """Non-collider patterns ``i <-> j -> k`` along a cycle listed in arrow direction."""
    out = []
    k = len(cycle)
    for x in range(k):
        i, j, nxt = cycle[x - 1], cycle[x], cycle[(x + 1) % k]
        if g.edge(i, j).kind is EdgeType.ARC and nxt in g.children(j):
            out.append((i, j, nxt))
    return out


def _covered(g: MixedGraph, i: str, j: str) -> bool:
    """Some unshielded collider ``<i, j, l>`` exists."""
    return any(l != i and not g.adjacent(i, l) and g.is_collider(i, j, l)
               for l in g.adjacents(j))


def rcg_obstructions(g: MixedGraph) -> list[tuple[str, ...]]:
    """Arc-direction-preserving cycles whose every ``i <-> j -> k`` pattern is
    covered by an unshielded collider ``<i, j, l>``."""
    return [c for c in arc_direction_preserving_cycles(g)
            if all(_covered(g, i, j) for i, j, _ in _arc_into_arrow(g, c))]


def representable_as_rcg(g: MixedGraph) -> ReprVerdict:
    require(g, "mag")
    bad = rcg_obstructions(g)
    return _no(Reason.ARC_DIR_CYCLE, bad[0]) if bad else YES


# -- dispatch ---------------------------------------------------------------


def representable(g: MixedGraph, target: str) -> ReprVerdict:
    """Most specific applicable condition for ``g`` and the target class."""
    target = target.lower()
    if target not in TARGETS:
        raise ValueError(f"unknown target class {target!r}")
    if in_class(g, target):
        return YES
    if target == "dag":
        if is_ug(g):
            return representable_as_dag_ug(g)
        if is_bg(g):
            return representable_as_dag_bg(g)
        if is_rcg(g):
            return representable_as_dag_rcg(g)
        return representable_as_dag(g)
    if target == "ug":
        if is_bg(g):
            return representable_as_ug_bg(g)
        return representable_as_ug(g)
    if target == "bg":
        if is_ug(g):
            return representable_as_bg_ug(g)
        return representable_as_bg(g)
    if is_rcg(g):
        return YES
    return representable_as_rcg(g)
