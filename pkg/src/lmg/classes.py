"""Membership in the lower hierarchy: UG, BG, DAG, RCG, ancestral, maximal."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Optional

from lmg.errors import ClassViolation, EnumerationLimit
from lmg.graph import (
    EdgeType, MixedGraph, arc_direction_preserving_cycles,
    directed_cycle_exists, directed_cycles,
)
from lmg.separation import MODEL_NODE_LIMIT, separating_sets

__all__ = [
    "Check", "ClassMembership", "ChainDecomposition", "is_ug", "is_bg", "is_dag",
    "is_rcg", "is_ancestral", "is_maximal", "is_mag", "classify", "chain_components",
    "CLASSES", "in_class", "require",
]


@dataclass(frozen=True)
class Check:
    """Outcome of a membership predicate; truthy iff it holds."""

    ok: bool
    witness: Any = None
    reason: str = ""

    def __bool__(self):
        return self.ok


_YES = Check(True)


def _first_edge(g: MixedGraph, bad) -> Optional[Check]:
    for e in g.edges:
        if bad(e):
            return e
    return None


def is_ug(g: MixedGraph) -> Check:
    e = _first_edge(g, lambda e: e.kind is not EdgeType.LINE)
    return _YES if e is None else Check(False, e, "edge is not a line")


def is_bg(g: MixedGraph) -> Check:
    e = _first_edge(g, lambda e: e.kind is not EdgeType.ARC)
    return _YES if e is None else Check(False, e, "edge is not an arc")


def _directed_cycle_witness(g: MixedGraph) -> Optional[tuple]:
    if not directed_cycle_exists(g):
        return None
    return directed_cycles(g)[0]


def is_dag(g: MixedGraph) -> Check:
    e = _first_edge(g, lambda e: e.kind is not EdgeType.ARROW)
    if e is not None:
        return Check(False, e, "edge is not an arrow")
    cyc = _directed_cycle_witness(g)
    if cyc is not None:
        return Check(False, cyc, "direction-preserving cycle")
    return _YES


def _arrowhead_at_line(g: MixedGraph) -> Optional[str]:
    for v in g.nodes:
        if g.has_line(v) and g.has_arrowhead(v):
            return v
    return None


@lru_cache(maxsize=1 << 16)
def is_rcg(g: MixedGraph) -> Check:
    """No arrowhead at a line-incident node and no arc-direction-preserving
    cycle.  Cycles made only of arrows are excluded as well, so every RCG is
    ancestral."""
    v = _arrowhead_at_line(g)
    if v is not None:
        return Check(False, v, "arrowhead pointing to a line")
    cyc = _directed_cycle_witness(g)
    if cyc is not None:
        return Check(False, cyc, "direction-preserving cycle")
    cycles = arc_direction_preserving_cycles(g)
    if cycles:
        return Check(False, cycles[0], "arc-direction-preserving cycle")
    return _YES


@lru_cache(maxsize=1 << 16)
def is_ancestral(g: MixedGraph) -> Check:
    """Every node ``i`` has ``i`` outside ``an(pa(i) ∪ sp(i))`` and, when it
    has a neighbour, no parents or spouses.  The witness is the first
    violating node."""
    for i in g.nodes:
        if g.neighbours(i) and (g.parents(i) or g.spouses(i)):
            return Check(False, i, "arrowhead pointing to a line")
        if i in g.ancestors(g.parents(i) | g.spouses(i)):
            return Check(False, i, "node is an ancestor of its parents or spouses")
    return _YES


@lru_cache(maxsize=1 << 16)
def is_maximal(g: MixedGraph, limit: int = MODEL_NODE_LIMIT) -> Check:
    """Every non-adjacent pair has some separating set (exhaustive search)."""
    if len(g) > limit:
        raise EnumerationLimit(f"maximality check capped at {limit} nodes")
    nodes = g.nodes
    for x, i in enumerate(nodes):
        for j in nodes[x + 1:]:
            if g.adjacent(i, j):
                continue
            if next(separating_sets(g, i, j), None) is None:
                return Check(False, (i, j), "non-adjacent pair cannot be separated")
    return _YES


def is_mag(g: MixedGraph) -> Check:
    anc = is_ancestral(g)
    if not anc:
        return anc
    return is_maximal(g)


CLASSES = {
    "ug": is_ug,
    "bg": is_bg,
    "dag": is_dag,
    "rcg": is_rcg,
    "ancestral": is_ancestral,
    "mag": is_mag,
    "lmg": lambda g: _YES,
}


def in_class(g: MixedGraph, name: str) -> Check:
    try:
        pred = CLASSES[name.lower()]
    except KeyError:
        raise ValueError(f"unknown class {name!r}") from None
    return pred(g)


def require(g: MixedGraph, name: str, what: str = "graph") -> None:
    chk = in_class(g, name)
    if not chk:
        raise ClassViolation(f"{what} is not a {name.upper()}: {chk.reason} ({_fmt(chk.witness)})",
                             chk.witness)


def _fmt(w) -> str:
    if isinstance(w, tuple) and all(isinstance(x, str) for x in w):
        return " ".join(w)
    return str(w)


@dataclass(frozen=True)
class ClassMembership:
    is_ug: bool
    is_bg: bool
    is_dag: bool
    is_rcg: bool
    is_ancestral: bool
    is_maximal: bool
    witnesses: dict = field(default_factory=dict)

    @property
    def is_mag(self) -> bool:
        return self.is_ancestral and self.is_maximal

    def lines(self) -> list[str]:
        out = []
        for name in ("ug", "bg", "dag", "rcg", "ancestral", "maximal"):
            ok = getattr(self, "is_" + name)
            if ok:
                out.append(f"{name}: yes")
            else:
                reason, w = self.witnesses[name]
                out.append(f"{name}: no ({reason}: {_fmt(w)})")
        return out


def classify(g: MixedGraph) -> ClassMembership:
    checks = {
        "ug": is_ug(g), "bg": is_bg(g), "dag": is_dag(g), "rcg": is_rcg(g),
        "ancestral": is_ancestral(g), "maximal": is_maximal(g),
    }
    witnesses = {k: (c.reason, c.witness) for k, c in checks.items() if not c}
    return ClassMembership(*(bool(checks[k]) for k in
                             ("ug", "bg", "dag", "rcg", "ancestral", "maximal")), witnesses)


@dataclass(frozen=True)
class ChainDecomposition:
    """``components[0]`` is the chain component numbered 1.

    Arrows between components point from higher numbers to lower ones.
    ``undirected_part`` holds the line-incident nodes, which are not numbered.
    """

    components: tuple
    undirected_part: frozenset

    def parents_of(self, g: MixedGraph, k: int) -> set[str]:
        comp = self.components[k]
        out = set()
        for v in comp:
            out |= g.parents(v)
        return out - set(comp)


def chain_components(g: MixedGraph) -> ChainDecomposition:
    require(g, "rcg")
    undirected = frozenset(v for v in g.nodes if g.has_line(v))
    rest = [v for v in g.nodes if v not in undirected]
    comp_of: dict[str, int] = {}
    comps: list[list[str]] = []
    for s in rest:
        if s in comp_of:
            continue
        comp = []
        stack = [s]
        comp_of[s] = len(comps)
        while stack:
            v = stack.pop()
            comp.append(v)
            for u in g.spouses(v):
                if u not in comp_of:
                    comp_of[u] = len(comps)
                    stack.append(u)
        comps.append(sorted(comp))
    # Sinks of the component quotient get the lowest numbers.
    out_edges = {k: set() for k in range(len(comps))}
    for k, comp in enumerate(comps):
        for v in comp:
            for c in g.children(v):
                if c in comp_of and comp_of[c] != k:
                    out_edges[k].add(comp_of[c])
    remaining = set(range(len(comps)))
    ordered = []
    while remaining:
        sinks = [k for k in remaining if not (out_edges[k] & remaining)]
        if not sinks:
            raise ClassViolation("chain components do not form an acyclic quotient")
        k = min(sinks, key=lambda k: comps[k][0])
        ordered.append(tuple(comps[k]))
        remaining.remove(k)
    return ChainDecomposition(tuple(ordered), undirected)
