"""Build a Markov-equivalent graph of a target class from a MAG.

Every transform refuses inputs that fail the matching representability
condition unless ``force=True``; forced runs are reported unverified.
"""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

from lmg.classes import in_class, require
from lmg.errors import PreconditionViolated, TransformError
from lmg.graph import (
    HEAD, TAIL, Edge, EdgeType, MixedGraph, arc_direction_preserving_cycles,
    maximum_cardinality_search,
)
from lmg.representation import (
    _arc_into_arrow, _covered, representable_as_bg, representable_as_dag,
    representable_as_rcg, representable_as_ug,
)

__all__ = ["McsOrder", "Step", "TransformReport", "mcs_order", "to_dag", "to_ug", "to_bg",
           "to_rcg", "transform", "TRANSFORMS"]


@dataclass(frozen=True)
class McsOrder:
    """Rank (1-based) of each node in a maximum cardinality search."""

    ordering: dict

    @property
    def sequence(self) -> list[str]:
        return sorted(self.ordering, key=self.ordering.__getitem__)


def mcs_order(g: MixedGraph) -> McsOrder:
    require(g, "ug")
    return McsOrder({v: k + 1 for k, v in enumerate(maximum_cardinality_search(g))})


class Step(NamedTuple):
    step: int
    before: Edge
    after: Edge

    def __str__(self):
        return f"step {self.step}: {self.before.a}~{self.before.b} {self.before} => {self.after}"


@dataclass
class TransformReport:
    target: str
    input: MixedGraph
    output: MixedGraph
    steps: list = field(default_factory=list)
    verified: Optional[bool] = None

    def replay(self) -> MixedGraph:
        g = self.input
        for s in self.steps:
            if g.edge(s.before.a, s.before.b) != s.before:
                raise TransformError(f"log does not match graph at {s}")
            g = g.with_edge(s.after.a, s.after.b, s.after.mark_a, s.after.mark_b)
        return g

    def lines(self) -> list[str]:
        return [str(s) for s in self.steps]


class _Work:
    """Mutable working copy that logs every rewrite."""

    def __init__(self, g: MixedGraph):
        self.g = g
        self.steps: list[Step] = []

    def set(self, step: int, u: str, v: str, mark_u, mark_v) -> None:
        before = self.g.edge(u, v)
        after = Edge.make(u, v, mark_u, mark_v)
        if before == after:
            return
        self.g = self.g.with_edge(u, v, mark_u, mark_v)
        self.steps.append(Step(step, before, after))


def _precondition(g: MixedGraph, verdict, target: str, force: bool) -> None:
    if not force and not verdict.possible:
        raise PreconditionViolated(f"no Markov-equivalent {target.upper()} exists: {verdict.explain()}",
                                   verdict)


def _verify(report: TransformReport, force: bool, verify: bool) -> TransformReport:
    if force:
        report.verified = False
    if verify:
        from lmg.oracle import models_equal
        report.verified = bool(in_class(report.output, report.target)) and models_equal(
            report.input, report.output)
    return report


def _pick(options: list, rng: Optional[random.Random]):
    return options[0] if rng is None else rng.choice(options)


def to_dag(g: MixedGraph, force: bool = False, verify: bool = False,
           rng: Optional[random.Random] = None) -> TransformReport:
    """Markov-equivalent DAG of a MAG.

    Lines are oriented along a maximum cardinality search; every arc on an
    unshielded collider becomes an arrow into the collider; the remaining
    arcs follow a topological order of the arrows.
    ``rng`` randomises the rewrite order of the collider step.
    """
    if not force:
        _precondition(g, representable_as_dag(g), "dag", force)
    work = _Work(g)

    lines = g.edge_type_subgraph(EdgeType.LINE)
    rank = {v: k for k, v in enumerate(maximum_cardinality_search(lines))}
    for e in lines.edges:
        lo, hi = (e.a, e.b) if rank[e.a] < rank[e.b] else (e.b, e.a)
        work.set(2, lo, hi, TAIL, HEAD)

    budget = sum(e.kind is EdgeType.ARC for e in g.edges)
    while True:
        h = work.g
        options = []
        for k in h.nodes:
            for i, j in _pairs(sorted(h.adjacents(k))):
                if h.adjacent(i, j) or not h.is_collider(i, k, j):
                    continue
                arcs = [x for x in (i, j) if h.endmark(x, k) is HEAD]
                if arcs:
                    options.append((k, arcs))
        if not options:
            break
        k, arcs = _pick(options, rng)
        for x in arcs:
            work.set(3, x, k, TAIL, HEAD)
        budget -= len(arcs)
        if budget < 0:
            raise TransformError("collider rewriting did not terminate")

    h = work.g
    order = _topological(h)
    if order is None:
        raise TransformError("direction-preserving cycle after rewriting colliders; "
                             "no ordering of the arrows exists")
    pos = {v: k for k, v in enumerate(order)}
    for e in h.edges:
        if e.kind is EdgeType.ARC:
            src, dst = (e.a, e.b) if pos[e.a] < pos[e.b] else (e.b, e.a)
            work.set(6, src, dst, TAIL, HEAD)
    return _verify(TransformReport("dag", g, work.g, work.steps), force, verify)


def _pairs(items):
    for x in range(len(items)):
        for y in range(x + 1, len(items)):
            yield items[x], items[y]


def _topological(g: MixedGraph) -> Optional[list[str]]:
    """Arrow-respecting order of all nodes, smallest label first among ties."""
    indeg = {v: len(g.parents(v)) for v in g.nodes}
    heap = [v for v, d in indeg.items() if d == 0]
    heapq.heapify(heap)
    out = []
    while heap:
        v = heapq.heappop(heap)
        out.append(v)
        for c in g.children(v):
            indeg[c] -= 1
            if indeg[c] == 0:
                heapq.heappush(heap, c)
    return out if len(out) == len(g) else None


def to_ug(g: MixedGraph, force: bool = False, verify: bool = False) -> TransformReport:
    """Drop every arrowhead."""
    if not force:
        _precondition(g, representable_as_ug(g), "ug", force)
    work = _Work(g)
    for e in g.edges:
        work.set(1, e.a, e.b, TAIL, TAIL)
    return _verify(TransformReport("ug", g, work.g, work.steps), force, verify)


def to_bg(g: MixedGraph, force: bool = False, verify: bool = False) -> TransformReport:
    """Turn every edge into an arc."""
    if not force:
        _precondition(g, representable_as_bg(g), "bg", force)
    work = _Work(g)
    for e in g.edges:
        work.set(1, e.a, e.b, HEAD, HEAD)
    return _verify(TransformReport("bg", g, work.g, work.steps), force, verify)


def to_rcg(g: MixedGraph, force: bool = False, verify: bool = False,
           rng: Optional[random.Random] = None) -> TransformReport:
    """Markov-equivalent RCG of a MAG.

    While some arc-direction-preserving cycle carries ``i <-> j -> k`` with
    no unshielded collider ``<i, j, l>``, the arc becomes ``j -> i``.
    """
    if not force:
        _precondition(g, representable_as_rcg(g), "rcg", force)
    work = _Work(g)
    budget = sum(e.kind is EdgeType.ARC for e in g.edges)
    while True:
        h = work.g
        options = []
        for cyc in arc_direction_preserving_cycles(h):
            for i, j, _ in _arc_into_arrow(h, cyc):
                if not _covered(h, i, j) and (i, j) not in options:
                    options.append((i, j))
        if not options:
            break
        i, j = _pick(options, rng)
        work.set(1, j, i, TAIL, HEAD)
        budget -= 1
        if budget < 0:
            raise TransformError("arc rewriting did not terminate")
    return _verify(TransformReport("rcg", g, work.g, work.steps), force, verify)


TRANSFORMS = {"dag": to_dag, "ug": to_ug, "bg": to_bg, "rcg": to_rcg}


def transform(g: MixedGraph, target: str, force: bool = False, verify: bool = False) -> TransformReport:
    try:
        fn = TRANSFORMS[target.lower()]
    except KeyError:
        raise ValueError(f"unknown target class {target!r}") from None
    if in_class(g, target):
        return _verify(TransformReport(target.lower(), g, g, []), False, verify)
    return fn(g, force=force, verify=verify)
