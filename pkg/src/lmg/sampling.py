"""Random graphs for property tests and experiments.

All samplers take an explicit ``random.Random`` so runs are reproducible.
"""

from __future__ import annotations

import itertools
import random
from typing import Optional

from lmg.classes import in_class, is_maximal
from lmg.errors import LMGError
from lmg.graph import HEAD, TAIL, Edge, MixedGraph
from lmg.oracle import CLASS_RULES, _build, assignments, labels

__all__ = ["random_lmg", "random_ancestral", "random_mag", "random_of_class",
           "random_same_skeleton", "mutate"]

_MARKS = ((TAIL, TAIL), (TAIL, HEAD), (HEAD, TAIL), (HEAD, HEAD))


def _pairs(nodes, p: float, rng: random.Random):
    return [pq for pq in itertools.combinations(nodes, 2) if rng.random() < p]


def random_lmg(n: int, rng: random.Random, p: float = 0.5,
               nodes: Optional[tuple] = None) -> MixedGraph:
    nodes = nodes or labels(n)
    return MixedGraph(nodes, [Edge.make(a, b, *rng.choice(_MARKS))
                              for a, b in _pairs(nodes, p, rng)])


def _layered(n: int, rng: random.Random, p: float, arc_p: float, line_share: float) -> MixedGraph:
    """Lines among an initial block, arrows out of it, arrows or arcs along
    a random order elsewhere.  Not necessarily ancestral (arcs may close a
    directed path)."""
    nodes = labels(n)
    order = list(nodes)
    rng.shuffle(order)
    k = sum(rng.random() < line_share for _ in order)
    lined = set(order[:k])
    rank = {v: x for x, v in enumerate(order)}
    edges = []
    for a, b in _pairs(nodes, p, rng):
        u, w = (a, b) if rank[a] < rank[b] else (b, a)
        if u in lined and w in lined:
            edges.append(Edge.make(u, w, TAIL, TAIL))
        elif u in lined or rng.random() >= arc_p:
            edges.append(Edge.make(u, w, TAIL, HEAD))
        else:
            edges.append(Edge.make(u, w, HEAD, HEAD))
    return MixedGraph(nodes, edges)


def random_ancestral(n: int, rng: random.Random, p: float = 0.5, arc_p: float = 0.4,
                     line_share: float = 0.3, tries: int = 1000) -> MixedGraph:
    for _ in range(tries):
        g = _layered(n, rng, p, arc_p, line_share)
        if in_class(g, "ancestral"):
            return g
    raise LMGError("could not sample an ancestral graph")


def random_mag(n: int, rng: random.Random, p: float = 0.5, arc_p: float = 0.4,
               line_share: float = 0.3, tries: int = 1000) -> MixedGraph:
    for _ in range(tries):
        g = random_ancestral(n, rng, p, arc_p, line_share)
        if is_maximal(g):
            return g
    raise LMGError("could not sample a MAG")


def _random_rcg(n: int, rng: random.Random, p: float, arc_p: float, line_share: float) -> MixedGraph:
    # Chain construction: arc blocks along a random order, arrows only from
    # later blocks to earlier ones, lines inside the undirected part.
    for _ in range(1000):
        g = _layered(n, rng, p, arc_p, line_share)
        if in_class(g, "rcg"):
            return g
    raise LMGError("could not sample an RCG")


def random_of_class(n: int, cls: str, rng: random.Random, p: float = 0.5) -> MixedGraph:
    cls = cls.lower()
    nodes = labels(n)
    if cls == "ug":
        return MixedGraph(nodes, [Edge.make(a, b, TAIL, TAIL) for a, b in _pairs(nodes, p, rng)])
    if cls == "bg":
        return MixedGraph(nodes, [Edge.make(a, b, HEAD, HEAD) for a, b in _pairs(nodes, p, rng)])
    if cls == "dag":
        return _layered(n, rng, p, 0.0, 0.0)
    if cls == "rcg":
        return _random_rcg(n, rng, p, 0.4, 0.3)
    if cls == "ancestral":
        return random_ancestral(n, rng, p)
    if cls == "mag":
        return random_mag(n, rng, p)
    if cls == "lmg":
        return random_lmg(n, rng, p)
    raise ValueError(f"unknown class {cls!r}")


def random_same_skeleton(g: MixedGraph, cls: str, rng: random.Random,
                         tries: int = 50) -> Optional[MixedGraph]:
    """Random member of ``cls`` on ``g``'s skeleton, or None if none is hit."""
    pairs = sorted(g.skeleton_pairs())
    rules = CLASS_RULES[cls.lower()]
    for _ in range(tries):
        for marks in assignments(g.nodes, pairs, rules, rng=rng):
            h = _build(g.nodes, pairs, marks)
            ok = (in_class(h, "ancestral") and is_maximal(h)) if cls.lower() == "mag" \
                else in_class(h, cls)
            if ok:
                return h
            break
    return None


def mutate(g: MixedGraph, rng: random.Random, k: int = 1) -> MixedGraph:
    """Re-mark up to ``k`` random edges, keeping the skeleton."""
    edges = list(g.edges)
    if not edges:
        return g
    h = g
    for e in rng.sample(edges, min(k, len(edges))):
        marks = [m for m in _MARKS if m != (e.mark_a, e.mark_b)]
        h = h.with_edge(e.a, e.b, *rng.choice(marks))
    return h
