"""Brute-force ground truth.

Everything here is decided by comparing independence models directly, so
it can be used to check the graphical criteria elsewhere in the package.
Search spaces grow as ``4^edges``; guards keep a caller from wandering into
hours of enumeration by accident.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

from lmg.classes import in_class, is_maximal
from lmg.errors import DomainMismatch, EnumerationLimit
from lmg.graph import HEAD, TAIL, Edge, MixedGraph, simple_cycles
from lmg.separation import MODEL_NODE_LIMIT, independence_model, separating_sets

__all__ = [
    "OracleConfig", "GraphCatalog", "models_equal", "exhaustive_representable",
    "enumerate_class", "skeletons", "assignments", "CLASS_RULES",
]

_T, _H = False, True
LINE, ARROW, WORRA, ARC = (_T, _T), (_T, _H), (_H, _T), (_H, _H)


@dataclass(frozen=True)
class OracleConfig:
    """Node-count guards.  Configuration, not constants."""

    exhaustive_nodes: int = 5
    skeleton_nodes: int = 6
    model_nodes: int = MODEL_NODE_LIMIT


DEFAULT = OracleConfig()


@dataclass(frozen=True)
class _Rules:
    marks: tuple
    no_head_at_line: bool = False
    no_directed: bool = False
    no_arc_directed: bool = False   # arc-direction-preserving cycles
    no_almost_directed: bool = False  # directed path closed by a single arc


CLASS_RULES = {
    "lmg": _Rules((LINE, ARROW, WORRA, ARC)),
    "ug": _Rules((LINE,)),
    "bg": _Rules((ARC,)),
    "dag": _Rules((ARROW, WORRA), no_directed=True),
    "rcg": _Rules((LINE, ARROW, WORRA, ARC), True, True, True),
    "ancestral": _Rules((LINE, ARROW, WORRA, ARC), True, True, False, True),
    "mag": _Rules((LINE, ARROW, WORRA, ARC), True, True, False, True),
}


def _rules(name: str) -> _Rules:
    try:
        return CLASS_RULES[name.lower()]
    except KeyError:
        raise ValueError(f"unknown class {name!r}") from None


def models_equal(g1: MixedGraph, g2: MixedGraph, limit: int = MODEL_NODE_LIMIT) -> bool:
    """Identical pairwise independence models."""
    if g1.nodes != g2.nodes:
        raise DomainMismatch(f"node sets differ: {' '.join(g1.nodes)} vs {' '.join(g2.nodes)}")
    if g1 == g2:
        return True
    return (independence_model(g1, limit=limit).statements
            == independence_model(g2, limit=limit).statements)


# -- assignment engine -------------------------------------------------------


def _cycle_table(nodes: Sequence[str], pairs: Sequence[tuple[str, str]]):
    """Simple cycles of the skeleton as ``[(edge index, forward), ...]``,
    grouped by the largest edge index they use."""
    sk = MixedGraph(nodes, [Edge.make(a, b, TAIL, TAIL) for a, b in pairs])
    index = {p: k for k, p in enumerate(pairs)}
    by_last: dict[int, list] = {}
    for cyc in simple_cycles(sk):
        steps = []
        for u, v in zip(cyc, cyc[1:] + cyc[:1]):
            if u < v:
                steps.append((index[(u, v)], True))
            else:
                steps.append((index[(v, u)], False))
        by_last.setdefault(max(k for k, _ in steps), []).append(steps)
    return by_last


def _cycle_bad(steps, marks, rules: _Rules) -> bool:
    fwd = bwd = arcs = lines = 0
    for k, forward in steps:
        ma, mb = marks[k]
        if ma and mb:
            arcs += 1
        elif not ma and not mb:
            lines += 1
        elif mb == forward:
            fwd += 1
        else:
            bwd += 1
    one_way = not (fwd and bwd)
    if rules.no_directed and not arcs and not lines and one_way:
        return True
    if rules.no_arc_directed and arcs and (fwd or bwd) and one_way:
        return True
    if rules.no_almost_directed and arcs == 1 and not lines and one_way:
        return True
    return False


def assignments(nodes: Sequence[str], pairs: Sequence[tuple[str, str]], rules: _Rules,
                triples: Iterable[tuple[int, bool, int, bool, bool]] = (),
                rng=None) -> Iterator[tuple]:
    """Mark assignments of a fixed skeleton honouring the class ``rules``.

    ``pairs`` are ``(a, b)`` with ``a < b``; each assignment is a tuple of
    ``(head at a, head at b)``.  A triple constraint
    ``(edge1, at_b1, edge2, at_b2, collider)`` requires the heads at the
    shared node to form (or not form) a collider.  With ``rng`` the marks
    are tried in a random order at every level.
    """
    m = len(pairs)
    pos = {v: k for k, v in enumerate(nodes)}
    ends = [(pos[a], pos[b]) for a, b in pairs]
    cycles = _cycle_table(nodes, pairs) if (rules.no_directed or rules.no_arc_directed
                                            or rules.no_almost_directed) else {}
    trip_at: dict[int, list] = {}
    for t in triples:
        trip_at.setdefault(max(t[0], t[2]), []).append(t)
    heads = [0] * len(nodes)
    lineat = [0] * len(nodes)
    marks: list = [None] * m
    check_line = rules.no_head_at_line

    def rec(k):
        if k == m:
            yield tuple(marks)
            return
        a, b = ends[k]
        opts = rules.marks if rng is None else rng.sample(rules.marks, len(rules.marks))
        for mk in opts:
            ha, hb = mk
            is_line = not ha and not hb
            if check_line:
                if is_line and (heads[a] or heads[b]):
                    continue
                if (ha and lineat[a]) or (hb and lineat[b]):
                    continue
            marks[k] = mk
            ok = True
            for e1, at1, e2, at2, coll in trip_at.get(k, ()):
                if (marks[e1][at1] and marks[e2][at2]) != coll:
                    ok = False
                    break
            if ok:
                for steps in cycles.get(k, ()):
                    if _cycle_bad(steps, marks, rules):
                        ok = False
                        break
            if ok:
                heads[a] += ha
                heads[b] += hb
                lineat[a] += is_line
                lineat[b] += is_line
                yield from rec(k + 1)
                heads[a] -= ha
                heads[b] -= hb
                lineat[a] -= is_line
                lineat[b] -= is_line
        marks[k] = None

    yield from rec(0)


def _build(nodes, pairs, marks) -> MixedGraph:
    return MixedGraph(nodes, [Edge.make(a, b, HEAD if ma else TAIL, HEAD if mb else TAIL)
                              for (a, b), (ma, mb) in zip(pairs, marks)])


def _triple_constraints(g: MixedGraph, pairs, maximal: bool = True) -> Optional[list]:
    """Collider status forced on every unshielded triple by ``g``'s model.

    Conditioning on the middle node of a collider opens the triple, and
    leaving out a non-collider opens it too.  So ``b`` lying in every
    separating set of ``a, c`` forces a non-collider, lying in none forces
    a collider, and a mix rules out every graph on this skeleton.  A pair
    with no separating set rules out every maximal one.
    """
    index = {p: k for k, p in enumerate(pairs)}
    out = []
    for b in g.nodes:
        adj = sorted(g.adjacents(b))
        for a, c in itertools.combinations(adj, 2):
            if g.adjacent(a, c):
                continue
            seps = list(separating_sets(g, a, c))
            if not seps:
                if maximal:
                    return None
                continue
            inside = sum(b in s for s in seps)
            if 0 < inside < len(seps):
                return None
            e1 = index[(a, b) if a < b else (b, a)]
            e2 = index[(c, b) if c < b else (b, c)]
            out.append((e1, int(b > a), e2, int(b > c), inside == 0))
    return out


def exhaustive_representable(g: MixedGraph, target: str, prune: bool = True,
                             config: OracleConfig = DEFAULT) -> Optional[MixedGraph]:
    """First graph of class ``target`` on ``g``'s skeleton with ``g``'s model.

    Candidates are streamed in a fixed order so the answer is deterministic.
    ``prune=False`` drops the triple constraints, leaving a plain filter.
    """
    if len(g) > config.skeleton_nodes:
        raise EnumerationLimit(f"exhaustive search capped at {config.skeleton_nodes} nodes")
    if in_class(g, target):
        return g
    rules = _rules(target)
    pairs = sorted(g.skeleton_pairs())
    triples: list = []
    if prune:
        found = _triple_constraints(g, pairs, target.lower() not in ("lmg", "ancestral"))
        if found is None:
            return None
        triples = found
    want = independence_model(g, limit=config.model_nodes).statements
    for marks in assignments(g.nodes, pairs, rules, triples):
        h = _build(g.nodes, pairs, marks)
        if not in_class(h, target):
            continue
        if independence_model(h, limit=config.model_nodes).statements == want:
            return h
    return None


# -- catalogs ----------------------------------------------------------------


def labels(n: int) -> tuple[str, ...]:
    return tuple(sorted(f"v{k}" for k in range(1, n + 1)))


def skeletons(nodes: Sequence[str]) -> Iterator[list[tuple[str, str]]]:
    """Every edge set on ``nodes``, as sorted pair lists."""
    all_pairs = list(itertools.combinations(sorted(nodes), 2))
    for bits in range(1 << len(all_pairs)):
        yield [p for k, p in enumerate(all_pairs) if bits >> k & 1]


@dataclass
class GraphCatalog:
    """Stream of every graph of a class on ``v1..vn``, each exactly once."""

    node_count: int
    class_filter: str
    skeleton: Optional[tuple] = None
    _source: Iterator[MixedGraph] = field(default=None, repr=False)

    @property
    def graphs(self) -> Iterator[MixedGraph]:
        return self._source

    def __iter__(self):
        return self._source


def _stream(nodes, skels, name: str) -> Iterator[MixedGraph]:
    rules = _rules(name)
    final = name.lower()
    for pairs in skels:
        for marks in assignments(nodes, pairs, rules):
            h = _build(nodes, pairs, marks)
            if final == "mag":
                if in_class(h, "ancestral") and is_maximal(h):
                    yield h
            elif final == "lmg" or in_class(h, final):
                yield h


def enumerate_class(node_count: int, class_filter: str = "lmg",
                    skeleton: Optional[Iterable[tuple[str, str]]] = None,
                    config: OracleConfig = DEFAULT) -> GraphCatalog:
    """Catalog of ``class_filter`` graphs on ``v1..vn``.

    With ``skeleton`` given (pairs of labels) only its mark assignments
    are streamed.
    """
    nodes = labels(node_count)
    if skeleton is None:
        if node_count > config.exhaustive_nodes:
            raise EnumerationLimit(f"catalog capped at {config.exhaustive_nodes} nodes")
        skels: Iterable = skeletons(nodes)
        skel_key = None
    else:
        if node_count > config.skeleton_nodes:
            raise EnumerationLimit(f"fixed-skeleton catalog capped at {config.skeleton_nodes} nodes")
        pairs = sorted({(a, b) if a < b else (b, a) for a, b in skeleton})
        for a, b in pairs:
            if a not in nodes or b not in nodes or a == b:
                raise ValueError(f"bad skeleton pair {(a, b)}")
        skels = [pairs]
        skel_key = tuple(pairs)
    _rules(class_filter)
    return GraphCatalog(node_count, class_filter.lower(), skel_key,
                        _stream(nodes, skels, class_filter))
