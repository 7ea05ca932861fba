"""Markov equivalence within and across the MAG subclasses.

For MAGs there are two graphical criteria, both requiring equal skeletons:
equal sets of colliders that have an order (built up from discriminating
paths), or equal sets of minimal collider paths.  For RCGs and their
subclasses both collapse to equal unshielded colliders.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, NamedTuple, Optional

from lmg.classes import is_bg, is_ug, require
from lmg.errors import ClassViolation, DomainMismatch
from lmg.graph import HEAD, MixedGraph, v_configurations

__all__ = [
    "DiscriminatingPath", "OrderedColliderTable", "ColliderPathSet",
    "unshielded_colliders", "unshielded_noncolliders", "collider_triples",
    "discriminating_paths", "colliders_with_order", "collider_paths",
    "minimal_collider_paths", "equivalent_mags", "equivalent_dags",
    "equivalent_simple", "equivalent_rcgs", "equivalent_cross", "distinguish",
]


def _triple(a: str, m: str, b: str) -> tuple[str, str, str]:
    return (a, m, b) if a < b else (b, m, a)


def collider_triples(g: MixedGraph) -> frozenset:
    return frozenset(vc.triple for vc in v_configurations(g) if vc.collider)


def unshielded_colliders(g: MixedGraph) -> frozenset:
    return frozenset(vc.triple for vc in v_configurations(g) if vc.collider and not vc.shielded)


def unshielded_noncolliders(g: MixedGraph) -> frozenset:
    return frozenset(vc.triple for vc in v_configurations(g) if not vc.collider and not vc.shielded)


class DiscriminatingPath(NamedTuple):
    """Node sequence ``(j, q_1, ..., q_m, l, i)`` with ``m >= 1``."""

    nodes: tuple

    @property
    def target(self) -> tuple[str, str, str]:
        return self.nodes[-3:]

    @property
    def inner_triples(self) -> list[tuple[str, str, str]]:
        """The collider triples centred on each ``q_k``."""
        p = self.nodes
        return [_triple(p[k - 1], p[k], p[k + 1]) for k in range(1, len(p) - 2)]


def _discriminating_for(g: MixedGraph, h: str, l: str, i: str) -> Iterator[DiscriminatingPath]:
    """Discriminating paths ending in ``(h, l, i)``, searched backwards from ``h``."""
    if not (h in g.parents(i) and g.adjacent(h, l) and g.adjacent(l, i)):
        return
    if g.endmark(h, l) is not HEAD:
        return
    pa_i = g.parents(i)
    path = [h]

    def back(front):
        for x in sorted(g.adjacents(front)):
            if x in path or x == l or x == i:
                continue
            if g.endmark(front, x) is not HEAD:
                continue
            if not g.adjacent(x, i):
                yield DiscriminatingPath((x,) + tuple(reversed(path)) + (l, i))
            elif x in pa_i and g.endmark(x, front) is HEAD:
                path.append(x)
                yield from back(x)
                path.pop()

    yield from back(h)


def discriminating_paths(g: MixedGraph, check: bool = True) -> list[DiscriminatingPath]:
    if check:
        require(g, "mag")
    out = []
    for i in g.nodes:
        for h in sorted(g.parents(i)):
            for l in sorted(g.adjacents(i) & g.adjacents(h)):
                out.extend(_discriminating_for(g, h, l, i))
    return out


@dataclass(frozen=True)
class OrderedColliderTable:
    """Collider triples that have an order, mapped to their smallest order."""

    entries: tuple  # sorted ((h, l, i), order) pairs

    @property
    def triples(self) -> frozenset:
        return frozenset(t for t, _ in self.entries)

    def as_dict(self) -> dict:
        return dict(self.entries)

    def __len__(self):
        return len(self.entries)


@lru_cache(maxsize=1 << 16)
def _colliders_with_order(g: MixedGraph) -> OrderedColliderTable:
    colliders = collider_triples(g)
    order = {t: 0 for t in colliders if not g.adjacent(t[0], t[2])}
    candidates = {}
    for t in colliders:
        if t in order:
            continue
        a, l, c = t
        paths = []
        for h, i in ((a, c), (c, a)):
            paths.extend(_discriminating_for(g, h, l, i))
        if paths:
            candidates[t] = paths
    n = 0
    while True:
        known = set(order)
        new = {}
        for t, paths in candidates.items():
            if t in order:
                continue
            if any(all(x in known for x in p.inner_triples) for p in paths):
                new[t] = n + 1
        if not new:
            break
        order.update(new)
        n += 1
    return OrderedColliderTable(tuple(sorted(order.items())))


def colliders_with_order(g: MixedGraph, check: bool = True) -> OrderedColliderTable:
    """Fixed point of the order recursion over collider triples.

    Order 0 is every unshielded collider; a shielded collider gets order
    ``n + 1`` once some discriminating path for it has all of its own
    colliders at order ``n`` or below.
    """
    if check:
        require(g, "mag")
    return _colliders_with_order(g)


@dataclass(frozen=True)
class ColliderPathSet:
    """Minimal collider paths (endpoints non-adjacent) and cycles (adjacent).

    Sequences are stored with the smaller endpoint first.
    """

    paths: frozenset
    cycles: frozenset

    def length(self, n_nodes: int, at_least: bool = False) -> list[tuple]:
        pick = (lambda p: len(p) >= n_nodes) if at_least else (lambda p: len(p) == n_nodes)
        return sorted(p for p in self.paths | self.cycles if pick(p))


def collider_paths(g: MixedGraph) -> Iterator[tuple[str, ...]]:
    """Every collider path with at least three nodes, in both directions."""
    path: list[str] = []

    def extend():
        last = path[-1]
        for nxt in sorted(g.adjacents(last)):
            if nxt in path:
                continue
            if len(path) >= 2 and not g.is_collider(path[-2], last, nxt):
                continue
            path.append(nxt)
            if len(path) >= 3:
                yield tuple(path)
            yield from extend()
            path.pop()

    for s in g.nodes:
        path.append(s)
        yield from extend()
        path.pop()


@lru_cache(maxsize=1 << 16)
def _minimal_collider_paths(g: MixedGraph) -> ColliderPathSet:
    by_ends: dict[tuple[str, str], list[tuple[frozenset, tuple]]] = {}
    for p in collider_paths(g):
        if p[0] < p[-1]:
            by_ends.setdefault((p[0], p[-1]), []).append((frozenset(p[1:-1]), p))
    paths, cycles = set(), set()
    for (a, b), found in by_ends.items():
        for inner, p in found:
            if any(other < inner for other, _ in found):
                continue
            (cycles if g.adjacent(a, b) else paths).add(p)
    return ColliderPathSet(frozenset(paths), frozenset(cycles))


def minimal_collider_paths(g: MixedGraph, check: bool = True) -> ColliderPathSet:
    """Collider paths whose inner node set has no proper, non-empty subset
    forming a collider path between the same endpoints."""
    if check:
        require(g, "mag")
    return _minimal_collider_paths(g)


def _same_domain(g1: MixedGraph, g2: MixedGraph) -> None:
    if g1.nodes != g2.nodes:
        raise DomainMismatch(f"node sets differ: {' '.join(g1.nodes)} vs {' '.join(g2.nodes)}")


def equivalent_mags(g1: MixedGraph, g2: MixedGraph, method: str = "order",
                    include_cycles: bool = False, compare_orders: bool = False) -> bool:
    """Decide Markov equivalence of two MAGs graphically.

    ``method="order"`` compares colliders with order; ``compare_orders``
    additionally requires the numeric orders to agree.  ``method="paths"``
    compares minimal collider paths, and with ``include_cycles`` minimal
    collider cycles as well.
    """
    _same_domain(g1, g2)
    require(g1, "mag", "first graph")
    require(g2, "mag", "second graph")
    if g1.skeleton_pairs() != g2.skeleton_pairs():
        return False
    if method == "order":
        t1, t2 = _colliders_with_order(g1), _colliders_with_order(g2)
        if compare_orders:
            return t1.entries == t2.entries
        return t1.triples == t2.triples
    if method == "paths":
        p1, p2 = _minimal_collider_paths(g1), _minimal_collider_paths(g2)
        if include_cycles:
            return p1 == p2
        return p1.paths == p2.paths
    raise ValueError(f"unknown method {method!r}")


def equivalent_dags(g1: MixedGraph, g2: MixedGraph) -> bool:
    """Same skeleton and the same unshielded collisions."""
    _same_domain(g1, g2)
    require(g1, "dag", "first graph")
    require(g2, "dag", "second graph")
    return (g1.skeleton_pairs() == g2.skeleton_pairs()
            and unshielded_colliders(g1) == unshielded_colliders(g2))


def equivalent_simple(g1: MixedGraph, g2: MixedGraph) -> bool:
    """Two UGs, or two BGs, are equivalent exactly when they are equal."""
    _same_domain(g1, g2)
    if not ((is_ug(g1) and is_ug(g2)) or (is_bg(g1) and is_bg(g2))):
        raise ClassViolation("expected two undirected or two bidirected graphs")
    return g1 == g2


def _rcg_criterion(g1: MixedGraph, g2: MixedGraph) -> bool:
    return (g1.skeleton_pairs() == g2.skeleton_pairs()
            and unshielded_colliders(g1) == unshielded_colliders(g2))


def equivalent_rcgs(g1: MixedGraph, g2: MixedGraph) -> bool:
    """Same skeleton and the same unshielded colliders."""
    _same_domain(g1, g2)
    require(g1, "rcg", "first graph")
    require(g2, "rcg", "second graph")
    return _rcg_criterion(g1, g2)


def equivalent_cross(g1: MixedGraph, g2: MixedGraph) -> bool:
    """Equivalence between any two of RCG, BG, UG and DAG.

    UGs, BGs and DAGs are all RCGs, so the RCG criterion applies unchanged.
    """
    return equivalent_rcgs(g1, g2)


def distinguish(g1: MixedGraph, g2: MixedGraph, method: str = "order") -> Optional[str]:
    """Human-readable reason two graphs differ under ``method``, or None."""
    _same_domain(g1, g2)
    s1, s2 = g1.skeleton_pairs(), g2.skeleton_pairs()
    if s1 != s2:
        a, b = min(s1 ^ s2)
        where = "first" if (a, b) in s1 else "second"
        return f"skeleton edge {a} -- {b} only in {where} graph"
    if method == "oracle":
        from lmg.separation import independence_model
        m1, m2 = set(independence_model(g1)), set(independence_model(g2))
        if m1 == m2:
            return None
        i, j, c = min(m1 ^ m2)
        where = "first" if (i, j, c) in m1 else "second"
        return f"statement {i} ⊥ {j} | {','.join(c)} holds only in {where} graph".replace("|  ", "| ")
    if method == "order":
        d1, d2 = _colliders_with_order(g1).triples, _colliders_with_order(g2).triples
        label = "collider with order"
    else:
        d1, d2 = _minimal_collider_paths(g1).paths, _minimal_collider_paths(g2).paths
        label = "minimal collider path"
    if d1 == d2:
        return None
    x = min(d1 ^ d2)
    where = "first" if x in d1 else "second"
    return f"{label} <{','.join(x)}> only in {where} graph"
