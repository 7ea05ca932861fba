"""m-separation and the independence model a graph induces.

Two routes are provided and are expected to agree:

* ``method="paths"`` enumerates simple paths and applies the path
  criterion directly: colliders in ``C`` or an ancestor of ``C``,
  non-colliders outside ``C``.  This is the reference semantics.
* ``method="reach"`` (default) searches over walks in which every collider
  is in ``C`` and every non-collider is outside it.  Much faster, but only
  sound for ancestral graphs: elsewhere a walk may double back along a line
  through a collider.  Non-ancestral graphs silently use the path route.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Optional, Sequence

from lmg.errors import EnumerationLimit, InvalidQuery, MalformedPath, NodeNotFound
from lmg.graph import HEAD, MixedGraph, NodeSpec, _as_set

__all__ = [
    "SeparationQuery", "IndependenceModel", "is_m_connecting", "m_separated",
    "m_connecting_paths", "separating_sets", "independence_model", "MODEL_NODE_LIMIT",
]

MODEL_NODE_LIMIT = 12


@dataclass(frozen=True)
class SeparationQuery:
    a: frozenset
    b: frozenset
    c: frozenset = frozenset()

    def __post_init__(self):
        if not self.a or not self.b:
            raise InvalidQuery("both sides of a separation query must be non-empty")
        if self.a & self.b or self.a & self.c or self.b & self.c:
            raise InvalidQuery("separation query sets must be pairwise disjoint")

    @classmethod
    def of(cls, a: NodeSpec, b: NodeSpec, c: NodeSpec = ()) -> "SeparationQuery":
        return cls(frozenset(_as_set(a)), frozenset(_as_set(b)), frozenset(_as_set(c)))

    def check(self, g: MixedGraph) -> None:
        for v in self.a | self.b | self.c:
            if v not in g:
                raise NodeNotFound(v)


def _validate_path(g: MixedGraph, path: Sequence[str]) -> None:
    if len(path) < 2:
        raise MalformedPath("a path needs at least two nodes")
    if len(set(path)) != len(path):
        raise MalformedPath(f"repeated node in {list(path)}")
    for u, v in zip(path, path[1:]):
        if u not in g or v not in g or not g.adjacent(u, v):
            raise MalformedPath(f"{u!r} and {v!r} are not adjacent")


def is_m_connecting(g: MixedGraph, path: Sequence[str], c: NodeSpec = ()) -> bool:
    """Whether ``path`` is m-connecting given ``c``.

    Only inner nodes are classified; the endpoints play no role.
    """
    _validate_path(g, path)
    c = _as_set(c)
    if path[0] in c or path[-1] in c:
        raise InvalidQuery("path endpoints may not be conditioned on")
    opened = c | g.ancestors(c)
    for left, mid, right in zip(path, path[1:], path[2:]):
        if g.is_collider(left, mid, right):
            if mid not in opened:
                return False
        elif mid in c:
            return False
    return True


def m_connecting_paths(g: MixedGraph, i: str, j: str, c: NodeSpec = ()) -> Iterator[tuple[str, ...]]:
    """All simple paths from ``i`` to ``j`` that are m-connecting given ``c``."""
    c = _as_set(c)
    opened = c | g.ancestors(c)

    def ok(left, mid, right):
        if g.is_collider(left, mid, right):
            return mid in opened
        return mid not in c

    path = [i]

    def extend():
        last = path[-1]
        for nxt in sorted(g.adjacents(last)):
            if nxt in path:
                continue
            if len(path) >= 2 and not ok(path[-2], last, nxt):
                continue
            if nxt == j:
                yield tuple(path) + (j,)
                continue
            path.append(nxt)
            yield from extend()
            path.pop()

    yield from extend()


def _reach(g: MixedGraph, src: int, cmask: int) -> int:
    """Bitmask of nodes joined to ``src`` by a walk whose colliders are all
    in ``cmask`` and whose non-colliders are all outside it."""
    nbrs = g.fast.nbrs
    seen_head = 0
    seen_tail = 0
    reached = 0
    stack = [(y, hy) for y, _, hy in nbrs[src]]
    while stack:
        x, head_in = stack.pop()
        bit = 1 << x
        if head_in:
            if seen_head & bit:
                continue
            seen_head |= bit
        else:
            if seen_tail & bit:
                continue
            seen_tail |= bit
        reached |= bit
        conditioned = cmask & bit
        for y, hx, hy in nbrs[x]:
            if head_in and hx:
                if conditioned:
                    stack.append((y, hy))
            elif not conditioned:
                stack.append((y, hy))
    return reached


def _walks_ok(g: MixedGraph) -> bool:
    from lmg.classes import is_ancestral
    return bool(is_ancestral(g))


def _connected_mask(g: MixedGraph, src: int, cmask: int) -> int:
    """Nodes m-connected to ``src`` given ``cmask``, by whichever route is sound."""
    if _walks_ok(g):
        return _reach(g, src, cmask)
    f = g.fast
    c = f.unmask(cmask)
    i = f.labels[src]
    out = 0
    for k, j in enumerate(f.labels):
        if k != src and not cmask >> k & 1 and next(m_connecting_paths(g, i, j, c), None) is not None:
            out |= 1 << k
    return out


def m_separated(g: MixedGraph, a: NodeSpec, b: NodeSpec, c: NodeSpec = (), method: str = "reach") -> bool:
    """``a`` and ``b`` are m-separated given ``c``.

    >>> from lmg.graph import graph
    >>> m_separated(graph("i -> k, j -> k"), "i", "j")
    True
    >>> m_separated(graph("i -> k, j -> k"), "i", "j", "k")
    False
    """
    q = SeparationQuery.of(a, b, c)
    q.check(g)
    if method == "paths" or not _walks_ok(g):
        if method not in ("paths", "reach"):
            raise ValueError(f"unknown method {method!r}")
        for i in sorted(q.a):
            for j in sorted(q.b):
                if next(m_connecting_paths(g, i, j, q.c), None) is not None:
                    return False
        return True
    if method != "reach":
        raise ValueError(f"unknown method {method!r}")
    f = g.fast
    cmask = f.mask(q.c)
    bmask = f.mask(q.b)
    for i in q.a:
        if _reach(g, f.index[i], cmask) & bmask:
            return False
    return True


def separating_sets(g: MixedGraph, i: str, j: str, max_size: Optional[int] = None) -> Iterator[tuple[str, ...]]:
    """Every ``C`` within ``V \\ {i, j}`` with ``i`` and ``j`` m-separated, smallest first."""
    f = g.fast
    si, sj = f.index[i], f.index[j]
    if f.adjmask[si] >> sj & 1:
        return
    rest = [v for v in g.nodes if v not in (i, j)]
    top = len(rest) if max_size is None else min(max_size, len(rest))
    for size in range(top + 1):
        for cond in itertools.combinations(rest, size):
            if not _connected_mask(g, si, f.mask(cond)) >> sj & 1:
                yield cond


@dataclass(frozen=True)
class IndependenceModel:
    """Pairwise separation statements ``(i, j, C)`` with ``i < j``, sorted."""

    nodes: tuple
    statements: tuple

    def __contains__(self, item):
        i, j, c = item
        if i > j:
            i, j = j, i
        return (i, j, tuple(sorted(c))) in self._index

    @property
    def _index(self) -> frozenset:
        idx = self.__dict__.get("_idx")
        if idx is None:
            idx = frozenset(self.statements)
            object.__setattr__(self, "_idx", idx)
        return idx

    def __len__(self):
        return len(self.statements)

    def __iter__(self):
        return iter(self.statements)

    def separated(self, a: NodeSpec, b: NodeSpec, c: NodeSpec = ()) -> bool:
        """Set-level query answered by conjunction over node pairs."""
        q = SeparationQuery.of(a, b, c)
        cond = tuple(sorted(q.c))
        return all((x, y, cond) in self for x in q.a for y in q.b)

    def lines(self) -> list[str]:
        return [f"{i} ⊥ {j} | {','.join(c)}".rstrip() for i, j, c in self.statements]


@lru_cache(maxsize=1 << 16)
def independence_model(g: MixedGraph, max_condition_size: Optional[int] = None,
                       limit: int = MODEL_NODE_LIMIT) -> IndependenceModel:
    """All pairwise statements ``i ⊥ j | C`` of ``g``.

    ``C`` ranges over subsets of ``V \\ {i, j}`` up to ``max_condition_size``.
    """
    n = len(g)
    if n > limit:
        raise EnumerationLimit(f"independence model capped at {limit} nodes, graph has {n}")
    f = g.fast
    labels = f.labels
    top = n if max_condition_size is None else max_condition_size
    found = []
    for size in range(min(top, max(n - 2, 0)) + 1):
        for cond in itertools.combinations(range(n), size):
            cmask = 0
            for k in cond:
                cmask |= 1 << k
            cond_labels = tuple(labels[k] for k in cond)
            for i in range(n):
                if cmask >> i & 1:
                    continue
                r = _connected_mask(g, i, cmask)
                for j in range(i + 1, n):
                    if not (cmask >> j & 1) and not (r >> j & 1):
                        found.append((labels[i], labels[j], cond_labels))
    return IndependenceModel(tuple(labels), tuple(sorted(found)))
