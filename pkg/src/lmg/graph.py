"""Loopless mixed graphs with lines, arrows and arcs.

An edge carries one mark per endpoint, so the three edge types are

    line   a -- b    (tail, tail)
    arrow  a -> b    (tail, head)
    arc    a <-> b   (head, head)

Graphs are immutable and hashable.  Nodes are string labels ordered
lexicographically; every "pick any node" choice in the toolkit resolves to
the smallest label so results are reproducible.
"""

from __future__ import annotations

import itertools
import re
from enum import Enum
from typing import Iterable, Iterator, NamedTuple, Optional, Union

from lmg.errors import EnumerationLimit, NodeNotFound

__all__ = [
    "Mark", "TAIL", "HEAD", "EdgeType", "Edge", "MixedGraph", "VConfiguration",
    "graph", "simple_cycles", "chordless_cycles", "is_chordal",
    "maximum_cardinality_search", "v_configurations", "directed_cycle_exists",
    "arc_direction_preserving_cycles", "dominating_node", "connected_components",
    "induced_p4_or_c4", "collider_p4_or_c4", "contains_collider_p4_or_c4",
]

CYCLE_NODE_LIMIT = 16


class Mark(Enum):
    TAIL = "tail"
    HEAD = "head"

    def __repr__(self):
        return self.name


TAIL = Mark.TAIL
HEAD = Mark.HEAD


class EdgeType(Enum):
    LINE = "--"
    ARROW = "->"
    ARC = "<->"


# token -> (mark at left label, mark at right label)
TOKENS = {
    "--": (TAIL, TAIL),
    "->": (TAIL, HEAD),
    "<-": (HEAD, TAIL),
    "<->": (HEAD, HEAD),
}


class Edge(NamedTuple):
    """An edge in canonical orientation (``a < b``)."""

    a: str
    b: str
    mark_a: Mark
    mark_b: Mark

    @classmethod
    def make(cls, u: str, v: str, mark_u: Mark, mark_v: Mark) -> "Edge":
        if u == v:
            raise ValueError(f"loop at {u!r}")
        if u < v:
            return cls(u, v, mark_u, mark_v)
        return cls(v, u, mark_v, mark_u)

    @property
    def kind(self) -> EdgeType:
        if self.mark_a is self.mark_b:
            return EdgeType.LINE if self.mark_a is TAIL else EdgeType.ARC
        return EdgeType.ARROW

    def mark_at(self, v: str) -> Mark:
        if v == self.a:
            return self.mark_a
        if v == self.b:
            return self.mark_b
        raise NodeNotFound(v)

    def other(self, v: str) -> str:
        return self.b if v == self.a else self.a

    def __str__(self):
        kind = self.kind
        if kind is EdgeType.ARROW:
            if self.mark_b is HEAD:
                return f"{self.a} -> {self.b}"
            return f"{self.b} -> {self.a}"
        return f"{self.a} {kind.value} {self.b}"


class VConfiguration(NamedTuple):
    left: str
    mid: str
    right: str
    collider: bool
    shielded: bool

    @property
    def kind(self) -> str:
        return "collider" if self.collider else "noncollider"

    @property
    def triple(self) -> tuple[str, str, str]:
        return (self.left, self.mid, self.right)


NodeSpec = Union[str, Iterable[str]]


def _as_set(s: NodeSpec) -> set[str]:
    if isinstance(s, str):
        return {s}
    return set(s)


class _Fast:
    """Index-based adjacency used by the hot loops (separation, cycles)."""

    __slots__ = ("labels", "index", "nbrs", "adjmask")

    def __init__(self, g: "MixedGraph"):
        self.labels = g.nodes
        self.index = {v: k for k, v in enumerate(self.labels)}
        nbrs = []
        adjmask = []
        for v in self.labels:
            row = []
            mask = 0
            for u, (mv, mu) in sorted(g._adj[v].items()):
                k = self.index[u]
                row.append((k, mv is HEAD, mu is HEAD))
                mask |= 1 << k
            nbrs.append(tuple(row))
            adjmask.append(mask)
        self.nbrs = tuple(nbrs)
        self.adjmask = tuple(adjmask)

    def mask(self, nodes: Iterable[str]) -> int:
        m = 0
        for v in nodes:
            m |= 1 << self.index[v]
        return m

    def unmask(self, m: int) -> list[str]:
        return [self.labels[k] for k in range(len(self.labels)) if m >> k & 1]


class MixedGraph:
    """Immutable loopless mixed graph.

    Parameters
    ----------
    nodes:
        Node labels. When omitted, the endpoints of ``edges`` are used.
    edges:
        ``Edge`` objects or ``(u, v, mark_u, mark_v)`` tuples.  At most one
        edge per unordered pair.
    """

    __slots__ = ("_nodes", "_adj", "_edges", "_hash", "_fast", "__weakref__")

    def __init__(self, nodes: Optional[Iterable[str]] = None, edges: Iterable = ()):
        edges = [e if isinstance(e, Edge) else Edge.make(*e) for e in edges]
        if nodes is None:
            node_set = {x for e in edges for x in (e.a, e.b)}
        else:
            node_set = set(nodes)
        for v in node_set:
            if not isinstance(v, str) or not v or any(c.isspace() for c in v):
                raise ValueError(f"invalid node label {v!r}")
        self._nodes = tuple(sorted(node_set))
        adj: dict[str, dict[str, tuple[Mark, Mark]]] = {v: {} for v in self._nodes}
        for e in edges:
            for x in (e.a, e.b):
                if x not in adj:
                    raise NodeNotFound(x)
            if e.b in adj[e.a]:
                raise ValueError(f"more than one edge between {e.a!r} and {e.b!r}")
            adj[e.a][e.b] = (e.mark_a, e.mark_b)
            adj[e.b][e.a] = (e.mark_b, e.mark_a)
        self._adj = adj
        self._edges = tuple(sorted(edges))
        self._hash = None
        self._fast = None

    # -- basic protocol ---------------------------------------------------

    @property
    def nodes(self) -> tuple[str, ...]:
        return self._nodes

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self._edges

    def __len__(self):
        return len(self._nodes)

    def __contains__(self, v):
        return v in self._adj

    def __iter__(self):
        return iter(self._nodes)

    def __eq__(self, other):
        if not isinstance(other, MixedGraph):
            return NotImplemented
        return self._nodes == other._nodes and self._edges == other._edges

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._nodes, self._edges))
        return self._hash

    def __repr__(self):
        body = ", ".join(str(e) for e in self._edges)
        return f"MixedGraph(nodes={' '.join(self._nodes)!r}, edges={body!r})"

    def __getstate__(self):
        return (self._nodes, self._edges)

    def __setstate__(self, state):
        nodes, edges = state
        MixedGraph.__init__(self, nodes, edges)

    @property
    def fast(self) -> _Fast:
        if self._fast is None:
            self._fast = _Fast(self)
        return self._fast

    def _check(self, v: str) -> None:
        if v not in self._adj:
            raise NodeNotFound(v)

    # -- local structure --------------------------------------------------

    def adjacent(self, u: str, v: str) -> bool:
        self._check(u)
        return v in self._adj[u]

    def adjacents(self, v: str) -> set[str]:
        self._check(v)
        return set(self._adj[v])

    def degree(self, v: str) -> int:
        self._check(v)
        return len(self._adj[v])

    def endmark(self, u: str, v: str) -> Optional[Mark]:
        """Mark at ``u`` on the ``u``-``v`` edge, or None if non-adjacent."""
        self._check(u)
        pair = self._adj[u].get(v)
        return None if pair is None else pair[0]

    def edge(self, u: str, v: str) -> Optional[Edge]:
        self._check(u)
        pair = self._adj[u].get(v)
        if pair is None:
            return None
        return Edge.make(u, v, pair[0], pair[1])

    def is_collider(self, left: str, mid: str, right: str) -> bool:
        """Whether ``mid`` has arrowheads on both the left and right edges."""
        row = self._adj[mid]
        return row[left][0] is HEAD and row[right][0] is HEAD

    def _select(self, v: str, mine: Mark, theirs: Mark) -> set[str]:
        self._check(v)
        return {u for u, (mv, mu) in self._adj[v].items() if mv is mine and mu is theirs}

    def neighbours(self, v: str) -> set[str]:
        return self._select(v, TAIL, TAIL)

    def parents(self, v: str) -> set[str]:
        return self._select(v, HEAD, TAIL)

    def children(self, v: str) -> set[str]:
        return self._select(v, TAIL, HEAD)

    def spouses(self, v: str) -> set[str]:
        return self._select(v, HEAD, HEAD)

    def ancestors(self, s: NodeSpec) -> set[str]:
        """Nodes with a direction-preserving path into ``s``.

        Members of ``s`` are only included when they reach some member of
        ``s`` themselves.
        """
        targets = _as_set(s)
        for v in targets:
            self._check(v)
        found: set[str] = set()
        stack = list(targets)
        while stack:
            v = stack.pop()
            for u in self.parents(v):
                if u not in found:
                    found.add(u)
                    stack.append(u)
        return found

    def has_arrowhead(self, v: str) -> bool:
        self._check(v)
        return any(mv is HEAD for mv, _ in self._adj[v].values())

    def has_line(self, v: str) -> bool:
        self._check(v)
        return any(mv is TAIL and mu is TAIL for mv, mu in self._adj[v].values())

    # -- derived graphs ---------------------------------------------------

    def skeleton(self) -> "MixedGraph":
        return MixedGraph(self._nodes, [(e.a, e.b, TAIL, TAIL) for e in self._edges])

    def skeleton_pairs(self) -> frozenset[tuple[str, str]]:
        return frozenset((e.a, e.b) for e in self._edges)

    def induced_subgraph(self, a: NodeSpec) -> "MixedGraph":
        keep = _as_set(a)
        for v in keep:
            self._check(v)
        return MixedGraph(keep, [e for e in self._edges if e.a in keep and e.b in keep])

    def edge_type_subgraph(self, kind: Union[EdgeType, str]) -> "MixedGraph":
        """Subgraph induced by the edges of one type (``H[->]``, ``H[<->]``, ``H[--]``)."""
        if isinstance(kind, str) and kind.upper() in EdgeType.__members__:
            kind = EdgeType[kind.upper()]
        kind = EdgeType(kind)
        chosen = [e for e in self._edges if e.kind is kind]
        return MixedGraph(None, chosen)

    def with_edge(self, u: str, v: str, mark_u: Mark, mark_v: Mark) -> "MixedGraph":
        """Copy with the ``u``-``v`` edge set to the given marks (added if absent)."""
        new = Edge.make(u, v, mark_u, mark_v)
        kept = [e for e in self._edges if (e.a, e.b) != (new.a, new.b)]
        return MixedGraph(self._nodes, kept + [new])

    def without_edge(self, u: str, v: str) -> "MixedGraph":
        pair = tuple(sorted((u, v)))
        return MixedGraph(self._nodes, [e for e in self._edges if (e.a, e.b) != pair])


_EDGE_RE = re.compile(r"^\s*(\S+?)\s*(<->|<-|->|--)\s*(\S+)\s*$")


def graph(edges: str = "", nodes: Optional[Union[str, Iterable[str]]] = None) -> MixedGraph:
    """Build a graph from a compact string such as ``"a -> b, b <-> c"``.

    ``nodes`` may add isolated nodes; a space-separated string is accepted.
    """
    parsed = []
    for chunk in re.split(r"[,;\n]", edges):
        if not chunk.strip():
            continue
        m = _EDGE_RE.match(chunk)
        if m is None:
            raise ValueError(f"cannot read edge {chunk!r}")
        u, tok, v = m.groups()
        mu, mv = TOKENS[tok]
        parsed.append((u, v, mu, mv))
    node_set = {x for e in parsed for x in e[:2]}
    if nodes is not None:
        node_set |= set(nodes.split()) if isinstance(nodes, str) else set(nodes)
    return MixedGraph(node_set, parsed)


# -- structural queries ----------------------------------------------------


def simple_cycles(g: MixedGraph, limit: int = CYCLE_NODE_LIMIT) -> Iterator[tuple[str, ...]]:
    """Every simple cycle (>= 3 nodes) of the skeleton, once each.

    A cycle starts at its smallest node and its second node is smaller
    than its last.
    """
    if len(g) > limit:
        raise EnumerationLimit(f"cycle enumeration capped at {limit} nodes, graph has {len(g)}")
    f = g.fast
    n = len(f.labels)
    for s in range(n):
        path = [s]
        on_path = 1 << s
        stack = [iter([y for y, _, _ in f.nbrs[s] if y > s])]
        while stack:
            nxt = next(stack[-1], None)
            if nxt is None:
                stack.pop()
                on_path &= ~(1 << path.pop())
                continue
            if on_path >> nxt & 1:
                continue
            path.append(nxt)
            on_path |= 1 << nxt
            if len(path) >= 3 and f.adjmask[nxt] >> s & 1 and path[1] < nxt:
                yield tuple(f.labels[k] for k in path)
            stack.append(iter([y for y, _, _ in f.nbrs[nxt] if y > s]))


def _is_chordless(g: MixedGraph, cycle: tuple[str, ...]) -> bool:
    k = len(cycle)
    for x in range(k):
        for y in range(x + 2, k):
            if x == 0 and y == k - 1:
                continue
            if g.adjacent(cycle[x], cycle[y]):
                return False
    return True


def chordless_cycles(g: MixedGraph, min_length: int = 4) -> list[tuple[str, ...]]:
    """Induced cycles with at least ``min_length`` nodes (brute force)."""
    return [c for c in simple_cycles(g) if len(c) >= min_length and _is_chordless(g, c)]


def maximum_cardinality_search(g: MixedGraph) -> list[str]:
    """Visit order of maximum cardinality search on the skeleton of ``g``.

    Each step picks the unvisited node with the most visited adjacents,
    ties going to the smallest label.
    """
    weight = {v: 0 for v in g.nodes}
    order = []
    while weight:
        best = max(weight.values())
        v = min(u for u, w in weight.items() if w == best)
        order.append(v)
        del weight[v]
        for u in g.adjacents(v):
            if u in weight:
                weight[u] += 1
    return order


def is_chordal(g: MixedGraph) -> bool:
    """True iff the skeleton has no induced cycle on four or more nodes.

    Uses the perfect-elimination test on a maximum cardinality search order.
    """
    order = maximum_cardinality_search(g)
    pos = {v: k for k, v in enumerate(order)}
    for v in order:
        earlier = [u for u in g.adjacents(v) if pos[u] < pos[v]]
        if len(earlier) < 2:
            continue
        last = max(earlier, key=pos.__getitem__)
        rest = set(earlier) - {last}
        if not rest <= g.adjacents(last):
            return False
    return True


def v_configurations(g: MixedGraph) -> list[VConfiguration]:
    out = []
    for mid in g.nodes:
        adj = sorted(g.adjacents(mid))
        for left, right in itertools.combinations(adj, 2):
            out.append(VConfiguration(left, mid, right, g.is_collider(left, mid, right),
                                      g.adjacent(left, right)))
    return out


def _arrow_directions(g: MixedGraph, cycle: tuple[str, ...]):
    """Count arcs, forward arrows and backward arrows around ``cycle``."""
    arcs = fwd = back = 0
    k = len(cycle)
    for x in range(k):
        u, v = cycle[x], cycle[(x + 1) % k]
        mu, mv = g.endmark(u, v), g.endmark(v, u)
        if mu is HEAD and mv is HEAD:
            arcs += 1
        elif mv is HEAD:
            fwd += 1
        elif mu is HEAD:
            back += 1
    return arcs, fwd, back


def _orient(cycle: tuple[str, ...], backwards: bool) -> tuple[str, ...]:
    if not backwards:
        return cycle
    return (cycle[0],) + tuple(reversed(cycle[1:]))


def directed_cycles(g: MixedGraph) -> list[tuple[str, ...]]:
    """Direction-preserving cycles, listed along the arrows."""
    out = []
    for c in simple_cycles(g):
        arcs, fwd, back = _arrow_directions(g, c)
        if fwd == len(c) or back == len(c):
            out.append(_orient(c, back == len(c)))
    return out


def directed_cycle_exists(g: MixedGraph) -> bool:
    # Kahn's algorithm on the arrow subgraph.
    indeg = {v: len(g.parents(v)) for v in g.nodes}
    ready = [v for v, d in indeg.items() if d == 0]
    seen = 0
    while ready:
        v = ready.pop()
        seen += 1
        for c in g.children(v):
            indeg[c] -= 1
            if indeg[c] == 0:
                ready.append(c)
    return seen != len(g)


def arc_direction_preserving_cycles(g: MixedGraph) -> list[tuple[str, ...]]:
    """Cycles with at least one arc and one arrow, all arrows one way round.

    Each cycle starts at its smallest node and is listed in the direction
    its arrows point.
    """
    out = []
    for c in simple_cycles(g):
        arcs, fwd, back = _arrow_directions(g, c)
        if arcs and (fwd + back) and not (fwd and back):
            out.append(_orient(c, back > 0))
    return out


def connected_components(g: MixedGraph) -> list[list[str]]:
    seen: set[str] = set()
    comps = []
    for s in g.nodes:
        if s in seen:
            continue
        comp = []
        stack = [s]
        seen.add(s)
        while stack:
            v = stack.pop()
            comp.append(v)
            for u in g.adjacents(v):
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        comps.append(sorted(comp))
    return comps


def dominating_node(g: MixedGraph) -> Optional[str]:
    """Smallest node adjacent to every other node, if any."""
    n = len(g)
    for v in g.nodes:
        if g.degree(v) == n - 1:
            return v
    return None


dominating_node_exists = dominating_node


def _induced_shapes(g: MixedGraph) -> Iterator[tuple[str, tuple[str, ...]]]:
    """Yield ("P4", path) and ("C4", cycle) for each induced 4-node shape."""
    for quad in itertools.combinations(g.nodes, 4):
        pairs = [(u, v) for u, v in itertools.combinations(quad, 2) if g.adjacent(u, v)]
        if len(pairs) not in (3, 4):
            continue
        deg = {v: 0 for v in quad}
        for u, v in pairs:
            deg[u] += 1
            deg[v] += 1
        if len(pairs) == 3 and sorted(deg.values()) == [1, 1, 2, 2]:
            start = min(v for v in quad if deg[v] == 1)
            seq = [start]
            while len(seq) < 4:
                seq.append(next(u for u in quad if u not in seq and g.adjacent(seq[-1], u)))
            yield "P4", tuple(seq)
        elif len(pairs) == 4 and all(d == 2 for d in deg.values()):
            start = quad[0]
            seq = [start]
            while len(seq) < 4:
                seq.append(min(u for u in quad if u not in seq and g.adjacent(seq[-1], u)))
            yield "C4", tuple(seq)


def induced_p4_or_c4(g: MixedGraph) -> Optional[tuple[str, ...]]:
    """First induced P4 or C4 of the skeleton, or None."""
    for _, seq in _induced_shapes(g):
        return seq
    return None


def collider_p4_or_c4(g: MixedGraph) -> Optional[tuple[str, ...]]:
    """An induced P4 or C4 read as a path whose two inner nodes are colliders.

    A C4 qualifies when dropping one of its edges leaves such a path; the
    returned sequence is that path.
    """
    for shape, seq in _induced_shapes(g):
        if shape == "P4":
            reads = [seq, tuple(reversed(seq))]
        else:
            reads = [seq[k:] + seq[:k] for k in range(4)]
        for a, b, c, d in reads:
            if g.is_collider(a, b, c) and g.is_collider(b, c, d):
                return (a, b, c, d) if a < d else (d, c, b, a)
    return None


def contains_collider_p4_or_c4(g: MixedGraph) -> bool:
    return collider_p4_or_c4(g) is not None
