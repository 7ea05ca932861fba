"""Plain-text graph documents.

::

    # comment
    nodes: a b c
    a -- b
    c -> b
    a <-> c

The ``nodes:`` header comes first and declares every node.  Edge lines are
three whitespace-separated tokens.  ``<-`` is an arrow whose head is on the
left.
"""

from __future__ import annotations

from typing import Iterable

from lmg.errors import ParseError
from lmg.graph import TOKENS, Edge, MixedGraph

__all__ = ["parse", "serialize", "read_graph", "write_graph"]

_HEADER = "nodes:"


def _content_lines(text: str) -> Iterable[tuple[int, str]]:
    for no, raw in enumerate(text.split("\n"), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield no, line


def parse(text: str) -> MixedGraph:
    lines = _content_lines(text)
    first = next(lines, None)
    if first is None or not first[1].startswith(_HEADER):
        raise ParseError("BadToken", first[0] if first else 1, "expected a 'nodes:' header")
    no, header = first
    declared = header[len(_HEADER):].split()
    seen = set()
    for v in declared:
        if v in seen:
            raise ParseError("BadToken", no, f"node {v!r} declared twice")
        seen.add(v)
    edges = {}
    for no, line in lines:
        parts = line.split()
        if len(parts) != 3 or parts[1] not in TOKENS:
            raise ParseError("BadToken", no, f"cannot read edge {line!r}")
        u, tok, v = parts
        if u == v:
            raise ParseError("Loop", no, f"edge from {u!r} to itself")
        for x in (u, v):
            if x not in seen:
                raise ParseError("UnknownNode", no, f"node {x!r} is not declared")
        key = (u, v) if u < v else (v, u)
        if key in edges:
            raise ParseError("DuplicateEdge", no, f"second edge between {key[0]!r} and {key[1]!r}")
        mu, mv = TOKENS[tok]
        edges[key] = Edge.make(u, v, mu, mv)
    return MixedGraph(declared, edges.values())


def serialize(g: MixedGraph) -> str:
    """Canonical text: sorted nodes, edges sorted by endpoints, arrows tail first."""
    out = [" ".join([_HEADER] + list(g.nodes))]
    out.extend(str(e) for e in g.edges)
    return "\n".join(out) + "\n"


def read_graph(path: str) -> MixedGraph:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def write_graph(g: MixedGraph, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize(g))
