"""Graph corpora shared by the acceptance suite and the experiment scripts."""

from __future__ import annotations

import itertools
import random
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Iterator

from lmg.classes import in_class, is_maximal
from lmg.graph import MixedGraph
from lmg.oracle import CLASS_RULES, _build, _triple_constraints, assignments, enumerate_class
from lmg.sampling import random_mag, random_of_class, random_same_skeleton


@dataclass(frozen=True)
class CorpusConfig:
    exhaustive_max: int = 4
    random_sizes: tuple = (5, 6)
    random_pairs: int = 1000
    random_graphs: int = 500
    seed: int = 20240101


def catalog(cls: str, n_max: int, n_min: int = 1) -> Iterator[MixedGraph]:
    for n in range(n_min, n_max + 1):
        yield from enumerate_class(n, cls)


def same_skeleton_pairs(graphs: Iterable[MixedGraph]) -> Iterator[tuple[MixedGraph, MixedGraph]]:
    """Every unordered pair of distinct graphs sharing a node set and skeleton."""
    groups = defaultdict(list)
    for g in graphs:
        groups[g.nodes, g.skeleton_pairs()].append(g)
    for members in groups.values():
        yield from itertools.combinations(members, 2)


def _constrained_partner(g: MixedGraph, cls: str, rng: random.Random):
    """Random member of ``cls`` agreeing with ``g`` on every unshielded triple.

    These partners are equivalent much more often than unconstrained draws,
    which keeps both verdicts well represented in random corpora.
    """
    pairs = sorted(g.skeleton_pairs())
    triples = _triple_constraints(g, pairs)
    if triples is None:
        return None
    for marks in assignments(g.nodes, pairs, CLASS_RULES[cls], triples, rng=rng):
        h = _build(g.nodes, pairs, marks)
        if in_class(h, "ancestral" if cls == "mag" else cls) and (cls != "mag" or is_maximal(h)):
            return h
        return None
    return None


def random_pairs(cls: str, sizes: Iterable[int], count: int,
                 rng: random.Random) -> list[tuple[MixedGraph, MixedGraph]]:
    """``count`` same-skeleton pairs of class ``cls``, spread over ``sizes``."""
    sizes = list(sizes)
    out = []
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > 50 * count:
            raise RuntimeError(f"could not draw {count} {cls} pairs")
        n = sizes[len(out) % len(sizes)]
        p = rng.choice((0.4, 0.6, 0.8))
        g = random_mag(n, rng, p=p) if cls == "mag" else random_of_class(n, cls, rng, p=p)
        if rng.random() < 0.5:
            h = _constrained_partner(g, cls, rng)
        else:
            h = random_same_skeleton(g, cls, rng)
        if h is not None:
            out.append((g, h))
    return out


def random_graphs(cls: str, n: int, count: int, rng: random.Random) -> list[MixedGraph]:
    out = []
    for _ in range(count):
        p = rng.choice((0.4, 0.6, 0.8))
        out.append(random_mag(n, rng, p=p, arc_p=rng.choice((0.3, 0.6, 0.9)))
                   if cls == "mag" else random_of_class(n, cls, rng, p=p))
    return out
