"""Compare each representability predicate with exhaustive search.

Rows are input classes, columns target classes.  Each cell shows
``agree/total`` over the MAG catalog on up to ``--max-nodes`` nodes plus
``--random`` seeded MAGs on ``--random-nodes`` nodes.  Mismatches for the
first cell that has any are printed at the end.
"""

import argparse
import random
from collections import defaultdict

from lmg.classes import in_class
from lmg.corpora import CorpusConfig, catalog, random_graphs
from lmg.oracle import exhaustive_representable
from lmg.representation import TARGETS, representable

ROWS = ("ug", "bg", "dag", "rcg", "mag")


def main():
    cfg = CorpusConfig()
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-nodes", type=int, default=cfg.exhaustive_max)
    ap.add_argument("--random", type=int, default=cfg.random_graphs)
    ap.add_argument("--random-nodes", type=int, default=5)
    ap.add_argument("--seed", type=int, default=cfg.seed)
    ap.add_argument("--show", type=int, default=5, help="mismatches to print")
    args = ap.parse_args()

    corpus = list(catalog("mag", args.max_nodes))
    corpus += random_graphs("mag", args.random_nodes, args.random, random.Random(args.seed))
    agree = defaultdict(int)
    total = defaultdict(int)
    mismatches = defaultdict(list)
    for g in corpus:
        for target in TARGETS:
            got = bool(representable(g, target))
            truth = exhaustive_representable(g, target) is not None
            for row in ROWS:
                if in_class(g, row):
                    total[row, target] += 1
                    agree[row, target] += got == truth
                    if got != truth:
                        mismatches[row, target].append((g, got))

    print(f"{len(corpus)} MAGs")
    print(f"{'':<5}" + "".join(f"{t:>16}" for t in TARGETS))
    for row in ROWS:
        cells = [f"{agree[row, t]}/{total[row, t]}" for t in TARGETS]
        print(f"{row:<5}" + "".join(f"{c:>16}" for c in cells))
    for key, found in mismatches.items():
        print(f"\nmismatches for {key[0]} -> {key[1]}: {len(found)}")
        for g, got in found[:args.show]:
            print(f"  predicate={'yes' if got else 'no'}  {g}")
        break


if __name__ == "__main__":
    main()
