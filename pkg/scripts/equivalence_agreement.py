"""Agreement of the graphical equivalence criteria with the brute-force oracle.

Besides the default readings this also scores two variants: comparing the
numeric collider orders, and including minimal collider cycles.
"""

import argparse
import random
from collections import Counter

from lmg.corpora import CorpusConfig, catalog, random_pairs, same_skeleton_pairs
from lmg.equivalence import equivalent_mags
from lmg.oracle import models_equal

VARIANTS = {
    "order": dict(method="order"),
    "order+numbers": dict(method="order", compare_orders=True),
    "paths": dict(method="paths"),
    "paths+cycles": dict(method="paths", include_cycles=True),
}


def main():
    cfg = CorpusConfig()
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nodes", type=int, default=cfg.exhaustive_max)
    ap.add_argument("--random", type=int, default=cfg.random_pairs)
    ap.add_argument("--seed", type=int, default=cfg.seed)
    args = ap.parse_args()

    pairs = list(same_skeleton_pairs(catalog("mag", args.nodes, args.nodes)))
    pairs += random_pairs("mag", cfg.random_sizes, args.random, random.Random(args.seed))
    wrong = Counter()
    equivalent = 0
    for g, h in pairs:
        truth = models_equal(g, h)
        equivalent += truth
        for name, kw in VARIANTS.items():
            wrong[name] += equivalent_mags(g, h, **kw) != truth
    print(f"{len(pairs)} pairs, {equivalent} equivalent")
    for name in VARIANTS:
        print(f"  {name:<14} {wrong[name]:>7} disagreements")


if __name__ == "__main__":
    main()
