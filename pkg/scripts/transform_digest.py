"""Print a SHA-256 digest of every transform output on a fixed MAG corpus.

Running this under different PYTHONHASHSEED values must print the same line.
"""

import hashlib
import random

from lmg.corpora import catalog, random_graphs
from lmg.io import serialize
from lmg.representation import TARGETS, representable
from lmg.transform import transform


def main():
    corpus = list(catalog("mag", 3)) + random_graphs("mag", 5, 200, random.Random(7))
    h = hashlib.sha256()
    for g in corpus:
        for t in TARGETS:
            if representable(g, t):
                r = transform(g, t)
                h.update(serialize(r.output).encode())
                h.update("\n".join(r.lines()).encode())
    print(h.hexdigest())


if __name__ == "__main__":
    main()
