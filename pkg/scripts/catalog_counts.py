"""Count every class catalog on v1..vn and time the enumeration."""

import argparse
import time

from lmg.oracle import CLASS_RULES, enumerate_class


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-nodes", type=int, default=4)
    ap.add_argument("--classes", nargs="*", default=sorted(CLASS_RULES))
    args = ap.parse_args()
    print(f"{'class':<10} {'n':>2} {'count':>9} {'seconds':>8}")
    for cls in args.classes:
        for n in range(1, args.max_nodes + 1):
            t = time.perf_counter()
            count = sum(1 for _ in enumerate_class(n, cls))
            print(f"{cls:<10} {n:>2} {count:>9} {time.perf_counter() - t:>8.2f}")


if __name__ == "__main__":
    main()
