"""Sweep every toric family over its base solutions and tabulate the results.

    python scripts/sweep_families.py --bound 10000
"""
import argparse
import time
from collections import Counter

from tsing import classification as cls


def main():
    p = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    p.add_argument("--bound", type=int, default=10**4, help="max entry of base solutions")
    p.add_argument("--show", type=int, default=3, help="surfaces to print per family")
    args = p.parse_args()

    start = time.perf_counter()
    checks = cls.verify_theorem_toric(args.bound)
    elapsed = time.perf_counter() - start

    per_family = Counter(c.family for c in checks)
    failed = [c for c in checks if not c.ok]
    shown = Counter()
    for c in checks:
        if shown[c.family] >= args.show:
            continue
        shown[c.family] += 1
        rep = c.report
        print(f"{c.family:>4} {str(c.triple):<18} w={rep.weights} K^2={rep.k_squared} "
              f"{cls.format_singularities(rep.singularities)}")
    print()
    for fid, count in per_family.items():
        print(f"family {fid:>4}: {count} surfaces")
    print(f"{len(checks) - len(failed)}/{len(checks)} pass in {elapsed:.2f}s")
    for c in failed:
        print("FAIL", c.family, c.triple, c.failures)
    return 1 if failed else 0


if __name__ == "__main__":
    raise SystemExit(main())
