"""Count T_d-strings by length and d, and compare the two characterisations.

    python scripts/t_string_census.py --max-len 7 --max-entry 10
"""
import argparse
from collections import Counter

from tsing import lemmas
from tsing.singularities import t_strings_in_box


def main():
    p = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    p.add_argument("--max-len", type=int, default=7)
    p.add_argument("--max-entry", type=int, default=10)
    args = p.parse_args()

    found = t_strings_in_box(args.max_len, args.max_entry)
    generated = lemmas.t_strings_by_generation(args.max_len, args.max_entry)
    table = Counter((len(s), d) for s, d in found.items())

    ds = sorted({d for _, d in table})
    print("len " + "".join(f"{'d=' + str(d):>7}" for d in ds))
    for r in range(1, args.max_len + 1):
        print(f"{r:>3} " + "".join(f"{table[(r, d)]:>7}" for d in ds))
    print(f"recognised {len(found)}, generated {len(generated)}, "
          f"agree: {found == generated}")
    return 0 if found == generated else 1


if __name__ == "__main__":
    raise SystemExit(main())
