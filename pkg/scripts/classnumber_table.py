"""Tabulate divisor class numbers and genera of subfields of k_m."""

import argparse

from carlitz_euler import suites


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", type=int, nargs="+", default=[2, 3])
    ap.add_argument("--max-deg", type=int, default=3)
    args = ap.parse_args()
    rows = []
    suites.classnumber_grid(args.q, args.max_deg, rows)
    print("q\tm\tS\t[K:k]\tgenus\th")
    for r in rows:
        print(f"{r['q']}\t{r['m']}\t{r['S']}\t{r['degree']}\t{r['genus']}\t{r['h']}")


if __name__ == "__main__":
    main()
