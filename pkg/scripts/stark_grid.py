"""Print L(0, chi) against the Stark unit side for every conductor up to a degree bound."""

import argparse

from carlitz_euler import suites


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", type=int, nargs="+", default=[2, 3])
    ap.add_argument("--max-deg", type=int, default=3)
    args = ap.parse_args()
    rows = []
    checks = suites.stark_grid(args.q, args.max_deg, rows)
    for r in rows:
        lhs, rhs = ",".join(map(str, r["lhs"])), ",".join(map(str, r["rhs"]))
        print(f"q={r['q']}  m={r['m']:<14} S={r['S']:<24} chi={r['character']:<4} "
              f"L={lhs:<16} unit={rhs:<16} {'ok' if r['pass'] else 'FAIL'}")
    print(f"{sum(c.passed for c in checks)}/{len(checks)} characters agree")


if __name__ == "__main__":
    main()
