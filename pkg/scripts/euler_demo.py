"""Build the Euler system for K = H_{T^2}, M = 3, g = (T+1) over F_2 and print its classes."""

import argparse

from carlitz_euler.base_arith import MonicIdeal, parse_poly
from carlitz_euler.euler_system import EulerSystem, make_config


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--ell", default="T^4+T^3+1", help="comma-separated auxiliary primes")
    ap.add_argument("--samples", type=int, default=20)
    args = ap.parse_args()

    I = lambda t: MonicIdeal(parse_poly(t, 2))
    ells = [I(t) for t in args.ell.split(",")]
    E = EulerSystem(make_config(I("T^2"), 3, I("T+1")), ells)
    one = I("1")
    print("alpha(1) =", E.alpha(one))
    ideals = [one]
    for ell in ells:
        ideals += [a * ell for a in ideals]
    for a in ideals:
        k = E.kappa(a)
        print(f"kappa({a}): certificate {'ok' if k.verify(E) else 'FAILED'}")
        for ell in ells:
            c = E.verify_kappa_residue(a, ell)
            print(f"  [kappa]_{ell} = {c.lhs}  expected {c.rhs}  {'ok' if c.passed else 'FAILED'}")
    for ell in ells:
        xs = E.sample_elements(ell, args.samples, seed=0)
        good = sum(E.verify_norm_residue(x, ell).passed for x in xs)
        print(f"[N x]_{ell} = psi(x) on {good}/{len(xs)} samples")


if __name__ == "__main__":
    main()
