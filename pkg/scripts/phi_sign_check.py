"""Compare the two sign conventions for the residue map phi_l against the identity [N x]_l = psi(x)."""

from carlitz_euler.base_arith import MonicIdeal, parse_poly
from carlitz_euler.euler_system import EulerSystem, make_config


def main(samples: int = 20):
    I = lambda t: MonicIdeal(parse_poly(t, 2))
    ell = I("T^4+T^3+1")
    E = EulerSystem(make_config(I("T^2"), 3, I("T+1")), [ell])
    xs = E.sample_elements(ell, samples, seed=0)
    for sign in (1, -1):
        good = sum(E.verify_norm_residue(x, ell, sign=sign).passed for x in xs)
        pi = E.verify_norm_residue(E.uniformizer(ell), ell, sign=sign).passed
        print(f"sign {sign:+d}: {good}/{len(xs)} samples, uniformizer {'ok' if pi else 'fails'}")


if __name__ == "__main__":
    main()
