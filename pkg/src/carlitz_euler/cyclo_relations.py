"""Stark units of H_m and the norm relations between torsion generators."""

from __future__ import annotations

from dataclasses import dataclass

from .base_arith.ideals import MonicIdeal, unit_group
from .base_arith.poly import Poly
from .cyclo_field import CycloElement, CycloField, SubfieldSpec, cyclo_field


def _consts(K: CycloField) -> list[Poly]:
    return [Poly(K.F, (c,)) for c in range(1, K.q)]


def stark_unit(m: MonicIdeal) -> CycloElement:
    """epsilon_m = N_{k_m/H_m}(lambda_m), the norm over the image of F_q^x."""
    K = cyclo_field(m)
    return K.norm_over(_consts(K), K.lam)


@dataclass
class RelationReport:
    name: str
    lhs: str
    rhs: str
    equal: bool

    def as_dict(self) -> dict:
        return {"relation": self.name, "lhs": self.lhs, "rhs": self.rhs, "equal": self.equal}


def verify_stark_norm(m: MonicIdeal) -> RelationReport:
    """N_{k_m/H_m}(lambda_m) against -lambda_m^(q-1)."""
    K = cyclo_field(m)
    lhs = stark_unit(m)
    rhs = -(K.lam ** (K.q - 1))
    ok = lhs == rhs and SubfieldSpec.H(K).contains(lhs)
    return RelationReport("stark-norm", str(lhs), str(rhs), ok)


def _inverse_mod(a: Poly, m: Poly) -> Poly:
    return a.inv_mod(m) if m.deg > 0 else Poly(a.F, (1,))


def lambda_inverse(K: CycloField, d: MonicIdeal, u: Poly | None = None) -> CycloElement:
    """(sigma_u lambda_d)^-1 with a scalar denominator, from Psi_d(lambda_d) = 0."""
    from .carlitz import primitive_division_poly

    y = K.lambda_of(d) if u is None else K.galois(u, K.lambda_of(d))
    coeffs = primitive_division_poly(d).coeffs()
    c0 = coeffs[0]
    acc = K.zero()
    for c in reversed(coeffs[1:]):
        acc = acc * y + K.scalar(c)
    return -acc * K.scalar(c0).inverse()


def distribution_sides(m: MonicIdeal, qq: MonicIdeal):
    """Both sides of the norm relation from k_{mq} down to k_m, inside k_{mq}."""
    if not qq.is_prime():
        raise ValueError(f"{qq} is not prime")
    if m.deg < 1:
        raise ValueError("m must be a proper ideal")
    n = m * qq
    K = cyclo_field(n)
    X = K.restriction_kernel(m)
    lhs = None
    for x in sorted(X, key=Poly.sort_key):
        y = K.phi_lambda(x)
        lhs = y if lhs is None else lhs * y
    lam_m = K.lambda_of(m)
    if qq.divides(m):
        return K, lhs, lam_m, lam_m, None
    # lambda_m^(Fr(q)^-1) = Phi_b(lambda_m) with b = q^-1 mod m
    b = _inverse_mod(qq.gen % m.gen, m.gen)
    frob_inv = K.phi_lambda(b * n.gen.exact_div(m.gen))
    return K, lhs, lam_m, frob_inv, b


def verify_distribution(m: MonicIdeal, qq: MonicIdeal) -> RelationReport:
    K, lhs, lam_m, frob_inv, b = distribution_sides(m, qq)
    if b is None:
        return RelationReport("distribution", str(lhs), str(lam_m), lhs == lam_m)
    # compare N * lambda_m^(Fr^-1) with lambda_m, then render the quotient
    ok = lhs * frob_inv == lam_m
    d = m
    rhs = lam_m * lambda_inverse(K, d, _lift_unit(K, b, m))
    return RelationReport("distribution", str(lhs), str(rhs), ok and rhs == lhs)


def _lift_unit(K: CycloField, b: Poly, m: MonicIdeal) -> Poly:
    """A unit modulo K.modulus congruent to b modulo m."""
    n = K.modulus.gen
    rest = n
    while True:
        g = rest.gcd(m.gen)
        if g.is_one():
            break
        rest = rest.exact_div(g)
    from .base_arith.ideals import crt

    if rest.deg < 1:
        return b % n
    m_full = n.exact_div(rest)
    return crt([b % m_full, Poly(K.F, (1,)) % rest], [m_full, rest])


def verify_congruence(m: MonicIdeal, qq: MonicIdeal) -> RelationReport:
    """lambda_{mq} - lambda_m^(Fr(q)^-1) against lambda_q^(sigma_m^-1)."""
    if not qq.is_prime():
        raise ValueError(f"{qq} is not prime")
    if qq.divides(m):
        raise ValueError("the congruence needs q not dividing m")
    n = m * qq
    K = cyclo_field(n)
    lam = K.lam
    if m.deg >= 1:
        b = _inverse_mod(qq.gen % m.gen, m.gen)
        lam_m_fr = K.phi_lambda(b * qq.gen)
    else:
        lam_m_fr = K.zero()
    c = _inverse_mod(m.gen % qq.gen, qq.gen)
    lam_q_sig = K.phi_lambda(c * m.gen)
    lhs = lam - lam_m_fr
    return RelationReport("congruence", str(lhs), str(lam_q_sig), lhs == lam_q_sig)


def admissible_pairs(q: int, max_deg: int):
    """All (m, q') with m proper, q' prime and deg(m q') <= max_deg."""
    from .base_arith.factor import monic_irreducibles
    from .base_arith.finite_field import GF
    from .base_arith.poly import monics

    F = GF(q)
    out = []
    for dm in range(1, max_deg):
        for mg in monics(F, dm):
            for dq in range(1, max_deg - dm + 1):
                for p in monic_irreducibles(F, dq):
                    out.append((MonicIdeal(mg), MonicIdeal(p)))
    return out


def verify_torsion_structure(m: MonicIdeal) -> RelationReport:
    """Phi_m has N(m) distinct roots Phi_a(lambda_m), a in O/m, inside k_m;
    deg Psi_m = #(O/m)^x; lambda_m has annihilator exactly m."""
    from .base_arith.ideals import euler_phi
    from .base_arith.poly import all_polys_below
    from .carlitz import primitive_division_poly

    K = cyclo_field(m)
    roots = [K.phi_lambda(a) for a in all_polys_below(K.F, m.deg)]
    distinct = len({tuple(r.num.ravel()) + r.num.shape for r in roots}) == len(roots)
    killed = all(K.carlitz(m.gen, r).is_zero() for r in roots)
    deg_ok = primitive_division_poly(m).deg == euler_phi(m)
    exact = all(not K.phi_lambda(m.gen.exact_div(p)).is_zero() for p, _ in m.factors)
    ok = distinct and killed and deg_ok and exact and len(roots) == m.norm
    lhs = f"{len(roots)} roots, deg Psi = {primitive_division_poly(m).deg}"
    rhs = f"N(m) = {m.norm}, #units = {euler_phi(m)}"
    return RelationReport("torsion", lhs, rhs, ok)
