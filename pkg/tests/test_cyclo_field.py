import random

import pytest
from hypothesis import given, strategies as st

from carlitz_euler.base_arith import GF, MonicIdeal, Poly, euler_phi, monics, parse_poly
from carlitz_euler.carlitz import primitive_division_poly
from carlitz_euler.cyclo_field import SubfieldSpec, cyclo_field, galois_apply, lambda_of, norm_to
from carlitz_euler.cyclo_primes import val_at_primes
from carlitz_euler.cyclo_relations import (
    admissible_pairs, stark_unit, verify_congruence, verify_distribution, verify_stark_norm,
)

from conftest import P


def I(text, q=2):
    return MonicIdeal(parse_poly(text, q))


def _eval_psi(K, m, y):
    acc = K.zero()
    for c in reversed(primitive_division_poly(m).coeffs()):
        acc = acc * y + K.scalar(c)
    return acc


def _v(ell, a):
    if a.is_zero():
        raise ValueError
    v = 0
    while ell.divides(a):
        a, v = a.exact_div(ell), v + 1
    return v


# -- torsion points -------------------------------------------------------------------

def test_lambda_of_examples():
    K = cyclo_field(I("T^2"))
    assert K.lambda_of(I("T")) == K.scalar(P("T"))
    assert K.lambda_of(I("T^2")) == K.lam
    K2 = cyclo_field(I("T^2+T"))
    assert K2.lam == K2.scalar(P("1"))
    assert K2.lambda_of(I("T")) == K2.scalar(P("T"))
    with pytest.raises(ValueError):
        K.lambda_of(I("T+1"))


def test_lambda_coherence_in_towers():
    # lambda_T computed in k_{T^2 (T+1)} equals Phi_{T}(lambda_{T^2}) there
    n = I("T^3+T^2")
    K = cyclo_field(n)
    lam_t2 = K.lambda_of(I("T^2"))
    assert K.carlitz(P("T"), lam_t2) == K.lambda_of(I("T"))
    assert lambda_of(I("T"), n) == K.scalar(P("T"))


# -- Galois action --------------------------------------------------------------------

def test_galois_examples():
    K = cyclo_field(I("T^2"))
    assert galois_apply(P("T+1"), K.lam) == K.lam + K.scalar(P("T"))
    assert galois_apply(P("1"), K.lam) == K.lam
    x = K.scalar(P("T^3+1"))
    assert galois_apply(P("T+1"), x) == x
    with pytest.raises(ValueError):
        galois_apply(P("T"), K.lam)


small_moduli = [m for q in (2, 3) for d in (1, 2, 3) for m in map(MonicIdeal, monics(GF(q), d))
                if euler_phi(m) <= 8]


@pytest.mark.parametrize("m", small_moduli, ids=str)
def test_galois_faithful_and_transitive(m):
    K = cyclo_field(m)
    G = K.units.elements()
    images = [K.galois(u, K.lam) for u in G]
    for y in images:
        assert _eval_psi(K, m, y).is_zero()
    # distinct images for distinct units, and as many as roots of Psi
    for i in range(len(images)):
        for j in range(i):
            assert images[i] != images[j]
    assert len(images) == primitive_division_poly(m).deg


@pytest.mark.parametrize("text,q", [("T^2", 2), ("T^3+T", 2), ("T^2+1", 3)])
def test_galois_composition(text, q):
    K = cyclo_field(I(text, q))
    rng = random.Random(1)
    G = K.units.elements()
    x = K.lam * K.lam + K.scalar(P("T", q)) * K.lam + K.one()
    for _ in range(10):
        u, v = rng.choice(G), rng.choice(G)
        assert K.galois(u, K.galois(v, x)) == K.galois(K.units.mul(u, v), x)
        assert K.galois(u, x * x) == K.galois(u, x) * K.galois(u, x)


# -- norms ----------------------------------------------------------------------------

def test_norm_examples():
    K = cyclo_field(I("T^2"))
    full = SubfieldSpec(K, K.all_units())
    assert norm_to(full, K.lam) == K.scalar(P("T"))
    trivial = SubfieldSpec(K, frozenset({P("1")}))
    assert norm_to(trivial, K.lam) == K.lam
    a = K.scalar(P("T+1"))
    assert norm_to(full, a) == a * a


@given(st.integers(0, 2 ** 31))
def test_norm_tower_transitivity(seed):
    rng = random.Random(seed)
    n, m = I("T^3+T^2"), I("T^2")
    K = cyclo_field(n)
    x = K.from_polys([Poly(GF(2), [rng.randrange(2) for _ in range(3)]) for _ in range(K.degree)])
    if x.is_zero():
        return
    top = SubfieldSpec(K, K.all_units()).norm(x)
    k_m = SubfieldSpec(K, K.restriction_kernel(m))
    mid = k_m.norm(x)
    assert k_m.contains(mid)
    assert SubfieldSpec(K, K.all_units()).norm(mid, source=k_m.S) == top


# -- Stark units ----------------------------------------------------------------------

def test_stark_unit_examples():
    K = cyclo_field(I("T"))
    assert stark_unit(I("T")) == K.scalar(P("T"))
    assert SubfieldSpec(K, K.all_units()).norm_to_k(stark_unit(I("T"))).to_k().num == P("T")
    assert stark_unit(I("T^2+T")) == cyclo_field(I("T^2+T")).one()
    K3 = cyclo_field(I("T", 3))
    assert stark_unit(I("T", 3)) == K3.scalar(parse_poly("T", 3))


grid = [m for q in (2, 3) for d in (1, 2, 3) for m in map(MonicIdeal, monics(GF(q), d))]


@pytest.mark.parametrize("m", grid, ids=lambda m: f"q{m.q}-{m}")
def test_stark_norm_identity(m):
    assert verify_stark_norm(m).equal


@pytest.mark.parametrize("m", grid, ids=lambda m: f"q{m.q}-{m}")
def test_stark_unit_norm_to_k(m):
    K = cyclo_field(m)
    H = SubfieldSpec.H(K)
    N = H.norm_to_k(stark_unit(m)).to_k()
    assert N.den.is_one()
    primes = m.factors
    if len(primes) >= 2:
        assert N.num.deg == 0
    else:
        (p, e), = primes
        # a power of the prime, up to a constant, with exponent 1
        assert N.num.monic() == p


# -- distribution and congruence ------------------------------------------------------

def test_distribution_examples():
    r = verify_distribution(I("T"), I("T+1"))
    assert r.equal and r.lhs == "1" and r.rhs == "1"
    r = verify_distribution(I("T"), I("T"))
    assert r.equal and r.lhs == "T"
    assert verify_distribution(I("T", 3), I("T", 3)).equal
    with pytest.raises(ValueError):
        verify_distribution(I("T"), I("T^2"))


def test_congruence_examples():
    r = verify_congruence(I("T"), I("T+1"))
    assert r.equal and r.lhs == r.rhs == "T+1"
    assert verify_congruence(I("T+1"), I("T")).equal
    assert verify_congruence(I("T+1", 3), I("T", 3)).equal
    with pytest.raises(ValueError):
        verify_congruence(I("T^2"), I("T"))


@pytest.mark.parametrize("q", [2, 3])
def test_relations_small_grid(q):
    for m, qq in admissible_pairs(q, 3):
        assert verify_distribution(m, qq).equal
        if not qq.divides(m):
            assert verify_congruence(m, qq).equal


# -- valuations above a finite prime -------------------------------------------------

def test_val_at_primes_examples():
    K = cyclo_field(I("T^2"))
    H = SubfieldSpec.H(K)
    x = K.scalar(P("T^3+T"))  # (T+1)^2 T
    assert all(v == 2 for _, v in val_at_primes(x, H, P("T+1")))
    with pytest.raises(ValueError):
        val_at_primes(K.lam, H, P("T"))
    y = K.scalar(P("T+1")) * K.lam + K.scalar(P("T"))
    vals = val_at_primes(y, H, P("T+1"))
    N = H.norm_to_k(y).to_k()
    assert sum(f * v for f, v in vals) == _v(P("T+1"), N.num) - _v(P("T+1"), N.den)
    with pytest.raises(ValueError):
        val_at_primes(K.zero(), H, P("T+1"))


@given(st.integers(0, 2 ** 31), st.sampled_from(["T^2+T+1", "T^3+T+1", "T+1"]))
def test_valuation_sum_rule(seed, ell):
    rng = random.Random(seed)
    K = cyclo_field(I("T^3"))
    H = SubfieldSpec.H(K)
    F = GF(2)
    x = K.from_polys([Poly(F, [rng.randrange(2) for _ in range(4)]) for _ in range(K.degree)])
    y = H.norm(x) if not x.is_zero() else None
    if y is None or y.is_zero():
        return
    ell = P(ell)
    N = H.norm_to_k(y).to_k()
    vals = val_at_primes(y, H, ell)
    assert sum(f * v for f, v in vals) == _v(ell, N.num) - _v(ell, N.den)
