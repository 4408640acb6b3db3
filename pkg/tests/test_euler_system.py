"""The Euler system on two small configurations.

cfg A: q=2, K = H_{T^2} (= k_{T^2}), M=3, g=T+1, l=T^4+T^3+1.
cfg B: q=2, K = k, M=3, g=T+1, l1=T^2+T+1, l2=T^4+T+1.
"""

import pytest
from hypothesis import given, strategies as st

from carlitz_euler.base_arith import MonicIdeal, Poly, factor, parse_poly
from carlitz_euler.euler_system import (
    ConfigError, EulerSystem, GroupRingElem, KappaError, LocalMaps, chebotarev_candidates,
    class_order, curly_L_primes, in_curly_L, k_of_ell, kolyvagin_D, make_config, norm_element,
    passers, primitive_root, telescoping_holds,
)

from conftest import P


def I(text, q=2):
    return MonicIdeal(parse_poly(text, q))


ONE = I("1")
ELL = I("T^4+T^3+1")
L1, L2 = I("T^2+T+1"), I("T^4+T+1")


@pytest.fixture(scope="module")
def cfg_a():
    return make_config(I("T^2"), 3, I("T+1"))


@pytest.fixture(scope="module")
def sys_a(cfg_a):
    return EulerSystem(cfg_a, [ELL])


@pytest.fixture(scope="module")
def sys_b():
    return EulerSystem(make_config(I("T"), 3, I("T+1")), [L1, L2])


# -- configuration and the prime set --------------------------------------------------

def test_prime_set_examples(cfg_a):
    assert in_curly_L(ELL, cfg_a)
    assert not in_curly_L(I("T^2+T+1"), cfg_a)
    assert not in_curly_L(I("T^3+T+1"), cfg_a)
    with pytest.raises(ValueError):
        in_curly_L(I("T+1"), cfg_a)
    with pytest.raises(ValueError):
        in_curly_L(I("T^4+T^3"), cfg_a)


def test_prime_set_scan(cfg_a):
    found = [str(l.gen) for l in curly_L_primes(cfg_a, 6)]
    assert found == ["T^4+T^3+1", "T^6+T^3+1", "T^6+T^5+1", "T^6+T^5+T^3+T^2+1", "T^6+T^5+T^4+T^2+1"]


def test_prime_set_with_roots_of_unity():
    cfg = make_config(I("T", 4), 3, I("T+1", 4))
    assert cfg.mu_p_in_k
    for ell in curly_L_primes(cfg, 3):
        assert (ell.norm - 1) % 9 == 0
    assert not in_curly_L(I("T^2+T+g", 4), cfg)  # N - 1 = 15, and 9 does not divide it


def test_config_validation():
    with pytest.raises(ConfigError):
        make_config(I("T^2"), 6, I("T+1"))
    with pytest.raises(ConfigError):
        make_config(I("T^2"), 2, I("T+1"))  # p equals the characteristic
    with pytest.raises(ConfigError):
        make_config(I("T^2"), 3, I("T"))
    with pytest.raises(ConfigError):
        make_config(I("T^2+T+1"), 3, I("T+1"))  # p = 3 divides [K:k] = 3
    assert make_config(I("T^2", 3), 2, I("T+1", 3)).K_degree == 3
    with pytest.raises(ConfigError):
        EulerSystem(make_config(I("T^2"), 3, I("T+1")), [I("T^3+T+1")])


def test_primitive_root():
    assert primitive_root(ELL) == P("T")
    assert primitive_root(I("T^2+T+1")) == P("T")
    assert primitive_root(I("T", 3)) == parse_poly("2", 3)


# -- group ring ----------------------------------------------------------------------

@pytest.mark.parametrize("M", [2, 3, 4, 5, 9])
def test_telescoping(M):
    assert telescoping_holds(M)


def test_kolyvagin_operator_examples():
    s = GroupRingElem.sigma(3, 1, 0)
    one = GroupRingElem.one(3, 1)
    assert kolyvagin_D(3) == s + s * s * 2
    assert (s - one) * kolyvagin_D(3) == GroupRingElem.scalar(3, 1, 3) - (one + s + s * s)
    assert kolyvagin_D(2) == GroupRingElem.sigma(2, 1, 0)
    D = kolyvagin_D(3, 2)
    # coefficients i*j over (Z/3)^2, with zero rows dropped
    assert D.support() == 4 and dict(D.coeffs)[(2, 2)] == 4


@given(st.integers(2, 12), st.integers(1, 3))
def test_telescoping_each_factor(M, rank):
    D = kolyvagin_D(M, rank)
    for j in range(rank):
        s = GroupRingElem.sigma(M, rank, j)
        Dj = kolyvagin_D(M, rank, [j])
        lhs = (s - GroupRingElem.one(M, rank)) * Dj
        assert lhs == GroupRingElem.scalar(M, rank, M) - norm_element(M, rank, j)
    assert D == kolyvagin_D(M, rank, range(rank))


# -- auxiliary fields ------------------------------------------------------------------

def test_auxiliary_field_degrees(cfg_a, sys_a, sys_b):
    assert k_of_ell(ELL, cfg_a).degree == 6
    assert sys_a.K.degree == 2
    assert sys_b.K_of(L1 * L2).degree == 9
    assert sys_b.K_of(L1).degree == sys_b.K_of(L2).degree == 3
    cfg1 = make_config(I("T^2"), 1, I("T+1"), p=3)
    assert k_of_ell(I("T^3+T^2+1"), cfg1).degree == cfg1.K_degree


# -- alpha and the axioms --------------------------------------------------------------

def test_alpha_one(sys_a):
    K = sys_a.field
    lam = K.lambda_of(I("T^2"))
    assert sys_a.alpha(ONE) == K.scalar(P("T+1")) * lam + K.scalar(P("T"))


def test_alpha_with_artin_trivial_twist():
    # g = T^2+1 is 1 modulo T^2, so alpha(1) = lambda^(N(g) - 1)
    E = EulerSystem(make_config(I("T^2"), 3, I("T^2+1")), [])
    lam = E.field.lam
    assert E.alpha(ONE) == lam ** 3


def test_axioms_cfg_a(sys_a):
    for a in (ONE, ELL):
        assert sys_a.verify_E1(a).passed
        assert sys_a.verify_E2(a).passed
    assert sys_a.verify_E3(ONE, ELL).passed
    e4 = sys_a.verify_E4(ONE, ELL)
    assert e4.passed and len(e4.lhs.split(",")) == len(e4.rhs.split(","))


def test_axioms_cfg_b(sys_b):
    ideals = [ONE, L1, L2, L1 * L2]
    for a in ideals:
        assert sys_b.verify_E1(a).passed and sys_b.verify_E2(a).passed
    for a in (ONE, L1, L2):
        for ell in (L1, L2):
            if not ell.divides(a):
                assert sys_b.verify_E3(a, ell).passed
                assert sys_b.verify_E4(a, ell).passed


def test_alpha_rejects_non_products(sys_b):
    with pytest.raises(ValueError):
        sys_b.alpha(L1 * L1)


# -- derivative classes ----------------------------------------------------------------

def test_kappa_of_one_is_alpha(sys_a):
    k = sys_a.kappa(ONE)
    assert k.representative == sys_a.alpha(ONE) and k.verify(sys_a)


def test_kappa_cfg_a(sys_a):
    k = sys_a.kappa(ELL)
    assert k.verify(sys_a)
    N = sys_a.K.norm_to_k(k.representative).to_k()
    assert N.den.is_one()
    assert factor(N.num) == [(P("T"), 3), (ELL.gen, 2)]
    assert all(c.passed for c in sys_a.check_cocycle(ELL))


def test_kappa_cfg_b(sys_b):
    k1 = sys_b.kappa(L1)
    assert k1.verify(sys_b)
    assert k1.representative == sys_b.field.scalar(P("T^4+T^2+1"))
    assert sys_b.kappa(L2).representative == sys_b.field.scalar(P("T^11+T^5+T^3"))
    k12 = sys_b.kappa(L1 * L2)
    assert k12.verify(sys_b)
    assert all(c.passed for c in sys_b.check_cocycle(L1 * L2))


def test_kappa_degenerate_M1():
    E = EulerSystem(make_config(I("T^2"), 1, I("T+1"), p=3), [I("T^3+T^2+1")])
    ell = I("T^3+T^2+1")
    k = E.kappa(ell)
    assert k.representative == E.alpha(ell) and k.verify(E)


def test_kappa_refused_with_roots_of_unity():
    cfg = make_config(I("T", 4), 3, I("T+1", 4))
    ell = curly_L_primes(cfg, 3)[0]
    with pytest.raises(KappaError):
        EulerSystem(cfg, [ell]).kappa(ell)


# -- psi, phi and the two factorization laws --------------------------------------------

def test_pi_classes(sys_a):
    # psi of the uniformizer has exact order M at every prime, and equals -1
    assert sys_a.pi_classes(ELL) == (2, 2)


def test_psi_vanishes_on_K(sys_a):
    y = sys_a.alpha(ONE)
    assert sys_a.psi(y, ELL) == (0, 0)
    assert sys_a.psi(sys_a.field.scalar(P("T^3+T+1")), ELL) == (0, 0)


def test_kappa_residue_cfg_a(sys_a):
    assert sys_a.ideal_vector(sys_a.alpha(ONE), ELL) == (0, 0)
    assert sys_a.phi(sys_a.alpha(ONE), ELL) == (1, 1)
    c = sys_a.verify_kappa_residue(ELL, ELL)
    assert c.passed and c.lhs == "[1, 1]"
    assert sys_a.verify_kappa_residue(ONE, ELL).passed
    assert sys_a.verify_kappa_residue_elsewhere(ELL).passed


def test_kappa_residue_cfg_b(sys_b):
    ideals = [ONE, L1, L2, L1 * L2]
    for a in ideals:
        for ell in (L1, L2):
            assert sys_b.verify_kappa_residue(a, ell).passed
        assert sys_b.verify_kappa_residue_elsewhere(a).passed
    assert sys_b.ideal_vector(sys_b.kappa(L1).representative, L1) == (2,)
    assert sys_b.ideal_vector(sys_b.kappa(L1 * L2).representative, L2) == (1,)


def test_norm_residue_sign(sys_a):
    xs = sys_a.sample_elements(ELL, 3, seed=1)
    assert all(sys_a.verify_norm_residue(x, ELL).passed for x in xs)
    # the uniformizer separates the two sign conventions
    pi = sys_a.uniformizer(ELL)
    assert sys_a.verify_norm_residue(pi, ELL).passed
    assert not sys_a.verify_norm_residue(pi, ELL, sign=-1).passed


def test_equivariance(sys_a):
    y = sys_a.alpha(ONE)
    for u in sys_a.K.galois_group_reps():
        assert sys_a.verify_equivariance(y, u, ELL).passed


def test_phi_requires_trivial_ideal_vector(sys_a):
    with pytest.raises(ValueError):
        sys_a.phi(sys_a.field.scalar(ELL.gen), ELL)


def test_phi_two_routes(cfg_a, sys_a):
    E0 = EulerSystem(cfg_a, [])
    beta = E0.alpha(ONE)
    assert LocalMaps(cfg_a, ELL, E0.K).phi(beta) == sys_a.phi(sys_a.alpha(ONE), ELL)


# -- Chebotarev scan ------------------------------------------------------------------

def test_chebotarev_trivial_class(cfg_a):
    E0 = EulerSystem(cfg_a, [])
    res = chebotarev_candidates(cfg_a, E0.field.one(), 6)
    assert class_order(cfg_a, E0.field.one()) == 1
    assert [str(l.gen) for l in passers(res)] == [
        "T^4+T^3+1", "T^6+T^3+1", "T^6+T^5+1", "T^6+T^5+T^3+T^2+1", "T^6+T^5+T^4+T^2+1"]


def test_chebotarev_alpha_one(cfg_a):
    E0 = EulerSystem(cfg_a, [])
    beta = E0.alpha(ONE)
    assert class_order(cfg_a, beta) == 3
    res = chebotarev_candidates(cfg_a, beta, 6)
    assert len(res) == 5 and passers(res) == []
    # phi is a multiple of 1 + sigma, never a unit of Z/3[G]
    assert all(r.phi[0] == r.phi[1] for r in res)


def test_chebotarev_empty_scan(cfg_a):
    E0 = EulerSystem(cfg_a, [])
    assert chebotarev_candidates(cfg_a, E0.field.one(), 3) == []
