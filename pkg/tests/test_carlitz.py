import random

import pytest
from hypothesis import given, strategies as st

from carlitz_euler.base_arith import GF, MonicIdeal, Poly, monics, parse_poly
from carlitz_euler.carlitz import (
    carlitz_coeffs, division_poly, phi_elem, phi_ideal, phi_of_element, primitive_division_poly,
    sgn, xi_ratio,
)
from carlitz_euler.cyclo_relations import verify_torsion_structure
from carlitz_euler.twisted_poly import parse_twisted

from conftest import P


def test_phi_examples():
    assert phi_elem(P("T")) == parse_twisted("T + F", 2)
    assert phi_elem(parse_poly("T", 5)) == parse_twisted("T + F", 5)
    assert phi_elem(P("T^2")) == parse_twisted("F^2 + (T^2+T)*F + T^2", 2)
    assert phi_elem(parse_poly("2", 3)) == parse_twisted("2", 3)
    with pytest.raises(ValueError):
        phi_elem(P("0"))


def test_phi_ideal_examples():
    assert phi_ideal(MonicIdeal(P("T"))) == parse_twisted("T + F", 2)
    assert phi_of_element(parse_poly("2*T", 3)) == parse_twisted("T + F", 3)
    assert phi_ideal(MonicIdeal(P("T^2"))) == parse_twisted("F^2 + (T^2+T)*F + T^2", 2)


def test_division_poly_examples():
    C = primitive_division_poly(MonicIdeal(P("T"))).coeffs()
    assert C == [P("T"), P("1")]
    assert primitive_division_poly(MonicIdeal(P("T^2"))).coeffs() == [P("T"), P("T"), P("1")]
    assert primitive_division_poly(MonicIdeal(P("T^2+T"))).coeffs() == [P("1"), P("1")]
    assert division_poly(MonicIdeal(P("T"))).coeffs() == [P("0"), P("T"), P("1")]
    with pytest.raises(ValueError):
        primitive_division_poly(MonicIdeal(P("1")))


def test_xi_ratio_examples():
    assert xi_ratio(MonicIdeal(P("1"))).value == P("1")
    assert xi_ratio(MonicIdeal(P("T"))).value == P("T")
    assert xi_ratio(MonicIdeal(P("T^2"))).value == P("T^2")


def test_sgn():
    assert sgn(parse_poly("2*T^3+T", 3)) == 2
    assert sgn(parse_poly("T+1", 3)) == 1
    with pytest.raises(ValueError):
        sgn(P("0"))


def _rand(q, rng, d=4):
    F = GF(q)
    while True:
        a = Poly(F, [rng.randrange(q) for _ in range(rng.randint(0, d) + 1)])
        if a:
            return a


@given(st.integers(0, 2 ** 31), st.sampled_from([2, 3]))
def test_phi_is_a_ring_homomorphism(seed, q):
    rng = random.Random(seed)
    a, b = _rand(q, rng), _rand(q, rng)
    assert phi_elem(a * b) == phi_elem(a) * phi_elem(b)
    if a + b:
        assert phi_elem(a + b) == phi_elem(a) + phi_elem(b)


@given(st.integers(0, 2 ** 31), st.sampled_from([2, 3, 4]))
def test_constant_term_degree_and_sign(seed, q):
    x = _rand(q, random.Random(seed))
    P_ = phi_elem(x)
    assert P_.D().num == x and P_.deg == x.deg
    assert P_.lc().num == Poly(x.F, (sgn(x),))
    I = phi_of_element(x)
    assert I.D().num == x.scale(x.F.inv(sgn(x)))
    assert I.lc().num.is_one()


@given(st.integers(0, 2 ** 31))
def test_xi_ratio_cocycle(seed):
    rng = random.Random(seed)
    a = MonicIdeal(_rand(3, rng, 3))
    b = MonicIdeal(_rand(3, rng, 3))
    assert xi_ratio(a * b).value == (xi_ratio(a) * xi_ratio(b)).value


@pytest.mark.parametrize("q", [2, 3])
def test_primitive_degree_and_constant(q):
    from carlitz_euler.base_arith import euler_phi

    for d in range(1, 4):
        for g in monics(GF(q), d):
            m = MonicIdeal(g)
            Psi = primitive_division_poly(m)
            assert Psi.deg == euler_phi(m)
            assert not Psi.coeffs()[0].is_zero()


@pytest.mark.parametrize("q,maxd", [(2, 3), (3, 2)])
def test_torsion_module_structure(q, maxd):
    for d in range(1, maxd + 1):
        for g in monics(GF(q), d):
            assert verify_torsion_structure(MonicIdeal(g)).equal


def test_coefficients_of_phi_t_power():
    # Phi_{T^3} over F_2, expanded by hand as Phi_T * Phi_{T^2}
    assert carlitz_coeffs(P("T^3")) == (P("T^3"), P("T^4+T^3+T^2"), P("T^4+T^2+T"), P("1"))
