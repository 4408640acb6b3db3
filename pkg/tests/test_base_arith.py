from collections import Counter

import pytest
from hypothesis import given, strategies as st

from carlitz_euler.base_arith import (
    GF, MonicIdeal, ParseError, Poly, RatFunc, discrete_log, euler_phi, factor,
    factor_cz, is_irreducible, monic_irreducibles, parse_poly, unit_group,
)

from conftest import P


# -- finite fields ----------------------------------------------------------------

@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 16])
def test_field_axioms(q):
    F = GF(q)
    assert F.order == q
    for a in F.elements():
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
            assert F.pow(a, q - 1) == 1


@pytest.mark.parametrize("q", [4, 8, 9])
def test_multiplicative_group_is_cyclic(q):
    F = GF(q)
    orders = []
    for a in range(1, q):
        k, x = 1, a
        while x != 1:
            x, k = F.mul(x, a), k + 1
        orders.append(k)
    assert max(orders) == q - 1


@given(st.integers(0, 15), st.integers(0, 15), st.integers(0, 15))
def test_gf16_distributes(a, b, c):
    F = GF(16)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))


# -- polynomials and parsing ------------------------------------------------------

def test_parse_and_print_round_trip():
    for text in ["T^4+T^3+1", "T^2+T", "1", "0", "T"]:
        assert str(P(text)) == text
    assert str(parse_poly("2*T^2+1", 3)) == "2*T^2+1"
    f = parse_poly("g*T+1", 4)
    assert f.deg == 1 and parse_poly(str(f), 4) == f


def test_parse_errors():
    for bad in ["T^", "T**", "x+1", "(T+1"]:
        with pytest.raises(ParseError):
            parse_poly(bad, 2)


def _poly(q, coeffs):
    return Poly(GF(q), tuple(coeffs))


coeff_lists = st.lists(st.integers(0, 2), min_size=0, max_size=7)


@given(coeff_lists, coeff_lists)
def test_divmod_identity(a, b):
    A, B = _poly(3, a), _poly(3, b)
    if B.is_zero():
        return
    Q, R = divmod(A, B)
    assert Q * B + R == A
    assert R.is_zero() or R.deg < B.deg


@given(coeff_lists, coeff_lists)
def test_gcd_divides_both(a, b):
    A, B = _poly(3, a), _poly(3, b)
    if A.is_zero() and B.is_zero():
        return
    g = A.gcd(B)
    assert g.divides(A) and g.divides(B)
    _, s, t = A.xgcd(B)
    assert (s * A + t * B).monic() == g


# -- factorization ----------------------------------------------------------------

def test_factor_examples():
    assert factor(P("T^2+T")) == [(P("T"), 1), (P("T+1"), 1)]
    assert factor(P("T^2+T+1")) == [(P("T^2+T+1"), 1)]
    assert factor(parse_poly("T^2+1", 3)) == [(parse_poly("T^2+1", 3), 1)]


def test_factor_rejects_zero():
    with pytest.raises(ValueError):
        factor(P("0"))


def test_irreducible_counts():
    # necklace counts for q=2: 2, 1, 2, 3, 6, 9
    assert [len(monic_irreducibles(GF(2), d)) for d in range(1, 7)] == [2, 1, 2, 3, 6, 9]
    assert [len(monic_irreducibles(GF(3), d)) for d in range(1, 4)] == [3, 3, 8]


def _merge(fa, fb):
    c = Counter()
    for p, e in fa + fb:
        c[p] += e
    return sorted(c.items(), key=lambda pe: pe[0].sort_key())


monic_coeffs = st.lists(st.integers(0, 1), min_size=0, max_size=6).map(lambda c: c + [1])


@given(monic_coeffs, monic_coeffs)
def test_factor_is_multiplicative(a, b):
    f, g = _poly(2, a), _poly(2, b)
    if f.deg < 1 or g.deg < 1:
        return
    assert factor(f * g) == _merge(factor(f), factor(g))


@given(st.lists(st.integers(0, 2), min_size=1, max_size=8).map(lambda c: c + [1]))
def test_factor_reconstructs(c):
    f = _poly(3, c)
    prod = _poly(3, [1])
    for p, e in factor(f):
        assert is_irreducible(p)
        prod = prod * p ** e
    assert prod == f


@given(st.lists(st.integers(0, 3), min_size=1, max_size=7).map(lambda c: c + [1]))
def test_cantor_zassenhaus_agrees(c):
    f = _poly(4, c)
    assert sorted(factor_cz(f), key=lambda pe: pe[0].sort_key()) == factor(f)


# -- ideals and unit groups -------------------------------------------------------

def test_unit_group_examples():
    G = unit_group(MonicIdeal(P("T^2")))
    assert G.gens == [P("T+1")] and G.orders == [2]
    assert unit_group(MonicIdeal(P("T^2+T"))).order == 1
    G3 = unit_group(MonicIdeal(parse_poly("T", 3)))
    assert G3.orders == [2] and G3.gens == [parse_poly("2", 3)]


def test_discrete_log_examples():
    G = unit_group(MonicIdeal(P("T^2")))
    assert discrete_log(G, P("T+1")) == (1,)
    assert discrete_log(G, P("1")) == (0,)
    assert discrete_log(unit_group(MonicIdeal(parse_poly("T", 3))), parse_poly("2", 3)) == (1,)
    with pytest.raises(ValueError):
        discrete_log(G, P("T"))


def test_ideal_rejects_zero():
    with pytest.raises(ValueError):
        MonicIdeal(P("0"))


moduli = st.sampled_from(
    [(2, "T^3"), (2, "T^4+T"), (2, "T^2+T+1"), (2, "(T+1)^3*T^2"), (3, "T^2"),
     (3, "T^3+2*T+1"), (3, "T*(T+1)*(T+2)"), (4, "T^2"), (4, "T*(T+g)"), (5, "T^2+2")]
)


@given(moduli)
def test_unit_group_cardinality(qm):
    q, text = qm
    m = MonicIdeal(parse_poly(text, q))
    G = unit_group(m)
    expected = 1
    for p, e in m.factors:
        Np = q ** p.deg
        expected *= Np ** e - Np ** (e - 1)
    assert G.order == expected == euler_phi(m)
    for g, o in zip(G.gens, G.orders):
        assert G.pow(g, o).is_one()
        assert G.element_order(g) == o


@given(moduli, st.data())
def test_log_exp_round_trip(qm, data):
    q, text = qm
    G = unit_group(MonicIdeal(parse_poly(text, q)))
    for _ in range(5):
        x = data.draw(st.sampled_from(G.elements()))
        assert G.exp(discrete_log(G, x)) == x


# -- rational functions -----------------------------------------------------------

def test_ratfunc_normalizes():
    x = RatFunc(P("T^2+T"), P("T"))
    assert x.num == P("T+1") and x.den.is_one()
    y = RatFunc(parse_poly("2*T", 3), parse_poly("2*T^2+2", 3))
    assert y.den.is_monic()
    with pytest.raises(ZeroDivisionError):
        RatFunc(P("1"), P("0"))
