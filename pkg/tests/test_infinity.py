from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from carlitz_euler.base_arith import GF, MonicIdeal, Poly, monics, parse_poly
from carlitz_euler.carlitz import primitive_division_poly
from carlitz_euler.cyclo_field import SubfieldSpec, cyclo_field
from carlitz_euler.cyclo_relations import stark_unit
from carlitz_euler.infinity_embed import (
    PuiseuxSeries, char_poly_over_k, closed_form_valuation, lambda_series, newton_valuations,
    puiseux_roots, v_inf_per_sigma,
)

from conftest import P


def I(text, q=2):
    return MonicIdeal(parse_poly(text, q))


def F(*x):
    return Fraction(*x)


def test_newton_examples():
    assert newton_valuations([P("T"), P("T"), P("1")]) == [F(-1), F(0)]
    q3 = [parse_poly("T", 3), parse_poly("0", 3), parse_poly("1", 3)]
    assert newton_valuations(q3) == [F(-1, 2), F(-1, 2)]
    assert newton_valuations([P("T"), P("1")]) == [F(-1)]
    with pytest.raises(ValueError):
        newton_valuations([P("0"), P("0")])


def _check_roots(coeffs, N):
    roots = puiseux_roots(coeffs, N)
    fs = [PuiseuxSeries.from_poly(c) for c in coeffs]
    for r in roots:
        acc = fs[-1]
        for c in reversed(fs[:-1]):
            acc = acc * r + c
        # f(r) vanishes to the working precision
        assert acc.is_zero() or acc.val >= N - len(coeffs) * abs(r.val) - 4 * (r.q - 1)
    return roots


def test_puiseux_examples():
    f = [P("T"), P("T"), P("1")]
    roots = _check_roots(f, 16)
    assert sorted(r.valuation() for r in roots) == [F(-1), F(0)]
    (r,) = puiseux_roots([P("T"), P("1")], 8)
    assert r.valuation() == -1 and (r + PuiseuxSeries.from_poly(P("T"))).is_zero()
    q3 = [parse_poly("T", 3), parse_poly("0", 3), parse_poly("1", 3)]
    roots = _check_roots(q3, 12)
    assert len(roots) == 2 and all(r.valuation() == F(-1, 2) for r in roots)
    assert (roots[0] + roots[1]).is_zero()


def test_v_inf_examples():
    assert list(v_inf_per_sigma(I("T")).values()) == [F(-1)]
    assert sorted(v_inf_per_sigma(I("T^2")).values()) == [F(-1), F(0)]
    assert v_inf_per_sigma(I("T^2"))[P("1")] == 0
    assert set(v_inf_per_sigma(I("T^2+T")).values()) == {F(0)}


def test_distinguished_root_has_max_valuation():
    for m in [I("T^2"), I("T^3"), I("T^2", 3), I("T^2+1", 3)]:
        r = lambda_series(m, 4 * primitive_division_poly(m).deg)
        assert r.valuation() == max(newton_valuations(primitive_division_poly(m).coeffs()))


grid = [MonicIdeal(g) for q in (2, 3) for d in (1, 2, 3) for g in monics(GF(q), d)]


@pytest.mark.parametrize("m", grid, ids=lambda m: f"q{m.q}-{m}")
def test_valuations_match_minimal_polynomial(m):
    K = cyclo_field(m)
    H = SubfieldSpec.H(K)
    eps = stark_unit(m)
    vals = v_inf_per_sigma(m)
    cp = char_poly_over_k(eps, H.galois_group_reps())
    if all(c.is_zero() for c in cp[:1]):
        pytest.skip("zero constant term")
    assert sorted(vals.values()) == newton_valuations(cp)
    # sum rule against the norm to k
    N = H.norm_to_k(eps).to_k()
    assert sum(vals.values()) == N.v_inf()
    if len(m.factors) >= 2:
        assert sum(vals.values()) == 0


@pytest.mark.parametrize("m", [I("T^2"), I("T^3+T"), I("T^2", 3), I("T^2+2", 3)], ids=str)
def test_closed_form_per_conjugate(m):
    K = cyclo_field(m)
    w = m.q - 1
    # eps = -lambda^w, so v(eps^sigma_u) = w * v(Phi_u(lambda))
    for u, v in v_inf_per_sigma(m).items():
        assert v == w * closed_form_valuation(m, u)


@given(st.integers(1, 40), st.integers(1, 40))
def test_series_multiplication_and_inverse(a, b):
    x = PuiseuxSeries.from_poly(Poly(GF(3), [a % 3, 1, b % 3]))
    y = PuiseuxSeries.from_poly(Poly(GF(3), [1, b % 3, 0, 1]))
    z = x * y
    assert (z - y * x).is_zero()
    N = 20
    inv = y.inverse(N)
    one = (y * inv).truncate(N)
    assert (one - PuiseuxSeries.from_poly(Poly(GF(3), [1]))).truncate(N - 8).is_zero()
