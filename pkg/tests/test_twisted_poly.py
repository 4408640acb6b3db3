import random

import pytest
from hypothesis import given, strategies as st

from carlitz_euler.base_arith import GF, Poly, RatFunc
from carlitz_euler.twisted_poly import FiniteDomain, RationalDomain, TwistedPoly, parse_twisted


def tw(text, q=2):
    return parse_twisted(text, q)


def test_square_of_phi_t():
    A = tw("T+F")
    assert A * A == tw("F^2 + (T^2+T)*F + T^2")
    assert str(A * A) == "F^2 + (T^2+T)*F + T^2"


def test_commutation_rule():
    assert tw("F") * tw("T") == tw("T^2*F")
    assert tw("F", 3) * tw("T", 3) == tw("T^3*F", 3)


def test_identity_and_zero():
    A = tw("F^3 + T*F + 1")
    assert A * 1 == A and 1 * A == A
    assert (A * 0).is_zero()


def test_left_divmod_examples():
    A, B = tw("F^2 + (T^2+T)*F + T^2"), tw("F+T")
    assert A.left_divmod(B) == (tw("F+T"), tw("0"))
    assert A.left_divmod(A) == (tw("1"), tw("0"))
    assert B.left_divmod(A) == (tw("0"), B)
    with pytest.raises(ZeroDivisionError):
        A.left_divmod(tw("0"))


def test_apply_examples():
    dom = RationalDomain(2)
    A = tw("T+F")
    assert A.apply(dom.T).is_zero()
    assert tw("F^2 + T*F + 1").apply(dom.zero).is_zero()
    x = RatFunc(Poly(GF(2), (1, 1, 0, 1)), Poly(GF(2), (1, 1)))
    assert tw("1").apply(x) == x


def test_mixed_fields_rejected():
    with pytest.raises(TypeError):
        tw("F+T", 2) * tw("F+T", 3)
    with pytest.raises(TypeError):
        tw("F", 2) + TwistedPoly.frobenius(FiniteDomain(GF(4), 2))


def test_parse_print_round_trip():
    for text in ["F^2 + (T^2+T)*F + T^2", "T + F", "F^3 + 1"]:
        assert tw(parse_twisted(text, 2).__str__()) == tw(text)


def _random_tw(dom, rng, deg=3):
    return TwistedPoly(dom, tuple(dom.random(rng, 2) for _ in range(rng.randint(0, deg) + 1)))


@pytest.mark.parametrize("q", [2, 3, 4])
def test_ring_laws(q):
    rng = random.Random(q)
    dom = RationalDomain(q)
    for _ in range(40):
        a, b, c = (_random_tw(dom, rng) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert (a + b) * c == a * c + b * c
        if not a.is_zero() and not b.is_zero():
            assert (a * b).deg == a.deg + b.deg


@given(st.integers(0, 2 ** 31), st.sampled_from([2, 3, 4]))
def test_left_divmod_round_trip(seed, q):
    rng = random.Random(seed)
    dom = RationalDomain(q)
    A, B = _random_tw(dom, rng, 4), _random_tw(dom, rng, 2)
    if B.is_zero():
        return
    Q, R = A.left_divmod(B)
    assert Q * B + R == A
    assert R.is_zero() or R.deg < B.deg


@given(st.integers(0, 2 ** 31))
def test_apply_is_additive_and_composes(seed):
    rng = random.Random(seed)
    dom = RationalDomain(3)
    A, B = _random_tw(dom, rng), _random_tw(dom, rng)
    x, y = dom.random(rng), dom.random(rng)
    assert A.apply(x + y) == A.apply(x) + A.apply(y)
    assert (A * B).apply(x) == A.apply(B.apply(x))


@given(st.lists(st.integers(0, 15), min_size=1, max_size=4), st.lists(st.integers(0, 15), min_size=1, max_size=3),
       st.integers(0, 15))
def test_finite_coefficients(a, b, x):
    dom = FiniteDomain(GF(16), 2)
    A, B = TwistedPoly(dom, tuple(a)), TwistedPoly(dom, tuple(b))
    assert (A * B).apply(x) == A.apply(B.apply(x))
    if not B.is_zero():
        Q, R = A.left_divmod(B)
        assert Q * B + R == A
        Q2, R2 = A.right_divmod(B)
        assert B * Q2 + R2 == A
