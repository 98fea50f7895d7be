import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ratdyn.polynomials import UniPoly

from oracles import sylvester_resultant


def rand_poly(rng, max_deg=4, span=6):
    deg = rng.randrange(0, max_deg + 1)
    coeffs = [Fraction(rng.randrange(-span, span + 1)) for _ in range(deg + 1)]
    return UniPoly(coeffs)


def test_construction_trims_leading_zeros():
    assert UniPoly.of(1, 2, 0, 0).degree == 1
    assert UniPoly.of(0, 0, 0).is_zero
    assert UniPoly.zero().degree == -1


def test_arithmetic_basics():
    p = UniPoly.of(1, 1)  # 1 + z
    q = UniPoly.of(-1, 1)  # -1 + z
    assert p * q == UniPoly.of(-1, 0, 1)
    assert p + q == UniPoly.of(0, 2)
    assert (p**3).degree == 3
    assert p - p == UniPoly.zero()


def test_divmod_exact():
    p = UniPoly.of(-1, 0, 0, 0, 1)  # z^4 - 1
    d = UniPoly.of(1, 0, 1)  # z^2 + 1
    q, r = divmod(p, d)
    assert r.is_zero
    assert q == UniPoly.of(-1, 0, 1)


def test_gcd_and_xgcd():
    a = UniPoly.of(-1, 0, 1) * UniPoly.of(2, 1)
    b = UniPoly.of(2, 1) * UniPoly.of(5, 3)
    g = a.gcd(b)
    assert g == UniPoly.of(2, 1)
    gg, u, v = a.xgcd(b)
    assert gg == g
    assert u * a + v * b == g


def test_eval_and_compose():
    p = UniPoly.of(1, 2, 3)
    assert p(2) == 1 + 4 + 12
    q = UniPoly.of(0, 0, 1)
    assert p.compose(q) == UniPoly.of(1, 0, 2, 0, 3)
    assert p.taylor_shift(1)(0) == p(1)


def test_yun_decomposition():
    p = (UniPoly.of(-1, 1) ** 3) * (UniPoly.of(1, 1) ** 2) * UniPoly.of(0, 1)
    parts = dict((m, f) for f, m in p.yun_decomposition())
    assert parts[3] == UniPoly.of(-1, 1)
    assert parts[2] == UniPoly.of(1, 1)
    assert parts[1] == UniPoly.of(0, 1)


def test_resultant_matches_sylvester_oracle():
    rng = random.Random(11)
    for _ in range(60):
        f = rand_poly(rng)
        g = rand_poly(rng)
        if f.is_zero or g.is_zero:
            continue
        assert f.resultant(g) == sylvester_resultant(f, g)


def test_resultant_known_values():
    f = UniPoly.of(-1, 1)
    g = UniPoly.of(1, 1)
    assert f.resultant(g) == 2
    # shared root forces zero
    assert f.resultant(f * g) == 0


def test_resultant_multiplicativity():
    rng = random.Random(5)
    for _ in range(30):
        f = rand_poly(rng, 3)
        g = rand_poly(rng, 3)
        h = rand_poly(rng, 3)
        if f.is_zero or g.is_zero or h.is_zero:
            continue
        assert (f * g).resultant(h) == f.resultant(h) * g.resultant(h)


def test_interpolation_round_trip():
    p = UniPoly.of(Fraction(1, 2), -3, 0, 2)
    points = [(x, p(x)) for x in range(5)]
    assert UniPoly.interpolate(points) == p


def test_content_and_primitive():
    p = UniPoly([Fraction(2, 3), Fraction(4, 3)])
    c, q = p.content_and_primitive()
    assert q == UniPoly.of(1, 2)
    assert q * c == p
    c, q = (-p).content_and_primitive()
    assert q.lc > 0
    assert q * c == -p


small_coeffs = st.lists(st.integers(-8, 8), min_size=0, max_size=5)


@settings(max_examples=60, deadline=None)
@given(small_coeffs, small_coeffs, small_coeffs)
def test_ring_axioms(a, b, c):
    p, q, r = UniPoly(a), UniPoly(b), UniPoly(c)
    assert p * (q + r) == p * q + p * r
    assert (p * q) * r == p * (q * r)
    assert p + q == q + p


@settings(max_examples=40, deadline=None)
@given(small_coeffs, small_coeffs)
def test_divmod_identity(a, b):
    p, q = UniPoly(a), UniPoly(b)
    if q.is_zero:
        with pytest.raises(ZeroDivisionError):
            divmod(p, q)
        return
    quo, rem = divmod(p, q)
    assert quo * q + rem == p
    assert rem.degree < q.degree or rem.is_zero
