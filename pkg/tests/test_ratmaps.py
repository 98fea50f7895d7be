import random
from fractions import Fraction

import pytest

from ratdyn.errors import PreconditionError
from ratdyn.polynomials import UniPoly
from ratdyn.ratmaps import INF, RatMap, chebyshev, mobius, mobius_through, power_map


def rand_map(rng, deg, span=4):
    while True:
        num = UniPoly([Fraction(rng.randrange(-span, span + 1)) for _ in range(deg + 1)])
        den = UniPoly([Fraction(rng.randrange(-span, span + 1)) for _ in range(deg + 1)])
        try:
            f = RatMap(num, den)
        except PreconditionError:
            continue
        if f.degree == deg:
            return f


def test_canonical_scaling():
    f = RatMap(UniPoly.of(0, 0, 3))
    assert f.num == UniPoly.of(0, 0, 1)
    assert f.den == UniPoly.constant(Fraction(1, 3))
    g = RatMap(UniPoly.of(1, 0, 1), UniPoly.of(0, 2))
    assert g.den == UniPoly.of(0, 1)
    assert g.num == UniPoly([Fraction(1, 2), 0, Fraction(1, 2)])


def test_gcd_cancellation():
    f = RatMap(UniPoly.of(-1, 0, 1), UniPoly.of(1, 1))  # (z^2-1)/(z+1) = z-1
    assert f.degree == 1
    assert f.num == UniPoly.of(-1, 1)


def test_compose_monomials():
    z2, z3 = power_map(2), power_map(3)
    assert z2.compose(z3) == power_map(6)
    inv = power_map(-1)
    assert inv.compose(inv) == RatMap.identity()


def test_compose_chebyshev_recurrence():
    t2, t3, t6 = chebyshev(2), chebyshev(3), chebyshev(6)
    assert t2.compose(t3) == t6
    assert t3.compose(t2) == t6
    # T6 = 2 T3^2 - 1
    assert t6 == RatMap.from_poly(2 * (UniPoly.of(0, -3, 0, 4) ** 2) - 1)


def test_compose_degree_multiplicative():
    rng = random.Random(3)
    for _ in range(25):
        f = rand_map(rng, rng.randrange(1, 4))
        g = rand_map(rng, rng.randrange(1, 4))
        assert f.compose(g).degree == f.degree * g.degree


def test_compose_associative():
    rng = random.Random(9)
    for _ in range(10):
        f = rand_map(rng, rng.randrange(1, 4))
        g = rand_map(rng, rng.randrange(1, 4))
        h = rand_map(rng, rng.randrange(1, 4))
        assert f.compose(g.compose(h)) == f.compose(g).compose(h)


def test_iterate():
    assert power_map(2).iterate(3) == power_map(8)
    shift = RatMap(UniPoly.of(1, 1))
    assert shift.iterate(4) == RatMap(UniPoly.of(4, 1))
    f = RatMap(UniPoly.of(-1, 0, 1))
    assert f.iterate(2) == RatMap(UniPoly.of(0, 0, -2, 0, 1))


def test_evaluation_including_infinity():
    f = RatMap(UniPoly.of(1, 0, 1), UniPoly.of(0, 1))  # z + 1/z
    assert f(1) == 2
    assert f(0) is INF
    assert f(INF) is INF
    assert power_map(-2)(INF) == 0


def test_mobius_inverse_and_through():
    mu = mobius(2, 1, 1, 3)
    assert mu.compose(mu.mobius_inverse()) == RatMap.identity()
    nu = mobius_through([0, 1, INF], [INF, Fraction(5), Fraction(2)])
    assert nu(0) is INF
    assert nu(1) == 5
    assert nu(INF) == 2


def test_conjugate():
    f = RatMap(UniPoly.of(1, 2, 1))  # (z+1)^2
    mu = RatMap(UniPoly.of(1, 1))  # z + 1
    assert f.conjugate(mu) == RatMap(UniPoly.of(1, 0, 1))


def test_pointwise_field_ops():
    f = power_map(2)
    g = RatMap.identity()
    assert (f + g)(3) == 12
    assert (f * g)(2) == 8
    assert (f / g)(5) == 5
    assert (f - 1)(2) == 3


def test_wronskian_detects_critical_points():
    f = RatMap(UniPoly.of(0, -3, 0, 4))  # T3
    w = f.wronskian()
    assert w(Fraction(1, 2)) == 0
    assert w(Fraction(-1, 2)) == 0
    assert w(0) != 0


def test_conjugate_by_inversion():
    f = RatMap(UniPoly.of(1, 2, 1))
    g = f.conjugate_by_inversion()
    for v in (Fraction(1), Fraction(2), Fraction(-3)):
        image = f(1 / v)
        assert g(v) == (1 / image if image not in (INF,) and image != 0 else g(v))
    assert g(0) == 0
