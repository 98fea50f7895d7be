import random
from fractions import Fraction

import pytest

from ratdyn.bipolys import BiPoly
from ratdyn.errors import PreconditionError
from ratdyn.factoring import (
    bi_is_irreducible,
    factor_bivariate,
    factor_univariate,
    is_irreducible,
    low_degree_factors,
    rational_roots,
)
from ratdyn.polynomials import UniPoly

X = BiPoly.var_x()
Y = BiPoly.var_y()


def reassemble(content, factors):
    out = UniPoly.constant(content)
    for f, m in factors:
        out = out * f**m
    return out


def test_quartic_cyclotomic_split():
    p = UniPoly.of(-1, 0, 0, 0, 1)
    content, facs = factor_univariate(p)
    assert content == 1
    assert [(f.to_str(), m) for f, m in facs] == [
        ("z - 1", 1),
        ("z + 1", 1),
        ("z^2 + 1", 1),
    ]


def test_cubic_with_square_factor():
    p = UniPoly.of(-1, -3, 0, 4)  # 4z^3 - 3z - 1 = (z-1)(2z+1)^2
    content, facs = factor_univariate(p)
    assert content == 4
    assert facs == [
        (UniPoly.of(-1, 1), 1),
        (UniPoly([Fraction(1, 2), 1]), 2),
    ]
    assert reassemble(content, facs) == p


def test_irreducible_quadratic():
    assert is_irreducible(UniPoly.of(1, 0, 1))
    assert not is_irreducible(UniPoly.of(-1, 0, 1))


def test_bigger_irreducible():
    # Eisenstein at 2
    p = UniPoly.of(2, 2, 0, 0, 0, 1)
    assert is_irreducible(p)


def test_factor_univariate_random_round_trip():
    rng = random.Random(23)
    for _ in range(25):
        parts = [
            UniPoly([rng.randrange(-5, 6) for _ in range(rng.randrange(2, 4))])
            for _ in range(rng.randrange(1, 4))
        ]
        p = UniPoly.constant(rng.randrange(1, 5))
        for q in parts:
            if q.degree < 1:
                continue
            p = p * q
        if p.degree < 1:
            continue
        content, facs = factor_univariate(p)
        assert reassemble(content, facs) == p
        for f, _ in facs:
            assert f.lc == 1
            assert is_irreducible(f)


def test_rational_roots():
    p = UniPoly.of(-2, -1, 1)  # (z-2)(z+1)
    assert rational_roots(p) == [Fraction(-1), Fraction(2)]
    assert rational_roots(UniPoly.of(1, 0, 1)) == []
    big = UniPoly.of(-6, 11, -6, 1)  # roots 1, 2, 3
    assert rational_roots(big) == [1, 2, 3]


def test_low_degree_factors_bounded_completeness():
    p = UniPoly.of(-1, 1) * UniPoly.of(3, 1) * UniPoly.of(1, 1, 1, 1, 1)
    got = low_degree_factors(p, 1)
    assert (UniPoly.of(-1, 1), 1) in got
    assert (UniPoly.of(3, 1), 1) in got
    assert all(f.degree <= 1 for f, _ in got)


def test_bivariate_split_and_irreducible():
    _, facs = factor_bivariate(X**2 - Y**2)
    assert sorted(f.to_str() for f, _ in facs) == ["x + y", "x - y"]
    assert bi_is_irreducible(X**3 - Y**2)
    assert bi_is_irreducible(X**2 + Y**2)


def test_bivariate_with_content_and_multiplicity():
    F = (Y**2 - 1) * (X - Y) ** 2 * (X + Y + 1)
    unit, facs = factor_bivariate(F)
    prod = BiPoly.constant(unit)
    for f, m in facs:
        prod = prod * f**m
    assert prod == F
    by_mult = sorted((m, f.to_str()) for f, m in facs)
    assert (2, "x - y") in by_mult
    assert (1, "x + y + 1") in by_mult


def test_bivariate_random_round_trip():
    rng = random.Random(7)
    for _ in range(12):
        parts = []
        for _ in range(rng.randrange(1, 4)):
            terms = {}
            for _ in range(rng.randrange(2, 5)):
                terms[(rng.randrange(0, 3), rng.randrange(0, 3))] = rng.randrange(-3, 4)
            g = BiPoly(terms)
            if not g.is_zero:
                parts.append(g)
        F = BiPoly.constant(1)
        for g in parts:
            F = F * g
        if F.is_zero or (F.deg_x <= 0 and F.deg_y <= 0):
            continue
        unit, facs = factor_bivariate(F)
        prod = BiPoly.constant(unit)
        for f, m in facs:
            prod = prod * f**m
        assert prod == F
        for f, _ in facs:
            assert bi_is_irreducible(f)


def test_zero_rejected():
    with pytest.raises(PreconditionError):
        factor_univariate(UniPoly.zero())
    with pytest.raises(PreconditionError):
        factor_bivariate(BiPoly.zero())
