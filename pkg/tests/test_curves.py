import random
from fractions import Fraction
from math import gcd

import pytest

from ratdyn.bipolys import BiPoly
from ratdyn.curves import (
    BiCurve,
    Line,
    ParamCurve,
    periodic_curve_certificate,
    genus_separated,
    image_curve,
    implicitize,
    is_invariant,
    line_is_invariant,
    periodicity,
    preperiodicity,
    separated_curve,
    substitute_maps,
)
from ratdyn.errors import ReducibleCurve
from ratdyn.polynomials import UniPoly
from ratdyn.ratmaps import INF, RatMap, chebyshev, power_map

from oracles import brute_pairing_genus
from test_ratmaps import rand_map

X = BiPoly.var_x()
Y = BiPoly.var_y()
DIAG = BiCurve(X - Y)


def test_separated_curves():
    assert separated_curve(power_map(3), power_map(2)).poly == (X**3 - Y**2).canonical()
    assert separated_curve(power_map(2), power_map(2)).poly == (X**2 - Y**2).canonical()
    got = separated_curve(power_map(-1), RatMap.identity()).poly
    assert got == (X * Y - 1).canonical()


def test_implicitize_examples():
    assert implicitize((power_map(2), power_map(3))).poly == (X**3 - Y**2).canonical()
    assert implicitize((RatMap.identity(), RatMap.identity())).poly == (X - Y).canonical()
    assert implicitize((power_map(2), power_map(2))).poly == (X - Y).canonical()


def test_implicitize_graph_case():
    rng = random.Random(15)
    for _ in range(8):
        f = rand_map(rng, rng.randrange(1, 4))
        C = implicitize((RatMap.identity(), f))
        want = BiPoly.from_unipoly(f.num, "x") * 0
        graph = (
            BiPoly.from_unipoly(f.den, "x") * Y - BiPoly.from_unipoly(f.num, "x")
        ).canonical()
        assert C.poly == graph


def test_implicitize_faithful_bidegree():
    # coordinates with no common inner factor give bidegree (deg X2, deg X1)
    X1, X2 = power_map(2), power_map(3)
    C = implicitize((X1, X2))
    assert C.bidegree == (X2.degree, X1.degree)


def test_image_curve_examples():
    A = RatMap(UniPoly.of(-1, 0, 1))
    assert image_curve(DIAG, A, A) == DIAG
    graph = BiCurve(X - Y**2)  # x = A(y) for A = z^2
    assert image_curve(graph, power_map(2), power_map(2)) == graph
    hyp = BiCurve(X * Y - 1)
    assert image_curve(hyp, power_map(2), power_map(2)) == hyp
    anti = BiCurve(X + Y)
    assert image_curve(anti, power_map(2), power_map(2)) == DIAG


def test_invariance_and_lines():
    A = RatMap(UniPoly.of(-1, 0, 1))
    assert is_invariant(DIAG, A, A)
    assert not is_invariant(BiCurve(X + Y), power_map(2), power_map(2))
    assert line_is_invariant(Line("x", Fraction(0)), power_map(2), power_map(2))
    assert line_is_invariant(Line("x", INF), A, A)
    assert not line_is_invariant(Line("y", Fraction(2)), A, A)
    vertical = BiCurve(BiPoly({(1, 0): 1}))  # x = 0
    assert is_invariant(vertical, power_map(2), power_map(2))


def test_orbit_scans():
    anti = BiCurve(X + Y)
    assert periodicity(anti, power_map(2), power_map(2), 3) is None
    assert preperiodicity(anti, power_map(2), power_map(2), 3, 3) == (1, 1)
    # a sign-twisted pair: the diagonal is carried to the antidiagonal,
    # which is invariant, so the diagonal is strictly preperiodic
    Aneg = RatMap(UniPoly.of(0, 0, -1))
    Apos = power_map(2)
    assert periodicity(anti, Aneg, Apos, 4) == 1
    assert periodicity(DIAG, Aneg, Apos, 4) is None
    assert preperiodicity(DIAG, Aneg, Apos, 3, 3) == (1, 1)


def test_image_bidegree_bounds():
    rng = random.Random(4)
    for _ in range(5):
        A1 = rand_map(rng, 2)
        A2 = rand_map(rng, 2)
        d1, d2 = DIAG.bidegree
        img = image_curve(DIAG, A1, A2)
        e1, e2 = img.bidegree
        assert e1 <= d1 * A2.degree and e2 <= d2 * A1.degree


def test_genus_fixtures():
    assert genus_separated(power_map(3), power_map(2)) == 0
    assert genus_separated(RatMap(UniPoly.of(0, -1, 0, 1)), power_map(2)) == 1
    with pytest.raises(ReducibleCurve) as err:
        genus_separated(power_map(2), power_map(2))
    assert sorted(f.to_str() for f in err.value.factors) == ["x + y", "x - y"]


def test_genus_symmetry_and_graphs():
    pairs = [
        (power_map(3), power_map(2)),
        (RatMap(UniPoly.of(0, -1, 0, 1)), power_map(2)),
        (chebyshev(3), power_map(2)),
    ]
    for y1, y2 in pairs:
        assert genus_separated(y1, y2) == genus_separated(y2, y1)
    rng = random.Random(8)
    for _ in range(6):
        f = rand_map(rng, rng.randrange(1, 4))
        assert genus_separated(f, RatMap.identity()) == 0


def test_genus_coprime_powers():
    for m in range(1, 7):
        for n in range(1, 7):
            if gcd(m, n) != 1 or (m == 1 and n == 1):
                continue
            assert genus_separated(power_map(m), power_map(n)) == 0


def test_genus_matches_brute_pairing():
    pairs = [
        (power_map(3), power_map(2)),
        (RatMap(UniPoly.of(0, -1, 0, 1)), power_map(2)),
        (chebyshev(3), chebyshev(2)),
        (RatMap(UniPoly.of(1, 0, 1), UniPoly.of(0, 1)), power_map(2)),
    ]
    for y1, y2 in pairs:
        try:
            g = genus_separated(y1, y2)
        except ReducibleCurve:
            continue
        assert g == brute_pairing_genus(y1, y2)


def test_substitute_maps():
    F = X - Y
    A = RatMap(UniPoly.of(-1, 0, 1))
    pull = substitute_maps(F, A, A)
    assert pull == (X**2 - Y**2)


def test_periodic_certificate_full_identities():
    A = RatMap(UniPoly.of(1, 2, 1))
    # the graph x = A(y), parametrized by (A(t), t)
    rep = periodic_curve_certificate(A, RatMap.identity(), RatMap.identity(), A, A, A, 1)
    assert rep.ok
    assert rep.conjugator == A
    assert rep.curve is not None
    assert rep.curve.bidegree == (1, 2)
    assert is_invariant(rep.curve, A, A)


def test_periodic_certificate_reports_failures():
    A = RatMap(UniPoly.of(1, 2, 1))
    rep = periodic_curve_certificate(power_map(2), RatMap.identity(), power_map(3), A, A, A, 1)
    assert not rep.ok
    assert rep.failures()
