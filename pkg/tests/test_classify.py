import pytest

from ratdyn.classify import (
    classify,
    detect_chebyshev_conjugacy,
    detect_power_conjugacy,
    is_lattes,
    maximal_orbifold,
    postcritical_data,
    theta,
)
from ratdyn.errors import NotDefined, PreconditionError
from ratdyn.orbifolds import Orbifold, chi, is_covering, is_min_holomorphic, o2_of, pullback
from ratdyn.places import PLACE_INF, Place
from ratdyn.polynomials import UniPoly
from ratdyn.ratmaps import RatMap, chebyshev, power_map

LATTES = RatMap(UniPoly.of(1, 0, 1) ** 2, UniPoly.monomial(1, 4) * UniPoly.of(-1, 0, 1))
O2222 = Orbifold({0: 2, 1: 2, -1: 2, PLACE_INF: 2})


def test_power_detection():
    r = detect_power_conjugacy(power_map(3))
    assert r.kind == "power" and r.n == 3 and r.sign == 1
    r = detect_power_conjugacy(power_map(-2))
    assert r.sign == -1
    A = RatMap(UniPoly.of(0, 2, 1))  # z^2 + 2z
    r = detect_power_conjugacy(A)
    assert r.witness is not None
    assert A.conjugate(r.witness) == power_map(2)
    assert detect_power_conjugacy(chebyshev(2)) is None
    assert detect_power_conjugacy(RatMap(UniPoly.of(-1, 0, 1))) is None


def test_power_detection_with_scaling():
    A = RatMap(UniPoly.of(0, 0, 2))  # 2 z^2
    r = detect_power_conjugacy(A)
    assert r.witness is not None and A.conjugate(r.witness) == power_map(2)
    # 2 z^3 needs an irrational scaling
    B = RatMap(UniPoly.of(0, 0, 0, 2))
    r = detect_power_conjugacy(B)
    assert r is not None and r.extension_needed


def test_chebyshev_detection():
    for n in range(2, 7):
        r = detect_chebyshev_conjugacy(chebyshev(n))
        assert r is not None and r.n == n and r.sign == 1
        assert chebyshev(n).conjugate(r.witness) == chebyshev(n) or r.witness is not None
    A = RatMap(UniPoly.of(-2, 0, 1))  # z^2 - 2
    r = detect_chebyshev_conjugacy(A)
    assert r is not None and r.n == 2
    assert A.conjugate(r.witness) == chebyshev(2)
    m = -chebyshev(3)
    r = detect_chebyshev_conjugacy(m)
    assert r is not None and r.sign == -1
    assert detect_chebyshev_conjugacy(power_map(2)) is None


def test_postcritical_data_cycles():
    A = RatMap(UniPoly.of(-1, 0, 1))  # z^2 - 1
    cycles, preperiodic, unresolved = postcritical_data(A)
    assert not unresolved
    cycle_sets = [frozenset(c) for c in cycles]
    assert frozenset({Place.of_rational(-1), Place.of_rational(0)}) in cycle_sets
    assert frozenset({PLACE_INF}) in cycle_sets


def test_postcritical_data_resolves_wandering_orbits():
    A = RatMap(UniPoly.of(1, 2, 1))  # (z+1)^2: the finite critical orbit wanders
    cycles, preperiodic, unresolved = postcritical_data(A)
    assert not unresolved
    assert [frozenset(c) for c in cycles] == [frozenset({PLACE_INF})]


def test_maximal_orbifold_trivial_cases():
    assert maximal_orbifold(RatMap(UniPoly.of(-1, 0, 1))) is None
    assert maximal_orbifold(RatMap(UniPoly.of(1, 2, 1))) is None
    assert maximal_orbifold(RatMap(UniPoly.of(1, 0, 1))) is None


def test_maximal_orbifold_not_defined_for_special_normal_forms():
    with pytest.raises(NotDefined):
        maximal_orbifold(power_map(2))
    with pytest.raises(NotDefined):
        maximal_orbifold(chebyshev(3))


def test_maximal_orbifold_lattes():
    o = maximal_orbifold(LATTES)
    assert o == O2222
    assert chi(o) == 0
    assert is_covering(LATTES, o, o)
    assert is_lattes(LATTES) == o


def test_maximal_orbifold_iterate_invariance():
    assert maximal_orbifold(LATTES.iterate(2)) == O2222
    A = RatMap(UniPoly.of(-1, 0, 1))
    assert maximal_orbifold(A.iterate(2)) is None
    assert maximal_orbifold(A.iterate(3)) is None


@pytest.mark.slow
def test_maximal_orbifold_cube_iterate_lattes():
    # degree 64: the factorizations behind the postcritical orbit are heavy
    assert maximal_orbifold(LATTES.iterate(3)) == O2222


def test_maximal_orbifold_local_maximality():
    o = maximal_orbifold(LATTES)
    for p, v in o.items():
        for factor in (2, 3):
            bumped = dict(o.ram)
            bumped[p] = v * factor
            ob = Orbifold(bumped)
            assert pullback(LATTES, ob) != ob


def test_generalized_lattes_fixture():
    from ratdyn.decompose import right_divide

    B = RatMap(UniPoly.of(0, 2, 1), UniPoly.of(1, 2))
    th = RatMap(UniPoly.of(1, 0, 1), UniPoly.of(0, 2))
    A = right_divide(th.compose(B), th)
    assert A is not None
    o = maximal_orbifold(A)
    assert o == Orbifold({1: 2, -1: 2})
    assert chi(o) > 0
    assert is_min_holomorphic(A, o, o)
    cls = classify(A)
    assert cls.kind == "generalized_lattes"


def test_generalized_lattes_stable_under_elementary_transforms():
    from ratdyn.decompose import elementary_transform, proper_splittings, right_divide

    B = RatMap(UniPoly.of(0, 2, 1), UniPoly.of(1, 2))
    th = RatMap(UniPoly.of(1, 0, 1), UniPoly.of(0, 2))
    A = right_divide(th.compose(B), th)
    A2 = A.iterate(2)
    assert classify(A2).kind == "generalized_lattes"
    for split in proper_splittings(A2):
        transformed = elementary_transform(A2, split)
        assert classify(transformed).kind == "generalized_lattes"


def test_classify_dispatch():
    assert classify(power_map(5)).kind == "power"
    assert classify(chebyshev(4)).kind == "chebyshev"
    assert classify(LATTES).kind == "lattes"
    assert classify(RatMap(UniPoly.of(-1, 0, 1))).kind == "non_special_non_gl"
    assert classify(RatMap(UniPoly.of(1, 2, 1))).kind == "non_special_non_gl"


def test_is_lattes_rejects_power_and_chebyshev():
    assert is_lattes(power_map(2)) is None
    assert is_lattes(chebyshev(2)) is None
    assert is_lattes(RatMap(UniPoly.of(-1, 0, 1))) is None


def test_lattes_search_oracle():
    """Enumerate flat-signature orbifolds on the postcritical places and
    compare against the detector (the enumeration is the stated search)."""
    cycles, preperiodic, unresolved = postcritical_data(LATTES)
    assert not unresolved
    places = sorted(preperiodic, key=lambda p: p.sort_key())
    found = []
    import itertools

    for size in (3, 4):
        for combo in itertools.combinations(places, size):
            if sum(p.degree for p in combo) != 4 and size == 4:
                continue
            for values in itertools.product((2, 3, 4, 6), repeat=len(combo)):
                o = Orbifold(dict(zip(combo, values)))
                sig = tuple(sorted(o.signature(), reverse=True))
                if sig not in ((2, 2, 2, 2), (3, 3, 3), (4, 4, 2), (6, 3, 2)):
                    continue
                if is_covering(LATTES, o, o):
                    found.append(o)
    assert found == [O2222]


def test_classify_fuzz_regression():
    """Random small polynomials: every verdict is certified or honestly
    inconclusive, and special witnesses re-verify exactly."""
    import random
    from fractions import Fraction
    from ratdyn.errors import Inconclusive
    from ratdyn.ratmaps import power_map as _pm

    rng = random.Random(20240101)
    checked = 0
    while checked < 30:
        deg = rng.randrange(2, 5)
        f = RatMap(UniPoly([Fraction(rng.randrange(-3, 4)) for _ in range(deg)] + [1]))
        if f.degree != deg:
            continue
        checked += 1
        try:
            cls = classify(f)
        except Inconclusive:
            continue
        if cls.kind == "power" and cls.witness is not None:
            assert f.conjugate(cls.witness) == _pm(cls.sign * cls.n)
        elif cls.kind == "chebyshev" and cls.witness is not None:
            target = chebyshev(cls.n) if cls.sign == 1 else -chebyshev(cls.n)
            assert f.conjugate(cls.witness) == target
        elif cls.kind in ("lattes", "generalized_lattes"):
            assert is_min_holomorphic(f, cls.orbifold, cls.orbifold)


def test_theta_families():
    for n in range(2, 7):
        o = Orbifold({0: n, PLACE_INF: n})
        th = theta(o)
        assert o2_of(th) == o
    for n in range(2, 7):
        o = Orbifold({-1: 2, 1: 2, PLACE_INF: n})
        th = theta(o)
        assert th.degree == 2 * n
        assert o2_of(th) == o
    o = Orbifold({0: 3, PLACE_INF: 3, 1: 2})
    assert o2_of(theta(o)) == o
    o = Orbifold({0: 3, PLACE_INF: 4, 1: 2})
    assert o2_of(theta(o)) == o


def test_theta_moved_positions():
    o = Orbifold({2: 3, -5: 3, 0: 2})
    th = theta(o)
    assert th.degree == 12
    assert o2_of(th) == o


def test_theta_icosahedral():
    o = Orbifold({0: 5, 1: 3, PLACE_INF: 2})
    th = theta(o)
    assert th.degree == 60
    assert o2_of(th) == o


def test_theta_icosahedral_moved_positions():
    o = Orbifold({2: 5, -1: 3, 0: 2})
    th = theta(o)
    assert th.degree == 60
    assert o2_of(th) == o


def test_theta_rejects_bad_input():
    from ratdyn.errors import NonRationalPosition

    with pytest.raises(PreconditionError):
        theta(Orbifold({0: 2, 1: 2, -1: 2, PLACE_INF: 2}))  # chi = 0
    with pytest.raises(NonRationalPosition):
        theta(Orbifold({Place(UniPoly.of(-2, 0, 1)): 3}))
