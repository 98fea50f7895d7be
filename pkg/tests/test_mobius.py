from ratdyn.mobius import (
    are_conjugate,
    conjugacy_transporters,
    mobius_commutant,
    mobius_left_stabilizer,
    mu_equivalent,
    mu_right_transports,
)
from ratdyn.polynomials import UniPoly
from ratdyn.ratmaps import RatMap, chebyshev, mobius, power_map

HALF_SYM = RatMap(UniPoly.of(1, 0, 0, 0, 1), UniPoly.monomial(2, 2))  # (z^4+1)/(2 z^2)


def strs(ms):
    return sorted(m.to_str() for m in ms)


def test_left_stabilizers():
    assert strs(mobius_left_stabilizer(power_map(2))) == ["-z", "z"]
    assert strs(mobius_left_stabilizer(power_map(3))) == ["z"]
    assert strs(mobius_left_stabilizer(RatMap(UniPoly.of(1, 1)))) == ["z"]
    got = mobius_left_stabilizer(HALF_SYM)
    for m in (mobius(1, 0, 0, 1), mobius(-1, 0, 0, 1), mobius(0, 1, 1, 0), mobius(0, -1, 1, 0)):
        assert m in got
    assert len(got) == 4


def test_groups_verify_closure():
    for B in (power_map(2), power_map(3), HALF_SYM):
        assert mobius_left_stabilizer(B).verify_group()
        assert mobius_commutant(B).verify_group()


def test_commutants():
    g2 = mobius_commutant(power_map(2))
    assert mobius(0, 1, 1, 0) in g2  # 1/z
    assert RatMap.identity() in g2
    assert strs(mobius_commutant(RatMap(UniPoly.of(-1, 0, 1)))) == ["z"]
    g3 = mobius_commutant(power_map(3))
    for m in (mobius(-1, 0, 0, 1), mobius(0, 1, 1, 0), mobius(0, -1, 1, 0)):
        assert m in g3


def test_commutant_of_lattes_map():
    from ratdyn.polynomials import UniPoly

    lat = RatMap(UniPoly.of(1, 0, 1) ** 2, UniPoly.monomial(1, 4) * UniPoly.of(-1, 0, 1))
    assert strs(mobius_commutant(lat)) == ["-z", "z"]


def test_transporters_and_conjugacy():
    a = RatMap(UniPoly.of(1, 2, 1))  # (z+1)^2
    b = RatMap(UniPoly.of(1, 0, 1))  # z^2 + 1
    trans = conjugacy_transporters(a, b)
    assert strs(trans) == ["z + 1"]
    assert are_conjugate(a, b)
    assert not are_conjugate(a, power_map(2))
    assert are_conjugate(chebyshev(3), chebyshev(3))


def test_transporter_completeness_against_commutant():
    # transporters from B to B form the full commutant
    for B in (power_map(2), chebyshev(3)):
        assert set(conjugacy_transporters(B, B)) == set(mobius_commutant(B))


def test_mu_right_transports():
    t3 = chebyshev(3)
    m = mu_right_transports(t3, t3.compose(mobius(-1, 0, 0, 1)))
    assert strs(m) == ["-z"]
    assert mu_equivalent(power_map(4), power_map(4).compose(mobius(0, 1, 1, 0)))
    assert not mu_equivalent(power_map(4), chebyshev(4))


def test_right_transport_completeness():
    f = power_map(4)
    transports = mu_right_transports(f, f)
    assert strs(transports) == ["-z", "z"]
