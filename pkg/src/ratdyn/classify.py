"""Classification of rational maps: power / Chebyshev conjugacy detection,
Lattes and generalized Lattes recognition, the maximal self-orbifold, and
Galois-covering constructors for the positive-characteristic signatures.

The maximal-orbifold search rests on three exact facts about a minimal
holomorphic self-map orbifold: its support is forward invariant and
finite, so it consists of preperiodic places of the critical-value
orbits; its periodic part carries a constant value coprime to the local
degrees along the cycle; and every supporting cycle passes through a
critical value (otherwise the backward orbit would be infinite).  Cycles
are therefore found by iterating critical values, values are propagated
backward, and every candidate is verified as a pullback fixed point.
Orbits that neither cycle nor certifiably escape within the caps make
the verdict Inconclusive rather than guessed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd as _igcd

from .errors import (
    Inconclusive,
    NonRationalPosition,
    NotDefined,
    PreconditionError,
    TheoremViolation,
)
from .orbifolds import Orbifold, chi, is_covering, o2_of, positive_chi_family, pullback
from .places import (
    Place,
    critical_values,
    fiber_partition,
    image_place,
    local_degree,
    preimage_places,
)
from .polynomials import UniPoly, qq
from .ratmaps import INF, RatMap, chebyshev, mobius, mobius_through, power_map

PLACE_CAP = 64
NU_CAP = 60


@dataclass(frozen=True)
class SpecialClass:
    kind: str  # power | chebyshev | lattes | generalized_lattes | non_special_non_gl
    n: int | None = None
    sign: int | None = None
    witness: RatMap | None = None
    orbifold: Orbifold | None = None
    extension_needed: bool = False

    def is_special(self) -> bool:
        return self.kind in ("power", "chebyshev", "lattes")


# ----------------------------------------------------------------------
# power and Chebyshev detection


def _int_kth_root(n: int, k: int) -> int:
    """Floor of the k-th root, exact integer Newton iteration."""
    if n < 2:
        return n
    x = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def _fraction_root(q: Fraction, k: int):
    """A rational x with x**k = q, or None."""
    if k <= 0:
        raise PreconditionError("root index must be positive")
    if q == 0:
        return Fraction(0)
    if q < 0 and k % 2 == 0:
        return None
    sign = -1 if q < 0 else 1
    num, den = abs(q.numerator), q.denominator
    a = _int_kth_root(num, k)
    b = _int_kth_root(den, k)
    if a**k == num and b**k == den:
        return sign * Fraction(a, b)
    return None


def _totally_ramified(A: RatMap, q: Place) -> bool:
    return fiber_partition(A, q) == ((A.degree, 1),)


def detect_power_conjugacy(A: RatMap):
    """SpecialClass('power', ...) when A is conjugate to z^(+-n); the witness
    mu satisfies mu o A o mu^{-1} = z^(+-n) when it exists over Q."""
    if A.degree < 2:
        raise PreconditionError("detection needs degree at least two")
    n = A.degree
    o2 = o2_of(A)
    items = o2.items()
    if sum(p.degree for p, _ in items) != 2 or any(v != n for _, v in items):
        return None
    if not all(_totally_ramified(A, p) for p, _ in items):
        return None
    support = [p for p, _ in items]
    if any(image_place(A, p) not in support for p in support):
        return None
    if len(support) == 1 and support[0].degree == 2:
        # singular pair is an irrational Galois orbit
        return SpecialClass("power", n=n, extension_needed=True)
    v1 = support[0].rational_value() if not support[0].is_infinity else INF
    v2 = support[1].rational_value() if not support[1].is_infinity else INF
    third = next(t for t in (Fraction(0), Fraction(1), Fraction(2)) if t not in (v1, v2))
    mu0 = mobius_through([v1, v2, third], [Fraction(0), INF, Fraction(1)])
    A0 = A.conjugate(mu0)
    for sign in (1, -1):
        # shape A0 = c * z^n (sign +) or A0 = c / z^n (sign -); then a scaling
        # lambda * z normalizes away c when the needed rational root exists
        if sign == 1:
            if not (A0.den.is_constant and A0.num == UniPoly.monomial(n)):
                continue
            c = 1 / A0.den.coeff(0)
            lam = _fraction_root(c, n - 1)
        else:
            if not (A0.den == UniPoly.monomial(n) and A0.num.is_constant and not A0.num.is_zero):
                continue
            c = A0.num.coeff(0)
            lam = _fraction_root(1 / c, n + 1)
        if lam is None:
            return SpecialClass("power", n=n, sign=sign, extension_needed=True)
        model = power_map(sign * n)
        for scale in (lam, -lam):
            mu = mobius(scale, 0, 0, 1).compose(mu0)
            if A.conjugate(mu) == model:
                return SpecialClass("power", n=n, sign=sign, witness=mu)
        raise TheoremViolation("power normalization failed to verify")
    return None


def detect_chebyshev_conjugacy(A: RatMap):
    """SpecialClass('chebyshev', ...) when A is conjugate to +-T_n."""
    if A.degree < 2:
        raise PreconditionError("detection needs degree at least two")
    n = A.degree
    o2 = o2_of(A)
    items = o2.items()
    # the point under the fully ramified fixed end
    anchors = [
        p
        for p, v in items
        if v == n and p.degree == 1 and _totally_ramified(A, p) and image_place(A, p) == p
    ]
    for anchor in anchors:
        others = [(p, v) for p, v in items if p != anchor]
        if n >= 3:
            if any(v != 2 for _, v in others):
                continue
            total = sum(p.degree for p, _ in others)
            if total != 2:
                continue
            if len(others) == 1 and others[0][0].degree == 2:
                return SpecialClass("chebyshev", n=n, extension_needed=True)
            pts = [p.rational_value() if not p.is_infinity else INF for p, _ in others]
            assignments = [(pts[0], pts[1]), (pts[1], pts[0])]
        else:
            # degree two: signature {2, 2}; the second singular point maps to
            # a regular point which must sit at the other Chebyshev end
            if len(others) != 1 or others[0][1] != 2 or others[0][0].degree != 1:
                continue
            v = others[0][0].rational_value() if not others[0][0].is_infinity else INF
            w_place = image_place(A, others[0][0])
            if w_place.degree != 1:
                continue
            w = w_place.rational_value() if not w_place.is_infinity else INF
            if w in (v, anchor.rational_value() if not anchor.is_infinity else INF):
                continue
            assignments = [(v, w)]
        a_pt = anchor.rational_value() if not anchor.is_infinity else INF
        conjugations = []
        for minus_one, plus_one in assignments:
            try:
                mu = mobius_through([minus_one, plus_one, a_pt], [Fraction(-1), Fraction(1), INF])
            except PreconditionError:
                continue
            conjugations.append((mu, A.conjugate(mu)))
        tn = chebyshev(n)
        for sign in (1, -1):
            target = tn if sign == 1 else -tn
            for mu, conj in conjugations:
                if conj == target:
                    return SpecialClass("chebyshev", n=n, sign=sign, witness=mu)
    return None


# ----------------------------------------------------------------------
# postcritical orbit structure


class _Basin:
    """Certified contraction ball around an attracting rational fixed point.

    Inside |x - c| <= r distances to c strictly shrink, so a point entering
    strictly within the landing gap (the least distance from c to any other
    preimage of c) can never land on c nor return: it is non-preperiodic.
    The inverted flag means the data lives in the 1/z chart (the fixed
    point is at infinity)."""

    __slots__ = ("mapped", "c", "r", "landing")

    def __init__(self, mapped, c, r, landing):
        self.mapped = mapped
        self.c = c
        self.r = r
        self.landing = landing


def _contraction_data(M: RatMap, c: Fraction):
    """(r, kappa) certifying |M(c+h) - c| <= kappa |h| for |h| <= r, or None."""
    if M.den(c) == 0:
        return None
    lam = M.derivative()(c)
    if lam is INF or abs(lam) >= 1:
        return None
    num_s = M.num.taylor_shift(c)
    den_s = M.den.taylor_shift(c)
    # P(h) = num(c+h) - (c + lam h) den(c+h) has order >= 2 at h = 0
    P = num_s - den_s * UniPoly((c,)) - (den_s * lam).shift_up(1)
    if not (P.coeff(0) == 0 and P.coeff(1) == 0):
        raise TheoremViolation("multiplier arithmetic is inconsistent")
    q0 = abs(den_s.coeff(0))
    r0 = Fraction(1, 2)
    for _ in range(64):
        tail = sum(abs(den_s.coeff(i)) * r0**i for i in range(1, den_s.degree + 1))
        if tail <= q0 / 2:
            break
        r0 /= 2
    else:
        return None
    qlow = q0 / 2
    cbound = sum(abs(P.coeff(i)) * r0 ** (i - 2) for i in range(2, P.degree + 1)) / qlow
    if cbound == 0:
        return r0, abs(lam)
    r = min(r0, (1 - abs(lam)) / (2 * cbound))
    kappa = abs(lam) + cbound * r
    if kappa >= 1:
        return None
    return r, kappa


def _min_root_distance_bound(g: UniPoly, c: Fraction) -> Fraction:
    """A positive rational lower bound for |root - c| over the roots of g,
    assuming g(c) is nonzero."""
    shifted = g.taylor_shift(c)
    c0 = abs(shifted.coeff(0))
    height = max(abs(shifted.coeff(i)) for i in range(1, shifted.degree + 1))
    return c0 / (c0 + height)


def _attracting_basins(A: RatMap):
    """Contraction certificates around attracting rational periodic points;
    preperiodicity for an iterate is preperiodicity for the map, so basins
    of low iterates certify just as well."""
    from .factoring import factor_univariate, rational_roots

    basins = []
    configs = []
    max_period = 3 if A.degree == 2 else (2 if A.degree <= 4 else 1)
    for k in range(1, max_period + 1):
        Ak = A if k == 1 else A.iterate(k)
        fix = Ak.num - Ak.den * UniPoly.x()
        if not fix.is_zero and fix.degree >= 1:
            for c in rational_roots(fix):
                configs.append((Ak, c, False))
        if Ak.value_at_infinity() is INF:
            configs.append((Ak.conjugate_by_inversion(), Fraction(0), True))
    for M, c, inverted in configs:
        data = _contraction_data(M, c)
        if data is None:
            continue
        r, _ = data
        # smallest distance from c to another preimage of c; orbits closer
        # than this can never land on c
        fiber = M.num - M.den * c
        landing = None
        if fiber.degree >= 1:
            for g, _mult in factor_univariate(fiber)[1]:
                if g == UniPoly((-c, 1)):
                    continue
                bound = _min_root_distance_bound(g, c)
                landing = bound if landing is None else min(landing, bound)
        basins.append(_Basin(M, (c, inverted), r, landing))
    return basins


def _quadratic_point_within(m: UniPoly, c: Fraction, rho: Fraction) -> bool:
    """Whether some root of the monic quadratic m lies strictly within rho
    of c (in the complex plane), decided exactly."""
    disc = m.coeff(1) ** 2 - 4 * m.coeff(0)
    if disc < 0:
        # conjugate pair: m(c) is the squared distance
        return m(c) < rho * rho
    lo, hi = m(c - rho), m(c + rho)
    if lo * hi < 0:
        return True
    vertex = -m.coeff(1) / 2
    return lo > 0 and hi > 0 and abs(vertex - c) < rho and m(vertex) <= 0


def _basin_resolves(basins, p: Place) -> bool:
    """True when some point of the place is certified non-preperiodic by an
    attracting basin (enters the contraction ball below the landing gap)."""
    for basin in basins:
        c, inverted = basin.c
        rho = basin.r if basin.landing is None else min(basin.r, basin.landing)
        if p.degree > 2:
            # the product of the distances from c to the conjugates is the
            # monic minimal polynomial evaluated there, so a small value
            # puts some conjugate strictly inside the ball and below the
            # landing gap, which certifies it non-preperiodic
            m = p.minpoly
            if inverted:
                if m.coeff(0) == 0:
                    continue
                m = m.reversed_to(m.degree) * (1 / m.coeff(0))
            val = m(c)
            if val != 0 and abs(val) < rho**m.degree:
                return True
            continue
        if p.degree == 1:
            v = INF if p.is_infinity else p.rational_value()
            if v is INF:
                continue
            x = None
            if inverted:
                if v != 0:
                    x = 1 / v
            else:
                x = v
            if x is None or x == c:
                continue
            if abs(x - c) < rho:
                return True
        else:
            m = p.minpoly
            if inverted:
                if m.coeff(0) == 0:
                    continue
                m = m.reversed_to(2) * (1 / m.coeff(0))
            if m(c) == 0:
                continue
            if _quadratic_point_within(m, c, rho):
                return True
    return False


HEIGHT_CAP = 10**150


def _place_height(p: Place) -> int:
    if p.is_infinity:
        return 1
    h = 1
    for c in p.minpoly.c:
        h = max(h, abs(c.numerator), c.denominator)
    return h


def postcritical_data(A: RatMap, place_cap: int = PLACE_CAP):
    """(cycles, preperiodic, unresolved): cycles of places reachable from
    critical values, the set of certified preperiodic postcritical places,
    and orbit heads that neither cycled nor certifiably escaped within the
    step and height caps."""
    if A.degree < 2:
        raise PreconditionError("postcritical data needs degree at least two")
    basins = _attracting_basins(A)
    cycles = []
    seen_cycles = set()
    preperiodic: set[Place] = set()
    dead: set[Place] = set()  # certified non-preperiodic
    unresolved = []
    for v in critical_values(A):
        orbit = [v]
        index = {v: 0}
        resolved = False
        for _ in range(place_cap):
            head = orbit[-1]
            if head in preperiodic:
                preperiodic.update(orbit)
                resolved = True
                break
            if head in dead or _basin_resolves(basins, head):
                dead.update(orbit)
                resolved = True
                break
            if _place_height(head) > HEIGHT_CAP:
                break
            w = image_place(A, head)
            if w in index:
                cyc = tuple(orbit[index[w]:])
                key = frozenset(cyc)
                if key not in seen_cycles:
                    seen_cycles.add(key)
                    cycles.append(cyc)
                preperiodic.update(orbit)
                resolved = True
                break
            index[w] = len(orbit)
            orbit.append(w)
        if not resolved:
            unresolved.append(v)
    return cycles, preperiodic, unresolved


def _propagate_tree(A: RatMap, cycle, m: int, preperiodic, place_cap: int):
    """Backward value propagation from a cycle carrying the constant m;
    None when no finite solution over the certified preperiodic set exists."""
    ram = {p: m for p in cycle}
    queue = list(cycle)
    while queue:
        w = queue.pop()
        vw = ram[w]
        for p in preimage_places(A, w):
            e = local_degree(A, p)
            forced = vw // _igcd(e, vw)
            if forced == 1:
                continue
            if p in ram:
                if ram[p] != forced:
                    return None
                continue
            if p not in preperiodic:
                return None
            if len(ram) >= place_cap:
                raise Inconclusive("orbifold support exceeded the place cap")
            ram[p] = forced
            queue.append(p)
    return Orbifold(ram)


_max_orbifold_cache: dict = {}


def maximal_orbifold(A: RatMap, nu_cap: int = NU_CAP, place_cap: int = PLACE_CAP):
    """The largest orbifold carried into itself by A minimally
    holomorphically, or None when only the trivial one works.

    Raises NotDefined for maps conjugate to powers or Chebyshev maps (over
    any field), and Inconclusive when a postcritical orbit stays unsettled
    within the caps."""
    key = (A, nu_cap, place_cap)
    hit = _max_orbifold_cache.get(key)
    if hit is not None:
        kind, payload = hit
        if kind == "ok":
            return payload
        raise (NotDefined if kind == "notdefined" else Inconclusive)(payload)
    try:
        result = _maximal_orbifold_uncached(A, nu_cap, place_cap)
    except NotDefined as exc:
        _max_orbifold_cache[key] = ("notdefined", str(exc))
        raise
    except Inconclusive as exc:
        _max_orbifold_cache[key] = ("inconclusive", str(exc))
        raise
    _max_orbifold_cache[key] = ("ok", result)
    return result


def _maximal_orbifold_uncached(A: RatMap, nu_cap: int, place_cap: int):
    if A.degree < 2:
        raise PreconditionError("the maximal orbifold needs degree at least two")
    if detect_power_conjugacy(A) is not None:
        raise NotDefined("maximal orbifold undefined for power-conjugate maps")
    if detect_chebyshev_conjugacy(A) is not None:
        raise NotDefined("maximal orbifold undefined for Chebyshev-conjugate maps")
    cycles, preperiodic, unresolved = postcritical_data(A, place_cap)
    if unresolved:
        raise Inconclusive("postcritical orbit unresolved within the cap")
    trees = []
    for cyc in cycles:
        degs = [local_degree(A, p) for p in cyc]
        for m in range(2, nu_cap + 1):
            if any(_igcd(m, d) != 1 for d in degs):
                continue
            tree = _propagate_tree(A, cyc, m, preperiodic, place_cap)
            if tree is None:
                continue
            if pullback(A, tree) == tree:
                trees.append(tree)
    if not trees:
        return None
    join = Orbifold.trivial()
    for t in trees:
        join = join.join(t)
    if pullback(A, join) != join:
        raise TheoremViolation("join of self-orbifolds is not a self-orbifold")
    if join.is_good():
        return join
    # the join has at most two geometric points here, so any good solution
    # is supported on a two-point (equal-value) subset of it; scan directly
    supp = join.support()
    pairs = [(p,) for p in supp if p.degree == 2]
    pairs += [
        (p, q)
        for i, p in enumerate(supp)
        for q in supp[i + 1 :]
        if p.degree + q.degree == 2
    ]
    best = None
    for pair in pairs:
        valid = []
        for m in range(2, nu_cap + 1):
            o = Orbifold({p: m for p in pair})
            if pullback(A, o) == o:
                valid.append(m)
        if not valid:
            continue
        big = 1
        for m in valid:
            big = big * m // _igcd(big, m)
        o = Orbifold({p: big for p in pair})
        if not (o.is_good() and pullback(A, o) == o):
            raise TheoremViolation("join of equal-support solutions failed")
        if best is not None:
            raise TheoremViolation("incomparable maximal orbifolds")
        best = o
    return best


def is_lattes(A: RatMap):
    """The unique orbifold through which A is a covering self-map, or None."""
    if A.degree < 2:
        raise PreconditionError("Lattes detection needs degree at least two")
    try:
        o0 = maximal_orbifold(A)
    except NotDefined:
        return None
    if o0 is not None and chi(o0) == 0 and is_covering(A, o0, o0):
        return o0
    return None


def classify(A: RatMap) -> SpecialClass:
    """Apply the detectors in order: power, Chebyshev, Lattes, then the
    maximal orbifold deciding generalized Lattes against plain maps."""
    if A.degree < 2:
        raise PreconditionError("classification needs degree at least two")
    pw = detect_power_conjugacy(A)
    if pw is not None:
        return pw
    ch = detect_chebyshev_conjugacy(A)
    if ch is not None:
        return ch
    o0 = maximal_orbifold(A)
    if o0 is None:
        return SpecialClass("non_special_non_gl")
    if chi(o0) == 0:
        if not is_covering(A, o0, o0):
            raise TheoremViolation("flat orbifold without the covering property")
        return SpecialClass("lattes", orbifold=o0)
    return SpecialClass("generalized_lattes", orbifold=o0)


# ----------------------------------------------------------------------
# Galois coverings for the positive-characteristic signatures


def _theta_dihedral(n: int) -> RatMap:
    num = UniPoly.monomial(2 * n) + UniPoly.one()
    den = UniPoly.monomial(n, 2)
    return RatMap(num, den)


_THETA_TETRA = RatMap(UniPoly.of(0, 8, 0, 0, 1) ** 3, 64 * (UniPoly.of(-1, 0, 0, 1) ** 3))
_THETA_OCTA = RatMap(
    UniPoly.of(1, 0, 0, 0, 14, 0, 0, 0, 1) ** 3,
    UniPoly.monomial(4, 108) * (UniPoly.of(-1, 0, 0, 0, 1) ** 4),
)


def _klein_forms():
    z = UniPoly.x()
    f = UniPoly.monomial(11) + 11 * UniPoly.monomial(6) - z
    h = -(UniPoly.monomial(20) + UniPoly.one()) + 228 * (
        UniPoly.monomial(15) - UniPoly.monomial(5)
    ) - 494 * UniPoly.monomial(10)
    t = (UniPoly.monomial(30) + UniPoly.one()) + 522 * (
        UniPoly.monomial(25) - UniPoly.monomial(5)
    ) - 10005 * (UniPoly.monomial(20) + UniPoly.monomial(10))
    return f, h, t


def _theta_icosa() -> RatMap:
    f, _, t = _klein_forms()
    return RatMap(1728 * f**5, t**2)


def theta(o: Orbifold) -> RatMap:
    """A Galois covering with branch orbifold exactly o, for the signatures
    of positive Euler characteristic at rational singular positions."""
    if o.is_trivial:
        raise PreconditionError("the trivial orbifold needs no covering")
    if chi(o) <= 0:
        raise PreconditionError("coverings stored only for positive characteristic")
    if not o.is_good():
        raise PreconditionError("the orbifold is not good")
    family = positive_chi_family(o.signature())
    if family is None:
        raise PreconditionError("signature outside the positive lists")
    for p in o.ram:
        if p.degree != 1:
            raise NonRationalPosition("singular places must be rational points")
    pts = {}
    for p, v in o.items():
        pts.setdefault(v, []).append(INF if p.is_infinity else p.rational_value())
    if family == "cyclic":
        n = o.signature()[0]
        (a, b) = sorted(pts[n], key=_pt_key)
        base = power_map(n)
        normalized = [Fraction(0), INF, Fraction(1)]
        third = _spare_point((a, b))
        mu = mobius_through(normalized, [a, b, third])
        return mu.compose(base)
    if family == "dihedral":
        n = o.signature()[0]
        base = _theta_dihedral(n)
        if n == 2:
            # all three values equal; any assignment works
            targets = sorted((pt for v in pts for pt in pts[v]), key=_pt_key)
        else:
            twos = sorted(pts[2], key=_pt_key)
            targets = [twos[0], twos[1], pts[n][0]]
        mu = mobius_through([Fraction(-1), Fraction(1), INF], targets)
        return mu.compose(base)
    if family == "tetrahedral":
        threes = sorted(pts[3], key=_pt_key)
        mu = mobius_through([Fraction(0), INF, Fraction(1)], [threes[0], threes[1], pts[2][0]])
        return mu.compose(_THETA_TETRA)
    if family == "octahedral":
        mu = mobius_through([Fraction(0), INF, Fraction(1)], [pts[3][0], pts[4][0], pts[2][0]])
        return mu.compose(_THETA_OCTA)
    mu = mobius_through([Fraction(0), Fraction(1), INF], [pts[5][0], pts[3][0], pts[2][0]])
    return mu.compose(_theta_icosa())


def _pt_key(v):
    return (1, Fraction(0)) if v is INF else (0, qq(v))


def _spare_point(used):
    t = Fraction(0)
    while t in used:
        t += 1
    return t
