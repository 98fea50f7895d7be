"""Closed points of the rational projective line and local map data.

A place is either the point at infinity or a monic irreducible polynomial
over Q, standing for the Galois orbit of its roots.  Local degrees,
fibers, critical points and values, and forward images of places are all
computed here; every multiplicity question reduces to gcd chains, either
over Q or over Q[c]/m(c).
"""

from __future__ import annotations

from .errors import PreconditionError, TheoremViolation
from .factoring import factor_univariate, rational_roots
from .numberfields import (
    NumberField,
    kp_degree,
    kp_from_unipoly,
    kp_multiplicity_profile,
    kp_trim,
)
from .polynomials import UniPoly, qq
from .ratmaps import INF, RatMap


class Place:
    """INF or the Galois orbit cut out by a monic irreducible polynomial."""

    __slots__ = ("minpoly",)

    def __init__(self, minpoly=None):
        if minpoly is not None:
            if not isinstance(minpoly, UniPoly):
                minpoly = UniPoly((-qq(minpoly), 1))
            if minpoly.degree < 1:
                raise PreconditionError("a finite place needs positive degree")
            minpoly = minpoly.monic()
        self.minpoly = minpoly

    @classmethod
    def infinity(cls) -> "Place":
        return cls(None)

    @classmethod
    def of_rational(cls, v) -> "Place":
        if v is INF:
            return cls.infinity()
        return cls(UniPoly((-qq(v), 1)))

    @property
    def is_infinity(self) -> bool:
        return self.minpoly is None

    @property
    def degree(self) -> int:
        return 1 if self.is_infinity else self.minpoly.degree

    def rational_value(self):
        """The point itself when the place has degree one."""
        if self.is_infinity:
            return INF
        if self.minpoly.degree != 1:
            return None
        return -self.minpoly.coeff(0)

    def __eq__(self, other):
        if not isinstance(other, Place):
            return NotImplemented
        return self.minpoly == other.minpoly

    def __hash__(self):
        return hash(("Place", None if self.is_infinity else self.minpoly.c))

    def sort_key(self):
        if self.is_infinity:
            return (1, 0, ())
        return (0, self.minpoly.degree, self.minpoly.c)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __repr__(self):
        if self.is_infinity:
            return "Place(INF)"
        v = self.rational_value()
        if v is not None:
            return f"Place({v})"
        return f"Place({self.minpoly.to_str()})"


PLACE_INF = Place.infinity()


def places_of_poly(p: UniPoly):
    """Places supporting the roots of p, with multiplicities, sorted."""
    if p.is_zero:
        raise PreconditionError("the zero polynomial has no root places")
    _, facs = factor_univariate(p)
    return sorted(((Place(f), m) for f, m in facs), key=lambda t: t[0].sort_key())


# ----------------------------------------------------------------------
# local degrees


_local_degree_cache: dict = {}


def local_degree(f: RatMap, p: Place) -> int:
    """Local degree of f at (each point of) the place p."""
    if f.degree < 1:
        raise PreconditionError("local degree needs a nonconstant map")
    key = (f, p)
    hit = _local_degree_cache.get(key)
    if hit is None:
        if p.is_infinity:
            hit = _local_degree_finite(f.inverted_source(), Place(UniPoly.x()))
        else:
            hit = _local_degree_finite(f, p)
        _local_degree_cache[key] = hit
    return hit


def local_degree_profile(f: RatMap, p: Place):
    """(multiplicity, number of geometric points): the local degree is
    constant across the Galois orbit, and the orbit size is the place
    degree."""
    return local_degree(f, p), p.degree


def _local_degree_finite(f: RatMap, p: Place) -> int:
    m = p.minpoly
    w = f.wronskian()
    if w.is_zero:
        raise TheoremViolation("vanishing derivative for a nonconstant map")
    e = 1
    cur = w
    while True:
        q, r = divmod(cur, m)
        if not r.is_zero:
            return e
        e += 1
        cur = q


_fiber_cache: dict = {}


def fiber_partition(f: RatMap, q: Place):
    """Multiplicity profile of the fiber of f over one geometric point of q:
    sorted tuple of (multiplicity, number of geometric points)."""
    if f.degree < 1:
        raise PreconditionError("fibers need a nonconstant map")
    hit = _fiber_cache.get((f, q))
    if hit is not None:
        return hit
    d = f.degree
    counts: dict[int, int] = {}
    if q.is_infinity or q.degree == 1:
        v = INF if q.is_infinity else q.rational_value()
        h = f.fiber_poly(v)
        inf_mult = d - h.degree
        for g, mult in factor_univariate(h)[1]:
            counts[mult] = counts.get(mult, 0) + g.degree
        if inf_mult:
            counts[inf_mult] = counts.get(inf_mult, 0) + 1
    else:
        field = NumberField(q.minpoly)
        gamma = field.gen()
        pk = kp_from_unipoly(field, f.num)
        qk = kp_from_unipoly(field, f.den)
        h = kp_trim(field, [field.sub(pk[i] if i < len(pk) else field.el(0),
                                      field.mul(gamma, qk[i] if i < len(qk) else field.el(0)))
                            for i in range(max(len(pk), len(qk)))])
        if kp_degree(h) != d:
            raise TheoremViolation("unexpected degree drop over a higher place")
        for mult, deg in kp_multiplicity_profile(field, h):
            counts[mult] = counts.get(mult, 0) + deg
    out = tuple(sorted(counts.items()))
    _fiber_cache[(f, q)] = out
    return out


_image_cache: dict = {}


def image_place(f: RatMap, p: Place) -> Place:
    """The place of f(alpha) for alpha running over the points of p."""
    if f.degree < 1:
        raise PreconditionError("images need a nonconstant map")
    hit = _image_cache.get((f, p))
    if hit is not None:
        return hit
    out = _image_place_uncached(f, p)
    _image_cache[(f, p)] = out
    return out


def _image_place_uncached(f: RatMap, p: Place) -> Place:
    if p.is_infinity:
        v = f.value_at_infinity()
        return Place.of_rational(v)
    m = p.minpoly
    if m.degree == 1:
        return Place.of_rational(f(p.rational_value()))
    if m.divides(f.den):
        return PLACE_INF
    # resultant in z of m(z) and num(z) - w*den(z); its roots are f(points of p)
    from .bipolys import BiPoly, resultant_x

    m_bi = BiPoly.from_unipoly(m, "x")
    pencil = BiPoly.from_unipoly(f.num, "x") - BiPoly.var_y() * BiPoly.from_unipoly(f.den, "x")
    r = resultant_x(m_bi, pencil)
    if r.is_zero:
        raise TheoremViolation("degenerate image pencil")
    _, facs = factor_univariate(r)
    places = {Place(g) for g, _ in facs}
    if len(places) != 1:
        raise TheoremViolation("image of a place split into several orbits")
    return places.pop()


_preimage_cache: dict = {}


def preimage_places(f: RatMap, q: Place):
    """All places mapping onto q, sorted."""
    if f.degree < 1:
        raise PreconditionError("preimages need a nonconstant map")
    hit = _preimage_cache.get((f, q))
    if hit is not None:
        return hit
    out = set()
    if q.is_infinity:
        if f.den.degree >= 1:
            for g, _ in factor_univariate(f.den)[1]:
                out.add(Place(g))
        if f.num.degree > f.den.degree:
            out.add(PLACE_INF)
    else:
        m = q.minpoly
        dm = m.degree
        num, den = f.num, f.den
        acc = UniPoly.zero()
        for i, c in enumerate(m.c):
            if c:
                acc = acc + (num**i) * (den ** (dm - i)) * c
        if acc.is_zero:
            raise TheoremViolation("degenerate preimage polynomial")
        if acc.degree >= 1:
            for g, _ in factor_univariate(acc)[1]:
                out.add(Place(g))
        if image_place(f, PLACE_INF) == q:
            out.add(PLACE_INF)
    result = sorted(out, key=lambda p: p.sort_key())
    _preimage_cache[(f, q)] = result
    return result


def critical_places(f: RatMap):
    """Places of critical points (local degree >= 2), sorted."""
    if f.degree < 2:
        return []
    out = set()
    w = f.wronskian()
    if w.degree >= 1:
        for g, _ in factor_univariate(w)[1]:
            out.add(Place(g))
    if local_degree(f, PLACE_INF) >= 2:
        out.add(PLACE_INF)
    return sorted(out, key=lambda p: p.sort_key())


_critical_values_cache: dict = {}


def critical_values(f: RatMap):
    """Branch-point places of f, sorted; at most 2 deg f - 2 geometric points."""
    if f.degree < 2:
        raise PreconditionError("critical values need degree at least two")
    hit = _critical_values_cache.get(f)
    if hit is None:
        hit = sorted({image_place(f, p) for p in critical_places(f)}, key=lambda p: p.sort_key())
        _critical_values_cache[f] = hit
    return hit


def rh_defect(f: RatMap) -> int:
    """Total ramification: sum of (e - 1) over geometric critical points;
    equals 2 deg f - 2 for every nonconstant map."""
    total = 0
    for q in critical_values(f):
        for mult, cnt in fiber_partition(f, q):
            total += (mult - 1) * cnt * q.degree
    return total


def rational_fixed_points(f: RatMap):
    """All rational fixed points of f, INF included when fixed."""
    out = []
    fix = f.num - f.den * UniPoly.x()
    if not fix.is_zero:
        out.extend(rational_roots(fix))
    else:
        raise PreconditionError("the identity map fixes everything")
    if f.value_at_infinity() is INF:
        out.append(INF)
    return out


def rational_points_in_fiber(f: RatMap, v):
    """Rational solutions of f(z) = v, INF included when it maps to v."""
    h = f.fiber_poly(v)
    pts = list(rational_roots(h)) if h.degree >= 1 else []
    if f.value_at_infinity() == v or (v is INF and f.value_at_infinity() is INF):
        pts.append(INF)
    return pts
