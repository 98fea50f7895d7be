"""Degree-one symmetry solvers.

Two exact solvers cover every question asked of degree-one maps:

* mu_right_transports(f, g): all mu with f o mu = g.  A candidate mu is
  pinned by the images of three rational base points, and each image must
  be a rational point of a known fiber of f, so the search space is finite
  and every candidate is verified exactly.

* conjugacy_transporters(a, b): all mu with mu o a = b o mu.  Here
  mu(a^k(z0)) = b^k(mu(z0)), so mu is a one-parameter family in
  w = mu(z0); the commutation identity becomes a bivariate polynomial
  whose w-coefficient gcd pins down finitely many rational candidates.
  Conjugated reruns cover parameters that escape to infinity.
"""

from __future__ import annotations

from fractions import Fraction

from .bipolys import BiPoly
from .errors import PreconditionError, TheoremViolation
from .factoring import rational_roots
from .places import rational_points_in_fiber
from .polynomials import UniPoly
from .ratmaps import INF, RatMap, mobius, mobius_through


def _point_key(v):
    return "INF" if v is INF else v


def mu_right_transports(f: RatMap, g: RatMap):
    """All degree-one mu over Q with f o mu = g, in canonical order."""
    if f.degree != g.degree or f.degree < 1:
        return []
    base = []
    t = Fraction(0)
    while len(base) < 3:
        if all(t != b for b in base):
            base.append(t)
        t += 1
    fibers = [rational_points_in_fiber(f, g(z)) for z in base]
    out = []
    seen = set()
    for w0 in fibers[0]:
        for w1 in fibers[1]:
            if _point_key(w1) == _point_key(w0):
                continue
            for w2 in fibers[2]:
                if _point_key(w2) in (_point_key(w0), _point_key(w1)):
                    continue
                try:
                    mu = mobius_through(base, [w0, w1, w2])
                except PreconditionError:
                    continue
                if mu in seen:
                    continue
                seen.add(mu)
                if f.compose(mu) == g:
                    out.append(mu)
    return sorted(set(out), key=lambda m: m.sort_key())


def mu_equivalent(f: RatMap, g: RatMap) -> bool:
    """Whether g = f o mu for some degree-one mu."""
    return bool(mu_right_transports(f, g))


# ----------------------------------------------------------------------
# conjugacy transporters


def _inv_c(c):
    """z -> 1/(z - c)."""
    return mobius(0, 1, 1, -c)


def _orbit_base(a: RatMap):
    """A rational z0 with z0, a(z0), a(a(z0)) pairwise distinct and finite."""
    t = Fraction(0)
    for _ in range(200):
        z0 = t
        t += 1
        v1 = a(z0)
        if v1 is INF:
            continue
        v2 = a(v1)
        if v2 is INF:
            continue
        if len({z0, v1, v2}) == 3:
            return z0, v1, v2
    raise PreconditionError("no usable base orbit found")


def _bi_of_uni_in_z(p: UniPoly) -> BiPoly:
    return BiPoly.from_unipoly(p, "x")


def _bi_of_uni_in_w(p: UniPoly) -> BiPoly:
    return BiPoly.from_unipoly(p, "y")


def _compose_pair_bi(f: RatMap, num: BiPoly, den: BiPoly):
    """Numerator/denominator of f applied to the ratio num/den (BiPoly pair)."""
    m = f.degree
    pn = [BiPoly.constant(1)]
    pd = [BiPoly.constant(1)]
    for _ in range(m):
        pn.append(pn[-1] * num)
        pd.append(pd[-1] * den)
    rn = BiPoly.zero()
    rd = BiPoly.zero()
    for i in range(m + 1):
        cross = pn[i] * pd[m - i]
        ci = f.num.coeff(i)
        di = f.den.coeff(i)
        if ci:
            rn = rn + cross * ci
        if di:
            rd = rd + cross * di
    return rn, rd


def _transporter_candidates(a: RatMap, b: RatMap):
    """Rational candidates w for mu(z0) solving mu o a = b o mu."""
    z0, z1, z2 = _orbit_base(a)
    w_poly = UniPoly.x()
    b1 = b
    b2 = b.compose(b)
    # q0 = w, q1 = b(w), q2 = b^2(w) as (numerator, denominator) in w
    q0n, q0d = w_poly, UniPoly.one()
    q1n, q1d = b1.num, b1.den
    q2n, q2d = b2.num, b2.den
    # E1 = q1 - q2 over common den q1d*q2d; E2 = q1 - q0 over q1d
    E1 = q1n * q2d - q2n * q1d
    E2 = q1n - w_poly * q1d
    # cross-ratio through (z0, z1, z2): Cn = (z - z0)(z1 - z2), Cd = (z - z2)(z1 - z0)
    Cn = UniPoly((-z0, 1)) * (z1 - z2)
    Cd = UniPoly((-z2, 1)) * (z1 - z0)
    # mu_w(z) = (w*E1*Cd(z) - Cn(z)*q2n*E2) / (E1*Cd(z) - Cn(z)*q2d*E2)
    wE1 = _bi_of_uni_in_w(w_poly * E1)
    E1w = _bi_of_uni_in_w(E1)
    q2nE2 = _bi_of_uni_in_w(q2n * E2)
    q2dE2 = _bi_of_uni_in_w(q2d * E2)
    Cn_b = _bi_of_uni_in_z(Cn)
    Cd_b = _bi_of_uni_in_z(Cd)
    Mn = wE1 * Cd_b - Cn_b * q2nE2
    Md = E1w * Cd_b - Cn_b * q2dE2
    # left side: mu_w(a(z)); (a(z) - c) has numerator a.num - c*a.den and
    # the denominator of a cancels in the ratio
    cna = _bi_of_uni_in_z((a.num - a.den * z0) * (z1 - z2))
    cda = _bi_of_uni_in_z((a.num - a.den * z2) * (z1 - z0))
    Ln = wE1 * cda - cna * q2nE2
    Ld = E1w * cda - cna * q2dE2
    # right side: b(mu_w(z))
    Rn, Rd = _compose_pair_bi(b, Mn, Md)
    E = Ln * Rd - Ld * Rn
    if E.is_zero:
        raise TheoremViolation("transporter identity degenerated")
    g = UniPoly.zero()
    for coeff in E.coeffs_in_x():
        if not coeff.is_zero:
            g = coeff if g.is_zero else g.gcd(coeff)
            if g.degree == 0:
                break
    cands = []
    if g.degree >= 1:
        cands.extend(rational_roots(g))
    return z0, z1, z2, cands


_marked_cache: dict = {}


def _marked_points(f: RatMap):
    """Rational points pinned by the dynamics, with conjugation-invariant
    labels: critical points, two steps of their images, fixed points, and
    one level of rational preimages of all of those."""
    hit = _marked_cache.get(f)
    if hit is not None:
        return hit
    from .places import (
        PLACE_INF,
        Place,
        local_degree,
        rational_fixed_points,
        rational_points_in_fiber,
    )
    from .factoring import low_degree_factors

    pts = set()
    w = f.wronskian()
    if w.degree >= 1:
        for g, _ in low_degree_factors(w, 1):
            pts.add(-g.coeff(0))
    if local_degree(f, PLACE_INF) >= 2:
        pts.add(INF)
    for p in list(pts):
        v = f(p)
        pts.add(v)
        pts.add(f(v))
    for p in rational_fixed_points(f):
        pts.add(p)
    for p in sorted(pts, key=lambda v: (1, Fraction(0)) if v is INF else (0, v)):
        if len(pts) > 40:
            break
        for q in rational_points_in_fiber(f, p):
            pts.add(q)

    def ldeg(v):
        place = PLACE_INF if v is INF else Place.of_rational(v)
        return local_degree(f, place)

    labels = {}
    for p in pts:
        v1 = f(p)
        v2 = f(v1)
        labels[_point_key(p)] = (
            p,
            (ldeg(p), ldeg(v1), ldeg(v2), _point_key(v1) == _point_key(p)),
        )
    _marked_cache[f] = labels
    return labels


_transporter_cache: dict = {}


def conjugacy_transporters(a: RatMap, b: RatMap):
    """All degree-one mu over Q with mu o a = b o mu, for deg a = deg b >= 2."""
    if a.degree != b.degree:
        return []
    if a.degree < 2:
        raise PreconditionError("transporters need degree at least two")
    hit = _transporter_cache.get((a, b))
    if hit is not None:
        return hit
    result = _transporters_uncached(a, b)
    _transporter_cache[(a, b)] = result
    return result


def _transporters_uncached(a: RatMap, b: RatMap):
    ma = _marked_points(a)
    mb = _marked_points(b)
    la = sorted(lab for _, lab in ma.values())
    lb = sorted(lab for _, lab in mb.values())
    if la != lb:
        return []
    if len(ma) >= 3:
        return _transporters_by_marks(a, b, ma, mb)
    return _transporters_symbolic(a, b)


def _transporters_by_marks(a, b, ma, mb):
    pool_a = sorted(ma.values(), key=lambda t: (1, 0) if t[0] is INF else (0, t[0]))
    base = [pool_a[i][0] for i in range(3)]
    base_labels = [pool_a[i][1] for i in range(3)]
    choices = [
        [pt for pt, lab in mb.values() if lab == want] for want in base_labels
    ]
    found = {}
    for w0 in choices[0]:
        for w1 in choices[1]:
            if _point_key(w1) == _point_key(w0):
                continue
            for w2 in choices[2]:
                if _point_key(w2) in (_point_key(w0), _point_key(w1)):
                    continue
                try:
                    mu = mobius_through(base, [w0, w1, w2])
                except PreconditionError:
                    continue
                if mu in found:
                    continue
                if mu.compose(a) == b.compose(mu):
                    found[mu] = True
    return sorted(found, key=lambda m: m.sort_key())


def _transporters_symbolic(a: RatMap, b: RatMap):
    variants = [None, Fraction(0), Fraction(1), Fraction(2)]
    found = {}
    for c in variants:
        if c is None:
            bb = b
            back = None
        else:
            ic = _inv_c(c)
            bb = ic.compose(b).compose(ic.mobius_inverse())
            back = ic.mobius_inverse()
        z0, z1, z2, cands = _transporter_candidates(a, bb)
        for w in cands:
            t1 = bb(w)
            t2 = bb(t1) if t1 is not INF else bb.value_at_infinity()
            targets = [w, t1, t2]
            keys = {_point_key(v) for v in targets}
            if len(keys) != 3:
                continue
            try:
                nu = mobius_through([z0, z1, z2], targets)
            except PreconditionError:
                continue
            mu = back.compose(nu) if back is not None else nu
            if mu.compose(a) == b.compose(mu):
                found[mu] = True
    return sorted(found, key=lambda m: m.sort_key())


def are_conjugate(a: RatMap, b: RatMap) -> bool:
    if a.degree != b.degree:
        return False
    if a == b:
        return True
    return bool(conjugacy_transporters(a, b))


# ----------------------------------------------------------------------
# symmetry groups


class MobiusGroup:
    """A finite set of degree-one maps closed under composition and inverse."""

    def __init__(self, elements):
        elems = set(elements)
        if not elems:
            raise PreconditionError("a group needs at least the identity")
        self.elements = tuple(sorted(elems, key=lambda m: m.sort_key()))

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, mu):
        return mu in set(self.elements)

    def verify_group(self) -> bool:
        elems = set(self.elements)
        if RatMap.identity() not in elems:
            return False
        for m in elems:
            if m.mobius_inverse() not in elems:
                return False
            for n in elems:
                if m.compose(n) not in elems:
                    return False
        return True

    def __repr__(self):
        inner = ", ".join(m.to_str() for m in self.elements)
        return f"MobiusGroup({inner})"


def mobius_left_stabilizer(B: RatMap) -> MobiusGroup:
    """All mu with B o mu = B."""
    if B.degree < 1:
        raise PreconditionError("stabilizers need a nonconstant map")
    return MobiusGroup(mu_right_transports(B, B))


def mobius_commutant(B: RatMap) -> MobiusGroup:
    """All mu with mu o B = B o mu."""
    if B.degree < 2:
        raise PreconditionError("the commutant needs degree at least two")
    return MobiusGroup(conjugacy_transporters(B, B))
