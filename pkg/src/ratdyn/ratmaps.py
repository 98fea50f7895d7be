"""Rational self-maps of the sphere as coprime numerator/denominator pairs.

Canonical scaling: the denominator is monic when nonconstant; when the
denominator is constant the numerator is made monic instead (so the
polynomial 3z^2 is stored as z^2 over 1/3).  Equality of maps is equality
of canonical forms.  The point at infinity is handled by explicit case
analysis throughout, never by projective coordinates.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import PreconditionError
from .polynomials import UniPoly, qq


class _Infinity:
    """The point at infinity on the rational projective line."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __eq__(self, other):
        return isinstance(other, _Infinity)

    def __hash__(self):
        return hash("ratdyn-INF")


INF = _Infinity()


class RatMap:
    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, UniPoly):
            num = UniPoly.constant(qq(num))
        if den is None:
            den = UniPoly.one()
        elif not isinstance(den, UniPoly):
            den = UniPoly.constant(qq(den))
        if den.is_zero:
            raise PreconditionError("denominator is the zero polynomial")
        g = num.gcd(den)
        if g.degree >= 1:
            num, den = num // g, den // g
        if den.degree >= 1:
            s = 1 / den.lc
        elif not num.is_zero:
            s = 1 / num.lc
        else:
            s = 1 / den.lc
        self.num = num * s
        self.den = den * s

    # ------------------------------------------------------------------

    @classmethod
    def identity(cls) -> "RatMap":
        return cls(UniPoly.x())

    @classmethod
    def from_poly(cls, p: UniPoly) -> "RatMap":
        return cls(p, UniPoly.one())

    @classmethod
    def constant(cls, v) -> "RatMap":
        return cls(UniPoly.constant(v), UniPoly.one())

    @property
    def degree(self) -> int:
        return max(self.num.degree, self.den.degree)

    @property
    def is_constant(self) -> bool:
        return self.degree <= 0

    @property
    def is_polynomial(self) -> bool:
        return self.den.is_constant

    @property
    def is_mobius(self) -> bool:
        return self.degree == 1

    def __eq__(self, other):
        if not isinstance(other, RatMap):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash(("RatMap", self.num.c, self.den.c))

    def __repr__(self):
        return f"RatMap({self.to_str()})"

    def to_str(self, var: str = "z") -> str:
        pn, pd, s = self.scale_to_integers()
        num = pn * s.numerator
        den = pd * s.denominator
        if den == UniPoly.one():
            return num.to_str(var)
        return f"({num.to_str(var)}) / ({den.to_str(var)})"

    def sort_key(self):
        return (self.degree, self.num.c, self.den.c)

    # ------------------------------------------------------------------
    # pointwise evaluation on the sphere

    def value_at_infinity(self):
        dn, dd = self.num.degree, self.den.degree
        if dn > dd:
            return INF
        if dn < dd:
            return Fraction(0)
        return self.num.lc / self.den.lc

    def __call__(self, x):
        if x is INF:
            return self.value_at_infinity()
        x = qq(x)
        d = self.den(x)
        if d == 0:
            return INF
        return self.num(x) / d

    # ------------------------------------------------------------------
    # field arithmetic on map values (pointwise operations)

    @staticmethod
    def _co(other):
        if isinstance(other, RatMap):
            return other
        if isinstance(other, UniPoly):
            return RatMap.from_poly(other)
        if isinstance(other, (int, Fraction)):
            return RatMap.constant(other)
        return None

    def __add__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return RatMap(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatMap(-self.num, self.den)

    def __sub__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return RatMap(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        if o.num.is_zero:
            raise ZeroDivisionError("division by the zero map")
        return RatMap(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return o / self

    # ------------------------------------------------------------------
    # composition

    def compose(self, inner: "RatMap") -> "RatMap":
        """Return self after inner: z -> self(inner(z))."""
        inner = self._co(inner)
        m = self.degree
        if m < 0:
            raise PreconditionError("composition with the zero map")
        if inner.is_constant:
            v = inner(Fraction(0)) if inner.den(0) != 0 else inner.value_at_infinity()
            w = self(v)
            if w is INF:
                raise PreconditionError("composition degenerates to infinity")
            return RatMap.constant(w)
        r, s = inner.num, inner.den
        rp = [UniPoly.one()]
        sp = [UniPoly.one()]
        for _ in range(m):
            rp.append(rp[-1] * r)
            sp.append(sp[-1] * s)
        num = UniPoly.zero()
        den = UniPoly.zero()
        for i in range(m + 1):
            cross = rp[i] * sp[m - i]
            ni = self.num.coeff(i)
            di = self.den.coeff(i)
            if ni:
                num = num + cross * ni
            if di:
                den = den + cross * di
        return RatMap(num, den)

    def iterate(self, k: int) -> "RatMap":
        if k < 1:
            raise PreconditionError("iterate needs k >= 1")
        result = self
        for _ in range(k - 1):
            result = result.compose(self)
        return result

    def conjugate(self, mu: "RatMap") -> "RatMap":
        """mu o self o mu^{-1} for a degree-one map mu."""
        return mu.compose(self).compose(mu.mobius_inverse())

    def mobius_inverse(self) -> "RatMap":
        if self.degree != 1:
            raise PreconditionError("only degree-one maps are invertible")
        a = self.num.coeff(1)
        b = self.num.coeff(0)
        c = self.den.coeff(1)
        d = self.den.coeff(0)
        return RatMap(UniPoly((-b, d)), UniPoly((a, -c)))

    # ------------------------------------------------------------------
    # derived data

    def wronskian(self) -> UniPoly:
        """num' * den - num * den'; vanishes exactly at finite critical points."""
        return self.num.derivative() * self.den - self.num * self.den.derivative()

    def derivative(self) -> "RatMap":
        return RatMap(self.wronskian(), self.den * self.den)

    def inverted_source(self) -> "RatMap":
        """The map z -> self(1/z); moves behaviour at infinity to zero."""
        d = self.degree
        return RatMap(self.num.reversed_to(d), self.den.reversed_to(d))

    def conjugate_by_inversion(self) -> "RatMap":
        """(1/z) o self o (1/z); swaps the roles of zero and infinity."""
        inner = self.inverted_source()
        return RatMap(inner.den, inner.num)

    def fiber_poly(self, v) -> UniPoly:
        """Numerator of self - v (or the denominator for v = INF); its roots
        are the finite points of the fiber over v."""
        if v is INF:
            return self.den
        return self.num - self.den * qq(v)

    def scale_to_integers(self):
        """Common integer-coefficient model (n, d, s): self = (n/d)*s with
        n, d integer polynomials."""
        cn, pn = self.num.content_and_primitive()
        cd, pd = self.den.content_and_primitive()
        return pn, pd, cn / cd


def mobius(a, b, c, d) -> RatMap:
    """(a z + b) / (c z + d)."""
    m = RatMap(UniPoly((qq(b), qq(a))), UniPoly((qq(d), qq(c))))
    if m.degree != 1:
        raise PreconditionError("degenerate coefficients for a degree-one map")
    return m


def mobius_through(sources, targets) -> RatMap:
    """The unique degree-one map sending three distinct sources to three
    distinct targets; entries may be INF."""
    if len(sources) != 3 or len(targets) != 3:
        raise PreconditionError("need exactly three points on each side")
    t_src = _to_zero_one_inf(sources)
    t_dst = _to_zero_one_inf(targets)
    return t_dst.mobius_inverse().compose(t_src)


def _to_zero_one_inf(pts) -> RatMap:
    """Degree-one map sending (p0, p1, p2) to (0, 1, INF)."""
    p0, p1, p2 = (p if p is INF else qq(p) for p in pts)
    if len({_pkey(p0), _pkey(p1), _pkey(p2)}) != 3:
        raise PreconditionError("points must be pairwise distinct")
    if p0 is INF:
        # (p1 - p2) / (z - p2)
        return mobius(0, p1 - p2, 1, -p2)
    if p1 is INF:
        return mobius(1, -p0, 1, -p2)
    if p2 is INF:
        return mobius(Fraction(1, 1) / (p1 - p0), -p0 / (p1 - p0), 0, 1)
    return mobius(p1 - p2, -p0 * (p1 - p2), p1 - p0, -p2 * (p1 - p0))


def _pkey(p):
    return "INF" if p is INF else qq(p)


def chebyshev(n: int) -> RatMap:
    """The degree-n Chebyshev polynomial as a map (T_1 = z, T_2 = 2z^2 - 1)."""
    if n < 0:
        raise PreconditionError("Chebyshev index must be nonnegative")
    a, b = UniPoly.one(), UniPoly.x()
    if n == 0:
        return RatMap.from_poly(a)
    two_x = UniPoly((0, 2))
    for _ in range(n - 1):
        a, b = b, two_x * b - a
    return RatMap.from_poly(b)


def power_map(n: int) -> RatMap:
    """z^n for any nonzero integer n, negative meaning 1/z^|n|."""
    if n == 0:
        raise PreconditionError("z^0 is constant")
    if n > 0:
        return RatMap(UniPoly.monomial(n))
    return RatMap(UniPoly.one(), UniPoly.monomial(-n))
