"""Bivariate polynomials over the rationals.

Stored as a finitely supported map (x-exponent, y-exponent) -> Fraction.
The workhorse views are the coefficient lists "in x" (a list of UniPoly
in y, index = x-power) and symmetrically "in y"; resultants are computed
by evaluation and exact interpolation, gcds by a primitive remainder
sequence over Q[y].
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _igcd

from .errors import PreconditionError
from .polynomials import UniPoly, qq


class BiPoly:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for (i, j), v in dict(terms).items():
                v = qq(v)
                if v:
                    clean[(int(i), int(j))] = v
        self.terms = clean

    # ------------------------------------------------------------------

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def constant(cls, v):
        v = qq(v)
        return cls({(0, 0): v}) if v else cls()

    @classmethod
    def var_x(cls):
        return cls({(1, 0): 1})

    @classmethod
    def var_y(cls):
        return cls({(0, 1): 1})

    @classmethod
    def from_unipoly(cls, p: UniPoly, var: str) -> "BiPoly":
        if var == "x":
            return cls({(i, 0): v for i, v in enumerate(p.c)})
        if var == "y":
            return cls({(0, i): v for i, v in enumerate(p.c)})
        raise ValueError("var must be 'x' or 'y'")

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def deg_x(self) -> int:
        return max((i for i, _ in self.terms), default=-1)

    @property
    def deg_y(self) -> int:
        return max((j for _, j in self.terms), default=-1)

    def bidegree(self):
        return (self.deg_x, self.deg_y)

    def __eq__(self, other):
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(("BiPoly", tuple(sorted(self.terms.items()))))

    def __repr__(self):
        return f"BiPoly({self.to_str()})"

    def __bool__(self):
        return bool(self.terms)

    # ------------------------------------------------------------------
    # ring arithmetic

    @staticmethod
    def _co(other):
        if isinstance(other, BiPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return BiPoly.constant(other)
        return None

    def __add__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for k, v in o.terms.items():
            w = out.get(k, Fraction(0)) + v
            if w:
                out[k] = w
            else:
                out.pop(k, None)
        return BiPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __mul__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        out = {}
        for (i1, j1), v1 in self.terms.items():
            for (i2, j2), v2 in o.terms.items():
                k = (i1 + i2, j1 + j2)
                w = out.get(k, Fraction(0)) + v1 * v2
                if w:
                    out[k] = w
                else:
                    out.pop(k, None)
        return BiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = BiPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # ------------------------------------------------------------------
    # views

    def coeffs_in_x(self):
        """List of UniPoly in y; index = power of x."""
        dx = self.deg_x
        buckets = [dict() for _ in range(dx + 1)]
        for (i, j), v in self.terms.items():
            buckets[i][j] = v
        out = []
        for b in buckets:
            m = max(b, default=-1)
            out.append(UniPoly([b.get(k, 0) for k in range(m + 1)]))
        return out

    def coeffs_in_y(self):
        return self.swap().coeffs_in_x()

    @classmethod
    def from_coeffs_in_x(cls, coeffs) -> "BiPoly":
        terms = {}
        for i, p in enumerate(coeffs):
            for j, v in enumerate(p.c):
                if v:
                    terms[(i, j)] = v
        return cls(terms)

    def swap(self) -> "BiPoly":
        return BiPoly({(j, i): v for (i, j), v in self.terms.items()})

    def eval_x(self, a) -> UniPoly:
        """Substitute x = a; result is a UniPoly in y."""
        a = qq(a)
        out = {}
        for (i, j), v in self.terms.items():
            out[j] = out.get(j, Fraction(0)) + v * a**i
        m = max(out, default=-1)
        return UniPoly([out.get(k, 0) for k in range(m + 1)])

    def eval_y(self, a) -> UniPoly:
        """Substitute y = a; result is a UniPoly in x."""
        return self.swap().eval_x(a)

    def eval_point(self, a, b) -> Fraction:
        return self.eval_x(a)(b)

    def derivative_x(self) -> "BiPoly":
        return BiPoly({(i - 1, j): v * i for (i, j), v in self.terms.items() if i})

    def derivative_y(self) -> "BiPoly":
        return BiPoly({(i, j - 1): v * j for (i, j), v in self.terms.items() if j})

    def shift_y(self, a) -> "BiPoly":
        """Substitute y -> y + a."""
        return BiPoly.from_coeffs_in_x([p.taylor_shift(a) for p in self.coeffs_in_x()])

    # ------------------------------------------------------------------
    # content, primitive part, canonical form

    def content_x(self) -> UniPoly:
        """Monic gcd over Q[y] of the x-coefficients."""
        g = UniPoly.zero()
        for p in self.coeffs_in_x():
            if not p.is_zero:
                g = p if g.is_zero else g.gcd(p)
                if g.degree == 0:
                    break
        return g.monic() if not g.is_zero else g

    def primitive_part_x(self) -> "BiPoly":
        c = self.content_x()
        if c.is_zero or c == UniPoly.one():
            return self
        return BiPoly.from_coeffs_in_x([p // c for p in self.coeffs_in_x()])

    def leading_term_key(self):
        return max(self.terms) if self.terms else None

    def canonical(self) -> "BiPoly":
        """Integer coprime coefficients with positive lexicographically
        largest term."""
        if self.is_zero:
            return self
        den = 1
        for v in self.terms.values():
            den = den * v.denominator // _igcd(den, v.denominator)
        ints = {k: v * den for k, v in self.terms.items()}
        g = 0
        for v in ints.values():
            g = _igcd(g, abs(int(v)))
        lead = max(ints)
        sign = 1 if ints[lead] > 0 else -1
        return BiPoly({k: Fraction(int(v) * sign, g) for k, v in ints.items()})

    # ------------------------------------------------------------------
    # division in x over Q(y)

    def pseudo_divmod_x(self, other: "BiPoly"):
        """Pseudo-division by x-degree: lc(other)^k * self = q*other + r with
        deg_x r < deg_x other.  Returns (q, r, multiplier UniPoly in y)."""
        if other.is_zero:
            raise ZeroDivisionError("pseudo-division by zero")
        a = self.coeffs_in_x()
        b = other.coeffs_in_x()
        db = len(b) - 1
        lb = b[-1]
        mult = UniPoly.one()
        q = {}
        while len(a) - 1 >= db and any(not p.is_zero for p in a):
            while a and a[-1].is_zero:
                a.pop()
            if len(a) - 1 < db:
                break
            da = len(a) - 1
            top = a[-1]
            # multiply everything through by lb, subtract top * x^(da-db) * other
            a = [p * lb for p in a]
            for k in q:
                q[k] = q[k] * lb
            mult = mult * lb
            q[da - db] = q.get(da - db, UniPoly.zero()) + top
            for j in range(db + 1):
                a[da - db + j] = a[da - db + j] - top * b[j]
            a.pop()
        qc = [q.get(k, UniPoly.zero()) for k in range(max(q, default=-1) + 1)]
        return (
            BiPoly.from_coeffs_in_x(qc),
            BiPoly.from_coeffs_in_x(a),
            mult,
        )

    def divides(self, other: "BiPoly") -> bool:
        """Exact divisibility test over Q[x, y]."""
        if self.is_zero:
            return other.is_zero
        if other.is_zero:
            return True
        if self.deg_x > other.deg_x or self.deg_y > other.deg_y:
            return False
        if self.deg_x == 0:
            # univariate in y
            c = self.coeffs_in_x()[0]
            return all(c.divides(p) for p in other.coeffs_in_x())
        _, r, _ = other.pseudo_divmod_x(self)
        if not r.is_zero:
            return False
        q = other.exact_div(self)
        return q is not None

    def exact_div(self, other: "BiPoly"):
        """Exact quotient over Q[x, y], or None when not divisible."""
        if other.is_zero:
            raise ZeroDivisionError("division by zero")
        if self.is_zero:
            return BiPoly.zero()
        if other.deg_x == 0:
            c = other.coeffs_in_x()[0]
            out = []
            for p in self.coeffs_in_x():
                q, r = divmod(p, c)
                if not r.is_zero:
                    return None
                out.append(q)
            return BiPoly.from_coeffs_in_x(out)
        a = self.coeffs_in_x()
        b = other.coeffs_in_x()
        db = len(b) - 1
        lb = b[-1]
        q = {}
        while True:
            while a and a[-1].is_zero:
                a.pop()
            da = len(a) - 1
            if da < db:
                break
            qt, rt = divmod(a[-1], lb)
            if not rt.is_zero:
                return None
            q[da - db] = qt
            for j in range(db + 1):
                a[da - db + j] = a[da - db + j] - qt * b[j]
            a.pop()
        if any(not p.is_zero for p in a):
            return None
        qc = [q.get(k, UniPoly.zero()) for k in range(max(q, default=-1) + 1)]
        return BiPoly.from_coeffs_in_x(qc)

    # ------------------------------------------------------------------

    def to_str(self, vx: str = "x", vy: str = "y") -> str:
        if self.is_zero:
            return "0"
        parts = []
        for (i, j) in sorted(self.terms, reverse=True):
            v = self.terms[(i, j)]
            factors = []
            mag = abs(v)
            if mag != 1 or (i == 0 and j == 0):
                factors.append(str(mag) if mag.denominator == 1 else f"{mag.numerator}/{mag.denominator}")
            if i:
                factors.append(vx + (f"^{i}" if i > 1 else ""))
            if j:
                factors.append(vy + (f"^{j}" if j > 1 else ""))
            term = "*".join(factors)
            if not parts:
                parts.append(("-" if v < 0 else "") + term)
            else:
                parts.append(("- " if v < 0 else "+ ") + term)
        return " ".join(parts)


# ----------------------------------------------------------------------
# gcd in x over Q(y): primitive remainder sequence


def gcd_x(f: BiPoly, g: BiPoly) -> BiPoly:
    """Gcd of f and g viewed in Q(y)[x], returned primitive in Q[y][x]
    with monic content-free leading structure (up to a rational unit)."""
    if f.is_zero:
        return g.primitive_part_x().canonical()
    if g.is_zero:
        return f.primitive_part_x().canonical()
    a = f.primitive_part_x()
    b = g.primitive_part_x()
    if a.deg_x < b.deg_x:
        a, b = b, a
    while True:
        if b.is_zero:
            return a.primitive_part_x().canonical()
        if b.deg_x == 0:
            return BiPoly.constant(1)
        _, r, _ = a.pseudo_divmod_x(b)
        a, b = b, r.primitive_part_x()


# ----------------------------------------------------------------------
# resultants by evaluation and interpolation


def resultant_x(f: BiPoly, g: BiPoly) -> UniPoly:
    """Res_x of two polynomials in (x, y); the result is a UniPoly in y."""
    if f.is_zero or g.is_zero:
        return UniPoly.zero()
    dfx, dgx = f.deg_x, g.deg_x
    if dfx == 0 and dgx == 0:
        return UniPoly.one()
    if dfx == 0:
        return f.coeffs_in_x()[0] ** dgx
    if dgx == 0:
        return g.coeffs_in_x()[0] ** dfx
    bound = dfx * g.deg_y + dgx * f.deg_y
    lf = f.coeffs_in_x()[-1]
    lg = g.coeffs_in_x()[-1]
    points = []
    a = 0
    while len(points) < bound + 1:
        ya = Fraction(a)
        if lf(ya) != 0 and lg(ya) != 0:
            fu = f.eval_y(ya)
            gu = g.eval_y(ya)
            points.append((ya, fu.resultant(gu)))
        a = -a if a > 0 else -a + 1
    return UniPoly.interpolate(points)


def resultant_y(f: BiPoly, g: BiPoly) -> UniPoly:
    """Res_y; the result is a UniPoly in x."""
    return resultant_x(f.swap(), g.swap())


def resultant_x_mixed(f: BiPoly, g: BiPoly) -> BiPoly:
    """Res_x of f in variables (x, s) and g in variables (x, t); the result
    lives in (s, t) packed as a BiPoly with s as first variable."""
    if f.is_zero or g.is_zero:
        return BiPoly.zero()
    if f.deg_x == 0:
        # f depends on s only
        c = f.coeffs_in_x()[0]
        return BiPoly.from_unipoly(c ** g.deg_x, "x")
    if g.deg_x == 0:
        c = g.coeffs_in_x()[0]
        return BiPoly.from_unipoly(c ** f.deg_x, "y")
    bound_s = f.deg_y * g.deg_x
    lf = f.coeffs_in_x()[-1]
    slices = []
    a = 0
    while len(slices) < bound_s + 1:
        sa = Fraction(a)
        if lf(sa) != 0:
            fu = f.eval_y(sa)  # univariate in x
            fu_bi = BiPoly.from_unipoly(fu, "x")
            r = resultant_x(fu_bi, g)  # UniPoly in t
            slices.append((sa, r))
        a = -a if a > 0 else -a + 1
    # interpolate each t-coefficient in s
    max_t = max((r.degree for _, r in slices), default=-1)
    terms = {}
    for j in range(max_t + 1):
        pts = [(sa, r.coeff(j)) for sa, r in slices]
        pj = UniPoly.interpolate(pts)
        for i, v in enumerate(pj.c):
            if v:
                terms[(i, j)] = v
    return BiPoly(terms)


def squarefree_part_x(f: BiPoly) -> BiPoly:
    """Squarefree part of f with respect to total factorization over Q(y),
    keeping the content in y squarefree as well."""
    if f.is_zero:
        return f
    cont = f.content_x()
    prim = f.primitive_part_x()
    out = BiPoly.from_unipoly(cont.squarefree_part(), "y") if cont.degree >= 1 else BiPoly.constant(1)
    if prim.deg_x >= 1:
        g = gcd_x(prim, prim.derivative_x())
        sf = prim.exact_div(g) if not g.is_zero and g.deg_x >= 1 else prim
        if sf is None:
            raise PreconditionError("inconsistent squarefree division")
        out = out * sf
    else:
        out = out * prim
    return out.canonical()
