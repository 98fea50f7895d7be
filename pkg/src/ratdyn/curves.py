"""Algebraic curves in the product of two projective lines.

Curves are primitive squarefree bivariate polynomials in canonical form.
Separated curves come from differences of one-variable maps, images of
parametrizations and of product endomorphisms from iterated resultants
with an exact membership certificate for discarding extraneous factors,
and the genus of an irreducible separated curve from the fiber-pairing
count 2 - 2g = 2pq - sum(ab - gcd(a, b))."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd as _igcd

from .bipolys import BiPoly, resultant_x_mixed, squarefree_part_x
from .errors import PreconditionError, ReducibleCurve, TheoremViolation
from .factoring import factor_bivariate
from .places import critical_values, fiber_partition
from .polynomials import UniPoly
from .ratmaps import INF, RatMap


class BiCurve:
    """Primitive squarefree curve with canonical sign."""

    __slots__ = ("poly",)

    def __init__(self, poly: BiPoly, normalize: bool = True):
        if poly.is_zero:
            raise PreconditionError("a curve needs a nonzero polynomial")
        if normalize:
            poly = squarefree_part_x(poly).canonical()
        if poly.deg_x <= 0 and poly.deg_y <= 0:
            raise PreconditionError("a curve cannot be a constant")
        self.poly = poly

    @property
    def bidegree(self):
        return (self.poly.deg_x, self.poly.deg_y)

    def __eq__(self, other):
        if not isinstance(other, BiCurve):
            return NotImplemented
        return self.poly == other.poly

    def __hash__(self):
        return hash(("BiCurve", self.poly))

    def __repr__(self):
        return f"BiCurve({self.poly.to_str()})"

    def to_str(self):
        return self.poly.to_str()

    def sort_key(self):
        return (self.poly.deg_x + self.poly.deg_y, sorted(self.poly.terms.items()))

    def factor(self):
        _, facs = factor_bivariate(self.poly)
        return [(BiCurve(f, normalize=False), m) for f, m in facs]

    def is_irreducible(self) -> bool:
        facs = self.factor()
        return len(facs) == 1 and facs[0][1] == 1


@dataclass(frozen=True)
class ParamCurve:
    X1: RatMap
    X2: RatMap

    def __post_init__(self):
        if self.X1.degree < 1 or self.X2.degree < 1:
            raise PreconditionError("parametrizations need nonconstant coordinates")


def separated_curve(Y1: RatMap, Y2: RatMap) -> BiCurve:
    """The curve Y1(x) = Y2(y)."""
    if Y1.degree < 1 or Y2.degree < 1:
        raise PreconditionError("separated curves need nonconstant maps")
    num = BiPoly.from_unipoly(Y1.num, "x") * BiPoly.from_unipoly(Y2.den, "y") - BiPoly.from_unipoly(
        Y2.num, "y"
    ) * BiPoly.from_unipoly(Y1.den, "x")
    return BiCurve(num)


def substitute_maps(F: BiPoly, A1: RatMap, A2: RatMap) -> BiPoly:
    """Numerator of F(A1(x), A2(y))."""
    dx, dy = F.deg_x, F.deg_y
    n1 = [BiPoly.constant(1)]
    d1 = [BiPoly.constant(1)]
    for _ in range(dx):
        n1.append(n1[-1] * BiPoly.from_unipoly(A1.num, "x"))
        d1.append(d1[-1] * BiPoly.from_unipoly(A1.den, "x"))
    n2 = [BiPoly.constant(1)]
    d2 = [BiPoly.constant(1)]
    for _ in range(dy):
        n2.append(n2[-1] * BiPoly.from_unipoly(A2.num, "y"))
        d2.append(d2[-1] * BiPoly.from_unipoly(A2.den, "y"))
    out = BiPoly.zero()
    for (i, j), v in F.terms.items():
        out = out + n1[i] * d1[dx - i] * n2[j] * d2[dy - j] * v
    return out


def vanishes_on_parametrization(F: BiPoly, X1: RatMap, X2: RatMap) -> bool:
    """Whether F(X1(t), X2(t)) is identically zero."""
    dx, dy = F.deg_x, F.deg_y
    acc = UniPoly.zero()
    p1 = [UniPoly.one()]
    q1 = [UniPoly.one()]
    for _ in range(dx):
        p1.append(p1[-1] * X1.num)
        q1.append(q1[-1] * X1.den)
    p2 = [UniPoly.one()]
    q2 = [UniPoly.one()]
    for _ in range(dy):
        p2.append(p2[-1] * X2.num)
        q2.append(q2[-1] * X2.den)
    for (i, j), v in F.terms.items():
        acc = acc + p1[i] * q1[dx - i] * p2[j] * q2[dy - j] * v
    return acc.is_zero


def implicitize(par) -> BiCurve:
    """Closure of the image of t -> (X1(t), X2(t)): eliminate t, then keep
    the unique irreducible factor vanishing on the parametrization."""
    if not isinstance(par, ParamCurve):
        par = ParamCurve(*par)
    X1, X2 = par.X1, par.X2
    f = BiPoly.from_unipoly(X1.num, "x") - BiPoly.var_y() * BiPoly.from_unipoly(X1.den, "x")
    g = BiPoly.from_unipoly(X2.num, "x") - BiPoly.var_y() * BiPoly.from_unipoly(X2.den, "x")
    r = resultant_x_mixed(f, g)
    if r.is_zero:
        raise TheoremViolation("elimination degenerated for a parametrization")
    _, facs = factor_bivariate(r)
    keep = [F for F, _ in facs if vanishes_on_parametrization(F, X1, X2)]
    if len(keep) != 1:
        raise TheoremViolation("image of an irreducible curve was not irreducible")
    return BiCurve(keep[0], normalize=False)


def image_curve(C: BiCurve, A1: RatMap, A2: RatMap) -> BiCurve:
    """Defining polynomial of the image of C under (A1, A2); C must be
    irreducible and not a vertical or horizontal line."""
    F = C.poly
    if F.deg_x < 1 or F.deg_y < 1:
        raise PreconditionError("lines are handled by fixed-point logic")
    pencil1 = BiPoly.from_unipoly(A1.num, "x") - BiPoly.var_y() * BiPoly.from_unipoly(A1.den, "x")
    r1 = resultant_x_mixed(F, pencil1)  # variables (y, u)
    pencil2 = BiPoly.from_unipoly(A2.num, "x") - BiPoly.var_y() * BiPoly.from_unipoly(A2.den, "x")
    r2 = resultant_x_mixed(r1, pencil2)  # variables (u, v)
    if r2.is_zero:
        raise TheoremViolation("elimination degenerated for an image curve")
    _, facs = factor_bivariate(r2)
    keep = []
    for G, _ in facs:
        pull = substitute_maps(G, A1, A2)
        if pull.is_zero:
            raise TheoremViolation("pullback of a candidate factor vanished")
        quotient_exists = _divides_curve(F, pull)
        if quotient_exists:
            keep.append(G)
    if len(keep) != 1:
        raise TheoremViolation("image curve certificate did not isolate one factor")
    return BiCurve(keep[0], normalize=False)


def _divides_curve(C: BiPoly, G: BiPoly) -> bool:
    return C.divides(G)


@dataclass(frozen=True)
class Line:
    """A vertical (x = value) or horizontal (y = value) line; the value may
    be INF, which the affine curve model cannot carry."""

    axis: str  # 'x' or 'y'
    value: object

    def __repr__(self):
        return f"Line({self.axis} = {self.value})"


def line_is_invariant(line: Line, A1: RatMap, A2: RatMap) -> bool:
    f = A1 if line.axis == "x" else A2
    return f(line.value) == line.value or (line.value is INF and f(INF) is INF)


def is_invariant(C, A1: RatMap, A2: RatMap) -> bool:
    """Exact invariance test; accepts a BiCurve or a Line."""
    if isinstance(C, Line):
        return line_is_invariant(C, A1, A2)
    if not C.is_irreducible():
        raise PreconditionError("invariance is defined for irreducible curves")
    if C.poly.deg_x < 1 or C.poly.deg_y < 1:
        axis = "x" if C.poly.deg_y < 1 else "y"
        uni = C.poly.eval_y(0) if C.poly.deg_y < 1 else C.poly.eval_x(0)
        if uni.degree != 1:
            raise PreconditionError("an irreducible line must have degree one")
        value = -uni.coeff(0) / uni.lc
        return line_is_invariant(Line(axis, value), A1, A2)
    return image_curve(C, A1, A2) == C


def periodicity(C: BiCurve, A1: RatMap, A2: RatMap, max_n: int):
    """Least n with the n-th image equal to C, scanned up to max_n."""
    cur = C
    for n in range(1, max_n + 1):
        cur = image_curve(cur, A1, A2)
        if cur == C:
            return n
    return None


def preperiodicity(C: BiCurve, A1: RatMap, A2: RatMap, max_l: int, max_n: int):
    """(tail length, period) from the forward orbit, within the caps."""
    orbit = [C]
    for _ in range(max_l + max_n):
        nxt = image_curve(orbit[-1], A1, A2)
        if nxt in orbit:
            tail = orbit.index(nxt)
            period = len(orbit) - tail
            if tail <= max_l and period <= max_n:
                return tail, period
            return None
        orbit.append(nxt)
    return None


# ----------------------------------------------------------------------
# genus of separated curves


def genus_separated(Y1: RatMap, Y2: RatMap) -> int:
    """Genus of the smooth model of Y1(x) = Y2(y), which must be
    irreducible; 2 - 2g = 2pq - sum over shared values of ab - gcd(a, b)."""
    if Y1.degree < 1 or Y2.degree < 1:
        raise PreconditionError("separated curves need nonconstant maps")
    curve = separated_curve(Y1, Y2)
    facs = curve.factor()
    if len(facs) != 1 or facs[0][1] != 1:
        raise ReducibleCurve(
            "the separated curve is reducible", [f.poly for f, _ in facs]
        )
    p, q = Y1.degree, Y2.degree
    places = set()
    if p >= 2:
        places.update(critical_values(Y1))
    if q >= 2:
        places.update(critical_values(Y2))
    total = 0
    for c in places:
        fp1 = fiber_partition(Y1, c)
        fp2 = fiber_partition(Y2, c)
        local = 0
        for a, ca in fp1:
            for b, cb in fp2:
                local += ca * cb * (a * b - _igcd(a, b))
        total += local * c.degree
    two_minus_2g = 2 * p * q - total
    if two_minus_2g % 2 != 0:
        raise TheoremViolation("parity failure in the genus count")
    g = (2 - two_minus_2g) // 2
    if g < 0:
        raise TheoremViolation("negative genus computed")
    return g


# ----------------------------------------------------------------------
# certificate report for the periodic-curve characterization


@dataclass
class IdentityReport:
    ok: bool
    checks: list = field(default_factory=list)  # (name, passed)
    curve: BiCurve | None = None
    conjugator: RatMap | None = None

    def failures(self):
        return [name for name, passed in self.checks if not passed]


def periodic_curve_certificate(X1, X2, Y1, Y2, A1, A2, n: int) -> IdentityReport:
    """Check the full identity set for a periodic-curve certificate and
    emit the parametrized curve plus its separated container."""
    for f in (X1, X2, Y1, Y2):
        if f.degree < 1:
            raise PreconditionError("certificate maps must be nonconstant")
    checks = []
    e1 = X1.compose(Y1) == A1.iterate(n)
    checks.append(("outer factorization through the first coordinate", e1))
    e2 = X2.compose(Y2) == A2.iterate(n)
    checks.append(("outer factorization through the second coordinate", e2))
    B1 = Y1.compose(X1)
    B2 = Y2.compose(X2)
    e3 = B1 == B2
    checks.append(("shared conjugated return map", e3))
    ok = e1 and e2 and e3
    report = IdentityReport(ok=ok, checks=checks)
    if not ok:
        return report
    B = B1
    e4 = X1.compose(B) == A1.iterate(n).compose(X1) and X2.compose(B) == A2.iterate(n).compose(X2)
    checks.append(("commuting square through the parametrization", e4))
    report.ok = ok and e4
    report.conjugator = B
    C = implicitize(ParamCurve(X1, X2))
    report.curve = C
    sep = separated_curve(Y1, Y2)
    member = any(f == C for f, _ in sep.factor())
    checks.append(("parametrized curve is a component of the separated curve", member))
    report.ok = report.ok and member
    return report
