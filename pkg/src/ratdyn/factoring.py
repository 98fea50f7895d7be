"""Exact polynomial factorization over the rationals.

Univariate: Yun squarefree decomposition, then Zassenhaus on each
squarefree primitive integer polynomial (factor modulo a good odd prime
with distinct-degree / equal-degree splitting, Hensel lift past twice the
Mignotte bound, recombine by subset search).

Bivariate: content/primitive split in x, squarefree reduction over Q(y),
then specialization at the smallest good integer y0, lifting the
univariate factors y-adically, and subset recombination with an exact
divisibility certificate.  Subset searches are capped; hitting the cap
raises Inconclusive rather than silently truncating.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from math import gcd as _igcd, isqrt

from .bipolys import BiPoly, gcd_x
from .errors import Inconclusive, PreconditionError
from .polynomials import UniPoly

SUBSET_CAP = 1 << 16

# ----------------------------------------------------------------------
# polynomials over Z/m as int lists, lowest degree first


def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _m_mul(a, b, m):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % m
    return _trim(out)


def _m_add(a, b, m):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, v in enumerate(b):
        out[i] = (out[i] + v) % m
    return _trim(out)


def _m_sub(a, b, m):
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, v in enumerate(b):
        out[i] = (out[i] - v) % m
    return _trim(out)


def _m_divmod(a, b, m):
    if not b:
        raise ZeroDivisionError
    inv = pow(b[-1], -1, m)
    a = [v % m for v in a]
    dq = len(a) - len(b)
    if dq < 0:
        return [], _trim(a)
    q = [0] * (dq + 1)
    for k in range(dq, -1, -1):
        top = a[k + len(b) - 1]
        if top:
            c = top * inv % m
            q[k] = c
            for j, bj in enumerate(b):
                a[k + j] = (a[k + j] - c * bj) % m
    return _trim(q), _trim(a[: len(b) - 1])


def _m_monic(a, m):
    if not a:
        return []
    inv = pow(a[-1], -1, m)
    return _trim([v * inv % m for v in a])


def _m_gcd(a, b, p):
    while b:
        a, b = b, _m_divmod(a, b, p)[1]
    return _m_monic(a, p)


def _m_xgcd(a, b, p):
    """For gcd(a, b) = 1 over GF(p): (s, t) with s*a + t*b = 1,
    deg s < deg b, deg t < deg a."""
    r0, r1 = list(a), list(b)
    s0, s1 = [1], []
    while r1:
        q, r = _m_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _m_sub(s0, _m_mul(q, s1, p), p)
    if len(r0) != 1:
        raise PreconditionError("modular inputs are not coprime")
    inv = pow(r0[0], -1, p)
    s = _trim([v * inv % p for v in s0])
    s = _m_divmod(s, b, p)[1]
    num = _m_sub([1], _m_mul(s, a, p), p)
    t, rem = _m_divmod(num, b, p)
    if rem:
        raise PreconditionError("inconsistent modular Bezout data")
    return s, t


def _m_mod(a, m):
    return _trim([v % m for v in a])


def _centered(a, m):
    out = []
    for v in a:
        v %= m
        out.append(v - m if v > m // 2 else v)
    return _trim(out)


def _m_pow_mod(a, n, f, p):
    result = [1]
    base = _m_divmod(a, f, p)[1]
    while n:
        if n & 1:
            result = _m_divmod(_m_mul(result, base, p), f, p)[1]
        base = _m_divmod(_m_mul(base, base, p), f, p)[1]
        n >>= 1
    return result


def _m_deriv(a, p):
    return _trim([i * v % p for i, v in enumerate(a)][1:])


# ----------------------------------------------------------------------
# factorization over GF(p), p odd


def _gf_factor_squarefree(f, p, rng):
    n = len(f) - 1
    if n == 1:
        return [f]
    pieces = []
    h = [0, 1]
    v = list(f)
    d = 0
    while len(v) - 1 >= 2 * (d + 1):
        d += 1
        h = _m_pow_mod(h, p, v, p)
        g = _m_gcd(_m_sub(h, [0, 1], p), v, p)
        if len(g) > 1:
            pieces.append((g, d))
            v = _m_divmod(v, g, p)[0]
            h = _m_divmod(h, v, p)[1]
    if len(v) > 1:
        pieces.append((v, len(v) - 1))
    out = []
    for g, d in pieces:
        out.extend(_gf_edf(g, d, p, rng))
    out.sort(key=lambda c: (len(c), c))
    return out


def _gf_edf(f, d, p, rng):
    n = len(f) - 1
    if n == d:
        return [f]
    exponent = (p**d - 1) // 2
    while True:
        r = [rng.randrange(p) for _ in range(n)] + [1]
        h = _m_pow_mod(r, exponent, f, p)
        g = _m_gcd(_m_sub(h, [1], p), f, p)
        if 1 < len(g) < len(f):
            return _gf_edf(g, d, p, rng) + _gf_edf(_m_divmod(f, g, p)[0], d, p, rng)


def _next_prime(n):
    while True:
        n += 1
        if n >= 2 and all(n % q for q in range(2, isqrt(n) + 1)):
            return n


# ----------------------------------------------------------------------
# Hensel lifting; the exponent is a power of two so every quadratic step
# stays inside exactly known precision


def _z_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _trim(out)


def _hensel_step(m, f, g, h, s, t):
    """Quadratic step: from f = g*h, s*g + t*h = 1 (mod m, h monic) to the
    same congruences mod m*m."""
    mm = m * m
    e = _m_mod(_m_sub(_m_mod(f, mm), _z_mul(g, h), mm), mm)
    q, r = _m_divmod(_m_mul(s, e, mm), h, mm)
    u = _m_add(_m_mul(t, e, mm), _m_mul(q, g, mm), mm)
    gg = _m_mod(_m_add(g, u, mm), mm)
    hh = _m_mod(_m_add(h, r, mm), mm)
    u = _m_add(_m_mul(s, gg, mm), _m_mul(t, hh, mm), mm)
    b = _m_mod(_m_sub(u, [1], mm), mm)
    c, d = _m_divmod(_m_mul(s, b, mm), hh, mm)
    u = _m_add(_m_mul(t, b, mm), _m_mul(c, gg, mm), mm)
    ss = _m_mod(_m_sub(s, d, mm), mm)
    tt = _m_mod(_m_sub(t, u, mm), mm)
    return gg, hh, ss, tt


def _hensel_lift(p, f_mod, factors, l):
    """Lift monic GF(p) factors whose product is monic-normalized f_mod to
    monic factors mod p**l (l a power of two); f_mod is exact mod p**l."""
    target = p**l
    if len(factors) == 1:
        inv = pow(f_mod[-1] % target, -1, target)
        return [_m_mod([v * inv for v in f_mod], target)]
    k = len(factors) // 2
    g = [f_mod[-1] % p]
    for fac in factors[:k]:
        g = _m_mul(g, fac, p)
    h = [1]
    for fac in factors[k:]:
        h = _m_mul(h, fac, p)
    s, t = _m_xgcd(g, h, p)
    g, h, s, t = (_centered(c, p) for c in (g, h, s, t))
    m = p
    while m < target:
        g, h, s, t = _hensel_step(m, f_mod, g, h, s, t)
        m *= m
        g, h, s, t = (_centered(c, m) for c in (g, h, s, t))
    return _hensel_lift(p, _m_mod(g, target), factors[:k], l) + _hensel_lift(
        p, _m_mod(h, target), factors[k:], l
    )


# ----------------------------------------------------------------------
# Zassenhaus over the integers


def _z_primitive(a):
    g = 0
    for v in a:
        g = _igcd(g, abs(v))
    if g <= 1:
        return list(a)
    return [v // g for v in a]


def _degree_subset_sums(degrees, n):
    """Achievable factor degrees from combining modular pieces."""
    possible = 1  # bitmask
    for d in degrees:
        possible |= possible << d
    out = set()
    for k in range(n + 1):
        if possible >> k & 1:
            out.add(k)
    return out


def _pick_modular(f):
    """(p, modular factors, possible factor degrees) for a good odd prime;
    the degree set is intersected over the primes tried, so a {0, n} result
    certifies irreducibility without any lifting."""
    lc = f[-1]
    n = len(f) - 1
    rng = random.Random(20240801)
    best = None
    possible = None
    p = 2
    tried = 0
    while tried < 4:
        p = _next_prime(p)
        if lc % p == 0:
            continue
        fp = _m_monic([v % p for v in f], p)
        if len(fp) != len(f):
            continue
        if len(_m_gcd(fp, _m_deriv(fp, p), p)) != 1:
            continue
        facs = _gf_factor_squarefree(fp, p, rng)
        tried += 1
        sums = _degree_subset_sums([len(g) - 1 for g in facs], n)
        possible = sums if possible is None else (possible & sums)
        if best is None or len(facs) < len(best[1]):
            best = (p, facs)
        if len(facs) == 1 or possible <= {0, n}:
            break
    if best is None:
        raise PreconditionError("no usable prime found")
    return best[0], best[1], possible


def _zassenhaus(f, max_degree=None):
    """Factor a squarefree primitive integer polynomial of degree >= 1.

    Unbounded: the complete list of primitive irreducible integer factors.
    With max_degree set: all irreducible factors of degree <= max_degree
    (the large-degree remainder is discarded).
    """
    n = len(f) - 1
    if n == 1:
        return [list(f)]
    p, modular, possible = _pick_modular(f)
    if len(modular) == 1 or possible <= {0, n}:
        return [] if max_degree is not None and n > max_degree else [list(f)]
    height = max(abs(v) for v in f)
    bound = (isqrt(n + 1) + 1) * (1 << n) * height * abs(f[-1])
    l = 1
    while p**l <= 2 * bound:
        l *= 2
    target = p**l
    lifted = _hensel_lift(p, _m_mod(f, target), modular, l)

    result = []
    pool = list(range(len(lifted)))
    current = list(f)
    visited = 0
    if max_degree is None:
        size_limit = lambda pool_len: pool_len // 2
    else:
        size_limit = lambda pool_len: min(pool_len, max_degree)
    s = 1
    while pool and s <= size_limit(len(pool)):
        found = True
        while found and s <= size_limit(len(pool)):
            found = False
            for combo in itertools.combinations(pool, s):
                visited += 1
                if visited > SUBSET_CAP:
                    raise Inconclusive("factor recombination exceeded the subset cap")
                deg_sum = sum(len(lifted[i]) - 1 for i in combo)
                if deg_sum not in possible:
                    continue
                if max_degree is not None and deg_sum > max_degree:
                    continue
                g = [current[-1] % target]
                for i in combo:
                    g = _m_mul(g, lifted[i], target)
                g = _z_primitive(_centered(g, target))
                cand = UniPoly(g)
                q, r = divmod(UniPoly(current), cand)
                if r.is_zero:
                    result.append(g)
                    current = [int(v) for v in q.content_and_primitive()[1].c]
                    for i in combo:
                        pool.remove(i)
                    found = True
                    break
        s += 1
    if len(current) > 1:
        if max_degree is None:
            result.append(current)
        elif len(current) - 1 <= max_degree and len(pool) > 0:
            # everything left recombines to one small factor
            result.append(_z_primitive(current))
    return result


# ----------------------------------------------------------------------
# public univariate interface


_uni_cache: dict = {}


def factor_univariate(p: UniPoly):
    """Complete factorization over Q: (content, [(monic irreducible, mult)])
    with p = content * prod g**m, factors sorted canonically."""
    if p.is_zero:
        raise PreconditionError("cannot factor the zero polynomial")
    hit = _uni_cache.get(p.c)
    if hit is not None:
        return hit
    content = p.lc
    if p.degree < 1:
        out = (p.c[0], [])
        _uni_cache[p.c] = out
        return out
    work = p.monic()
    factors = []
    k = 0
    while work.coeff(k) == 0:
        k += 1
    if k:
        factors.append((UniPoly.x(), k))
        work = UniPoly(work.c[k:])
    for sqf, mult in work.yun_decomposition():
        _, zz = sqf.content_and_primitive()
        for fac in _zassenhaus([int(v) for v in zz.c]):
            factors.append((UniPoly(fac).monic(), mult))
    factors.sort(key=lambda fm: (fm[0].degree, fm[0].c))
    out = (content, factors)
    _uni_cache[p.c] = out
    return out


def low_degree_factors(p: UniPoly, max_degree: int):
    """Monic irreducible factors of degree <= max_degree with multiplicity;
    complete for those degrees, the rest of p is not factored."""
    if p.is_zero:
        raise PreconditionError("cannot factor the zero polynomial")
    if p.degree < 1:
        return []
    out = []
    work = p.monic()
    k = 0
    while work.coeff(k) == 0:
        k += 1
    if k:
        if max_degree >= 1:
            out.append((UniPoly.x(), k))
        work = UniPoly(work.c[k:])
    for sqf, mult in work.yun_decomposition():
        _, zz = sqf.content_and_primitive()
        for fac in _zassenhaus([int(v) for v in zz.c], max_degree=max_degree):
            if len(fac) - 1 <= max_degree:
                out.append((UniPoly(fac).monic(), mult))
    out.sort(key=lambda fm: (fm[0].degree, fm[0].c))
    return out


def is_irreducible(p: UniPoly) -> bool:
    if p.degree < 1:
        return False
    _, facs = factor_univariate(p)
    return len(facs) == 1 and facs[0][1] == 1


def rational_roots(p: UniPoly):
    """All rational roots, without multiplicity, sorted."""
    return sorted({-fac.coeff(0) for fac, _ in low_degree_factors(p, 1)})


# ----------------------------------------------------------------------
# truncated power series (lists of Fractions of fixed length K)


def _ser(vals, k):
    out = [Fraction(0)] * k
    for i, v in enumerate(vals[:k]):
        out[i] = Fraction(v)
    return out


def _ser_mul(a, b, k):
    out = [Fraction(0)] * k
    for i, ai in enumerate(a):
        if ai and i < k:
            top = min(k - i, len(b))
            for j in range(top):
                if b[j]:
                    out[i + j] += ai * b[j]
    return out


def _ser_inv(a, k):
    if not a or a[0] == 0:
        raise ZeroDivisionError("series not invertible")
    out = [Fraction(0)] * k
    out[0] = 1 / a[0]
    for i in range(1, k):
        acc = Fraction(0)
        for j in range(1, min(i, len(a) - 1) + 1):
            acc += a[j] * out[i - j]
        out[i] = -acc / a[0]
    return out


def _xser_mul(A, B, k):
    out = [[Fraction(0)] * k for _ in range(len(A) + len(B) - 1)]
    for i, ai in enumerate(A):
        for j, bj in enumerate(B):
            prod = _ser_mul(ai, bj, k)
            tgt = out[i + j]
            for t in range(k):
                tgt[t] += prod[t]
    return out


# ----------------------------------------------------------------------
# bivariate factorization


def factor_bivariate(F: BiPoly):
    """Complete factorization over Q: (unit, [(canonical irreducible BiPoly,
    multiplicity)]) with F = unit * prod f**m."""
    if F.is_zero:
        raise PreconditionError("cannot factor the zero polynomial")
    if F.deg_x <= 0 and F.deg_y <= 0:
        return F.terms.get((0, 0), Fraction(0)), []
    factors = []
    if F.deg_x == 0:
        _, facs = factor_univariate(F.coeffs_in_x()[0])
        factors = [(BiPoly.from_unipoly(g, "y").canonical(), m) for g, m in facs]
        factors.sort(key=_bi_sort_key)
        return _unit_for(F, factors), factors
    if F.deg_y == 0:
        _, facs = factor_univariate(F.eval_y(0))
        factors = [(BiPoly.from_unipoly(g, "x").canonical(), m) for g, m in facs]
        factors.sort(key=_bi_sort_key)
        return _unit_for(F, factors), factors
    cont = F.content_x()
    prim = F.primitive_part_x()
    if cont.degree >= 1:
        _, cfacs = factor_univariate(cont)
        for g, m in cfacs:
            factors.append((BiPoly.from_unipoly(g, "y").canonical(), m))
    g = gcd_x(prim, prim.derivative_x())
    if g.deg_x >= 1:
        sf = prim.exact_div(g)
        if sf is None:
            raise PreconditionError("squarefree reduction failed to divide")
    else:
        sf = prim
    sf = sf.primitive_part_x().canonical()
    for irr in _factor_squarefree_bi(sf):
        mult = 0
        probe = prim
        while True:
            q = probe.exact_div(irr)
            if q is None:
                break
            mult += 1
            probe = q
        if mult == 0:
            raise PreconditionError("squarefree factor does not divide the input")
        factors.append((irr, mult))
    factors.sort(key=_bi_sort_key)
    return _unit_for(F, factors), factors


def _bi_sort_key(fm):
    f = fm[0] if isinstance(fm, tuple) else fm
    return (f.deg_x + f.deg_y, f.deg_x, sorted(f.terms.items()))


def _unit_for(F, factors):
    prod = BiPoly.constant(1)
    for f, m in factors:
        prod = prod * f**m
    lead = F.leading_term_key()
    pv = prod.terms.get(lead)
    if pv is None:
        raise PreconditionError("factorization lost the leading term")
    return F.terms[lead] / pv


def bi_is_irreducible(F: BiPoly) -> bool:
    _, facs = factor_bivariate(F)
    return len(facs) == 1 and facs[0][1] == 1


def _factor_squarefree_bi(G: BiPoly):
    """Irreducible canonical factors of a squarefree, x-primitive BiPoly
    with deg_x >= 1."""
    if G.deg_x == 1:
        return [G.canonical()]
    lcx = G.coeffs_in_x()[-1]
    y0 = None
    a = 0
    while True:
        cand = Fraction(a)
        if lcx(cand) != 0:
            slice0 = G.eval_y(cand)
            if slice0.degree == G.deg_x and slice0.is_squarefree():
                y0 = cand
                break
        a += 1
        if a > 40 + 4 * (G.deg_y + 1):
            raise Inconclusive("no squarefree specialization point found")
    slice0 = G.eval_y(y0)
    _, ufacs = factor_univariate(slice0)
    base = [f for f, _ in ufacs]
    if len(base) == 1:
        return [G.canonical()]
    Gs = G.shift_y(y0)
    K = G.deg_y + max(lcx.degree, 0) + 1
    lc_series = _ser(list(Gs.coeffs_in_x()[-1].c), K)
    inv_lc = _ser_inv(lc_series, K)
    ghat = [_ser_mul(_ser(list(cy.c), K), inv_lc, K) for cy in Gs.coeffs_in_x()]
    lifted = _bi_hensel(ghat, base, K)

    pool = list(range(len(lifted)))
    out = []
    current = G
    s = 1
    visited = 0
    while pool and 2 * s <= len(pool):
        found = True
        while found and 2 * s <= len(pool):
            found = False
            for combo in itertools.combinations(pool, s):
                visited += 1
                if visited > SUBSET_CAP:
                    raise Inconclusive("bivariate recombination exceeded the subset cap")
                prod = [[Fraction(1)] + [Fraction(0)] * (K - 1)]
                for i in combo:
                    prod = _xser_mul(prod, lifted[i], K)
                lc_now = _ser(list(current.shift_y(y0).coeffs_in_x()[-1].c), K)
                scaled = [_ser_mul(c, lc_now, K) for c in prod]
                cand = _xser_to_bipoly(scaled, y0).primitive_part_x().canonical()
                if cand.deg_x < 1:
                    continue
                q = current.exact_div(cand)
                if q is not None:
                    out.append(cand)
                    current = q.primitive_part_x().canonical()
                    for i in combo:
                        pool.remove(i)
                    found = True
                    break
        s += 1
    if current.deg_x >= 1:
        out.append(current.primitive_part_x().canonical())
    return out


def _xser_to_bipoly(A, y0):
    terms = {}
    for i, ser in enumerate(A):
        poly = UniPoly(ser).taylor_shift(-y0)
        for j, v in enumerate(poly.c):
            if v:
                terms[(i, j)] = v
    return BiPoly(terms)


def _bi_hensel(ghat, base, K):
    """Lift pairwise coprime monic univariate factors (product = ghat at
    tau = 0) to monic x-polynomials with series coefficients mod tau**K."""
    n = len(ghat) - 1
    r = len(base)
    partials = []
    for i in range(r):
        P = UniPoly.one()
        for j in range(r):
            if j != i:
                P = P * base[j]
        g, _, v = base[i].xgcd(P)
        if g.degree != 0:
            raise PreconditionError("specialization factors are not coprime")
        partials.append(v)
    F = [[_ser([c], K) for c in b.c] for b in base]
    for k in range(1, K):
        prod = [[Fraction(1)] + [Fraction(0)] * (K - 1)]
        for fi in F:
            prod = _xser_mul(prod, fi, K)
        err = []
        for i in range(n + 1):
            have = prod[i][k] if i < len(prod) else Fraction(0)
            want = ghat[i][k] if i < len(ghat) else Fraction(0)
            err.append(want - have)
        e_poly = UniPoly(err)
        if e_poly.is_zero:
            continue
        for i in range(r):
            delta = (e_poly * partials[i]) % base[i]
            for j, v in enumerate(delta.c):
                if v:
                    F[i][j][k] += v
    return F
