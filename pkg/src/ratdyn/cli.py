"""Command-line surface.

Commands mirror the library: analyze, orbifold (chi / pullback / check),
classify, semiconj (verify / complete), decompose (factors / normalize /
chain), curve (genus / invariant / orbit / implicitize), search invariant,
and the bound functions.  Output is text by default or a self-describing
JSON tree with --format structured; maps serialize as coefficient arrays
lowest degree first.  Exit codes: 0 success, 2 parse or precondition
problems, 3 a cap-limited search, 4 an internal consistency failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .classify import classify
from .bipolys import BiPoly
from .curves import (
    BiCurve,
    ParamCurve,
    genus_separated,
    image_curve,
    implicitize,
    is_invariant,
)
from .decompose import (
    all_left_factors,
    bound_kappa,
    bound_phi,
    bound_psi,
    detect_periodicity,
    good_diagram_chain,
    normalize_left_factor,
    genus_degree_gate,
    verify_semiconjugacy,
    complete_semiconjugacy,
)
from .errors import (
    ChainError,
    Inconclusive,
    NonRationalPosition,
    NotDefined,
    ParseError,
    PreconditionError,
    RatDynError,
    ReducibleCurve,
    TheoremViolation,
)
from .orbifolds import Orbifold, chi, is_covering, is_min_holomorphic, o1_of, o2_of, pullback
from .parser import parse_curve, parse_map
from .places import PLACE_INF, Place, critical_values, fiber_partition
from .ratmaps import RatMap
from .search import SearchConfig, find_invariant_curves


def _q_str(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def map_to_json(f: RatMap):
    return {
        "num": [_q_str(c) for c in f.num.c],
        "den": [_q_str(c) for c in f.den.c],
        "text": f.to_str(),
    }


def curve_to_json(C):
    poly = C.poly if isinstance(C, BiCurve) else C
    return {
        "terms": [[i, j, _q_str(v)] for (i, j), v in sorted(poly.terms.items())],
        "text": poly.to_str(),
    }


def place_to_str(p: Place) -> str:
    if p.is_infinity:
        return "inf"
    v = p.rational_value()
    if v is not None:
        return _q_str(v)
    return p.minpoly.to_str()


def orbifold_to_json(o: Orbifold):
    return [[place_to_str(p), v] for p, v in o.items()]


def parse_orbifold(text: str) -> Orbifold:
    """Entries point:value separated by commas; a point is a rational
    number, inf, or a parenthesized polynomial in z for a Galois orbit."""
    ram = {}
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        if ":" not in chunk:
            raise ParseError(f"missing value in orbifold entry {chunk!r}")
        point, _, value = chunk.rpartition(":")
        point = point.strip()
        try:
            nu = int(value)
        except ValueError as exc:
            raise ParseError(f"bad ramification value {value!r}") from exc
        if point in ("inf", "INF", "oo"):
            place = PLACE_INF
        else:
            f = parse_map(point)
            if f.degree == 0:
                place = Place.of_rational(f(0))
            elif f.is_polynomial:
                from .factoring import factor_univariate

                _, facs = factor_univariate(f.num)
                if len(facs) != 1:
                    raise ParseError(f"orbifold point {point!r} is not irreducible")
                place = Place(facs[0][0])
            else:
                raise ParseError(f"orbifold point {point!r} must be a polynomial")
        ram[place] = nu
    return Orbifold(ram)


class _Output:
    def __init__(self, structured: bool):
        self.structured = structured
        self.payload = {}
        self.lines = []

    def add(self, key, value, text=None):
        self.payload[key] = value
        self.lines.append(f"{key}: {value if text is None else text}")

    def emit(self):
        if self.structured:
            print(json.dumps(self.payload, indent=2, default=str))
        else:
            for line in self.lines:
                print(line)


def _cmd_analyze(args, out: _Output):
    f = parse_map(args.map)
    out.add("map", map_to_json(f), f.to_str())
    out.add("degree", f.degree)
    if f.degree >= 2:
        cvs = critical_values(f)
        portrait = []
        for q in cvs:
            portrait.append(
                {
                    "value": place_to_str(q),
                    "place_degree": q.degree,
                    "fiber": list(fiber_partition(f, q)),
                }
            )
        out.add("critical_values", portrait, [p["value"] for p in portrait])
        out.add("orbifold_downstairs", orbifold_to_json(o2_of(f)))
        out.add("orbifold_upstairs", orbifold_to_json(o1_of(f)))
        cls = classify(f)
        out.add("classification", _class_json(cls), cls.kind)


def _class_json(cls):
    data = {"kind": cls.kind}
    if cls.n is not None:
        data["n"] = cls.n
    if cls.sign is not None:
        data["sign"] = cls.sign
    if cls.witness is not None:
        data["witness"] = map_to_json(cls.witness)
    if cls.orbifold is not None:
        data["orbifold"] = orbifold_to_json(cls.orbifold)
    if cls.extension_needed:
        data["extension_needed"] = True
    return data


def _cmd_classify(args, out: _Output):
    f = parse_map(args.map)
    cls = classify(f)
    out.add("classification", _class_json(cls), cls.kind)


def _cmd_orbifold(args, out: _Output):
    if args.action == "chi":
        o = parse_orbifold(args.orbifold)
        out.add("chi", _q_str(chi(o)))
    elif args.action == "pullback":
        f = parse_map(args.map)
        o = parse_orbifold(args.orbifold)
        out.add("pullback", orbifold_to_json(pullback(f, o)))
    else:  # check
        f = parse_map(args.map)
        o1 = parse_orbifold(args.o1)
        o2 = parse_orbifold(args.o2)
        out.add("covering", is_covering(f, o1, o2))
        out.add("minimal_holomorphic", is_min_holomorphic(f, o1, o2))


def _cmd_semiconj(args, out: _Output):
    A = parse_map(args.A)
    X = parse_map(args.X)
    B = parse_map(args.B)
    ok = verify_semiconjugacy(A, X, B)
    out.add("identity", ok, f"A o X = X o B: {ok}")
    if args.action == "complete":
        if not ok:
            raise PreconditionError("the semiconjugacy identity fails")
        Y, d = complete_semiconjugacy(A, X, B)
        out.add("Y", map_to_json(Y), Y.to_str())
        out.add("power", d)
        out.add(
            "identities",
            {
                "Y o X equals B iterate": True,
                "X o Y equals A iterate": True,
            },
            f"Y o X = B^o{d}, X o Y = A^o{d}",
        )


def _cmd_decompose(args, out: _Output):
    if args.action == "factors":
        F = parse_map(args.F)
        n = args.n
        reps = all_left_factors(F, n)
        out.add(
            "left_factor_classes",
            [map_to_json(x) for x in reps],
            [x.to_str() for x in reps],
        )
    elif args.action == "normalize":
        A = parse_map(args.A)
        X = parse_map(args.X)
        R = parse_map(args.R)
        N, Rp = normalize_left_factor(A, X, R, args.d)
        out.add("least_power", N)
        out.add("cofactor", map_to_json(Rp), Rp.to_str())
    else:  # chain
        A = parse_map(args.A)
        W0 = parse_map(args.W0)
        D = good_diagram_chain(A, W0, args.N)
        out.add("columns", [map_to_json(w) for w in D.columns], [w.to_str() for w in D.columns])
        out.add("rungs", [map_to_json(h) for h in D.rungs], [h.to_str() for h in D.rungs])
        out.add("good", D.is_good())
        per = detect_periodicity(D)
        if per is None:
            out.add("periodic", False)
        else:
            n0, r, wits = per
            out.add("periodic", {"start": n0, "period": r}, f"tail from {n0} with period {r}")


def _cmd_curve(args, out: _Output):
    if args.action == "genus":
        Y1 = parse_map(args.a)
        Y2 = parse_map(args.b)
        out.add("genus", genus_separated(Y1, Y2))
    elif args.action == "implicitize":
        X1 = parse_map(args.a)
        X2 = parse_map(args.b)
        C = implicitize(ParamCurve(X1, X2))
        out.add("curve", curve_to_json(C), C.to_str())
        out.add("bidegree", list(C.bidegree))
    elif args.action == "invariant":
        C = BiCurve(parse_curve(args.a))
        A1 = parse_map(args.b)
        A2 = parse_map(args.c)
        out.add("invariant", is_invariant(C, A1, A2))
    else:  # orbit
        C = BiCurve(parse_curve(args.a))
        A1 = parse_map(args.b)
        A2 = parse_map(args.c)
        orbit = [C]
        for _ in range(args.N):
            orbit.append(image_curve(orbit[-1], A1, A2))
        out.add(
            "orbit",
            [curve_to_json(c) for c in orbit],
            [c.to_str() for c in orbit],
        )


def _cmd_search(args, out: _Output):
    A1 = parse_map(args.A1)
    A2 = parse_map(args.A2)
    cfg = SearchConfig(
        bidegree=(args.d1, args.d2),
        iterate_cap=args.cap,
        include_lines=args.lines,
    )
    rep = find_invariant_curves(A1, A2, cfg)
    curves = []
    for cert in rep.curves:
        curves.append(
            {
                "curve": curve_to_json(cert.curve),
                "parametrization": [map_to_json(cert.X1), map_to_json(cert.X2)],
                "return_map": map_to_json(cert.B),
                "identities": [
                    "X1 o B = A1 o X1",
                    "X2 o B = A2 o X2",
                    "curve re-verified invariant by elimination",
                ],
            }
        )
    out.add("curves", curves, [c["curve"]["text"] for c in curves])
    if args.lines:
        out.add("lines", [f"{ln.axis} = {ln.value}" for ln in rep.lines])
    out.add("completeness", rep.completeness, f"{rep.completeness} (cap {rep.cap})")


def _cmd_bounds(args, out: _Output):
    if args.action == "phi":
        out.add("phi", bound_phi(args.m, args.n))
    elif args.action == "psi":
        out.add("psi", bound_psi(args.m, args.n))
    elif args.action == "kappa":
        out.add("kappa", bound_kappa(args.m))
    else:  # genus-gate
        gate = genus_degree_gate(args.n, args.m, args.g)
        out.add("gate", gate, f"g > (m - 84 n + 168)/84: {gate}")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ratdyn",
        description="Exact dynamics of rational self-maps: orbifolds, "
        "classification, decomposition, and invariant curves.",
    )
    ap.add_argument("--format", choices=["text", "structured"], default="text")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="degree, critical portrait, orbifolds, classification")
    p.add_argument("map", nargs="?")
    p.add_argument("--file", help="batch input, one map per line")

    p = sub.add_parser("classify", help="special / generalized Lattes classification")
    p.add_argument("map", nargs="?")
    p.add_argument("--file", help="batch input, one map per line")

    p = sub.add_parser("orbifold")
    ps = p.add_subparsers(dest="action", required=True)
    q = ps.add_parser("chi")
    q.add_argument("orbifold")
    q = ps.add_parser("pullback")
    q.add_argument("map")
    q.add_argument("orbifold")
    q = ps.add_parser("check")
    q.add_argument("map")
    q.add_argument("o1")
    q.add_argument("o2")

    p = sub.add_parser("semiconj")
    ps = p.add_subparsers(dest="action", required=True)
    for name in ("verify", "complete"):
        q = ps.add_parser(name)
        q.add_argument("A")
        q.add_argument("X")
        q.add_argument("B")

    p = sub.add_parser("decompose")
    ps = p.add_subparsers(dest="action", required=True)
    q = ps.add_parser("factors")
    q.add_argument("F")
    q.add_argument("n", type=int)
    q = ps.add_parser("normalize")
    q.add_argument("A")
    q.add_argument("X")
    q.add_argument("R")
    q.add_argument("d", type=int)
    q = ps.add_parser("chain")
    q.add_argument("A")
    q.add_argument("W0")
    q.add_argument("N", type=int)

    p = sub.add_parser("curve")
    ps = p.add_subparsers(dest="action", required=True)
    q = ps.add_parser("genus")
    q.add_argument("a")
    q.add_argument("b")
    q = ps.add_parser("implicitize")
    q.add_argument("a")
    q.add_argument("b")
    q = ps.add_parser("invariant")
    q.add_argument("a")
    q.add_argument("b")
    q.add_argument("c")
    q = ps.add_parser("orbit")
    q.add_argument("a")
    q.add_argument("b")
    q.add_argument("c")
    q.add_argument("N", type=int)

    p = sub.add_parser("search")
    ps = p.add_subparsers(dest="action", required=True)
    q = ps.add_parser("invariant")
    q.add_argument("A1")
    q.add_argument("A2")
    q.add_argument("d1", type=int)
    q.add_argument("d2", type=int)
    q.add_argument("--cap", type=int, default=2)
    q.add_argument("--lines", action="store_true")

    p = sub.add_parser("bounds")
    ps = p.add_subparsers(dest="action", required=True)
    q = ps.add_parser("phi")
    q.add_argument("m", type=int)
    q.add_argument("n", type=int)
    q = ps.add_parser("psi")
    q.add_argument("m", type=int)
    q.add_argument("n", type=int)
    q = ps.add_parser("kappa")
    q.add_argument("m", type=int)
    q = ps.add_parser("genus-gate", aliases=["m2"])
    q.add_argument("n", type=int)
    q.add_argument("m", type=int)
    q.add_argument("g", type=int)
    return ap


_DISPATCH = {
    "analyze": _cmd_analyze,
    "classify": _cmd_classify,
    "orbifold": _cmd_orbifold,
    "semiconj": _cmd_semiconj,
    "decompose": _cmd_decompose,
    "curve": _cmd_curve,
    "search": _cmd_search,
    "bounds": _cmd_bounds,
}


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    structured = args.format == "structured"
    try:
        if args.command in ("analyze", "classify") and getattr(args, "file", None):
            code = 0
            with open(args.file) as handle:
                for line in handle:
                    line = line.strip()
                    if not line or line.startswith("#"):
                        continue
                    out = _Output(structured)
                    sub_args = argparse.Namespace(**vars(args))
                    sub_args.map = line
                    _DISPATCH[args.command](sub_args, out)
                    out.emit()
            return code
        if args.command in ("analyze", "classify") and not args.map:
            raise ParseError("a map expression is required")
        out = _Output(structured)
        _DISPATCH[args.command](args, out)
        out.emit()
        return 0
    except (ParseError, PreconditionError, NotDefined, NonRationalPosition, ReducibleCurve, ChainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Inconclusive as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return 3
    except TheoremViolation as exc:
        print(f"theorem violation: {exc}", file=sys.stderr)
        return 4
    except RatDynError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ZeroDivisionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
