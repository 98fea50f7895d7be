import json
import subprocess
import sys

import pytest

from ratdyn.errors import ParseError
from ratdyn.parser import parse_curve, parse_map
from ratdyn.polynomials import UniPoly
from ratdyn.ratmaps import RatMap, chebyshev, power_map


def test_parse_basic_maps():
    assert parse_map("z^2 - 1") == RatMap(UniPoly.of(-1, 0, 1))
    assert parse_map("1/z") == power_map(-1)
    assert parse_map("(z+1)^2") == RatMap(UniPoly.of(1, 2, 1))
    assert parse_map("3/2 * z") == RatMap(UniPoly([0, "3/2"]))


def test_parse_lattes_example():
    from fractions import Fraction

    f = parse_map("(z^2+1)^2 / (4*z*(z^2-1))")
    assert f.degree == 4
    assert f.num == (UniPoly.of(1, 0, 1) ** 2) * Fraction(1, 4)


def test_parse_aliases_and_composition():
    assert parse_map("T3") == chebyshev(3)
    assert parse_map("T2 o T3") == chebyshev(6)
    assert parse_map("z^2 o (z+1)") == RatMap(UniPoly.of(1, 2, 1))


def test_parse_iteration_suffix():
    assert parse_map("z^2^o3") == power_map(8)
    assert parse_map("(z^2-1)^o2") == RatMap(UniPoly.of(-1, 0, 1)).iterate(2)


def test_parse_negative_power():
    assert parse_map("z^-2") == power_map(-2)


def test_parse_errors_carry_position():
    with pytest.raises(ParseError):
        parse_map("z^2 +")
    with pytest.raises(ParseError) as err:
        parse_map("z @ 2")
    assert err.value.position is not None
    with pytest.raises(ParseError):
        parse_map("w^2")


def test_parse_rejects_degenerate_input():
    with pytest.raises(ParseError):
        parse_map("1/(z-z)")
    with pytest.raises(ParseError):
        parse_map("z^9999")
    with pytest.raises(ParseError):
        parse_map("z^2^o100")
    assert parse_map("z^0") == RatMap.constant(1)


def test_round_trip_fixtures():
    fixtures = [
        power_map(2),
        chebyshev(5),
        RatMap(UniPoly.of(1, 0, 1), UniPoly.of(0, 2)),
        RatMap(UniPoly.of(1, 2, 1)),
        RatMap(UniPoly.of(1, 0, 1) ** 2, UniPoly.monomial(1, 4) * UniPoly.of(-1, 0, 1)),
        RatMap(UniPoly(["1/3", 2]), UniPoly.of(5, 7)),
    ]
    for f in fixtures:
        assert parse_map(f.to_str()) == f


def test_parse_curves():
    assert parse_curve("x^2 - y^2").to_str() == "x^2 - y^2"
    assert parse_curve("x*y - 1").to_str() == "x*y - 1"
    with pytest.raises(ParseError):
        parse_curve("x / y")


def run_cli(*args):
    proc = subprocess.run(
        [sys.executable, "-m", "ratdyn.cli", *args],
        capture_output=True,
        text=True,
    )
    return proc


def test_cli_classify():
    proc = run_cli("classify", "z^2-1")
    assert proc.returncode == 0
    assert "non_special_non_gl" in proc.stdout


def test_cli_genus():
    proc = run_cli("curve", "genus", "z^3-z", "z^2")
    assert proc.returncode == 0
    assert "genus: 1" in proc.stdout


def test_cli_structured_output():
    proc = run_cli("--format", "structured", "classify", "z^5")
    assert proc.returncode == 0
    data = json.loads(proc.stdout)
    assert data["classification"]["kind"] == "power"
    assert data["classification"]["n"] == 5


def test_cli_search():
    proc = run_cli("search", "invariant", "(z+1)^2", "(z+1)^2", "1", "2", "--cap", "2")
    assert proc.returncode == 0
    assert "x - y^2 - 2*y - 1" in proc.stdout


def test_cli_search_structured():
    proc = run_cli(
        "--format", "structured", "search", "invariant", "(z+1)^2", "(z+1)^2", "1", "1", "--cap", "2"
    )
    assert proc.returncode == 0
    data = json.loads(proc.stdout)
    assert data["completeness"] == "complete_up_to_cap"
    assert len(data["curves"]) == 1
    entry = data["curves"][0]
    assert entry["curve"]["terms"] == [[0, 1, "-1"], [1, 0, "1"]]
    assert entry["parametrization"][0]["num"] == ["0", "1"]


def test_cli_exit_codes():
    assert run_cli("classify", "z^2 +").returncode == 2
    assert run_cli("classify", "z+1").returncode == 2  # degree too small
    assert run_cli("bounds", "genus-gate", "2", "2", "5").returncode == 0
    assert run_cli("bounds", "m2", "2", "2", "5").returncode == 0  # alias


def test_cli_orbifold_commands():
    proc = run_cli("orbifold", "chi", "0:2, inf:2")
    assert proc.returncode == 0
    assert "chi: 1" in proc.stdout
    proc = run_cli("orbifold", "chi", "0:2, 1:3, inf:7")
    assert "-1/42" in proc.stdout
    proc = run_cli("orbifold", "pullback", "z^3", "0:2, inf:2")
    assert proc.returncode == 0
    proc = run_cli(
        "orbifold", "check", "(z^2+1)^2 / (4*z*(z^2-1))", "0:2,1:2,-1:2,inf:2", "0:2,1:2,-1:2,inf:2"
    )
    assert proc.returncode == 0
    assert "covering: True" in proc.stdout


def test_cli_orbifold_quadratic_place():
    proc = run_cli("orbifold", "chi", "z^2-2:3")
    assert proc.returncode == 0
    assert "2/3" in proc.stdout


def test_cli_semiconj():
    proc = run_cli("semiconj", "complete", "(z+1)^2", "z^2", "z^2+1")
    assert proc.returncode == 0
    assert "power: 1" in proc.stdout


def test_cli_decompose():
    proc = run_cli("decompose", "factors", "T6", "3")
    assert proc.returncode == 0
    proc = run_cli("decompose", "chain", "z^2", "z^3", "4")
    assert proc.returncode == 0
    assert "periodic" in proc.stdout


def test_cli_curve_commands():
    proc = run_cli("curve", "invariant", "x - y", "z^2-1", "z^2-1")
    assert proc.returncode == 0 and "invariant: True" in proc.stdout
    proc = run_cli("curve", "orbit", "x + y", "z^2", "z^2", "2")
    assert proc.returncode == 0 and "x - y" in proc.stdout
    proc = run_cli("curve", "implicitize", "z^2", "z^3")
    assert proc.returncode == 0 and "x^3 - y^2" in proc.stdout


def test_cli_inconclusive_exit_code():
    # wandering critical orbits with no attracting certificate stay honest
    proc = run_cli("classify", "(z^2+z+1)/z^2")
    assert proc.returncode == 3
    assert "inconclusive" in proc.stderr.lower()


def test_cli_analyze():
    proc = run_cli("analyze", "T4")
    assert proc.returncode == 0
    assert "degree: 4" in proc.stdout
    assert "chebyshev" in proc.stdout


def test_cli_batch_file(tmp_path):
    batch = tmp_path / "maps.txt"
    batch.write_text("z^2-1\nz^5\n")
    proc = run_cli("classify", "--file", str(batch))
    assert proc.returncode == 0
    assert "non_special_non_gl" in proc.stdout
    assert "power" in proc.stdout
