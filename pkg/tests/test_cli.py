import json
import subprocess
import sys
from fractions import Fraction as F
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

import data
from kbasis import (ParseError, PolynomialRing, RatMatrix, convex_hull, emit_svg, parse_session, run,
                    run_session)
from kbasis.cli import RunOptions
from kbasis.session import Command, PolyDecl, RingDecl

ROOT = Path(__file__).resolve().parents[1]
SESSIONS = ROOT / "demos" / "sessions"


def _cli(*args):
    return subprocess.run([sys.executable, "-m", "kbasis", *args], capture_output=True, text=True,
                          cwd=ROOT)


def test_parse_minimal():
    s = parse_session("ring R vars x y; poly p = x^3 - y^2;")
    assert len(s.statements) == 2
    assert isinstance(s.statements[0], RingDecl) and s.statements[0].variables == ("x", "y")
    p = s.statements[1]
    assert isinstance(p, PolyDecl) and p.poly == PolynomialRing(("x", "y")).parse("x^3 - y^2")


@pytest.mark.parametrize("name", ["alternating.kb", "plane_cubics.kb"])
def test_fixture_round_trip(name):
    s = parse_session((SESSIONS / name).read_text())
    again = parse_session(str(s))
    assert again == s and str(again) == str(s)


def test_alternating_fixture_content():
    s = parse_session((SESSIONS / "alternating.kb").read_text())
    orders = {st_.name: st_ for st_ in s.statements if type(st_).__name__ == "OrderDecl"}
    assert orders["M"].kind == "weight"
    assert str(orders["M"].matrix) == "[[0,2,2,3],[1,4,1,6]]"


@pytest.mark.parametrize("text, line, col", [
    ("ring R vars x y;\npoly p = x^(-1);", 2, 13),
    ("ring R vars x y;\npoly p = z;", 2, 10),
    ("ring R vars x y;\ngroebner J lex;", 2, 10),
    ("ring R vars x y;\npoly p = x;\nnormalform p;", 3, 1),
    ("ring R vars x y\npoly p = x;", 2, 1),
    ("ring lex vars x;", 1, 6),
])
def test_parse_errors(text, line, col):
    with pytest.raises(ParseError) as e:
        parse_session(text)
    assert (e.value.line, e.value.column) == (line, col)


def test_zero_ideal_groebner():
    s = parse_session("ring R vars x y; poly z = 0; ideal J = [z]; groebner J grevlex;")
    rep = run_session(s)
    assert rep["ok"]
    assert rep["reports"][0]["result"]["basis"] == []


def test_run_single_command_kernel():
    s = parse_session((SESSIONS / "alternating.kb").read_text())
    kernel = next(c for c in s.commands if c.name == "kernel")
    rep = run(s, kernel)
    gens = rep["result"]["generators"]
    assert len(gens) == 1 and gens[0]["text"] == data.ALT_F


def test_report_round_trip():
    s = parse_session((SESSIONS / "alternating.kb").read_text())
    out = run_session(s)
    R = PolynomialRing(("x1", "x2", "x3", "x4"))
    for rep in out["reports"]:
        res = rep["result"]
        if not rep["command"].startswith(("kernel", "groebner")):
            continue
        for key in ("generators", "basis"):
            for p in res.get(key, []):
                poly = R.parse(p["text"])
                terms = R.parse(" + ".join(f"({c})*{m}" for c, m in p["terms"]))
                assert poly == terms
    for rep in out["reports"]:
        res = rep["result"]
        for key in ("W", "V", "L_prime", "phi", "M"):
            if key in res:
                assert all("." not in x for row in res[key] for x in row)
                RatMatrix.from_rows([[F(x) for x in row] for row in res[key]])


def test_cubics_alg1_report():
    out = run_session(parse_session((SESSIONS / "plane_cubics.kb").read_text()))
    assert out["ok"]
    algs = [r["result"] for r in out["reports"] if r["command"].startswith("nobody-alg1")]
    assert [a["normalized_volume"] for a in algs] == ["5", "5"]
    assert algs[0]["euclidean_volume"] == "1/4" and algs[0]["lattice_det"] == "1/190"
    assert algs[1]["invariance"]["all_equal"]


def test_command_error_has_context():
    s = parse_session("ring R vars x y; poly p = x*y; ideal J = [p]; groebner J lex as G;\n"
                      "toric-lattice G;")
    out = run_session(s)
    assert not out["ok"]
    err = out["reports"][-1]["error"]
    assert "toric-lattice" in err["message"] and "line 2" in err["message"]


def test_cli_byte_stable_and_exit_codes(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    session = str(SESSIONS / "alternating.kb")
    svg = tmp_path / "svg"
    r1 = _cli("--session", session, "--out", str(a), "--svg", str(svg))
    r2 = _cli("--session", session, "--out", str(b), "--svg", str(svg))
    assert r1.returncode == r2.returncode == 0
    assert a.read_bytes() == b.read_bytes()
    assert json.loads(a.read_text())["ok"] is True
    assert sorted(p.name for p in svg.iterdir()) == ["line026_nobody-direct.svg",
                                                     "line027_nobody-alg1.svg"]
    bad = tmp_path / "bad.kb"
    bad.write_text("ring R vars x y;\npoly p = x^(-1);\n")
    r3 = _cli("--session", str(bad))
    assert r3.returncode == 2 and ":2:13:" in r3.stderr
    failing = tmp_path / "fail.kb"
    failing.write_text("ring R vars x y; poly p = x*y; ideal J = [p]; groebner J lex as G; toric-lattice G;\n")
    r4 = _cli("--session", str(failing))
    assert r4.returncode == 1


def test_emit_svg(tmp_path):
    tri = emit_svg(convex_hull([(0, 0), (1, 0), (0, 1)]), tmp_path / "t.svg").read_text()
    assert tri.count("<polygon") == 1 and tri.startswith("<svg")
    pent = emit_svg(convex_hull([tuple(map(F, v))
                                 for v in data.CUBICS_PENTAGON]), tmp_path / "p.svg").read_text()
    for label in ("(0, 3)", "(3, 0)", "(1/2, 3/2)", "(4/3, 1/3)"):
        assert label in pent
    V = convex_hull([tuple(map(F, c)) for c in zip(*data.CUBICS_V)])
    vs = emit_svg(V, tmp_path / "v.svg").read_text()
    assert vs.count("font-size") == 5 and "(-91/95, 68/95)" in vs
    with pytest.raises(ValueError):
        emit_svg(convex_hull([(0, 0, 0), (1, 0, 0)]), tmp_path / "x.svg")


# random sessions: declarations and commands built from a small vocabulary
_names = st.sampled_from(["a", "b", "c", "u1", "v2", "w_3"])


@st.composite
def _sessions(draw):
    nv = draw(st.integers(1, 3))
    vars_ = draw(st.lists(_names, min_size=nv, max_size=nv, unique=True))
    lines = [f"ring R vars {' '.join(vars_)};"]
    polys = []
    for i in range(draw(st.integers(1, 3))):
        terms = []
        for _ in range(draw(st.integers(1, 3))):
            c = draw(st.integers(0, 9))
            d = draw(st.integers(1, 4))
            v = draw(st.sampled_from(vars_))
            e = draw(st.integers(0, 3))
            sign = draw(st.sampled_from(["+", "-"]))
            terms.append(f"{sign} {c}/{d}*{v}^{e}")
        body = " ".join(terms)
        lines.append(f"poly p{i} = {body[2:] if body[0] == '+' else body};")
        polys.append(f"p{i}")
    lines.append(f"ideal J = [{', '.join(polys)}];")
    order = draw(st.sampled_from(["lex", "grlex", "grevlex", "W"]))
    if order == "W":
        row = ",".join(str(draw(st.integers(1, 5))) for _ in vars_)
        lines.append(f"order W weight [[{row}]] tiebreak grevlex;")
    lines.append(f"groebner J {order} as G;")
    lines.append("normalform p0 G;")
    if draw(st.booleans()):
        lines.append(f"subduct p0 [{', '.join(polys)}] {order};")
    return "\n".join(lines) + "\n"


@settings(max_examples=200)
@given(_sessions())
def test_random_session_round_trip(text):
    s = parse_session(text)
    assert parse_session(str(s)) == s
    assert str(parse_session(str(s))) == str(s)
    assert isinstance(s.commands[0], Command)


def test_run_options_recorded():
    out = run_session(parse_session("ring R vars x; poly z = 0; ideal J = [z]; groebner J lex;"),
                      RunOptions(degree_bound=4, seed=9))
    assert out["defaults"]["degree_bound"] == 4 and out["defaults"]["seed"] == 9
