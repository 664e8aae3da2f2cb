from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from qpsilt.dsl import parse, render, tokenize
from qpsilt.errors import ParseError
from qpsilt.session import Session

DATA = Path(__file__).parent.parent / "src" / "qpsilt" / "data"


def test_three_cycle_file_parses():
    ws = parse((DATA / "three_cycle.qps").read_text())
    q = ws.quivers["Q3"]
    assert q.vertices == ["1", "2", "3"]
    assert [a[0] for a in q.arrows] == ["a", "b", "c"]
    assert ws.potentials["W"].poly.terms == [(Fraction(1), ("a", "b", "c"))]
    assert ws.algebras["J"].kind == "jacobian"
    assert ws.contexts["C"].summands == ["P1", "P2", "P3"]


@pytest.mark.parametrize("name", ["three_cycle.qps", "a2.qps"])
def test_bundled_files_round_trip(name):
    ws = parse((DATA / name).read_text())
    assert parse(render(ws)) == ws
    assert render(parse(render(ws))) == render(ws)


def test_empty_file():
    ws = parse("")
    assert ws.decls == [] and render(ws) == ""
    assert parse("# only a comment\n\n").decls == []


def test_keywords_are_contextual():
    ws = parse("quiver d { vertices 1 2; arrows d: 1 -> 2, degree: 2 -> 1; }")
    assert [a[0] for a in ws.quivers["d"].arrows] == ["d", "degree"]


def test_mutated_arrow_names_tokenize():
    toks = tokenize('a* "[ca]" c** -> [[a]]')
    assert [t.text for t in toks] == ["a*", "[ca]", "c**", "->", "[", "[", "a", "]", "]", ""]
    assert toks[1].quoted and not toks[0].quoted


def test_quoted_names_round_trip():
    text = ('quiver Q { vertices 1 2 3; arrows "a*": 2 -> 1, "[ca]": 3 -> 2, "degree": 1 -> 3; }\n'
            'potential W on Q = 1 * "a*" degree "[ca]";\n')
    ws = parse(text)
    assert ws.potentials["W"].poly.terms == [(Fraction(1), ("a*", "degree", "[ca]"))]
    assert '"[ca]"' in render(ws)
    assert parse(render(ws)) == ws


@pytest.mark.parametrize("text,line,col,msg", [
    ("quiver Q { vertices 1 2; arrows a: 1 -> 3; }", 1, 41, "undeclared vertex"),
    ("quiver Q { vertices 1 2;\n arrows a: 1 -> 2; }\npotential W on Q = a b;", 3, 20, "unknown arrow"),
    ("quiver Q { vertices 1 2; arrows a: 1 -> 2, b: 1 -> 2; }\npotential W on Q = a b;", 2, 20, "do not compose"),
    ("quiver Q { vertices 1 2; arrows a: 1 -> 2, b: 2 -> 1; }\npotential W on Q = a;", 2, 20, "not a cycle"),
    ("quiver Q { vertices 1; arrows ; }\nquiver Q { vertices 1; arrows ; }", 2, 1, "duplicate name"),
    ("algebra A = path(Nope);", 1, 18, "unknown quiver"),
    ("quiver Q { vertices 1 2; arrows a: 1 -> 2; }\nalgebra A = path(Q);\n"
     "complex X over A { degree -1: 2; degree 0: 1; d -1 = [[1 * a], [a]]; }", 3, 47, "must be a 1 x 1"),
    ("quiver Q { vertices 1 2; arrows a: 1 -> 2; }\nalgebra A = path(Q);\n"
     "complex X over A { degree -1: 1; degree 0: 2; d -1 = [[a]]; }", 3, 56, "does not run from"),
    ("quiver Q { vertices 1 2; arrows a: 1 -> 2 }", 1, 43, "expected"),
    ("quiver Q { vertices 1 2; arrows a: 1 -> 2; } $", 1, 46, "unexpected character"),
])
def test_errors_carry_positions(text, line, col, msg):
    with pytest.raises(ParseError) as e:
        parse(text)
    assert msg in str(e.value)
    assert (e.value.line, e.value.col) == (line, col)


def test_session_builds_objects():
    s = Session.from_file(DATA / "three_cycle.qps")
    assert s.algebra("J").dim == 6
    x = s.complex("X")
    assert x.term(-1) == (1,) and x.term(0) == (0,)
    assert s.context("C").n == 3
    assert s.algebra("J") is s.algebra("J")


coeff = st.fractions(min_value=-5, max_value=5, max_denominator=4).filter(lambda c: c != 0)
cycles = st.sampled_from(['a "[b]"', '"[b]" a', "c*", 'c* a "[b]"', 'a "[b]" c* c*'])


def _poly(terms):
    return " + ".join(f"{c.numerator}/{c.denominator} * {w}" for c, w in terms)


@given(st.lists(st.tuples(coeff, cycles), min_size=1, max_size=4),
       st.lists(st.tuples(coeff, cycles), max_size=3))
@settings(max_examples=60, deadline=None)
def test_round_trip_random_files(wterms, rterms):
    text = ('quiver Q { vertices 1 2; arrows a: 1 -> 2, "[b]": 2 -> 1, c*: 1 -> 1; }\n'
            f"potential W on Q = {_poly(wterms)};\n"
            f"algebra J = quotient(Q, [{_poly(rterms) if rterms else ''}]);\n"
            "complex X over J { degree -1: 2 1; degree 0: 1; d -1 = [[1 * a, c*]]; }\n"
            "complex Y = shift(X, -1);\ncontext C over J = X, Y;\n")
    ws = parse(text)
    assert parse(render(ws)) == ws
    assert render(parse(render(ws))) == render(ws)
