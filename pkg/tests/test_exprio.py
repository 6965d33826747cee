import json
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qskew.coeff import ONE, Q, QHAT
from qskew.exprio import (ContextViolation, ExprSyntaxError, MalformedDocument, UnknownSymbol,
                          dumps, evaluate_text, load, loads, parse_expr, render_ast,
                          save)
from qskew.exprio.documents import load_file, save_file
from qskew.exprio.parser import Gen, Power, Product, QInt, QSym, Rational, Sum
from qskew.derivations import DerivationSpec, decompose_full, weight_derivation
from qskew.model import U, delta, ore_presentation, presentation, z2
from qskew.ore import OrePresentation, PBWElement
from qskew.sampling import random_element, random_laurent_coeff
from qskew.torus import CAUCHON_TORUS, TorusElement
from strategies import big_coeffs, level_elements, torus_elements, u_elements

X1, X2, X3, X4, X5, X6 = (U.gen(i) for i in range(1, 7))


# -- parsing ----------------------------------------------------------------------

def test_parse_delta2_formula():
    ast = parse_expr("X2*X5 - q X3 X4")
    assert ast == Sum(((1, Product((Gen("X2"), Gen("X5")))),
                       (-1, Product((QSym(), Gen("X3"), Gen("X4"))))))


def test_parse_delta3_t_form():
    assert parse_expr("qhat^2 T1 T4 T6") == Product(
        (Power(QSym(True), 2), Gen("T1"), Gen("T4"), Gen("T6")))


def test_parse_scalar_times_power():
    assert parse_expr("(3/2) e1^2") == Product((Rational(3, 2), Power(Gen("e1"), 2)))


def test_parse_misc():
    assert parse_expr("  -X1") == Sum(((-1, Gen("X1")),))
    assert parse_expr("qint(3)") == QInt(3)
    assert parse_expr("X1*X2") == parse_expr("X1 X2")
    assert parse_expr("T4^-2") == Power(Gen("T4"), -2)


NEGATIVE_CORPUS = [
    ("(X1 + X2", 8),
    ("X1 + X2)", 7),
    ("X1^(1/2)", 3),
    ("X1^1/2", 4),
    ("X7", 0),
    ("foo * X1", 0),
    ("X1 + ", 5),
    ("3/0 X1", 2),
    ("X1 & X2", 3),
    ("qint(x)", 5),
    ("X1^", 3),
    ("", 0),
]


@pytest.mark.parametrize("text,pos", NEGATIVE_CORPUS)
def test_negative_corpus(text, pos):
    with pytest.raises(ExprSyntaxError) as info:
        parse_expr(text)
    assert info.value.pos == pos
    assert info.value.line == 1 and info.value.column == pos + 1
    assert "column" in str(info.value)


def test_error_position_multiline():
    with pytest.raises(UnknownSymbol) as info:
        parse_expr("X1 +\n  Q2")
    assert (info.value.line, info.value.column) == (2, 3)


def test_syntax_errors_are_syntax_errors():
    assert issubclass(ExprSyntaxError, SyntaxError)
    assert issubclass(UnknownSymbol, ExprSyntaxError)


GENERATORS = (["e1", "e2", "e3", "Delta1", "Delta2", "Delta3", "z1", "z2"]
              + [f"{b}{i}" for b in "XYZT" for i in range(1, 7)])

atoms = st.one_of(
    st.builds(Rational, st.integers(0, 50), st.integers(1, 9)).map(
        lambda r: Rational(Fraction(r.num, r.den).numerator, Fraction(r.num, r.den).denominator)),
    st.builds(QSym, st.booleans()),
    st.builds(QInt, st.integers(0, 5)),
    st.sampled_from(GENERATORS).map(Gen),
)


def _extend(children):
    powers = st.builds(Power, children, st.integers(-3, 3))
    products = st.lists(children, min_size=2, max_size=3).map(lambda fs: Product(tuple(fs)))
    sums = st.one_of(
        st.lists(st.tuples(st.sampled_from((1, -1)), children), min_size=2, max_size=3),
        children.map(lambda c: [(-1, c)]),
    ).map(lambda ts: Sum(tuple(ts)))
    return st.one_of(powers, products, sums)


asts = st.recursive(atoms, _extend, max_leaves=8)


@given(asts)
def test_render_parse_round_trip(ast):
    text = render_ast(ast)
    assert parse_expr(text) == ast
    assert render_ast(parse_expr(text)) == text


# -- evaluation ---------------------------------------------------------------------

def test_evaluate_examples():
    assert evaluate_text("e1*e3 - e3*e1").is_zero()
    assert evaluate_text("Delta1") == X3
    t4inv = evaluate_text("T4^-1", "torus")
    assert isinstance(t4inv, TorusElement)
    assert t4inv == CAUCHON_TORUS.gen(4, -1)
    assert t4inv * CAUCHON_TORUS.gen(4) == CAUCHON_TORUS.one()


def test_evaluate_formulas():
    assert evaluate_text("X2*X5 - q X3 X4") == delta(2)
    assert evaluate_text("Delta2") == z2()
    assert evaluate_text("(3/2) e1^2") == X1.scale(Fraction(3, 2)) * X1
    assert evaluate_text("qint(2)") == U.scalar(Q + Q.inverse())
    assert evaluate_text("qhat") == U.scalar(QHAT)
    # q X1 X4 - q X2 is X4 X1
    assert evaluate_text("X4*X1") == evaluate_text("q X1 X4 - q X2")


def test_evaluate_contexts():
    with pytest.raises(ContextViolation):
        evaluate_text("T4^-1", 7)
    with pytest.raises(ContextViolation):
        evaluate_text("X1^-1", 7)
    with pytest.raises(ContextViolation):
        evaluate_text("Z4^-1", 5)
    assert evaluate_text("T4^-1", 4) == presentation(4).gen(4, -1)
    y6inv = evaluate_text("Y6^-1", 6)
    assert y6inv.pres == presentation(6)
    # symbols from another basis are rewritten into the context's basis
    assert evaluate_text("X2", 6) == evaluate_text("Y2 + q qhat^-1 Y3 Y6^-1", 6)
    assert evaluate_text("Delta2", 4) == evaluate_text("T2 T5", 4)


def test_evaluate_scalar_inverse():
    assert evaluate_text("(q + 1)^-1 X1") == X1.scale((Q + ONE).inverse())
    with pytest.raises(ZeroDivisionError):
        evaluate_text("(q - q)^-1")


def test_evaluate_non_monomial_inverse():
    with pytest.raises(ContextViolation):
        evaluate_text("(T1 + T2)^-1", "torus")


# -- documents ----------------------------------------------------------------------

def test_save_x1():
    doc = save(X1)
    assert doc["schema"] == 1 and doc["kind"] == "element" and doc["basis"] == "X"
    assert doc["terms"] == [{"exp": [1, 0, 0, 0, 0, 0], "num": [[0, "1"]], "den": [[0, "1"]]}]


def test_save_delta2():
    terms = {tuple(t["exp"]): (t["num"], t["den"]) for t in save(delta(2))["terms"]}
    assert terms == {(0, 1, 0, 0, 1, 0): ([[0, "1"]], [[0, "1"]]),
                     (0, 0, 1, 1, 0, 0): ([[1, "-1"]], [[0, "1"]])}


def test_random_round_trip():
    rng = random.Random(7)
    for _ in range(30):
        u = random_element(rng, 4)
        assert load(save(u)) == u
        assert loads(dumps(save(u))) == u
        assert dumps(save(loads(dumps(save(u))))) == dumps(save(u))


@given(u_elements(degree=4))
def test_element_round_trip(u):
    assert loads(dumps(save(u))) == u


@given(level_elements(4))
def test_localized_round_trip(u):
    back = loads(dumps(save(u)))
    assert back == u and back.pres == u.pres


@given(torus_elements())
def test_torus_round_trip(t):
    assert loads(dumps(save(t))) == t


@given(big_coeffs(), st.tuples(*[st.integers(-3, 3)] * 6))
def test_big_coefficients_round_trip(c, g):
    t = CAUCHON_TORUS.monomial(g, c)
    text = dumps(save(t))
    back = loads(text)
    assert back == t
    assert back.coefficient(g).num.coeffs == c.num.coeffs
    assert dumps(save(back)) == text


def test_random_laurent_coeffs_round_trip():
    rng = random.Random(3)
    for _ in range(20):
        c = random_laurent_coeff(rng)
        u = U.monomial((1, 0, 2, 0, 0, 1), c)
        assert loads(dumps(save(u))) == u


def test_unlocalized_presentation_element_round_trip():
    A = ore_presentation("Z", {4, 5, 6})
    u = A.gen(4, -2) * A.gen(1)
    doc = save(u)
    assert doc["invertible"] == [4, 5, 6]
    assert load(doc) == u


def test_presentation_round_trip(tmp_path):
    for pres in (U, presentation(5), OrePresentation(2, {(2, 1): 1}, {(2, 1): {(0, 0): ONE}})):
        back = loads(dumps(save(pres)))
        assert back == pres
    path = tmp_path / "u.json"
    save_file(U, path)
    assert load_file(path) == U


def test_derivation_and_decomposition_round_trip():
    D = weight_derivation(4).times(3) + DerivationSpec.inner(X2)
    assert loads(dumps(save(D))) == D
    res = decompose_full(D)
    back = loads(dumps(save(res)))
    assert back.x == res.x and back.coordinates == res.coordinates
    assert back.mus == res.mus and back.mu_polys == res.mu_polys


def test_dumps_is_deterministic():
    assert dumps(save(delta(3))) == dumps(save(delta(3)))
    assert json.loads(dumps(save(delta(3)))) == save(delta(3))


@pytest.mark.parametrize("doc,path", [
    ([], "$"),
    ({"kind": "element"}, "$.schema"),
    ({"schema": 1, "kind": "cake"}, "$.kind"),
    ({"schema": 1, "kind": "element", "basis": "W", "terms": []}, "$.basis"),
    ({"schema": 1, "kind": "element", "basis": "X", "terms": {}}, "$.terms"),
    ({"schema": 1, "kind": "element", "basis": "X",
      "terms": [{"exp": [1, 0, 0], "num": [[0, "1"]], "den": [[0, "1"]]}]}, "$.terms[0].exp"),
    ({"schema": 1, "kind": "element", "basis": "X",
      "terms": [{"exp": [1, 0, 0, 0, 0, 0], "num": [[0, 1]], "den": [[0, "1"]]}]},
     "$.terms[0].num[0][1]"),
    ({"schema": 1, "kind": "element", "basis": "X",
      "terms": [{"exp": [1, 0, 0, 0, 0, 0], "num": [[0, "1"]], "den": []}]}, "$.terms[0].den"),
    ({"schema": 1, "kind": "element", "basis": "X",
      "terms": [{"exp": [-1, 0, 0, 0, 0, 0], "num": [[0, "1"]], "den": [[0, "1"]]}]},
     "$.terms[0].exp"),
    ({"schema": 1, "kind": "element", "basis": "X",
      "terms": [{"exp": [1, 0, 0, 0, 0, 0], "den": [[0, "1"]]}]}, "$.terms[0].num"),
])
def test_malformed_documents(doc, path):
    with pytest.raises(MalformedDocument) as info:
        load(doc)
    assert info.value.path == path


def test_malformed_json_text():
    with pytest.raises(MalformedDocument):
        loads("{not json")
