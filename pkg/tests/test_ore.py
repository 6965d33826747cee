import pytest
from hypothesis import given
from hypothesis import strategies as st

from qskew.coeff import ONE, Q, QHAT, QINV, qpow
from qskew.model import R5, R6, RBAR, U, X, ore_presentation, presentation, serre_generator, weight
from qskew.ore import (InvalidPresentation, NonInvertibleGenerator, OrePresentation, PBWElement,
                       PresentationMismatch, is_confluent, overlap_defects, pbw_commutator,
                       pbw_mul, qcommute_exponent, reduce_words)
from strategies import u_elements

X1, X2, X3, X4, X5, X6 = (X(i) for i in range(1, 7))


def test_normal_form_examples():
    assert U.normal_form([(4, 1), (1, 1)]) == (X1 * X4).scale(Q) - X2.scale(Q)
    assert U.normal_form([(5, 1), (2, 1)]) == X2 * X5 - (X3 * X4).scale(QHAT)
    assert U.normal_form([(1, 1), (1, 1)]) == U.gen(1, 2)


def test_product_examples():
    assert pbw_mul(X2, X5) == U.monomial((0, 1, 0, 0, 1, 0))
    e1, e2 = serre_generator(1), serre_generator(2)
    assert e1 * e2 - (e2 * e1).scale(QINV) == X2


def test_localized_product():
    A = ore_presentation("Z", {4, 5, 6})
    z4inv, z1 = A.gen(4, -1), A.gen(1)
    assert z4inv * z1 == (A.monomial((1, 0, 0, -1, 0, 0), QINV)
                          + A.monomial((0, 1, 0, -2, 0, 0), Q))


def test_commutator_examples():
    assert pbw_commutator(serre_generator(1), serre_generator(3)).is_zero()
    a = X1 * X5 - X3.scale(qpow(2))
    assert pbw_commutator(a, a).is_zero()
    assert pbw_commutator(X6, X4) == (X4 * X6).scale(Q - ONE) - X5.scale(Q)


def test_qcommute_examples():
    from qskew.model import delta
    assert qcommute_exponent(serre_generator(1), delta(1)) == 1
    assert qcommute_exponent(serre_generator(2), delta(2)) == 0
    assert qcommute_exponent(serre_generator(1), serre_generator(2)) is None
    with pytest.raises(ValueError):
        qcommute_exponent(U.zero(), X1)


def test_errors():
    with pytest.raises(NonInvertibleGenerator):
        U.normal_form([(1, -1)])
    with pytest.raises(NonInvertibleGenerator):
        U.monomial((0, 0, 0, 0, 0, -1))
    with pytest.raises(PresentationMismatch):
        X1 * presentation(6).gen(1)


def test_presentation_validation():
    lam = {(2, 1): 1}
    with pytest.raises(InvalidPresentation):
        OrePresentation(2, {})
    with pytest.raises(InvalidPresentation):  # degree grows
        OrePresentation(2, lam, {(2, 1): {(2, 1): ONE}})
    with pytest.raises(InvalidPresentation):  # inverse of a non-tail generator
        OrePresentation(2, lam, {(2, 1): {(-1, 0): ONE}})
    with pytest.raises(InvalidPresentation):  # invertible pair with a correction
        OrePresentation(2, lam, {(2, 1): {(0, 0): ONE}}, invertible={1, 2})


def test_quantum_weyl_algebra():
    # X2 X1 = q X1 X2 + 1, an independent small instance
    A = OrePresentation(2, {(2, 1): 1}, {(2, 1): {(0, 0): ONE}})
    x1, x2 = A.gens()
    assert is_confluent(A)
    # X2^2 X1 = q^2 X1 X2^2 + (q + 1) X2
    assert x2 * x2 * x1 == A.monomial((1, 2), qpow(2)) + A.monomial((0, 1), Q + ONE)


@pytest.mark.parametrize("pres", [U, R6, R5, RBAR] + [presentation(r) for r in (6, 5, 4)],
                         ids=lambda p: p.name)
def test_confluence(pres):
    assert overlap_defects(pres) == []


def test_corrupted_presentation_detected():
    lam = dict(U.lambdas)
    lam[(4, 1)] = 2
    bad = OrePresentation(6, lam, U.corrections)
    defects = overlap_defects(bad)
    assert defects
    (i, j, k), diff = defects[0]
    assert i < j < k and not diff.is_zero()


def test_serre_relations_vanish():
    e1, e2, e3 = (serre_generator(i) for i in (1, 2, 3))
    qq = Q + QINV
    assert (e1 * e3 - e3 * e1).is_zero()
    for a, b in ((e1, e2), (e2, e1), (e2, e3), (e3, e2)):
        assert (a * a * b - (a * b * a).scale(qq) + b * a * a).is_zero()


words = st.lists(st.integers(1, 6), max_size=6)


@given(words)
def test_normal_form_matches_word_rewriting(w):
    fast = U.normal_form([(i, 1) for i in w])
    slow = PBWElement(U, reduce_words(U, {tuple(w): ONE}))
    assert fast == slow


@given(u_elements())
def test_normal_form_idempotent(u):
    for e, c in u.terms.items():
        word = [(i + 1, k) for i, k in enumerate(e) if k]
        assert U.normal_form(word) == U.monomial(e)


@given(u_elements(), u_elements(), u_elements())
def test_associativity(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(st.lists(st.tuples(st.integers(1, 6), st.sampled_from((1, -1))), max_size=5))
def test_localized_associativity(word):
    A = presentation(4)
    w = [(i, s if i >= 4 else 1) for i, s in word]
    left = A.one()
    for i, s in w:
        left = left * A.gen(i, s)
    right = A.one()
    for i, s in reversed(w):
        right = A.gen(i, s) * right
    assert left == right == A.normal_form(w)


@given(st.lists(st.integers(1, 6), min_size=1, max_size=3),
       st.lists(st.integers(1, 6), min_size=1, max_size=3))
def test_grading_compatibility(w1, w2):
    a, b = U.normal_form([(i, 1) for i in w1]), U.normal_form([(i, 1) for i in w2])
    wa, wb = weight(a), weight(b)
    assert wa is not None and wb is not None
    prod = a * b
    if not prod.is_zero():
        assert weight(prod) == tuple(x + y for x, y in zip(wa, wb))
