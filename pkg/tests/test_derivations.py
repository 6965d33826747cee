import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qskew.derivations import (MU_RELATIONS, DerivationSpec, IllFormedDerivation,
                               apply, check_derivation, decompose_full, extend_to_torus,
                               weight_derivation, z2_multiplier)
from qskew.model import U, delta, embed_in_torus, serre_generator, weight, z1, z2
from qskew.sampling import random_derivation_data
from qskew.torus import CAUCHON_TORUS, TorusDerivation, check_torus_derivation
from strategies import u_elements

T = CAUCHON_TORUS
X = [None] + [U.gen(i) for i in range(1, 7)]
e1, e2, e3 = (serre_generator(i) for i in (1, 2, 3))
D1, D4, D6 = (weight_derivation(i) for i in (1, 4, 6))
BAD = DerivationSpec([e2, U.zero(), U.zero()])

# which X_j each weight derivation fixes (the others are killed)
FIXED = {1: {1, 2, 3}, 4: {2, 3, 4, 5}, 6: {3, 5, 6}}


def test_check_derivation_examples():
    assert check_derivation(D1)
    assert check_derivation(DerivationSpec.inner(X[2]))
    assert not check_derivation(BAD)
    assert check_derivation(DerivationSpec.zero())


@pytest.mark.parametrize("i", [1, 4, 6])
def test_weight_derivation_table(i):
    D = weight_derivation(i)
    for j in range(1, 7):
        assert apply(D, X[j]) == (X[j] if j in FIXED[i] else U.zero()), (i, j)


def test_apply_examples():
    assert apply(D1, X[2]) == X[2]
    assert apply(D4, X[3]) == X[3]
    assert apply(D1, X[5]).is_zero()
    assert apply(D6, X[6]) == X[6]
    assert apply(D4, U.one()).is_zero()
    # Leibniz over Delta2 = X2 X5 - q X3 X4 with D4 fixing all four factors
    assert apply(D4, delta(2)) == delta(2).scale(2)
    with pytest.raises(IllFormedDerivation):
        apply(BAD, X[1])
    with pytest.raises(IllFormedDerivation):
        extend_to_torus(BAD)
    with pytest.raises(IndexError):
        weight_derivation(2)


def test_extend_to_torus_examples():
    z = T.zero()
    assert extend_to_torus(D1).images == [T.gen(1), T.gen(2), T.gen(3), z, z, z]
    assert extend_to_torus(D6).images == [z, z, T.gen(3), z, T.gen(5), T.gen(6)]
    ad = extend_to_torus(DerivationSpec.inner(e1))
    assert ad == TorusDerivation.inner(embed_in_torus(e1))
    assert check_torus_derivation(ad)


def test_decompose_examples():
    res = decompose_full(DerivationSpec.inner(e2))
    assert res.x == e2 and all(m.is_zero() for m in res.coordinates)

    res = decompose_full(D1 + DerivationSpec.inner(X[2]))
    assert res.x == X[2]
    assert res.coordinates == (U.one(), U.zero(), U.zero())

    res = decompose_full(D4.times(3) + D6.times(z2()))
    assert res.x.is_zero()
    assert res.coordinates == (U.zero(), U.scalar(3), z2())


def test_decompose_zero_and_pure():
    res = decompose_full(DerivationSpec.zero())
    assert res.x.is_zero() and all(m.is_zero() for m in res.mus)
    for k, D in enumerate((D1, D4, D6)):
        res = decompose_full(D)
        assert res.x.is_zero()
        assert res.coordinates == tuple(U.one() if s == k else U.zero() for s in range(3))


def test_decompose_rejects_ill_formed():
    with pytest.raises(IllFormedDerivation):
        decompose_full(BAD)


def test_canonical_x_drops_constants():
    res = decompose_full(DerivationSpec.inner(X[1] + U.scalar(5)))
    assert res.x == X[1]


def test_z2_multiplier_examples():
    assert z2_multiplier(D4) == U.scalar(2)
    assert z2_multiplier(DerivationSpec.inner(X[1] * X[5])).is_zero()
    assert z2_multiplier(D1) == U.one()
    assert z2_multiplier(D6) == U.one()


def test_spec_validation():
    with pytest.raises(ValueError):
        DerivationSpec([e1, e2])
    D = DerivationSpec([e1, 0, 0])
    assert D == D1


# -- properties --------------------------------------------------------------------

@settings(max_examples=15)
@given(st.integers(0, 2 ** 32))
def test_random_decomposition_round_trip(seed):
    rng = random.Random(seed)
    x, p1, p4, p6 = random_derivation_data(rng)
    D = DerivationSpec.inner(x) + D1.times(p1) + D4.times(p4) + D6.times(p6)
    res = decompose_full(D)
    assert res.x == x - U.scalar(x.constant_term())
    assert res.coordinates == (p1, p4, p6)
    for _, lhs, (a, b) in MU_RELATIONS:
        assert res.mus[lhs - 1] == res.mus[a - 1] + res.mus[b - 1]
    z = z2_multiplier(D)
    assert apply(D, z2()) == z * z2()
    assert res.reconstruct() == D


@given(u_elements(degree=3), u_elements(degree=3))
def test_leibniz_rule(u, v):
    D = DerivationSpec.inner(X[2]) + D6.times(z1())
    assert apply(D, u * v) == apply(D, u) * v + u * apply(D, v)
    assert apply(D, u + v) == apply(D, u) + apply(D, v)


@given(st.lists(st.integers(1, 6), min_size=1, max_size=4))
def test_weight_derivations_read_weights(word):
    u = U.normal_form([(i, 1) for i in word])
    w = weight(u)
    for k, D in enumerate((D1, D4, D6)):
        assert apply(D, u) == u.scale(w[k])


@settings(max_examples=30)
@given(u_elements(degree=3))
def test_inner_derivations_are_well_defined(x):
    D = DerivationSpec.inner(x)
    assert check_derivation(D)
    assert apply(D, e1) == x * e1 - e1 * x
