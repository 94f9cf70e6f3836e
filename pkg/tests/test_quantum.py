"""Quantum torus arithmetic and quantum seed mutation."""

import random

import pytest

from mwb.cartanweyl import WeylWord, affine_sl2_cartan, gamma_weights
from mwb.errors import BadInput, FrozenVertex, Incompatible, NotDivisible
from mwb.exactalg import LaurentPoly
from mwb.quantum import (
    AFFINE_W4_HOMDIMS,
    QuantumSeed,
    QuantumTorusElement,
    affine_w4_quantum_seed,
    hom_pairing,
    left_divide,
    normalized_monomial,
    q_power,
    quantum_mutate,
    skew_from_homdims,
    specialize_q1,
    torus_mul,
)
from mwb.seeds import Seed, certify_laurent, mutate_seed

H = AFFINE_W4_HOMDIMS
L = skew_from_homdims(H)
YN = ("Y1", "Y2", "Y3", "Y4")
AFF = affine_sl2_cartan()


def Y(i):
    return QuantumTorusElement.generator(YN, i)


def test_commutation_matrix_golden():
    assert L == (
        (0, -2, -2, -4),
        (2, 0, 0, -2),
        (2, 0, 0, -4),
        (4, 2, 4, 0),
    )
    assert all(L[i][j] == -L[j][i] for i in range(4) for j in range(4))


def test_homdims_euler_form():
    # [V_i,V_j] + [V_j,V_i] agrees with the Cartan pairing of the gamma
    # weights, the independent oracle for the fixture
    gs = [g.coords for g in gamma_weights(AFF, WeylWord((1, 2, 1, 2)))]
    c = AFF.entries
    for i in range(4):
        for j in range(4):
            pairing = sum(
                gs[i][a] * c[a][b] * gs[j][b] for a in range(2) for b in range(2)
            )
            assert H[i][j] + H[j][i] == pairing


def test_skew_rejects_negative():
    with pytest.raises(BadInput):
        skew_from_homdims(((1, -1), (0, 1)))


def test_normalized_monomial_basics():
    for i in range(1, 5):
        e = tuple(1 if j == i - 1 else 0 for j in range(4))
        assert normalized_monomial(e, H) == Y(i)
    got = normalized_monomial((2, 0, 0, 0), H)
    assert got == QuantumTorusElement.monomial(YN, (2, 0, 0, 0), q_power(-1))


def test_torus_mul_commutation():
    lhs = torus_mul(Y(1), Y(2), L)
    rhs = torus_mul(Y(2), Y(1), L).scale(q_power(-2))
    assert lhs == rhs
    x = torus_mul(Y(3), Y(4), L) + Y(1).scale(q_power(5))
    assert torus_mul(x, QuantumTorusElement.one(YN), L) == x


def test_torus_mul_associative():
    rng = random.Random(712)
    for _ in range(15):
        xs = [
            QuantumTorusElement.monomial(
                YN,
                tuple(rng.randint(-2, 2) for _ in range(4)),
                q_power(rng.randint(-2, 2)),
            )
            + Y(rng.randint(1, 4))
            for _ in range(3)
        ]
        a, b, c = xs
        assert torus_mul(torus_mul(a, b, L), c, L) == torus_mul(a, torus_mul(b, c, L), L)


def test_normalized_product_rule():
    # Y_R Y_S = q^{[R,S]} Y_{R+S} = q^{[R,S]-[S,R]} Y_S Y_R
    rng = random.Random(808)
    for _ in range(25):
        r = tuple(rng.randint(0, 3) for _ in range(4))
        s = tuple(rng.randint(0, 3) for _ in range(4))
        yr, ys = normalized_monomial(r, H), normalized_monomial(s, H)
        rs = hom_pairing(r, s, H)
        combined = normalized_monomial(tuple(a + b for a, b in zip(r, s)), H)
        assert torus_mul(yr, ys, L) == combined.scale(q_power(rs))
        assert torus_mul(yr, ys, L) == torus_mul(ys, yr, L).scale(
            q_power(rs - hom_pairing(s, r, H))
        )


def test_left_divide_roundtrip():
    rng = random.Random(99)
    for _ in range(20):
        a = QuantumTorusElement.monomial(
            YN, tuple(rng.randint(-2, 2) for _ in range(4)), q_power(rng.randint(-2, 2))
        )
        z = QuantumTorusElement.zero(YN)
        for _ in range(rng.randint(1, 3)):
            z = z + QuantumTorusElement.monomial(
                YN, tuple(rng.randint(-2, 2) for _ in range(4)), q_power(rng.randint(-3, 3))
            )
        if z.is_zero():
            continue
        b = torus_mul(a, z, L)
        assert left_divide(a, b, L) == z


def test_left_divide_failure():
    with pytest.raises(NotDivisible):
        left_divide(Y(1) + Y(2), Y(1), L)
    with pytest.raises(NotDivisible):
        left_divide(QuantumTorusElement.zero(YN), Y(1), L)


def test_quantum_exchange_golden_vertex_1():
    s = affine_w4_quantum_seed()
    m1 = quantum_mutate(s, 1)
    prod = torus_mul(s.vars[0], m1.vars[0], s.lam)
    want = QuantumTorusElement.monomial(YN, (0, 2, 0, 0), q_power(-2)) + Y(3)
    assert prod == want
    assert m1.vars[0].to_text() == "q^-2*Y1^-1*Y2^2 + Y1^-1*Y3"


def test_quantum_exchange_golden_vertex_2():
    s = affine_w4_quantum_seed()
    m2 = quantum_mutate(quantum_mutate(s, 1), 2)
    t1 = quantum_mutate(s, 1).vars[0]
    prod = torus_mul(s.vars[1], m2.vars[1], s.lam)
    want = torus_mul(t1, t1, s.lam).scale(q_power(-2)) + Y(4)
    assert prod == want


def test_quantum_mutation_involutive():
    s = affine_w4_quantum_seed()
    for k in (1, 2):
        assert quantum_mutate(quantum_mutate(s, k), k) == s
    m1 = quantum_mutate(s, 1)
    assert quantum_mutate(quantum_mutate(m1, 2), 2) == m1


def test_quantum_mutation_frozen_and_range():
    s = affine_w4_quantum_seed()
    with pytest.raises(FrozenVertex):
        quantum_mutate(s, 3)
    with pytest.raises(BadInput):
        quantum_mutate(s, 5)


def test_incompatible_homdims_detected():
    # a hom matrix whose skew part disagrees with the ambient commutation
    # matrix fails the q-commutation postcondition
    s = affine_w4_quantum_seed()
    eye = tuple(tuple(1 if i == j else 0 for j in range(4)) for i in range(4))
    bad = QuantumSeed(s.quiver, eye, s.lam, s.vars)
    with pytest.raises(Incompatible):
        quantum_mutate(bad, 1)


def test_specialize_q1_basics():
    x = QuantumTorusElement.monomial(YN, (0, 2, 0, 0), q_power(-2)) + Y(3)
    assert specialize_q1(x) == LaurentPoly.from_text(YN, "Y2^2 + Y3")
    assert specialize_q1(QuantumTorusElement.zero(YN)).is_zero()


def test_q1_matches_classical_mutation_path():
    squant = affine_w4_quantum_seed()
    sclass = Seed.initial(squant.quiver, YN)
    for k in (1, 2, 1, 2):
        squant = quantum_mutate(squant, k)
        sclass = mutate_seed(sclass, k)
        assert squant.quiver == sclass.quiver
        for qv, cv in zip(squant.vars, sclass.vars):
            assert specialize_q1(qv) == certify_laurent(cv)


def test_quantum_seed_json():
    s = quantum_mutate(affine_w4_quantum_seed(), 1)
    data = s.to_json()
    assert data["lambda"][0] == [0, -2, -2, -4]
    assert data["homdims"][0][0] == 1
    assert data["variables"][0][0]["exps"] == [-1, 2, 0, 0]
    assert data["variables"][0][0]["coeff"] == "q^-2"
