from fractions import Fraction
import random

import pytest

from biquad.arith import squarefree_check
from biquad.biquadratic import (
    BiquadField,
    ClassTag,
    biq_mul,
    classify_field,
    embed_quad,
    reference_pairs,
    require_integral,
    residue_basis,
    to_integral_coords,
    trace_to_subfield,
    verify_basis,
)
from biquad.errors import DomainError, PreconditionError, VerificationError
from biquad.quadratic import QuadElem

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)

# one field for each basis class
REPRESENTATIVES = {
    ClassTag.A_I: (-3, -7),
    ClassTag.A_II: (-3, -2),
    ClassTag.A_III: (-2, -1),
    ClassTag.A_IV: (-1, -5),
    ClassTag.B_I: (-3, 5),
    ClassTag.B_II: (-3, 2),
    ClassTag.B_III: (-2, 3),
    ClassTag.B_IV: (-1, 3),
    ClassTag.C_12: (5, -6),
}


def _radicands(limit):
    return [r for r in range(-limit, limit + 1) if r not in (0, 1) and squarefree_check(r)[0]]


def _complex_pairs(limit):
    rs = _radicands(limit)
    return [(a, b) for i, a in enumerate(rs) for b in rs[i + 1 :] if a < 0 or b < 0]


def test_classify_b_i_basis():
    K = classify_field(-3, 5)
    assert K.class_tag == ClassTag.B_I
    assert (K.r1, K.r2, K.r3) == (-3, 5, -15)
    assert K.basis == (
        (1, 0, 0, 0),
        (HALF, HALF, 0, 0),
        (HALF, 0, HALF, 0),
        (QUARTER, QUARTER, -3 * QUARTER, QUARTER),
    )


def test_classify_c_12_basis():
    K = classify_field(5, -6)
    assert K.class_tag == ClassTag.C_12
    assert (K.r1, K.r2, K.r3) == (5, -6, -30)
    assert K.basis[2] == (0, 0, 1, 0)
    assert K.basis[3] == (0, 0, HALF, HALF)


@pytest.mark.parametrize("tag, pair", sorted(REPRESENTATIVES.items(), key=lambda item: item[0].value))
def test_representatives(tag, pair):
    K = classify_field(*pair)
    assert K.class_tag == tag
    assert set(K.radicands) >= set(pair)


@pytest.mark.parametrize("pair", [(-3, 5), (5, -3), (-3, -15), (-15, -3), (5, -15), (-15, 5)])
def test_presentation_does_not_depend_on_input_order(pair):
    K = classify_field(*pair)
    assert K == classify_field(-3, 5)
    assert (K.r1, K.r2, K.class_tag) == (-3, 5, ClassTag.B_I)


@pytest.mark.parametrize(
    "r1, r2, message",
    [
        (4, -3, "radicand 4 not squarefree"),
        (2, 3, "totally real"),
        (-3, -3, "distinct"),
        (1, -3, "not allowed"),
        (0, -3, "not allowed"),
    ],
)
def test_classify_rejects(r1, r2, message):
    with pytest.raises(DomainError, match=message):
        classify_field(r1, r2)


def test_classification_is_total():
    tags = set()
    for r1, r2 in _complex_pairs(50):
        K = classify_field(r1, r2)
        tags.add(K.class_tag)
        assert K.r1 * K.r2 < 0 or (K.r1 < 0 and K.r2 < 0)
        assert classify_field(r2, r1) == K
        assert classify_field(K.r1, K.r3) == K
    assert tags == set(ClassTag)


def test_classification_is_idempotent():
    for r1, r2 in _complex_pairs(20):
        K = classify_field(r1, r2)
        assert classify_field(K.r1, K.r2) == K


def test_omega_three_is_consistent():
    for r1, r2 in _complex_pairs(20):
        K = classify_field(r1, r2)
        w3 = (K.omega(1) * K.omega(2)).scale(Fraction(1, K.d))
        assert w3 == K.omega(3)
        assert w3 * w3 == K.constant(K.r3)


def test_structure_constants_are_integral_with_integral_traces():
    for pair in REPRESENTATIVES.values():
        K = classify_field(*pair)
        for row in K.structure_constants:
            for product in row:
                assert all(isinstance(c, int) for c in product)
        for b in K.basis_elements():
            for which in (1, 2, 3):
                assert trace_to_subfield(b, which).is_integral()


def test_verify_basis_rejects_a_sublattice():
    K = classify_field(-3, 5)
    doubled = (K.basis[0], K.basis[1], K.basis[2], tuple(2 * c for c in K.basis[3]))
    bad = BiquadField(K.r1, K.r2, K.class_tag, doubled)
    with pytest.raises(VerificationError):
        verify_basis(bad)


def test_residue_basis_quarter_vector():
    K = classify_field(-3, 5)
    fourth = residue_basis(K.r1, K.r2, -3, 5)[3]
    assert fourth == (QUARTER, QUARTER, QUARTER, QUARTER)
    assert K.element(*fourth).is_integral()


def test_residue_basis_sign_follows_cofactor():
    # gcd(-3, 21) = 3 and -3/3 = 3 (mod 4), so the quarter vector takes -sqrt(-3)
    K = classify_field(-3, 21)
    assert (K.r1, K.r2, K.r3) == (-3, -7, 21)
    basis = residue_basis(K.r1, K.r2, -3, 21)
    fourth = K.element(*basis[3])
    assert fourth.is_integral()
    assert not (fourth + K.element(0, HALF)).is_integral()
    assert all(K.element(*b).is_integral() for b in basis)


def test_every_shaped_pair_spans_the_same_ring():
    for pair in REPRESENTATIVES.values():
        K = classify_field(*pair)
        pairs = reference_pairs(K)
        assert pairs
        for m, n in pairs:
            for b in residue_basis(K.r1, K.r2, m, n):
                assert K.element(*b).is_integral()


def test_biq_mul_laws():
    rng = random.Random(3)
    for pair in REPRESENTATIVES.values():
        K = classify_field(*pair)
        for _ in range(100):
            x, y, z = (K.from_integral([rng.randint(-5, 5) for _ in range(4)]) for _ in range(3))
            assert biq_mul(x, y) == biq_mul(y, x)
            assert (x * y) * z == x * (y * z)
            assert x * (y + z) == x * y + x * z
            assert (x * y).is_integral()


def test_trace_to_subfield():
    K = classify_field(-3, 5)
    b2 = K.basis_elements()[1]
    assert trace_to_subfield(b2, 1) == QuadElem(-3, 1, 1)
    assert trace_to_subfield(b2, 2) == QuadElem(5, 1, 0)
    with pytest.raises(DomainError):
        trace_to_subfield(b2, 4)


def test_embed_quad():
    K = classify_field(-3, 5)
    assert embed_quad(QuadElem(-3, 0, 1), K).coords == (0, 1, 0, 0)
    assert embed_quad(QuadElem(-15, HALF, HALF), K).coords == (HALF, 0, 0, HALF)
    with pytest.raises(DomainError):
        embed_quad(QuadElem(7, 0, 1), K)


def test_integral_coordinates_round_trip():
    rng = random.Random(11)
    for pair in REPRESENTATIVES.values():
        K = classify_field(*pair)
        for _ in range(50):
            x = [rng.randint(-30, 30) for _ in range(4)]
            coords, ok = to_integral_coords(K.from_integral(x))
            assert ok
            assert list(coords) == x


def test_require_integral():
    K = classify_field(-3, 5)
    assert require_integral(K.element(HALF, HALF)) == (0, 1, 0, 0)
    with pytest.raises(PreconditionError):
        require_integral(K.element(HALF))


def test_elements_of_different_fields_do_not_mix():
    K = classify_field(-3, 5)
    L = classify_field(-3, -7)
    with pytest.raises(DomainError):
        K.constant(1) + L.constant(1)
