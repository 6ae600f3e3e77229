import random
from itertools import combinations_with_replacement
from math import isqrt

import pytest

from biquad.arith import (
    PellUnit,
    check_radicand,
    four_square,
    min_square_count,
    pell_fundamental_unit,
    pell_unit_search,
    squarefree_check,
    two_adic_square_lift,
)
from biquad.errors import DomainError, PreconditionError


@pytest.mark.parametrize(
    "n, expected",
    [(10, (True, None)), (12, (False, 2)), (-15, (True, None)), (1, (True, None)), (75, (False, 5))],
)
def test_squarefree_check(n, expected):
    assert squarefree_check(n) == expected


def test_squarefree_check_rejects_zero():
    with pytest.raises(PreconditionError):
        squarefree_check(0)


@pytest.mark.parametrize("r", [0, 1, 4, -12, 18])
def test_check_radicand_rejects(r):
    with pytest.raises(DomainError):
        check_radicand(r)


def test_check_radicand_message():
    with pytest.raises(DomainError, match="radicand 4 not squarefree"):
        check_radicand(4)


@pytest.mark.parametrize(
    "k, expected",
    [(0, []), (1, [1]), (3, [1, 1, 1]), (4, [2]), (7, [2, 1, 1, 1]), (12, [2, 2, 2]), (50, [5, 5])],
)
def test_four_square_examples(k, expected):
    assert four_square(k) == expected


def test_four_square_sweep():
    for k in range(10_001):
        terms = four_square(k)
        assert sum(a * a for a in terms) == k
        assert len(terms) <= 4
        assert all(a > 0 for a in terms)
        assert terms == sorted(terms, reverse=True)


def _fewest_by_brute_force(k):
    roots = range(1, isqrt(k) + 1)
    for n in range(1, 5):
        for combo in combinations_with_replacement(roots, n):
            if sum(a * a for a in combo) == k:
                return n
    return None


def test_four_square_uses_fewest_terms():
    for k in range(1, 300):
        assert min_square_count(k) == _fewest_by_brute_force(k)
        assert len(four_square(k)) == min_square_count(k)


def test_four_square_is_deterministic():
    assert [four_square(k) for k in range(500)] == [four_square(k) for k in range(500)]


def test_four_square_rejects_negative():
    with pytest.raises(PreconditionError):
        four_square(-1)


@pytest.mark.parametrize(
    "D, expected",
    [
        (2, PellUnit(1, 1, False, 2, -1)),
        (3, PellUnit(2, 1, False, 3, 1)),
        (5, PellUnit(1, 1, True, 5, -1)),
        (6, PellUnit(5, 2, False, 6, 1)),
        (7, PellUnit(8, 3, False, 7, 1)),
        (13, PellUnit(3, 1, True, 13, -1)),
        (14, PellUnit(15, 4, False, 14, 1)),
        (15, PellUnit(4, 1, False, 15, 1)),
        (21, PellUnit(5, 1, True, 21, 1)),
        (37, PellUnit(6, 1, False, 37, -1)),
    ],
)
def test_pell_examples(D, expected):
    assert pell_fundamental_unit(D) == expected


def test_pell_unit_text():
    assert str(pell_fundamental_unit(14)) == "15+4√14"
    assert str(pell_fundamental_unit(21)) == "(5+√21)/2"


def _squarefree_upto(n):
    return [D for D in range(2, n + 1) if squarefree_check(D)[0]]


def test_pell_norm_equation():
    for D in _squarefree_upto(500):
        unit = pell_fundamental_unit(D)
        assert unit.norm in (-1, 1)
        if unit.halved:
            assert D % 8 == 5
            assert unit.t % 2 == 1 and unit.u % 2 == 1
            assert unit.t * unit.t - D * unit.u * unit.u == 4 * unit.norm
        else:
            assert unit.t * unit.t - D * unit.u * unit.u == unit.norm


def test_pell_minimality_against_search():
    limit = 2_000
    for D in _squarefree_upto(200):
        unit = pell_fundamental_unit(D)
        found = pell_unit_search(D, limit)
        if found is None:
            size = unit.half_units if D % 4 == 1 else unit.u
            assert size > limit
        else:
            assert found == unit


def test_pell_rejects_bad_input():
    for D in (0, 1, 4, -5):
        with pytest.raises(DomainError):
            pell_fundamental_unit(D)


def _lift_holds(a, k, beta):
    return (1 + 4 * beta) ** 2 % 2**k == (1 + 2 * a) % 2**k


def test_lift_of_zero_is_zero():
    for k in range(3, 21):
        assert two_adic_square_lift(0, k) == 0


@pytest.mark.parametrize("a, k", [(4, 5), (12, 10), (-8, 7), (400, 3)])
def test_lift_examples(a, k):
    assert _lift_holds(a, k, two_adic_square_lift(a, k))


def test_lift_random():
    rng = random.Random(20)
    for _ in range(1_000):
        a = 4 * rng.randint(-250_000, 250_000)
        beta = two_adic_square_lift(a, 50)
        assert 0 <= beta < 2**50
        assert _lift_holds(a, 50, beta)


@pytest.mark.parametrize("a, k", [(2, 10), (6, 10), (4, 2), (0, 0)])
def test_lift_preconditions(a, k):
    with pytest.raises(PreconditionError):
        two_adic_square_lift(a, k)
