from __future__ import annotations

import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clutterbetti.errors import InconsistentInput
from clutterbetti.linalg import (
    GF2,
    GF3,
    MODULI,
    QQ,
    ExactMatrix,
    FieldSpec,
    is_prime,
    rank,
    rank_fraction_free,
    rank_gf2_packed,
    rank_mod_p,
    rank_rational,
)

from oracles import rank_p, rank_q


def test_is_prime_small():
    assert [p for p in range(30) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_moduli_are_large_primes():
    assert all(is_prime(p) and 2**30 < p < 2**31 for p in MODULI)
    assert len(set(MODULI)) == len(MODULI)


@pytest.mark.parametrize("text,char", [("q", 0), ("Q", 0), ("2", 2), ("3", 3), ("101", 101)])
def test_field_parse(text, char):
    assert FieldSpec.parse(text).characteristic == char


@pytest.mark.parametrize("text", ["4", "1", "-3", "x", "9"])
def test_field_parse_rejects(text):
    with pytest.raises(InconsistentInput):
        FieldSpec.parse(text)


def test_field_labels():
    assert QQ.label == "q" and GF2.label == "2" and str(GF3) == "GF(3)" and str(QQ) == "Q"


def test_rank_of_empty_matrix_is_zero():
    assert rank([], QQ) == 0
    assert rank(np.zeros((0, 3), dtype=np.int64), GF2) == 0
    assert rank([[]], GF3) == 0


def test_rank_depends_on_characteristic():
    # det = 2: invertible over Q and GF(3), singular over GF(2)
    M = [[1, 1], [1, -1]]
    assert rank(M, QQ) == 2
    assert rank(M, GF2) == 1
    assert rank(M, GF3) == 2


def test_rank_with_fractions():
    M = [[Fraction(1, 2), Fraction(1, 3)], [Fraction(3, 2), 1]]
    assert rank(M, QQ) == 1
    assert rank(M, FieldSpec(5)) == 1


def test_exact_matrix_roundtrip():
    M = ExactMatrix.from_rows([[1, -1, 0], [2, 0, 5]], GF3)
    assert M.tolist() == [[1, 2, 0], [2, 0, 2]]
    assert M.transpose().transpose() == M
    assert M.data.flags.writeable is False


def test_ragged_rows_rejected():
    with pytest.raises(InconsistentInput):
        ExactMatrix.from_rows([[1, 2], [3]])


def test_rational_rank_beyond_one_prime():
    # large entries whose determinant vanishes modulo the first modulus
    p = MODULI[0]
    M = np.array([[p, 0], [0, 1]], dtype=object)
    assert rank_rational(M) == 2
    assert rank_mod_p(np.array([[p % p, 0], [0, 1]], dtype=np.int64), p) == 1


def test_gf2_packed_rank():
    assert rank_gf2_packed([0b011, 0b110, 0b101]) == 2
    assert rank_gf2_packed([]) == 0


matrices = st.integers(1, 7).flatmap(
    lambda r: st.integers(1, 7).flatmap(
        lambda c: st.lists(st.lists(st.integers(-3, 3), min_size=c, max_size=c), min_size=r, max_size=r)))


@settings(max_examples=120, deadline=None)
@given(matrices)
def test_rank_matches_sympy_over_q(rows):
    expected = rank_q(rows)
    assert rank(rows, QQ) == expected
    assert rank_fraction_free(rows) == expected


@settings(max_examples=120, deadline=None)
@given(matrices, st.sampled_from([2, 3, 5, 7]))
def test_rank_matches_textbook_mod_p(rows, p):
    assert rank(rows, FieldSpec(p)) == rank_p(rows, p)


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_rank_invariants(rows):
    a = np.array(rows, dtype=np.int64)
    for K in (QQ, GF2, GF3):
        r = rank(a, K)
        assert r == rank(a.T, K)
        assert r <= min(a.shape)
        # char p rank never exceeds the rational rank
        assert r <= rank(a, QQ)


def test_random_integer_matrices_agree_with_bareiss():
    rng = random.Random(5)
    for _ in range(30):
        r, c = rng.randint(1, 12), rng.randint(1, 12)
        rows = [[rng.randint(-50, 50) for _ in range(c)] for _ in range(r)]
        if rng.random() < 0.5 and r > 1:
            rows[-1] = [x + y for x, y in zip(rows[0], rows[1 % r])]
        assert rank(rows, QQ) == rank_fraction_free(rows)
