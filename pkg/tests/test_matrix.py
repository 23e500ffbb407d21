import random
from fractions import Fraction

import pytest

from helpers import random_full_rank, random_vector
from pinvkit.errors import DimensionMismatchError, ParseError
from pinvkit.exact import GaussRational, QMatrix, QVector, parse_matrix, parse_vector


def test_identity_and_zero():
    I2 = QMatrix.identity(2)
    Z = QMatrix.zeros(2, 3)
    assert I2 @ Z == Z
    assert Z.is_zero()
    assert not I2.is_zero()
    assert I2.frob_norm_sq() == 2


def test_matmul_shapes():
    A = QMatrix.from_rows([[1, 2, 3], [4, 5, 6]])
    B = QMatrix.from_rows([[1], [0], [Fraction(1, 2)]])
    assert (A @ B).shape() == (2, 1)
    with pytest.raises(DimensionMismatchError):
        B @ A @ B


def test_empty_factors_multiply_to_zero():
    F = QMatrix(3, 0, [])
    G = QMatrix(0, 2, [])
    assert F @ G == QMatrix.zeros(3, 2)


def test_hermitian_conjugates_entries():
    A = QMatrix.from_rows([[GaussRational(Fraction(1), Fraction(2))], [GaussRational(Fraction(0), Fraction(-1))]])
    H = A.hermitian()
    assert H.shape() == (1, 2)
    assert H.at(0, 0) == GaussRational(Fraction(1), Fraction(-2))
    assert H.at(0, 1) == GaussRational(Fraction(0), Fraction(1))


def test_hermitian_involution_random():
    rng = random.Random(3)
    for _ in range(10):
        A = random_full_rank(rng, rng.randint(1, 4), rng.randint(1, 4), complex_entries=True)
        assert A.hermitian().hermitian() == A


def test_matmul_associativity_random():
    rng = random.Random(5)
    for _ in range(5):
        A = random_full_rank(rng, 2, 3, complex_entries=True)
        B = random_full_rank(rng, 3, 3, complex_entries=True)
        C = random_full_rank(rng, 3, 2, complex_entries=True)
        assert (A @ B) @ C == A @ (B @ C)
        assert (A @ B).hermitian() == B.hermitian() @ A.hermitian()


def test_apply_matches_column_product():
    rng = random.Random(7)
    A = random_full_rank(rng, 3, 2)
    v = random_vector(rng, 2)
    assert A.apply(v).as_column() == A @ v.as_column()


def test_parse_rejects_bad_files():
    for bad in ["", "2\n1\n1\n", "1 2\n1\n", "2 2\n1 2\n3\n", "0 1\n", "1 1\n0.5\n"]:
        with pytest.raises(ParseError):
            parse_matrix(bad)


def test_vector_file_is_single_column():
    v = parse_vector("3 1\n1\n1\n0\n")
    assert v == QVector.of(1, 1, 0)
    with pytest.raises(ParseError):
        parse_vector("2 2\n1 0\n0 1\n")


def test_text_round_trip_random():
    rng = random.Random(11)
    for _ in range(20):
        A = random_full_rank(rng, rng.randint(1, 4), rng.randint(1, 4), complex_entries=rng.random() < 0.5)
        assert parse_matrix(A.to_text()) == A


def test_norm_sq_additive_over_entries():
    A = QMatrix.from_rows([[Fraction(1, 2), GaussRational(Fraction(0), Fraction(1, 3))]])
    assert A.frob_norm_sq() == Fraction(1, 4) + Fraction(1, 9)
    v = QVector.of(3, 4)
    assert v.norm_sq() == 25
