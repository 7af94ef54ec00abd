"""Tests for exact rational matrices."""

import random
from fractions import Fraction

import pytest
import sympy as sp

from generators import random_rational_matrix
from wrzero.ratmat import (
    RatMatrix,
    format_rational,
    integer_primitive,
    kernel_basis,
    rank,
    rref,
    solve_exact,
    to_rational,
)


class TestLiterals:
    def test_parses_integers_fractions_and_decimals(self):
        assert to_rational("7") == 7
        assert to_rational("55/2") == Fraction(55, 2)
        assert to_rational("0.5") == Fraction(1, 2)
        assert to_rational(-3) == -3

    def test_rejects_floats_and_booleans(self):
        with pytest.raises(ValueError):
            to_rational(0.1)
        with pytest.raises(ValueError):
            to_rational(True)

    def test_rejects_zero_denominator(self):
        with pytest.raises(ValueError):
            to_rational("1/0")

    def test_format(self):
        assert format_rational(Fraction(7)) == "7"
        assert format_rational(Fraction(-55, 2)) == "-55/2"


class TestPrimitive:
    def test_scales_to_coprime_integers(self):
        assert integer_primitive([Fraction(1, 2), Fraction(55, 4), 6]) == (2, 55, 24)

    def test_first_nonzero_is_positive(self):
        assert integer_primitive([0, -2, 4]) == (0, 1, -2)

    def test_zero_vector_unchanged(self):
        assert integer_primitive([0, 0]) == (0, 0)


class TestRowReduction:
    def test_rank_of_triangle_net_matrix(self):
        W = RatMatrix.from_columns([(-12, 14, 10), (0, -4, 4), (1, 8, -10)])
        assert rank(W) == 2

    def test_rref_pivots(self):
        reduced, pivots = rref(RatMatrix.from_rows([[-1, 2, 0], [-1, 0, 2]]))
        assert pivots == [0, 1]
        assert reduced.to_rows() == [(1, 0, -2), (0, 1, -1)]

    def test_kernel_convention(self):
        W = RatMatrix.from_columns([(-12, 14, 10), (0, -4, 4), (1, 8, -10)])
        assert kernel_basis(W) == [(2, 55, 24)]

    def test_kernel_of_full_rank_is_empty(self):
        assert kernel_basis(RatMatrix.identity(3)) == []

    def test_kernel_of_zero_matrix_is_unit_vectors(self):
        assert kernel_basis(RatMatrix.zeros(2, 3)) == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]

    def test_random_kernels_annihilate(self):
        rng = random.Random(7)
        for _ in range(200):
            M = random_rational_matrix(rng)
            basis = kernel_basis(M)
            assert len(basis) == M.cols - rank(M)
            for v in basis:
                assert all(x == 0 for x in M.apply(v))

    def test_empty_shapes(self):
        assert kernel_basis(RatMatrix.zeros(0, 2)) == [(1, 0), (0, 1)]
        assert rank(RatMatrix.zeros(0, 2)) == 0
        assert rref(RatMatrix.zeros(2, 0)) == (RatMatrix.zeros(0, 0), [])

    def test_sympy_conversion_is_exact(self):
        M = RatMatrix.from_rows([["1/3", "-7"], [0, "55/2"]])
        assert M.to_sympy() == sp.Matrix([[sp.Rational(1, 3), -7], [0, sp.Rational(55, 2)]])

    def test_kernel_spans_the_sympy_nullspace(self):
        rng = random.Random(11)
        for _ in range(50):
            M = random_rational_matrix(rng)
            basis = kernel_basis(M)
            expected = M.to_sympy().nullspace()
            assert len(basis) == len(expected)
            if basis:
                ours = sp.Matrix([[sp.Rational(x.numerator, x.denominator) for x in v] for v in basis])
                combined = sp.Matrix.vstack(ours, sp.Matrix.hstack(*expected).T)
                assert combined.rank() == len(basis)
                assert all(next(x for x in v if x) > 0 for v in basis)

    def test_transpose_and_product(self):
        M = RatMatrix.from_rows([[1, 2], [3, 4], [5, 6]])
        assert M.transpose().transpose() == M
        assert (M.transpose() @ M).to_rows() == [(35, 44), (44, 56)]


class TestSolve:
    def test_unique_solution(self):
        M = RatMatrix.from_columns([(-1, 2, 0), (-1, 0, 2)])
        x, kernel = solve_exact(M, (-12, 14, 10))
        assert x == (7, 5)
        assert kernel == []

    def test_inconsistent_returns_none(self):
        M = RatMatrix.from_columns([(1, 0), (2, 0)])
        assert solve_exact(M, (0, 1)) is None

    def test_fractional_solution(self):
        M = RatMatrix.from_columns([(-1, 2, 0), (-1, 0, 2)])
        x, _ = solve_exact(M, (Fraction(-1, 2), -2, 3))
        assert x == (-1, Fraction(3, 2))

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            solve_exact(RatMatrix.identity(2), (1, 2, 3))
