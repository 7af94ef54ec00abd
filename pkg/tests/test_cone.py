"""Tests for extreme-ray enumeration and the consistency test."""

import random
from fractions import Fraction
from itertools import combinations

import pytest

from generators import random_rational_matrix
from wrzero.model.graph import ComponentPartition
from wrzero.pipeline.cone import ConeRays, extreme_rays, is_consistent, supports_partition
from wrzero.ratmat import RatMatrix, integer_primitive, kernel_basis, rank

TRIANGLE_W = RatMatrix.from_columns([(-12, 14, 10), (0, -4, 4), (1, 8, -10)])
NOT_IN_CONE_W = RatMatrix.from_columns(
    [(Fraction(-1, 2), -2, 3), (0, -4, 4), (1, 8, -10)]
)
SQUARE_W = RatMatrix.from_columns([(6, 6), (-10, 10), (-4, -4), (6, -6)])


def brute_force_rays(W: RatMatrix) -> set[tuple[int, ...]]:
    """r is extreme iff ker W restricted to supp(r) is spanned by a strictly positive vector."""
    rays = set()
    for size in range(1, W.cols + 1):
        for support in combinations(range(W.cols), size):
            basis = kernel_basis(W.select_columns(support))
            if len(basis) != 1:
                continue
            (v,) = basis
            if all(x > 0 for x in v):
                ray = [Fraction(0)] * W.cols
                for j, x in zip(support, v):
                    ray[j] = x
                rays.add(integer_primitive(ray))
    return rays


class TestExtremeRays:
    def test_triangle(self):
        assert extreme_rays(TRIANGLE_W).rays == ((2, 55, 24),)

    def test_not_in_cone_example(self):
        assert extreme_rays(NOT_IN_CONE_W).rays == ((2, 1, 1),)

    def test_square(self):
        assert extreme_rays(SQUARE_W).rays == ((2, 0, 3, 0), (0, 3, 0, 5))

    def test_trivial_cone(self):
        W = RatMatrix.from_columns([(1,), (1,)])
        assert extreme_rays(W).rays == ()

    def test_zero_matrix_gives_unit_vectors(self):
        assert extreme_rays(RatMatrix.zeros(2, 3)).rays == ((1, 0, 0), (0, 1, 0), (0, 0, 1))

    def test_rays_are_in_the_kernel(self):
        for W in (TRIANGLE_W, NOT_IN_CONE_W, SQUARE_W):
            for ray in extreme_rays(W).rays:
                assert all(x == 0 for x in W.apply([Fraction(v) for v in ray]))

    def test_requires_columns(self):
        with pytest.raises(ValueError):
            extreme_rays(RatMatrix.zeros(2, 0))

    @pytest.mark.slow
    def test_matches_brute_force_on_random_matrices(self):
        rng = random.Random(1234)
        for _ in range(500):
            W = random_rational_matrix(rng)
            rays = extreme_rays(W)
            assert set(rays.rays) == brute_force_rays(W)
            assert list(rays.rays) == sorted(rays.rays, reverse=True)

    @pytest.mark.slow
    def test_rays_satisfy_rank_criterion(self):
        rng = random.Random(99)
        for _ in range(200):
            W = random_rational_matrix(rng)
            for ray in extreme_rays(W).rays:
                zero = [j for j, v in enumerate(ray) if v == 0]
                active = W.stack(
                    RatMatrix.from_rows(
                        [[int(i == j) for i in range(W.cols)] for j in zero], cols=W.cols
                    )
                )
                assert rank(active) == W.cols - 1

    def test_zero_sets_are_maximal(self):
        rng = random.Random(31)
        for _ in range(100):
            W = random_rational_matrix(rng)
            zero_sets = [frozenset(j for j, v in enumerate(ray) if v == 0) for ray in extreme_rays(W).rays]
            for a, b in combinations(zero_sets, 2):
                assert not a < b and not b < a

    def test_matrix_with_dependent_rows(self):
        W = RatMatrix.from_rows([[1, -1, 0, 0], [2, -2, 0, 0], [0, 0, 1, -1]])
        assert extreme_rays(W).rays == ((1, 1, 0, 0), (0, 0, 1, 1))


class TestConeRays:
    def test_rejects_non_primitive(self):
        with pytest.raises(ValueError):
            ConeRays(2, ((2, 4),))

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            ConeRays(2, ((1, -1),))

    def test_ray_supported_on(self):
        rays = ConeRays(4, ((2, 0, 3, 0), (0, 3, 0, 5)))
        assert rays.ray_supported_on((1, 3)) == (0, 3, 0, 5)
        with pytest.raises(KeyError):
            rays.ray_supported_on((0, 1))


class TestPartition:
    def test_single_block(self):
        partition = supports_partition(ConeRays(3, ((2, 55, 24),)))
        assert partition == ComponentPartition(((0, 1, 2),))

    def test_two_blocks(self):
        partition = supports_partition(ConeRays(4, ((2, 0, 3, 0), (0, 3, 0, 5))))
        assert partition.blocks == ((0, 2), (1, 3))

    def test_overlap(self):
        assert supports_partition(ConeRays(3, ((1, 1, 0), (0, 1, 1)))) is None

    def test_missing_index(self):
        assert supports_partition(ConeRays(3, ((1, 1, 0),))) is None

    def test_empty(self):
        assert supports_partition(ConeRays(2, ())) is None


class TestConsistency:
    def test_examples(self):
        assert is_consistent(TRIANGLE_W)
        assert is_consistent(NOT_IN_CONE_W)
        assert is_consistent(SQUARE_W)

    def test_inconsistent(self):
        assert not is_consistent(RatMatrix.from_columns([(1,), (1,)]))

    def test_overlapping_rays_can_be_consistent(self):
        W = RatMatrix.from_rows([[1, -1, 0, 0], [0, 0, 1, -1]])
        assert is_consistent(W)
        W = RatMatrix.from_rows([[1, 1, -1]])
        rays = extreme_rays(W)
        assert rays.rays == ((1, 0, 1), (0, 1, 1))
        assert rays.covers_all()
        assert supports_partition(rays) is None
