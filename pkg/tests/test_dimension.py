"""Moran matrix, spectral radius, dimension solvers."""

import random
from fractions import Fraction

import mpmath
import pytest

from graphifs import (
    DoubleLoopParams,
    NumericError,
    double_loop_char_root,
    double_loop_ifs,
    hausdorff_dimension,
    moran_matrix,
    no_loop_ifs,
    spectral_radius,
)
from graphifs.dimension import MoranMatrix
from conftest import random_double_loop_params

F = Fraction

GOLDEN_S = mpmath.log((mpmath.sqrt(5) - 1) / 2) / mpmath.log(mpmath.mpf(1) / 2)


class TestMoranMatrix:
    def test_t0_counts_edges(self, golden_ifs):
        m = moran_matrix(golden_ifs, 0)
        assert m.entries == ((1, 1), (1, 1))

    def test_t1_ratios(self, golden_ifs):
        m = moran_matrix(golden_ifs, 1)
        assert m.entries == ((mpmath.mpf(1) / 4, mpmath.mpf(1) / 2),
                             (mpmath.mpf(1) / 4, mpmath.mpf(1) / 2))

    def test_t2_squares(self, golden_ifs):
        m = moran_matrix(golden_ifs, 2)
        assert m.entries[0][0] == mpmath.mpf(1) / 16
        assert m.entries[1][1] == mpmath.mpf(1) / 4

    def test_parallel_edges_summed(self, golden_params):
        m = moran_matrix(no_loop_ifs(golden_params), 1)
        assert m.entries[0][1] == mpmath.mpf(3) / 4  # a + b
        assert m.entries[0][0] == 0


class TestSpectralRadius:
    def test_rank_one(self):
        m = MoranMatrix(("u", "v"), ((mpmath.mpf(1), mpmath.mpf(1)),
                                     (mpmath.mpf(1), mpmath.mpf(1))))
        assert abs(spectral_radius(m) - 2) < 1e-25

    def test_one_by_one(self):
        m = MoranMatrix(("u",), ((mpmath.mpf(1) / 2,),))
        assert abs(spectral_radius(m) - mpmath.mpf(1) / 2) < 1e-25

    def test_periodic_matrix_converges(self):
        # Off-diagonal-only matrices make the unshifted Rayleigh quotient
        # oscillate; the shifted iteration must still converge.
        m = MoranMatrix(("u", "v"), ((mpmath.mpf(0), mpmath.mpf(1) / 2),
                                     (mpmath.mpf(1) / 3, mpmath.mpf(0))))
        expected = mpmath.sqrt(mpmath.mpf(1) / 6)
        assert abs(spectral_radius(m) - expected) < 1e-25

    def test_unity_at_dimension(self, golden_ifs):
        rho = spectral_radius(moran_matrix(golden_ifs, GOLDEN_S))
        assert abs(rho - 1) < 1e-9


class TestHausdorffDimension:
    def test_golden(self, golden_ifs):
        result = hausdorff_dimension(golden_ifs)
        assert abs(result.s - GOLDEN_S) < 1e-9
        lo, hi = result.bracket
        assert hi - lo <= 1e-12

    def test_half_dimension_instance(self):
        p = DoubleLoopParams(F(1, 4), F(1, 2), F(1, 4),
                             F(1, 4), F(1, 2), F(1, 4))
        result = hausdorff_dimension(double_loop_ifs(p))
        assert abs(result.s - mpmath.mpf(1) / 2) < 1e-9

    def test_spanning_system_self_consistent(self, spanning_pair):
        ifs, _s = spanning_pair
        result = hausdorff_dimension(ifs)
        assert 0 < result.s < 1
        assert abs(spectral_radius(moran_matrix(ifs, result.s)) - 1) < 1e-9

    def test_no_loop_variant(self, golden_params):
        result = hausdorff_dimension(no_loop_ifs(golden_params))
        assert 0 < result.s < 1

    def test_iteration_count_scales_with_tol(self, golden_ifs):
        coarse = hausdorff_dimension(golden_ifs, tol=1e-6)
        fine = hausdorff_dimension(golden_ifs, tol=1e-12)
        assert fine.iterations <= 2 * coarse.iterations + 2


class TestCharacteristicRoot:
    def test_golden_agrees(self, golden_params, golden_ifs):
        root = double_loop_char_root(golden_params)
        assert abs(root - GOLDEN_S) < 2e-12
        assert abs(root - hausdorff_dimension(golden_ifs).s) <= 2e-12

    def test_half(self):
        p = DoubleLoopParams(F(1, 4), F(1, 2), F(1, 4),
                             F(1, 4), F(1, 2), F(1, 4))
        assert abs(double_loop_char_root(p) - mpmath.mpf(1) / 2) < 2e-12

    def test_reduced_case_is_single_ifs_equation(self):
        # a=c, b=d: the root solves a^t + b^t = 1.
        p = DoubleLoopParams(F(1, 3), F(1, 3), F(1, 3),
                             F(1, 3), F(1, 3), F(1, 3))
        t = double_loop_char_root(p)
        third = mpmath.mpf(1) / 3
        assert abs(third**t + third**t - 1) < 1e-9

    def test_cross_check_on_random_instances(self):
        rng = random.Random(31415)
        for _ in range(10):
            params = random_double_loop_params(rng)
            s1 = hausdorff_dimension(double_loop_ifs(params)).s
            s2 = double_loop_char_root(params)
            assert abs(s1 - s2) <= 2e-12


class TestBracketing:
    def test_random_instances_bracket(self):
        rng = random.Random(2718)
        for _ in range(10):
            ifs = double_loop_ifs(random_double_loop_params(rng))
            assert spectral_radius(moran_matrix(ifs, 0)) >= 2
            assert spectral_radius(moran_matrix(ifs, 1)) < 1

    def test_monotone_decreasing(self, golden_ifs):
        grid = [mpmath.mpf(i) / 10 for i in range(11)]
        values = [spectral_radius(moran_matrix(golden_ifs, t)) for t in grid]
        assert all(a > b for a, b in zip(values, values[1:]))

    def test_negative_t_rejected(self, golden_ifs):
        with pytest.raises(ValueError):
            moran_matrix(golden_ifs, -1)
