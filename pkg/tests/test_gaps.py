"""Gap extraction, maximum gap, coset representations."""

import random
from fractions import Fraction

import pytest

from graphifs import (
    DoubleLoopParams,
    GapCosets,
    condition2_check,
    double_loop_ifs,
    enumerate_coset_lengths,
    gap_length_cosets,
    level_k_gaps,
    max_gap,
    max_gap_closed_form,
    nested_pair_ifs,
)
from conftest import random_double_loop_params

F = Fraction


class TestLevelKGaps:
    def test_level1(self, golden_ifs):
        assert level_k_gaps(golden_ifs, "u", 1) == [
            ((F(1, 4), F(1, 2)), F(1, 4))]
        assert level_k_gaps(golden_ifs, "v", 1) == [
            ((F(1, 2), F(3, 4)), F(1, 4))]

    def test_level2_lengths(self, golden_ifs):
        lengths = {length for _gap, length in level_k_gaps(golden_ifs, "u", 2)}
        assert lengths == {F(1, 16), F(1, 4), F(1, 8)}

    def test_positions_sorted(self, golden_ifs):
        gaps = level_k_gaps(golden_ifs, "u", 4)
        positions = [gap for gap, _l in gaps]
        assert positions == sorted(positions)


class TestMaxGap:
    def test_golden(self, golden_ifs):
        assert max_gap(golden_ifs, "u") == F(1, 4)
        assert max_gap(golden_ifs, "v") == F(1, 4)

    def test_symmetric_cantor_like(self):
        p = DoubleLoopParams(F(1, 4), F(1, 2), F(1, 4),
                             F(1, 4), F(1, 2), F(1, 4))
        ifs = double_loop_ifs(p)
        assert max_gap(ifs, "u") == F(1, 2)

    def test_closed_form_agrees(self, golden_params, golden_ifs):
        mu, mv = max_gap_closed_form(golden_params)
        assert max_gap(golden_ifs, "u") == mu == max(F(1, 4), F(1, 8))
        assert max_gap(golden_ifs, "v") == mv == max(F(1, 4), F(1, 16))

    def test_fixed_point_vs_extraction_oracle(self):
        rng = random.Random(20260824)
        for _ in range(20):
            params = random_double_loop_params(rng)
            ifs = double_loop_ifs(params)
            extracted = max(length
                            for u in ifs.vertices
                            for _gap, length in level_k_gaps(ifs, u, 10))
            assert extracted == max(max_gap(ifs, u) for u in ifs.vertices)


class TestGapCosets:
    def test_golden_cosets(self, golden_params):
        g_u, g_v = gap_length_cosets(golden_params)
        mixed = (F(1, 4), F(1, 8), F(1, 2))
        assert g_u.cosets == (
            (F(1, 4), (F(1, 4),)),
            (F(1, 32), mixed),
            (F(1, 8), mixed),
        )
        assert g_v.cosets == (
            (F(1, 4), (F(1, 2),)),
            (F(1, 32), mixed),
            (F(1, 16), mixed),
        )

    def test_coefficients_positive(self):
        rng = random.Random(7)
        for _ in range(50):
            g_u, g_v = gap_length_cosets(random_double_loop_params(rng))
            for cosets in (g_u, g_v):
                assert all(coeff > 0 for coeff, _gens in cosets.cosets)

    def test_enumerate_golden(self, golden_params):
        g_u, g_v = gap_length_cosets(golden_params)
        assert enumerate_coset_lengths(g_u, F(1, 16)) == [
            F(1, 16), F(1, 8), F(1, 4)]
        assert enumerate_coset_lengths(g_v, F(1, 8)) == [F(1, 8), F(1, 4)]

    def test_enumerate_above_max_is_empty(self, golden_params):
        g_u, _ = gap_length_cosets(golden_params)
        assert enumerate_coset_lengths(g_u, F(1, 2)) == []

    def test_threshold_must_be_positive(self, golden_params):
        g_u, _ = gap_length_cosets(golden_params)
        with pytest.raises(ValueError):
            enumerate_coset_lengths(g_u, F(0))

    def test_membership(self, golden_params):
        g_u, _g_v = gap_length_cosets(golden_params)
        assert g_u.contains(F(1, 4))
        assert g_u.contains(F(1, 16))      # g_u * a
        assert g_u.contains(F(1, 32))      # b*d*g_u
        assert not g_u.contains(F(3, 32))
        assert not g_u.contains(F(1, 3))

    def test_extracted_lengths_are_members(self, golden_params, golden_ifs):
        g_u, g_v = gap_length_cosets(golden_params)
        by_vertex = {"u": g_u, "v": g_v}
        for u in golden_ifs.vertices:
            for k in range(1, 7):
                for _gap, length in level_k_gaps(golden_ifs, u, k):
                    assert by_vertex[u].contains(length)

    def test_members_appear_among_extracted(self, golden_params, golden_ifs):
        g_u, _ = gap_length_cosets(golden_params)
        extracted = {length
                     for k in range(1, 7)
                     for _gap, length in level_k_gaps(golden_ifs, "u", k)}
        floor = min(extracted)
        assert set(enumerate_coset_lengths(g_u, floor)) <= extracted

    def test_bad_generator_rejected(self):
        with pytest.raises(ValueError):
            GapCosets(((F(1, 2), (F(3, 2),)),))


class TestCondition2:
    def test_golden_passes_at_u(self, golden_ifs):
        report = condition2_check(golden_ifs, "u", ["u", "v"])
        assert report.ok
        assert report.max_gap_u == F(1, 4)
        assert report.level1_gaps_uniform is True

    def test_nested_passes_at_v(self, nested_ifs):
        report = condition2_check(nested_ifs, "v", ["u", "v"])
        assert report.ok
        assert report.max_gap_u == F(1, 8)

    def test_nested_fails_at_u(self, nested_ifs):
        report = condition2_check(nested_ifs, "u", ["u", "v"])
        assert not report.ok

    def test_large_gap_fails(self):
        # g_u > g_v forces failure when checked at u against v.
        p = DoubleLoopParams(F(1, 4), F(1, 2), F(1, 4),
                             F(2, 5), F(1, 5), F(2, 5))
        report = condition2_check(double_loop_ifs(p), "u", ["u", "v"])
        assert not report.ok

    def test_requires_u_in_vset(self, golden_ifs):
        with pytest.raises(ValueError):
            condition2_check(golden_ifs, "u", ["v"])

    def test_pass_forces_uniform_level1_gaps(self):
        rng = random.Random(99)
        for _ in range(50):
            ifs = double_loop_ifs(random_double_loop_params(rng))
            for u in ifs.vertices:
                report = condition2_check(ifs, u, list(ifs.vertices))
                if report.ok:
                    assert report.level1_gaps_uniform is True
