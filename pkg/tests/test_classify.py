"""Standardness deciders, rewrites, and certificate replay."""

from fractions import Fraction

import pytest

from graphifs import (
    DoubleLoopParams,
    RewriteError,
    Similarity,
    Verdict,
    classify_distinct_components,
    classify_gap_condition,
    classify_measure_condition,
    cross_refutation_empty,
    double_loop_ifs,
    find_detached_cycle,
    no_loop_ifs,
    path_similarity,
    paths_from,
    replay_certificate,
    rewrite_to_standard,
    single_loop_ifs,
)
from graphifs.classify import Certificate

F = Fraction


class TestDetachedCycle:
    def test_golden_at_u(self, golden_ifs):
        w = find_detached_cycle(golden_ifs, "u")
        assert w is not None
        assert (w.w, w.cycle.edges, w.path.edges) == ("v", ("e3",), ("e2",))
        assert w.vprime == ("u", "v")

    def test_nested_at_v(self, nested_ifs):
        w = find_detached_cycle(nested_ifs, "v")
        assert (w.w, w.cycle.edges, w.path.edges) == ("u", ("e1",), ("e3",))

    def test_no_loop_variant_has_none(self, golden_params):
        ifs = no_loop_ifs(golden_params)
        assert find_detached_cycle(ifs, "u") is None
        assert find_detached_cycle(ifs, "v") is None

    def test_nested_at_u_detached_loop(self, nested_ifs):
        # the loop at v avoids u
        w = find_detached_cycle(nested_ifs, "u")
        assert w is not None and w.cycle.edges == ("e5",)


class TestDistinctComponents:
    def test_golden_both_not_standard(self, golden_params, golden_ifs):
        cu, cv = classify_distinct_components(golden_params)
        assert cu.verdict is Verdict.NOT_STANDARD
        assert cv.verdict is Verdict.NOT_STANDARD
        assert replay_certificate(golden_ifs, cu)
        assert replay_certificate(golden_ifs, cv)

    def test_reduced_case_unknown(self):
        p = DoubleLoopParams(F(1, 4), F(1, 4), F(1, 2),
                             F(1, 4), F(1, 4), F(1, 2))
        cu, cv = classify_distinct_components(p)
        assert cu.verdict is Verdict.UNKNOWN
        assert cv.verdict is Verdict.UNKNOWN

    def test_b_differs_not_standard(self):
        p = DoubleLoopParams(F(1, 4), F(1, 4), F(1, 2),
                             F(1, 4), F(5, 12), F(1, 3))
        cu, _cv = classify_distinct_components(p)
        assert cu.verdict is Verdict.NOT_STANDARD


class TestGapCondition:
    def test_golden_both_not_standard(self, golden_ifs):
        for u in golden_ifs.vertices:
            cert = classify_gap_condition(golden_ifs, u, depth=8)
            assert cert.verdict is Verdict.NOT_STANDARD
            assert replay_certificate(golden_ifs, cert)

    def test_nested_v_not_standard(self, nested_ifs):
        cert = classify_gap_condition(nested_ifs, "v")
        assert cert.verdict is Verdict.NOT_STANDARD
        assert replay_certificate(nested_ifs, cert)

    def test_nested_u_unknown(self, nested_ifs):
        cert = classify_gap_condition(nested_ifs, "u")
        assert cert.verdict is Verdict.UNKNOWN
        assert "condition (2)" in cert.unknown_reason

    def test_no_detached_cycle_yields_standard(self, golden_params):
        ifs = no_loop_ifs(golden_params)
        cert = classify_gap_condition(ifs, "u")
        assert cert.verdict is Verdict.STANDARD
        assert cert.theorem == "p2nv1"
        assert len(cert.maps) == 4
        assert replay_certificate(ifs, cert)

    def test_depth_monotonicity(self, golden_ifs):
        verdicts = [classify_gap_condition(golden_ifs, "u", depth=d).verdict
                    for d in range(3, 9)]
        assert Verdict.NOT_STANDARD in verdicts
        first = verdicts.index(Verdict.NOT_STANDARD)
        assert all(v is Verdict.NOT_STANDARD for v in verdicts[first:])

    def test_reflected_variant(self, golden_ifs):
        cert = classify_gap_condition(golden_ifs, "u", reflected=True)
        assert cert.verdict is Verdict.NOT_STANDARD
        assert any(ref.reflected for _v, ref in cert.refutations)
        assert replay_certificate(golden_ifs, cert)

    def test_agrees_with_distinct_components(self):
        from conftest import random_double_loop_params
        import random
        rng = random.Random(606)
        for _ in range(10):
            params = random_double_loop_params(rng, max_denominator=16)
            ifs = double_loop_ifs(params)
            cm, _ = classify_distinct_components(params)
            cq = classify_gap_condition(ifs, "u", depth=6)
            if (cm.verdict is Verdict.NOT_STANDARD
                    and cq.verdict is not Verdict.UNKNOWN):
                assert cq.verdict is Verdict.NOT_STANDARD


class TestMeasureCondition:
    def test_golden_both_not_standard(self, golden_ifs):
        for u in golden_ifs.vertices:
            cert = classify_measure_condition(golden_ifs, u,
                                              minimal_edges_asserted=True)
            assert cert.verdict is Verdict.NOT_STANDARD
            assert replay_certificate(golden_ifs, cert)

    def test_unasserted_minimality_unknown(self, golden_ifs):
        cert = classify_measure_condition(golden_ifs, "u")
        assert cert.verdict is Verdict.UNKNOWN
        assert "minimal" in cert.unknown_reason

    def test_non_family_unknown(self, spanning_pair):
        ifs, _s = spanning_pair
        cert = classify_measure_condition(ifs, "u",
                                          minimal_edges_asserted=True)
        assert cert.verdict is Verdict.UNKNOWN
        assert "double-loop" in cert.unknown_reason


class TestRewrite:
    def test_no_loop_variant_is_level2(self, golden_params):
        ifs = no_loop_ifs(golden_params)
        maps = rewrite_to_standard(ifs, "u")
        expected = {path_similarity(ifs, p) for p in paths_from(ifs, "u", 2)}
        assert set(maps) == expected and len(maps) == 4

    def test_single_loop_at_v(self, golden_params):
        ifs = single_loop_ifs(golden_params)
        maps = rewrite_to_standard(ifs, "v")
        e = {edge.id: edge.map for edge in ifs.edges}
        expected = {e["e3"], e["e4"].compose(e["e1"]), e["e4"].compose(e["e2"])}
        assert set(maps) == expected

    def test_nested_at_u(self, nested_ifs):
        maps = rewrite_to_standard(nested_ifs, "u")
        e = {edge.id: edge.map for edge in nested_ifs.edges}
        expected = {e["e1"], e["e2"], e["e2"].compose(e["e4"])}
        assert set(maps) == expected

    def test_result_sorted_and_inside_unit(self, golden_params):
        for ifs, u in ((no_loop_ifs(golden_params), "u"),
                       (single_loop_ifs(golden_params), "v")):
            maps = rewrite_to_standard(ifs, u)
            hulls = [m.hull() for m in maps]
            assert hulls == sorted(hulls)
            assert all(0 <= lo and hi <= 1 for lo, hi in hulls)

    def test_non_rewritable_raises(self, golden_ifs):
        with pytest.raises(RewriteError):
            rewrite_to_standard(golden_ifs, "u")

    def test_cross_refutation_surrogate(self, golden_params, nested_ifs):
        cases = [
            (no_loop_ifs(golden_params), "u"),
            (single_loop_ifs(golden_params), "v"),
            (nested_ifs, "u"),
        ]
        for ifs, u in cases:
            maps = rewrite_to_standard(ifs, u)
            assert cross_refutation_empty(ifs, u, maps, depth=5)

    def test_cross_refutation_detects_wrong_maps(self, golden_params):
        ifs = no_loop_ifs(golden_params)
        wrong = (Similarity(F(1, 3), F(0)), Similarity(F(1, 3), F(2, 3)))
        assert not cross_refutation_empty(ifs, "u", wrong, depth=5)


class TestReplayRejectsTampering:
    def test_digest_mismatch(self, golden_ifs, nested_ifs):
        cert = classify_gap_condition(golden_ifs, "u")
        assert not replay_certificate(nested_ifs, cert)

    def test_vertex_swap(self, golden_ifs):
        cert = classify_gap_condition(golden_ifs, "u")
        forged = Certificate(
            cert.subject_digest, "v", cert.verdict, cert.theorem,
            cert.cycle_witness, cert.condition2, cert.refutations,
            cert.measure, cert.maps, cert.reflected,
            cert.minimal_edges_asserted, cert.unknown_reason, cert.notes)
        assert not replay_certificate(golden_ifs, forged)

    def test_unknown_replays_vacuously(self, nested_ifs):
        cert = classify_gap_condition(nested_ifs, "u")
        assert cert.verdict is Verdict.UNKNOWN
        assert replay_certificate(nested_ifs, cert)
