"""Tests for the one-dimensional maximal-function machinery.

The exact evaluator is cross-checked against a brute-force oracle, the
level-set routines against direct component counting, and the
variation comparison against a summed-jumps oracle, on hand-built and
randomly generated step functions.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ballcover.formats import dump_step_function, load_step_function
from ballcover.geometry import Interval, merged_components
from ballcover.maximal1d import (
    LevelRecord,
    LevelSetReport,
    StepFunction,
    VariationReport,
    average,
    level_report,
    maximal_function_at,
    maximal_intervals,
    maximal_superlevel,
    maximal_variation_check,
    variation,
)

from oracles import (
    maximal_function_oracle_at,
    maximal_function_oracle_grid,
    random_step_function,
    variation_oracle,
)


TENT = StepFunction((0.0, 1.0, 2.0, 3.0), (1.0, 2.0, 0.5))
SPIKY = StepFunction((0.0, 1.0, 2.0, 4.0, 7.0), (2.0, 0.5, 3.0, 1.0))
SIGNED = StepFunction((-1.0, 0.0, 2.0, 3.0), (-2.0, 1.0, -0.5))


# ---------------------------------------------------------------------------
# StepFunction
# ---------------------------------------------------------------------------


class TestStepFunction:
    def test_validation(self):
        with pytest.raises(ValueError):
            StepFunction((0.0,), ())
        with pytest.raises(ValueError):
            StepFunction((0.0, 1.0), (1.0, 2.0))
        with pytest.raises(ValueError):
            StepFunction((0.0, 0.0), (1.0,))
        with pytest.raises(ValueError):
            StepFunction((1.0, 0.0), (1.0,))
        with pytest.raises(ValueError):
            StepFunction((0.0, float("inf")), (1.0,))
        with pytest.raises(ValueError):
            StepFunction((0.0, 1.0), (float("nan"),))

    def test_abs_function(self):
        g = SIGNED.abs_function()
        assert g.breakpoints == SIGNED.breakpoints
        assert g.values == (2.0, 1.0, 0.5)

    def test_total_mass(self):
        assert SIGNED.total_mass() == pytest.approx(2.0 + 2.0 + 0.5)
        assert TENT.total_mass() == pytest.approx(1.0 + 2.0 + 0.5)

    def test_piece_count(self):
        assert TENT.piece_count == 3

    def test_serialization_roundtrip(self):
        for f in (TENT, SPIKY, SIGNED):
            text = dump_step_function(f)
            back = load_step_function(text)
            assert back.breakpoints == f.breakpoints
            assert back.values == f.values


# ---------------------------------------------------------------------------
# average / variation
# ---------------------------------------------------------------------------


class TestAverageAndVariation:
    def test_average_exact(self):
        # |TENT| on (0,3): masses 1, 2, 0.5 on unit/unit/unit pieces.
        assert average(TENT, 0.0, 3.0) == pytest.approx(3.5 / 3.0)
        assert average(TENT, 0.0, 1.0) == pytest.approx(1.0)
        assert average(TENT, 0.5, 1.5) == pytest.approx(1.5)
        # Outside the hull the function vanishes.
        assert average(TENT, -2.0, 0.0) == 0.0
        assert average(TENT, -1.0, 1.0) == pytest.approx(0.5)

    def test_average_uses_absolute_value(self):
        assert average(SIGNED, -1.0, 0.0) == pytest.approx(2.0)

    def test_average_validation(self):
        with pytest.raises(ValueError):
            average(TENT, 1.0, 1.0)

    def test_variation_against_oracle(self):
        rng = np.random.default_rng(0)
        for _ in range(50):
            f = random_step_function(rng)
            assert variation(f) == pytest.approx(variation_oracle(f), abs=1e-12)

    def test_variation_examples(self):
        # Jumps of TENT: 0->1->2->0.5->0.
        assert variation(TENT) == pytest.approx(1.0 + 1.0 + 1.5 + 0.5)
        # SIGNED jumps: 0->-2->1->-0.5->0.
        assert variation(SIGNED) == pytest.approx(2.0 + 3.0 + 1.5 + 0.5)


# ---------------------------------------------------------------------------
# maximal_function_at
# ---------------------------------------------------------------------------


class TestMaximalFunctionAt:
    def test_matches_oracle_pointwise(self):
        rng = np.random.default_rng(1)
        for _ in range(20):
            f = random_step_function(rng)
            lo, hi = f.breakpoints[0], f.breakpoints[-1]
            span = hi - lo
            xs = rng.uniform(lo - 0.5 * span, hi + 0.5 * span, size=12)
            for x in xs:
                got = maximal_function_at(f, float(x))
                want = maximal_function_oracle_at(f, float(x))
                assert got == pytest.approx(want, rel=1e-12, abs=1e-12)

    def test_matches_oracle_on_grid(self):
        rng = np.random.default_rng(2)
        f = random_step_function(rng)
        xs = np.linspace(f.breakpoints[0] - 1.0, f.breakpoints[-1] + 1.0, 200)
        got = np.array([maximal_function_at(f, float(x)) for x in xs])
        want = maximal_function_oracle_grid(f, xs)
        np.testing.assert_allclose(got, want, rtol=1e-12, atol=1e-12)

    def test_dominates_function(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            f = random_step_function(rng)
            xs, vs = f.breakpoints, f.values
            for i, v in enumerate(vs):
                mid = 0.5 * (xs[i] + xs[i + 1])
                assert maximal_function_at(f, mid) >= abs(v) - 1e-12

    def test_value_scaling(self):
        scaled = StepFunction(TENT.breakpoints, tuple(3.0 * v for v in TENT.values))
        for x in (-0.5, 0.3, 1.2, 2.7, 3.4):
            assert maximal_function_at(scaled, x) == pytest.approx(
                3.0 * maximal_function_at(TENT, x), rel=1e-12
            )

    def test_translation_covariance(self):
        shifted = StepFunction(
            tuple(x + 5.0 for x in SPIKY.breakpoints), SPIKY.values
        )
        for x in (0.2, 1.5, 3.0, 6.0):
            assert maximal_function_at(shifted, x + 5.0) == pytest.approx(
                maximal_function_at(SPIKY, x), rel=1e-12
            )

    def test_single_piece_closed_form(self):
        # Indicator of (0, 1): outside the support the best interval
        # anchors at x and swallows the whole support, so Mf(x) is
        # 1 / (1 + dist(x, (0, 1))).
        f = StepFunction((0.0, 1.0), (1.0,))
        assert maximal_function_at(f, 0.5) == 1.0
        assert maximal_function_at(f, 2.0) == pytest.approx(0.5, rel=1e-15)
        assert maximal_function_at(f, -1.0) == pytest.approx(0.5, rel=1e-15)
        assert maximal_function_at(f, -2.0) == pytest.approx(1.0 / 3.0, rel=1e-15)

    def test_zero_function(self):
        f = StepFunction((0.0, 1.0), (0.0,))
        assert maximal_function_at(f, 0.5) == 0.0


# ---------------------------------------------------------------------------
# maximal_intervals / maximal_superlevel
# ---------------------------------------------------------------------------


class TestMaximalIntervals:
    def test_level_validation(self):
        with pytest.raises(ValueError):
            maximal_intervals(TENT, 0.0)
        with pytest.raises(ValueError):
            maximal_superlevel(TENT, -1.0)

    def test_above_max_empty(self):
        assert maximal_intervals(TENT, 2.5) == []

    def test_each_interval_has_level_average(self):
        rng = np.random.default_rng(4)
        for _ in range(25):
            f = random_step_function(rng)
            g = f.abs_function()
            top = max(g.values)
            if top == 0.0:
                continue
            for frac in (0.17, 0.44, 0.81):
                lam = top * frac
                for iv in maximal_intervals(f, lam):
                    got = average(f, iv.lo, iv.hi)
                    assert got == pytest.approx(lam, rel=1e-9, abs=1e-12)

    def test_intervals_are_maximal(self):
        # Nudging either endpoint outward must strictly drop the average.
        rng = np.random.default_rng(5)
        for _ in range(10):
            f = random_step_function(rng)
            top = max(f.abs_function().values)
            lam = 0.37 * top
            for iv in maximal_intervals(f, lam):
                width = iv.hi - iv.lo
                for grow in (1e-6 * width, 0.3 * width):
                    assert average(f, iv.lo - grow, iv.hi + grow) < lam + 1e-9

    def test_closures_cover_superlevel(self):
        # The union of returned closures is exactly {Mf >= level}.
        rng = np.random.default_rng(6)
        for _ in range(15):
            f = random_step_function(rng)
            top = max(f.abs_function().values)
            if top == 0.0:
                continue
            for frac in (0.23, 0.61):
                lam = top * frac
                ivs = maximal_intervals(f, lam)
                spans = maximal_superlevel(f, lam)
                merged = merged_components(ivs)
                assert len(merged) == len(spans)
                for a, b in zip(merged, spans):
                    assert a.lo == pytest.approx(b.lo, rel=1e-9, abs=1e-9)
                    assert a.hi == pytest.approx(b.hi, rel=1e-9, abs=1e-9)

    def test_function_superlevel_inside_maximal(self):
        # {|f| >= lam} sits inside {Mf >= lam}.
        rng = np.random.default_rng(7)
        for _ in range(15):
            f = random_step_function(rng)
            g = f.abs_function()
            top = max(g.values)
            if top == 0.0:
                continue
            lam = 0.52 * top
            spans = maximal_superlevel(f, lam)
            for i, v in enumerate(g.values):
                if v >= lam:
                    lo, hi = g.breakpoints[i], g.breakpoints[i + 1]
                    assert any(
                        s.lo - 1e-9 <= lo and hi <= s.hi + 1e-9 for s in spans
                    )

    def test_tent_intervals_at_unit_level(self):
        # At level 1 the central piece of TENT pulls in mass from both
        # sides; the superlevel set of Mf is a single interval that
        # contains the support of the value-2 piece.
        spans = maximal_superlevel(TENT, 1.0)
        assert len(spans) == 1
        assert spans[0].lo <= 1.0 and spans[0].hi >= 2.0


# ---------------------------------------------------------------------------
# level_report
# ---------------------------------------------------------------------------


class TestLevelReport:
    def test_structure(self):
        rep = level_report(SPIKY, 1.3)
        assert isinstance(rep, LevelSetReport)
        assert rep.level == 1.3
        assert rep.superlevel_boundary_count % 2 == 0
        assert rep.maximal_boundary_count % 2 == 0
        assert rep.maximal_boundary_count == 2 * len(
            maximal_superlevel(SPIKY, 1.3)
        )

    def test_boundary_comparison_at_generic_levels(self):
        # At levels away from the critical averages, {Mf >= lam} never
        # has more components than {|f| >= lam}.
        rng = np.random.default_rng(8)
        for _ in range(20):
            f = random_step_function(rng)
            g = f.abs_function()
            top = max(g.values)
            for frac in (0.199, 0.512, 0.897):
                lam = top * frac
                rep = level_report(f, lam)
                assert (
                    rep.maximal_boundary_count <= rep.superlevel_boundary_count
                ) or _near_critical(g, lam)


def _near_critical(g, lam, tol=1e-6):
    from ballcover.maximal1d import _critical_levels

    crit = _critical_levels(g)
    return bool(np.any(np.abs(crit - lam) <= tol * max(1.0, lam)))


# ---------------------------------------------------------------------------
# maximal_variation_check
# ---------------------------------------------------------------------------


class TestMaximalVariationCheck:
    def test_grid_size_validation(self):
        with pytest.raises(ValueError):
            maximal_variation_check(TENT, level_grid_size=9)

    def test_zero_function_trivial(self):
        f = StepFunction((0.0, 1.0, 2.0), (0.0, 0.0))
        rep = maximal_variation_check(f)
        assert rep.passed
        assert rep.var_f == 0.0
        assert rep.var_mf_lower_bound == 0.0
        assert rep.levels == ()

    def test_report_structure(self):
        rep = maximal_variation_check(SPIKY, level_grid_size=50)
        assert isinstance(rep, VariationReport)
        assert len(rep.levels) == 50
        assert all(isinstance(r, LevelRecord) for r in rep.levels)
        assert rep.var_f == pytest.approx(variation_oracle(SPIKY.abs_function()))
        assert rep.passed

    def test_variation_bound_random_sweep(self):
        rng = np.random.default_rng(9)
        for _ in range(60):
            f = random_step_function(rng)
            rep = maximal_variation_check(f, level_grid_size=40)
            assert rep.passed
            assert rep.var_mf_lower_bound <= rep.var_f + 1e-9
            # The maximal function of a nonzero step function really
            # does vary: the certified bound is strictly positive.
            if max(f.abs_function().values) > 0:
                assert rep.var_mf_lower_bound > 0.0

    def test_level_records_consistent(self):
        rep = maximal_variation_check(SPIKY, level_grid_size=30)
        for rec in rep.levels:
            assert 0.0 < rec.level < 3.0
            if not rec.skipped:
                assert rec.passed == (rec.count_maximal <= rec.count_function)

    def test_degenerate_grid_raises(self):
        # With max value M and grid levels M*j/(size+1), a function
        # whose critical set contains every grid level forces a skip at
        # each of them.  Piece values M*j/11 for j = 1..10 plus the peak
        # M make all ten levels of a size-10 grid critical.
        M = 11.0
        values = tuple(M * j / 11.0 for j in range(1, 11)) + (M,)
        xs = tuple(float(i) for i in range(len(values) + 1))
        f = StepFunction(xs, values)
        with pytest.raises(ValueError, match="degenerate level grid"):
            maximal_variation_check(f, level_grid_size=10)

    @given(st.integers(min_value=0, max_value=10_000))
    @settings(max_examples=30)
    def test_property_random_functions(self, seed):
        rng = np.random.default_rng(seed)
        f = random_step_function(rng, max_pieces=8)
        rep = maximal_variation_check(f, level_grid_size=25)
        assert rep.passed
        assert rep.var_mf_lower_bound <= rep.var_f + 1e-9
