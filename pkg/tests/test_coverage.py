import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from poisson_chisq import (
    STANDARD_GRID,
    DomainError,
    GridSpec,
    MethodKind,
    coverage_at,
    coverage_curve,
    mc_coverage,
    summarize,
)
from poisson_chisq.coverage import (
    CoverageCurve,
    _coverage_sum,
    _table,
    endpoint_table,
    round_half_up,
    truncation_bound,
)
from poisson_chisq.special_fn import poisson_sf

from . import oracles

U = MethodKind.USUAL
S = MethodKind.STRUCTURAL_JEFFREYS_SCALE
J = MethodKind.JEFFREYS_POISSON

# Frozen from oracles.coverage_oracle("jeffreys", 0.05, 5): mpmath endpoints,
# exact-rational Poisson terms.
JEFFREYS_95_AT_5 = 0.92774426069928238568


class TestGrid:
    def test_standard_grid(self):
        lams = STANDARD_GRID.lambdas()
        assert len(STANDARD_GRID) == 750 == lams.size
        assert lams[0] == 0.1 and lams[-1] == 75.0
        assert lams[29] == 3.0  # no accumulation drift: 30 / 10, not 0.1 * 30

    def test_points_are_index_quotients(self):
        lams = STANDARD_GRID.lambdas()
        assert all(lams[k] == (k + 1) / 10 for k in range(750))

    @pytest.mark.parametrize("args", [(5, 4, 10), (0, 10, 10), (1, 10, 0), (1.5, 10, 10)])
    def test_invalid(self, args):
        with pytest.raises(DomainError):
            GridSpec(*args)


class TestTruncation:
    @pytest.mark.parametrize("lam", [0.1, 1.0, 3.3, 10.0, 42.7, 75.0])
    def test_tail_below_tolerance(self, lam):
        x_max = truncation_bound(lam)
        assert poisson_sf(x_max, lam) <= 1e-12
        assert x_max <= math.ceil(lam + 12 * math.sqrt(lam) + 50)
        if x_max > 0:
            assert poisson_sf(x_max - 1, lam) > 1e-12

    @pytest.mark.parametrize("alpha", [0.05, 0.01])
    @pytest.mark.parametrize("lam", [0.1, 1.0, 10.0, 75.0])
    def test_doubling_bound_is_harmless(self, alpha, lam):
        for method in MethodKind:
            x_max = truncation_bound(lam)
            table = _table(method, alpha).ensure(2 * x_max)
            base = _coverage_sum(lam, table.lower, table.upper, x_max)
            doubled = _coverage_sum(lam, table.lower, table.upper, 2 * x_max)
            assert abs(doubled - base) < 1e-10


class TestCoverageAt:
    def test_small_lambda_near_one(self):
        assert coverage_at(U, 0.05, 1e-6) == pytest.approx(1.0, abs=2e-6)
        assert coverage_at(U, 0.05, 1e-3) > coverage_at(U, 0.05, 0.05)

    def test_oracle_value(self):
        assert coverage_at(J, 0.05, 5.0) == pytest.approx(JEFFREYS_95_AT_5, abs=1e-12)

    @pytest.mark.slow
    def test_oracle_value_rederived(self):
        assert float(oracles.coverage_oracle("jeffreys", 0.05, 5.0, x_max=40)) == pytest.approx(
            JEFFREYS_95_AT_5, abs=1e-15
        )

    def test_table_extremes(self, grid_curves):
        usual = summarize(grid_curves[0.05][U])
        assert round_half_up(coverage_at(U, 0.05, usual.argmax_lambda)) == 0.9964
        struct = summarize(grid_curves[0.05][S])
        assert round_half_up(coverage_at(S, 0.05, struct.argmin_lambda)) == 0.8701

    def test_matches_direct_sum(self):
        # no endpoint cache, no early exit: plain loop over x
        from poisson_chisq import lambda_interval, poisson_pmf

        lam = 12.3
        total = math.fsum(
            poisson_pmf(x, lam)
            for x in range(200)
            if lam in lambda_interval(MethodKind.ADJUSTED_DROP_F2, x, 0.01)
        )
        assert coverage_at(MethodKind.ADJUSTED_DROP_F2, 0.01, lam) == pytest.approx(total, abs=1e-14)

    @pytest.mark.parametrize("lam", [0.0, -1.0, math.inf])
    def test_domain(self, lam):
        with pytest.raises(DomainError):
            coverage_at(U, 0.05, lam)

    @settings(deadline=None, max_examples=60)
    @given(
        st.sampled_from(list(MethodKind)),
        st.sampled_from([0.05, 0.01, 0.1, 0.2]),
        st.floats(min_value=1e-3, max_value=150.0),
    )
    def test_probability_range(self, method, alpha, lam):
        assert 0.0 <= coverage_at(method, alpha, lam) <= 1.0


class TestCurve:
    def test_length_and_range(self, grid_curves):
        for by_method in grid_curves.values():
            for curve in by_method.values():
                assert len(curve) == 750
                assert np.all((curve.values >= 0) & (curve.values <= 1))

    def test_usual_95_above_table_minimum(self, grid_curves):
        values = grid_curves[0.05][U].values
        assert round_half_up(values.min()) >= 0.9504

    def test_uniform_99_minimum(self, grid_curves):
        assert round_half_up(grid_curves[0.01][MethodKind.BAYES_UNIFORM].values.min()) == 0.9048

    @pytest.mark.parametrize("method", list(MethodKind))
    def test_single_point_grid(self, method):
        curve = coverage_curve(method, 0.01, GridSpec.single(37))
        assert len(curve) == 1
        assert curve.values[0] == coverage_at(method, 0.01, 3.7)

    def test_curve_points_equal_coverage_at(self, grid_curves):
        curve = grid_curves[0.05][J]
        for k in (0, 9, 99, 420, 749):
            assert curve.values[k] == coverage_at(J, 0.05, float(curve.lambdas[k]))

    def test_deterministic_across_runs_and_threads(self, grid_curves):
        grid = GridSpec(1, 300, 10)
        a = coverage_curve(S, 0.05, grid)
        b = coverage_curve(S, 0.05, grid)
        c = coverage_curve(S, 0.05, grid, workers=4)
        assert a.values.tobytes() == b.values.tobytes() == c.values.tobytes()
        assert a.values.tobytes() == grid_curves[0.05][S].values[:300].tobytes()

    @pytest.mark.parametrize("alpha", [0.05, 0.01])
    def test_usual_dominates(self, grid_curves, alpha):
        usual = grid_curves[alpha][U].values
        for method, curve in grid_curves[alpha].items():
            assert np.all(usual >= curve.values), method


class TestSummarize:
    def test_constant_curve(self):
        stats = summarize([0.93] * 5, lambdas=[1, 2, 3, 4, 5])
        assert stats.mean == stats.minimum == stats.maximum == 0.93

    def test_first_attainment(self):
        stats = summarize([0.9, 0.8, 0.95, 0.8, 0.95], lambdas=[0.1, 0.2, 0.3, 0.4, 0.5])
        assert stats.argmin_lambda == 0.2 and stats.argmax_lambda == 0.3

    def test_empty(self):
        with pytest.raises(DomainError):
            summarize([], lambdas=[])

    def test_usual_95_row(self, grid_curves):
        assert summarize(grid_curves[0.05][U]).rounded() == (0.9611, 0.9504, 0.9964)

    def test_jeffreys_99_row(self, grid_curves):
        assert summarize(grid_curves[0.01][J]).rounded() == (0.9900, 0.9736, 0.9982)

    @given(st.lists(st.floats(min_value=0, max_value=1), min_size=1, max_size=50))
    def test_ordering(self, values):
        stats = summarize(values, lambdas=list(range(1, len(values) + 1)))
        assert stats.minimum <= stats.mean + 1e-15 and stats.mean <= stats.maximum + 1e-15
        assert stats.minimum == min(values) and stats.maximum == max(values)

    def test_round_half_up(self):
        assert round_half_up(0.96125) == 0.9613
        assert round_half_up(0.96115) == 0.9612
        assert round_half_up(0.99) == 0.99

    @pytest.mark.parametrize("alpha", [0.05, 0.01])
    def test_mean_ordering(self, grid_curves, alpha):
        order = [
            U,
            MethodKind.ADJUSTED_RAISE_F1,
            MethodKind.ADJUSTED_DROP_F2,
            J,
            MethodKind.BAYES_UNIFORM,
            S,
        ]
        means = [summarize(grid_curves[alpha][m]).mean for m in order]
        assert all(a > b for a, b in zip(means, means[1:]))


class TestMonteCarlo:
    def test_single_rep(self):
        est, se = mc_coverage(U, 0.05, 4.2, reps=1, seed=3)
        assert est in (0.0, 1.0) and se == 0.0

    def test_seeded_determinism(self):
        assert mc_coverage(J, 0.05, 7.7, 10_000, seed=11) == mc_coverage(J, 0.05, 7.7, 10_000, seed=11)

    @pytest.mark.parametrize(
        "method, alpha, lam, seed", [(U, 0.05, 10.0, 1000), (S, 0.01, 0.5, 1001)]
    )
    def test_agrees_with_exact(self, method, alpha, lam, seed):
        est, se = mc_coverage(method, alpha, lam, reps=10**6, seed=seed)
        assert abs(est - coverage_at(method, alpha, lam)) <= 3 * se

    @pytest.mark.parametrize("reps", [0, -5, 2.5])
    def test_reps_domain(self, reps):
        with pytest.raises(DomainError):
            mc_coverage(U, 0.05, 1.0, reps, seed=0)


def test_endpoint_table_matches_intervals():
    from poisson_chisq import lambda_interval

    lower, upper = endpoint_table("drop-f2", 0.05, 30)
    assert lower.size == upper.size == 31
    for x in (0, 1, 17, 30):
        iv = lambda_interval("drop-f2", x, 0.05)
        assert (lower[x], upper[x]) == (iv.lower, iv.upper)


def test_curve_type():
    curve = coverage_curve("usual", 0.05, GridSpec(1, 3, 10))
    assert isinstance(curve, CoverageCurve)
    assert curve.method is U and curve.alpha == 0.05
