import math

import numpy as np
import pytest

from ffent.ensemble import (
    ExperimentConfig,
    fractional_moment_profile,
    halfspace_surface_density,
    kernel_decay_profile,
    padding_check,
    restriction_proximity,
    run_entropy_sweep,
    split_check_1d,
    variance_scaling,
)
from ffent.ensemble.stats import two_pass
from ffent.errors import ExperimentAborted, FitUnderdetermined, GeometryError, StatisticalPowerError
from ffent.hamiltonian import mix64
from ffent.oracle import clean_entropy_1d

UNIFORM5 = {"kind": "iid_uniform", "amplitude": 5.0}
ZERO = {"kind": "zero"}


def cfg(**kw):
    data = {"model": UNIFORM5, "dimension": 1, "block_half_widths": [3, 6], "realizations": 12, "padding": 8}
    data.update(kw)
    return ExperimentConfig.from_dict(data)


class TestSweep:
    def test_record_schema_and_order(self):
        c = cfg(renyi_alphas=[2.0])
        res = run_entropy_sweep(c)
        assert len(res.records) == 2 * 12
        keys = {"experiment", "model", "d", "L", "pad", "mu", "seed", "stream_seed", "realization", "status",
                "S_bits", "renyi", "wall_ms"}
        assert keys <= set(res.records[0])
        order = [(r["L"], r["realization"]) for r in res.records]
        assert order == sorted(order)
        assert all(r["wall_ms"] is None for r in res.records)
        assert all(r["stream_seed"] == mix64(0, r["realization"]) for r in res.records)
        assert set(res.records[0]["renyi"]) == {"2.0"}

    def test_entropy_bounds(self):
        res = run_entropy_sweep(cfg(dimension=2, block_half_widths=[1, 2], padding=3))
        for r in res.records:
            assert 0 <= r["S_bits"] <= (r["L"]) ** 2

    def test_threads_do_not_change_results(self):
        c = cfg()
        assert run_entropy_sweep(c, threads=1).records == run_entropy_sweep(c, threads=3).records

    def test_more_realizations_keep_prefix(self):
        small = run_entropy_sweep(cfg(realizations=5)).records
        big = run_entropy_sweep(cfg(realizations=10)).records
        for L in (7, 13):
            a = [r["S_bits"] for r in small if r["L"] == L]
            b = [r["S_bits"] for r in big if r["L"] == L][:5]
            assert a == b

    def test_streamed_stats_match_two_pass(self):
        res = run_entropy_sweep(cfg(realizations=30))
        for s in res.stats:
            m, v = two_pass(res.values(s.L))
            assert s.mean == pytest.approx(m, rel=1e-12)
            assert s.variance == pytest.approx(v, rel=1e-12)

    def test_mu_below_spectrum_gives_zero(self):
        res = run_entropy_sweep(cfg(chemical_potential=-20.0))
        assert all(r["S_bits"] == 0.0 for r in res.records)
        assert all(s.mean == 0.0 for s in res.stats)

    def test_degenerate_fermi_level_aborts(self):
        # the clean odd chain has an exact zero mode
        with pytest.raises(ExperimentAborted, match="degenerate"):
            run_entropy_sweep(cfg(model=ZERO, chemical_potential=0.0, realizations=2))

    def test_clean_box_approaches_sine_kernel(self):
        c = cfg(model=ZERO, block_half_widths=[4], realizations=1, padding=400)
        s = run_entropy_sweep(c).stats[0].mean
        assert abs(s - clean_entropy_1d(math.pi / 2, 9).value) < 1e-3

    def test_padding_check(self):
        out = padding_check(cfg(realizations=20))
        assert set(out) == {7, 13}
        assert all(v["converged"] for v in out.values())


class TestProfiles:
    def test_decay_profile_disordered(self):
        res = kernel_decay_profile(cfg(block_half_widths=[10], realizations=400))
        assert 0 <= res.mean[0] <= 1
        assert res.fit.rate > 0 and res.fit.r2 > 0.9

    def test_decay_r_max_bound(self):
        with pytest.raises(GeometryError):
            kernel_decay_profile(cfg(r_max=30))

    def test_decay_clean_is_not_exponential(self):
        res = kernel_decay_profile(cfg(model=ZERO, block_half_widths=[30], realizations=1), strict=False)
        assert res.fit is not None and res.fit.r2 < 0.9

    def test_decay_underdetermined(self):
        with pytest.raises(FitUnderdetermined):
            kernel_decay_profile(cfg(realizations=2, r_max=3, block_half_widths=[2]))

    def test_proximity(self):
        res = restriction_proximity(cfg(block_half_widths=[12], realizations=40, padding=12))
        assert res.extra["center_diff_mean"] <= 1e-3
        assert res.fit.rate > 0
        assert res.mean[0] > res.mean[6]

    def test_proximity_needs_padding(self):
        with pytest.raises(GeometryError):
            restriction_proximity(cfg(padding=3))

    def test_fractional_moments_bound(self):
        c = cfg(block_half_widths=[10], realizations=40, resolvent_epsilon=0.05, moment_s=0.4)
        res = fractional_moment_profile(c)
        assert res.extra["max_sample"] <= 0.05**-0.4
        assert all(max(r["moments"]) <= 0.05**-0.4 for r in res.records)
        assert res.fit.rate > 0

    def test_fractional_moments_clean_poor_fit(self):
        res = fractional_moment_profile(cfg(model=ZERO, block_half_widths=[30], realizations=1), strict=False)
        assert res.fit is None or res.fit.r2 < 0.9


class TestSplit:
    def test_records_and_positivity(self):
        res = split_check_1d(cfg(block_half_widths=[2, 4], realizations=8))
        assert res.box_half_width == 16
        assert len(res.records) == 16
        assert all(r["S_plus"] > 0 and r["S_minus"] > 0 for r in res.records)
        assert res.mean[1] <= res.mean[0]

    def test_d2_rejected(self):
        with pytest.raises(GeometryError, match="d=1 only"):
            split_check_1d(cfg(dimension=2, block_half_widths=[1], padding=2))

    def test_small_box_rejected(self):
        with pytest.raises(GeometryError):
            split_check_1d(cfg(split_box_half_width=10))

    def test_clean_discrepancy_does_not_vanish(self):
        res = split_check_1d(cfg(model=ZERO, block_half_widths=[4, 16], realizations=1))
        assert np.all(res.mean > 0.1)


class TestVariance:
    def test_needs_realizations(self):
        with pytest.raises(StatisticalPowerError):
            variance_scaling(cfg(realizations=50))

    def test_zero_model_has_no_variance(self):
        res = variance_scaling(cfg(model=ZERO, realizations=100, block_half_widths=[2, 3, 4, 5]))
        assert res.status == "no-variance" and res.fit is None

    def test_d1_raw_variance_column(self):
        res = variance_scaling(cfg(realizations=100, block_half_widths=[2, 4, 6, 8]))
        header, rows = res.table()
        assert "raw_var" in header and "beta_hat" in header
        assert res.bound_exponent == 0.0
        assert rows[0][header.index("raw_var")] == res.stats[0].variance


class TestHalfspace:
    def test_summands_decay(self):
        res = halfspace_surface_density(cfg(block_half_widths=[8], realizations=30, halfspace_box_half_width=24))
        assert res.summand_mean[6] < res.summand_mean[1]
        assert res.rhs_mean > 0
        assert res.depth_cut <= 16

    def test_mu_below_spectrum(self):
        res = halfspace_surface_density(cfg(block_half_widths=[4], realizations=3, chemical_potential=-20.0))
        assert res.rhs_mean == 0.0 and res.lhs[0][1] == 0.0

    def test_weak_localization_truncation(self):
        from ffent.errors import TruncationError

        with pytest.raises(TruncationError):
            halfspace_surface_density(cfg(model=ZERO, block_half_widths=[4], realizations=1))
