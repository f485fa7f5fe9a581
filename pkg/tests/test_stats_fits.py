import math

import numpy as np
import pytest

from ffent.errors import FitUnderdetermined
from ffent.ensemble.fits import fit_decay_profile, fit_exponential, fit_power_law, usable_window
from ffent.ensemble.stats import (
    Welford,
    combined_stderr,
    ensemble_stats,
    mean_and_stderr,
    one_sided_greater,
    signed_rank_greater,
    two_pass,
    variance_stderr,
)


def test_welford_matches_two_pass():
    rng = np.random.default_rng(0)
    x = 1e6 + rng.standard_normal(1000) * 1e-3
    acc = Welford()
    for v in x:
        acc.push(v)
    m, v = two_pass(x)
    assert acc.mean == pytest.approx(m, rel=1e-12)
    assert acc.variance == pytest.approx(v, rel=1e-6)


def test_ensemble_stats_fields():
    vals = [1.0, 2.0, 3.0, 4.0]
    s = ensemble_stats(9, 2, vals)
    assert s.count == 4 and s.mean == 2.5
    assert s.variance == pytest.approx(np.var(vals, ddof=1))
    assert s.stderr == pytest.approx(math.sqrt(s.variance / 4))
    assert s.stderr <= math.sqrt(s.variance)
    assert s.normalized_mean == pytest.approx(2.5 / 9)
    assert s.normalized_variance == pytest.approx(s.variance / 81)


def test_zero_variance():
    s = ensemble_stats(5, 1, [0.0] * 10)
    assert s.variance == 0.0 and s.stderr == 0.0


def test_variance_stderr_normal():
    rng = np.random.default_rng(1)
    x = rng.standard_normal(20_000)
    # for normal data the standard error of s^2 is about sqrt(2 / n)
    assert variance_stderr(x) == pytest.approx(math.sqrt(2 / 20_000), rel=0.05)
    assert math.isnan(variance_stderr([1.0, 2.0]))


def test_mean_and_stderr_columns():
    m, se = mean_and_stderr(np.array([[1.0, 2.0], [3.0, 2.0]]))
    assert m.tolist() == [2.0, 2.0]
    assert se[1] == 0.0
    assert combined_stderr(3.0, 4.0) == 5.0


def test_one_sided_test():
    rng = np.random.default_rng(2)
    a = rng.normal(1.0, 1.0, 400)
    b = rng.normal(0.0, 1.0, 400)
    assert one_sided_greater(a, b).rejects
    assert not one_sided_greater(b, a).rejects
    assert one_sided_greater(a, a - 0.5, paired=True).rejects
    t = one_sided_greater(np.ones(5), np.ones(5), paired=True)
    assert t.z == 0.0 and not t.rejects


def test_exponential_fit_recovers_rate():
    x = np.arange(1, 15, dtype=float)
    f = fit_exponential(x, 3.0 * np.exp(-0.7 * x))
    assert f.rate == pytest.approx(0.7)
    assert f.prefactor == pytest.approx(3.0)
    assert f.r2 == pytest.approx(1.0)
    d = f.to_dict()
    assert d["gamma_hat"] == pytest.approx(0.7) and d["window"] == [1.0, 14.0]


def test_exponential_fit_of_power_law_is_poor():
    x = np.arange(1, 60, dtype=float)
    y = 1.0 / x
    assert fit_exponential(x, y).r2 < 0.9


def test_power_fit_with_errors():
    rng = np.random.default_rng(3)
    x = np.array([9.0, 13.0, 17.0, 21.0, 25.0])
    y = 2.0 * x**-0.8 * (1 + 0.01 * rng.standard_normal(5))
    f = fit_power_law(x, y, 0.01 * y)
    assert f.exponent == pytest.approx(-0.8, abs=0.05)
    assert f.ci95[0] < f.exponent < f.ci95[1] < 0
    assert 0 <= f.r2 <= 1 and f.to_dict()["beta_hat"] == f.exponent


def test_fits_need_four_points():
    with pytest.raises(FitUnderdetermined):
        fit_exponential([1, 2, 3], [1, 0.5, 0.25])
    with pytest.raises(FitUnderdetermined):
        fit_power_law([1, 2, 3], [1, 0.5, 0.25])


def test_usable_window_is_leading_run():
    mean = np.array([1.0, 0.5, 0.01, 0.2, 0.1])
    se = np.array([0.01, 0.01, 0.01, 0.001, 0.001])
    assert usable_window(mean, se).tolist() == [0, 1]
    assert usable_window([1.0, 1e-13, 1.0], [0, 0, 0]).tolist() == [0]


def test_decay_profile_underdetermined():
    with pytest.raises(FitUnderdetermined):
        fit_decay_profile(np.arange(6), np.ones(6), np.ones(6))


def test_signed_rank_handles_heavy_tails():
    rng = np.random.default_rng(3)
    b = rng.uniform(0.9, 1.1, 200) * 1e-12
    a = b + np.exp(rng.normal(-25, 4, 200))
    a[0] = 1.0
    assert signed_rank_greater(a, b).rejects
    assert not one_sided_greater(a, b, paired=True).rejects
    assert not signed_rank_greater(b, b).rejects
