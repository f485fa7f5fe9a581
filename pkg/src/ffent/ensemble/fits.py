"""Exponential and power-law fits in log space."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np
from scipy import stats as sps

from ..errors import FitUnderdetermined

MIN_POINTS = 4
# entries below this are treated as round-off, not signal
NUMERICAL_FLOOR = 1e-12


@dataclass(frozen=True)
class FitResult:
    """``y ~ prefactor * exp(-rate x)`` or ``y ~ prefactor * x^exponent``.

    ``slope`` is the fitted log-space slope: ``-rate`` for exponential fits and
    the exponent for power laws. ``ci95`` bounds the slope.
    """

    kind: str
    slope: float
    slope_stderr: float
    ci95: tuple[float, float]
    prefactor: float
    r2: float
    window: tuple[float, float]
    n_points: int

    @property
    def rate(self) -> float:
        return -self.slope

    @property
    def exponent(self) -> float:
        return self.slope

    def to_dict(self) -> dict:
        out = asdict(self)
        out["ci95"] = list(self.ci95)
        out["window"] = list(self.window)
        if self.kind == "exponential":
            out["gamma_hat"] = self.rate
        else:
            out["beta_hat"] = self.exponent
        return out


def usable_window(mean, stderr, sigma: float = 10.0, floor: float = NUMERICAL_FLOOR) -> np.ndarray:
    """Indices of the leading contiguous run with ``mean > sigma * stderr`` and ``mean > floor``."""
    mean = np.asarray(mean, dtype=float)
    stderr = np.nan_to_num(np.asarray(stderr, dtype=float), nan=0.0)
    ok = (mean > sigma * stderr) & (mean > floor)
    bad = np.flatnonzero(~ok)
    stop = bad[0] if bad.size else ok.size
    return np.arange(stop)


def _linear(x, y, weights=None, known_errors=False):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    w = np.ones_like(x) if weights is None else np.asarray(weights, dtype=float)
    n = x.size
    sw = w.sum()
    xm, ym = np.sum(w * x) / sw, np.sum(w * y) / sw
    sxx = np.sum(w * (x - xm) ** 2)
    slope = float(np.sum(w * (x - xm) * (y - ym)) / sxx)
    intercept = float(ym - slope * xm)
    resid = y - (intercept + slope * x)
    ss_res = float(np.sum(w * resid**2))
    ss_tot = float(np.sum(w * (y - ym) ** 2))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    if known_errors:
        se = math.sqrt(1.0 / sxx)
        q = float(sps.norm.ppf(0.975))
    else:
        se = math.sqrt(ss_res / (n - 2) / sxx)
        q = float(sps.t.ppf(0.975, n - 2))
    return slope, intercept, se, q, min(max(r2, 0.0), 1.0)


def fit_exponential(x, y) -> FitResult:
    """Least squares of ``log y`` against ``x``; all ``y`` must be positive."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.size < MIN_POINTS:
        raise FitUnderdetermined(f"{x.size} usable points, need {MIN_POINTS}")
    if np.any(y <= 0):
        raise FitUnderdetermined("exponential fit needs positive values")
    slope, intercept, se, q, r2 = _linear(x, np.log(y))
    return FitResult("exponential", slope, se, (slope - q * se, slope + q * se),
                     math.exp(intercept), r2, (float(x[0]), float(x[-1])), int(x.size))


def fit_power_law(x, y, y_err=None) -> FitResult:
    """Least squares of ``log y`` against ``log x``.

    With ``y_err`` the fit is weighted by ``(y / y_err)^2`` (delta method for
    ``log y``) and the confidence interval treats the errors as known.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.size < MIN_POINTS:
        raise FitUnderdetermined(f"{x.size} usable points, need {MIN_POINTS}")
    if np.any(y <= 0) or np.any(x <= 0):
        raise FitUnderdetermined("power-law fit needs positive values")
    weights = None
    if y_err is not None:
        rel = np.asarray(y_err, dtype=float) / y
        if np.any(~np.isfinite(rel)) or np.any(rel <= 0):
            raise FitUnderdetermined("relative errors must be positive and finite")
        weights = 1.0 / rel**2
    slope, intercept, se, q, r2 = _linear(np.log(x), np.log(y), weights, known_errors=y_err is not None)
    return FitResult("power", slope, se, (slope - q * se, slope + q * se),
                     math.exp(intercept), r2, (float(x[0]), float(x[-1])), int(x.size))


def fit_decay_profile(x, mean, stderr, sigma: float = 10.0, floor: float = NUMERICAL_FLOOR) -> FitResult:
    """Exponential fit restricted to :func:`usable_window`."""
    idx = usable_window(mean, stderr, sigma, floor)
    if idx.size < MIN_POINTS:
        raise FitUnderdetermined(f"only {idx.size} points above {sigma} standard errors")
    return fit_exponential(np.asarray(x)[idx], np.asarray(mean)[idx])
