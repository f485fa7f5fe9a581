"""Disorder-ensemble statistics."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np
from scipy import stats as sps


class Welford:
    """Streaming mean and sample variance."""

    def __init__(self):
        self.count = 0
        self.mean = 0.0
        self._m2 = 0.0

    def push(self, x: float) -> None:
        self.count += 1
        delta = x - self.mean
        self.mean += delta / self.count
        self._m2 += delta * (x - self.mean)

    @property
    def variance(self) -> float:
        return self._m2 / (self.count - 1) if self.count > 1 else float("nan")


def two_pass(values) -> tuple[float, float]:
    """Mean and sample variance by the textbook two-pass formula."""
    x = np.asarray(values, dtype=float)
    mean = float(np.sum(x) / x.size)
    var = float(np.sum((x - mean) ** 2) / (x.size - 1)) if x.size > 1 else float("nan")
    return mean, var


def variance_stderr(values) -> float:
    """Standard error of the sample variance, ``sqrt((m4 - s^4 (n-3)/(n-1)) / n)``."""
    x = np.asarray(values, dtype=float)
    n = x.size
    if n < 4:
        return float("nan")
    c = x - x.mean()
    s2 = float(np.sum(c**2) / (n - 1))
    m4 = float(np.mean(c**4))
    return math.sqrt(max(m4 - s2**2 * (n - 3) / (n - 1), 0.0) / n)


@dataclass(frozen=True)
class EnsembleStats:
    """Statistics of ``S`` and of ``L^-(d-1) S`` at one block side ``L``."""

    L: int
    count: int
    mean: float
    variance: float
    stderr: float
    normalized_mean: float
    normalized_variance: float
    normalized_variance_stderr: float

    def to_dict(self) -> dict:
        return asdict(self)


def ensemble_stats(L: int, dimension: int, values) -> EnsembleStats:
    """Streamed statistics; ``values`` must already be in realization order."""
    acc = Welford()
    for v in values:
        acc.push(float(v))
    var = acc.variance
    var = max(var, 0.0) if acc.count > 1 else float("nan")
    stderr = math.sqrt(var / acc.count) if acc.count > 1 else float("nan")
    scale = float(L) ** (dimension - 1)
    var_se = variance_stderr(values)
    return EnsembleStats(
        L=int(L),
        count=acc.count,
        mean=acc.mean,
        variance=var,
        stderr=stderr,
        normalized_mean=acc.mean / scale,
        normalized_variance=var / scale**2,
        normalized_variance_stderr=var_se / scale**2,
    )


def mean_and_stderr(samples: np.ndarray, axis: int = 0) -> tuple[np.ndarray, np.ndarray]:
    samples = np.asarray(samples, dtype=float)
    n = samples.shape[axis]
    mean = samples.mean(axis=axis)
    se = samples.std(axis=axis, ddof=1) / math.sqrt(n) if n > 1 else np.full_like(mean, np.nan)
    return mean, se


def combined_stderr(*errors: float) -> float:
    return math.sqrt(sum(e * e for e in errors))


@dataclass(frozen=True)
class OneSidedTest:
    """``H1: a > b``; ``method`` is ``"z"`` (means) or ``"signed-rank"`` (paired ranks)."""

    difference: float
    stderr: float
    z: float
    p_value: float
    level: float
    method: str = "z"

    @property
    def rejects(self) -> bool:
        return self.p_value < 1.0 - self.level


def one_sided_greater(a, b, paired: bool = False, level: float = 0.95) -> OneSidedTest:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if paired:
        d = a - b
        diff, se = float(d.mean()), float(d.std(ddof=1) / math.sqrt(d.size))
    else:
        diff = float(a.mean() - b.mean())
        se = combined_stderr(a.std(ddof=1) / math.sqrt(a.size), b.std(ddof=1) / math.sqrt(b.size))
    if se == 0.0:
        z = math.inf if diff > 0 else (-math.inf if diff < 0 else 0.0)
    else:
        z = diff / se
    return OneSidedTest(diff, se, z, float(sps.norm.sf(z)), level)


def signed_rank_greater(a, b, level: float = 0.95) -> OneSidedTest:
    """Paired one-sided Wilcoxon signed-rank test of ``H1: a > b``.

    Robust where the paired differences are too heavy-tailed for the
    normal approximation behind :func:`one_sided_greater`. ``difference``
    is the median paired difference; ``z`` is the normal-approximation
    statistic of the rank sum.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    d = a - b
    if not np.any(d):
        return OneSidedTest(0.0, math.nan, 0.0, 1.0, level, "signed-rank")
    res = sps.wilcoxon(a, b, alternative="greater", method="approx")
    return OneSidedTest(float(np.median(d)), math.nan, float(res.zstatistic), float(res.pvalue), level, "signed-rank")
