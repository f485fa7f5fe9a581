"""Entanglement entropy of quasifree fermions from one-body projections.

Two equivalent routes are provided:

* block route, ``S = Tr h(P_L)`` with ``P_L`` the block of the projection;
* Pi route, ``S = Tr h0(Pi_L)`` with ``Pi_L = P_L (1 - P_L)``, where ``h0`` is
  defined by ``h(t) = h0(t (1 - t))``.

Eigenvalues of ``P_L`` inside ``[-1e-8, 1 + 1e-8]`` are clipped to ``[0, 1]``
and counted; anything further out is a numerical health failure, because
``h`` and ``h0`` have unbounded derivatives at the endpoints and a silent
large clip would corrupt the entropy.

Any additional test function plugged into the Pi route must be supported on
``[0, 1/4]``, be ``C^2`` away from 0 and satisfy
``|f^(k)(x)| |x|^(k - a) < inf`` for ``k = 0, 1, 2`` and some ``a`` in ``(0, 1]``.
Only ``h``, ``h0`` and the Rényi functions ship.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import xlogy

from .errors import DomainError, NumericHealthError, ParameterError
from .hamiltonian import local_positions
from .lattice import Region
from .spectral import FermiProjection

CLIP_SLOP = 1e-8
HEALTH_LIMIT = 1e-6


@dataclass(frozen=True)
class SpectralFunction:
    """A scalar function applied to eigenvalues: ``binary`` (h), ``h0`` or ``renyi``."""

    kind: str = "binary"
    alpha: float | None = None
    log_base: float = 2.0

    def __post_init__(self):
        if self.kind not in ("binary", "h0", "renyi"):
            raise ParameterError(f"unknown spectral function {self.kind!r}")
        if self.log_base not in (2.0, math.e):
            raise ParameterError("log_base must be 2 or e")
        if self.kind == "renyi":
            if self.alpha is None or not self.alpha > 0 or self.alpha == 1:
                raise ParameterError(f"Renyi index must be > 0 and != 1, got {self.alpha}")

    @property
    def upper(self) -> float:
        return 0.25 if self.kind == "h0" else 1.0

    def __call__(self, t):
        if self.kind == "binary":
            return eval_h(t, self.log_base)
        if self.kind == "h0":
            return eval_h0(t, self.log_base)
        return eval_renyi(t, self.alpha, self.log_base)


BINARY = SpectralFunction("binary")
H0 = SpectralFunction("h0")


def renyi(alpha: float, log_base: float = math.e) -> SpectralFunction:
    return SpectralFunction("renyi", float(alpha), log_base)


@dataclass(frozen=True)
class EntropyResult:
    value: float
    route: str
    clip_count: int = 0
    clip_magnitude: float = 0.0
    log_base: float = 2.0
    alpha: float | None = None

    def __float__(self):
        return float(self.value)


def clip_band(t, upper: float = 1.0, slop: float = CLIP_SLOP) -> tuple[np.ndarray, int, float]:
    """Clip ``t`` to ``[0, upper]``; values beyond ``slop`` raise :class:`DomainError`.

    Returns the clipped array, the number of clipped entries and the largest
    clip distance.
    """
    t = np.asarray(t, dtype=float)
    if np.any(t < -slop) or np.any(t > upper + slop) or not np.all(np.isfinite(t)):
        bad = t[(t < -slop) | (t > upper + slop) | ~np.isfinite(t)]
        raise DomainError(f"value {bad.flat[0]!r} outside [0, {upper}] beyond slop {slop}")
    clipped = np.clip(t, 0.0, upper)
    moved = np.abs(clipped - t)
    count = int(np.count_nonzero(moved))
    return clipped, count, float(moved.max()) if moved.size else 0.0


def eval_h(t, log_base: float = 2.0):
    """Binary entropy ``-t log t - (1 - t) log(1 - t)``, endpoints 0."""
    t, _, _ = clip_band(t)
    out = -(xlogy(t, t) + xlogy(1.0 - t, 1.0 - t)) / math.log(log_base)
    return out if out.ndim else float(out)


def eval_h0(t, log_base: float = 2.0):
    """``h0(t) = h((1 - sqrt(1 - 4 t)) / 2)`` on ``[0, 1/4]``.

    The small root is evaluated as ``2 t / (1 + sqrt(1 - 4 t))``, which has no
    cancellation near ``t = 0``; the radicand is floored at 0.
    """
    t, _, _ = clip_band(t, 0.25)
    root = np.sqrt(np.maximum(1.0 - 4.0 * t, 0.0))
    return eval_h(2.0 * t / (1.0 + root), log_base)


def eval_renyi(t, alpha: float, log_base: float = math.e):
    """``log(t^a + (1 - t)^a) / (1 - a)`` with ``0^a = 0``.

    The prefactor ``1 / (1 - a)`` makes the value nonnegative and tends to
    the natural-log binary entropy as ``a -> 1``.
    """
    if not alpha > 0 or alpha == 1:
        raise ParameterError(f"Renyi index must be > 0 and != 1, got {alpha}")
    t, _, _ = clip_band(t)
    out = np.log(np.power(t, alpha) + np.power(1.0 - t, alpha)) / ((1.0 - alpha) * math.log(log_base))
    return out if out.ndim else float(out)


def _positions(p: FermiProjection, region: Region) -> np.ndarray:
    if p.spec is not None and region.parent != p.spec:
        raise DomainError("region belongs to a different box than the projection")
    return local_positions(p.sites, region.sites, p.order)


def _complement_positions(p: FermiProjection, pos: np.ndarray) -> np.ndarray:
    keep = np.ones(p.order, dtype=bool)
    keep[pos] = False
    return np.flatnonzero(keep)


def block_projection(p: FermiProjection, region: Region) -> np.ndarray:
    """``P_L = chi_L P chi_L`` as a ``|L| x |L|`` matrix."""
    if len(region) == 0:
        raise DomainError("empty block")
    pos = _positions(p, region)
    return p.matrix[np.ix_(pos, pos)]


@dataclass(frozen=True, eq=False)
class PiOperator:
    matrix: np.ndarray
    c1: Region
    c2: Region | None

    def operator_norm(self) -> float:
        return float(np.max(np.abs(np.linalg.eigvalsh(self.matrix)))) if self.matrix.size else 0.0


def pi_operator(p: FermiProjection, c1: Region, c2: Region | None = None) -> PiOperator:
    """``Pi(x, y) = sum_{z in C2} P(x, z) P(z, y)`` for ``x, y`` in ``C1``.

    ``c2=None`` means the complement of ``c1`` inside the projection's domain.
    """
    if len(c1) == 0:
        raise DomainError("C1 must be nonempty")
    i1 = _positions(p, c1)
    i2 = _complement_positions(p, i1) if c2 is None else _positions(p, c2)
    a = p.matrix[np.ix_(i1, i2)]
    return PiOperator(a @ a.T, c1, c2)


def spectrum_entropy(eigenvalues, fn: SpectralFunction = BINARY, route: str = "block") -> EntropyResult:
    """Sum ``fn`` over eigenvalues after health-checked clipping."""
    w = np.asarray(eigenvalues, dtype=float)
    try:
        w, count, mag = clip_band(w, fn.upper)
    except DomainError as exc:
        raise NumericHealthError(f"{route} route: {exc}") from None
    if mag > HEALTH_LIMIT:
        raise NumericHealthError(f"{route} route: clip magnitude {mag:.3g} exceeds {HEALTH_LIMIT}")
    value = float(np.sum(fn(w))) if w.size else 0.0
    return EntropyResult(value, route, count, mag, fn.log_base, fn.alpha)


def block_entropy(block: np.ndarray, fn: SpectralFunction = BINARY) -> EntropyResult:
    """Entropy of a block correlation matrix ``P_L`` given directly."""
    route = "renyi" if fn.kind == "renyi" else "block"
    return spectrum_entropy(np.linalg.eigvalsh(block), fn, route)


def entropy_block_route(p: FermiProjection, region: Region, fn: SpectralFunction = BINARY) -> EntropyResult:
    """``Tr fn(P_L)``; ``fn`` is the binary entropy (bits) or a Rényi function."""
    if fn.kind == "h0":
        raise ParameterError("the block route takes h or a Renyi function, not h0")
    return block_entropy(block_projection(p, region), fn)


def entropy_pi_route(p: FermiProjection, region: Region, h0_function=None) -> EntropyResult:
    """``Tr h0(Pi_L)`` with ``Pi_L = Pi_{L, L^c}``, in bits.

    ``h0_function`` replaces ``eval_h0``; it exists for fault-injection checks.
    """
    pi = pi_operator(p, region)
    w = np.linalg.eigvalsh(pi.matrix)
    fn = H0 if h0_function is None else _Wrapped(h0_function)
    return spectrum_entropy(w, fn, "pi")


@dataclass(frozen=True)
class _Wrapped:
    func: object
    kind: str = "h0"
    upper: float = 0.25
    log_base: float = 2.0
    alpha: float | None = None

    def __call__(self, t):
        return self.func(t)


def complement_symmetry_check(p: FermiProjection, region: Region) -> float:
    """``|S_L - S_{L^c}|`` with the complement taken inside the projection's domain."""
    pos = _positions(p, region)
    comp = _complement_positions(p, pos)
    if pos.size == 0 or comp.size == 0:
        raise DomainError("block must be a strict nonempty subset of the domain")
    s = block_entropy(p.matrix[np.ix_(pos, pos)]).value
    sc = block_entropy(p.matrix[np.ix_(comp, comp)]).value
    return abs(s - sc)


def renyi_entropy(p: FermiProjection, region: Region, alpha: float, log_base: float = math.e) -> EntropyResult:
    """Rényi entanglement entropy ``sum_k r_alpha(lambda_k(P_L))``, nats by default."""
    if alpha == 1:
        raise ParameterError("alpha = 1 is the von Neumann entropy; use entropy_block_route")
    return entropy_block_route(p, region, renyi(alpha, log_base))


def schatten_quasinorm(a: np.ndarray, alpha: float) -> float:
    """``(sum_k sigma_k^alpha)^(1/alpha)`` for a symmetric PSD matrix, ``alpha`` in (0, 1]."""
    if not 0 < alpha <= 1:
        raise ParameterError(f"alpha must be in (0, 1], got {alpha}")
    w = np.linalg.eigvalsh(np.asarray(a, dtype=float))
    if w.size and w.min() < -1e-10:
        raise DomainError(f"matrix is indefinite (eigenvalue {w.min():.3g})")
    # round-off eigenvalues of a singular matrix would dominate sigma^alpha for small alpha
    floor = w.size * np.finfo(float).eps * float(np.max(np.abs(w))) if w.size else 0.0
    w = np.where(w <= floor, 0.0, w)
    return float(np.sum(w**alpha) ** (1.0 / alpha))
