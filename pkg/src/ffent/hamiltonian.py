"""Disorder models and dense assembly of ``H = -Delta + V``.

Sign convention: the discrete Laplacian has no diagonal term, so every
nearest-neighbour hop enters ``H`` as ``-1`` and the clean chain band is
``[-2, 2]``. Finite volumes use Dirichlet truncation, hops leaving the box
are dropped.
"""

from __future__ import annotations

import csv
import math
from dataclasses import asdict, dataclass, field
from typing import ClassVar

import numpy as np

from .errors import DomainError, GeometryError, ModelError, ParameterError
from .lattice import LatticeSpec, Region

_MASK64 = (1 << 64) - 1
GOLDEN_FREQUENCY = (math.sqrt(5.0) - 1.0) / 2.0


def mix64(master_seed: int, index: int) -> int:
    """SplitMix64 finalizer applied to ``master_seed + (index + 1) * golden``.

    This is the per-realization stream seed. Realization ``i`` never depends
    on how many realizations are requested in total.
    """
    z = (int(master_seed) + (int(index) + 1) * 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def stream_rng(stream_seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(int(stream_seed)))


# --------------------------------------------------------------------------
# potential models
# --------------------------------------------------------------------------


def _nested(spec: LatticeSpec, draws: np.ndarray) -> np.ndarray:
    """Place sequential draws on the sites in shell order (see ``LatticeSpec.shell_order``)."""
    out = np.empty(spec.site_count)
    out[spec.shell_order] = draws
    return out


@dataclass(frozen=True)
class PotentialModel:
    """Base class; subclasses provide :meth:`values`."""

    kind: ClassVar[str] = ""
    random: ClassVar[bool] = True

    def check(self, spec: LatticeSpec) -> None:
        pass

    def values(self, spec: LatticeSpec, rng: np.random.Generator) -> np.ndarray:
        raise NotImplementedError

    def to_dict(self) -> dict:
        return {"kind": self.kind, **asdict(self)}


@dataclass(frozen=True)
class Zero(PotentialModel):
    kind: ClassVar[str] = "zero"
    random: ClassVar[bool] = False

    def values(self, spec, rng):
        return np.zeros(spec.site_count)


@dataclass(frozen=True)
class IidUniform(PotentialModel):
    """``V(x) = g U(x)`` with ``U`` i.i.d. uniform on ``[-1, 1]`` (Hölder, tau = 1)."""

    amplitude: float
    kind: ClassVar[str] = "iid_uniform"

    def __post_init__(self):
        if not self.amplitude > 0:
            raise ParameterError(f"amplitude must be > 0, got {self.amplitude}")

    def values(self, spec, rng):
        return _nested(spec, self.amplitude * rng.uniform(-1.0, 1.0, size=spec.site_count))


@dataclass(frozen=True)
class IidGaussian(PotentialModel):
    """Gaussian i.i.d. potential.

    A stress model only: the unbounded support is outside the compactly
    supported Hölder-continuous class the localization bounds assume.
    """

    stddev: float
    kind: ClassVar[str] = "iid_gaussian"

    def __post_init__(self):
        if not self.stddev > 0:
            raise ParameterError(f"stddev must be > 0, got {self.stddev}")

    def values(self, spec, rng):
        return _nested(spec, self.stddev * rng.standard_normal(spec.site_count))


@dataclass(frozen=True)
class AlmostMathieu(PotentialModel):
    """Quasiperiodic ``V(x) = 2 g cos(2 pi (alpha x + omega))`` on ``Z``.

    With ``random_phase`` the phase is drawn uniformly from ``[0, 1)`` per
    realization, which is the ergodic average over ``omega``; otherwise the
    values depend on ``(g, alpha, omega)`` only.
    """

    coupling: float
    frequency: float = GOLDEN_FREQUENCY
    phase: float = 0.0
    random_phase: bool = False
    kind: ClassVar[str] = "almost_mathieu"

    def __post_init__(self):
        if not self.coupling > 0:
            raise ParameterError(f"coupling must be > 0, got {self.coupling}")
        if not 0.0 < self.frequency < 1.0:
            raise ParameterError(f"frequency must be in (0, 1), got {self.frequency}")
        if not 0.0 <= self.phase < 1.0:
            raise ParameterError(f"phase must be in [0, 1), got {self.phase}")

    @property
    def random(self) -> bool:  # type: ignore[override]
        return self.random_phase

    def check(self, spec):
        if spec.dimension != 1:
            raise ModelError("the almost Mathieu potential is defined for d = 1 only")

    def values(self, spec, rng):
        phase = rng.uniform(0.0, 1.0) if self.random_phase else self.phase
        x = spec.coords[:, 0].astype(float)
        return 2.0 * self.coupling * np.cos(2.0 * np.pi * (self.frequency * x + phase))


MODELS = {cls.kind: cls for cls in (Zero, IidUniform, IidGaussian, AlmostMathieu)}


def model_from_dict(data: dict) -> PotentialModel:
    """Inverse of :meth:`PotentialModel.to_dict`; unknown keys are rejected."""
    data = dict(data)
    kind = data.pop("kind", None)
    if kind not in MODELS:
        raise ParameterError(f"unknown potential kind {kind!r}; expected one of {sorted(MODELS)}")
    cls = MODELS[kind]
    allowed = set(cls.__dataclass_fields__)
    extra = set(data) - allowed
    if extra:
        raise ParameterError(f"unknown keys for {kind}: {sorted(extra)}")
    try:
        return cls(**data)
    except TypeError as exc:
        raise ParameterError(f"bad parameters for {kind}: {exc}") from None


# --------------------------------------------------------------------------
# realizations and matrices
# --------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class DisorderRealization:
    spec: LatticeSpec
    values: np.ndarray
    model: PotentialModel
    master_seed: int
    realization_index: int
    stream_seed: int

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["flat_index", "V"])
            for i, v in enumerate(self.values):
                w.writerow([i, repr(float(v))])


def sample_potential(
    model: PotentialModel, spec: LatticeSpec, master_seed: int, realization_index: int
) -> DisorderRealization:
    """Deterministic draw of one potential on ``spec``.

    I.i.d. values are laid out in shell order, so a realization restricted
    to a smaller centred box is the same realization on that box: changing
    the padding changes only the sites outside the old box.
    """
    model.check(spec)
    if realization_index < 0:
        raise ParameterError("realization_index must be nonnegative")
    seed = mix64(master_seed, realization_index)
    values = np.ascontiguousarray(model.values(spec, stream_rng(seed)), dtype=float)
    values.setflags(write=False)
    return DisorderRealization(spec, values, model, int(master_seed), int(realization_index), seed)


@dataclass(frozen=True, eq=False)
class HamiltonianMatrix:
    """Dense symmetric matrix on the sites ``sites`` of ``spec`` (all sites if None)."""

    spec: LatticeSpec
    matrix: np.ndarray
    mu_shift: float = 0.0
    sites: np.ndarray | None = field(default=None)

    @property
    def order(self) -> int:
        return self.matrix.shape[0]

    @property
    def site_indices(self) -> np.ndarray:
        return np.arange(self.spec.site_count) if self.sites is None else self.sites

    def gershgorin_interval(self) -> tuple[float, float]:
        diag = np.diag(self.matrix)
        return float(diag.min() - 2 * self.spec.dimension), float(diag.max() + 2 * self.spec.dimension)


def hopping_pairs(spec: LatticeSpec) -> np.ndarray:
    """Index pairs ``(i, j)``, ``i < j``, of nearest neighbours inside the box."""
    pairs = []
    idx = np.arange(spec.site_count)
    for axis in range(spec.dimension):
        stride = spec.side ** (spec.dimension - 1 - axis)
        has_next = spec.coords[:, axis] < spec.half_width
        i = idx[has_next]
        pairs.append(np.stack([i, i + stride], axis=1))
    return np.concatenate(pairs) if pairs else np.empty((0, 2), dtype=int)


def assemble(spec: LatticeSpec, realization: DisorderRealization, mu_shift: float = 0.0) -> HamiltonianMatrix:
    """Dense ``H = -Delta + V`` (minus ``mu_shift`` on the diagonal) with Dirichlet truncation."""
    if realization.spec != spec:
        raise GeometryError("realization was sampled on a different box")
    n = spec.site_count
    h = np.zeros((n, n))
    p = hopping_pairs(spec)
    h[p[:, 0], p[:, 1]] = -1.0
    h[p[:, 1], p[:, 0]] = -1.0
    h[np.diag_indices(n)] = realization.values - mu_shift
    h.setflags(write=False)
    return HamiltonianMatrix(spec, h, float(mu_shift))


def local_positions(domain: np.ndarray | None, sites: np.ndarray, site_count: int) -> np.ndarray:
    """Positions of ``sites`` inside an ordered ``domain`` (``None`` = whole box)."""
    sites = np.asarray(sites, dtype=np.int64)
    if domain is None:
        if sites.size and (sites.min() < 0 or sites.max() >= site_count):
            raise GeometryError("sites outside the box")
        return sites
    pos = np.searchsorted(domain, sites)
    ok = (pos < domain.size) & (domain[np.minimum(pos, domain.size - 1)] == sites)
    if not np.all(ok):
        raise GeometryError("region is not contained in the operator's domain")
    return pos


def restrict(h: HamiltonianMatrix, region: Region) -> HamiltonianMatrix:
    """Dirichlet restriction: the principal submatrix on ``region``."""
    if len(region) == 0:
        raise DomainError("cannot restrict to an empty region")
    if region.parent != h.spec:
        raise GeometryError("region belongs to a different box")
    pos = local_positions(h.sites, region.sites, h.spec.site_count)
    sub = h.matrix[np.ix_(pos, pos)].copy()
    sub.setflags(write=False)
    return HamiltonianMatrix(h.spec, sub, h.mu_shift, region.sites.copy())
