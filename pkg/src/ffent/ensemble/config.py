"""Experiment configuration with a strict JSON schema."""

from __future__ import annotations

import dataclasses
import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import ConfigError, FfentError
from ..hamiltonian import PotentialModel, model_from_dict
from ..lattice import MAX_DIMENSION

MAX_SITES = 4096


def _parse_fraction(value) -> Fraction:
    try:
        frac = Fraction(value) if not isinstance(value, float) else Fraction(value).limit_denominator(10**6)
    except (TypeError, ValueError, ZeroDivisionError):
        raise ConfigError(f"filling_fraction: cannot parse {value!r}") from None
    return frac


@dataclass
class ExperimentConfig:
    """Parameters shared by all ensemble experiments.

    The box for block half-width ``m`` has half-width ``m + padding``. Set
    either ``chemical_potential`` or ``filling_fraction``; the default is half
    filling, resolved per realization between two eigenvalues.
    """

    model: PotentialModel
    dimension: int
    block_half_widths: list[int]
    padding: int = 16
    realizations: int = 100
    master_seed: int = 0
    chemical_potential: float | None = None
    filling_fraction: Fraction | None = None
    renyi_alphas: list[float] = field(default_factory=list)
    r_max: int | None = None
    split_box_half_width: int | None = None
    halfspace_box_half_width: int | None = None
    resolvent_energy: float = 0.0
    resolvent_epsilon: float = 0.01
    moment_s: float = 0.5

    def __post_init__(self):
        if self.chemical_potential is None and self.filling_fraction is None:
            self.filling_fraction = Fraction(1, 2)
        if self.filling_fraction is not None:
            self.filling_fraction = _parse_fraction(self.filling_fraction)
        self.block_half_widths = [int(m) for m in self.block_half_widths]
        self.renyi_alphas = [float(a) for a in self.renyi_alphas]
        self.validate()

    # ------------------------------------------------------------------
    def validate(self) -> None:
        def need(cond, msg):
            if not cond:
                raise ConfigError(msg)

        need(isinstance(self.model, PotentialModel), "model: expected a potential model")
        need(isinstance(self.dimension, int) and 1 <= self.dimension <= MAX_DIMENSION,
             f"dimension: must be an integer in [1, {MAX_DIMENSION}], got {self.dimension!r}")
        need(len(self.block_half_widths) > 0, "block_half_widths: must be nonempty")
        need(all(m >= 0 for m in self.block_half_widths), "block_half_widths: entries must be >= 0")
        need(isinstance(self.padding, int) and self.padding >= 1, "padding: must be an integer >= 1")
        need(isinstance(self.realizations, int) and self.realizations >= 1,
             "realizations: must be an integer >= 1")
        need(isinstance(self.master_seed, int) and 0 <= self.master_seed < 2**64,
             "master_seed: must be an integer in [0, 2^64)")
        need((self.chemical_potential is None) != (self.filling_fraction is None),
             "chemical_potential and filling_fraction are mutually exclusive")
        if self.filling_fraction is not None:
            need(0 < self.filling_fraction < 1, "filling_fraction: must be in (0, 1)")
        need(all(a > 0 and a != 1 for a in self.renyi_alphas), "renyi_alphas: need alpha > 0, alpha != 1")
        need(self.resolvent_epsilon > 0, "resolvent_epsilon: must be > 0")
        need(0 < self.moment_s < 1, "moment_s: must be in (0, 1)")
        for name in ("split_box_half_width", "halfspace_box_half_width", "r_max"):
            v = getattr(self, name)
            need(v is None or (isinstance(v, int) and v >= 1), f"{name}: must be an integer >= 1")
        try:
            from ..lattice import LatticeSpec

            self.model.check(LatticeSpec(self.dimension, 1))
        except FfentError as exc:
            raise ConfigError(f"model: {exc}") from None
        largest = max(self.box_half_widths())
        sites = (2 * largest + 1) ** self.dimension
        need(sites <= MAX_SITES,
             f"largest box has {sites} sites (half-width {largest}, d={self.dimension}); limit is {MAX_SITES}")

    def box_half_width(self, m: int) -> int:
        return m + self.padding

    def box_half_widths(self) -> list[int]:
        out = [self.box_half_width(m) for m in self.block_half_widths]
        for extra in (self.split_box_half_width, self.halfspace_box_half_width):
            if extra is not None:
                out.append(extra)
        return out

    # ------------------------------------------------------------------
    def to_dict(self) -> dict:
        out = {}
        for f in dataclasses.fields(self):
            v = getattr(self, f.name)
            if f.name == "model":
                v = v.to_dict()
            elif isinstance(v, Fraction):
                v = f"{v.numerator}/{v.denominator}"
            out[f.name] = v
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        names = {f.name for f in dataclasses.fields(cls)}
        unknown = sorted(set(data) - names)
        if unknown:
            raise ConfigError(f"unknown config keys: {unknown}")
        missing = sorted(k for k in ("model", "dimension", "block_half_widths") if k not in data)
        if missing:
            raise ConfigError(f"missing required config keys: {missing}")
        kwargs = dict(data)
        try:
            kwargs["model"] = model_from_dict(data["model"])
        except FfentError as exc:
            raise ConfigError(f"model: {exc}") from None
        except (TypeError, AttributeError):
            raise ConfigError("model: expected an object with a 'kind' key") from None
        for key in ("block_half_widths", "renyi_alphas"):
            if key in kwargs and not isinstance(kwargs[key], list):
                raise ConfigError(f"{key}: expected a list")
        try:
            return cls(**kwargs)
        except (TypeError, ValueError) as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(str(exc)) from None

    def canonical_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    def hash(self) -> str:
        return hashlib.sha256(self.canonical_json().encode()).hexdigest()

    def replace(self, **changes) -> "ExperimentConfig":
        data = self.to_dict()
        if changes.get("chemical_potential") is not None and "filling_fraction" not in changes:
            data["filling_fraction"] = None
        if changes.get("filling_fraction") is not None and "chemical_potential" not in changes:
            data["chemical_potential"] = None
        data.update(changes)
        return ExperimentConfig.from_dict(data)
