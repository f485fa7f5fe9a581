"""Per-realization work units and their deterministic parallel execution."""

from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Callable, Iterable, TypeVar

import numpy as np
from threadpoolctl import threadpool_limits

from ..hamiltonian import HamiltonianMatrix, assemble, sample_potential
from ..lattice import LatticeSpec
from ..spectral import EigenDecomposition, FermiProjection, diagonalize, fermi_projection, filled_count, mu_from_filling
from .config import ExperimentConfig

T = TypeVar("T")


def resolve_threads(threads: int) -> int:
    return (os.cpu_count() or 1) if threads == 0 else max(1, int(threads))


def map_realizations(fn: Callable[[int], T], indices: Iterable[int], threads: int = 1) -> list[T]:
    """Apply ``fn`` to each realization index; results come back in index order.

    BLAS is pinned to one thread while the work runs, so every eigensolve
    executes the same instruction sequence whatever the worker count.
    """
    indices = list(indices)
    workers = resolve_threads(threads)
    with threadpool_limits(limits=1):
        if workers == 1:
            return [fn(i) for i in indices]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, indices))


@dataclass
class BoxState:
    """One realization on one box: potential, ``H``, spectrum and Fermi level."""

    spec: LatticeSpec
    h: HamiltonianMatrix
    eig: EigenDecomposition
    stream_seed: int
    values: np.ndarray

    def mu(self, config: ExperimentConfig) -> float:
        if config.chemical_potential is not None:
            return float(config.chemical_potential)
        return mu_from_filling(self.eig, filled_count(self.eig.order, config.filling_fraction))

    def projection(self, config: ExperimentConfig) -> FermiProjection:
        return fermi_projection(self.eig, self.mu(config))


def build_box(config: ExperimentConfig, half_width: int, index: int, diagonalize_h: bool = True) -> BoxState:
    spec = LatticeSpec(config.dimension, half_width)
    real = sample_potential(config.model, spec, config.master_seed, index)
    h = assemble(spec, real)
    eig = diagonalize(h) if diagonalize_h else None
    return BoxState(spec, h, eig, real.stream_seed, real.values)


@contextmanager
def stopwatch(enabled: bool):
    box = {"ms": None}
    t0 = time.perf_counter()
    try:
        yield box
    finally:
        if enabled:
            box["ms"] = round((time.perf_counter() - t0) * 1e3, 3)


def base_record(experiment: str, config: ExperimentConfig, L: int, index: int, stream_seed: int,
                mu: float | None) -> dict:
    return {
        "experiment": experiment,
        "model": config.model.to_dict(),
        "d": config.dimension,
        "L": int(L),
        "pad": config.padding,
        "mu": mu,
        "seed": config.master_seed,
        "stream_seed": int(stream_seed),
        "realization": int(index),
        "status": "ok",
        "S_bits": None,
        "renyi": {},
        "wall_ms": None,
    }
