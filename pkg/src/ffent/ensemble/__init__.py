"""Disorder ensembles: configuration, statistics, fits and experiments."""

from .config import ExperimentConfig
from .experiments import (
    EXPERIMENTS,
    fractional_moment_profile,
    halfspace_surface_density,
    kernel_decay_profile,
    padding_check,
    restriction_proximity,
    run_entropy_sweep,
    split_check_1d,
    variance_scaling,
)
from .fits import FitResult, fit_decay_profile, fit_exponential, fit_power_law
from .stats import EnsembleStats, ensemble_stats, one_sided_greater, signed_rank_greater

__all__ = [
    "EXPERIMENTS",
    "EnsembleStats",
    "ExperimentConfig",
    "FitResult",
    "ensemble_stats",
    "fit_decay_profile",
    "fit_exponential",
    "fit_power_law",
    "fractional_moment_profile",
    "halfspace_surface_density",
    "kernel_decay_profile",
    "one_sided_greater",
    "padding_check",
    "restriction_proximity",
    "run_entropy_sweep",
    "signed_rank_greater",
    "split_check_1d",
    "variance_scaling",
]
