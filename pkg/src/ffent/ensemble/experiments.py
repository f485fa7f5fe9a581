"""Disorder-ensemble experiments.

Every experiment returns a result object holding the per-realization
records (sorted by block side and realization index) and the aggregated
statistics. Results depend only on the configuration, never on the number
of worker threads.

The infinite-volume Fermi projection is replaced by the projection of a
padded box; the padding is a finite-size surrogate and is checked
empirically (see :func:`padding_check`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..entropy import BINARY, block_projection, entropy_block_route, entropy_pi_route, eval_h, renyi_entropy, spectrum_entropy
from ..errors import (
    DegenerateFermiLevel,
    ExperimentAborted,
    FitUnderdetermined,
    GaplessFilling,
    GeometryError,
    NumericHealthError,
    StatisticalPowerError,
    TruncationError,
)
from ..hamiltonian import restrict
from ..lattice import LatticeSpec, boundary, cube_region, distances_to, half_cut
from ..spectral import diagonalize, fermi_projection, resolvent_column
from .config import ExperimentConfig
from .fits import FitResult, fit_decay_profile, fit_power_law
from .runner import base_record, build_box, map_realizations, stopwatch
from .stats import EnsembleStats, combined_stderr, ensemble_stats, mean_and_stderr, one_sided_greater, signed_rank_greater, variance_stderr

ABORT_FRACTION = 0.01
SUMMAND_CUTOFF = 1e-6
MIN_VARIANCE_REALIZATIONS = 100
# fit windows keep points whose mean exceeds this many standard errors
FIT_SIGMA = 10.0
# binned restriction differences are heavy tailed; 10 sigma leaves one bin
PROXIMITY_SIGMA = 3.0


def _abort_if_degenerate(records: list[dict], config: ExperimentConfig, experiment: str) -> None:
    by_L: dict[int, int] = {}
    for r in records:
        if r["status"] != "ok":
            by_L[r["L"]] = by_L.get(r["L"], 0) + 1
    for L, bad in sorted(by_L.items()):
        if bad > ABORT_FRACTION * config.realizations:
            raise ExperimentAborted(
                f"{experiment}: {bad}/{config.realizations} realizations at L={L} had a degenerate "
                "Fermi level; mu is probably at a gap edge"
            )


def _ok(records):
    return [r for r in records if r["status"] == "ok"]


def _flat(per_realization: list[list[dict]]) -> list[dict]:
    out = [r for group in per_realization for r in group]
    out.sort(key=lambda r: (r["L"], r["realization"]))
    return out


def _axis_site(spec: LatticeSpec, r: int) -> int:
    x = [0] * spec.dimension
    x[0] = r
    return spec.flatten(x)


# --------------------------------------------------------------------------
# entropy sweep
# --------------------------------------------------------------------------


@dataclass
class SweepResult:
    config: ExperimentConfig
    records: list[dict]
    stats: list[EnsembleStats]

    def values(self, L: int) -> np.ndarray:
        return np.array([r["S_bits"] for r in _ok(self.records) if r["L"] == L])

    def stats_for(self, L: int) -> EnsembleStats:
        for s in self.stats:
            if s.L == L:
                return s
        raise KeyError(L)

    def summary(self) -> dict:
        return {"stats": [s.to_dict() for s in self.stats]}

    def table(self):
        header = ["L", "mean", "var", "stderr", "normalized_mean", "normalized_var"]
        rows = [[s.L, s.mean, s.variance, s.stderr, s.normalized_mean, s.normalized_variance] for s in self.stats]
        return header, rows


def _sweep_one(config: ExperimentConfig, index: int, timing: bool) -> list[dict]:
    out = []
    for m in config.block_half_widths:
        with stopwatch(timing) as clock:
            box = build_box(config, config.box_half_width(m), index)
            rec = base_record("sweep", config, 2 * m + 1, index, box.stream_seed, None)
            try:
                p = box.projection(config)
            except (DegenerateFermiLevel, GaplessFilling) as exc:
                rec["status"] = f"degenerate: {exc}"
            else:
                block = cube_region(box.spec, m)
                rec["mu"] = p.mu
                rec["S_bits"] = entropy_block_route(p, block).value
                rec["renyi"] = {repr(a): renyi_entropy(p, block, a).value for a in config.renyi_alphas}
        rec["wall_ms"] = clock["ms"]
        out.append(rec)
    return out


def stats_from_records(records: list[dict], dimension: int, key: str = "S_bits") -> list[EnsembleStats]:
    Ls = sorted({r["L"] for r in records})
    out = []
    for L in Ls:
        vals = [r[key] for r in records if r["L"] == L and r["status"] == "ok"]
        out.append(ensemble_stats(L, dimension, vals))
    return out


def run_entropy_sweep(config: ExperimentConfig, threads: int = 1, timing: bool = False) -> SweepResult:
    """Block entropy ``S`` of the centred cube ``Lambda_m`` for every ``m``, per realization."""
    groups = map_realizations(lambda i: _sweep_one(config, i, timing), range(config.realizations), threads)
    records = _flat(groups)
    _abort_if_degenerate(records, config, "sweep")
    return SweepResult(config, records, stats_from_records(records, config.dimension))


def padding_check(config: ExperimentConfig, threads: int = 1) -> dict:
    """Compare ``S`` at ``padding`` and ``2 * padding``; passes if the change is below one stderr."""
    a = run_entropy_sweep(config, threads)
    b = run_entropy_sweep(config.replace(padding=2 * config.padding), threads)
    out = {}
    for sa, sb in zip(a.stats, b.stats):
        delta = abs(sa.mean - sb.mean)
        out[sa.L] = {"delta": delta, "stderr": sa.stderr, "converged": bool(delta < sa.stderr or delta == 0)}
    return out


# --------------------------------------------------------------------------
# decay profiles
# --------------------------------------------------------------------------


@dataclass
class ProfileResult:
    """Mean and standard error of a decay profile with an exponential fit."""

    experiment: str
    config: ExperimentConfig
    records: list[dict]
    x: np.ndarray
    mean: np.ndarray
    stderr: np.ndarray
    fit: FitResult | None
    fit_error: str | None = None
    extra: dict = field(default_factory=dict)

    def summary(self) -> dict:
        out = {
            "x": self.x.tolist(),
            "mean": self.mean.tolist(),
            "stderr": self.stderr.tolist(),
            "fit": None if self.fit is None else self.fit.to_dict(),
            "fit_error": self.fit_error,
        }
        out.update(self.extra)
        return out

    def table(self):
        header = ["x", "mean", "stderr", "gamma_hat", "prefactor", "r2", "window_lo", "window_hi"]
        f = self.fit
        tail = [None] * 5 if f is None else [f.rate, f.prefactor, f.r2, f.window[0], f.window[1]]
        rows = [[int(x), m, s, *tail] for x, m, s in zip(self.x, self.mean, self.stderr)]
        return header, rows


def _profile_result(experiment, config, records, key, x, fit_from: int, strict: bool, extra=None,
                    sigma: float = FIT_SIGMA) -> ProfileResult:
    ok = _ok(records)
    if not ok:
        raise ExperimentAborted(f"{experiment}: no usable realizations")
    samples = np.array([r[key] for r in ok], dtype=float)
    mean, se = mean_and_stderr(samples)
    fit, err = None, None
    try:
        fit = fit_decay_profile(x[fit_from:], mean[fit_from:], se[fit_from:], sigma=sigma)
    except FitUnderdetermined as exc:
        if strict:
            raise
        err = str(exc)
    return ProfileResult(experiment, config, records, x, mean, se, fit, err, extra or {})


def _profile_box(config: ExperimentConfig) -> tuple[int, int]:
    half_width = max(config.box_half_widths()[: len(config.block_half_widths)])
    r_max = half_width - 2 if config.r_max is None else config.r_max
    if r_max > half_width - 2:
        raise GeometryError(f"r_max={r_max} exceeds box half-width - 2 = {half_width - 2}")
    return half_width, r_max


def kernel_decay_profile(config: ExperimentConfig, threads: int = 1, timing: bool = False,
                         strict: bool = True) -> ProfileResult:
    """``E|P(x0, x0 + r e1)|`` for ``r = 0..r_max`` on the box of the largest block."""
    half_width, r_max = _profile_box(config)

    def one(i):
        with stopwatch(timing) as clock:
            box = build_box(config, half_width, i)
            rec = base_record("decay", config, 2 * half_width + 1, i, box.stream_seed, None)
            try:
                p = box.projection(config)
            except (DegenerateFermiLevel, GaplessFilling) as exc:
                rec["status"] = f"degenerate: {exc}"
            else:
                x0 = box.spec.center
                cols = [_axis_site(box.spec, r) for r in range(r_max + 1)]
                rec["mu"] = p.mu
                rec["kernel"] = np.abs(p.matrix[x0, cols]).tolist()
        rec["wall_ms"] = clock["ms"]
        return [rec]

    records = _flat(map_realizations(one, range(config.realizations), threads))
    _abort_if_degenerate(records, config, "decay")
    return _profile_result("decay", config, records, "kernel", np.arange(r_max + 1), 1, strict)


def restriction_proximity(config: ExperimentConfig, threads: int = 1, timing: bool = False,
                          strict: bool = True) -> ProfileResult:
    """``E|P(x, y) - P^Lambda(x, y)|`` binned by ``dist(x, dLambda) + dist(y, dLambda)``.

    ``P`` is the box projection and ``P^Lambda`` the projection of the
    Dirichlet restriction of the same ``H`` to the largest block, both at
    the box's Fermi level.
    """
    if config.padding < 4:
        raise GeometryError("restriction proximity needs padding >= 4")
    m = max(config.block_half_widths)
    half_width = config.box_half_width(m)
    spec = LatticeSpec(config.dimension, half_width)
    block = cube_region(spec, m)
    depth = distances_to(block, boundary(block))
    pair_depth = (depth[:, None] + depth[None, :]).ravel()
    counts = np.bincount(pair_depth)
    center_pos = int(np.searchsorted(block.sites, spec.center))

    def one(i):
        with stopwatch(timing) as clock:
            box = build_box(config, half_width, i)
            rec = base_record("proximity", config, 2 * m + 1, i, box.stream_seed, None)
            try:
                p = box.projection(config)
                eig_r = diagonalize(restrict(box.h, block))
                p_r = fermi_projection(eig_r, p.mu)
            except (DegenerateFermiLevel, GaplessFilling) as exc:
                rec["status"] = f"degenerate: {exc}"
            else:
                diff = np.abs(block_projection(p, block) - p_r.matrix)
                rec["mu"] = p.mu
                rec["profile"] = (np.bincount(pair_depth, weights=diff.ravel()) / counts).tolist()
                rec["center_diff"] = float(diff[center_pos, center_pos])
        rec["wall_ms"] = clock["ms"]
        return [rec]

    records = _flat(map_realizations(one, range(config.realizations), threads))
    _abort_if_degenerate(records, config, "proximity")
    centers = np.array([r["center_diff"] for r in _ok(records)])
    extra = {"center_diff_mean": float(centers.mean()), "center_diff_max": float(centers.max())}
    return _profile_result("proximity", config, records, "profile", np.arange(counts.size), 0, strict, extra,
                           sigma=PROXIMITY_SIGMA)


def fractional_moment_profile(config: ExperimentConfig, threads: int = 1, timing: bool = False,
                              strict: bool = True) -> ProfileResult:
    """``E|G(lambda + i eps; x0, x0 + r e1)|^s`` on the box of the largest block.

    Every sample is checked against the deterministic bound ``eps^-s``.
    """
    half_width, r_max = _profile_box(config)
    s = config.moment_s
    zeta = complex(config.resolvent_energy, config.resolvent_epsilon)
    bound = config.resolvent_epsilon ** (-s)

    def one(i):
        with stopwatch(timing) as clock:
            box = build_box(config, half_width, i, diagonalize_h=False)
            rec = base_record("fracmom", config, 2 * half_width + 1, i, box.stream_seed, None)
            col = resolvent_column(box.h, zeta, box.spec.center)
            sites = [_axis_site(box.spec, r) for r in range(r_max + 1)]
            samples = np.abs(col[sites]) ** s
            if np.any(samples > bound):
                raise NumericHealthError(
                    f"realization {i}: |G|^s = {samples.max():.6g} exceeds eps^-s = {bound:.6g}"
                )
            rec["moments"] = samples.tolist()
        rec["wall_ms"] = clock["ms"]
        return [rec]

    records = _flat(map_realizations(one, range(config.realizations), threads))
    peak = max(max(r["moments"]) for r in records)
    extra = {"bound": bound, "max_sample": peak, "s": s, "energy": config.resolvent_energy,
             "epsilon": config.resolvent_epsilon}
    return _profile_result("fracmom", config, records, "moments", np.arange(r_max + 1), 1, strict, extra)


# --------------------------------------------------------------------------
# one-dimensional splitting
# --------------------------------------------------------------------------


@dataclass
class SplitResult:
    config: ExperimentConfig
    records: list[dict]
    box_half_width: int
    half_widths: list[int]
    mean: np.ndarray
    stderr: np.ndarray

    def discrepancies(self, M: int) -> np.ndarray:
        return np.array([r["discrepancy"] for r in _ok(self.records) if r["M"] == M])

    def decrease_test(self, small: int, large: int, level: float = 0.95, method: str = "signed-rank"):
        """One-sided paired test that the discrepancy is smaller at ``large``.

        The default signed-rank test is the gate: at small ``M`` the
        discrepancy is dominated by rare realizations, and the z test on the
        mean (``method="z"``) has little power there.
        """
        a, b = self.discrepancies(small), self.discrepancies(large)
        if method == "signed-rank":
            return signed_rank_greater(a, b, level)
        if method == "z":
            return one_sided_greater(a, b, paired=True, level=level)
        raise ValueError(f"unknown test method {method!r}")

    def summary(self) -> dict:
        out = {"box_half_width": self.box_half_width, "M": self.half_widths,
               "mean_discrepancy": self.mean.tolist(), "stderr": self.stderr.tolist()}
        if len(self.half_widths) > 1:
            small, large = min(self.half_widths), max(self.half_widths)
            tests = {}
            for method in ("signed-rank", "z"):
                t = self.decrease_test(small, large, method=method)
                tests[method] = {"small": small, "large": large, "difference": t.difference,
                                 "stderr": None if math.isnan(t.stderr) else t.stderr,
                                 "z": t.z, "p_value": t.p_value, "rejects": t.rejects}
            out["decrease_test"] = tests
        return out

    def table(self):
        header = ["M", "L", "mean_discrepancy", "stderr", "mean_S", "mean_S_plus", "mean_S_minus"]
        rows = []
        for M, mu, se in zip(self.half_widths, self.mean, self.stderr):
            ok = [r for r in _ok(self.records) if r["M"] == M]
            rows.append([M, 2 * M + 1, mu, se, float(np.mean([r["S_bits"] for r in ok])),
                         float(np.mean([r["S_plus"] for r in ok])), float(np.mean([r["S_minus"] for r in ok]))])
        return header, rows


def split_check_1d(config: ExperimentConfig, threads: int = 1, timing: bool = False) -> SplitResult:
    """``|S_Lambda - (S_+ + S_-)|`` with the halfline entropies taken across the cuts at ``+-M``.

    All block half-widths ``M`` share one box ``[-N, N]`` per realization.
    ``S_+`` is ``Tr h0(Pi)`` for the block ``[-N, M]``, ``S_-`` for ``[-M, N]``.
    """
    if config.dimension != 1:
        raise GeometryError("split-check is d=1 only")
    Ms = list(config.block_half_widths)
    if min(Ms) < 1:
        raise GeometryError("split-check needs M >= 1")
    N = config.split_box_half_width or 4 * max(Ms)
    if N < 4 * max(Ms):
        raise GeometryError(f"split box half-width {N} < 4 * max(M) = {4 * max(Ms)}")

    def one(i):
        out = []
        with stopwatch(timing) as clock:
            box = build_box(config, N, i)
            try:
                p = box.projection(config)
            except (DegenerateFermiLevel, GaplessFilling) as exc:
                p, err = None, f"degenerate: {exc}"
            for M in Ms:
                rec = base_record("split", config, 2 * M + 1, i, box.stream_seed, None)
                rec["M"] = M
                rec["N"] = N
                if p is None:
                    rec["status"] = err
                else:
                    s = entropy_block_route(p, cube_region(box.spec, M)).value
                    s_plus = entropy_pi_route(p, half_cut(box.spec, 1, M, -1)).value
                    s_minus = entropy_pi_route(p, half_cut(box.spec, 1, -M, +1)).value
                    rec.update(mu=p.mu, S_bits=s, S_plus=s_plus, S_minus=s_minus,
                               discrepancy=abs(s - (s_plus + s_minus)))
                out.append(rec)
        for rec in out:
            rec["wall_ms"] = clock["ms"]
        return out

    records = _flat(map_realizations(one, range(config.realizations), threads))
    _abort_if_degenerate(records, config, "split")
    means, ses = [], []
    for M in Ms:
        d = np.array([r["discrepancy"] for r in _ok(records) if r["M"] == M])
        mu, se = mean_and_stderr(d)
        means.append(float(mu))
        ses.append(float(se))
    return SplitResult(config, records, N, Ms, np.array(means), np.array(ses))


# --------------------------------------------------------------------------
# variance scaling
# --------------------------------------------------------------------------


@dataclass
class VarianceResult:
    config: ExperimentConfig
    sweep: SweepResult
    status: str
    fit: FitResult | None
    bound_exponent: float
    strictly_decreasing: bool
    decreasing_within_ci: bool

    @property
    def stats(self) -> list[EnsembleStats]:
        return self.sweep.stats

    @property
    def records(self) -> list[dict]:
        return self.sweep.records

    def summary(self) -> dict:
        return {
            "status": self.status,
            "fit": None if self.fit is None else self.fit.to_dict(),
            "bound_exponent": self.bound_exponent,
            "strictly_decreasing": self.strictly_decreasing,
            "decreasing_within_ci": self.decreasing_within_ci,
            "stats": [s.to_dict() for s in self.stats],
        }

    def table(self):
        header = ["L", "mean", "var", "stderr", "normalized_mean", "normalized_var", "normalized_var_stderr",
                  "raw_var", "beta_hat", "beta_ci_lo", "beta_ci_hi", "bound_exponent"]
        f = self.fit
        tail = [None, None, None] if f is None else [f.exponent, f.ci95[0], f.ci95[1]]
        rows = [[s.L, s.mean, s.variance, s.stderr, s.normalized_mean, s.normalized_variance,
                 s.normalized_variance_stderr, s.variance, *tail, self.bound_exponent] for s in self.stats]
        return header, rows


def variance_scaling(config: ExperimentConfig, threads: int = 1, timing: bool = False,
                     sweep: SweepResult | None = None) -> VarianceResult:
    """Power-law fit of ``Var{L^-(d-1) S}`` against ``L``.

    The reported ``bound_exponent`` ``-2(d-1)/(d+1)`` is only an upper
    bound on the decay; the fitted exponent is not expected to match it.
    For ``d = 1`` the normalized and raw variances coincide.

    ``strictly_decreasing`` compares point estimates; ``decreasing_within_ci``
    only rejects steps up that exceed 1.96 combined standard errors.
    """
    if config.realizations < MIN_VARIANCE_REALIZATIONS:
        raise StatisticalPowerError(
            f"variance scaling needs >= {MIN_VARIANCE_REALIZATIONS} realizations, got {config.realizations}"
        )
    if sweep is None:
        sweep = run_entropy_sweep(config, threads, timing)
    d = config.dimension
    bound = -2.0 * (d - 1) / (d + 1)
    st = sweep.stats
    var = np.array([s.normalized_variance for s in st])
    err = np.array([s.normalized_variance_stderr for s in st])
    decreasing = bool(np.all(np.diff(var) < 0))
    # no step up larger than 1.96 combined standard errors
    step_se = np.sqrt(err[1:] ** 2 + err[:-1] ** 2)
    within_ci = bool(np.all(np.diff(var) < 1.96 * step_se))
    if np.all(var == 0):
        return VarianceResult(config, sweep, "no-variance", None, bound, False, False)
    Ls = np.array([s.L for s in st], dtype=float)
    try:
        fit = fit_power_law(Ls, var, err)
        status = "ok"
    except FitUnderdetermined as exc:
        fit, status = None, f"fit-skipped: {exc}"
    return VarianceResult(config, sweep, status, fit, bound, decreasing, within_ci)


# --------------------------------------------------------------------------
# halfspace surface density
# --------------------------------------------------------------------------


@dataclass
class HalfspaceResult:
    config: ExperimentConfig
    records: list[dict]
    sweep: SweepResult
    lhs: list[tuple[int, float, float]]
    rhs_mean: float
    rhs_stderr: float
    summand_mean: np.ndarray
    summand_stderr: np.ndarray
    depth_cut: int

    def lhs_for(self, L: int) -> tuple[float, float]:
        for l, m, s in self.lhs:
            if l == L:
                return m, s
        raise KeyError(L)

    def discrepancy(self, L: int) -> tuple[float, float]:
        """``|lhs - rhs|`` and the combined standard error at block side ``L``."""
        m, s = self.lhs_for(L)
        return abs(m - self.rhs_mean), combined_stderr(s, self.rhs_stderr)

    def summary(self) -> dict:
        return {
            "lhs": [{"L": l, "mean": m, "stderr": s,
                     "ratio": (m / self.rhs_mean if self.rhs_mean else None)} for l, m, s in self.lhs],
            "rhs": {"mean": self.rhs_mean, "stderr": self.rhs_stderr},
            "depth_cut": self.depth_cut,
            "summand_mean": self.summand_mean.tolist(),
            "summand_stderr": self.summand_stderr.tolist(),
        }

    def table(self):
        header = ["L", "lhs", "lhs_stderr", "rhs", "rhs_stderr", "ratio"]
        rows = [[l, m, s, self.rhs_mean, self.rhs_stderr, (m / self.rhs_mean if self.rhs_mean else None)]
                for l, m, s in self.lhs]
        return header, rows


def halfspace_surface_density(config: ExperimentConfig, threads: int = 1, timing: bool = False,
                              sweep: SweepResult | None = None) -> HalfspaceResult:
    """Compare ``L^-(d-1) E S`` with ``2d sum_j E h(P_+)(j e1, j e1)``.

    ``P_+`` is the box projection restricted to ``{x_1 >= 0}``. Depths run to
    ``box half-width - padding``; transverse positions within the same margin
    of the side faces are averaged. The depth sum is truncated after the first
    depth whose mean summand falls below ``1e-6``.
    """
    if sweep is None:
        sweep = run_entropy_sweep(config, threads, timing)
    d = config.dimension
    half_width = config.halfspace_box_half_width or config.box_half_width(max(config.block_half_widths))
    depth_max = half_width - config.padding
    if depth_max < 1:
        raise GeometryError("halfspace box leaves no depth range after padding")
    spec = LatticeSpec(d, half_width)
    cut = half_cut(spec, 1, 0, +1)
    coords = cut.coords
    transverse_ok = np.all(np.abs(coords[:, 1:]) <= depth_max, axis=1) if d > 1 else np.ones(len(cut), bool)
    depth_of = coords[:, 0]
    groups = [np.flatnonzero((depth_of == j) & transverse_ok) for j in range(depth_max + 1)]

    def one(i):
        with stopwatch(timing) as clock:
            box = build_box(config, half_width, i)
            rec = base_record("halfspace", config, spec.side, i, box.stream_seed, None)
            try:
                p = box.projection(config)
            except (DegenerateFermiLevel, GaplessFilling) as exc:
                rec["status"] = f"degenerate: {exc}"
            else:
                w, u = np.linalg.eigh(block_projection(p, cut))
                # health check on the spectrum, then the diagonal of h(P_+)
                spectrum_entropy(w, BINARY, "halfspace")
                hdiag = (u**2) @ eval_h(np.clip(w, 0.0, 1.0))
                rec["mu"] = p.mu
                rec["summands"] = [float(hdiag[g].mean()) for g in groups]
        rec["wall_ms"] = clock["ms"]
        return [rec]

    records = _flat(map_realizations(one, range(config.realizations), threads))
    _abort_if_degenerate(records, config, "halfspace")
    samples = np.array([r["summands"] for r in _ok(records)])
    s_mean, s_se = mean_and_stderr(samples)
    below = np.flatnonzero(s_mean < SUMMAND_CUTOFF)
    if below.size == 0:
        raise TruncationError(
            f"depth summand still {s_mean[-1]:.3g} at depth {depth_max}; localization too weak for the box"
        )
    cut_at = int(below[0])
    totals = 2 * d * samples[:, : cut_at + 1].sum(axis=1)
    for r, t in zip(_ok(records), totals):
        r["rhs"] = float(t)
    rhs_mean, rhs_se = mean_and_stderr(totals)
    lhs = [(s.L, s.normalized_mean, s.stderr / float(s.L) ** (d - 1)) for s in sweep.stats]
    return HalfspaceResult(config, records, sweep, lhs, float(rhs_mean), float(rhs_se), s_mean, s_se, cut_at)


EXPERIMENTS = {
    "sweep": run_entropy_sweep,
    "decay": kernel_decay_profile,
    "proximity": restriction_proximity,
    "fracmom": fractional_moment_profile,
    "split": split_check_1d,
    "variance": variance_scaling,
    "halfspace": halfspace_surface_density,
}
