"""Executable property suites.

Each suite returns a list of :class:`Check` results; a suite passes when
every check does. ``h0_function`` lets a caller swap in a faulty ``h0`` to
confirm the suites catch it.
"""

from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from .entropy import (
    block_entropy,
    complement_symmetry_check,
    entropy_block_route,
    entropy_pi_route,
    eval_h,
    eval_h0,
    pi_operator,
    schatten_quasinorm,
)
from .errors import GaplessFilling
from .hamiltonian import AlmostMathieu, IidGaussian, IidUniform, Zero, assemble, mix64, sample_potential, stream_rng
from .lattice import LatticeSpec, Region
from .oracle import clean_entropy_1d, clean_log_lower_bound, manybody_entropy, sine_kernel_matrix
from .spectral import diagonalize, fermi_projection, mu_from_filling

SUITES = ("properties", "oracle", "clean")


@dataclass
class Check:
    name: str
    passed: bool
    cases: int
    worst: float | None = None
    limit: float | None = None
    witness: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)


class _Tracker:
    """Keeps the case with the worst ``value / limit`` and the first violation."""

    def __init__(self, name: str):
        self.name = name
        self.cases = 0
        self.ratio = -math.inf
        self.worst = None
        self.limit = None
        self.bad: dict | None = None

    def record(self, value: float, limit: float, **witness) -> None:
        self.cases += 1
        ratio = value / limit if limit > 0 else (math.inf if value > 0 else 0.0)
        if ratio > self.ratio:
            self.ratio, self.worst, self.limit = ratio, float(value), float(limit)
        if value > limit and self.bad is None:
            self.bad = dict(witness, value=float(value), limit=float(limit))

    def result(self) -> Check:
        return Check(self.name, self.bad is None, self.cases, self.worst, self.limit, self.bad or {})


# --------------------------------------------------------------------------
# random instances
# --------------------------------------------------------------------------


def _random_model(rng, d):
    kinds = ["uniform", "gaussian", "zero"] + (["mathieu"] if d == 1 else [])
    kind = kinds[rng.integers(len(kinds))]
    if kind == "uniform":
        return IidUniform(float(rng.uniform(0.5, 8.0)))
    if kind == "gaussian":
        return IidGaussian(float(rng.uniform(0.5, 4.0)))
    if kind == "mathieu":
        return AlmostMathieu(float(rng.uniform(0.2, 3.0)), phase=float(rng.uniform()))
    return Zero()


def random_projection(rng, max_half_width={1: 10, 2: 5, 3: 2}):
    """A Fermi projection of a random model on a random box, filled between two gapped levels."""
    d = int(rng.integers(1, 4))
    spec = LatticeSpec(d, int(rng.integers(1, max_half_width[d] + 1)))
    model = _random_model(rng, d)
    real = sample_potential(model, spec, int(rng.integers(2**63)), 0)
    eig = diagonalize(assemble(spec, real))
    for _ in range(100):
        try:
            mu = mu_from_filling(eig, int(rng.integers(1, spec.site_count)))
            break
        except GaplessFilling:
            continue
    else:
        mu = float(eig.eigenvalues[-1]) + 1.0
    return fermi_projection(eig, mu), model


def random_region(rng, spec: LatticeSpec, strict: bool = True) -> Region:
    while True:
        mask = rng.random(spec.site_count) < rng.uniform(0.1, 0.9)
        n = int(mask.sum())
        if n > 0 and (not strict or n < spec.site_count):
            return Region.from_mask(spec, mask)


# --------------------------------------------------------------------------
# suites
# --------------------------------------------------------------------------


def h0_grid_checks(h0=eval_h0, points: int = 10_000) -> list[Check]:
    t = np.linspace(0.0, 0.25, points)
    v = np.asarray(h0(t), dtype=float)
    out = []
    dec = float(max(0.0, -np.min(np.diff(v))))
    out.append(Check("h0 nondecreasing", dec <= 0.0, points, dec, 0.0))
    # midpoint concavity on neighbouring triples and on random pairs
    mid = (v[:-2] + v[2:]) / 2 - v[1:-1]
    rng = np.random.default_rng(0)
    s, u = rng.uniform(0, 0.25, (2, points))
    mid2 = (np.asarray(h0(s)) + np.asarray(h0(u))) / 2 - np.asarray(h0((s + u) / 2))
    worst = float(max(mid.max(), mid2.max()))
    out.append(Check("h0 midpoint concavity", worst <= 1e-12, 2 * points, worst, 1e-12))
    lower = float(np.max(4 * t - v))
    upper = float(np.max(v - 1.0))
    out.append(Check("h0 bounds 4t <= h0 <= 1", lower <= 0.0 and upper <= 0.0, points, max(lower, upper), 0.0))
    return out


def jensen_check(rng, cases: int = 50) -> Check:
    tr = _Tracker("Jensen diagonal bound")
    for k in range(cases):
        n = int(rng.integers(2, 12))
        q, _ = np.linalg.qr(rng.standard_normal((n, n)))
        w = rng.uniform(0, 1, n)
        m = (q * w) @ q.T
        hm = (q * eval_h(w)) @ q.T
        diag = np.clip(np.diag(m), 0.0, 1.0)
        tr.record(float(np.max(np.diag(hm) - eval_h(diag))), 1e-10, case=k, n=n)
    return tr.result()


def schatten_check(rng, cases: int = 50) -> Check:
    tr = _Tracker("Schatten quasi-triangle")
    for k in range(cases):
        n = int(rng.integers(2, 10))
        alpha = float(rng.uniform(0.1, 1.0))
        a, b = (x @ x.T for x in rng.standard_normal((2, n, n)))
        lhs = schatten_quasinorm(a + b, alpha) ** alpha
        rhs = schatten_quasinorm(a, alpha) ** alpha + schatten_quasinorm(b, alpha) ** alpha
        tr.record(lhs - rhs, 1e-9 * rhs, case=k, alpha=alpha)
    return tr.result()


def property_suite(seed: int = 0, cases: int = 100, h0_function=None) -> list[Check]:
    """Route equality, complement symmetry, idempotency and the Pi-operator identities."""
    rng = stream_rng(mix64(seed, 0))
    route = _Tracker("route equality")
    comp = _Tracker("complement symmetry")
    idem = _Tracker("projection idempotency")
    psd = _Tracker("Pi positive semidefinite")
    norm = _Tracker("Pi norm <= 1/4")
    restr = _Tracker("Pi restriction")
    add = _Tracker("Pi additivity")
    lower = _Tracker("entropy >= 4 Tr Pi")
    for k in range(cases):
        p, model = random_projection(rng)
        spec = p.spec
        where = {"case": k, "d": spec.dimension, "M": spec.half_width, "model": model.to_dict()}
        idem.record(p.idempotency_error(), 1e-9, **where)
        region = random_region(rng, spec)
        s_block = entropy_block_route(p, region).value
        s_pi = entropy_pi_route(p, region, h0_function).value
        route.record(abs(s_block - s_pi), 1e-8 * len(region), **where, block_route=s_block, pi_route=s_pi)
        comp.record(complement_symmetry_check(p, region), 1e-8 * max(1.0, s_block), **where)

        pi = pi_operator(p, region)
        w = np.linalg.eigvalsh(pi.matrix)
        psd.record(float(-w.min()), 1e-10, **where)
        norm.record(float(w.max() - 0.25), 1e-10, **where)
        lower.record(4 * float(np.trace(pi.matrix)) - s_block, 1e-8, **where)

        # restriction: C1' inside C1'', fixed C2 disjoint from both
        c1b = random_region(rng, spec)
        c2 = c1b.complement()
        sub = Region(spec, c1b.sites[rng.random(len(c1b)) < 0.5])
        if len(sub) and len(c2):
            big = pi_operator(p, c1b, c2).matrix
            small = pi_operator(p, sub, c2).matrix
            pos = np.searchsorted(c1b.sites, sub.sites)
            restr.record(float(np.max(np.abs(big[np.ix_(pos, pos)] - small))), 1e-12, **where)
        # additivity over a split of C2
        if len(c2) > 1:
            split = rng.random(len(c2)) < 0.5
            c2a, c2b = Region(spec, c2.sites[split]), Region(spec, c2.sites[~split])
            whole = pi_operator(p, c1b, c2).matrix
            parts = pi_operator(p, c1b, c2a).matrix + pi_operator(p, c1b, c2b).matrix
            add.record(float(np.max(np.abs(whole - parts))), 1e-12, **where)
    checks = [t.result() for t in (route, comp, idem, psd, norm, restr, add, lower)]
    checks += h0_grid_checks(eval_h0 if h0_function is None else h0_function)
    checks.append(jensen_check(rng))
    checks.append(schatten_check(rng))
    return checks


def oracle_suite(seed: int = 0, cases: int = 50, max_sites: int = 8) -> list[Check]:
    """Fock-space entropies of random short chains against the one-body formula."""
    rng = stream_rng(mix64(seed, 1))
    tr = _Tracker("many-body oracle equivalence")
    for k in range(cases):
        n = int(rng.integers(2, max_sites + 1))
        a = np.diag(rng.uniform(-3, 3, n)) - np.eye(n, k=1) - np.eye(n, k=-1)
        eig = diagonalize(a)
        mu = mu_from_filling(eig, int(rng.integers(1, n)))
        p = fermi_projection(eig, mu)
        m = int(rng.integers(1, n))
        one_body = block_entropy(p.matrix[:m, :m]).value
        many = manybody_entropy(a, mu, m)
        tr.record(abs(many - one_body), 1e-9, case=k, n=n, block=m, manybody=many, one_body=one_body)
    return [tr.result()]


def clean_suite() -> list[Check]:
    """Logarithmic growth of the clean d=1 entropy and its lower bound."""
    p = math.pi / 2
    target = 4 / math.pi**2
    out = []
    v1 = clean_log_lower_bound(p, 1)
    out.append(Check("lower bound at L=1", abs(v1 - 1.0) <= 1e-9, 1, abs(v1 - 1.0), 1e-9))
    incs = {}
    for L in (64, 128, 256):
        incs[L] = (clean_log_lower_bound(p, 2 * L) - clean_log_lower_bound(p, L)) / math.log(2)
    worst = max(abs(v - target) / target for v in incs.values())
    out.append(Check("log coefficient 4/pi^2", worst <= 0.05, len(incs), worst, 0.05,
                     {str(k): v for k, v in incs.items()}))
    Ls = (17, 33, 65, 129)
    s = [clean_entropy_1d(p, L).value for L in Ls]
    steps = np.diff(s)
    out.append(Check("clean entropy strictly increasing", bool(np.all(steps > 0)), len(Ls),
                     float(-steps.min()), 0.0, {str(L): v for L, v in zip(Ls, s)}))
    gap = max(clean_log_lower_bound(p, L) - v for L, v in zip(Ls, s))
    out.append(Check("entropy above lower bound", gap <= 1e-6, len(Ls), gap, 1e-6))
    w = np.linalg.eigvalsh(sine_kernel_matrix(p, 513))
    bad = float(max(-w.min(), w.max() - 1.0))
    out.append(Check("sine kernel spectrum in [0,1]", bad <= 1e-9, 1, bad, 1e-9))
    return out


def run_suite(name: str, seed: int = 0, h0_function=None) -> dict:
    t0 = time.perf_counter()
    if name == "properties":
        checks = property_suite(seed, h0_function=h0_function)
    elif name == "oracle":
        checks = oracle_suite(seed)
    elif name == "clean":
        checks = clean_suite()
    else:
        raise ValueError(f"unknown suite {name!r}; choose from {SUITES}")
    return {
        "suite": name,
        "passed": all(c.passed for c in checks),
        "seconds": round(time.perf_counter() - t0, 3),
        "checks": [c.to_dict() for c in checks],
    }


def dropped_sqrt_h0(t):
    """Faulty ``h0`` that skips the square root: ``h(2t)`` instead of ``h((1 - sqrt(1-4t))/2)``."""
    t = np.clip(np.asarray(t, dtype=float), 0.0, 0.25)
    return eval_h(2.0 * t)
