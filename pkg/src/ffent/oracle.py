"""Independent ground truths.

* The clean one-dimensional Fermi projection is the sine kernel
  ``sin(p (x - y)) / (pi (x - y))``; its block entropy grows like a logarithm.
* For short chains the many-body ground state is built explicitly in the
  ``2^n`` dimensional Fock space via a Jordan-Wigner representation, and the
  block entropy is obtained by a partial trace. No one-body correlation
  matrix is used on that path.
"""

from __future__ import annotations

import math
from functools import reduce
from itertools import combinations

import numpy as np
import scipy.sparse as sp

from .entropy import EntropyResult, block_entropy
from .errors import DegenerateFermiLevel, DomainError, ParameterError, SizeError, TruncationError
from .spectral import DEGENERACY_TOL

MAX_FOCK_SITES = 12


def _check_momentum(p: float) -> float:
    if not 0.0 < p < math.pi:
        raise ParameterError(f"Fermi momentum must be in (0, pi), got {p}")
    return float(p)


def sine_kernel(p: float, d) -> np.ndarray:
    """``sin(p d) / (pi d)`` elementwise, ``p / pi`` at ``d = 0``."""
    d = np.asarray(d, dtype=float)
    return (p / math.pi) * np.sinc(p * d / math.pi)


def sine_kernel_matrix(p: float, length: int) -> np.ndarray:
    """Clean projection restricted to ``length`` consecutive sites."""
    p = _check_momentum(p)
    if length < 1:
        raise ParameterError("length must be >= 1")
    x = np.arange(length)
    return sine_kernel(p, x[:, None] - x[None, :])


def clean_log_lower_bound(p: float, length: int, window: int | None = None, tol: float = 1e-6) -> float:
    """``4 sum_{x in L, y not in L} |P(x, y)|^2`` for a block of ``length`` sites.

    Without ``window`` the outer sum is evaluated exactly from the sum rule
    ``sum_y |P(x, y)|^2 = P(x, x) = p / pi``. With ``window`` it is summed
    directly over ``0 < dist(y, L) <= window`` on both sides. Each site
    omits at most ``sum_{|k| > window} (pi k)^-2 <= 2 / (pi^2 window)``, so the
    returned value is short by at most ``8 length / (pi^2 window)``, which
    must not exceed ``tol``.
    """
    p = _check_momentum(p)
    if window is None:
        block = sine_kernel_matrix(p, length)
        inner = float(np.sum(block**2))
        return 4.0 * (length * p / math.pi - inner)
    if window < 8 * length:
        raise TruncationError(f"window {window} below 8 * length")
    tail = 4.0 * length * 2.0 / (math.pi**2 * window)
    if tail > tol:
        raise TruncationError(f"tail bound {tail:.3g} exceeds {tol:.3g}; enlarge the window")
    k = np.arange(1, window + 1, dtype=float)
    total = 0.0
    for x in range(length):
        # distances to the sites right of the block and left of the block
        right = sine_kernel(p, (length - 1 - x) + k)
        left = sine_kernel(p, x + k)
        total += float(np.sum(right**2) + np.sum(left**2))
    return 4.0 * total


def clean_entropy_1d(p: float, length: int) -> EntropyResult:
    """Block entropy (bits) of ``length`` consecutive sites in the clean chain."""
    return block_entropy(sine_kernel_matrix(p, length))


# --------------------------------------------------------------------------
# many-body oracle
# --------------------------------------------------------------------------

_ANNIHILATE = sp.csr_matrix(np.array([[0.0, 1.0], [0.0, 0.0]]))
_PARITY = sp.csr_matrix(np.diag([1.0, -1.0]))
_ID = sp.identity(2, format="csr")


def jordan_wigner_annihilators(n: int) -> list[sp.csr_matrix]:
    """``c_j = Z x ... x Z x a x 1 x ... x 1`` with site 0 as the leading factor."""
    ops = []
    for j in range(n):
        factors = [_PARITY] * j + [_ANNIHILATE] + [_ID] * (n - j - 1)
        ops.append(reduce(lambda a, b: sp.kron(a, b, format="csr"), factors))
    return ops


def _sector_states(n: int, particles: int) -> np.ndarray:
    """Basis indices with ``particles`` occupied sites (site 0 = most significant bit)."""
    states = []
    for occ in combinations(range(n), particles):
        states.append(sum(1 << (n - 1 - j) for j in occ))
    return np.array(sorted(states), dtype=np.int64)


def manybody_ground_state(a: np.ndarray, mu: float) -> np.ndarray:
    """Ground state of ``sum_xy (A - mu)_xy c_x^+ c_y`` in the occupation basis."""
    a = np.asarray(a, dtype=float)
    n = a.shape[0]
    if a.shape != (n, n):
        raise DomainError("one-body matrix must be square")
    if n > MAX_FOCK_SITES:
        raise SizeError(f"Fock oracle limited to {MAX_FOCK_SITES} sites, got {n}")
    if not np.allclose(a, a.T, atol=0, rtol=0):
        raise DomainError("one-body matrix must be symmetric")
    w = np.linalg.eigvalsh(a)
    tol = DEGENERACY_TOL * max(1.0, float(w[-1] - w[0]))
    if np.min(np.abs(w - mu)) <= tol:
        raise DegenerateFermiLevel("mu coincides with a one-body eigenvalue")
    particles = int(np.sum(w <= mu))

    c = jordan_wigner_annihilators(n)
    cdag = [op.T.tocsr() for op in c]
    dim = 1 << n
    h = sp.csr_matrix((dim, dim))
    for x in range(n):
        for y in range(n):
            coef = a[x, y] - (mu if x == y else 0.0)
            if coef != 0.0:
                h = h + coef * (cdag[x] @ c[y])
    idx = _sector_states(n, particles)
    block = h[idx][:, idx].toarray()
    e, v = np.linalg.eigh(block)
    psi = np.zeros(dim)
    psi[idx] = v[:, 0]
    return psi


def manybody_entropy(a: np.ndarray, mu: float, block_size: int) -> float:
    """Von Neumann entropy (bits) of the first ``block_size`` sites of the ground state."""
    n = np.asarray(a).shape[0]
    if not 0 <= block_size <= n:
        raise DomainError(f"prefix block of {block_size} sites in a chain of {n}")
    psi = manybody_ground_state(a, mu)
    if block_size in (0, n):
        return 0.0
    m = psi.reshape(1 << block_size, 1 << (n - block_size))
    rho = m @ m.T
    p = np.linalg.eigvalsh(rho)
    p = p[p > 1e-300]
    return float(-np.sum(p * np.log2(p)))
