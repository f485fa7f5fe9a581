"""Dense eigendecomposition, spectral projections and resolvent entries.

Eigenvectors are only defined up to sign and, for degenerate eigenvalues,
up to a basis change. Everything returned to callers is basis invariant
(projections, traces, eigenvalues).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import DegenerateFermiLevel, DomainError, GaplessFilling, NumericError
from .hamiltonian import HamiltonianMatrix
from .lattice import LatticeSpec

DEGENERACY_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class EigenDecomposition:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    spec: LatticeSpec | None = None
    sites: np.ndarray | None = None

    @property
    def order(self) -> int:
        return self.eigenvalues.size

    @property
    def tolerance(self) -> float:
        """Degeneracy tolerance, relative to the spectral diameter (floored at 1)."""
        w = self.eigenvalues
        return DEGENERACY_TOL * max(1.0, float(w[-1] - w[0])) if w.size else DEGENERACY_TOL

    def residual(self, matrix: np.ndarray) -> float:
        v, w = self.eigenvectors, self.eigenvalues
        return float(np.max(np.abs(matrix @ v - v * w)))

    def orthonormality_error(self) -> float:
        v = self.eigenvectors
        return float(np.max(np.abs(v.T @ v - np.eye(v.shape[1]))))


@dataclass(frozen=True, eq=False)
class FermiProjection:
    """Dense spectral projection with its bookkeeping.

    ``degeneracy_gap`` is the distance from the nearest interval endpoint to
    the nearest eigenvalue; ``sites`` records the flat indices the matrix acts
    on (``None`` means the whole box of ``spec``).
    """

    matrix: np.ndarray
    mu: float
    rank: int
    degeneracy_gap: float
    spec: LatticeSpec | None = None
    sites: np.ndarray | None = None

    @property
    def order(self) -> int:
        return self.matrix.shape[0]

    def idempotency_error(self) -> float:
        p = self.matrix
        return float(np.max(np.abs(p @ p - p)))


def _as_matrix(h) -> tuple[np.ndarray, LatticeSpec | None, np.ndarray | None]:
    if isinstance(h, HamiltonianMatrix):
        return h.matrix, h.spec, h.sites
    return np.asarray(h, dtype=float), None, None


def diagonalize(h) -> EigenDecomposition:
    """Full symmetric eigendecomposition, eigenvalues ascending."""
    a, spec, sites = _as_matrix(h)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DomainError("expected a square matrix")
    if not np.all(np.isfinite(a)):
        raise NumericError("matrix has non-finite entries")
    w, v = np.linalg.eigh(a)
    w.setflags(write=False)
    v.setflags(write=False)
    return EigenDecomposition(w, v, spec, sites)


def _nearest_gap(w: np.ndarray, points) -> float:
    finite = [p for p in points if np.isfinite(p)]
    if not finite or w.size == 0:
        return float("inf")
    return float(min(np.min(np.abs(w - p)) for p in finite))


def interval_projection(
    eig: EigenDecomposition, lower: float, upper: float, allow_degenerate: bool = False
) -> FermiProjection:
    """Spectral projection onto the eigenvalues in ``[lower, upper]``.

    Either endpoint may be infinite. Raises :class:`DegenerateFermiLevel` when
    a finite endpoint is within the degeneracy tolerance of an eigenvalue,
    unless ``allow_degenerate`` is set.
    """
    if lower > upper:
        raise DomainError(f"empty interval [{lower}, {upper}]")
    w, v = eig.eigenvalues, eig.eigenvectors
    gap = _nearest_gap(w, (lower, upper))
    if not allow_degenerate and gap <= eig.tolerance:
        raise DegenerateFermiLevel(
            f"interval endpoint within {gap:.3g} of an eigenvalue (tol {eig.tolerance:.3g})"
        )
    sel = (w >= lower) & (w <= upper)
    vs = v[:, sel]
    p = vs @ vs.T
    p.setflags(write=False)
    return FermiProjection(p, float(upper), int(sel.sum()), gap, eig.spec, eig.sites)


def fermi_projection(eig: EigenDecomposition, mu: float, allow_degenerate: bool = False) -> FermiProjection:
    """``P = chi_(-inf, mu](H)`` as a dense matrix."""
    return interval_projection(eig, -np.inf, float(mu), allow_degenerate)


def mu_from_filling(eig: EigenDecomposition, filled: int) -> float:
    """Midpoint between the ``filled``-th and next eigenvalue (1-based count)."""
    w = eig.eigenvalues
    if not 1 <= filled < w.size:
        raise GaplessFilling(f"filling {filled} outside [1, {w.size - 1}]")
    lo, hi = float(w[filled - 1]), float(w[filled])
    if hi - lo <= 2 * eig.tolerance:
        raise GaplessFilling(f"no gap between modes {filled} and {filled + 1} ({hi - lo:.3g})")
    return 0.5 * (lo + hi)


def filled_count(order: int, fraction) -> int:
    """Number of filled modes for a filling fraction: ``floor(fraction * order)``."""
    return int(np.floor(float(fraction) * order + 1e-12))


def _check_zeta(zeta: complex) -> complex:
    zeta = complex(zeta)
    if zeta.imag == 0.0:
        raise DomainError("resolvent needs Im(zeta) != 0")
    return zeta


def resolvent_column(h, zeta: complex, y: int) -> np.ndarray:
    """Column ``y`` of ``(H - zeta)^{-1}``, indices local to the matrix."""
    zeta = _check_zeta(zeta)
    a, _, _ = _as_matrix(h)
    n = a.shape[0]
    rhs = np.zeros(n, dtype=complex)
    rhs[y] = 1.0
    return scipy.linalg.solve(a - zeta * np.eye(n), rhs, assume_a="sym")


def resolvent_entry(h, zeta: complex, x: int, y: int) -> complex:
    """``G(zeta; x, y)`` via a linear solve; ``|G| <= 1 / |Im zeta|`` always."""
    return complex(resolvent_column(h, zeta, y)[x])
