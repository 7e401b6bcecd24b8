"""Dense complex linear algebra and Hermitian functional calculus.

All matrix functions go through a full spectral decomposition; dimensions
are small (desk scale), so spectral calculus is exact up to eigensolver
error and handles log and fractional powers uniformly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ConvergenceFailure, DomainError, NotHermitian

HERMITIAN_TOL = 1e-10
RECONSTRUCTION_TOL = 1e-10
SUPPORT_EPS = 1e-12


def frobenius(m: np.ndarray) -> float:
    """Frobenius norm."""
    return float(np.linalg.norm(m))


def hermiticity_defect(m: np.ndarray) -> float:
    """Largest entry of |M - M^*|."""
    return float(np.max(np.abs(m - m.conj().T)))


def require_hermitian(m: np.ndarray, tol: float = HERMITIAN_TOL, name: str = "matrix") -> None:
    defect = hermiticity_defect(m)
    if defect > tol:
        raise NotHermitian(f"{name} is not Hermitian within {tol:g}", defect)


def hermitian_part(x: np.ndarray) -> np.ndarray:
    """(X + X^*) / 2."""
    x = np.asarray(x, dtype=complex)
    return (x + x.conj().T) / 2


def tensor_product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product A (x) B."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


@dataclass(frozen=True)
class HermitianEigen:
    """Spectral decomposition H = U diag(d) U^* with d ascending."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self) -> int:
        return self.eigenvalues.shape[0]

    def reconstruct(self) -> np.ndarray:
        u = self.eigenvectors
        return (u * self.eigenvalues) @ u.conj().T


def eig_hermitian(h: np.ndarray, tol: float = HERMITIAN_TOL) -> HermitianEigen:
    """Eigendecompose a Hermitian matrix, ascending eigenvalues.

    Raises NotHermitian when the symmetry defect exceeds ``tol`` and
    ConvergenceFailure when the eigensolver fails or the reconstruction
    U diag(d) U^* misses H by more than 1e-10 relative Frobenius.
    """
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {h.shape}")
    if not np.all(np.isfinite(h)):
        raise DomainError("matrix has non-finite entries")
    require_hermitian(h, tol)
    try:
        w, u = np.linalg.eigh(h)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(f"eigensolver did not converge: {exc}") from exc
    eig = HermitianEigen(w, u)
    scale = max(frobenius(h), 1e-300)
    defect = frobenius(eig.reconstruct() - h)
    if defect > RECONSTRUCTION_TOL * scale:
        raise ConvergenceFailure(
            f"eigendecomposition reconstruction defect {defect:.3e} exceeds "
            f"{RECONSTRUCTION_TOL:g} * {scale:.3e}"
        )
    return eig


def apply_fn(h: np.ndarray, f: Callable[[np.ndarray], np.ndarray], tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Evaluate a scalar function on a Hermitian matrix via its spectrum.

    ``f`` must accept a real numpy vector. Raises DomainError when f is
    undefined (non-finite) at any eigenvalue.
    """
    eig = eig_hermitian(h, tol)
    with np.errstate(all="ignore"):
        fd = np.asarray(f(eig.eigenvalues))
    if not np.all(np.isfinite(fd)):
        bad = eig.eigenvalues[~np.isfinite(np.asarray(fd, dtype=complex))]
        raise DomainError(f"function undefined at eigenvalue(s) {bad}")
    return (eig.eigenvectors * fd) @ eig.eigenvectors.conj().T


def herm_exp(h: np.ndarray) -> np.ndarray:
    return apply_fn(h, np.exp)


def herm_log(h: np.ndarray, support_eps: float = SUPPORT_EPS) -> np.ndarray:
    """log(H) for Hermitian H with spectrum above the support threshold."""
    eig = eig_hermitian(h)
    low = float(eig.eigenvalues.min())
    if low <= support_eps:
        raise DomainError(
            f"log undefined: eigenvalue {low:.3e} at or below support threshold {support_eps:g}"
        )
    return (eig.eigenvectors * np.log(eig.eigenvalues)) @ eig.eigenvectors.conj().T


def herm_power(h: np.ndarray, p: float, support_eps: float = SUPPORT_EPS) -> np.ndarray:
    """H^p for Hermitian H; fractional or negative p require spectrum > support threshold."""
    eig = eig_hermitian(h)
    needs_positive = (p != int(p)) or p < 0
    low = float(eig.eigenvalues.min())
    if needs_positive and low <= support_eps:
        raise DomainError(
            f"power {p} undefined: eigenvalue {low:.3e} at or below support threshold {support_eps:g}"
        )
    return (eig.eigenvectors * eig.eigenvalues**p) @ eig.eigenvectors.conj().T
