"""Density matrices, classical distributions, and seeded random instances.

Random generation uses numpy's PCG64 bit generator with explicit seeds, so
every sampled state is reproducible from its seed alone (no global RNG
state anywhere in the package).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    InvalidDistribution,
    InvalidShape,
    NotHermitian,
    NotPSD,
    TraceNotOne,
)
from .linalg import SUPPORT_EPS, frobenius, hermitian_part, hermiticity_defect

DENSITY_TOL = 1e-10


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian PSD trace-one matrix; ``full_rank`` means spectrum > 1e-12."""

    matrix: np.ndarray
    full_rank: bool

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def spectrum(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.matrix)


@dataclass(frozen=True)
class RandomSpec:
    """Seeded recipe for a random density matrix with an eigenvalue floor."""

    dim: int
    seed: int
    min_eigenvalue: float = 0.0

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise InvalidShape(f"dim must be >= 1, got {self.dim}")
        if not 0.0 <= self.min_eigenvalue < 1.0 / self.dim:
            raise InvalidShape(
                f"min_eigenvalue must lie in [0, 1/dim={1.0 / self.dim:g}), got {self.min_eigenvalue}"
            )


def validate_density(
    m: np.ndarray, tol: float = DENSITY_TOL, support_eps: float = SUPPORT_EPS
) -> DensityMatrix:
    """Check the density-matrix invariants and wrap the (hermitized) matrix.

    Raises NotHermitian / TraceNotOne / NotPSD naming the violated
    invariant with the measured defect.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InvalidShape(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise InvalidShape("matrix has non-finite entries")
    herm_defect = hermiticity_defect(m)
    if herm_defect > tol:
        raise NotHermitian(f"density matrix not Hermitian within {tol:g}", herm_defect)
    trace_defect = abs(complex(np.trace(m)) - 1.0)
    if trace_defect > tol:
        raise TraceNotOne(f"trace differs from 1 by more than {tol:g}", trace_defect)
    h = hermitian_part(m)
    low = float(np.linalg.eigvalsh(h).min())
    if low < -support_eps:
        raise NotPSD(f"minimum eigenvalue {low:.3e} below -{support_eps:g}", -low)
    return DensityMatrix(matrix=h, full_rank=low > support_eps)


def max_mixed(dim: int) -> DensityMatrix:
    """The maximally mixed state I/dim."""
    if dim < 1:
        raise InvalidShape(f"dim must be >= 1, got {dim}")
    return DensityMatrix(matrix=np.eye(dim, dtype=complex) / dim, full_rank=True)


def random_density(spec: RandomSpec) -> DensityMatrix:
    """Seeded random state: normalized Ginibre GG^* mixed toward I/dim.

    The mixing weight is the smallest one that lifts the minimum eigenvalue
    to ``spec.min_eigenvalue``; identical specs give bitwise-identical
    matrices.
    """
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    d = spec.dim
    g = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2.0)
    rho0 = g @ g.conj().T
    rho0 = hermitian_part(rho0 / np.trace(rho0).real)
    low = float(np.linalg.eigvalsh(rho0).min())
    floor = spec.min_eigenvalue
    if low < floor:
        lam = (floor - low) / (1.0 / d - low)
        rho0 = (1.0 - lam) * rho0 + lam * np.eye(d) / d
    return validate_density(rho0)


def random_direction(dim: int, seed: int, traceless: bool = True) -> np.ndarray:
    """Seeded random Hermitian matrix with unit Frobenius norm."""
    rng = np.random.Generator(np.random.PCG64(seed))
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    h = hermitian_part(g)
    if traceless:
        h -= np.trace(h).real / dim * np.eye(dim)
    return h / frobenius(h)


def random_commuting_pair(
    dim: int, seed: int, min_eigenvalue: float = 0.0
) -> tuple[DensityMatrix, DensityMatrix]:
    """Two states diagonal in one random basis (they commute exactly)."""
    rng = np.random.Generator(np.random.PCG64(seed))
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(g)
    q = q * (np.diagonal(r) / np.abs(np.diagonal(r)))

    def spectrum() -> np.ndarray:
        w = rng.dirichlet(np.ones(dim))
        low = w.min()
        if low < min_eigenvalue:
            lam = (min_eigenvalue - low) / (1.0 / dim - low)
            w = (1.0 - lam) * w + lam / dim
        return w

    states = []
    for _ in range(2):
        w = spectrum()
        states.append(validate_density(hermitian_part((q * w) @ q.conj().T)))
    return states[0], states[1]


def commutation_defect(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """Frobenius norm of the commutator [rho, sigma]."""
    if rho.dim != sigma.dim:
        raise DimensionMismatch(f"dims {rho.dim} and {sigma.dim} differ")
    a, b = rho.matrix, sigma.matrix
    return frobenius(a @ b - b @ a)


def validate_distribution(weights: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """Check nonnegativity and normalization of a probability vector."""
    w = np.asarray(weights, dtype=float)
    if w.ndim != 1 or w.size == 0:
        raise InvalidDistribution(f"expected a nonempty 1-d vector, got shape {w.shape}")
    low = float(w.min())
    if low < -tol:
        raise InvalidDistribution(f"negative weight below -{tol:g}", -low)
    total_defect = abs(float(w.sum()) - 1.0)
    if total_defect > tol:
        raise InvalidDistribution(f"weights sum differs from 1 by more than {tol:g}", total_defect)
    return np.clip(w, 0.0, None)
