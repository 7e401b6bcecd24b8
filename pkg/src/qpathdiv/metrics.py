"""State-dependent inner products and quantum Fisher information.

A tangent vector at a full-rank state rho has two representations: the raw
derivative A (mixture side) and a logarithmic-derivative-like operator X
(exponential side), tied together by A = E_rho(X). The map E_rho acts in
rho's eigenbasis by entrywise multiplication with a scalar kernel
c(d_i, d_j) of the eigenvalues:

    SLD         c(a, b) = (a + b) / 2          symmetric Jordan product
    Bogoljubov  c(a, b) = (a - b) / (log a - log b)
    RLD         c(a, b) = a                    left multiplication
    lambda      c(a, b) = a^lam * b^(1 - lam)
    measure     c(a, b) = sum_k w_k a^{l_k} b^{1 - l_k}

Every kernel satisfies c(a, a) = a, so E_rho(I) = rho for each variant.
Inverting E_rho is entrywise division by the same kernel, which is what
makes the dual (mixture-side) inner product computable in O(n^2) after one
eigendecomposition.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DimensionMismatch, DomainError, InvalidShape, NotFullRank
from .linalg import eig_hermitian, hermitian_part
from .states import DensityMatrix

# below this log-ratio the Bogoljubov kernel switches to its series branch
_LOG_RATIO_EPS = 1e-8


@dataclass(frozen=True)
class MetricKind:
    """Selector for the kernel family; use the module constants or factories."""

    name: str
    lam: float | None = None
    points: tuple[tuple[float, float], ...] = ()

    def __post_init__(self) -> None:
        if self.name not in ("s", "b", "r", "lambda", "measure"):
            raise InvalidShape(f"unknown metric kind {self.name!r}")
        if self.name == "lambda":
            if self.lam is None or not 0.0 <= self.lam <= 1.0:
                raise InvalidShape(f"lambda must lie in [0, 1], got {self.lam}")
        if self.name == "measure":
            if not self.points:
                raise InvalidShape("measure kind needs at least one (lambda, weight) point")
            lams = np.array([p[0] for p in self.points])
            ws = np.array([p[1] for p in self.points])
            if np.any(lams < 0) or np.any(lams > 1):
                raise InvalidShape("measure points must lie in [0, 1]")
            if np.any(ws < 0) or abs(ws.sum() - 1.0) > 1e-12:
                raise InvalidShape("measure weights must be a probability distribution")

    @property
    def is_symmetric(self) -> bool:
        """True when Hermitian X maps to Hermitian E(X)."""
        if self.name in ("s", "b"):
            return True
        if self.name == "r":
            return False
        if self.name == "lambda":
            return self.lam == 0.5

        def mirrored_weight(point: float) -> float:
            return sum(w for p, w in self.points if abs(p - (1.0 - point)) <= 1e-12)

        return all(abs(mirrored_weight(p) - w) <= 1e-12 for p, w in self.points)

    def label(self) -> str:
        if self.name == "lambda":
            return "half" if self.lam == 0.5 else f"lambda({self.lam:g})"
        if self.name == "measure":
            return "measure(" + ",".join(f"{p:g}:{w:g}" for p, w in self.points) + ")"
        return self.name


SLD = MetricKind("s")
BOGOLJUBOV = MetricKind("b")
RLD = MetricKind("r")


def lambda_kind(lam: float) -> MetricKind:
    return MetricKind("lambda", lam=float(lam))


def measure_kind(points) -> MetricKind:
    return MetricKind("measure", points=tuple((float(p), float(w)) for p, w in points))


HALF = lambda_kind(0.5)


def metric_to_json(kind: MetricKind):
    if kind.name in ("s", "b", "r"):
        return kind.name
    if kind.name == "lambda":
        return {"lambda": kind.lam}
    return {"measure": [[p, w] for p, w in kind.points]}


def metric_from_json(obj) -> MetricKind:
    if isinstance(obj, str):
        if obj in ("s", "b", "r"):
            return MetricKind(obj)
        if obj == "half":
            return HALF
        raise InvalidShape(f"unknown metric tag {obj!r}")
    if isinstance(obj, dict):
        if "lambda" in obj:
            return lambda_kind(obj["lambda"])
        if "measure" in obj:
            return measure_kind(obj["measure"])
    raise InvalidShape(f"cannot parse metric from {obj!r}")


def _bogoljubov_kernel(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    # logarithmic mean; three-term series in u = log(b/a) near coincidence
    # to avoid catastrophic cancellation
    la, lb = np.log(a), np.log(b)
    diff = la - lb
    near = np.abs(diff) < _LOG_RATIO_EPS
    u = lb - la
    series = a * (1.0 + u / 2.0 + u * u / 6.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        exact = np.where(near, 1.0, a - b) / np.where(near, 1.0, diff)
    return np.where(near, series, exact)


def kernel_matrix(kind: MetricKind, eigenvalues: np.ndarray) -> np.ndarray:
    """The matrix c(d_i, d_j) over a positive spectrum."""
    d = np.asarray(eigenvalues, dtype=float)
    if np.any(d <= 0):
        raise DomainError(f"kernel needs a strictly positive spectrum, min {d.min():.3e}")
    a = d[:, None]
    b = d[None, :]
    if kind.name == "s":
        return (a + b) / 2.0
    if kind.name == "b":
        return _bogoljubov_kernel(a, b)
    if kind.name == "r":
        return np.broadcast_to(a, (d.size, d.size)).copy()
    if kind.name == "lambda":
        c = a**kind.lam * b ** (1.0 - kind.lam)
    else:
        c = np.zeros((d.size, d.size))
        for lam, w in kind.points:
            c += w * a**lam * b ** (1.0 - lam)
    # pin coincident eigenvalues so c(a, a) = a holds exactly despite pow roundoff
    return np.where(a == b, a, c)


def _full_rank_eig(rho: DensityMatrix):
    if not rho.full_rank:
        raise NotFullRank("state is not full rank (eigenvalue at or below 1e-12)")
    return eig_hermitian(rho.matrix)


def _check_dim(rho: DensityMatrix, x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=complex)
    if x.shape != (rho.dim, rho.dim):
        raise DimensionMismatch(f"operand shape {x.shape} does not match state dim {rho.dim}")
    return x


def e_to_m(rho: DensityMatrix, kind: MetricKind, x: np.ndarray) -> np.ndarray:
    """A = E_rho(X): exponential-side operator to mixture-side tangent."""
    x = _check_dim(rho, x)
    eig = _full_rank_eig(rho)
    u = eig.eigenvectors
    xp = u.conj().T @ x @ u
    c = kernel_matrix(kind, eig.eigenvalues)
    return u @ (c * xp) @ u.conj().T


def m_to_e(rho: DensityMatrix, kind: MetricKind, a: np.ndarray) -> np.ndarray:
    """X = E_rho^{-1}(A): entrywise division by the kernel in rho's eigenbasis."""
    a = _check_dim(rho, a)
    eig = _full_rank_eig(rho)
    u = eig.eigenvectors
    ap = u.conj().T @ a @ u
    c = kernel_matrix(kind, eig.eigenvalues)
    return u @ (ap / c) @ u.conj().T


def e_inner(rho: DensityMatrix, kind: MetricKind, y: np.ndarray, x: np.ndarray) -> complex:
    """<Y, X> = Tr Y^* E_rho(X); sesquilinear, PSD, Hermitian-symmetric."""
    y = _check_dim(rho, y)
    return complex(np.trace(y.conj().T @ e_to_m(rho, kind, x)))


def m_inner(rho: DensityMatrix, kind: MetricKind, a: np.ndarray, b: np.ndarray) -> complex:
    """<A, B> = Tr (E_rho^{-1}(A))^* B, the dual pairing of e_inner."""
    b = _check_dim(rho, b)
    return complex(np.trace(m_to_e(rho, kind, a).conj().T @ b))


def fisher_info_mixture(
    rho: DensityMatrix, sigma: DensityMatrix, kind: MetricKind, t: float
) -> float:
    """Fisher information of the segment (1-t) rho + t sigma at parameter t.

    The tangent is the constant sigma - rho, so no differentiation is
    involved; this is the squared mixture-side norm of that tangent at the
    interpolated state.
    """
    if rho.dim != sigma.dim:
        raise DimensionMismatch(f"dims {rho.dim} and {sigma.dim} differ")
    mt = (1.0 - t) * rho.matrix + t * sigma.matrix
    eig = eig_hermitian(hermitian_part(mt))
    if float(eig.eigenvalues.min()) <= 1e-12:
        raise NotFullRank(f"mixture state at t={t:g} is not full rank")
    delta = sigma.matrix - rho.matrix
    u = eig.eigenvectors
    dp = u.conj().T @ delta @ u
    c = kernel_matrix(kind, eig.eigenvalues)
    return float(np.sum(np.abs(dp) ** 2 / c))


def fisher_info_numeric(
    family: Callable[[float], DensityMatrix],
    theta: float,
    kind: MetricKind,
    h: float = 1e-4,
) -> float:
    """Fisher information of a one-parameter family by central differences.

    Richardson-extrapolates the derivative over steps h and h/2, then takes
    its squared mixture-side norm at family(theta).
    """
    rho = family(theta)

    def derivative(step: float) -> np.ndarray:
        return (family(theta + step).matrix - family(theta - step).matrix) / (2.0 * step)

    d = (4.0 * derivative(h / 2.0) - derivative(h)) / 3.0
    return float(m_inner(rho, kind, d, d).real)
