"""Divergence functionals and the classical convex-duality machinery.

Quantum functionals (all in nats, full-rank second argument throughout):

  quantum_relative_entropy   Tr rho (log rho - log sigma)
  bs_divergence              Tr rho log(rho^{1/2} sigma^{-1} rho^{1/2})
                             (Belavkin-Staszewski; upper-bounds the above)
  e_divergence_closed        closed forms of the exponential-path divergence
                             for kinds s, b, r, half
  e_divergence_quadrature    the same quantity from its defining integral
                             of theta * mu''(theta) along the solved curve
  m_divergence               integral of t * J_t along the mixture segment
                             (1-t) rho + t sigma, any metric kind

The classical layer (classical_kl, ExponentialFamily, bregman_divergence,
legendre_transform) provides independent oracles: on commuting inputs every
quantum functional above must reduce to the classical value on the spectra.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import metrics
from .errors import (
    DimensionMismatch,
    DomainError,
    NotFullRank,
    NotInRange,
    QuadratureNotConverged,
    SupportViolation,
)
from .linalg import (
    SUPPORT_EPS,
    apply_fn,
    eig_hermitian,
    herm_log,
    herm_power,
    hermitian_part,
)
from .states import DensityMatrix
from .transport import GeodesicKind, MomentFunction, solve_direction

_KL_CUTOFF = 1e-15


@dataclass(frozen=True)
class QuadratureConfig:
    """Gauss-Legendre node count with doubling refinement."""

    nodes: int = 32
    rel_tol: float = 1e-8
    max_nodes: int = 512

    def __post_init__(self) -> None:
        if self.nodes < 2:
            raise DomainError(f"need at least 2 nodes, got {self.nodes}")
        if self.rel_tol <= 0:
            raise DomainError(f"rel_tol must be positive, got {self.rel_tol}")
        if self.max_nodes < 2 * self.nodes:
            raise DomainError("max_nodes must allow at least one doubling")


def _gl_estimate(f: Callable[[float], float], n: int) -> float:
    x, w = np.polynomial.legendre.leggauss(n)
    t = (x + 1.0) / 2.0
    return 0.5 * float(sum(wi * f(ti) for ti, wi in zip(t, w)))


def adaptive_gauss_legendre(
    f: Callable[[float], float], config: QuadratureConfig = QuadratureConfig()
) -> tuple[float, int]:
    """Integrate f over [0, 1], doubling nodes until successive estimates
    agree to rel_tol; returns (value, nodes used)."""
    n = config.nodes
    prev = _gl_estimate(f, n)
    while 2 * n <= config.max_nodes:
        n *= 2
        cur = _gl_estimate(f, n)
        if abs(cur - prev) <= config.rel_tol * max(1.0, abs(cur)):
            return cur, n
        prev = cur
    raise QuadratureNotConverged(
        f"estimates still differ by {abs(cur - prev):.3e} at {n} nodes"
    )


def _require_full_rank(state: DensityMatrix, name: str) -> None:
    if not state.full_rank:
        raise NotFullRank(f"{name} must be full rank")


def _check_pair(rho: DensityMatrix, sigma: DensityMatrix) -> None:
    if rho.dim != sigma.dim:
        raise DimensionMismatch(f"dims {rho.dim} and {sigma.dim} differ")


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """-Tr rho log rho with 0 log 0 = 0."""
    w = rho.spectrum()
    support = w > SUPPORT_EPS
    return float(-np.sum(w[support] * np.log(w[support])))


def quantum_relative_entropy(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """Tr rho (log rho - log sigma); rank-deficient rho uses 0 log 0 = 0."""
    _check_pair(rho, sigma)
    _require_full_rank(sigma, "sigma")
    w = rho.spectrum()
    support = w > SUPPORT_EPS
    entropy_term = float(np.sum(w[support] * np.log(w[support])))
    cross = float(np.trace(rho.matrix @ herm_log(sigma.matrix)).real)
    return entropy_term - cross


def bs_divergence(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """Tr rho log(rho^{1/2} sigma^{-1} rho^{1/2})."""
    _check_pair(rho, sigma)
    _require_full_rank(rho, "rho")
    _require_full_rank(sigma, "sigma")
    rh = herm_power(rho.matrix, 0.5)
    si = herm_power(sigma.matrix, -1.0)
    m = hermitian_part(rh @ si @ rh)
    return float(np.trace(rho.matrix @ herm_log(m)).real)


def e_divergence_closed(kind: GeodesicKind, rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """Closed-form exponential-path divergence for the four named kinds."""
    _check_pair(rho, sigma)
    _require_full_rank(rho, "rho")
    _require_full_rank(sigma, "sigma")
    if kind is GeodesicKind.BOGOLJUBOV:
        return quantum_relative_entropy(rho, sigma)
    if kind is GeodesicKind.RLD:
        return bs_divergence(rho, sigma)
    s = sigma.matrix
    if kind is GeodesicKind.SLD:
        sh = herm_power(s, 0.5)
        shi = herm_power(s, -0.5)
        inner = herm_power(hermitian_part(sh @ rho.matrix @ sh), 0.5)
        x = hermitian_part(shi @ inner @ shi)
        return 2.0 * float(np.trace(rho.matrix @ herm_log(x)).real)
    q = herm_power(s, 0.25)
    qi = herm_power(s, -0.25)
    rh = herm_power(rho.matrix, 0.5)
    g = hermitian_part(qi @ rh @ qi)
    a = hermitian_part(q @ rh @ q)
    with np.errstate(all="ignore"):
        glogg = apply_fn(g, lambda v: v * np.log(v))
    return 2.0 * float(np.trace(a @ glogg).real)


def e_divergence_quadrature(
    kind: GeodesicKind,
    rho: DensityMatrix,
    sigma: DensityMatrix,
    config: QuadratureConfig = QuadratureConfig(),
) -> float:
    """Exponential-path divergence from its defining integral.

    Solves the direction reaching rho from sigma, then integrates
    theta * mu''(theta) over [0, 1] (the curvature of the log-normalizer is
    the Fisher information along the curve).
    """
    geo = solve_direction(kind, rho, sigma)
    mf = MomentFunction(geo)
    value, _ = adaptive_gauss_legendre(lambda th: th * mf.derivative(th, 2), config)
    return value


def m_divergence_detail(
    kind: metrics.MetricKind,
    rho: DensityMatrix,
    sigma: DensityMatrix,
    config: QuadratureConfig = QuadratureConfig(),
) -> tuple[float, int]:
    """m_divergence plus the Gauss-Legendre node count it settled on."""
    _check_pair(rho, sigma)
    _require_full_rank(rho, "rho")
    _require_full_rank(sigma, "sigma")
    return adaptive_gauss_legendre(
        lambda t: t * metrics.fisher_info_mixture(rho, sigma, kind, t), config
    )


def m_divergence(
    kind: metrics.MetricKind,
    rho: DensityMatrix,
    sigma: DensityMatrix,
    config: QuadratureConfig = QuadratureConfig(),
) -> float:
    """Mixture-path divergence: integral of t * J_t along (1-t) rho + t sigma.

    rho sits at t = 0, so commuting inputs reproduce the classical
    divergence of the spectra in that argument order.
    """
    return m_divergence_detail(kind, rho, sigma, config)[0]


def classical_kl(p: np.ndarray, q: np.ndarray) -> float:
    """Sum p log(p/q) with 0 log 0 = 0; q must carry p's support."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    if p.shape != q.shape:
        raise DimensionMismatch(f"shapes {p.shape} and {q.shape} differ")
    mask = p > _KL_CUTOFF
    if np.any(q[mask] <= _KL_CUTOFF):
        worst = float(q[mask].min())
        raise SupportViolation(
            f"q vanishes (min {worst:.3e}) where p has mass", worst
        )
    return float(np.sum(p[mask] * np.log(p[mask] / q[mask])))


@dataclass(frozen=True)
class ConvexFunctionModel:
    """A twice-differentiable strictly convex function with its gradient.

    ``grad`` may be omitted; a central finite difference is used then.
    """

    dim: int
    value: Callable[[np.ndarray], float]
    grad: Callable[[np.ndarray], np.ndarray] | None = None

    def gradient(self, theta: np.ndarray) -> np.ndarray:
        theta = np.asarray(theta, dtype=float)
        if self.grad is not None:
            return np.asarray(self.grad(theta), dtype=float)
        out = np.zeros(self.dim)
        for i in range(self.dim):
            h = 1e-6 * (1.0 + abs(theta[i]))
            e = np.zeros(self.dim)
            e[i] = h
            out[i] = (self.value(theta + e) - self.value(theta - e)) / (2.0 * h)
        return out

    def hessian(self, theta: np.ndarray) -> np.ndarray:
        theta = np.asarray(theta, dtype=float)
        out = np.zeros((self.dim, self.dim))
        for i in range(self.dim):
            h = 1e-6 * (1.0 + abs(theta[i]))
            e = np.zeros(self.dim)
            e[i] = h
            out[:, i] = (self.gradient(theta + e) - self.gradient(theta - e)) / (2.0 * h)
        return (out + out.T) / 2.0


def bregman_divergence(model: ConvexFunctionModel, theta_bar: np.ndarray, theta: np.ndarray) -> float:
    """grad(theta_bar) . (theta_bar - theta) - value(theta_bar) + value(theta)."""
    theta_bar = np.asarray(theta_bar, dtype=float)
    theta = np.asarray(theta, dtype=float)
    if theta_bar.shape != (model.dim,) or theta.shape != (model.dim,):
        raise DomainError(
            f"points must have shape ({model.dim},), got {theta_bar.shape} and {theta.shape}"
        )
    g = model.gradient(theta_bar)
    out = float(g @ (theta_bar - theta) - model.value(theta_bar) + model.value(theta))
    if not np.isfinite(out):
        raise DomainError("model evaluated to a non-finite value")
    return out


def _maximize_dual(
    model: ConvexFunctionModel,
    eta: np.ndarray,
    box: np.ndarray,
    grid_points: int,
    tol: float,
    max_newton: int,
) -> tuple[np.ndarray, float]:
    eta = np.asarray(eta, dtype=float)
    box = np.asarray(box, dtype=float).reshape(model.dim, 2)

    def objective(th: np.ndarray) -> float:
        return float(eta @ th - model.value(th))

    axes = [np.linspace(lo, hi, grid_points) for lo, hi in box]
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, model.dim)
    theta = min(grid, key=lambda th: -objective(th))
    theta = np.asarray(theta, dtype=float)

    scale = 1.0 + float(np.max(np.abs(eta)))
    for _ in range(max_newton):
        residual = model.gradient(theta) - eta
        if float(np.max(np.abs(residual))) <= tol * scale:
            break
        hess = model.hessian(theta)
        try:
            step = -np.linalg.solve(hess, residual)
        except np.linalg.LinAlgError:
            step = -np.linalg.solve(hess + 1e-10 * np.eye(model.dim), residual)
        alpha = 1.0
        base = objective(theta)
        while alpha > 1e-8:
            candidate = np.clip(theta + alpha * step, box[:, 0], box[:, 1])
            if objective(candidate) >= base - 1e-15:
                theta = candidate
                break
            alpha /= 2.0
        else:
            break
    residual = float(np.max(np.abs(model.gradient(theta) - eta)))
    if residual > 1e-6 * scale:
        raise NotInRange(
            f"no stationary point in the box (gradient residual {residual:.3e})",
            residual,
        )
    return theta, objective(theta)


def legendre_transform(
    model: ConvexFunctionModel,
    eta: np.ndarray,
    box: np.ndarray,
    grid_points: int = 7,
    tol: float = 1e-11,
    max_newton: int = 80,
) -> float:
    """max over theta in box of eta . theta - value(theta).

    Damped Newton on the stationarity equation grad(theta) = eta, seeded by
    a coarse grid; NotInRange when no interior solution exists.
    """
    return _maximize_dual(model, eta, box, grid_points, tol, max_newton)[1]


def legendre_maximizer(
    model: ConvexFunctionModel,
    eta: np.ndarray,
    box: np.ndarray,
    grid_points: int = 7,
    tol: float = 1e-11,
    max_newton: int = 80,
) -> np.ndarray:
    """The argmax of the Legendre transform (the dual parameter of eta)."""
    return _maximize_dual(model, eta, box, grid_points, tol, max_newton)[0]


def legendre_model(model: ConvexFunctionModel, box: np.ndarray) -> ConvexFunctionModel:
    """The Legendre-transformed model; its gradient is the dual maximizer."""
    return ConvexFunctionModel(
        dim=model.dim,
        value=lambda eta: legendre_transform(model, eta, box),
        grad=lambda eta: legendre_maximizer(model, eta, box),
    )


@dataclass(frozen=True)
class ExponentialFamily:
    """Finite-alphabet exponential family p(w) exp(theta . X(w) - moment)."""

    base: np.ndarray      # nonnegative weights over the alphabet
    features: np.ndarray  # shape (k, alphabet size)

    @property
    def dim(self) -> int:
        return self.features.shape[0]

    def _log_unnorm(self, theta: np.ndarray) -> np.ndarray:
        return np.log(self.base) + np.asarray(theta, dtype=float) @ self.features

    def moment(self, theta: np.ndarray) -> float:
        z = self._log_unnorm(theta)
        top = z.max()
        return float(top + np.log(np.sum(np.exp(z - top))))

    def distribution(self, theta: np.ndarray) -> np.ndarray:
        z = self._log_unnorm(theta)
        z -= z.max()
        w = np.exp(z)
        return w / w.sum()

    def mean_parameters(self, theta: np.ndarray) -> np.ndarray:
        return self.features @ self.distribution(theta)

    def model(self) -> ConvexFunctionModel:
        return ConvexFunctionModel(dim=self.dim, value=self.moment, grad=self.mean_parameters)
