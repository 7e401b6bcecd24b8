"""Exponential-side parallel transport and its moment functions.

Four metric choices admit closed-form autoparallel curves through a
full-rank base state sigma with Hermitian direction L (theta is the arc
parameter, mu the log-normalizer that keeps the trace at one):

    s     e^{-mu} e^{theta L / 2} sigma e^{theta L / 2}
    b     e^{-mu} exp(log sigma + theta L)
    r     e^{-mu} sigma^{1/2} e^{theta L_r} sigma^{1/2}
    half  e^{-mu} sigma^{1/4} e^{theta K / 2} sigma^{1/2} e^{theta K / 2} sigma^{1/4}

The auxiliary Hermitian directions L_r and K (= L_half) are fixed by
requiring that L is the Hermitian part of the transported operator:
L = (sigma^{-1/2} L_r sigma^{1/2} + sigma^{1/2} L_r sigma^{-1/2}) / 2 and
the quarter-power analogue for K. All exponentials are evaluated with the
largest exponent shifted to zero and the shift restored inside mu, so
large |theta| cannot overflow.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import metrics
from .errors import DimensionMismatch, DomainError, NotFullRank, TargetMismatch
from .linalg import (
    eig_hermitian,
    frobenius,
    herm_log,
    herm_power,
    hermitian_part,
    require_hermitian,
)
from .states import DensityMatrix, validate_density

AUX_RELATION_TOL = 1e-9
TARGET_TOL = 1e-8
_D1_STEP = 1e-4
_D2_STEP = 1e-3


class GeodesicKind(enum.Enum):
    SLD = "s"
    BOGOLJUBOV = "b"
    RLD = "r"
    HALF = "half"

    @property
    def metric(self) -> metrics.MetricKind:
        return {
            GeodesicKind.SLD: metrics.SLD,
            GeodesicKind.BOGOLJUBOV: metrics.BOGOLJUBOV,
            GeodesicKind.RLD: metrics.RLD,
            GeodesicKind.HALF: metrics.HALF,
        }[self]


@dataclass(frozen=True)
class Geodesic:
    """Closed-form autoparallel curve: base state, Hermitian direction, kind."""

    base: DensityMatrix
    direction: np.ndarray
    kind: GeodesicKind
    aux_direction: np.ndarray | None = None


def solve_auxiliary_direction(
    kind: GeodesicKind, sigma: DensityMatrix, direction: np.ndarray
) -> np.ndarray:
    """Invert the Hermitian-part relation for kinds r and half.

    In sigma's eigenbasis the relation is entrywise:
    L_ij = aux_ij * (w_ij + 1/w_ij) / 2 with w_ij = (d_j / d_i)^p,
    p = 1/2 for kind r and p = 1/4 for kind half.
    """
    if kind not in (GeodesicKind.RLD, GeodesicKind.HALF):
        raise DomainError(f"kind {kind.value} has no auxiliary direction")
    if not sigma.full_rank:
        raise NotFullRank("base state must be full rank")
    eig = eig_hermitian(sigma.matrix)
    d = eig.eigenvalues
    p = 0.5 if kind is GeodesicKind.RLD else 0.25
    w = (d[None, :] / d[:, None]) ** p
    weights = 2.0 / (w + 1.0 / w)
    u = eig.eigenvectors
    lp = u.conj().T @ direction @ u
    return hermitian_part(u @ (weights * lp) @ u.conj().T)


def _aux_relation_defect(
    kind: GeodesicKind, sigma: DensityMatrix, direction: np.ndarray, aux: np.ndarray
) -> float:
    p = 0.5 if kind is GeodesicKind.RLD else 0.25
    sp = herm_power(sigma.matrix, p)
    sm = herm_power(sigma.matrix, -p)
    rebuilt = (sm @ aux @ sp + sp @ aux @ sm) / 2.0
    return frobenius(rebuilt - direction)


def make_geodesic(
    kind: GeodesicKind,
    base: DensityMatrix,
    direction: np.ndarray,
    aux_direction: np.ndarray | None = None,
    tol: float = 1e-10,
) -> Geodesic:
    """Build a geodesic, solving and verifying the auxiliary direction."""
    if not base.full_rank:
        raise NotFullRank("base state must be full rank")
    direction = np.asarray(direction, dtype=complex)
    if direction.shape != (base.dim, base.dim):
        raise DimensionMismatch(
            f"direction shape {direction.shape} does not match state dim {base.dim}"
        )
    require_hermitian(direction, tol, name="direction")
    aux = None
    if kind in (GeodesicKind.RLD, GeodesicKind.HALF):
        aux = aux_direction if aux_direction is not None else solve_auxiliary_direction(kind, base, direction)
        defect = _aux_relation_defect(kind, base, direction, aux)
        if defect > AUX_RELATION_TOL:
            raise TargetMismatch(
                f"auxiliary direction violates its defining relation by {defect:.3e}"
            )
    return Geodesic(base=base, direction=direction, kind=kind, aux_direction=aux)


class MomentFunction:
    """Log-normalizer mu(theta) of a geodesic, with cached spectral data.

    mu(0) = 0, mu is convex, and its second derivative is the Fisher
    information of the curve under the matching metric.
    """

    def __init__(self, geodesic: Geodesic):
        self.geodesic = geodesic
        kind = geodesic.kind
        sigma = geodesic.base.matrix
        self._sigma = sigma
        if kind is GeodesicKind.SLD:
            eig = eig_hermitian(geodesic.direction)
            self._gen = eig
            self._sigma_in_gen = eig.eigenvectors.conj().T @ sigma @ eig.eigenvectors
        elif kind is GeodesicKind.BOGOLJUBOV:
            self._log_sigma = herm_log(sigma)
        elif kind is GeodesicKind.RLD:
            eig = eig_hermitian(geodesic.aux_direction)
            self._gen = eig
            self._sigma_half = herm_power(sigma, 0.5)
            self._sigma_in_gen = eig.eigenvectors.conj().T @ sigma @ eig.eigenvectors
        else:
            eig = eig_hermitian(geodesic.aux_direction)
            self._gen = eig
            self._sigma_quarter = herm_power(sigma, 0.25)
            half = herm_power(sigma, 0.5)
            self._sigma_half = half
            self._half_in_gen = eig.eigenvectors.conj().T @ half @ eig.eigenvectors

    def _shift(self, theta: float) -> float:
        d = self._gen.eigenvalues
        return float(d.max() if theta >= 0 else d.min())

    def __call__(self, theta: float) -> float:
        kind = self.geodesic.kind
        if kind is GeodesicKind.BOGOLJUBOV:
            h = self._log_sigma + theta * self.geodesic.direction
            w = np.linalg.eigvalsh(hermitian_part(h))
            top = w.max()
            return float(top + np.log(np.sum(np.exp(w - top))))
        d = self._gen.eigenvalues
        c = self._shift(theta)
        if kind is GeodesicKind.SLD:
            weights = np.exp(theta * (d - c))
            tau = float(np.sum(weights * np.diagonal(self._sigma_in_gen).real))
            return float(np.log(tau) + theta * c)
        if kind is GeodesicKind.RLD:
            weights = np.exp(theta * (d - c))
            tau = float(np.sum(weights * np.diagonal(self._sigma_in_gen).real))
            return float(np.log(tau) + theta * c)
        # half: trace of F s F s with F = exp(theta (K - c)/2) in K's eigenbasis
        weights = np.exp(theta * (d - c) / 2.0)
        g = self._half_in_gen
        tau = float(np.real(np.sum(weights[:, None] * weights[None, :] * g * g.T)))
        return float(np.log(tau) + theta * c)

    def state_and_moment(self, theta: float) -> tuple[DensityMatrix, float]:
        kind = self.geodesic.kind
        if kind is GeodesicKind.BOGOLJUBOV:
            h = self._log_sigma + theta * self.geodesic.direction
            eig = eig_hermitian(hermitian_part(h))
            top = eig.eigenvalues.max()
            mu = float(top + np.log(np.sum(np.exp(eig.eigenvalues - top))))
            u = eig.eigenvectors
            mat = (u * np.exp(eig.eigenvalues - mu)) @ u.conj().T
            return validate_density(hermitian_part(mat)), mu
        d = self._gen.eigenvalues
        u = self._gen.eigenvectors
        c = self._shift(theta)
        if kind is GeodesicKind.SLD:
            e = (u * np.exp(theta * (d - c) / 2.0)) @ u.conj().T
            t = e @ self._sigma @ e
        elif kind is GeodesicKind.RLD:
            e = (u * np.exp(theta * (d - c))) @ u.conj().T
            t = self._sigma_half @ e @ self._sigma_half
        else:
            f = (u * np.exp(theta * (d - c) / 2.0)) @ u.conj().T
            q = self._sigma_quarter
            t = q @ f @ self._sigma_half @ f @ q
        tau = float(np.trace(t).real)
        mu = float(np.log(tau) + theta * c)
        return validate_density(hermitian_part(t / tau)), mu

    def state(self, theta: float) -> DensityMatrix:
        return self.state_and_moment(theta)[0]

    def derivative(self, theta: float, order: int) -> float:
        """Central difference with one Richardson level (steps h and h/2)."""
        if order == 1:
            h = _D1_STEP

            def diff(step: float) -> float:
                return (self(theta + step) - self(theta - step)) / (2.0 * step)

            return (4.0 * diff(h / 2.0) - diff(h)) / 3.0
        if order == 2:
            h = _D2_STEP
            f0 = self(theta)

            def diff(step: float) -> float:
                return (self(theta + step) - 2.0 * f0 + self(theta - step)) / step**2

            return (4.0 * diff(h / 2.0) - diff(h)) / 3.0
        raise DomainError(f"derivative order must be 1 or 2, got {order}")


def e_transport(geodesic: Geodesic, theta: float) -> DensityMatrix:
    """The state an amount theta along the curve; theta = 0 gives the base."""
    return MomentFunction(geodesic).state(theta)


def moment_value(geodesic: Geodesic, theta: float) -> float:
    return MomentFunction(geodesic)(theta)


def moment_derivative(geodesic: Geodesic, theta: float, order: int) -> float:
    return MomentFunction(geodesic).derivative(theta, order)


def solve_direction(
    kind: GeodesicKind, rho: DensityMatrix, sigma: DensityMatrix, tol: float = TARGET_TOL
) -> Geodesic:
    """Direction through sigma whose unit-parameter transport lands on rho.

    The result is verified by transporting: a Frobenius defect above
    ``tol`` raises TargetMismatch (a numerical breakdown, not a user
    error).
    """
    if rho.dim != sigma.dim:
        raise DimensionMismatch(f"dims {rho.dim} and {sigma.dim} differ")
    if not (rho.full_rank and sigma.full_rank):
        raise NotFullRank("both states must be full rank")
    s = sigma.matrix
    aux = None
    if kind is GeodesicKind.SLD:
        sh = herm_power(s, 0.5)
        shi = herm_power(s, -0.5)
        inner = herm_power(hermitian_part(sh @ rho.matrix @ sh), 0.5)
        direction = 2.0 * herm_log(hermitian_part(shi @ inner @ shi))
    elif kind is GeodesicKind.BOGOLJUBOV:
        direction = herm_log(rho.matrix) - herm_log(s)
    elif kind is GeodesicKind.RLD:
        sh = herm_power(s, 0.5)
        shi = herm_power(s, -0.5)
        aux = herm_log(hermitian_part(shi @ rho.matrix @ shi))
        direction = hermitian_part(shi @ aux @ sh)  # (A + A^*) / 2 with A = shi aux sh
    else:
        q = herm_power(s, 0.25)
        qi = herm_power(s, -0.25)
        rho_half = herm_power(rho.matrix, 0.5)
        k = herm_log(hermitian_part(qi @ rho_half @ qi))
        aux = 2.0 * k
        direction = 2.0 * hermitian_part(qi @ k @ q)  # qi k q + q k qi
    g = make_geodesic(kind, sigma, hermitian_part(direction), aux_direction=aux)
    defect = frobenius(e_transport(g, 1.0).matrix - rho.matrix)
    if defect > tol:
        raise TargetMismatch(
            f"transport misses the target by {defect:.3e} (tolerance {tol:g})"
        )
    return g


def m_geodesic(rho: DensityMatrix, sigma: DensityMatrix, t: float) -> DensityMatrix:
    """The mixture segment (1-t) rho + t sigma."""
    if rho.dim != sigma.dim:
        raise DimensionMismatch(f"dims {rho.dim} and {sigma.dim} differ")
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"t must lie in [0, 1], got {t}")
    return validate_density((1.0 - t) * rho.matrix + t * sigma.matrix)


def transport_commutation_defect(
    kind: GeodesicKind,
    sigma: DensityMatrix,
    direction1: np.ndarray,
    direction2: np.ndarray,
    theta1: float,
    theta2: float,
) -> float:
    """Frobenius gap between transporting along the two directions in
    either order; zero means a two-parameter autoparallel family exists."""
    first = e_transport(make_geodesic(kind, sigma, direction1), theta1)
    then = e_transport(make_geodesic(kind, first, direction2), theta2)
    second = e_transport(make_geodesic(kind, sigma, direction2), theta2)
    other = e_transport(make_geodesic(kind, second, direction1), theta1)
    return frobenius(then.matrix - other.matrix)
