"""Randomized verification of every identity and inequality the package
asserts, as replayable pass/fail claims.

Each claim derives an independent pseudo-random stream from
(global seed, claim id, trial index) via SHA-256, so claims can run in any
order or in parallel without changing a single trial. The worst trial of
every claim is recorded as a witness that can be replayed standalone.

Claim modes:
  equality        worst_slack = max defect over trials; pass iff <= tolerance
  inequality      worst_slack = min margin over trials; pass iff >= -tolerance
  counterexample  worst_slack = best defect found;      pass iff  > tolerance
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np

from . import metrics
from .channels import apply_channel, measure, partial_trace, random_channel, sandwich_pvm
from .divergences import (
    ConvexFunctionModel,
    QuadratureConfig,
    adaptive_gauss_legendre,
    bregman_divergence,
    bs_divergence,
    classical_kl,
    e_divergence_closed,
    e_divergence_quadrature,
    legendre_model,
    m_divergence,
    quantum_relative_entropy,
    von_neumann_entropy,
)
from .errors import ConfigError, UnknownClaim
from .linalg import herm_log, hermitian_part, tensor_product
from .metrics import BOGOLJUBOV, HALF, RLD, SLD, fisher_info_mixture, fisher_info_numeric
from .states import (
    DensityMatrix,
    RandomSpec,
    commutation_defect,
    random_commuting_pair,
    random_density,
    random_direction,
    validate_density,
)
from .transport import (
    GeodesicKind,
    MomentFunction,
    m_geodesic,
    solve_direction,
    transport_commutation_defect,
)

DEFAULT_GLOBAL_SEED = 20250809
_FLOOR = 0.05
_STRICT_GAP = 1e-6
_NONCOMMUTING = 1e-8
_TIGHT_QUADRATURE = QuadratureConfig(nodes=64, rel_tol=1e-12, max_nodes=1024)

_GEODESIC_KINDS = (GeodesicKind.SLD, GeodesicKind.BOGOLJUBOV, GeodesicKind.RLD, GeodesicKind.HALF)
_METRIC_KINDS = (SLD, BOGOLJUBOV, RLD, HALF)


def derive_seed(*parts) -> int:
    """Stable 63-bit seed from arbitrary labels (replayable across runs)."""
    text = "/".join(str(p) for p in parts)
    digest = hashlib.sha256(text.encode()).digest()
    return int.from_bytes(digest[:8], "big") >> 1


@dataclass(frozen=True)
class ClaimSpec:
    id: str
    dims: tuple[int, ...]
    trials: int
    tolerance: float
    mode: str

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise ConfigError(f"claim {self.id}: trials must be >= 1")
        if self.tolerance <= 0:
            raise ConfigError(f"claim {self.id}: tolerance must be > 0")
        if self.mode not in ("equality", "inequality", "counterexample"):
            raise ConfigError(f"claim {self.id}: unknown mode {self.mode!r}")


@dataclass(frozen=True)
class ClaimRecord:
    claim_id: str
    mode: str
    dims: tuple[int, ...]
    trials: int
    tolerance: float
    worst_slack: float
    passed: bool
    witness: dict
    details: dict

    def to_dict(self) -> dict:
        out = asdict(self)
        out["dims"] = list(self.dims)
        return out


# registry entry: (default spec, trial function, optional extra check)
# trial(dim, trial_seed) -> (measure, extras); must be a pure function of
# its arguments so witnesses replay exactly.
_TrialFn = Callable[[int, int], tuple[float, dict]]
_REGISTRY: dict[str, tuple[ClaimSpec, _TrialFn, Callable | None]] = {}


def _register(claim_id, dims, trials, tolerance, mode, extra_check=None):
    def deco(fn: _TrialFn) -> _TrialFn:
        spec = ClaimSpec(claim_id, tuple(dims), trials, tolerance, mode)
        _REGISTRY[claim_id] = (spec, fn, extra_check)
        return fn

    return deco


def registered_claims() -> tuple[str, ...]:
    return tuple(_REGISTRY)


def default_spec(claim_id: str) -> ClaimSpec:
    if claim_id not in _REGISTRY:
        raise UnknownClaim(f"no claim registered under {claim_id!r}")
    return _REGISTRY[claim_id][0]


def _pair(dim: int, seed: int) -> tuple[DensityMatrix, DensityMatrix]:
    rho = random_density(RandomSpec(dim, derive_seed(seed, "rho"), _FLOOR))
    sigma = random_density(RandomSpec(dim, derive_seed(seed, "sigma"), _FLOOR))
    return rho, sigma


def run_claim(claim_id: str, global_seed: int = DEFAULT_GLOBAL_SEED, spec: ClaimSpec | None = None) -> ClaimRecord:
    """Execute one registered claim; deterministic given (claim, seed)."""
    if claim_id not in _REGISTRY:
        raise UnknownClaim(f"no claim registered under {claim_id!r}")
    default, trial_fn, extra_check = _REGISTRY[claim_id]
    spec = spec or default
    best_for_mode = max if spec.mode != "inequality" else min
    worst = -math.inf if spec.mode != "inequality" else math.inf
    witness: dict = {}
    extras_list: list[dict] = []
    for t in range(spec.trials):
        dim = spec.dims[t % len(spec.dims)]
        trial_seed = derive_seed(global_seed, spec.id, dim, t)
        value, extras = trial_fn(dim, trial_seed)
        extras_list.append(extras)
        if best_for_mode(value, worst) == value:
            worst = value
            witness = {"trial": t, "dim": dim, "seed": trial_seed, "measure": value, **extras}
    if spec.mode == "equality":
        passed = worst <= spec.tolerance
    elif spec.mode == "inequality":
        passed = worst >= -spec.tolerance
    else:
        passed = worst > spec.tolerance
    details: dict = {}
    if extra_check is not None:
        extra_ok, extra_details = extra_check(spec, extras_list)
        passed = passed and extra_ok
        details.update(extra_details)
    return ClaimRecord(
        claim_id=spec.id,
        mode=spec.mode,
        dims=spec.dims,
        trials=spec.trials,
        tolerance=spec.tolerance,
        worst_slack=worst,
        passed=passed,
        witness=witness,
        details=details,
    )


def replay_witness(claim_id: str, witness: dict) -> float:
    """Re-run the recorded worst trial; returns the recomputed measure."""
    if claim_id not in _REGISTRY:
        raise UnknownClaim(f"no claim registered under {claim_id!r}")
    _, trial_fn, _ = _REGISTRY[claim_id]
    value, _extras = trial_fn(int(witness["dim"]), int(witness["seed"]))
    return value


# --------------------------------------------------------------------------
# claim trial functions
# --------------------------------------------------------------------------


def _quadrature_agreement(kind: GeodesicKind) -> _TrialFn:
    def trial(dim: int, seed: int) -> tuple[float, dict]:
        rho, sigma = _pair(dim, seed)
        closed = e_divergence_closed(kind, rho, sigma)
        quad = e_divergence_quadrature(kind, rho, sigma)
        # scaled so that measure <= 1e-6 iff |quad-closed| <= max(1e-6, 1e-5|closed|)
        allowed = max(1e-6, 1e-5 * abs(closed))
        measure = abs(quad - closed) * (1e-6 / allowed)
        return measure, {"closed": closed, "quadrature": quad}

    return trial


for _kind in _GEODESIC_KINDS:
    _register(
        f"e-path-closed-vs-quadrature-{_kind.value}",
        dims=(2, 3, 4),
        trials=600,
        tolerance=1e-6,
        mode="equality",
    )(_quadrature_agreement(_kind))


@_register("relative-entropy-closed-form", dims=(2, 3, 4), trials=201, tolerance=1e-10, mode="equality")
def _relative_entropy_closed_form(dim: int, seed: int):
    rho, sigma = _pair(dim, seed)
    via_path = e_divergence_closed(GeodesicKind.BOGOLJUBOV, rho, sigma)
    direct = float(np.trace(rho.matrix @ (herm_log(rho.matrix) - herm_log(sigma.matrix))).real)
    return abs(via_path - direct), {"value": direct}


@_register("m-path-bogoljubov-matches-relative-entropy", dims=(2, 3, 4), trials=201, tolerance=1e-6, mode="equality")
def _m_b_matches_d(dim: int, seed: int):
    rho, sigma = _pair(dim, seed)
    d = quantum_relative_entropy(rho, sigma)
    m = m_divergence(BOGOLJUBOV, rho, sigma)
    return abs(m - d), {"relative_entropy": d, "m_path": m}


@_register("rld-identity-e-m-bs", dims=(2, 3, 4), trials=201, tolerance=1e-6, mode="equality")
def _rld_identity(dim: int, seed: int):
    rho, sigma = _pair(dim, seed)
    bar = bs_divergence(rho, sigma)
    e_r = e_divergence_closed(GeodesicKind.RLD, rho, sigma)
    m_r = m_divergence(RLD, rho, sigma)
    return max(abs(e_r - bar), abs(m_r - bar)), {"bs": bar, "e_path": e_r, "m_path": m_r}


def _chain_genericity(spec: ClaimSpec, extras_list: list[dict]):
    noncommuting = [e for e in extras_list if e["noncommuting"]]
    strict = sum(1 for e in noncommuting if e["strict"])
    fraction = strict / max(1, len(noncommuting))
    return fraction >= 0.95, {"strict_fraction": fraction, "noncommuting_trials": len(noncommuting)}


@_register(
    "divergence-ordering-chain",
    dims=(2, 3, 4),
    trials=1002,
    tolerance=1e-8,
    mode="inequality",
    extra_check=_chain_genericity,
)
def _ordering_chain(dim: int, seed: int):
    rho, sigma = _pair(dim, seed)
    d = quantum_relative_entropy(rho, sigma)
    e_s = e_divergence_closed(GeodesicKind.SLD, rho, sigma)
    bar = bs_divergence(rho, sigma)
    low_gap = d - e_s
    high_gap = bar - d
    margin = min(low_gap, high_gap)
    noncommuting = commutation_defect(rho, sigma) > _NONCOMMUTING
    strict = low_gap > _STRICT_GAP and high_gap > _STRICT_GAP
    return margin, {
        "low_gap": low_gap,
        "high_gap": high_gap,
        "noncommuting": bool(noncommuting),
        "strict": bool(strict),
    }


@_register("e-path-additivity", dims=(2,), trials=200, tolerance=1e-6, mode="equality")
def _e_additivity(dim: int, seed: int):
    r1, s1 = _pair(dim, derive_seed(seed, "first"))
    r2, s2 = _pair(dim, derive_seed(seed, "second"))
    big_rho = validate_density(tensor_product(r1.matrix, r2.matrix))
    big_sigma = validate_density(tensor_product(s1.matrix, s2.matrix))
    worst = 0.0
    values = {}
    for kind in _GEODESIC_KINDS:
        joint = e_divergence_closed(kind, big_rho, big_sigma)
        split = e_divergence_closed(kind, r1, s1) + e_divergence_closed(kind, r2, s2)
        values[kind.value] = joint
        worst = max(worst, abs(joint - split))
    return worst, {"joint_values": values}


@_register("m-path-monotonicity", dims=(2, 3, 4), trials=500, tolerance=1e-7, mode="inequality")
def _m_monotonicity(dim: int, seed: int):
    style = seed % 4
    if style == 0:
        rho, sigma = _pair(4, seed)
        keep = "A" if seed % 2 == 0 else "B"
        out_rho = partial_trace(rho, (2, 2), keep)
        out_sigma = partial_trace(sigma, (2, 2), keep)
        channel_desc = f"partial-trace-keep-{keep}"
    else:
        rho, sigma = _pair(dim, seed)
        kraus_count = (1, 2, 4)[style - 1]
        channel = random_channel(dim, dim, kraus_count, derive_seed(seed, "channel"))
        out_rho = apply_channel(channel, rho)
        out_sigma = apply_channel(channel, sigma)
        channel_desc = f"random-kraus-{kraus_count}"
    worst = math.inf
    for kind in _METRIC_KINDS:
        before = m_divergence(kind, rho, sigma)
        after = m_divergence(kind, out_rho, out_sigma)
        worst = min(worst, before - after)
    return worst, {"channel": channel_desc}


@_register("rld-m-path-dominates", dims=(2, 3), trials=500, tolerance=1e-8, mode="inequality")
def _rld_dominates(dim: int, seed: int):
    rho, sigma = _pair(dim, seed)
    top = m_divergence(RLD, rho, sigma)
    worst = min(top - m_divergence(kind, rho, sigma) for kind in (SLD, BOGOLJUBOV, HALF))
    return worst, {"rld_value": top}


@_register("sld-m-path-below-relative-entropy", dims=(2, 3), trials=500, tolerance=1e-8, mode="inequality")
def _sld_below_d(dim: int, seed: int):
    rho, sigma = _pair(dim, seed)
    d = quantum_relative_entropy(rho, sigma)
    m_s = m_divergence(SLD, rho, sigma)
    return d - m_s, {"relative_entropy": d, "m_path_sld": m_s}


@_register("sandwich-pvm-achieves-s-divergence", dims=(2, 3, 4), trials=201, tolerance=1e-8, mode="equality")
def _sandwich_equality(dim: int, seed: int):
    rho, sigma = _pair(dim, seed)
    pvm = sandwich_pvm(rho, sigma)
    induced = classical_kl(measure(rho, pvm), measure(sigma, pvm))
    target = e_divergence_closed(GeodesicKind.SLD, rho, sigma)
    return abs(induced - target), {"induced_kl": induced, "e_path_s": target}


def _commutation_trial(kind: GeodesicKind) -> _TrialFn:
    def trial(dim: int, seed: int) -> tuple[float, dict]:
        sigma = random_density(RandomSpec(dim, derive_seed(seed, "base"), _FLOOR))
        l1 = random_direction(dim, derive_seed(seed, "dir1"))
        l2 = random_direction(dim, derive_seed(seed, "dir2"))
        rng = np.random.Generator(np.random.PCG64(derive_seed(seed, "theta")))
        theta1, theta2 = rng.uniform(-1.0, 1.0, size=2)
        defect = transport_commutation_defect(kind, sigma, l1, l2, theta1, theta2)
        return defect, {"theta1": float(theta1), "theta2": float(theta2)}

    return trial


_register("transport-commutation-bogoljubov", dims=(2, 3), trials=100, tolerance=1e-8, mode="equality")(
    _commutation_trial(GeodesicKind.BOGOLJUBOV)
)
_register("transport-commutation-counterexample-s", dims=(2,), trials=60, tolerance=1e-3, mode="counterexample")(
    _commutation_trial(GeodesicKind.SLD)
)
_register("transport-commutation-counterexample-r", dims=(2,), trials=60, tolerance=1e-3, mode="counterexample")(
    _commutation_trial(GeodesicKind.RLD)
)


@_register("e-path-gap-counterexample-s", dims=(2, 3), trials=60, tolerance=1e-3, mode="counterexample")
def _e_gap_s(dim: int, seed: int):
    rho, sigma = _pair(dim, seed)
    gap = quantum_relative_entropy(rho, sigma) - e_divergence_closed(GeodesicKind.SLD, rho, sigma)
    return gap, {}


@_register("e-path-gap-counterexample-r", dims=(2, 3), trials=60, tolerance=1e-3, mode="counterexample")
def _e_gap_r(dim: int, seed: int):
    rho, sigma = _pair(dim, seed)
    gap = e_divergence_closed(GeodesicKind.RLD, rho, sigma) - quantum_relative_entropy(rho, sigma)
    return gap, {}


@_register("m-path-gap-counterexample-s", dims=(2, 3), trials=60, tolerance=1e-3, mode="counterexample")
def _m_gap_s(dim: int, seed: int):
    rho, sigma = _pair(dim, seed)
    gap = quantum_relative_entropy(rho, sigma) - m_divergence(SLD, rho, sigma)
    return gap, {}


@_register("m-path-gap-counterexample-r", dims=(2, 3), trials=60, tolerance=1e-3, mode="counterexample")
def _m_gap_r(dim: int, seed: int):
    rho, sigma = _pair(dim, seed)
    gap = m_divergence(RLD, rho, sigma) - quantum_relative_entropy(rho, sigma)
    return gap, {}


# ---------------------------------------------------------------------------
# convex-duality machinery over traceless Hermitian bases
# ---------------------------------------------------------------------------


def traceless_hermitian_basis(dim: int) -> list[np.ndarray]:
    """Generalized Gell-Mann basis of the traceless Hermitian matrices."""
    basis: list[np.ndarray] = []
    for i in range(dim):
        for j in range(i + 1, dim):
            sym = np.zeros((dim, dim), dtype=complex)
            sym[i, j] = sym[j, i] = 1.0
            basis.append(sym)
            skew = np.zeros((dim, dim), dtype=complex)
            skew[i, j] = -1j
            skew[j, i] = 1j
            basis.append(skew)
    for level in range(1, dim):
        d = np.zeros(dim)
        d[:level] = 1.0
        d[level] = -level
        basis.append(np.diag(d * np.sqrt(2.0 / (level * (level + 1)))).astype(complex))
    return basis


def dual_basis(basis: list[np.ndarray]) -> list[np.ndarray]:
    """Y^i with Tr Y^i X_j = delta_ij under the trace inner product."""
    k = len(basis)
    gram = np.array([[float(np.trace(a @ b).real) for b in basis] for a in basis])
    inv = np.linalg.inv(gram)
    return [sum(inv[i, j] * basis[j] for j in range(k)) for i in range(k)]


@dataclass(frozen=True)
class QuantumExponentialFamily:
    """States exp(sum_i theta^i X_i - moment) over a traceless Hermitian basis.

    The moment function is shifted so moment(0) = 0; then its Legendre
    transform evaluated at the mixture coordinates of a state equals that
    state's entropy deficit from the maximally mixed state.
    """

    basis: tuple[np.ndarray, ...]

    @property
    def k(self) -> int:
        return len(self.basis)

    @property
    def dim(self) -> int:
        return self.basis[0].shape[0]

    def _generator(self, theta: np.ndarray) -> np.ndarray:
        return sum(t * x for t, x in zip(np.asarray(theta, dtype=float), self.basis))

    def moment(self, theta: np.ndarray) -> float:
        w = np.linalg.eigvalsh(self._generator(theta))
        top = w.max()
        return float(top + np.log(np.sum(np.exp(w - top))) - np.log(self.dim))

    def state(self, theta: np.ndarray) -> DensityMatrix:
        h = hermitian_part(self._generator(theta))
        from .linalg import eig_hermitian

        eig = eig_hermitian(h)
        w = eig.eigenvalues - eig.eigenvalues.max()
        p = np.exp(w)
        p /= p.sum()
        u = eig.eigenvectors
        return validate_density((u * p) @ u.conj().T)

    def mean_parameters(self, theta: np.ndarray) -> np.ndarray:
        rho = self.state(theta)
        return np.array([float(np.trace(rho.matrix @ x).real) for x in self.basis])

    def mixture_coordinates(self, state: DensityMatrix) -> np.ndarray:
        return np.array([float(np.trace(state.matrix @ x).real) for x in self.basis])

    def state_from_mixture(self, eta: np.ndarray) -> DensityMatrix:
        duals = dual_basis(list(self.basis))
        mat = np.eye(self.dim, dtype=complex) / self.dim
        for value, y in zip(np.asarray(eta, dtype=float), duals):
            mat = mat + value * y
        return validate_density(mat)

    def model(self) -> ConvexFunctionModel:
        return ConvexFunctionModel(dim=self.k, value=self.moment, grad=self.mean_parameters)


@_register("potential-duality-bogoljubov", dims=(2,), trials=25, tolerance=1e-6, mode="equality")
def _potential_duality(dim: int, seed: int):
    family = QuantumExponentialFamily(basis=tuple(traceless_hermitian_basis(dim)))
    rng = np.random.Generator(np.random.PCG64(seed))
    theta = rng.uniform(-0.8, 0.8, size=family.k)
    theta_bar = rng.uniform(-0.8, 0.8, size=family.k)
    rho_bar = family.state(theta_bar)
    rho = family.state(theta)
    mu_model = family.model()
    d = quantum_relative_entropy(rho_bar, rho)
    natural_defect = abs(d - bregman_divergence(mu_model, theta_bar, theta))
    box = np.array([[-3.0, 3.0]] * family.k)
    nu_model = legendre_model(mu_model, box)
    eta = family.mean_parameters(theta)
    eta_bar = family.mean_parameters(theta_bar)
    m_b = m_divergence(BOGOLJUBOV, rho_bar, rho)
    mixture_defect = abs(m_b - bregman_divergence(nu_model, eta, eta_bar))
    entropy_defect = abs(
        nu_model.value(eta) - (np.log(family.dim) - von_neumann_entropy(rho))
    )
    worst = max(natural_defect, mixture_defect, entropy_defect)
    return worst, {
        "natural_defect": natural_defect,
        "mixture_defect": mixture_defect,
        "entropy_defect": entropy_defect,
    }


@_register("classical-mixture-path-integral", dims=(2, 3, 4, 5), trials=100, tolerance=1e-6, mode="equality")
def _classical_mixture(dim: int, seed: int):
    rng = np.random.Generator(np.random.PCG64(seed))
    p = rng.dirichlet(np.ones(dim)) * 0.9 + 0.1 / dim
    q = rng.dirichlet(np.ones(dim)) * 0.9 + 0.1 / dim

    def weighted_info(t: float) -> float:
        mix = (1.0 - t) * p + t * q
        return t * float(np.sum((q - p) ** 2 / mix))

    integral, _ = adaptive_gauss_legendre(weighted_info)
    return abs(integral - classical_kl(p, q)), {"kl": classical_kl(p, q)}


def _random_classical_family(seed: int, alphabet: int, k: int = 2):
    rng = np.random.Generator(np.random.PCG64(seed))
    base = rng.dirichlet(np.ones(alphabet)) * 0.9 + 0.1 / alphabet
    features = rng.uniform(-1.0, 1.0, size=(k, alphabet))
    from .divergences import ExponentialFamily

    return ExponentialFamily(base=base, features=features), rng


@_register("classical-legendre-duality", dims=(3,), trials=50, tolerance=1e-6, mode="equality")
def _classical_duality(dim: int, seed: int):
    family, rng = _random_classical_family(seed, dim)
    theta = rng.uniform(-1.0, 1.0, size=family.dim)
    theta_bar = rng.uniform(-1.0, 1.0, size=family.dim)
    model = family.model()
    primal = bregman_divergence(model, theta_bar, theta)
    box = np.array([[-5.0, 5.0]] * family.dim)
    nu = legendre_model(model, box)
    dual = bregman_divergence(nu, family.mean_parameters(theta), family.mean_parameters(theta_bar))
    return abs(primal - dual), {"primal": primal, "dual": dual}


@_register("exponential-family-bregman-matches-kl", dims=(3,), trials=100, tolerance=1e-8, mode="equality")
def _exp_family_kl(dim: int, seed: int):
    family, rng = _random_classical_family(seed, dim)
    theta = rng.uniform(-1.0, 1.0, size=family.dim)
    theta_bar = rng.uniform(-1.0, 1.0, size=family.dim)
    via_model = bregman_divergence(family.model(), theta_bar, theta)
    via_kl = classical_kl(family.distribution(theta_bar), family.distribution(theta))
    return abs(via_model - via_kl), {"kl": via_kl}


@_register("commuting-reduction", dims=(2, 3, 4), trials=100, tolerance=1e-10, mode="equality")
def _commuting_reduction(dim: int, seed: int):
    rho, sigma = random_commuting_pair(dim, seed, _FLOOR)
    # simultaneous eigenbasis from a generic combination (spectra stay matched)
    from .linalg import eig_hermitian

    eig = eig_hermitian(rho.matrix + 0.618 * sigma.matrix)
    u = eig.eigenvectors
    p = np.diagonal(u.conj().T @ rho.matrix @ u).real
    q = np.diagonal(u.conj().T @ sigma.matrix @ u).real
    kl = classical_kl(p, q)
    values = [
        quantum_relative_entropy(rho, sigma),
        bs_divergence(rho, sigma),
    ]
    for kind in _GEODESIC_KINDS:
        values.append(e_divergence_closed(kind, rho, sigma))
    for kind in _METRIC_KINDS:
        values.append(m_divergence(kind, rho, sigma, _TIGHT_QUADRATURE))
    worst = max(abs(v - kl) for v in values)
    return worst, {"classical_kl": kl}


@_register("moment-curvature-matches-fisher-info", dims=(2, 3), trials=80, tolerance=1e-5, mode="equality")
def _moment_curvature(dim: int, seed: int):
    kind = _GEODESIC_KINDS[seed % 4]
    rho, sigma = _pair(dim, seed)
    geo = solve_direction(kind, rho, sigma)
    mf = MomentFunction(geo)
    worst = 0.0
    for theta in (0.0, 0.25, 0.5, 0.75, 1.0):
        curvature = mf.derivative(theta, 2)
        info = fisher_info_numeric(mf.state, theta, kind.metric)
        worst = max(worst, abs(curvature - info))
    return worst, {"kind": kind.value}


@_register("numeric-fisher-matches-mixture", dims=(2, 3), trials=100, tolerance=1e-6, mode="equality")
def _numeric_fisher(dim: int, seed: int):
    kind = _METRIC_KINDS[seed % 4]
    rho, sigma = _pair(dim, seed)
    worst = 0.0
    for t in (0.2, 0.5, 0.8):
        numeric = fisher_info_numeric(lambda u: m_geodesic(rho, sigma, u), t, kind)
        exact = fisher_info_mixture(rho, sigma, kind, t)
        worst = max(worst, abs(numeric - exact))
    return worst, {"kind": kind.label()}


# --------------------------------------------------------------------------
# suites, config, reports
# --------------------------------------------------------------------------

THEOREM2_CLAIMS = (
    "transport-commutation-bogoljubov",
    "transport-commutation-counterexample-s",
    "transport-commutation-counterexample-r",
    "e-path-closed-vs-quadrature-b",
    "m-path-bogoljubov-matches-relative-entropy",
    "e-path-gap-counterexample-s",
    "e-path-gap-counterexample-r",
    "m-path-gap-counterexample-s",
    "m-path-gap-counterexample-r",
    "potential-duality-bogoljubov",
)


def run_theorem2_suite(
    dims: tuple[int, ...] | None = None,
    trials: int | None = None,
    seed: int = DEFAULT_GLOBAL_SEED,
) -> list[ClaimRecord]:
    """The equivalence suite: equalities hold exactly for the Bogoljubov
    metric, and quantitative failures are exhibited for kinds s and r."""
    records = []
    for claim_id in THEOREM2_CLAIMS:
        spec = default_spec(claim_id)
        if dims is not None or trials is not None:
            spec = ClaimSpec(
                spec.id,
                tuple(dims) if dims is not None else spec.dims,
                trials if trials is not None else spec.trials,
                spec.tolerance,
                spec.mode,
            )
        records.append(run_claim(claim_id, seed, spec))
    return records


@dataclass(frozen=True)
class HarnessConfig:
    seed: int = DEFAULT_GLOBAL_SEED
    claims: tuple[str, ...] | None = None
    overrides: dict = field(default_factory=dict)

    @staticmethod
    def from_dict(obj: dict) -> "HarnessConfig":
        if not isinstance(obj, dict):
            raise ConfigError(f"config must be an object, got {type(obj).__name__}")
        allowed = {"seed", "claims", "overrides"}
        unknown = set(obj) - allowed
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        seed = obj.get("seed", DEFAULT_GLOBAL_SEED)
        if not isinstance(seed, int) or seed < 0:
            raise ConfigError(f"seed must be a nonnegative integer, got {seed!r}")
        claims = obj.get("claims")
        if claims is not None:
            if not isinstance(claims, list) or not all(isinstance(c, str) for c in claims):
                raise ConfigError("claims must be a list of claim ids")
            for c in claims:
                if c not in _REGISTRY:
                    raise ConfigError(f"unknown claim id {c!r}")
            claims = tuple(claims)
        overrides = obj.get("overrides", {})
        if not isinstance(overrides, dict):
            raise ConfigError("overrides must be an object keyed by claim id")
        for claim_id, entry in overrides.items():
            if claim_id not in _REGISTRY:
                raise ConfigError(f"override for unknown claim id {claim_id!r}")
            if not isinstance(entry, dict) or set(entry) - {"trials", "tolerance", "dims"}:
                raise ConfigError(
                    f"override for {claim_id!r} may only set trials, tolerance, dims"
                )
        return HarnessConfig(seed=seed, claims=claims, overrides=overrides)

    def canonical_json(self) -> str:
        return json.dumps(
            {
                "seed": self.seed,
                "claims": list(self.claims) if self.claims is not None else None,
                "overrides": self.overrides,
            },
            sort_keys=True,
            separators=(",", ":"),
        )

    def config_hash(self) -> str:
        return hashlib.sha256(self.canonical_json().encode()).hexdigest()

    def resolved_spec(self, claim_id: str) -> ClaimSpec:
        spec = default_spec(claim_id)
        entry = self.overrides.get(claim_id)
        if not entry:
            return spec
        return ClaimSpec(
            id=spec.id,
            dims=tuple(entry.get("dims", spec.dims)),
            trials=int(entry.get("trials", spec.trials)),
            tolerance=float(entry.get("tolerance", spec.tolerance)),
            mode=spec.mode,
        )


@dataclass(frozen=True)
class VerificationReport:
    global_seed: int
    config_hash: str
    records: tuple[ClaimRecord, ...]

    @property
    def all_pass(self) -> bool:
        return all(r.passed for r in self.records)

    def to_dict(self) -> dict:
        return {
            "global_seed": self.global_seed,
            "config_hash": self.config_hash,
            "all_pass": self.all_pass,
            "claims": [r.to_dict() for r in self.records],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"


def run_all(config: HarnessConfig | None = None) -> VerificationReport:
    """Run the registered claim list (optionally filtered) into a report."""
    config = config or HarnessConfig()
    ids = config.claims if config.claims is not None else registered_claims()
    records = tuple(run_claim(cid, config.seed, config.resolved_spec(cid)) for cid in ids)
    return VerificationReport(
        global_seed=config.seed,
        config_hash=config.config_hash(),
        records=records,
    )
