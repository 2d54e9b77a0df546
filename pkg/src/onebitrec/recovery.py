"""Recovery of the unquantized vector and the fused scalar estimate.

The fusion step solves, per round, a convex quadratic program: minimize
z' M z subject to the sign-consistency half-lines Diag(r) (z - tau) >= 0,
where M is the covariance-weighted residual form left after eliminating the
scalar parameter. The scalar estimate is the covariance-weighted mean of the
recovered vector.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import cho_solve

from .kernels import pgd_minimize
from .noisemodel import NoiseModel
from .sensing import QuantizedFrame, quantize

__all__ = ["RecoveryCache", "RecoveryResult", "build_cache", "estimate_theta", "solve_cqp"]

FEASIBILITY_RTOL = 1e-9
STOP_RTOL = 1e-12
MAX_ITERATIONS = 20_000
CONSISTENCY_MARGIN = 1e-9


@dataclass(frozen=True)
class RecoveryCache:
    """Quantities derived from one noise covariance, reused across time steps.

    eta: weight vector of the covariance-weighted mean (eta' 1 = 1).
    m_matrix: symmetric PSD quadratic form with the all-ones vector in its
        nullspace, so the objective is blind to constant shifts.
    lipschitz: upper bound on the largest eigenvalue of m_matrix; the
        projected-gradient step size is its reciprocal.
    sigma_chol: lower Cholesky factor of the noise covariance (all inverse
        applications go through triangular solves, never an explicit inverse).
    fisher_denominator: 1' Sigma^-1 1, the reciprocal of the estimator variance.
    """

    eta: np.ndarray
    m_matrix: np.ndarray
    lipschitz: float
    sigma_chol: np.ndarray
    fisher_denominator: float

    @property
    def dim(self) -> int:
        return self.eta.shape[0]


@dataclass(frozen=True)
class RecoveryResult:
    z_hat: np.ndarray
    theta_hat: float
    objective: float
    iterations: int
    fast_path: bool
    consistent: bool
    max_iterations_reached: bool = False


def build_cache(noise: NoiseModel) -> RecoveryCache:
    """Precompute the weight vector, reduced quadratic form, and step bound."""
    n = noise.dim
    ones = np.ones(n)
    try:
        u = cho_solve((noise.chol, True), ones)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - chol validated upstream
        raise ValueError("singular covariance") from exc
    denom = float(ones @ u)
    eta = u / denom

    proj = np.eye(n) - np.outer(ones, eta)
    m = proj.T @ cho_solve((noise.chol, True), proj)
    m = 0.5 * (m + m.T)  # kill roundoff asymmetry so m is exactly symmetric

    lam_max = float(np.linalg.eigvalsh(m)[-1])
    lipschitz = max(lam_max, np.finfo(np.float64).tiny) * (1.0 + 1e-6)

    return RecoveryCache(
        eta=eta,
        m_matrix=np.ascontiguousarray(m),
        lipschitz=lipschitz,
        sigma_chol=noise.chol,
        fisher_denominator=denom,
    )


def estimate_theta(cache: RecoveryCache, z: np.ndarray) -> float:
    """Covariance-weighted mean eta' z; reduces to the sample mean for white noise."""
    z = np.asarray(z, dtype=np.float64)
    if z.shape != (cache.dim,):
        raise ValueError(f"z must have shape ({cache.dim},), got {z.shape}")
    return float(cache.eta @ z)


def feasible_interval(frame: QuantizedFrame) -> tuple[float, float]:
    """Bounds (lo, hi) of the constants c for which c * 1 satisfies every sign.

    lo is the largest threshold that must be cleared from above (-inf when no
    +1 bits), hi the smallest that must be cleared from below (+inf when no
    -1 bits). The interval is non-empty iff lo <= hi.
    """
    plus = frame.r > 0
    lo = float(frame.tau[plus].max()) if plus.any() else -np.inf
    hi = float(frame.tau[~plus].min()) if (~plus).any() else np.inf
    return lo, hi


def solve_cqp(cache: RecoveryCache, frame: QuantizedFrame) -> RecoveryResult:
    """Recover the unquantized vector consistent with one round of sign bits.

    Fast path: whenever some constant vector satisfies every sign constraint
    the objective minimum is exactly zero there; the midpoint of the feasible
    constant interval is returned (or its finite endpoint when one-sided).
    General path: projected gradient descent from z = tau with step
    1 / lipschitz, projecting by clamping each coordinate onto its half-line.
    """
    n = frame.dim
    if n == 0:
        raise ValueError("frame must contain at least one sensor")
    if n != cache.dim:
        raise ValueError(f"frame length {n} does not match cache dimension {cache.dim}")

    tau = np.ascontiguousarray(frame.tau, dtype=np.float64)
    lo, hi = feasible_interval(frame)

    if lo <= hi:
        if np.isinf(lo):
            c = hi
        elif np.isinf(hi):
            c = lo
        else:
            c = 0.5 * (lo + hi)
        z_hat = np.full(n, c)
        objective = 0.0
        iterations = 0
        fast_path = True
        capped = False
    else:
        z_hat, iterations, capped, objective = pgd_minimize(
            cache.m_matrix,
            tau,
            np.ascontiguousarray(frame.r, dtype=np.int8),
            1.0 / cache.lipschitz,
            STOP_RTOL,
            MAX_ITERATIONS,
        )
        fast_path = False

    theta_hat = estimate_theta(cache, z_hat)

    off_boundary = np.abs(z_hat - tau) > CONSISTENCY_MARGIN
    requantized = quantize(z_hat, tau, frame.k)
    consistent = bool(np.all(requantized.r[off_boundary] == frame.r[off_boundary]))

    return RecoveryResult(
        z_hat=z_hat,
        theta_hat=theta_hat,
        objective=float(objective),
        iterations=int(iterations),
        fast_path=fast_path,
        consistent=consistent,
        max_iterations_reached=bool(capped),
    )
