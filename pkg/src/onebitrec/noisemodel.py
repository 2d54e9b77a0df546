"""Gaussian observation-noise models with a validated SPD covariance."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["NoiseModel", "from_covariance", "white", "colored", "sample"]

SYMMETRY_RTOL = 1e-12


@dataclass(frozen=True)
class NoiseModel:
    """Zero-mean Gaussian noise acting on an array of N sensors.

    ``covariance`` is the N x N SPD matrix of the joint noise vector and
    ``chol`` its lower-triangular Cholesky factor (chol @ chol.T == covariance).
    Instances are immutable and safe to share across threads; sampling never
    mutates the model.
    """

    covariance: np.ndarray
    chol: np.ndarray

    @property
    def dim(self) -> int:
        return self.covariance.shape[0]

    @property
    def total_power(self) -> float:
        """Trace of the covariance matrix."""
        return float(np.trace(self.covariance))


def from_covariance(covariance: np.ndarray) -> NoiseModel:
    """Validate an SPD covariance matrix and attach its Cholesky factor.

    Asymmetry beyond a 1e-12 relative tolerance is rejected rather than
    symmetrized, so caller bugs fail loudly.
    """
    cov = np.array(covariance, dtype=np.float64)
    if cov.ndim != 2 or cov.shape[0] != cov.shape[1]:
        raise ValueError(f"covariance must be a square matrix, got shape {cov.shape}")
    n = cov.shape[0]
    if n < 1:
        raise ValueError("covariance must have at least one row")
    scale = max(1.0, float(np.abs(cov).max()))
    if float(np.abs(cov - cov.T).max()) > SYMMETRY_RTOL * scale:
        raise ValueError("covariance is not symmetric within tolerance")
    try:
        chol = np.linalg.cholesky(cov)
    except np.linalg.LinAlgError as exc:
        raise ValueError("covariance is not positive definite") from exc
    if float(np.trace(cov)) <= 0.0:
        raise ValueError("covariance trace must be positive")
    return NoiseModel(covariance=cov, chol=chol)


def white(n: int, sigma_v: float) -> NoiseModel:
    """Independent per-sensor noise with common standard deviation sigma_v."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if sigma_v <= 0.0:
        raise ValueError(f"sigma_v must be > 0, got {sigma_v}")
    return from_covariance(sigma_v**2 * np.eye(n))


def colored(n: int, p_tot: float, rho: float) -> NoiseModel:
    """Exponentially correlated noise with total power p_tot spread over n sensors.

    Covariance entries are (p_tot / n) * rho**|i - j|, so the trace equals
    p_tot exactly and the matrix is SPD for rho in [0, 1).
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if p_tot <= 0.0:
        raise ValueError(f"p_tot must be > 0, got {p_tot}")
    if not 0.0 <= rho < 1.0:
        raise ValueError(f"rho must be in [0, 1), got {rho}")
    idx = np.arange(n)
    cov = (p_tot / n) * rho ** np.abs(np.subtract.outer(idx, idx)).astype(np.float64)
    return from_covariance(cov)


def sample(model: NoiseModel, rng: np.random.Generator) -> np.ndarray:
    """Draw one noise vector: chol @ g with g i.i.d. standard normal from rng."""
    return model.chol @ rng.standard_normal(model.dim)
