"""Adaptive threshold design: recenter on the current estimate, add Gaussian dither."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .noisemodel import NoiseModel

__all__ = [
    "ThresholdPolicy",
    "initial_thresholds",
    "next_thresholds",
    "default_dither_std",
]


@dataclass(frozen=True)
class ThresholdPolicy:
    """Dither scale and starting thresholds for the per-round update.

    sigma_tau = 0 degenerates to the deterministic rule tau = theta_hat * 1,
    which is permitted for ablation. ``init`` may be a scalar (broadcast), a
    vector, or None for all-zeros.
    """

    sigma_tau: float
    init: float | np.ndarray | None = None

    def __post_init__(self) -> None:
        if self.sigma_tau < 0.0:
            raise ValueError(f"sigma_tau must be >= 0, got {self.sigma_tau}")


def initial_thresholds(policy: ThresholdPolicy, n: int) -> np.ndarray:
    """Round-zero thresholds: configured vector, broadcast scalar, or zeros."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if policy.init is None:
        return np.zeros(n)
    init = np.atleast_1d(np.asarray(policy.init, dtype=np.float64))
    if init.size == 1:
        return np.full(n, float(init[0]))
    if init.shape != (n,):
        raise ValueError(f"init vector has length {init.size}, expected {n}")
    return init.copy()


def next_thresholds(
    policy: ThresholdPolicy, theta_hat: float, n: int, rng: np.random.Generator
) -> np.ndarray:
    """Next round's thresholds: theta_hat plus i.i.d. N(0, sigma_tau^2) dither."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return theta_hat + policy.sigma_tau * rng.standard_normal(n)


def default_dither_std(noise: NoiseModel) -> float:
    """Dither scale matched to the average per-sensor noise power, sqrt(trace / N)."""
    return float(np.sqrt(noise.total_power / noise.dim))
