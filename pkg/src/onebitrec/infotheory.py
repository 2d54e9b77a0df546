"""Mutual information between a random scalar parameter and one 1-bit sample.

The bit is Bernoulli given the parameter, with success probability equal to
the Gaussian tail beyond the threshold. Mutual information is the marginal
bit entropy minus the prior-averaged conditional entropy; both averages are
taken by composite Simpson quadrature over the (truncated) prior support.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson
from scipy.special import erfc, xlogy

__all__ = [
    "PriorSpec",
    "MICurve",
    "p_theta",
    "binary_entropy",
    "mutual_information",
    "mi_curve",
]

DEFAULT_NODES = 4001
GAUSSIAN_SUPPORT_SIGMAS = 8.0
_LN2 = float(np.log(2.0))


@dataclass(frozen=True)
class PriorSpec:
    """Distribution of the unknown parameter: uniform on [low, high] or Gaussian."""

    kind: str
    low: float = 0.0
    high: float = 0.0
    mean: float = 0.0
    std: float = 0.0

    def __post_init__(self) -> None:
        if self.kind == "uniform":
            if not self.low < self.high:
                raise ValueError(f"uniform prior needs low < high, got [{self.low}, {self.high}]")
        elif self.kind == "gaussian":
            if self.std <= 0.0:
                raise ValueError(f"gaussian prior needs std > 0, got {self.std}")
        else:
            raise ValueError(f"unknown prior kind {self.kind!r}")

    @classmethod
    def uniform(cls, low: float, high: float) -> "PriorSpec":
        return cls(kind="uniform", low=low, high=high)

    @classmethod
    def gaussian(cls, mean: float, std: float) -> "PriorSpec":
        return cls(kind="gaussian", mean=mean, std=std)

    def support(self) -> tuple[float, float]:
        """Integration bounds: exact for uniform, mean +/- 8 std for Gaussian."""
        if self.kind == "uniform":
            return self.low, self.high
        half = GAUSSIAN_SUPPORT_SIGMAS * self.std
        return self.mean - half, self.mean + half

    def pdf(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=np.float64)
        if self.kind == "uniform":
            inside = (x >= self.low) & (x <= self.high)
            return np.where(inside, 1.0 / (self.high - self.low), 0.0)
        u = (x - self.mean) / self.std
        return np.exp(-0.5 * u * u) / (self.std * np.sqrt(2.0 * np.pi))


@dataclass(frozen=True)
class MICurve:
    """Mutual information in bits evaluated over an ascending noise-std grid."""

    sigma_values: np.ndarray
    mi_bits: np.ndarray

    def __post_init__(self) -> None:
        if self.sigma_values.shape != self.mi_bits.shape:
            raise ValueError("sigma_values and mi_bits must have identical length")
        if np.any(self.mi_bits < -1e-9) or np.any(self.mi_bits > 1.0 + 1e-9):
            raise ValueError("mutual information of one bit must lie in [0, 1]")


def p_theta(theta, tau, sigma_v: float):
    """P(bit = +1 | parameter) = Q((tau - theta) / sigma_v), Q the Gaussian tail.

    Accepts scalars or arrays (broadcast); returns a float for scalar input.
    """
    if sigma_v <= 0.0:
        raise ValueError(f"sigma_v must be > 0, got {sigma_v}")
    x = (np.asarray(tau, dtype=np.float64) - np.asarray(theta, dtype=np.float64)) / sigma_v
    q = 0.5 * erfc(x / np.sqrt(2.0))
    return float(q) if np.isscalar(theta) and np.isscalar(tau) else q


def binary_entropy(p):
    """Entropy in bits of a Bernoulli(p) variable, with 0 log 0 := 0."""
    arr = np.asarray(p, dtype=np.float64)
    if np.any(arr < 0.0) or np.any(arr > 1.0):
        raise ValueError("p must lie in [0, 1]")
    h = -(xlogy(arr, arr) + xlogy(1.0 - arr, 1.0 - arr)) / _LN2
    return float(h) if np.isscalar(p) else h


def mutual_information(
    prior: PriorSpec, tau: float, sigma_v: float, nodes: int = DEFAULT_NODES
) -> float:
    """Mutual information (bits) between the parameter and one quantized bit.

    Computes P(bit = +1) and the prior-averaged conditional entropy by
    composite Simpson quadrature with ``nodes`` points on the truncated prior
    support, then returns the entropy difference clamped to [0, 1].
    """
    if sigma_v <= 0.0:
        raise ValueError(f"sigma_v must be > 0, got {sigma_v}")
    if nodes < 3:
        raise ValueError(f"quadrature needs at least 3 nodes, got {nodes}")

    a, b = prior.support()
    grid = np.linspace(a, b, nodes)
    weights = prior.pdf(grid)
    p_grid = p_theta(grid, tau, sigma_v)

    p_one = float(simpson(weights * p_grid, x=grid))
    p_one = min(max(p_one, 0.0), 1.0)
    h_conditional = float(simpson(weights * binary_entropy(p_grid), x=grid))

    mi = binary_entropy(p_one) - h_conditional
    return min(max(mi, 0.0), 1.0)


def mi_curve(
    prior: PriorSpec, tau: float, sigma_grid: np.ndarray, nodes: int = DEFAULT_NODES
) -> MICurve:
    """Evaluate the mutual information over an ascending grid of noise stds."""
    sigma_grid = np.asarray(sigma_grid, dtype=np.float64)
    if sigma_grid.ndim != 1 or sigma_grid.size == 0:
        raise ValueError("sigma_grid must be a non-empty 1-d array")
    if np.any(sigma_grid <= 0.0):
        raise ValueError("sigma_grid values must be positive")
    if np.any(np.diff(sigma_grid) <= 0.0):
        raise ValueError("sigma_grid must be strictly ascending")
    mi = np.array([mutual_information(prior, tau, s, nodes=nodes) for s in sigma_grid])
    return MICurve(sigma_values=sigma_grid, mi_bits=mi)
