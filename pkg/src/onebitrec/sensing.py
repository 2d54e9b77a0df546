"""Ground-truth signal generation, noisy observation, and the 1-bit quantizer."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .noisemodel import NoiseModel, sample

__all__ = [
    "SignalGenerator",
    "QuantizedFrame",
    "constant",
    "sinusoid",
    "theta_at",
    "observe",
    "quantize",
]


@dataclass(frozen=True)
class SignalGenerator:
    """Deterministic scalar trajectory, evaluated as a pure function of the step index.

    ``constant`` holds ``constant_value`` forever; ``sinusoid`` evaluates
    amplitude * sin(2 pi * frequency_hz * k * dt) at step k, with dt the sample
    period in seconds.
    """

    kind: str
    constant_value: float = 0.0
    amplitude: float = 0.0
    frequency_hz: float = 0.0
    dt: float = 1e-3

    def __post_init__(self) -> None:
        if self.kind not in ("constant", "sinusoid"):
            raise ValueError(f"unknown signal kind {self.kind!r}")
        if self.kind == "sinusoid":
            if self.dt <= 0.0:
                raise ValueError(f"dt must be > 0, got {self.dt}")
            if self.frequency_hz < 0.0:
                raise ValueError(f"frequency_hz must be >= 0, got {self.frequency_hz}")


def constant(value: float) -> SignalGenerator:
    return SignalGenerator(kind="constant", constant_value=value)


def sinusoid(amplitude: float, frequency_hz: float, dt: float = 1e-3) -> SignalGenerator:
    return SignalGenerator(kind="sinusoid", amplitude=amplitude, frequency_hz=frequency_hz, dt=dt)


def theta_at(gen: SignalGenerator, k: int) -> float:
    """Signal value at step index k."""
    if k < 0:
        raise ValueError(f"step index must be >= 0, got {k}")
    if gen.kind == "constant":
        return gen.constant_value
    return gen.amplitude * math.sin(2.0 * math.pi * gen.frequency_hz * k * gen.dt)


def observe(theta: float, noise: NoiseModel, rng: np.random.Generator) -> np.ndarray:
    """One round of raw sensor readings: theta at every sensor plus a joint noise draw."""
    return theta + sample(noise, rng)


@dataclass(frozen=True)
class QuantizedFrame:
    """One round of 1-bit measurements: signs r in {-1, +1} against thresholds tau."""

    k: int
    r: np.ndarray
    tau: np.ndarray

    def __post_init__(self) -> None:
        if self.k < 0:
            raise ValueError(f"time index must be >= 0, got {self.k}")
        if self.r.shape != self.tau.shape or self.r.ndim != 1:
            raise ValueError("r and tau must be 1-d arrays of identical length")
        if not np.all((self.r == 1) | (self.r == -1)):
            raise ValueError("every entry of r must be exactly -1 or +1")

    @property
    def dim(self) -> int:
        return self.r.shape[0]


def quantize(z: np.ndarray, tau: np.ndarray, k: int = 0) -> QuantizedFrame:
    """Per-sensor sign comparison r_i = sign(z_i - tau_i), with sign(0) := +1."""
    z = np.asarray(z, dtype=np.float64)
    tau = np.asarray(tau, dtype=np.float64)
    if z.shape != tau.shape:
        raise ValueError(f"length mismatch: z has shape {z.shape}, tau has shape {tau.shape}")
    r = np.where(z >= tau, 1, -1).astype(np.int8)
    return QuantizedFrame(k=k, r=r, tau=tau)
