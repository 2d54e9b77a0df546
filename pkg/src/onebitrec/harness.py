"""End-to-end simulation: observe, quantize, recover, rethreshold, aggregate NMSE.

One trial walks the adaptive loop over a fixed horizon; a Monte Carlo run
repeats it over independent seeded trials and averages the normalized squared
tracking error. Sweeps rebuild the noise model per grid point.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Sequence, Union

import numpy as np

from .noisemodel import NoiseModel, colored, white
from .recovery import RecoveryCache, build_cache, solve_cqp
from .sensing import SignalGenerator, observe, quantize, theta_at
from .threshold import ThresholdPolicy, initial_thresholds, next_thresholds

__all__ = [
    "WhiteNoise",
    "ColoredNoise",
    "SimConfig",
    "TrialResult",
    "SimReport",
    "run_trial",
    "run_monte_carlo",
    "sweep_nodes",
    "sweep_noise_power",
]


@dataclass(frozen=True)
class WhiteNoise:
    """Spec for independent per-sensor noise; rebuilt at any sensor count."""

    sigma_v: float

    def __post_init__(self) -> None:
        if self.sigma_v <= 0.0:
            raise ValueError(f"sigma_v must be > 0, got {self.sigma_v}")

    def build(self, n: int) -> NoiseModel:
        return white(n, self.sigma_v)


@dataclass(frozen=True)
class ColoredNoise:
    """Spec for exponentially correlated noise; total power is preserved across N."""

    p_tot: float
    rho: float = 0.5

    def __post_init__(self) -> None:
        if self.p_tot <= 0.0:
            raise ValueError(f"p_tot must be > 0, got {self.p_tot}")
        if not 0.0 <= self.rho < 1.0:
            raise ValueError(f"rho must be in [0, 1), got {self.rho}")

    def build(self, n: int) -> NoiseModel:
        return colored(n, self.p_tot, self.rho)


NoiseSpec = Union[WhiteNoise, ColoredNoise]


@dataclass(frozen=True)
class SimConfig:
    """Everything a Monte Carlo run needs; (config, seed) determines every output byte."""

    n_sensors: int
    noise: NoiseSpec
    signal: SignalGenerator
    policy: ThresholdPolicy
    horizon: int
    burn_in: int = 10
    trials: int = 100
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n_sensors < 1:
            raise ValueError(f"n_sensors must be >= 1, got {self.n_sensors}")
        if self.horizon < 1:
            raise ValueError(f"horizon must be >= 1, got {self.horizon}")
        if not 0 <= self.burn_in < self.horizon:
            raise ValueError(
                f"burn_in must satisfy 0 <= burn_in < horizon, got {self.burn_in}"
            )
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if self.seed < 0:
            raise ValueError(f"seed must be >= 0, got {self.seed}")


@dataclass(frozen=True)
class TrialResult:
    """Per-step trajectory of one trial plus its NMSE over the post-burn-in window.

    ``per_step`` rows are (k, theta, theta_hat, objective, fast_path). When the
    reference signal is identically zero after burn-in, ``nmse`` holds the raw
    squared error and ``zero_norm`` flags the missing normalization.
    """

    per_step: list[tuple[int, float, float, float, bool]]
    nmse: float
    zero_norm: bool


@dataclass(frozen=True)
class SimReport:
    """Aggregate of a Monte Carlo run: one representative trajectory plus NMSE stats."""

    per_step: list[tuple[int, float, float, float, bool]]
    nmse: float
    nmse_per_trial: np.ndarray
    zero_norm_flags: np.ndarray


def _run_trial(
    config: SimConfig,
    noise: NoiseModel,
    cache: RecoveryCache,
    rng: np.random.Generator,
) -> TrialResult:
    n = config.n_sensors
    tau = initial_thresholds(config.policy, n)
    rows: list[tuple[int, float, float, float, bool]] = []
    thetas = np.empty(config.horizon)
    estimates = np.empty(config.horizon)

    for k in range(config.horizon):
        theta = theta_at(config.signal, k)
        z = observe(theta, noise, rng)
        frame = quantize(z, tau, k)
        result = solve_cqp(cache, frame)
        rows.append((k, theta, result.theta_hat, result.objective, result.fast_path))
        thetas[k] = theta
        estimates[k] = result.theta_hat
        tau = next_thresholds(config.policy, result.theta_hat, n, rng)

    x = thetas[config.burn_in :]
    x_hat = estimates[config.burn_in :]
    err = float(np.sum((x - x_hat) ** 2))
    denom = float(np.sum(x**2))
    zero_norm = denom == 0.0
    nmse = err if zero_norm else err / denom
    return TrialResult(per_step=rows, nmse=nmse, zero_norm=zero_norm)


def run_trial(config: SimConfig, trial_seed) -> TrialResult:
    """Run one adaptive-loop trial with its own random stream."""
    noise = config.noise.build(config.n_sensors)
    cache = build_cache(noise)
    rng = np.random.default_rng(trial_seed)
    return _run_trial(config, noise, cache, rng)


def run_monte_carlo(config: SimConfig) -> SimReport:
    """Average NMSE over independent trials with seeds split from config.seed.

    Trial streams come from ``SeedSequence(seed).spawn(trials)``, so they are
    non-overlapping and the whole report is reproducible bit for bit. The
    noise model and recovery cache are shared read-only across trials.
    """
    noise = config.noise.build(config.n_sensors)
    cache = build_cache(noise)
    children = np.random.SeedSequence(config.seed).spawn(config.trials)

    results = [
        _run_trial(config, noise, cache, np.random.default_rng(child))
        for child in children
    ]
    nmse_per_trial = np.array([r.nmse for r in results])
    zero_norm_flags = np.array([r.zero_norm for r in results])
    return SimReport(
        per_step=results[0].per_step,
        nmse=float(nmse_per_trial.mean()),
        nmse_per_trial=nmse_per_trial,
        zero_norm_flags=zero_norm_flags,
    )


def _validate_grid(values: Sequence, what: str) -> None:
    if len(values) == 0:
        raise ValueError(f"{what} must be non-empty")
    arr = np.asarray(values, dtype=np.float64)
    if np.any(arr <= 0.0):
        raise ValueError(f"{what} entries must be positive")
    if np.any(np.diff(arr) <= 0.0):
        raise ValueError(f"{what} must be strictly ascending")


def sweep_nodes(base: SimConfig, n_list: Sequence[int]) -> list[tuple[int, SimReport]]:
    """One Monte Carlo run per sensor count, noise rebuilt per its spec.

    White noise keeps the same per-sensor std; colored noise keeps the same
    total power, redistributed over the new sensor count.
    """
    _validate_grid(n_list, "n_list")
    return [(int(n), run_monte_carlo(replace(base, n_sensors=int(n)))) for n in n_list]


def sweep_noise_power(
    base: SimConfig, p_list: Sequence[float]
) -> list[tuple[float, SimReport]]:
    """One Monte Carlo run per total noise power, colored noise rebuilt each time."""
    _validate_grid(p_list, "p_list")
    if not isinstance(base.noise, ColoredNoise):
        raise ValueError("sweep_noise_power requires a colored noise config")
    return [
        (float(p), run_monte_carlo(replace(base, noise=ColoredNoise(p_tot=float(p), rho=base.noise.rho))))
        for p in p_list
    ]
