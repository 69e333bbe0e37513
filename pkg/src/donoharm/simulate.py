"""Seeded Monte Carlo oracle for the exact evaluators.

Independent approximation of the closed forms: it samples the generative
story directly rather than reusing the exact algebra.  Per-worker streams
are spawned from the master seed with numpy's SeedSequence, and results are
combined in fixed stream order, so a run is bit-reproducible for a given
(seed, replications, parallelism, inner_samples) regardless of scheduling.

This is the one module where floats are at home.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .engine import DEFAULT_ASYMMETRY, DEFAULT_UTILITY, asymmetric_relative_utility
from .model import (
    AsymmetricUtilitySpec,
    ModelError,
    OutcomeUtility,
    PopulationModel,
    StrataDistribution,
    validate_population,
)


@dataclass(frozen=True)
class SimulationConfig:
    replications: int = 1_000_000
    seed: int = 0
    parallelism: int = 1
    inner_samples: int = 1024  # per-arm draws used to collapse within-unit noise

    def __post_init__(self) -> None:
        if self.replications < 1:
            raise ModelError("replications must be >= 1")
        if self.parallelism < 1:
            raise ModelError("parallelism must be >= 1")
        if self.inner_samples < 1:
            raise ModelError("inner_samples must be >= 1")


@dataclass(frozen=True)
class SimulationEstimate:
    mean: float
    standard_error: float
    replications: int
    exact_target: Fraction | None = None


def _streams(cfg: SimulationConfig) -> list[np.random.Generator]:
    root = np.random.SeedSequence(cfg.seed)
    return [np.random.default_rng(s) for s in root.spawn(cfg.parallelism)]


def _stream_sizes(n: int, k: int) -> list[int]:
    base, extra = divmod(n, k)
    return [base + (1 if i < extra else 0) for i in range(k)]


def _estimate(values: np.ndarray, exact_target: Fraction | None) -> SimulationEstimate:
    n = values.size
    mean = float(values.mean())
    se = float(values.std(ddof=1) / math.sqrt(n)) if n > 1 else 0.0
    return SimulationEstimate(
        mean=mean, standard_error=se, replications=n, exact_target=exact_target
    )


def simulate_deterministic(
    d: StrataDistribution,
    u: OutcomeUtility = DEFAULT_UTILITY,
    spec: AsymmetricUtilitySpec = DEFAULT_ASYMMETRY,
    cfg: SimulationConfig = SimulationConfig(),
    exact_target: Fraction | None = None,
) -> SimulationEstimate:
    """Draw a joint class per replication and apply the asymmetric rule to it."""
    # Per-stratum relative utilities, in the distribution's canonical order.
    values = np.array(
        [
            float(asymmetric_relative_utility(u.of(y0), u.of(y1), spec))
            for (y0, y1), _ in d.items()
        ]
    )
    cdf = np.cumsum([float(mass) for _, mass in d.items()])
    cdf[-1] = 1.0
    chunks = []
    for rng, size in zip(_streams(cfg), _stream_sizes(cfg.replications, cfg.parallelism)):
        if size == 0:
            continue
        idx = np.searchsorted(cdf, rng.random(size), side="right")
        chunks.append(values[idx])
    return _estimate(np.concatenate(chunks), exact_target)


def simulate_population(
    m: PopulationModel,
    u: OutcomeUtility = DEFAULT_UTILITY,
    spec: AsymmetricUtilitySpec = DEFAULT_ASYMMETRY,
    cfg: SimulationConfig = SimulationConfig(),
    exact_target: Fraction | None = None,
) -> SimulationEstimate:
    """Nested two-level simulation of the population evaluator.

    Outer level draws a unit type per replication; inner level draws
    inner_samples outcomes per arm to estimate the arm means, then applies
    the asymmetric rule to those means.  Applying a kinked rule to inner
    means is biased for finite inner_samples when the arms are close; the
    bias shrinks as inner_samples grows (see tests for the exact finite-K
    expectation oracle).
    """
    violations = validate_population(m)
    if violations:
        raise ModelError("invalid population: " + "; ".join(violations))
    units = m.unit_types
    wcdf = np.cumsum([float(t.weight) for t in units])
    wcdf[-1] = 1.0
    gain = float(spec.gain_weight)
    loss = float(spec.loss_weight)
    tie = float(spec.tie_value)
    span = float(u.u1 - u.u0)
    K = cfg.inner_samples

    chunks = []
    for rng, size in zip(_streams(cfg), _stream_sizes(cfg.replications, cfg.parallelism)):
        if size == 0:
            continue
        unit_idx = np.searchsorted(wcdf, rng.random(size), side="right")
        reps = np.empty(size)
        for i, t in enumerate(units):
            mask = unit_idx == i
            count = int(mask.sum())
            # Mean of K Bernoulli draws, sampled as a binomial for speed.
            m0 = rng.binomial(K, float(t.arm0.survival_prob), count) / K
            m1 = rng.binomial(K, float(t.arm1.survival_prob), count) / K
            diff = span * (m1 - m0)
            reps[mask] = np.where(diff == 0.0, tie, np.where(diff > 0, gain * diff, loss * diff))
        chunks.append(reps)
    return _estimate(np.concatenate(chunks), exact_target)
