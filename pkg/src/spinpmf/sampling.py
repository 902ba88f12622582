"""Sampling from a SpinPMF and moment-based Bloch-vector estimation.

Uniform variates come from SplitMix64 (Steele, Lea and Flood 2014), written
out here so the stream for a given seed is fixed by this module and not by a
library default. Output i (1-based) of a generator seeded with s is
``mix(s + i * GOLDEN)``, which makes the generator trivially vectorizable.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from spinpmf.bloch import DEFAULT_DOMAIN_TOL, BlochVector, DomainClass, classify_domain, octahedron_condition
from spinpmf.pmf import OUTCOME_ARRAY, SpinPMF

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB


def splitmix64_scalar(state: int) -> tuple[int, int]:
    """One SplitMix64 step on Python ints; returns (new_state, output)."""
    state = (state + GOLDEN) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * MIX1) & MASK64
    z = ((z ^ (z >> 27)) * MIX2) & MASK64
    return state, z ^ (z >> 31)


class SplitMix64:
    """SplitMix64 stream with block generation in numpy uint64 arithmetic."""

    def __init__(self, seed: int):
        self.state = int(seed) & MASK64

    def next_u64(self, n: int) -> np.ndarray:
        steps = np.arange(1, n + 1, dtype=np.uint64)
        with np.errstate(over="ignore"):
            z = np.uint64(self.state) + steps * np.uint64(GOLDEN)
            z = (z ^ (z >> np.uint64(30))) * np.uint64(MIX1)
            z = (z ^ (z >> np.uint64(27))) * np.uint64(MIX2)
        self.state = (self.state + n * GOLDEN) & MASK64
        return z ^ (z >> np.uint64(31))

    def uniform(self, n: int) -> np.ndarray:
        """Doubles in [0, 1) from the top 53 bits."""
        return (self.next_u64(n) >> np.uint64(11)).astype(np.float64) * 2.0**-53


@dataclass(frozen=True)
class SampleBatch:
    outcomes: np.ndarray  # (n, 3) int8 entries in {-1, +1}
    seed: int
    n: int

    def __post_init__(self):
        out = np.asarray(self.outcomes, dtype=np.int8).reshape(-1, 3)
        if not np.all(np.abs(out) == 1):
            raise ValueError("outcomes must be sign triples in {-1,+1}^3")
        if len(out) != self.n:
            raise ValueError(f"n={self.n} but {len(out)} outcomes given")
        out.setflags(write=False)
        object.__setattr__(self, "outcomes", out)

    @classmethod
    def from_outcomes(cls, outcomes, seed: int = 0) -> SampleBatch:
        out = np.asarray(outcomes, dtype=np.int8).reshape(-1, 3)
        return cls(out, seed, len(out))


@dataclass(frozen=True)
class BlochEstimate:
    p_hat: tuple[float, float, float]
    stderr: tuple[float, float, float]
    n: int


@dataclass(frozen=True)
class ClassifiedEstimate:
    estimate: BlochEstimate
    domain: DomainClass
    admissible: bool


def sample(pmf: SpinPMF, n: int, seed: int) -> SampleBatch:
    """n i.i.d. outcomes by inverse CDF over the masses in lexicographic order."""
    if n < 1:
        raise ValueError("n must be at least 1")
    cdf = np.cumsum(np.asarray(pmf.masses, dtype=float))
    cdf[-1] = 1.0
    u = SplitMix64(seed).uniform(n)
    # side="right": zero-mass outcomes own an empty interval and are never drawn
    idx = np.searchsorted(cdf, u, side="right")
    return SampleBatch(OUTCOME_ARRAY[idx].astype(np.int8), int(seed), n)


def estimate_bloch(batch: SampleBatch) -> BlochEstimate:
    """p_hat_k = mean of x_k, stderr_k = sqrt((1 - p_hat_k^2) / n)."""
    if batch.n < 2:
        raise ValueError("need at least two samples to estimate")
    p_hat = batch.outcomes.astype(np.float64).mean(axis=0)
    stderr = np.sqrt(np.clip(1 - p_hat**2, 0, None) / batch.n)
    return BlochEstimate(tuple(float(v) for v in p_hat), tuple(float(v) for v in stderr), batch.n)


def estimate_and_classify(batch: SampleBatch, tol: float = DEFAULT_DOMAIN_TOL) -> ClassifiedEstimate:
    est = estimate_bloch(batch)
    p = BlochVector(*est.p_hat)
    return ClassifiedEstimate(est, classify_domain(p, tol), octahedron_condition(p))


def empirical_cf(batch: SampleBatch, t) -> np.ndarray:
    """(1/n) sum_i exp(i t.x_i) at one or more probe points (..., 3)."""
    t = np.asarray(t, dtype=float)
    # group by outcome: the batch only takes eight distinct values
    idx = (batch.outcomes > 0).astype(int) @ np.array([4, 2, 1])
    freq = np.bincount(idx, minlength=8) / batch.n
    return np.exp(1j * (t @ OUTCOME_ARRAY.T)) @ freq
