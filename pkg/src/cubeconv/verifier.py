"""Randomized and structured checks of the corner-convolution norm
inequality, its two-point form, the product lemma, and equality
witnesses.

All randomness is counter-based: trial i draws from a splitmix64 stream
keyed by mix(mix(seed) + i), so serial, chunked, and parallel runs
produce identical values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import REAL, CubeFunction, HoelderParams, exponent, lp_norm
from .transform import batch_corner_value, corner_convolution

# Both sides of a check can be ~0, so pass/fail combines a relative and
# an absolute floor.
REL_TOL = 1e-9
ABS_TOL = 1e-12

DISTRIBUTIONS = ("uniform", "exponential", "sparse")

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)


def _mix64(x: np.ndarray) -> np.ndarray:
    """splitmix64 finalizer; uint64 in, uint64 out (vectorized)."""
    z = x + _GOLDEN
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


def trial_uniforms(seed: int, trial_indices: np.ndarray, slots: int) -> np.ndarray:
    """Uniform[0,1) draws, shape (len(trial_indices), slots).

    Draw (i, j) is a pure function of (seed, i, j): slot j of the
    splitmix64 stream whose key is mix(mix(seed) + i).
    """
    with np.errstate(over="ignore"):
        keys = _mix64(_mix64(np.full(1, seed, dtype=np.uint64)) + trial_indices.astype(np.uint64))
        states = keys[:, None] + (np.arange(1, slots + 1, dtype=np.uint64) * _GOLDEN)[None, :]
        bits = _mix64(states)
    return (bits >> np.uint64(11)).astype(np.float64) * (2.0**-53)


@dataclass(frozen=True)
class TrialConfig:
    n: int
    m: int
    trials: int
    seed: int
    distribution: str = "uniform"
    density: float = 0.25  # sparse only: P(value != 0)
    signed: bool = False

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"need n >= 2, got {self.n}")
        if not 1 <= self.m <= 12:
            raise ValueError(f"verification runs need 1 <= m <= 12, got {self.m}")
        if self.trials < 1:
            raise ValueError(f"need trials >= 1, got {self.trials}")
        if self.distribution not in DISTRIBUTIONS:
            raise ValueError(f"unknown distribution {self.distribution!r}")
        if not 0.0 < self.density <= 1.0:
            raise ValueError(f"density must be in (0, 1], got {self.density}")


@dataclass(frozen=True)
class InequalityCheck:
    lhs: float
    rhs: float
    ratio: float | None
    passed: bool


def _verdict(lhs: float, rhs: float) -> InequalityCheck:
    return InequalityCheck(
        lhs=lhs,
        rhs=rhs,
        ratio=lhs / rhs if rhs > 0 else None,
        passed=lhs <= rhs * (1.0 + REL_TOL) + ABS_TOL,
    )


def check_main_inequality(fs: list[CubeFunction], params: HoelderParams) -> InequalityCheck:
    """Corner convolution against the product of p_n norms."""
    if len(fs) != params.n:
        raise ValueError(f"expected {params.n} functions, got {len(fs)}")
    if any(f.flavor != REAL for f in fs):
        raise ValueError("main inequality checks run in real flavor")
    lhs = corner_convolution(fs, method="fast")
    rhs = math.prod(lp_norm(f, params.p) for f in fs)
    return _verdict(lhs, rhs)


def check_two_point(u, v, params: HoelderParams) -> InequalityCheck:
    """One-dimensional form: sum_j u_j prod_{i != j} v_i versus the
    product of two-point p_n norms.  Signed inputs allowed."""
    u, v, p = list(u), list(v), params.p
    if len(u) != params.n or len(v) != params.n:
        raise ValueError(f"expected {params.n} values per side")
    lhs = sum(u[j] * math.prod(v[i] for i in range(params.n) if i != j) for j in range(params.n))
    rhs = math.prod((abs(a) ** p + abs(b) ** p) ** (1.0 / p) for a, b in zip(u, v))
    return _verdict(lhs, rhs)


def check_lemma_mine(x, params: HoelderParams) -> InequalityCheck:
    """(sum x_i^(1/p))^p <= prod (1 + x_i) for nonnegative x_i."""
    x = list(x)
    if any(v < 0 for v in x):
        raise ValueError("lemma check needs nonnegative inputs")
    p = params.p
    lhs = sum(v ** (1.0 / p) for v in x) ** p
    rhs = math.prod(1.0 + v for v in x)
    return _verdict(lhs, rhs)


def check_p_monotonicity(x, p_low: float, p_high: float) -> bool:
    """The map p -> (sum x_i^(1/p))^p is nondecreasing."""
    if not 1.0 <= p_low <= p_high:
        raise ValueError(f"need 1 <= p_low <= p_high, got ({p_low}, {p_high})")
    x = list(x)
    if any(v < 0 for v in x):
        raise ValueError("needs nonnegative inputs")
    low = sum(v ** (1.0 / p_low) for v in x) ** p_low
    high = sum(v ** (1.0 / p_high) for v in x) ** p_high
    return low <= high * (1.0 + REL_TOL) + ABS_TOL


def equality_witness(n: int, m: int) -> list[CubeFunction]:
    """Tensor lift of the sharp two-point configuration: each f_j is the
    coordinate-wise product of g with g(0) = 1, g(1) = (1/(n-1))^(1/p_n).
    The main inequality is tight on this input.

    Orientation matters: in each corner term exactly one function per
    coordinate is evaluated at 1, so the small value must sit at g(1)
    for the per-coordinate value ratio to hit the tight configuration.
    """
    if n < 2 or m < 1:
        raise ValueError("need n >= 2 and m >= 1")
    w = (1.0 / (n - 1)) ** (1.0 / exponent(n).p)
    vals = [w ** s.bit_count() for s in range(1 << m)]
    return [CubeFunction(m, vals, REAL)] * n


def _draw_functions(config: TrialConfig, trial_indices: np.ndarray) -> np.ndarray:
    """Function tables for a chunk of trials, shape (n, chunk, 2^m).

    Three uniform planes per trial feed value, sparsity gate, and sign,
    in that fixed slot order, so adding options never shifts draws.
    """
    size = 1 << config.m
    plane = config.n * size
    u = trial_uniforms(config.seed, trial_indices, 3 * plane)
    u = u.reshape(len(trial_indices), 3, config.n, size)
    value, gate, sign = u[:, 0], u[:, 1], u[:, 2]
    if config.distribution == "uniform":
        x = value
    else:
        x = -np.log1p(-value)
        if config.distribution == "sparse":
            x = np.where(gate < config.density, x, 0.0)
    if config.signed:
        x = np.where(sign < 0.5, x, -x)
    return np.moveaxis(x, 1, 0)


def run_trials(config: TrialConfig, chunk: int = 1024) -> dict:
    """Monte-Carlo sweep of the main inequality; returns a report dict
    with failure count and the largest lhs/rhs ratio observed."""
    p = exponent(config.n).p
    failures = 0
    max_ratio = float("-inf")
    for start in range(0, config.trials, chunk):
        idx = np.arange(start, min(start + chunk, config.trials))
        fs = _draw_functions(config, idx)
        lhs = batch_corner_value(fs, config.m)
        rhs = np.prod(np.sum(np.abs(fs) ** p, axis=-1) ** (1.0 / p), axis=0)
        failures += int(np.count_nonzero(lhs > rhs * (1.0 + REL_TOL) + ABS_TOL))
        pos = rhs > 0
        if np.any(pos):
            max_ratio = max(max_ratio, float(np.max(lhs[pos] / rhs[pos])))
    return {
        "n": config.n,
        "m": config.m,
        "trials": config.trials,
        "seed": config.seed,
        "distribution": config.distribution,
        "density": config.density,
        "signed": config.signed,
        "p": p,
        "rel_tol": REL_TOL,
        "abs_tol": ABS_TOL,
        "failures": failures,
        "max_ratio": max_ratio if max_ratio > float("-inf") else None,
    }
