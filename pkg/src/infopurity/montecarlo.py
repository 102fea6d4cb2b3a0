"""Haar-measure sampling and statistical estimation.

Determinism contract: a state drawn at a given (seed, stream_id, draw
index) is bit-identical across runs, batch sizes and worker counts.
Streams are counter-based (Philox) keyed by (seed, stream_id); estimates
shard the sample budget over consecutive stream ids and combine the
per-shard summaries in a fixed-shape pairwise tree, so the reduction is
independent of scheduling.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import EpsilonOutOfRangeError, ValidationError

# samples per shard; part of the fixed stream layout
SHARD_SIZE = 1 << 14


class HaarSampler:
    """Reproducible Haar-distributed pure states of a fixed dimension.

    Complex standard Gaussians are generated by an explicit Box-Muller
    transform of counter-based uniforms (two uniforms per complex entry),
    then normalized.  Each drawn state consumes exactly 2 * dim uniforms,
    so the draw index alone determines the output bits.
    """

    def __init__(self, dim: int, seed: int, stream_id: int = 0):
        if dim < 1:
            raise ValidationError(f"dimension {dim!r} must be >= 1")
        self.dim = int(dim)
        self.seed = int(seed)
        self.stream_id = int(stream_id)
        key = np.array([self.seed, self.stream_id], dtype=np.uint64)
        self._gen = np.random.Generator(np.random.Philox(key=key))
        self._drawn = 0

    def states(self, count: int) -> np.ndarray:
        """Draw ``count`` unit-norm state vectors, shape (count, dim)."""
        if count < 1:
            raise ValidationError(f"count {count!r} must be >= 1")
        u = self._gen.random((count, 2 * self.dim))
        radius = np.sqrt(-2.0 * np.log1p(-u[:, 0::2]))  # 1 - u in (0, 1]
        angle = 2.0 * np.pi * u[:, 1::2]
        z = radius * (np.cos(angle) + 1j * np.sin(angle))
        norms = np.sqrt((np.abs(z) ** 2).sum(axis=1, keepdims=True))
        self._drawn += count
        return z / norms

    def state(self) -> np.ndarray:
        """Draw a single unit-norm state vector."""
        return self.states(1)[0]

    def __repr__(self) -> str:
        return (
            f"HaarSampler(dim={self.dim}, seed={self.seed}, "
            f"stream_id={self.stream_id})"
        )


@dataclass(frozen=True)
class McEstimate:
    """Monte Carlo mean with its standard error, both in nats."""

    mean: float
    std_error: float
    samples: int


def _combine(s1, s2):
    # Chan's pairwise update of (count, mean, M2) summaries
    n1, m1, sq1 = s1
    n2, m2, sq2 = s2
    n = n1 + n2
    delta = m2 - m1
    return (n, m1 + delta * n2 / n, sq1 + sq2 + delta * delta * n1 * n2 / n)


def _tree_reduce(summaries):
    while len(summaries) > 1:
        nxt = [
            _combine(summaries[i], summaries[i + 1])
            for i in range(0, len(summaries) - 1, 2)
        ]
        if len(summaries) % 2:
            nxt.append(summaries[-1])
        summaries = nxt
    return summaries[0]


def mc_min_power_estimate(
    n: int,
    epsilon: float,
    samples: int,
    sampler: HaarSampler | None = None,
    *,
    seed: int = 0,
    threads: int = 1,
) -> McEstimate:
    """Monte Carlo estimate of the minimum-informational-power curve.

    Unbiased estimator ln n - n * mean(eta((b-a) |<e1|phi>|^2 + a)) over
    Haar states phi, with a = (1-eps)/n, b = eps + a and eta(x) = -x ln x.
    The fixed reference state e1 is justified by unitary invariance of the
    Haar measure.  ``sampler`` provides the (seed, stream_id) base; shard
    i draws from stream_id base + i.
    """
    if n < 2:
        raise ValidationError(f"dimension n={n!r} must be >= 2")
    if not (-1e-12 <= epsilon <= 1.0 + 1e-12):
        raise EpsilonOutOfRangeError(f"epsilon {epsilon!r} outside [0, 1]")
    epsilon = min(max(epsilon, 0.0), 1.0)
    if samples < 1000:
        raise ValidationError(f"samples {samples} < 1000")
    if sampler is None:
        sampler = HaarSampler(n, seed)
    if sampler.dim != n:
        raise ValidationError(f"sampler dim {sampler.dim} != n {n}")

    a = (1.0 - epsilon) / n
    c = epsilon
    shard_counts = [SHARD_SIZE] * (samples // SHARD_SIZE)
    if samples % SHARD_SIZE:
        shard_counts.append(samples % SHARD_SIZE)

    def run_shard(i: int):
        sub = HaarSampler(n, sampler.seed, sampler.stream_id + i)
        phi = sub.states(shard_counts[i])
        t = np.abs(phi[:, 0]) ** 2
        arg = c * t + a
        vals = np.where(arg > 0.0, -arg * np.log(np.maximum(arg, 1e-300)), 0.0)
        mean = float(vals.mean())
        sq = float(((vals - mean) ** 2).sum())
        return (len(vals), mean, sq)

    indices = range(len(shard_counts))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            summaries = list(pool.map(run_shard, indices))
    else:
        summaries = [run_shard(i) for i in indices]

    total, mean, sq = _tree_reduce(summaries)
    estimate = math.log(n) - n * mean
    std_error = n * math.sqrt(sq / (total - 1) / total)
    return McEstimate(mean=estimate, std_error=std_error, samples=total)


@dataclass(frozen=True)
class TightnessReport:
    """Gap between the optimized accessible information and its subentropy
    lower bound for a depolarized Haar ensemble."""

    dim: int
    epsilon: float
    ensemble_size: int
    jrw_value: float
    optimized_value: float
    gap: float
    converged: bool


def depolarized_haar_ensemble(
    n: int, epsilon: float, size: int, seed: int = 0, stream_id: int = 0
):
    """Uniform-weight ensemble of ``size`` depolarized Haar pure states."""
    from .operators import DensityOperator, Ensemble

    lo = -1.0 / (n - 1)
    if not (lo - 1e-12 <= epsilon <= 1.0 + 1e-12):
        raise EpsilonOutOfRangeError(f"epsilon {epsilon!r} outside [{lo}, 1]")
    phis = HaarSampler(n, seed, stream_id).states(size)
    eye = np.eye(n)
    states = []
    for phi in phis:
        proj = np.outer(phi, phi.conj())
        states.append(DensityOperator(epsilon * proj + (1.0 - epsilon) / n * eye))
    return Ensemble([(1.0 / size, s) for s in states])


def jrw_tightness_probe(
    n: int,
    epsilon: float,
    ensemble_size: int,
    cfg=None,
) -> TightnessReport:
    """Probe tightness of the subentropy lower bound on depolarized Haar
    ensembles: build {D_eps(phi_x)} from Haar samples, optimize the
    accessible information and report the gap to the bound.  The gap is
    expected to shrink as the ensemble grows."""
    if n not in (2, 3):
        raise ValidationError(f"probe restricted to n in (2, 3), got {n}")
    if not (-1e-12 <= epsilon <= 1.0 + 1e-12):
        raise EpsilonOutOfRangeError(f"epsilon {epsilon!r} outside [0, 1]")
    epsilon = min(max(epsilon, 0.0), 1.0)
    from .infomeasures import OptimizerConfig, accessible_info_opt, jrw_lower

    if cfg is None:
        cfg = OptimizerConfig()
    ensemble = depolarized_haar_ensemble(n, epsilon, ensemble_size, seed=cfg.seed)
    bound = jrw_lower(ensemble)
    result = accessible_info_opt(ensemble, cfg)
    return TightnessReport(
        dim=n,
        epsilon=epsilon,
        ensemble_size=ensemble_size,
        jrw_value=bound,
        optimized_value=result.value,
        gap=result.value - bound,
        converged=result.converged,
    )
