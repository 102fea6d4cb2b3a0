"""Closed-form information-purity tradeoff curves and extremal spectra.

Two exact curves over purity P in [1/n, 1]:

* ``min_informational_power`` -- the smallest informational power any
  measurement with element purity >= P can have; attained by the
  depolarized uniformly-distributed rank-one POVM.
* ``max_accessible_information`` -- the largest accessible information
  any ensemble with state purity <= P can carry; attained by commuting
  states with at most two distinct non-null eigenvalues.

The supporting extremizers (maximum subentropy at fixed purity, extremal
Renyi entropies at fixed purity) and the explicit optimal structures are
exposed alongside, plus an independent antiderivative-based evaluation of
the first curve used for cross-checking.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .entropy import subentropy_depolarized, xlnx
from .errors import (
    AlphaOutOfRangeError,
    CountTooSmallError,
    EpsilonOutOfRangeError,
    InvalidKError,
    NoFeasibleCandidateError,
    PurityOutOfRangeError,
    ValidationError,
)
from .montecarlo import HaarSampler
from .operators import DensityOperator, Ensemble, HermitianOperator, Povm, eig_hermitian


def harmonic_tail(k: int) -> float:
    """Partial harmonic sum 1/2 + 1/3 + ... + 1/k (zero for k = 1)."""
    if not isinstance(k, (int, np.integer)) or k < 1:
        raise InvalidKError(f"k={k!r} must be an integer >= 1")
    return sum(1.0 / j for j in range(2, k + 1))


def _check_dim(n: int) -> int:
    if not isinstance(n, (int, np.integer)) or n < 2:
        raise ValidationError(f"dimension n={n!r} must be an integer >= 2")
    return int(n)


def _check_purity(n: int, purity: float) -> float:
    if not (1.0 / n - 1e-12 <= purity <= 1.0 + 1e-12):
        raise PurityOutOfRangeError(
            f"purity {purity!r} outside [1/{n}, 1]"
        )
    return min(max(purity, 1.0 / n), 1.0)


def epsilon_for_purity(n: int, purity: float) -> float:
    """Depolarization strength whose depolarized pure state has the given
    purity: eps = sqrt((n P - 1)/(n - 1))."""
    purity = _check_purity(_check_dim(n), purity)
    return math.sqrt(max(n * purity - 1.0, 0.0) / (n - 1))


def purity_for_epsilon(n: int, epsilon: float) -> float:
    """Purity ((n-1) eps^2 + 1)/n of a depolarized pure state."""
    return ((n - 1) * epsilon**2 + 1.0) / n


@dataclass(frozen=True)
class TradeoffPoint:
    """One sample of a tradeoff curve: value in nats at purity P."""

    n: int
    purity: float
    value: float
    source: str  # "min_power" or "max_access"
    params: dict = field(default_factory=dict)


@dataclass(frozen=True)
class SubentropyMaxSolution:
    """Extremal state of the subentropy maximization at fixed purity."""

    n: int
    purity: float
    epsilon: float
    value: float


@dataclass(frozen=True)
class ExtremalSpectrumSolution:
    """Two-level spectrum extremizing a Renyi entropy at fixed purity."""

    n: int
    purity: float
    alpha: float
    kind: str  # "min" or "max"
    n_a: int
    n_b: int
    branch: str  # "+" or "-"
    a: float
    b: float
    value: float

    def spectrum(self) -> np.ndarray:
        """The padded eigenvalue vector (a * n_a, b * n_b, 0, ...)."""
        v = np.zeros(self.n)
        v[: self.n_a] = self.a
        v[self.n_a : self.n_a + self.n_b] = self.b
        return np.sort(v)[::-1]


def min_informational_power(n: int, purity: float) -> TradeoffPoint:
    """Minimum informational power over POVMs with element purity >= P.

    Equals ln n - harmonic_tail(n) - Q_dep(n, eps(P)) with Q_dep the
    closed-form depolarized subentropy; zero at P = 1/n and
    ln n - harmonic_tail(n) at P = 1.
    """
    n = _check_dim(n)
    purity = _check_purity(n, purity)
    eps = epsilon_for_purity(n, purity)
    a = (1.0 - eps) / n
    b = eps + a
    value = float(math.log(n) - harmonic_tail(n) - subentropy_depolarized(n, eps))
    if -1e-12 < value < 0.0:
        value = 0.0
    return TradeoffPoint(
        n=n,
        purity=purity,
        value=value,
        source="min_power",
        params={"epsilon": eps, "a": a, "b": b},
    )


def _two_level_params(n: int, purity: float) -> tuple[int, int, float, float]:
    # m = floor(1/P), nudged so exact grid points P = 1/k resolve to m = k
    m = int(math.floor(1.0 / purity + 1e-12))
    m = min(max(m, 1), n)
    alpha = m + 1
    r = max(purity * alpha - 1.0, 0.0)
    a = (1.0 + math.sqrt(r / m)) / alpha
    b = max((1.0 - math.sqrt(m * r)) / alpha, 0.0)
    return m, alpha, a, b


def max_accessible_information(n: int, purity: float) -> TradeoffPoint:
    """Maximum accessible information over ensembles with state purity <= P.

    Closed form ln n + m a ln a + b ln b with m = floor(1/P),
    a = (1 + sqrt((P(m+1) - 1)/m))/(m+1), b = (1 - sqrt(m(P(m+1) - 1)))/(m+1).
    Equals ln n at P = 1 and zero at P = 1/n; continuous in P with a
    derivative kink at every P = 1/k.
    """
    n = _check_dim(n)
    purity = _check_purity(n, purity)
    m, alpha, a, b = _two_level_params(n, purity)
    value = math.log(n) + m * xlnx(a) + xlnx(b)
    if -1e-12 < value < 0.0:
        value = 0.0
    return TradeoffPoint(
        n=n,
        purity=purity,
        value=value,
        source="max_access",
        params={"m": m, "alpha": alpha, "a": a, "b": b},
    )


def max_subentropy_at_purity(n: int, purity: float) -> SubentropyMaxSolution:
    """Maximum of the subentropy over states of fixed purity.

    Attained by a depolarized pure state with eps = sqrt((nP - 1)/(n - 1));
    the value dominates the subentropy of every spectrum at that purity.
    """
    n = _check_dim(n)
    purity = _check_purity(n, purity)
    eps = epsilon_for_purity(n, purity)
    return SubentropyMaxSolution(
        n=n, purity=purity, epsilon=eps, value=subentropy_depolarized(n, eps)
    )


def extremal_renyi_at_purity(
    n: int, purity: float, alpha: float, kind: str
) -> ExtremalSpectrumSolution:
    """Extremal Renyi entropy H_alpha over the simplex slice of fixed purity.

    Enumerates every feasible two-level assignment: multiplicities
    n_a, n_b >= 1 with n_a + n_b <= n and both sign branches of

        a_pm = (1 pm sqrt(n_b/n_a (P s - 1)))/s,
        b_pm = (1 mp sqrt(n_a/n_b (P s - 1)))/s,   s = n_a + n_b,

    discarding candidates with P s < 1 or negative eigenvalues, and
    returns the arg-extremum.  Ties (e.g. alpha = 2, where every candidate
    evaluates to -ln P) resolve to the smallest s, then the "+" branch.
    """
    n = _check_dim(n)
    purity = _check_purity(n, purity)
    if alpha <= 0.0:
        raise AlphaOutOfRangeError(f"alpha {alpha!r} must be > 0")
    if kind not in ("min", "max"):
        raise ValidationError(f"kind {kind!r} must be 'min' or 'max'")

    shannon_limit = abs(alpha - 1.0) < 1e-6
    candidates = []
    for n_a in range(1, n):
        for n_b in range(1, n - n_a + 1):
            s = n_a + n_b
            r = purity * s - 1.0
            if r < -1e-12:
                continue
            r = max(r, 0.0)
            for sign, branch in ((1.0, "+"), (-1.0, "-")):
                a = (1.0 + sign * math.sqrt(n_b / n_a * r)) / s
                b = (1.0 - sign * math.sqrt(n_a / n_b * r)) / s
                if a < -1e-12 or b < -1e-12:
                    continue
                a = max(a, 0.0)
                b = max(b, 0.0)
                if shannon_limit:
                    value = -(n_a * xlnx(a) + n_b * xlnx(b))
                else:
                    value = math.log(n_a * a**alpha + n_b * b**alpha) / (1.0 - alpha)
                candidates.append((value, s, 0 if branch == "+" else 1, n_a, n_b, branch, a, b))
    if not candidates:
        raise NoFeasibleCandidateError(
            f"no feasible two-level spectrum at n={n}, purity={purity}"
        )

    best = None
    for cand in candidates:
        if best is None:
            best = cand
            continue
        better = cand[0] < best[0] - 1e-12 if kind == "min" else cand[0] > best[0] + 1e-12
        tied = abs(cand[0] - best[0]) <= 1e-12
        if better or (tied and (cand[1], cand[2]) < (best[1], best[2])):
            best = cand
    value, _, _, n_a, n_b, branch, a, b = best
    return ExtremalSpectrumSolution(
        n=n,
        purity=purity,
        alpha=alpha,
        kind=kind,
        n_a=n_a,
        n_b=n_b,
        branch=branch,
        a=a,
        b=b,
        value=value,
    )


def optimal_commuting_ensemble(n: int, purity: float) -> Ensemble:
    """The commuting ensemble attaining ``max_accessible_information``.

    n equiprobable diagonal states, cyclic shifts of the eigenvalue vector
    (a repeated m = floor(1/P) times, b once, zeros filling up to n).  The
    ensemble averages to the maximally mixed state, every member has
    purity P, and its Holevo bound is attained (commuting states).
    """
    n = _check_dim(n)
    purity = _check_purity(n, purity)
    m, _, a, b = _two_level_params(n, purity)
    vec = np.zeros(n)
    vec[: min(m, n)] = a
    if m < n:
        vec[m] = b
    vec /= vec.sum()
    states = [DensityOperator(np.diag(np.roll(vec, x)).astype(complex)) for x in range(n)]
    return Ensemble([(1.0 / n, s) for s in states])


def depolarized_scrooge_povm(
    n: int, epsilon: float, count: int, seed: int
) -> Povm:
    """Discrete surrogate of the depolarized uniformly-distributed POVM.

    Samples ``count`` Haar pure states, forms elements
    (n/count) * D_eps(|phi><phi|), then symmetrizes by S^(-1/2) . S^(-1/2)
    with S the element sum, so completeness holds exactly.  As count grows
    the informational power approaches ``min_informational_power`` at the
    matching purity.
    """
    n = _check_dim(n)
    if count < n * n:
        raise CountTooSmallError(f"count {count} < n^2 = {n * n}")
    lo = -1.0 / (n - 1)
    if not (lo - 1e-12 <= epsilon <= 1.0 + 1e-12):
        raise EpsilonOutOfRangeError(f"epsilon {epsilon!r} outside [{lo}, 1]")
    epsilon = min(max(epsilon, lo), 1.0)

    phis = HaarSampler(n, seed).states(count)
    projectors = np.einsum("yi,yj->yij", phis, phis.conj())
    elements = (n / count) * (
        epsilon * projectors
        + (1.0 - epsilon) / n * np.eye(n)[None, :, :]
    )
    s = elements.sum(axis=0)
    spec, basis = eig_hermitian(HermitianOperator(s))
    inv_sqrt = (basis * (1.0 / np.sqrt(spec.values))) @ basis.conj().T
    symmetrized = np.einsum("ab,ybc,cd->yad", inv_sqrt, elements, inv_sqrt)
    return Povm([HermitianOperator(e) for e in symmetrized])


def _eta_antiderivative(m: int, x: float) -> float:
    # m-fold antiderivative of eta(x) = -x ln x: -x^(m+1)/(m+1)! (ln x - S_{m+1})
    if x <= 0.0:
        return 0.0
    return -(x ** (m + 1)) / math.factorial(m + 1) * (math.log(x) - harmonic_tail(m + 1))


def min_power_haar_integral(n: int, epsilon: float) -> float:
    """Independent antiderivative-chain evaluation of the first curve.

    Computes the Haar average of eta((b-a) t + a) over the squared overlap
    t of a fixed pure state with a Haar state, using the exact iterated
    antiderivatives of eta composed with the affine map, and returns
    ln n - n * (that average).  Must coincide with
    ``min_informational_power(n, purity_for_epsilon(n, eps))``.
    """
    n = _check_dim(n)
    if not (1e-6 < epsilon <= 1.0 + 1e-12):
        raise EpsilonOutOfRangeError(
            f"epsilon {epsilon!r} outside (1e-6, 1]: affine map must be non-constant"
        )
    epsilon = min(epsilon, 1.0)
    a = (1.0 - epsilon) / n
    b = epsilon + a
    c = epsilon  # b - a, exactly

    def f_anti(m: int, x: float) -> float:
        # antiderivatives compose through the affine map g(x) = c x + a
        return _eta_antiderivative(m, c * x + a) / c**m

    integral = f_anti(n - 1, 1.0)
    for k in range(2, n + 1):
        integral -= f_anti(k - 1, 0.0) / math.factorial(n - k)
    integral *= math.factorial(n - 1)
    return math.log(n) - n * integral
