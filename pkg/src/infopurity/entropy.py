"""Classical and quantum entropy functionals.

All quantities are in nats.  The subentropy is evaluated through a
confluent Newton divided-difference table of f(x) = x^n ln(x), which
keeps degenerate and near-degenerate spectra exact instead of relying on
cancellation-prone limits of the rational eigenvalue formula.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import (
    AlphaOutOfRangeError,
    EpsilonOutOfRangeError,
    NotNormalizedError,
    ValidationError,
)
from .operators import DensityOperator, JointDistribution, Spectrum

# adjacent eigenvalues closer than this (relative) gap are merged into one
# confluent node and handled by derivatives
CLUSTER_RTOL = 1e-7

_LOG_FLOOR = 1e-300


def xlnx(x: float) -> float:
    """x * ln(x) with the 0 * ln(0) := 0 convention."""
    if x <= 0.0:
        return 0.0
    return x * math.log(x)


def _check_probability_vector(p, name: str = "p") -> np.ndarray:
    v = np.asarray(p, dtype=float).reshape(-1)
    if v.size == 0:
        raise NotNormalizedError(f"{name} is empty")
    if v.min() < -1e-12:
        raise NotNormalizedError(f"{name} has negative entry {v.min():.3e}")
    v = np.maximum(v, 0.0)
    if abs(v.sum() - 1.0) > 1e-10:
        raise NotNormalizedError(f"{name} sums to {v.sum()!r}, not 1 within 1e-10")
    return v


def shannon_entropy(p) -> float:
    """Shannon entropy -sum p_k ln(p_k) of a probability vector, in nats."""
    v = _check_probability_vector(p)
    nz = v[v > 0.0]
    return float(-(nz * np.log(nz)).sum())


def relative_entropy(p, q) -> float:
    """Kullback-Leibler divergence sum p ln(p/q), in nats.

    Returns ``math.inf`` when the support condition fails, i.e. some
    q_k = 0 carries p_k > 1e-12.
    """
    vp = _check_probability_vector(p, "p")
    vq = _check_probability_vector(q, "q")
    if vp.size != vq.size:
        raise ValidationError(f"length mismatch: {vp.size} vs {vq.size}")
    dead = vq <= 0.0
    if np.any(vp[dead] > 1e-12):
        return math.inf
    live = (vp > 0.0) & ~dead
    return float((vp[live] * (np.log(vp[live]) - np.log(vq[live]))).sum())


def mutual_information(joint) -> float:
    """Mutual information of a joint distribution, in nats.

    Zero-probability cells contribute nothing; the result is non-negative
    up to roundoff.
    """
    if isinstance(joint, JointDistribution):
        p = joint.probs
    else:
        p = JointDistribution(joint).probs
    px = p.sum(axis=1)
    py = p.sum(axis=0)
    mask = p > 0.0
    logs = np.log(p[mask]) - np.log(
        np.maximum(np.outer(px, py)[mask], _LOG_FLOOR)
    )
    return float((p[mask] * logs).sum())


def von_neumann_entropy(rho: DensityOperator) -> float:
    """Von Neumann entropy -Tr[rho ln rho] = Shannon entropy of the spectrum."""
    return shannon_entropy(rho.spectrum.clipped())


def renyi_entropy(spectrum, alpha: float) -> float:
    """Renyi entropy (1 - alpha)^-1 ln sum_k l_k^alpha of a normalized spectrum.

    The order must be positive; values of alpha within 1e-6 of 1 take the
    Shannon limit explicitly.  H_2 equals -ln(purity) identically.
    """
    if alpha <= 0.0:
        raise AlphaOutOfRangeError(f"alpha {alpha!r} must be > 0")
    v = _spectrum_values(spectrum)
    if abs(alpha - 1.0) < 1e-6:
        return shannon_entropy(v)
    return float(np.log((v[v > 0.0] ** alpha).sum()) / (1.0 - alpha))


def _spectrum_values(spectrum) -> np.ndarray:
    if isinstance(spectrum, Spectrum):
        if not spectrum.normalized:
            raise NotNormalizedError("spectrum is not flagged normalized")
        return spectrum.clipped()
    return _check_probability_vector(spectrum, "spectrum")


class ConfluentNodeSet:
    """Clustered spectrum: distinct node values with multiplicities."""

    __slots__ = ("nodes", "total")

    def __init__(self, nodes):
        nodes = tuple((float(v), int(m)) for v, m in nodes)
        if any(m < 1 for _, m in nodes):
            raise ValidationError("multiplicities must be >= 1")
        vals = [v for v, _ in nodes]
        if len(set(vals)) != len(vals):
            raise ValidationError("node values must be pairwise distinct")
        self.nodes = nodes
        self.total = sum(m for _, m in nodes)

    @classmethod
    def from_values(cls, values, rtol: float = CLUSTER_RTOL) -> "ConfluentNodeSet":
        """Cluster a value vector: adjacent (sorted) entries whose gap is
        below rtol * max(1, |value|) merge into one node at the cluster mean."""
        v = np.sort(np.asarray(values, dtype=float))
        clusters: list[list[float]] = [[float(v[0])]]
        for x in v[1:]:
            x = float(x)
            if x - clusters[-1][-1] < rtol * max(1.0, abs(x)):
                clusters[-1].append(x)
            else:
                clusters.append([x])
        return cls((sum(c) / len(c), len(c)) for c in clusters)

    def __repr__(self) -> str:
        return f"ConfluentNodeSet({self.nodes})"


def _harmonic(n: int) -> np.ndarray:
    """H_0 .. H_n as an array (H_0 = 0)."""
    h = np.zeros(n + 1)
    h[1:] = np.cumsum(1.0 / np.arange(1, n + 1))
    return h


def _xnlnx_derivative(x: float, k: int, n: int, harm: np.ndarray) -> float:
    """k-th derivative of f(t) = t^n ln(t) at t = x >= 0, for 0 <= k <= n-1.

    Closed form: n!/(n-k)! * x^(n-k) * (ln x + H_n - H_{n-k}); extends
    continuously to 0 with value 0 because n - k >= 1.
    """
    if x <= 0.0:
        return 0.0
    coef = math.perm(n, k)
    return coef * x ** (n - k) * (math.log(x) + harm[n] - harm[n - k])


def _confluent_divided_difference(nodes: ConfluentNodeSet, n: int) -> float:
    """Order-(total-1) divided difference of f(x) = x^n ln(x) on the nodes.

    Repeated nodes are resolved by f[x,...,x (m times)] = f^(m-1)(x)/(m-1)!.
    """
    harm = _harmonic(n)
    zs: list[float] = []
    cluster_id: list[int] = []
    for idx, (val, mult) in enumerate(nodes.nodes):
        zs.extend([val] * mult)
        cluster_id.extend([idx] * mult)
    m = len(zs)
    col = [_xnlnx_derivative(z, 0, n, harm) for z in zs]
    for j in range(1, m):
        nxt = []
        for i in range(m - j):
            if cluster_id[i + j] == cluster_id[i]:
                nxt.append(
                    _xnlnx_derivative(zs[i], j, n, harm) / math.factorial(j)
                )
            else:
                nxt.append((col[i + 1] - col[i]) / (zs[i + j] - zs[i]))
        col = nxt
    return col[0]


def subentropy(spectrum) -> float:
    """Subentropy Q of a normalized spectrum, in nats.

    Equals the negated order-(n-1) divided difference of x^n ln(x) at the
    eigenvalues; for non-degenerate spectra this coincides with the
    rational sum -sum_k l_k^n ln(l_k) / prod_{j!=k}(l_k - l_j).  Ranges
    over [0, ln n - harmonic_tail(n)], the maximum sitting at the
    maximally mixed spectrum.
    """
    v = _spectrum_values(spectrum)
    n = v.size
    if n == 1:
        return 0.0
    nodes = ConfluentNodeSet.from_values(v)
    q = -_confluent_divided_difference(nodes, n)
    if -1e-12 < q < 0.0:
        q = 0.0
    return float(q)


def _sigma_tail(harm: np.ndarray, k: int) -> float:
    # sum_{j=2}^k 1/j = H_k - 1 (zero for k = 1)
    return harm[k] - 1.0 if k >= 1 else 0.0


def _depolarized_series(n: int, epsilon: float) -> float:
    """Small-epsilon expansion of Q around the fully degenerate spectrum.

    Expands the divided difference f[a,...,a,b] of f(x) = x^n ln(x) as a
    power series in c = b - a = epsilon, using the exact derivative chain
    f^(n-1)(x) = n! x (ln x + H_n - 1), f^(n)(x) = n! (ln x + H_n) and
    f^(n+j)(x) = n! (-1)^(j-1) (j-1)! x^-j.  Converges geometrically with
    ratio ~ n * epsilon / (1 - epsilon).
    """
    a = (1.0 - epsilon) / n
    c = epsilon
    harm = _harmonic(n)
    log_a = math.log(a)
    total = n * a * (log_a + harm[n] - 1.0)  # m = 0 term
    total += c * (log_a + harm[n])  # m = 1 term
    term_base = float(math.factorial(n))
    for m in range(2, 300):
        j = m - 1
        term = (
            term_base
            * (-1.0) ** (j - 1)
            * math.factorial(j - 1)
            * a ** (-j)
            * c**m
            / math.factorial(n + m - 1)
        )
        total += term
        if abs(term) < 1e-18 * max(1.0, abs(total)):
            break
    return -total


def subentropy_depolarized(n: int, epsilon: float) -> float:
    """Closed-form subentropy of a depolarized pure state, in nats.

    The spectrum is (b, a, ..., a) with a = (1 - eps)/n and b = eps + a.
    For eps away from zero this evaluates the binomial sum

        sum_{k=2}^n C(n,k) a^k (ln a - S_k)/(b-a)^(k-1)
          - b^n (ln b - S_n)/(b-a)^(n-1) - S_n,

    with S_k the harmonic tail; small eps switches to the confluent power
    series to avoid the (b-a)^(k-1) cancellation.  Continuous at eps -> 0
    with limit ln n - S_n, and zero at eps = 1.
    """
    if not isinstance(n, (int, np.integer)) or n < 2:
        raise ValidationError(f"dimension n={n!r} must be an integer >= 2")
    if not (-1e-12 <= epsilon <= 1.0 + 1e-12):
        raise EpsilonOutOfRangeError(f"epsilon {epsilon!r} outside [0, 1]")
    epsilon = min(max(epsilon, 0.0), 1.0)
    if epsilon < 1.0 and n * epsilon / (1.0 - epsilon) < 0.2:
        q = _depolarized_series(n, epsilon)
    else:
        a = (1.0 - epsilon) / n
        b = epsilon + a
        c = epsilon  # b - a, exactly
        harm = _harmonic(n)
        sig_n = _sigma_tail(harm, n)
        total = -sig_n
        if a > 0.0:
            log_a = math.log(a)
            for k in range(2, n + 1):
                total += (
                    math.comb(n, k)
                    * a**k
                    * (log_a - _sigma_tail(harm, k))
                    / c ** (k - 1)
                )
        total -= b**n * (math.log(b) - sig_n) / c ** (n - 1)
        q = total
    if -1e-12 < q < 0.0:
        q = 0.0
    return float(q)


def subentropy_depolarized_derivative_form(
    n: int, epsilon: float
) -> tuple[float, float]:
    """Subentropy of a depolarized pure state via the derivative identity.

    Evaluates (n-2)!^-1 d^(n-2)/da^(n-2) [(a^n ln a - b^n ln b)/(b - a)]
    through the multinomial expansion of the a-derivatives.  Returns
    ``(value, correction)`` where ``correction = S_n ((n-1) a + b - 1)``
    is the unit-trace term by which this route nominally differs from the
    binomial-sum route; it vanishes identically (|correction| < 1e-12).
    """
    if not isinstance(n, (int, np.integer)) or n < 2:
        raise ValidationError(f"dimension n={n!r} must be an integer >= 2")
    if not (0.0 < epsilon <= 1.0 + 1e-12):
        raise EpsilonOutOfRangeError(
            f"epsilon {epsilon!r} outside (0, 1]: distinct eigenvalues required"
        )
    epsilon = min(epsilon, 1.0)
    a = (1.0 - epsilon) / n
    b = epsilon + a
    c = epsilon  # b - a, exactly
    harm = _harmonic(n)
    sig_n = _sigma_tail(harm, n)

    # d^(n-2)/da^(n-2) [b^n ln b / (b - a)] = (n-2)! b^n ln b / (b-a)^(n-1)
    part_b = b**n * math.log(b) / c ** (n - 1)

    part_a = 0.0
    if a > 0.0:
        log_a = math.log(a)
        for k in range(2, n + 1):
            inner = math.comb(n, k) * log_a
            for j in range(1, n - 1):
                inner -= math.comb(n, k + j) * (-1.0) ** j / j
            part_a += a**k / c ** (k - 1) * inner

    value = part_a - part_b
    correction = sig_n * ((n - 1) * a + b - 1.0)
    return float(value), float(correction)
