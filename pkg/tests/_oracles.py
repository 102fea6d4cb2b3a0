"""Independent reference computations used to pin expected test values.

Everything here deliberately avoids the code paths under test: the
subentropy oracle integrates over the probability simplex with scipy
quadrature, the rational-sum oracle evaluates the eigenvalue formula
directly, accessible information for qubits is maximized on a dense
great-circle grid of projective measurements, and the constrained-entropy
oracle walks the purity circle inside the 3-simplex.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import integrate


def subentropy_quadrature(values) -> float:
    """Simplex-integral subentropy for n = 2 or 3 eigenvalues."""
    lam = np.asarray(values, dtype=float)
    n = lam.size
    sigma_n = sum(1.0 / j for j in range(2, n + 1))

    def h(*xs):
        weight = 1.0 - sum(xs)
        mix = float(np.dot(lam[: n - 1], xs)) + lam[n - 1] * weight
        return mix * math.log(mix) if mix > 0 else 0.0

    if n == 2:
        val = integrate.quad(h, 0.0, 1.0, epsabs=1e-13, epsrel=1e-13)[0]
        norm = 1.0  # (n-1)! = 1
    elif n == 3:
        val = integrate.dblquad(
            lambda x2, x1: h(x1, x2),
            0.0,
            1.0,
            0.0,
            lambda x1: 1.0 - x1,
            epsabs=1e-12,
            epsrel=1e-12,
        )[0]
        norm = 2.0  # (n-1)! = 2
    else:
        raise ValueError("quadrature oracle implemented for n in (2, 3)")
    return -n * norm * val - sigma_n


def subentropy_rational_sum(values) -> float:
    """Direct eigenvalue-formula subentropy; valid for distinct positive
    eigenvalues only."""
    lam = np.asarray(values, dtype=float)
    n = lam.size
    total = 0.0
    for k in range(n):
        denom = 1.0
        for j in range(n):
            if j != k:
                denom *= lam[k] - lam[j]
        total += lam[k] ** n * math.log(lam[k]) / denom
    return -total


def _joint_information(p: np.ndarray) -> float:
    px = p.sum(axis=1)
    py = p.sum(axis=0)
    mask = p > 0.0
    return float((p[mask] * (np.log(p[mask]) - np.log(np.outer(px, py)[mask]))).sum())


def qubit_projective_grid_max(sub_normalized, points: int = 10**4) -> float:
    """Max mutual information over great-circle projective qubit
    measurements, theta resolution pi/points (~3e-4 rad)."""
    rhos = np.asarray(sub_normalized, dtype=complex)
    theta = np.linspace(0.0, np.pi, points, endpoint=False)
    u = np.stack([np.cos(theta / 2), np.sin(theta / 2)]).T.astype(complex)
    v = np.stack([-np.sin(theta / 2), np.cos(theta / 2)]).T.astype(complex)
    pu = np.einsum("ti,xij,tj->tx", u.conj(), rhos, u).real
    pv = np.einsum("ti,xij,tj->tx", v.conj(), rhos, v).real
    best = -1.0
    for k in range(points):
        p = np.clip(np.stack([pu[k], pv[k]]).T, 0.0, None)
        best = max(best, _joint_information(p))
    return best


def renyi_of(lam: np.ndarray, alpha: float) -> np.ndarray:
    lam = np.maximum(lam, 0.0)
    if abs(alpha - 1.0) < 1e-6:
        terms = np.where(lam > 0, lam * np.log(np.maximum(lam, 1e-300)), 0.0)
        return -terms.sum(axis=-1)
    return np.log((lam**alpha).sum(axis=-1)) / (1.0 - alpha)


def renyi_extrema_grid_3(purity: float, alpha: float, points: int = 20001):
    """Min and max Renyi entropy on the purity circle inside the
    3-simplex, густой theta grid plus the exact positivity-boundary
    points (where the extrema of clipped arcs live)."""
    center = np.ones(3) / 3.0
    u = np.array([1.0, -1.0, 0.0]) / math.sqrt(2.0)
    v = np.array([1.0, 1.0, -2.0]) / math.sqrt(6.0)
    r = math.sqrt(purity - 1.0 / 3.0)
    theta = np.linspace(0.0, 2.0 * math.pi, points)
    lam = center[None, :] + r * (
        np.cos(theta)[:, None] * u[None, :] + np.sin(theta)[:, None] * v[None, :]
    )
    # exact boundary points lambda_k = 0 on the circle
    extras = []
    for k in range(3):
        a_k, b_k = r * u[k], r * v[k]
        rho = math.hypot(a_k, b_k)
        if rho < 1e-15:
            continue
        target = -center[k] / rho
        if abs(target) > 1.0:
            continue
        base = math.atan2(b_k, a_k)
        for t in (base + math.acos(target), base - math.acos(target)):
            extras.append(
                center + r * (math.cos(t) * u + math.sin(t) * v)
            )
    if extras:
        lam = np.vstack([lam, extras])
    ok = (lam >= -1e-9).all(axis=1)
    lam = np.maximum(lam[ok], 0.0)
    h = renyi_of(lam, alpha)
    return float(h.min()), float(h.max())


def sample_fixed_purity_spectra(n: int, purity: float, count: int, rng) -> np.ndarray:
    """Rejection-sample spectra uniformly on the purity sphere cap inside
    the simplex; n = 2 is the unique two-point spectrum."""
    r = math.sqrt(purity - 1.0 / n)
    if n == 2:
        lam = np.array([0.5 + r / math.sqrt(2.0), 0.5 - r / math.sqrt(2.0)])
        return np.tile(lam, (count, 1))
    out = []
    while len(out) < count:
        g = rng.normal(size=(4 * count, n))
        g -= g.mean(axis=1, keepdims=True)
        norms = np.linalg.norm(g, axis=1, keepdims=True)
        lam = 1.0 / n + r * g / np.maximum(norms, 1e-300)
        lam = lam[(lam >= 0.0).all(axis=1)]
        out.extend(lam[: count - len(out)])
    return np.asarray(out)


def random_density_matrix(n: int, rng) -> np.ndarray:
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    m = g @ g.conj().T
    return m / np.trace(m).real


def random_hermitian(n: int, rng) -> np.ndarray:
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (g + g.conj().T) / 2.0


def random_symmetrized_povm(n: int, outcomes: int, rng):
    """Random full-rank POVM built from Wishart pieces, symmetrized to
    exact completeness; returned as a list of matrices."""
    g = rng.normal(size=(outcomes, n, 2)) + 1j * rng.normal(size=(outcomes, n, 2))
    raw = np.einsum("kiv,kjv->kij", g, g.conj())
    s = raw.sum(axis=0)
    evals, basis = np.linalg.eigh(s)
    inv_sqrt = (basis * (1.0 / np.sqrt(evals))) @ basis.conj().T
    return [inv_sqrt @ e @ inv_sqrt for e in raw]
