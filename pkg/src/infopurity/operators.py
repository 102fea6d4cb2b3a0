"""Complex Hermitian linear algebra and quantum objects.

Dense matrices only.  Everything here is a plain value object: instances
are immutable after construction and all operations are pure functions,
so they can be used freely from concurrent code.
"""

from __future__ import annotations

import numpy as np

from .errors import (
    DimensionMismatchError,
    EpsilonOutOfRangeError,
    NoConvergenceError,
    NonHermitianError,
    ValidationError,
    ZeroTraceError,
)

TOL_HERM = 1e-10
TOL_PSD = 1e-9
TOL_TRACE = 1e-10
TOL_COMPLETENESS = 1e-8


def _as_square_complex(entries) -> np.ndarray:
    m = np.array(entries, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {m.shape}")
    if m.shape[0] < 1:
        raise ValidationError("dimension must be >= 1")
    return m


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


class HermitianOperator:
    """A dense complex matrix checked (and stored) as Hermitian.

    The constructor rejects inputs whose anti-Hermitian part exceeds
    ``tol`` in max-abs; the stored matrix is the Hermitian part of the
    input, so downstream arithmetic sees an exactly Hermitian operator.
    """

    __slots__ = ("matrix",)

    def __init__(self, entries, tol: float = TOL_HERM):
        m = _as_square_complex(entries)
        dev = np.max(np.abs(m - m.conj().T))
        if dev > tol:
            raise NonHermitianError(
                f"max |M - M^dag| = {dev:.3e} exceeds tolerance {tol:.1e}"
            )
        self.matrix: np.ndarray = _frozen((m + m.conj().T) / 2.0)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def trace(self) -> float:
        return float(np.trace(self.matrix).real)

    def __repr__(self) -> str:
        return f"HermitianOperator(dim={self.dim})"


class Spectrum:
    """Real eigenvalue vector stored in non-increasing order.

    ``normalized`` flags spectra of density operators (non-negative up to
    a -1e-9 roundoff floor, unit sum within 1e-10); general Hermitian
    spectra carry ``normalized=False``.
    """

    __slots__ = ("values", "normalized")

    def __init__(self, values, normalized: bool | None = None):
        v = np.sort(np.asarray(values, dtype=float))[::-1].copy()
        if v.ndim != 1 or v.size < 1:
            raise ValidationError("spectrum must be a non-empty 1d vector")
        if normalized is None:
            normalized = bool(
                abs(v.sum() - 1.0) <= TOL_TRACE and v[-1] >= -TOL_PSD
            )
        if normalized and v[-1] < -TOL_PSD:
            raise ValidationError(
                f"normalized spectrum has eigenvalue {v[-1]:.3e} < -1e-9"
            )
        if normalized and abs(v.sum() - 1.0) > TOL_TRACE:
            raise ValidationError(
                f"normalized spectrum sums to {v.sum()!r}, not 1"
            )
        self.values: np.ndarray = _frozen(v)
        self.normalized: bool = normalized

    @property
    def n(self) -> int:
        return self.values.size

    def clipped(self) -> np.ndarray:
        """Values with tiny negative roundoff floored at zero."""
        return np.maximum(self.values, 0.0)

    def __repr__(self) -> str:
        return f"Spectrum({self.values.tolist()}, normalized={self.normalized})"


def eig_hermitian(
    x: HermitianOperator | np.ndarray,
    max_sweeps: int = 100,
) -> tuple[Spectrum, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Returns ``(spectrum, basis)`` with eigenvalues sorted non-increasing
    and ``basis`` unitary such that ``X = basis @ diag(values) @ basis^dag``.
    Ties between degenerate eigenvalues are broken by a stable sort; the
    basis inside a degenerate cluster is an arbitrary orthonormal
    completion.

    Raises ``NoConvergenceError`` if the off-diagonal norm has not dropped
    below roundoff scale after ``max_sweeps`` full sweeps.
    """
    if not isinstance(x, HermitianOperator):
        x = HermitianOperator(x)
    a = x.matrix.astype(complex).copy()
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    if n == 1:
        return Spectrum([a[0, 0].real], normalized=None), v

    scale = max(1.0, float(np.max(np.abs(a))))
    stop = 1e-13 * scale
    upper = np.triu_indices(n, 1)
    converged = False
    for _ in range(max_sweeps):
        off = float(np.max(np.abs(a[upper])))
        if off <= stop:
            converged = True
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag <= stop * 1e-2:
                    continue
                phase = apq / mag
                tau = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                # smaller-angle root of t^2 + 2 tau t - 1 = 0
                if tau >= 0:
                    t = 1.0 / (tau + np.hypot(1.0, tau))
                else:
                    t = -1.0 / (-tau + np.hypot(1.0, tau))
                c = 1.0 / np.hypot(1.0, t)
                s = t * c
                # column update: A <- A U, with U the (p,q) plane rotation
                ap = a[:, p].copy()
                aq = a[:, q].copy()
                a[:, p] = c * ap - s * np.conj(phase) * aq
                a[:, q] = s * phase * ap + c * aq
                # row update: A <- U^dag A
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * phase * rq
                a[q, :] = s * np.conj(phase) * rp + c * rq
                a[p, q] = 0.0
                a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * np.conj(phase) * vq
                v[:, q] = s * phase * vp + c * vq
    if not converged:
        raise NoConvergenceError(
            f"Jacobi iteration did not converge within {max_sweeps} sweeps"
        )
    evals = np.diag(a).real.copy()
    order = np.argsort(-evals, kind="stable")
    return Spectrum(evals[order], normalized=None), v[:, order]


class DensityOperator:
    """Positive-semidefinite unit-trace Hermitian operator.

    The spectrum is computed once at construction (used for validation)
    and cached on the instance.
    """

    __slots__ = ("op", "spectrum")

    def __init__(self, entries):
        op = entries if isinstance(entries, HermitianOperator) else HermitianOperator(entries)
        if abs(op.trace - 1.0) > TOL_TRACE:
            raise ValidationError(f"trace is {op.trace!r}, must be 1 within 1e-10")
        spec, _ = eig_hermitian(op)
        if spec.values[-1] < -TOL_PSD:
            raise ValidationError(
                f"matrix is not PSD: min eigenvalue {spec.values[-1]:.3e} < -1e-9"
            )
        self.op: HermitianOperator = op
        self.spectrum: Spectrum = Spectrum(spec.values, normalized=True)

    @property
    def matrix(self) -> np.ndarray:
        return self.op.matrix

    @property
    def dim(self) -> int:
        return self.op.dim

    def __repr__(self) -> str:
        return f"DensityOperator(dim={self.dim})"


def pure_state_density(vector) -> DensityOperator:
    """Projector |v><v| / <v|v> as a DensityOperator."""
    v = np.asarray(vector, dtype=complex).reshape(-1)
    nrm2 = float(np.vdot(v, v).real)
    if nrm2 <= 0.0:
        raise ValidationError("zero vector cannot define a pure state")
    return DensityOperator(np.outer(v, v.conj()) / nrm2)


class Ensemble:
    """Weighted family of density operators with unit total weight.

    Stored as (weight, normalized state) pairs; the sub-normalized members
    are ``weight * state``.  The weighted average must itself be a valid
    density operator.
    """

    __slots__ = ("dim", "items", "weights", "states", "average")

    def __init__(self, items):
        pairs = []
        for k, (w, s) in enumerate(items):
            w = float(w)
            if w < 0.0:
                raise ValidationError(f"weight {w!r} < 0", field=f"items[{k}]")
            if not isinstance(s, DensityOperator):
                s = DensityOperator(s)
            pairs.append((w, s))
        if not pairs:
            raise ValidationError("ensemble needs at least one state")
        dims = {s.dim for _, s in pairs}
        if len(dims) != 1:
            raise DimensionMismatchError(f"mixed dimensions {sorted(dims)} in ensemble")
        total = sum(w for w, _ in pairs)
        if abs(total - 1.0) > TOL_TRACE:
            raise ValidationError(f"weights sum to {total!r}, must be 1 within 1e-10")
        self.dim: int = pairs[0][1].dim
        self.items: tuple = tuple(pairs)
        self.weights: np.ndarray = _frozen(np.array([w for w, _ in pairs]))
        self.states: tuple = tuple(s for _, s in pairs)
        avg = sum(w * s.matrix for w, s in pairs)
        self.average: DensityOperator = DensityOperator(avg)

    def __len__(self) -> int:
        return len(self.items)

    def sub_normalized(self) -> np.ndarray:
        """Stack of the sub-normalized members w_x * sigma_x, shape (X, n, n)."""
        return np.stack([w * s.matrix for w, s in self.items])

    def __repr__(self) -> str:
        return f"Ensemble(dim={self.dim}, size={len(self.items)})"


class Povm:
    """Positive operators summing to the identity (within 1e-8 max-abs)."""

    __slots__ = ("dim", "elements", "_stack")

    def __init__(self, elements):
        ops = []
        for k, e in enumerate(elements):
            if not isinstance(e, HermitianOperator):
                e = HermitianOperator(e)
            spec, _ = eig_hermitian(e)
            if spec.values[-1] < -TOL_PSD:
                raise ValidationError(
                    f"min eigenvalue {spec.values[-1]:.3e} < -1e-9",
                    field=f"elements[{k}]",
                )
            ops.append(e)
        if not ops:
            raise ValidationError("POVM needs at least one element")
        dims = {e.dim for e in ops}
        if len(dims) != 1:
            raise DimensionMismatchError(f"mixed dimensions {sorted(dims)} in POVM")
        dim = ops[0].dim
        stack = np.stack([e.matrix for e in ops])
        dev = np.max(np.abs(stack.sum(axis=0) - np.eye(dim)))
        if dev > TOL_COMPLETENESS:
            raise ValidationError(
                f"completeness violated: max |sum - identity| = {dev:.3e} > 1e-8"
            )
        self.dim: int = dim
        self.elements: tuple = tuple(ops)
        self._stack: np.ndarray = _frozen(stack)

    def __len__(self) -> int:
        return len(self.elements)

    def stack(self) -> np.ndarray:
        """Elements as one (Y, n, n) array."""
        return self._stack

    def __repr__(self) -> str:
        return f"Povm(dim={self.dim}, outcomes={len(self.elements)})"


class JointDistribution:
    """Joint probability matrix p[x, y] with row/column marginals."""

    __slots__ = ("probs",)

    def __init__(self, probs):
        p = np.asarray(probs, dtype=float)
        if p.ndim != 2:
            raise ValidationError("joint distribution must be a 2d matrix")
        if p.min() < -1e-12:
            raise ValidationError(f"negative entry {p.min():.3e} in joint distribution")
        p = np.maximum(p, 0.0)
        if abs(p.sum() - 1.0) > TOL_TRACE:
            raise ValidationError(f"joint distribution sums to {p.sum()!r}, not 1")
        self.probs: np.ndarray = _frozen(p)

    @property
    def p_x(self) -> np.ndarray:
        return self.probs.sum(axis=1)

    @property
    def p_y(self) -> np.ndarray:
        return self.probs.sum(axis=0)

    def __repr__(self) -> str:
        return f"JointDistribution(shape={self.probs.shape})"


def purity(x) -> float:
    """Tr[X^2] / Tr[X]^2 for a Hermitian operator.

    Ranges over [1/n, 1] on density operators.  Raises ``ZeroTraceError``
    when |Tr X| <= 1e-12.
    """
    if isinstance(x, DensityOperator):
        m = x.matrix
    elif isinstance(x, HermitianOperator):
        m = x.matrix
    else:
        m = HermitianOperator(x).matrix
    tr = float(np.trace(m).real)
    if abs(tr) <= 1e-12:
        raise ZeroTraceError(f"trace {tr!r} too close to zero")
    # for Hermitian M, Tr[M^2] equals the squared Frobenius norm
    tr2 = float(np.vdot(m, m).real)
    return tr2 / tr**2


def elementary_symmetric2(spectrum) -> float:
    """Second elementary symmetric polynomial sum_{k<j} l_k l_j.

    Satisfies ``purity = 1 - 2 * elementary_symmetric2`` for unit-trace
    spectra.
    """
    v = spectrum.values if isinstance(spectrum, Spectrum) else np.asarray(spectrum, float)
    s = float(v.sum())
    return (s * s - float(np.dot(v, v))) / 2.0


def depolarize(x, epsilon: float) -> HermitianOperator:
    """eps * X + (1 - eps) * Tr[X] * I / n, positive for -1/(n-1) <= eps <= 1."""
    op = x if isinstance(x, HermitianOperator) else HermitianOperator(x)
    n = op.dim
    lo = -1.0 / (n - 1) if n > 1 else 0.0
    if not (lo - 1e-12 <= epsilon <= 1.0 + 1e-12):
        raise EpsilonOutOfRangeError(
            f"epsilon {epsilon!r} outside [{lo}, 1] for dimension {n}"
        )
    out = epsilon * op.matrix + (1.0 - epsilon) * op.trace * np.eye(n) / n
    return HermitianOperator(out)


def born_joint(ensemble: Ensemble, povm: Povm) -> JointDistribution:
    """Born-rule joint distribution p[x, y] = Tr[rho_x pi_y]."""
    if ensemble.dim != povm.dim:
        raise DimensionMismatchError(
            f"ensemble dim {ensemble.dim} != POVM dim {povm.dim}"
        )
    rhos = ensemble.sub_normalized()
    probs = np.einsum("xij,yji->xy", rhos, povm.stack()).real
    return JointDistribution(probs)
