"""Dense symmetric linear algebra used by the quadratic-loss machinery.

The eigensolver is a cyclic Jacobi iteration: simple, deterministic, and
adequate for the matrix orders this package meets (a few hundred at most).
Everything here works on plain float arrays; ``SymMatrix`` is a thin validated
wrapper used at module boundaries.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

MAX_JACOBI_SWEEPS = 100


@dataclass(frozen=True)
class SymMatrix:
    """A validated symmetric matrix (symmetrized copy, read-only)."""

    data: np.ndarray

    def __post_init__(self):
        a = np.array(self.data, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
            raise ValueError("need a nonempty square matrix")
        if not np.isfinite(a).all():
            raise ValueError("matrix entries must be finite")
        tol = 1e-12 * np.maximum(1.0, np.abs(a))
        if (np.abs(a - a.T) > tol).any():
            raise ValueError("matrix is not symmetric within tolerance")
        a = 0.5 * (a + a.T)
        a.setflags(write=False)
        object.__setattr__(self, "data", a)

    @property
    def order(self) -> int:
        return self.data.shape[0]

    def frobenius(self) -> float:
        return float(np.linalg.norm(self.data))


MatrixLike = Union[SymMatrix, np.ndarray]


def _as_array(mat: MatrixLike) -> np.ndarray:
    return mat.data if isinstance(mat, SymMatrix) else np.asarray(mat, dtype=float)


def _fix_signs(vecs: np.ndarray) -> np.ndarray:
    """Deterministic eigenvector orientation: first non-tiny component positive."""
    out = vecs.copy()
    for j in range(out.shape[1]):
        col = out[:, j]
        nz = np.nonzero(np.abs(col) > 1e-12)[0]
        lead = nz[0] if nz.size else int(np.argmax(np.abs(col)))
        if col[lead] < 0:
            out[:, j] = -col
    return out


def _eigen_2x2(a00: float, a01: float, a11: float):
    """Closed-form symmetric 2x2 eigendecomposition (one exact Jacobi rotation)."""
    if a01 == 0.0:
        vals = np.array([a00, a11])
        vecs = np.eye(2)
    else:
        tau = (a11 - a00) / (2.0 * a01)
        t = math.copysign(1.0, tau) / (abs(tau) + math.sqrt(1.0 + tau * tau))
        c = 1.0 / math.sqrt(1.0 + t * t)
        s = t * c
        vals = np.array([a00 - t * a01, a11 + t * a01])
        vecs = np.array([[c, s], [-s, c]])
    order = np.argsort(-vals, kind="stable")
    return vals[order], _fix_signs(vecs[:, order])


def jacobi_eigen(mat: MatrixLike):
    """Full eigendecomposition of a symmetric matrix by cyclic Jacobi sweeps.

    Returns ``(values, vectors)`` with eigenvalues sorted descending and
    eigenvectors as matching columns (orthonormal, leading component positive).
    Raises ``ArithmeticError`` if the off-diagonal mass has not collapsed after
    100 sweeps.
    """
    a = _as_array(mat)
    n = a.shape[0]
    if a.ndim != 2 or a.shape[1] != n or n == 0:
        raise ValueError("need a nonempty square matrix")
    if n == 1:
        return np.array([float(a[0, 0])]), np.ones((1, 1))
    if n == 2:
        return _eigen_2x2(float(a[0, 0]), float(0.5 * (a[0, 1] + a[1, 0])), float(a[1, 1]))

    a = 0.5 * (a + a.T)
    scale = 1.0 + float(np.linalg.norm(a))
    off_tol = 1e-12 * scale
    skip_tol = 1e-18 * scale
    v = np.eye(n)
    for _ in range(MAX_JACOBI_SWEEPS):
        # cancellation-free off-diagonal Frobenius norm
        off = math.sqrt(2.0) * float(np.linalg.norm(np.triu(a, 1)))
        if off <= off_tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= skip_tol:
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, tau) / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                cp = a[:, p].copy()
                cq = a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
                a[p, q] = 0.0
                a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    else:
        off = math.sqrt(2.0) * float(np.linalg.norm(np.triu(a, 1)))
        raise ArithmeticError(
            f"Jacobi iteration did not converge in {MAX_JACOBI_SWEEPS} sweeps "
            f"(off-diagonal residual {off:.3e})"
        )
    vals = np.diag(a).copy()
    order = np.argsort(-vals, kind="stable")
    return vals[order], _fix_signs(v[:, order])


def spectral_abs_max(mat: MatrixLike):
    """Largest absolute eigenvalue of a symmetric matrix with a witness direction.

    Returns ``(value, u)`` where ``value = max(lam_max(A), lam_max(-A)) >= 0``
    and ``u`` is a unit vector with ``|u' A u| = value``. Ties between the two
    branches resolve to the positive branch.
    """
    vals, vecs = jacobi_eigen(mat)
    top = float(vals[0])
    bottom = float(vals[-1])
    if top >= -bottom:
        return top, vecs[:, 0].copy()
    return -bottom, vecs[:, -1].copy()


def psd_sqrt(mat: MatrixLike) -> SymMatrix:
    """Symmetric square root of a positive semidefinite matrix.

    Eigenvalues in [-1e-9, 0) are clamped to zero; anything more negative
    raises ``ValueError("matrix not PSD")``.
    """
    vals, vecs = jacobi_eigen(mat)
    if float(vals.min()) < -1e-9:
        raise ValueError("matrix not PSD")
    root = np.sqrt(np.clip(vals, 0.0, None))
    r = (vecs * root) @ vecs.T
    return SymMatrix(0.5 * (r + r.T))


# --------------------------------------------------------------------------
# kernels
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class LinearKernel:
    """k(x, y) = x . y"""

    def pairwise(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        return np.asarray(xs, dtype=float) @ np.asarray(ys, dtype=float).T

    def kappa(self, points: np.ndarray) -> float:
        pts = np.asarray(points, dtype=float)
        return float(np.sqrt(np.max(np.sum(pts * pts, axis=1))))


@dataclass(frozen=True)
class GaussianKernel:
    """k(x, y) = exp(-gamma * ||x - y||^2), gamma > 0; k(x, x) = 1."""

    gamma: float

    def __post_init__(self):
        if not (math.isfinite(self.gamma) and self.gamma > 0):
            raise ValueError("gamma must be positive")

    def pairwise(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        xs = np.asarray(xs, dtype=float)
        ys = np.asarray(ys, dtype=float)
        sq = (
            np.sum(xs * xs, axis=1)[:, None]
            + np.sum(ys * ys, axis=1)[None, :]
            - 2.0 * xs @ ys.T
        )
        return np.exp(-self.gamma * np.clip(sq, 0.0, None))

    def kappa(self, points: np.ndarray) -> float:
        return 1.0


@dataclass(frozen=True)
class PolynomialKernel:
    """k(x, y) = (x . y + offset)^degree with offset >= 0 and integer degree >= 1."""

    offset: float
    degree: int

    def __post_init__(self):
        if not (math.isfinite(self.offset) and self.offset >= 0):
            raise ValueError("offset must be nonnegative")
        if int(self.degree) != self.degree or self.degree < 1:
            raise ValueError("degree must be a positive integer")
        object.__setattr__(self, "degree", int(self.degree))

    def pairwise(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        xs = np.asarray(xs, dtype=float)
        ys = np.asarray(ys, dtype=float)
        return (xs @ ys.T + self.offset) ** self.degree

    def kappa(self, points: np.ndarray) -> float:
        pts = np.asarray(points, dtype=float)
        return float(np.max((np.sum(pts * pts, axis=1) + self.offset) ** (self.degree / 2.0)))


KernelSpec = Union[LinearKernel, GaussianKernel, PolynomialKernel]


def gram_matrix(points, kernel: KernelSpec) -> SymMatrix:
    """Kernel gram matrix over a point set, validated symmetric."""
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 1:
        pts = pts[:, None]
    if pts.ndim != 2 or pts.shape[0] == 0:
        raise ValueError("need a nonempty (k, dim) point array")
    g = kernel.pairwise(pts, pts)
    return SymMatrix(0.5 * (g + g.T))


# --------------------------------------------------------------------------
# affine matrix families
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class AffineMatrixFamily:
    """The symmetric-matrix pencil z -> base - sum_i z_i * terms[i]."""

    base: SymMatrix
    terms: tuple

    def __post_init__(self):
        base = self.base if isinstance(self.base, SymMatrix) else SymMatrix(self.base)
        terms = tuple(t if isinstance(t, SymMatrix) else SymMatrix(t) for t in self.terms)
        if not terms:
            raise ValueError("need at least one term")
        if any(t.order != base.order for t in terms):
            raise ValueError("all terms must share the base matrix order")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "terms", terms)

    @property
    def order(self) -> int:
        return self.base.order

    @property
    def n_terms(self) -> int:
        return len(self.terms)

    def evaluate(self, z) -> SymMatrix:
        z = np.asarray(z, dtype=float)
        if z.shape != (self.n_terms,):
            raise ValueError("coefficient vector must align with the terms")
        acc = self.base.data.copy()
        for zi, t in zip(z, self.terms):
            acc -= zi * t.data
        return SymMatrix(acc)

    def stacked(self):
        """(base array, (n_terms, order, order) stacked term array) for solvers."""
        return self.base.data.copy(), np.stack([t.data for t in self.terms])
