"""Dense complex linear algebra used by every other module.

Matrices are plain ``numpy`` arrays of dtype ``complex128`` (row-major). Composite
indices are big-endian: the leftmost tensor factor is the most significant digit.
"""

import os
from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .errors import DimensionTooLargeError, NumericalFailure, ShapeError

DEFAULT_MAX_DIM = 2**20
RANK_CUTOFF = 1e-10
JACOBI_TOL = 1e-12
MAX_SWEEPS = 60


def max_dimension():
    """Largest allowed register/operator dimension (env ``HQ_MAX_DIM`` overrides)."""
    value = os.environ.get("HQ_MAX_DIM")
    return int(value) if value else DEFAULT_MAX_DIM


def as_matrix(obj):
    """Return the complex matrix behind ``obj`` (a Gate, array, or nested list)."""
    mat = getattr(obj, "matrix", obj)
    return np.asarray(mat, dtype=np.complex128)


def kron(a, b):
    a = np.asarray(getattr(a, "matrix", a))
    b = np.asarray(getattr(b, "matrix", b))
    if a.ndim != 2 or b.ndim != 2:
        raise ShapeError("kron expects two matrices")
    limit = max_dimension()
    rows, cols = a.shape[0] * b.shape[0], a.shape[1] * b.shape[1]
    if rows > limit or cols > limit:
        raise DimensionTooLargeError(
            f"kron result {rows}x{cols} exceeds the dimension bound {limit}"
        )
    return np.kron(a, b)


def kron_all(factors):
    out = np.ones((1, 1), dtype=np.asarray(getattr(factors[0], "matrix", factors[0])).dtype)
    for f in factors:
        out = kron(out, f)
    return out


def dagger(m):
    return as_matrix(m).conj().T


def hs_inner(a, b):
    """Hilbert-Schmidt product tr(A^dagger B)."""
    return complex(np.vdot(as_matrix(a), as_matrix(b)))


def unitarity_defect(m):
    """max |(M^dagger M - I)_ij|"""
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise ShapeError(f"expected a square matrix, got {m.shape}")
    return float(np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0]))))


def is_unitary(m, tol=1e-10):
    return unitarity_defect(m) <= tol


@dataclass(frozen=True)
class SvdResult:
    """Thin SVD ``M = U diag(s) V^dagger`` with ``s`` sorted descending.

    ``left_vectors`` is U (m x k) and ``right_vectors`` is V (n x k), k = min(m, n).
    """

    singular_values: np.ndarray
    left_vectors: np.ndarray
    right_vectors: np.ndarray

    @property
    def rank(self):
        return int(np.count_nonzero(self.singular_values > RANK_CUTOFF))

    def reconstruct(self):
        return (self.left_vectors * self.singular_values) @ self.right_vectors.conj().T


def _complete_columns(u, good):
    """Replace the columns of ``u`` not flagged in ``good`` by an orthonormal complement."""
    missing = np.flatnonzero(~good)
    if missing.size == 0:
        return u
    kept = u[:, good]
    q, _ = np.linalg.qr(np.hstack([kept, np.eye(u.shape[0], dtype=np.complex128)]))
    u = u.copy()
    u[:, missing] = q[:, kept.shape[1] : kept.shape[1] + missing.size]
    return u


def svd(m, max_sweeps=MAX_SWEEPS):
    """Singular value decomposition by one-sided (Hestenes) Jacobi rotations.

    Works on the orientation with fewer columns. Raises :class:`NumericalFailure`
    if the column pairs are not mutually orthogonal (relative tolerance 1e-12)
    after ``max_sweeps`` sweeps.
    """
    m = as_matrix(m)
    if m.ndim != 2:
        raise ShapeError("svd expects a matrix")
    if not np.all(np.isfinite(m)):
        raise NumericalFailure("svd input contains non-finite entries", iterations=0)
    transposed = m.shape[0] < m.shape[1]
    work = m.conj().T if transposed else m
    rows, cols = work.shape

    a = np.asfortranarray(work, dtype=np.complex128).copy(order="F")
    v = np.asfortranarray(np.eye(cols, dtype=np.complex128))
    scale = float(np.linalg.norm(work))
    floor = (1e-15 * scale) ** 2 if scale > 0 else 0.0
    sweeps = kernels.jacobi_sweeps(a, v, JACOBI_TOL, floor, max_sweeps)
    if sweeps < 0:
        raise NumericalFailure(
            f"Jacobi SVD did not converge in {max_sweeps} sweeps", iterations=max_sweeps
        )

    a = np.ascontiguousarray(a)
    v = np.ascontiguousarray(v)
    sigma = np.linalg.norm(a, axis=0)
    order = np.argsort(-sigma, kind="stable")
    sigma, a, v = sigma[order], a[:, order], v[:, order]
    good = sigma > max(scale, 1.0) * 1e-14
    u = np.zeros_like(a)
    u[:, good] = a[:, good] / sigma[good]
    u = _complete_columns(u, good)
    sigma = np.where(good, sigma, 0.0)
    if transposed:
        return SvdResult(sigma, v, u)
    return SvdResult(sigma, u, v)


def realign(q, dim_a, dim_b):
    """Rearrange Q on A(x)B so that operator-Schmidt terms become rank-one terms.

    ``R[i1*dA + j1, i2*dB + j2] = Q[i1*dB + i2, j1*dB + j2]``; the singular values of
    R are the operator Schmidt coefficients of Q.
    """
    q = as_matrix(q)
    n = dim_a * dim_b
    if q.shape != (n, n):
        raise ShapeError(f"operator of shape {q.shape} does not act on {dim_a}x{dim_b}")
    return (
        q.reshape(dim_a, dim_b, dim_a, dim_b)
        .transpose(0, 2, 1, 3)
        .reshape(dim_a * dim_a, dim_b * dim_b)
    )


def max_entry_distance(a, b):
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise ShapeError(f"shape mismatch {a.shape} vs {b.shape}")
    return float(np.max(np.abs(a - b))) if a.size else 0.0


def max_entry_distance_up_to_phase(a, b):
    """max |A - phi B| with the unit phase phi = tr(B^dagger A)/|tr(B^dagger A)|.

    Falls back to the plain distance when that trace vanishes.
    """
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise ShapeError(f"shape mismatch {a.shape} vs {b.shape}")
    overlap = np.vdot(b, a)
    if abs(overlap) < 1e-300:
        return max_entry_distance(a, b)
    return max_entry_distance(a, (overlap / abs(overlap)) * b)
