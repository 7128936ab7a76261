"""
Dense complex linear algebra used by the rest of the package.

Matrices are plain 2d ``numpy`` arrays of dtype complex128 and vectors are
1d arrays. Nothing here mutates its arguments.
"""

from typing import NamedTuple

import numpy as np

from .errors import AllColumnsNegligible, DimensionMismatch, NonSquare, RangeNotContained

DEFAULT_RANK_TOL = 1e-12


class SpectralInterval(NamedTuple):
    """Extreme eigenvalues of the Hermitian part of a square matrix.

    ``lo * I <= (M + M*)/2 <= hi * I`` in the Loewner order, and
    ``hermitian_deviation`` is the operator norm of the skew part.
    """

    lo: float
    hi: float
    hermitian_deviation: float


class DouglasFactor(NamedTuple):
    factor: np.ndarray
    residual: float


def as_matrix(a, name="matrix"):
    """Return ``a`` as a finite complex128 2d array (copy-free when possible)."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim == 1:
        m = m.reshape(-1, 1)
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise ValueError(f"{name} must be a non-empty 2d array, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError(f"{name} has non-finite entries")
    return m


def as_vector(a, dim=None, name="vector"):
    v = np.asarray(a, dtype=np.complex128)
    if v.ndim != 1:
        raise ValueError(f"{name} must be 1d, got shape {v.shape}")
    if dim is not None and v.shape[0] != dim:
        raise DimensionMismatch(f"{name} has {v.shape[0]} entries, expected {dim}")
    return v


def frozen(a):
    """Read-only complex copy of ``a``."""
    m = np.array(a, dtype=np.complex128, copy=True)
    m.flags.writeable = False
    return m


def adjoint(m):
    return np.conj(m).T


def require_square(m, name="matrix"):
    m = as_matrix(m, name)
    if m.shape[0] != m.shape[1]:
        raise NonSquare(f"{name} must be square, got shape {m.shape}")
    return m


def orthonormalize(columns, rank_tol=DEFAULT_RANK_TOL):
    """Orthonormal basis of the numerical column space of ``columns``.

    Singular values at or below ``rank_tol * sigma_max * max(rows, cols)``
    are treated as zero.
    """
    if rank_tol <= 0:
        raise ValueError("rank_tol must be positive")
    a = as_matrix(columns, "columns")
    u, s, _ = np.linalg.svd(a, full_matrices=False)
    if s[0] == 0.0:
        raise AllColumnsNegligible("input has numerical rank 0")
    threshold = rank_tol * s[0] * max(a.shape)
    rank = int(np.count_nonzero(s > threshold))
    if rank == 0:
        raise AllColumnsNegligible("input has numerical rank 0")
    return u[:, :rank]


def spectral_interval(m):
    m = require_square(m)
    herm = 0.5 * (m + adjoint(m))
    skew = 0.5 * (m - adjoint(m))
    eig = np.linalg.eigvalsh(herm)
    return SpectralInterval(float(eig[0]), float(eig[-1]), operator_norm(skew))


def operator_norm(m):
    """Largest singular value."""
    m = as_matrix(m)
    return float(np.linalg.norm(m, 2))


def smallest_singular_value(m):
    m = as_matrix(m)
    return float(np.linalg.svd(m, compute_uv=False)[-1])


def kron(q, t):
    """Kronecker product, row index (i, k) -> i * rows(t) + k."""
    return np.kron(as_matrix(q, "q"), as_matrix(t, "t"))


def douglas_factor(u, v, tol=1e-10):
    """Solve ``U = V W`` for ``W`` by the pseudo-inverse of ``V``.

    Raises RangeNotContained when ``||V W - U|| > tol * (1 + ||U||)``, i.e.
    when range(U) is not (numerically) inside range(V).
    """
    u = as_matrix(u, "u")
    v = as_matrix(v, "v")
    if u.shape[0] != v.shape[0]:
        raise DimensionMismatch(f"row counts differ: {u.shape[0]} vs {v.shape[0]}")
    w = np.linalg.pinv(v) @ u
    residual = operator_norm(v @ w - u)
    if residual > tol * (1.0 + operator_norm(u)):
        raise RangeNotContained(
            f"range(U) not contained in range(V): residual {residual:.3e}", residual
        )
    return DouglasFactor(w, residual)
