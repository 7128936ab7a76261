"""Subspaces of C^n stored by orthonormal bases, and their projections."""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DimensionMismatch
from .numkernel import (
    DEFAULT_RANK_TOL,
    adjoint,
    as_matrix,
    frozen,
    operator_norm,
    orthonormalize,
    require_square,
)

ORTHONORMAL_TOL = 1e-10
SUBSPACE_EQ_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class Subspace:
    """A nonzero subspace of C^ambient_dim.

    ``basis`` is kept exactly as given (after a read-only copy); it must
    already have orthonormal columns. Use :meth:`span` to build one from
    arbitrary spanning columns.
    """

    basis: np.ndarray

    def __post_init__(self):
        b = as_matrix(self.basis, "basis")
        n, k = b.shape
        if k > n:
            raise ValueError(f"basis has {k} columns in dimension {n}")
        # unit columns have entries of modulus <= 1; also catches NaN before the Gram product
        if not np.all(np.abs(b) <= 1.0 + ORTHONORMAL_TOL):
            raise ValueError("basis columns not orthonormal (entry of modulus > 1)")
        gram_err = operator_norm(adjoint(b) @ b - np.eye(k))
        if gram_err > ORTHONORMAL_TOL:
            raise ValueError(f"basis columns not orthonormal (error {gram_err:.2e})")
        object.__setattr__(self, "basis", frozen(b))

    @classmethod
    def span(cls, columns, rank_tol=DEFAULT_RANK_TOL):
        return cls(orthonormalize(columns, rank_tol))

    @classmethod
    def full(cls, dim):
        return cls(np.eye(dim))

    @property
    def ambient_dim(self):
        return self.basis.shape[0]

    @property
    def dim(self):
        return self.basis.shape[1]

    def projector(self):
        return projector(self)

    def same_as(self, other, tol=SUBSPACE_EQ_TOL):
        """Equality as subspaces: projector difference within ``tol``."""
        if self.ambient_dim != other.ambient_dim:
            return False
        return operator_norm(projector(self) - projector(other)) <= tol

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient_dim={self.ambient_dim})"


def projector(space):
    """Orthogonal projection onto ``space`` as an ambient_dim square matrix."""
    b = space.basis
    return b @ adjoint(b)


def image_subspace(t, space, rank_tol=DEFAULT_RANK_TOL):
    """The subspace T(V); closure is automatic in finite dimension."""
    t = require_square(t, "T")
    if t.shape[0] != space.ambient_dim:
        raise DimensionMismatch(
            f"T has side {t.shape[0]}, subspace lives in dimension {space.ambient_dim}"
        )
    return Subspace(orthonormalize(t @ space.basis, rank_tol))


class TransportReport(NamedTuple):
    adjoint_residual: float
    unitary: bool
    commute_residual: float | None
    tol: float

    @property
    def passed(self):
        ok = self.adjoint_residual <= self.tol
        if self.unitary:
            ok = ok and self.commute_residual <= self.tol
        return ok


def verify_projection_transport(t, space, tol=1e-10):
    """Check ``P_V T* = P_V T* P_TV`` and, for unitary T, ``P_TV T = T P_V``.

    The second identity is only evaluated when ``||T*T - I|| <= tol``.
    """
    t = require_square(t, "T")
    p_v = projector(space)
    p_tv = projector(image_subspace(t, space))
    t_adj = adjoint(t)
    r1 = operator_norm(p_v @ t_adj - p_v @ t_adj @ p_tv)
    unitary = operator_norm(t_adj @ t - np.eye(t.shape[0])) <= tol
    r2 = operator_norm(p_tv @ t - t @ p_v) if unitary else None
    return TransportReport(r1, unitary, r2, tol)
