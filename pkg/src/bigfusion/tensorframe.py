"""
Tensor products of bi-g-fusion pairs.

Given a pair (Lambda, Lambda') on C^n and a pair (Gamma, Gamma') on C^m, the
assembled pair on C^(n*m) has items indexed by (i, j) in row-major order:

    (V_i (x) W_j,   Lambda_i (x) Gamma_j,   v_i w_j)
    (V_i' (x) W_j', Lambda_i' (x) Gamma_j', v_i w_j)

with (x) realized by ``numpy.kron``. Simple tensors f (x) g are kron(f, g).
"""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .bifusion import BiGFusionPair, bi_frame_operator, transport
from .errors import NotAFrame, SingularFactor
from .gfusion import (
    DEFAULT_TOL,
    BoundsCertificate,
    GFusionItem,
    GFusionSystem,
    certificate_from_operator,
)
from .numkernel import kron, operator_norm, smallest_singular_value, spectral_interval
from .subspace import Subspace


@dataclass(frozen=True, eq=False)
class TensorBiPair:
    left: BiGFusionPair
    right: BiGFusionPair
    assembled: BiGFusionPair


def _tensor_system(a, b):
    items = [
        GFusionItem(
            Subspace(np.kron(x.subspace.basis, y.subspace.basis)),
            np.kron(x.operator, y.operator),
            x.weight * y.weight,
        )
        for x in a.items
        for y in b.items
    ]
    return GFusionSystem(a.ambient_dim * b.ambient_dim, tuple(items))


def tensor_pair(left, right):
    assembled = BiGFusionPair(
        _tensor_system(left.lambda_sys, right.lambda_sys),
        _tensor_system(left.gamma_sys, right.gamma_sys),
    )
    return TensorBiPair(left, right, assembled)


class TensorCertificates(NamedTuple):
    left: BoundsCertificate
    right: BoundsCertificate
    assembled: BoundsCertificate


def certify_tensor(tp, tol=DEFAULT_TOL):
    """Certificates for both factors and for the assembled pair.

    The assembled certificate comes from the assembled operator itself and is
    never derived from the factor certificates.
    """
    return TensorCertificates(
        certificate_from_operator(bi_frame_operator(tp.left), tol),
        certificate_from_operator(bi_frame_operator(tp.right), tol),
        certificate_from_operator(bi_frame_operator(tp.assembled), tol),
    )


class Factorization(NamedTuple):
    assembled: np.ndarray
    kronecker: np.ndarray
    error: float


def tensor_frame_operator_factorization(tp):
    """Compare the directly summed S with kron(S_left, S_right) (Frobenius)."""
    s = bi_frame_operator(tp.assembled)
    k = kron(bi_frame_operator(tp.left), bi_frame_operator(tp.right))
    return Factorization(s, k, float(np.linalg.norm(s - k, "fro")))


def tensor_inverse_factorization(tp, tol=DEFAULT_TOL):
    """Operator-norm gap between S^-1 and kron(S_left^-1, S_right^-1)."""
    s_left = bi_frame_operator(tp.left)
    s_right = bi_frame_operator(tp.right)
    for name, m in (("left", s_left), ("right", s_right)):
        if smallest_singular_value(m) <= tol:
            raise SingularFactor(f"{name} frame operator is not invertible")
    s_inv = np.linalg.inv(bi_frame_operator(tp.assembled))
    return operator_norm(s_inv - kron(np.linalg.inv(s_left), np.linalg.inv(s_right)))


class LoewnerCheck(NamedTuple):
    lo: float
    hi: float
    lower_product: float
    upper_product: float
    holds: bool


def tensor_loewner_check(tp, tol=DEFAULT_TOL):
    """Check AC I <= S <= BD I for the assembled operator S."""
    certs = certify_tensor(tp, tol)
    for name, c in (("left", certs.left), ("right", certs.right)):
        if not c.is_frame:
            raise NotAFrame(f"{name} factor is not a frame: {c.verdict.value}")
    ac = certs.left.lower * certs.right.lower
    bd = certs.left.upper * certs.right.upper
    lo, hi, _ = spectral_interval(bi_frame_operator(tp.assembled))
    return LoewnerCheck(lo, hi, ac, bd, lo >= ac - tol and hi <= bd + tol)


def tensor_transport(tp, u1, u2, tol=DEFAULT_TOL):
    """Transport the assembled pair by U1 (x) U2 and each factor by its own U."""
    return TensorBiPair(
        transport(tp.left, u1, tol),
        transport(tp.right, u2, tol),
        transport(tp.assembled, kron(u1, u2), tol),
    )
