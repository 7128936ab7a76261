"""
Pairs (Lambda, Gamma) of g-fusion systems and their mixed frame operator.

A pair is a frame when the mixed sum

    sum_i v_i^2 <Lambda_i P_{V_i} f, Gamma_i P_{W_i} f>

is bounded above and below by multiples of ||f||^2. In coordinates that sum
is <S f, f> with S = sum_i v_i^2 P_{W_i} Gamma_i^* Lambda_i P_{V_i}, so all
certification goes through S.
"""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import (
    DimensionMismatch,
    IndexMismatch,
    NonHermitianOperator,
    NotAFrame,
    NotBoundedBelow,
    SingularOperator,
    ZeroGenerator,
)
from .gfusion import (
    DEFAULT_TOL,
    GFusionItem,
    GFusionSystem,
    certificate_from_operator,
)
from .numkernel import (
    adjoint,
    as_matrix,
    as_vector,
    douglas_factor,
    operator_norm,
    require_square,
    smallest_singular_value,
    spectral_interval,
)
from .subspace import Subspace, image_subspace


@dataclass(frozen=True, eq=False)
class BiGFusionPair:
    lambda_sys: GFusionSystem
    gamma_sys: GFusionSystem

    def __post_init__(self):
        lam, gam = self.lambda_sys, self.gamma_sys
        if lam.ambient_dim != gam.ambient_dim:
            raise DimensionMismatch(
                f"ambient dimensions differ: {lam.ambient_dim} vs {gam.ambient_dim}"
            )
        if len(lam) != len(gam):
            raise IndexMismatch(f"item counts differ: {len(lam)} vs {len(gam)}")
        for k, (a, b) in enumerate(zip(lam.items, gam.items)):
            if a.weight != b.weight:
                raise IndexMismatch(f"item {k}: weights {a.weight} and {b.weight} differ")
            if a.codomain_dim != b.codomain_dim:
                raise DimensionMismatch(
                    f"item {k}: codomain dims {a.codomain_dim} and {b.codomain_dim}"
                )

    @classmethod
    def coincident(cls, sys):
        return cls(sys, sys)

    @property
    def ambient_dim(self):
        return self.lambda_sys.ambient_dim

    @property
    def weights(self):
        return self.lambda_sys.weights

    def __len__(self):
        return len(self.lambda_sys)


@dataclass(frozen=True, eq=False)
class ScalarBiframe:
    """Two vector families {f_i}, {g_i} with shared positive weights."""

    f_vectors: tuple
    g_vectors: tuple
    weights: tuple

    def __post_init__(self):
        fs = tuple(np.asarray(f, dtype=np.complex128) for f in self.f_vectors)
        gs = tuple(np.asarray(g, dtype=np.complex128) for g in self.g_vectors)
        ws = tuple(float(w) for w in self.weights)
        if not fs or not (len(fs) == len(gs) == len(ws)):
            raise IndexMismatch("f_vectors, g_vectors and weights must be nonempty and equal length")
        n = fs[0].shape[0]
        for v in fs + gs:
            as_vector(v, n)
        if any(w <= 0 for w in ws):
            raise ValueError("weights must be positive")
        object.__setattr__(self, "f_vectors", fs)
        object.__setattr__(self, "g_vectors", gs)
        object.__setattr__(self, "weights", ws)

    @property
    def ambient_dim(self):
        return self.f_vectors[0].shape[0]

    def mixed_sum(self, f):
        """sum_i v_i^2 <f, f_i> <g_i, f>."""
        f = as_vector(f, self.ambient_dim)
        return sum(
            w**2 * np.vdot(fi, f) * np.vdot(f, gi)
            for fi, gi, w in zip(self.f_vectors, self.g_vectors, self.weights)
        )


@dataclass(frozen=True, eq=False)
class ResolutionFamily:
    """Operators T_i with sum_i T_i = I up to ``residual``."""

    terms: tuple
    residual: float

    def recompute_residual(self):
        n = self.terms[0].shape[0]
        return operator_norm(sum(self.terms) - np.eye(n))


def bi_frame_operator(pair):
    """S = sum_i v_i^2 P_{W_i} Gamma_i^* Lambda_i P_{V_i}; not assumed Hermitian."""
    n = pair.ambient_dim
    s = np.zeros((n, n), dtype=np.complex128)
    for a, b in zip(pair.lambda_sys.items, pair.gamma_sys.items):
        s += a.weight**2 * (adjoint(b.compressed()) @ a.compressed())
    return s


def certify_bi_gfusion(pair, tol=DEFAULT_TOL):
    return certificate_from_operator(bi_frame_operator(pair), tol)


def swap(pair):
    return BiGFusionPair(pair.gamma_sys, pair.lambda_sys)


def _require_frame(pair, tol):
    s = bi_frame_operator(pair)
    cert = certificate_from_operator(s, tol)
    if not cert.is_frame:
        raise NotAFrame(f"pair is not a frame: {cert.verdict.value}, lower={cert.lower:.3e}")
    return s


class Reconstruction(NamedTuple):
    """Reconstructed vector and the relative error of both formula orders."""

    vector: np.ndarray
    error: float
    left_inverse_error: float


def reconstruct(pair, f, tol=DEFAULT_TOL):
    """Rebuild f as sum_i v_i^2 S^-1 P_{W_i} Gamma_i^* Lambda_i P_{V_i} f.

    The other order, sum_i v_i^2 P_{W_i} Gamma_i^* Lambda_i P_{V_i} S^-1 f,
    is evaluated as well. Both are summed term by term over the items rather
    than through the assembled S.
    """
    s = _require_frame(pair, tol)
    f = as_vector(f, pair.ambient_dim, "f")
    s_inv_f = np.linalg.solve(s, f)
    mixed = np.zeros_like(f)
    mixed_of_inv = np.zeros_like(f)
    for a, b in zip(pair.lambda_sys.items, pair.gamma_sys.items):
        gam_adj = adjoint(b.compressed())
        lam = a.compressed()
        mixed += a.weight**2 * (gam_adj @ (lam @ f))
        mixed_of_inv += a.weight**2 * (gam_adj @ (lam @ s_inv_f))
    f_hat = np.linalg.solve(s, mixed)
    norm = np.linalg.norm(f)
    if norm == 0.0:
        # relative error undefined; report absolute
        return Reconstruction(f_hat, float(np.linalg.norm(f_hat)), float(np.linalg.norm(mixed_of_inv)))
    return Reconstruction(
        f_hat,
        float(np.linalg.norm(f_hat - f) / norm),
        float(np.linalg.norm(mixed_of_inv - f) / norm),
    )


def alpha_lower_bound(pair, tol=DEFAULT_TOL):
    """Largest alpha with S >= alpha I; a frame exactly when alpha > tol."""
    lo, _, dev = spectral_interval(bi_frame_operator(pair))
    if dev > tol:
        raise NonHermitianOperator(f"frame operator has skew part of norm {dev:.3e}")
    return lo


def resolution_of_identity(pair, tol=DEFAULT_TOL):
    """Terms T_i = v_i^2 K P_{W_i} Gamma_i^* Lambda_i P_{V_i} with sum T_i = I.

    K is the Douglas factor solving K S = I; for bounded-below S on a
    finite-dimensional space this is S^-1.
    """
    s = bi_frame_operator(pair)
    n = pair.ambient_dim
    if smallest_singular_value(s) <= tol:
        raise NotBoundedBelow("frame operator is not bounded below")
    # K S = I  <=>  S^* K^* = I
    k = adjoint(douglas_factor(np.eye(n), adjoint(s), tol=1e-8).factor)
    terms = tuple(
        a.weight**2 * (k @ adjoint(b.compressed()) @ a.compressed())
        for a, b in zip(pair.lambda_sys.items, pair.gamma_sys.items)
    )
    residual = operator_norm(sum(terms) - np.eye(n))
    return ResolutionFamily(terms, residual)


def _mapped_system(sys, u, right):
    """{(U V_i, Lambda_i P_{V_i} R, v_i)}."""
    items = [
        GFusionItem(image_subspace(u, it.subspace), it.compressed() @ right, it.weight)
        for it in sys.items
    ]
    return GFusionSystem(sys.ambient_dim, tuple(items))


def transport(pair, u, tol=DEFAULT_TOL):
    """The pair {(U V_i, Lambda_i P_{V_i} U^*, v_i)}, {(U W_i, Gamma_i P_{W_i} U^*, v_i)}.

    Its frame operator is U S U^*, so frame bounds (A, B) become at worst
    (A ||U^-1||^-2, B ||U||^2).
    """
    u = require_square(u, "U")
    if u.shape[0] != pair.ambient_dim:
        raise DimensionMismatch(f"U must be {pair.ambient_dim} x {pair.ambient_dim}")
    if smallest_singular_value(u) <= tol:
        raise SingularOperator("U is not invertible")
    u_adj = adjoint(u)
    return BiGFusionPair(
        _mapped_system(pair.lambda_sys, u, u_adj),
        _mapped_system(pair.gamma_sys, u, u_adj),
    )


def canonical_dual_bi(pair, tol=DEFAULT_TOL):
    """Pair built from S^-1 V_i, Lambda_i P_{V_i} S^-1 (and likewise for Gamma)."""
    s = _require_frame(pair, tol)
    s_inv = np.linalg.inv(s)
    return BiGFusionPair(
        _mapped_system(pair.lambda_sys, s_inv, s_inv),
        _mapped_system(pair.gamma_sys, s_inv, s_inv),
    )


def lift_biframe(bf):
    """Turn a scalar biframe into a pair with one-dimensional subspaces.

    V_i = span(f_i), W_i = span(g_i), Lambda_i = <., f_i> and
    Gamma_i = <., g_i>, so that <Lambda_i f, Gamma_i f> = <f, f_i><g_i, f>.
    """
    lam, gam = [], []
    for k, (fi, gi, w) in enumerate(zip(bf.f_vectors, bf.g_vectors, bf.weights)):
        if not np.any(fi) or not np.any(gi):
            raise ZeroGenerator(f"generator pair {k} contains a zero vector")
        lam.append(GFusionItem(_line(fi), np.conj(fi).reshape(1, -1), w))
        gam.append(GFusionItem(_line(gi), np.conj(gi).reshape(1, -1), w))
    n = bf.ambient_dim
    return BiGFusionPair(GFusionSystem(n, tuple(lam)), GFusionSystem(n, tuple(gam)))


def _line(v):
    v = as_matrix(v.reshape(-1, 1))
    return Subspace(v / np.linalg.norm(v))
