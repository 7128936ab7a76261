"""
Weighted families {(V_i, Lambda_i, v_i)} of subspaces and operators.

Each ``Lambda_i`` is a d_i x n matrix acting on C^n, the codomain
dimensions d_i may differ between items, and the index set is the finite
order of ``items``.
"""

import enum
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, IndexMismatch, NotAFrame, SingularController
from .numkernel import (
    adjoint,
    as_matrix,
    as_vector,
    frozen,
    require_square,
    smallest_singular_value,
    spectral_interval,
)
from .subspace import Subspace, image_subspace, projector

DEFAULT_TOL = 1e-9


class Verdict(str, enum.Enum):
    FRAME = "Frame"
    BESSEL_ONLY = "BesselOnly"
    NOT_BESSEL = "NotBessel"
    NON_HERMITIAN = "NonHermitian"


@dataclass(frozen=True)
class BoundsCertificate:
    lower: float
    upper: float
    hermitian_deviation: float
    verdict: Verdict
    tolerance: float

    @property
    def is_frame(self):
        return self.verdict is Verdict.FRAME

    def to_dict(self):
        return {
            "lower": self.lower,
            "upper": self.upper,
            "hermitian_deviation": self.hermitian_deviation,
            "verdict": self.verdict.value,
            "tolerance": self.tolerance,
        }


def certificate_from_operator(m, tol):
    """Certify ``A I <= M <= B I`` with the optimal (spectral) A and B.

    A skew part above ``tol`` makes the quadratic form non-real, which is
    reported as NonHermitian. Otherwise the sign of the lower bound decides:
    positive means Frame, within ``tol`` of zero means only the upper
    bound holds, and clearly negative means the form is indefinite.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    lo, hi, dev = spectral_interval(m)
    if dev > tol:
        verdict = Verdict.NON_HERMITIAN
    elif lo > tol:
        verdict = Verdict.FRAME
    elif lo >= -tol:
        verdict = Verdict.BESSEL_ONLY
    else:
        verdict = Verdict.NOT_BESSEL
    return BoundsCertificate(lo, hi, dev, verdict, tol)


@dataclass(frozen=True, eq=False)
class GFusionItem:
    subspace: Subspace
    operator: np.ndarray
    weight: float

    def __post_init__(self):
        op = as_matrix(self.operator, "operator")
        if op.shape[1] != self.subspace.ambient_dim:
            raise DimensionMismatch(
                f"operator has {op.shape[1]} columns, subspace lives in "
                f"dimension {self.subspace.ambient_dim}"
            )
        w = float(self.weight)
        if not np.isfinite(w) or w <= 0:
            raise ValueError(f"weights must be positive, got {self.weight!r}")
        object.__setattr__(self, "operator", frozen(op))
        object.__setattr__(self, "weight", w)

    @property
    def codomain_dim(self):
        return self.operator.shape[0]

    def compressed(self):
        """Lambda_i P_{V_i}."""
        return self.operator @ projector(self.subspace)


@dataclass(frozen=True, eq=False)
class GFusionSystem:
    ambient_dim: int
    items: tuple

    def __post_init__(self):
        items = tuple(self.items)
        if not items:
            raise ValueError("a system needs at least one item")
        for k, item in enumerate(items):
            if item.subspace.ambient_dim != self.ambient_dim:
                raise DimensionMismatch(
                    f"item {k} lives in dimension {item.subspace.ambient_dim}, "
                    f"system in {self.ambient_dim}"
                )
        object.__setattr__(self, "items", items)

    @classmethod
    def from_lists(cls, subspaces, operators, weights):
        if not (len(subspaces) == len(operators) == len(weights)):
            raise IndexMismatch("subspaces, operators and weights differ in length")
        items = [GFusionItem(v, op, w) for v, op, w in zip(subspaces, operators, weights)]
        return cls(subspaces[0].ambient_dim, tuple(items))

    def __len__(self):
        return len(self.items)

    @property
    def weights(self):
        return np.array([it.weight for it in self.items])

    @property
    def codomain_dims(self):
        return [it.codomain_dim for it in self.items]


def analysis_apply(sys, f):
    """Analysis operator: f -> (v_i Lambda_i P_{V_i} f)_i."""
    f = as_vector(f, sys.ambient_dim, "f")
    return [it.weight * (it.compressed() @ f) for it in sys.items]


def synthesis_apply(sys, parts):
    """Synthesis operator: (g_i)_i -> sum_i v_i P_{V_i} Lambda_i^* g_i."""
    if len(parts) != len(sys):
        raise DimensionMismatch(f"got {len(parts)} parts for {len(sys)} items")
    out = np.zeros(sys.ambient_dim, dtype=np.complex128)
    for k, (it, g) in enumerate(zip(sys.items, parts)):
        g = as_vector(g, it.codomain_dim, f"parts[{k}]")
        out += it.weight * (projector(it.subspace) @ (adjoint(it.operator) @ g))
    return out


def frame_operator(sys):
    """S = sum_i v_i^2 P_{V_i} Lambda_i^* Lambda_i P_{V_i}."""
    n = sys.ambient_dim
    s = np.zeros((n, n), dtype=np.complex128)
    for it in sys.items:
        a = it.compressed()
        s += it.weight**2 * (adjoint(a) @ a)
    return s


def certify_gfusion(sys, tol=DEFAULT_TOL):
    return certificate_from_operator(frame_operator(sys), tol)


def pair_frame_operator(sys, other):
    """S_{Lambda Lambda'} = sum_i v_i v_i' P_{V_i} Lambda_i^* Lambda_i' P_{V_i'}."""
    if sys.ambient_dim != other.ambient_dim:
        raise DimensionMismatch("systems live in different dimensions")
    if len(sys) != len(other):
        raise IndexMismatch(f"item counts differ: {len(sys)} vs {len(other)}")
    n = sys.ambient_dim
    s = np.zeros((n, n), dtype=np.complex128)
    for k, (a, b) in enumerate(zip(sys.items, other.items)):
        if a.codomain_dim != b.codomain_dim:
            raise DimensionMismatch(
                f"item {k}: codomain dims {a.codomain_dim} and {b.codomain_dim}"
            )
        s += a.weight * b.weight * (adjoint(a.compressed()) @ b.compressed())
    return s


def canonical_dual_gfusion(sys, tol=DEFAULT_TOL):
    """The family {(S^-1 V_i, Lambda_i P_{V_i} S^-1, v_i)}."""
    s = frame_operator(sys)
    cert = certificate_from_operator(s, tol)
    if not cert.is_frame:
        raise NotAFrame(f"system is not a frame: {cert.verdict.value}, lower={cert.lower:.3e}")
    s_inv = np.linalg.inv(s)
    items = [
        GFusionItem(image_subspace(s_inv, it.subspace), it.compressed() @ s_inv, it.weight)
        for it in sys.items
    ]
    return GFusionSystem(sys.ambient_dim, tuple(items))


def controlled_operator(sys, t, u):
    """M = sum_j v_j^2 T^* P_{W_j} Lambda_j^* Lambda_j P_{W_j} U.

    Its quadratic form is sum_j v_j^2 <Lambda_j P_{W_j} U f, Lambda_j P_{W_j} T f>.
    """
    return adjoint(t) @ frame_operator(sys) @ u


def certify_controlled_gfusion(sys, t, u, tol=DEFAULT_TOL):
    n = sys.ambient_dim
    t = require_square(t, "T")
    u = require_square(u, "U")
    if t.shape[0] != n or u.shape[0] != n:
        raise DimensionMismatch(f"controllers must be {n} x {n}")
    for name, c in (("T", t), ("U", u)):
        if smallest_singular_value(c) <= tol:
            raise SingularController(f"controller {name} is not invertible")
    return certificate_from_operator(controlled_operator(sys, t, u), tol)
