"""Run every theorem check on one pair and collect the residuals."""

import hashlib
import time
from dataclasses import dataclass, field

import numpy as np

from ..bifusion import (
    alpha_lower_bound,
    bi_frame_operator,
    canonical_dual_bi,
    reconstruct,
    resolution_of_identity,
    swap,
    transport,
)
from ..gfusion import DEFAULT_TOL, certificate_from_operator
from ..numkernel import adjoint, operator_norm, smallest_singular_value
from ..oracle import direct_bi_sum, random_unit_vectors, sample_quadratic_form
from .generate import random_invertible
from .persist import dump_pair

# Fixed per-check tolerances; the ``tol`` argument of run_suite only
# governs verdicts (Frame / invertible / Hermitian).
CHECK_TOLERANCES = {
    "oracle_quadratic_form": 1e-11,
    "certificate_sampling": 1e-10,
    "adjoint_symmetry": 1e-12,
    "swap_bounds": 1e-10,
    "reconstruction": 1e-8,
    "alpha_lower_bound": 1e-6,
    "resolution_of_identity": 1e-9,
    "transport_conjugation": 1e-9,
    "transport_envelope": 1e-9,
    "canonical_dual_bounds": 1e-8,
}

SAMPLES = 10_000
N_VECTORS = 5


@dataclass(frozen=True)
class TheoremCheck:
    name: str
    residual: float
    tolerance: float
    skipped: bool = False
    reason: str = ""

    @property
    def passed(self):
        return self.skipped or self.residual <= self.tolerance

    @property
    def status(self):
        if self.skipped:
            return "skipped"
        return "pass" if self.passed else "fail"

    def to_dict(self):
        d = {
            "name": self.name,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "status": self.status,
        }
        if self.reason:
            d["reason"] = self.reason
        return d


@dataclass
class Report:
    instance_id: str
    certificates: dict
    theorem_checks: list
    wall_time_ms: int = 0
    meta: dict = field(default_factory=dict)

    @property
    def passed(self):
        return all(c.passed for c in self.theorem_checks)

    @property
    def verdict(self):
        return self.certificates["primary"].verdict

    def check(self, name):
        for c in self.theorem_checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self, include_time=True):
        d = {
            "instance_id": self.instance_id,
            "passed": self.passed,
            "certificates": [
                {"role": role, **cert.to_dict()} for role, cert in self.certificates.items()
            ],
            "theorem_checks": [c.to_dict() for c in self.theorem_checks],
            **self.meta,
        }
        if include_time:
            d["wall_time_ms"] = self.wall_time_ms
        return d

    def to_markdown(self):
        lines = [f"## Instance `{self.instance_id}`", ""]
        lines += ["| certificate | lower | upper | deviation | verdict |", "|---|---|---|---|---|"]
        for role, c in self.certificates.items():
            lines.append(
                f"| {role} | {c.lower:.6g} | {c.upper:.6g} | "
                f"{c.hermitian_deviation:.2e} | {c.verdict.value} |"
            )
        lines += ["", "| check | residual | tolerance | status |", "|---|---|---|---|"]
        for c in self.theorem_checks:
            lines.append(f"| {c.name} | {c.residual:.3e} | {c.tolerance:.0e} | {c.status} |")
        lines.append("")
        return "\n".join(lines)


def instance_id(pair):
    return hashlib.sha256(dump_pair(pair).encode()).hexdigest()[:16]


def _skip(name, reason):
    return TheoremCheck(name, 0.0, CHECK_TOLERANCES[name], skipped=True, reason=reason)


def _check(name, residual):
    return TheoremCheck(name, float(residual), CHECK_TOLERANCES[name])


def run_suite(pair, tol=DEFAULT_TOL, seed=0):
    """Certify ``pair`` and evaluate every theorem check on it.

    Failures are recorded, never raised. Checks whose hypotheses do not hold
    (e.g. reconstruction for a pair that is not a frame) are marked skipped.
    """
    start = time.perf_counter()
    rng = np.random.default_rng(seed)
    n = pair.ambient_dim
    s = bi_frame_operator(pair)
    cert = certificate_from_operator(s, tol)
    certificates = {"primary": cert}
    checks = []
    vectors = random_unit_vectors(n, N_VECTORS, rng)

    oracle_gap = max(abs(np.vdot(f, s @ f) - direct_bi_sum(pair, f)) for f in vectors)
    checks.append(_check("oracle_quadratic_form", oracle_gap))

    sampled = sample_quadratic_form(s, SAMPLES, int(rng.integers(2**63)))
    checks.append(
        _check(
            "certificate_sampling",
            max(0.0, cert.lower - sampled.min_seen, sampled.max_seen - cert.upper),
        )
    )

    swapped = swap(pair)
    s_swap = bi_frame_operator(swapped)
    checks.append(_check("adjoint_symmetry", operator_norm(s_swap - adjoint(s))))
    swap_cert = certificate_from_operator(s_swap, tol)
    certificates["swapped"] = swap_cert
    checks.append(
        _check(
            "swap_bounds",
            abs(swap_cert.lower - cert.lower)
            + abs(swap_cert.upper - cert.upper)
            + abs(swap_cert.hermitian_deviation - cert.hermitian_deviation),
        )
    )

    if cert.is_frame:
        worst = 0.0
        for f in vectors:
            r = reconstruct(pair, f, tol)
            worst = max(worst, r.error, r.left_inverse_error)
        checks.append(_check("reconstruction", worst))
    else:
        checks.append(_skip("reconstruction", f"verdict {cert.verdict.value}"))

    if cert.hermitian_deviation <= tol:
        alpha = alpha_lower_bound(pair, tol)
        checks.append(_check("alpha_lower_bound", max(0.0, alpha - sampled.min_seen)))
    else:
        checks.append(_skip("alpha_lower_bound", "frame operator is not self-adjoint"))

    if smallest_singular_value(s) > tol:
        checks.append(_check("resolution_of_identity", resolution_of_identity(pair, tol).residual))
    else:
        checks.append(_skip("resolution_of_identity", "frame operator not bounded below"))

    u = random_invertible(n, rng)
    moved = transport(pair, u, tol)
    s_moved = bi_frame_operator(moved)
    expected = u @ s @ adjoint(u)
    checks.append(
        _check(
            "transport_conjugation",
            operator_norm(s_moved - expected) / (1.0 + operator_norm(expected)),
        )
    )
    moved_cert = certificate_from_operator(s_moved, tol)
    certificates["transported"] = moved_cert
    if cert.is_frame:
        floor = cert.lower * smallest_singular_value(u) ** 2
        ceiling = cert.upper * operator_norm(u) ** 2
        checks.append(
            _check(
                "transport_envelope",
                max(0.0, floor - moved_cert.lower, moved_cert.upper - ceiling),
            )
        )
    else:
        checks.append(_skip("transport_envelope", f"verdict {cert.verdict.value}"))

    if cert.is_frame:
        dual_cert = certificate_from_operator(bi_frame_operator(canonical_dual_bi(pair, tol)), tol)
        certificates["canonical_dual"] = dual_cert
        # dual operator is S^-1, whose bounds are (1/B, 1/A)
        residual = abs(dual_cert.lower * cert.upper - 1.0) + abs(dual_cert.upper * cert.lower - 1.0)
        checks.append(_check("canonical_dual_bounds", residual))
    else:
        checks.append(_skip("canonical_dual_bounds", f"verdict {cert.verdict.value}"))

    elapsed = int(round((time.perf_counter() - start) * 1000))
    return Report(instance_id(pair), certificates, checks, elapsed, {"tol": tol, "seed": seed})
