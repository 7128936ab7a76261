"""
Brute-force witnesses that never go through the assembled frame operator.

These back the tests and the suite runner: sampled Rayleigh quotients give
inner estimates of spectral bounds, and the mixed frame sum is evaluated
item by item.
"""

from dataclasses import dataclass

import numpy as np

from .numkernel import as_vector, require_square


@dataclass(frozen=True)
class SampledBounds:
    min_seen: float
    max_seen: float
    samples: int
    seed: int


def random_unit_vectors(dim, samples, rng):
    """Rows are unit vectors drawn from the normalized complex Gaussian."""
    z = rng.standard_normal((samples, dim)) + 1j * rng.standard_normal((samples, dim))
    return z / np.linalg.norm(z, axis=1, keepdims=True)


def sample_quadratic_form(m, samples, seed):
    """Min and max of Re<M f, f> over ``samples`` random unit vectors."""
    m = require_square(m, "M")
    if samples < 1:
        raise ValueError("samples must be at least 1")
    rng = np.random.default_rng(seed)
    fs = random_unit_vectors(m.shape[0], samples, rng)
    # <M f, f> = f^H M f for each row f
    values = np.einsum("si,ij,sj->s", fs.conj(), m, fs).real
    return SampledBounds(float(values.min()), float(values.max()), samples, seed)


def direct_bi_sum(pair, f):
    """sum_i v_i^2 <Lambda_i P_{V_i} f, Gamma_i P_{W_i} f>, summed last item first."""
    f = as_vector(f, pair.ambient_dim, "f")
    total = 0j
    items = list(zip(pair.lambda_sys.items, pair.gamma_sys.items))
    for a, b in reversed(items):
        pa = a.subspace.basis @ (a.subspace.basis.conj().T @ f)
        pb = b.subspace.basis @ (b.subspace.basis.conj().T @ f)
        total += a.weight**2 * np.vdot(b.operator @ pb, a.operator @ pa)
    return complex(total)


def direct_gfusion_sum(sys, f):
    """sum_i v_i^2 ||Lambda_i P_{V_i} f||^2."""
    f = as_vector(f, sys.ambient_dim, "f")
    total = 0.0
    for it in reversed(sys.items):
        pf = it.subspace.basis @ (it.subspace.basis.conj().T @ f)
        total += it.weight**2 * float(np.linalg.norm(it.operator @ pf) ** 2)
    return total
