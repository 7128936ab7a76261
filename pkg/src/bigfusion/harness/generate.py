"""Seeded random instances."""

from dataclasses import dataclass

import numpy as np

from ..bifusion import BiGFusionPair
from ..errors import InvalidSpec
from ..gfusion import GFusionItem, GFusionSystem
from ..numkernel import orthonormalize
from ..subspace import Subspace

PAIR_MODES = ("coincident", "hermitian-compatible", "general")
_MODE_ALIASES = {"hermitian": "hermitian-compatible"}


def normalize_mode(mode):
    mode = _MODE_ALIASES.get(mode, mode)
    if mode not in PAIR_MODES:
        raise InvalidSpec(f"unknown pair mode {mode!r}; expected one of {PAIR_MODES}")
    return mode


@dataclass(frozen=True)
class InstanceSpec:
    ambient_dim: int
    item_count: int
    codomain_dims: tuple
    subspace_dims: tuple
    weight_range: tuple = (0.5, 2.0)
    seed: int = 0
    pair_mode: str = "hermitian-compatible"

    def __post_init__(self):
        object.__setattr__(self, "codomain_dims", tuple(int(d) for d in self.codomain_dims))
        object.__setattr__(self, "subspace_dims", tuple(int(k) for k in self.subspace_dims))
        object.__setattr__(self, "weight_range", tuple(float(w) for w in self.weight_range))
        object.__setattr__(self, "pair_mode", normalize_mode(self.pair_mode))
        n, count = self.ambient_dim, self.item_count
        if n < 1 or count < 1:
            raise InvalidSpec("ambient_dim and item_count must be positive")
        if len(self.codomain_dims) != count or len(self.subspace_dims) != count:
            raise InvalidSpec("codomain_dims and subspace_dims need one entry per item")
        if any(d < 1 for d in self.codomain_dims):
            raise InvalidSpec("codomain dimensions must be positive")
        if any(not 1 <= k <= n for k in self.subspace_dims):
            raise InvalidSpec(f"subspace dimensions must lie in [1, {n}]")
        lo, hi = self.weight_range
        if not 0 < lo <= hi:
            raise InvalidSpec(f"weight_range must satisfy 0 < lo <= hi, got {self.weight_range}")
        if not 0 <= self.seed < 2**64:
            raise InvalidSpec("seed must be a 64-bit unsigned integer")


def _gaussian(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_unitary(dim, rng):
    """Haar-distributed unitary via QR of a complex Gaussian matrix."""
    q, r = np.linalg.qr(_gaussian(rng, (dim, dim)))
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_invertible(dim, rng, singular_range=(0.5, 2.0)):
    """U = Q1 diag(s) Q2 with Haar Q1, Q2 and singular values drawn from ``singular_range``."""
    s = rng.uniform(*singular_range, size=dim)
    return (random_unitary(dim, rng) * s) @ random_unitary(dim, rng)


def _random_subspace(rng, n, k):
    return Subspace(orthonormalize(_gaussian(rng, (n, k))))


def _hermitian_positive(rng, d):
    b = _gaussian(rng, (d, d))
    return b @ b.conj().T / d + 0.5 * np.eye(d)


def generate(spec):
    """Build a pair from ``spec``; the same spec always gives bit-identical arrays."""
    rng = np.random.default_rng(spec.seed)
    n = spec.ambient_dim
    weights = rng.uniform(*spec.weight_range, size=spec.item_count)
    lam = []
    for k, d, w in zip(spec.subspace_dims, spec.codomain_dims, weights):
        lam.append(GFusionItem(_random_subspace(rng, n, k), _gaussian(rng, (d, n)), w))
    lam_sys = GFusionSystem(n, tuple(lam))

    if spec.pair_mode == "coincident":
        return BiGFusionPair(lam_sys, lam_sys)
    if spec.pair_mode == "hermitian-compatible":
        gam = [
            GFusionItem(
                it.subspace, _hermitian_positive(rng, it.codomain_dim) @ it.operator, it.weight
            )
            for it in lam
        ]
    else:
        gam = [
            GFusionItem(
                _random_subspace(rng, n, it.subspace.dim),
                _gaussian(rng, (it.codomain_dim, n)),
                it.weight,
            )
            for it in lam
        ]
    return BiGFusionPair(lam_sys, GFusionSystem(n, tuple(gam)))


def draw_spec(
    seed,
    mode="hermitian-compatible",
    dims=(2, 8),
    items=(2, 6),
    ambient_dim=None,
    item_count=None,
    redundancy=1,
):
    """Random spec whose items jointly cover the space.

    Dimensions are redrawn until sum_i min(k_i, d_i) >= n + redundancy, which
    is what a generic instance needs for its frame operator to be invertible.
    """
    rng = np.random.default_rng([seed, 0x5EED])
    n = ambient_dim if ambient_dim is not None else int(rng.integers(dims[0], dims[1] + 1))
    count = item_count if item_count is not None else int(rng.integers(items[0], items[1] + 1))
    target = min(n + redundancy, count * n)
    for _ in range(100):
        ks = rng.integers(1, n + 1, size=count)
        ds = rng.integers(1, n + 1, size=count)
        if int(np.minimum(ks, ds).sum()) >= target:
            break
    else:
        ks = ds = np.full(count, n)
    return InstanceSpec(n, count, tuple(ds), tuple(ks), seed=seed, pair_mode=mode)
