import numpy as np
import pytest

from bigfusion.bifusion import BiGFusionPair, bi_frame_operator
from bigfusion.errors import DimensionMismatch, NonSquare
from bigfusion.gfusion import frame_operator
from bigfusion.oracle import (
    direct_bi_sum,
    direct_gfusion_sum,
    random_unit_vectors,
    sample_quadratic_form,
)

from conftest import cgauss, random_pair


def test_unit_vectors(rng):
    vs = random_unit_vectors(4, 100, rng)
    assert vs.shape == (100, 4)
    np.testing.assert_allclose(np.linalg.norm(vs, axis=1), 1.0, atol=1e-14)


class TestSampling:
    def test_identity(self):
        b = sample_quadratic_form(np.eye(3), 500, seed=0)
        assert b.min_seen == pytest.approx(1, abs=1e-14)
        assert b.max_seen == pytest.approx(1, abs=1e-14)

    def test_diagonal_brackets(self):
        b = sample_quadratic_form(np.diag([1.0, 4.0]), 10_000, seed=1)
        assert 1.0 <= b.min_seen <= 1.2
        assert 3.8 <= b.max_seen <= 4.0

    def test_deterministic(self):
        m = cgauss(np.random.default_rng(3), 4, 4)
        assert sample_quadratic_form(m, 1000, seed=9) == sample_quadratic_form(m, 1000, seed=9)

    def test_inner_estimate(self, rng):
        for _ in range(5):
            a = cgauss(rng, 5, 5)
            h = (a + a.conj().T) / 2
            w = np.linalg.eigvalsh(h)
            b = sample_quadratic_form(h, 2000, seed=int(rng.integers(1000)))
            assert w[0] - 1e-12 <= b.min_seen and b.max_seen <= w[-1] + 1e-12

    def test_bad_input(self):
        with pytest.raises(NonSquare):
            sample_quadratic_form(np.ones((2, 3)), 10, seed=0)
        with pytest.raises(ValueError):
            sample_quadratic_form(np.eye(2), 0, seed=0)


class TestDirectSums:
    def test_zero_vector(self):
        p = random_pair(0, "general")
        assert direct_bi_sum(p, np.zeros(p.ambient_dim)) == 0

    def test_quadratic_scaling(self, rng):
        p = random_pair(1, "general")
        f = cgauss(rng, p.ambient_dim)
        c = 0.7 - 1.3j
        assert direct_bi_sum(p, c * f) == pytest.approx(abs(c) ** 2 * direct_bi_sum(p, f), rel=1e-12)

    def test_matches_assembled_operator(self, rng):
        for seed in range(20):
            p = random_pair(seed, "general")
            s = bi_frame_operator(p)
            f = cgauss(rng, p.ambient_dim)
            assert abs(np.vdot(f, s @ f) - direct_bi_sum(p, f)) <= 1e-11 * (1 + np.linalg.norm(f) ** 2 * np.linalg.norm(s, 2))

    def test_gfusion_sum(self, rng):
        sys = random_pair(2, "coincident").lambda_sys
        f = cgauss(rng, sys.ambient_dim)
        direct = direct_gfusion_sum(sys, f)
        assert direct == pytest.approx(np.vdot(f, frame_operator(sys) @ f).real, rel=1e-11)
        assert direct_bi_sum(BiGFusionPair.coincident(sys), f) == pytest.approx(direct, rel=1e-11)

    def test_wrong_length(self):
        p = random_pair(3, "general")
        with pytest.raises(DimensionMismatch):
            direct_bi_sum(p, np.zeros(p.ambient_dim + 1))
