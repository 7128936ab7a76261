import numpy as np
import pytest

from bigfusion.bifusion import BiGFusionPair, bi_frame_operator, certify_bi_gfusion
from bigfusion.errors import NotAFrame, SingularFactor, SingularOperator
from bigfusion.gfusion import GFusionSystem, Verdict
from bigfusion.harness import random_invertible
from bigfusion.numkernel import operator_norm, smallest_singular_value, spectral_interval
from bigfusion.subspace import Subspace, projector
from bigfusion.tensorframe import (
    certify_tensor,
    tensor_frame_operator_factorization,
    tensor_inverse_factorization,
    tensor_loewner_check,
    tensor_pair,
    tensor_transport,
)

from conftest import diagonal_system, random_pair, unit


def identity_pair(n):
    sys = GFusionSystem.from_lists([Subspace.full(n)], [np.eye(n)], [1.0])
    return BiGFusionPair.coincident(sys)


def diag_pair(weights):
    return BiGFusionPair.coincident(diagonal_system(weights))


def frame_factor(seed, **kw):
    while True:
        p = random_pair(seed, "hermitian-compatible", **kw)
        if certify_bi_gfusion(p).is_frame:
            return p
        seed += 10_000


def random_tensor(seed, mode="hermitian-compatible"):
    left = random_pair(seed, mode, dims=(2, 3), items=(2, 3))
    right = random_pair(seed + 1, mode, dims=(2, 3), items=(2, 3))
    return tensor_pair(left, right)


class TestConstruction:
    def test_identity_factors(self):
        tp = tensor_pair(identity_pair(2), identity_pair(3))
        (item,) = tp.assembled.lambda_sys.items
        assert tp.assembled.ambient_dim == 6
        np.testing.assert_array_equal(item.operator, np.eye(6))
        assert item.subspace.dim == 6 and item.weight == 1.0

    def test_projectors_factor(self):
        for seed in range(5):
            tp = random_tensor(seed, "general")
            left, right = tp.left.lambda_sys.items, tp.right.lambda_sys.items
            for k, item in enumerate(tp.assembled.lambda_sys.items):
                a, b = left[k // len(right)], right[k % len(right)]
                expected = np.kron(projector(a.subspace), projector(b.subspace))
                assert np.abs(projector(item.subspace) - expected).max() <= 1e-12
                np.testing.assert_array_equal(item.operator, np.kron(a.operator, b.operator))
                assert item.weight == a.weight * b.weight

    def test_item_count(self):
        for seed in range(5):
            tp = random_tensor(seed)
            assert len(tp.assembled) == len(tp.left) * len(tp.right)


class TestCertify:
    def test_parseval(self):
        certs = certify_tensor(tensor_pair(diag_pair([1, 1]), diag_pair([1, 1, 1])))
        assert certs.assembled.lower == pytest.approx(1, abs=1e-12)
        assert certs.assembled.upper == pytest.approx(1, abs=1e-12)

    def test_diagonal_products(self):
        # bounds (1, 4) and (2, 2)
        s2 = np.sqrt(2)
        certs = certify_tensor(tensor_pair(diag_pair([2, 1]), diag_pair([s2, s2])))
        assert certs.assembled.lower == pytest.approx(2, abs=1e-9)
        assert certs.assembled.upper == pytest.approx(8, abs=1e-9)

    def test_random_envelope_both_directions(self):
        for seed in range(10):
            tp = random_tensor(seed)
            certs = certify_tensor(tp)
            if certs.left.is_frame and certs.right.is_frame:
                assert certs.assembled.is_frame
                assert certs.assembled.lower >= certs.left.lower * certs.right.lower - 1e-9
                assert certs.assembled.upper <= certs.left.upper * certs.right.upper + 1e-9
            if certs.assembled.is_frame:
                assert certs.left.is_frame and certs.right.is_frame

    def test_hermitian_deviation_bound(self):
        for seed in range(10):
            tp = random_tensor(seed, "general")
            certs = certify_tensor(tp)
            s_l, s_r = bi_frame_operator(tp.left), bi_frame_operator(tp.right)
            # deviations here are half-norms of the skew parts
            bound = 2 * (
                certs.left.hermitian_deviation * operator_norm(s_r)
                + operator_norm(s_l) * certs.right.hermitian_deviation
            )
            assert 2 * certs.assembled.hermitian_deviation <= bound + 1e-10


class TestFactorization:
    def test_identity(self):
        fac = tensor_frame_operator_factorization(tensor_pair(identity_pair(2), identity_pair(2)))
        assert fac.error == 0.0
        np.testing.assert_array_equal(fac.assembled, np.eye(4))

    def test_diagonal(self):
        s2 = np.sqrt(2)
        fac = tensor_frame_operator_factorization(tensor_pair(diag_pair([2, 1]), diag_pair([s2, s2])))
        assert np.abs(fac.kronecker - np.diag([8, 8, 2, 2])).max() <= 1e-12
        assert fac.error <= 1e-12

    def test_random(self):
        for seed in range(10):
            left = random_pair(seed, "general", ambient_dim=3)
            right = random_pair(seed + 100, "general", ambient_dim=2)
            fac = tensor_frame_operator_factorization(tensor_pair(left, right))
            assert fac.error <= 1e-10 * (1 + operator_norm(fac.assembled))

    def test_quadratic_form_on_simple_tensors(self, rng):
        for seed in range(5):
            tp = random_tensor(seed, "general")
            s = bi_frame_operator(tp.assembled)
            s_l, s_r = bi_frame_operator(tp.left), bi_frame_operator(tp.right)
            for _ in range(20):
                f, g = unit(rng, tp.left.ambient_dim), unit(rng, tp.right.ambient_dim)
                fg = np.kron(f, g)
                lhs = np.vdot(fg, s @ fg)
                rhs = np.vdot(f, s_l @ f) * np.vdot(g, s_r @ g)
                assert abs(lhs - rhs) <= 1e-9

    def test_spectrum_is_pairwise_products(self):
        for seed in range(5):
            tp = random_tensor(seed)
            s_l, s_r = bi_frame_operator(tp.left), bi_frame_operator(tp.right)
            herm = lambda m: (m + m.conj().T) / 2  # noqa: E731
            products = np.sort(np.outer(np.linalg.eigvalsh(herm(s_l)), np.linalg.eigvalsh(herm(s_r))).ravel())
            got = np.linalg.eigvalsh(herm(bi_frame_operator(tp.assembled)))
            assert np.abs(got - products).max() <= 1e-9


class TestInverseFactorization:
    def test_identity(self):
        assert tensor_inverse_factorization(tensor_pair(identity_pair(2), identity_pair(3))) == 0.0

    def test_diagonal(self):
        s2 = np.sqrt(2)
        tp = tensor_pair(diag_pair([2, 1]), diag_pair([s2, s2]))
        assert tensor_inverse_factorization(tp) <= 1e-12

    def test_random(self):
        for seed in range(10):
            tp = tensor_pair(frame_factor(seed, ambient_dim=3), frame_factor(seed + 50, ambient_dim=2))
            assert tensor_inverse_factorization(tp) <= 1e-9

    def test_singular_factor(self):
        v = Subspace(np.eye(2)[:, [0]])
        bad = BiGFusionPair.coincident(GFusionSystem.from_lists([v], [np.eye(2)], [1.0]))
        with pytest.raises(SingularFactor):
            tensor_inverse_factorization(tensor_pair(identity_pair(2), bad))


class TestLoewner:
    def test_parseval(self):
        check = tensor_loewner_check(tensor_pair(diag_pair([1, 1]), diag_pair([1, 1])))
        assert check.lo == pytest.approx(1, abs=1e-12) and check.hi == pytest.approx(1, abs=1e-12)
        assert check.holds

    def test_diagonal(self):
        s2 = np.sqrt(2)
        check = tensor_loewner_check(tensor_pair(diag_pair([2, 1]), diag_pair([s2, s2])))
        assert check.holds
        assert check.lower_product == pytest.approx(2) and check.upper_product == pytest.approx(8)
        assert 2 - 1e-9 <= check.lo and check.hi <= 8 + 1e-9

    def test_random_endpoints_are_products(self):
        for seed in range(10):
            tp = tensor_pair(frame_factor(seed), frame_factor(seed + 50))
            check = tensor_loewner_check(tp)
            assert check.holds
            assert abs(check.lo - check.lower_product) <= 1e-9
            assert abs(check.hi - check.upper_product) <= 1e-9

    def test_requires_frames(self):
        sys = diagonal_system([1, 1])
        neg = GFusionSystem.from_lists(
            [it.subspace for it in sys.items], [-np.eye(2)] * 2, [1.0, 1.0]
        )
        with pytest.raises(NotAFrame):
            tensor_loewner_check(tensor_pair(identity_pair(2), BiGFusionPair(sys, neg)))


class TestTransport:
    def test_identity(self):
        tp = tensor_pair(frame_factor(1), frame_factor(2))
        n, m = tp.left.ambient_dim, tp.right.ambient_dim
        moved = tensor_transport(tp, np.eye(n), np.eye(m))
        for a, b in zip(certify_tensor(tp), certify_tensor(moved)):
            assert abs(a.lower - b.lower) <= 1e-12 and abs(a.upper - b.upper) <= 1e-12

    def test_scalar_controllers(self):
        tp = tensor_pair(diag_pair([1, 1]), diag_pair([1, 1, 1]))
        certs = certify_tensor(tensor_transport(tp, 2 * np.eye(2), 3 * np.eye(3)))
        assert certs.assembled.lower == pytest.approx(36, abs=1e-9)
        assert certs.assembled.upper == pytest.approx(36, abs=1e-9)

    def test_commutes_with_factorwise_transport(self, rng):
        for seed in range(5):
            tp = tensor_pair(frame_factor(seed, ambient_dim=3), frame_factor(seed + 50, ambient_dim=2))
            u1, u2 = random_invertible(3, rng), random_invertible(2, rng)
            moved = tensor_transport(tp, u1, u2)
            rebuilt = tensor_pair(moved.left, moved.right).assembled
            s_a, s_b = bi_frame_operator(moved.assembled), bi_frame_operator(rebuilt)
            assert operator_norm(s_a - s_b) <= 1e-9 * (1 + operator_norm(s_a))
            ca, cb = certify_bi_gfusion(moved.assembled), certify_bi_gfusion(rebuilt)
            assert abs(ca.lower - cb.lower) <= 1e-9 and abs(ca.upper - cb.upper) <= 1e-9

    def test_envelope(self, rng):
        for seed in range(5):
            tp = tensor_pair(frame_factor(seed), frame_factor(seed + 50))
            n, m = tp.left.ambient_dim, tp.right.ambient_dim
            u1, u2 = random_invertible(n, rng), random_invertible(m, rng)
            u = np.kron(u1, u2)
            base = certify_tensor(tp)
            ac = base.left.lower * base.right.lower
            bd = base.left.upper * base.right.upper
            moved = certify_bi_gfusion(tensor_transport(tp, u1, u2).assembled)
            assert moved.lower >= ac * smallest_singular_value(u) ** 2 - 1e-9
            assert moved.upper <= bd * operator_norm(u) ** 2 + 1e-9

    def test_singular(self):
        tp = tensor_pair(identity_pair(2), identity_pair(2))
        with pytest.raises(SingularOperator):
            tensor_transport(tp, np.eye(2), np.zeros((2, 2)))

    def test_assembled_interval_is_spectral(self):
        tp = tensor_pair(frame_factor(3), frame_factor(4))
        lo, hi, _ = spectral_interval(bi_frame_operator(tp.assembled))
        c = certify_tensor(tp).assembled
        assert (c.lower, c.upper) == (lo, hi)
        assert c.verdict is Verdict.FRAME
