import numpy as np
import pytest

from opspace import linalg
from opspace.errors import (InputError, NearSingularError,
                            ResourceLimitError)

from conftest import rand_pd


def eigh_opnorm(a):
    """Independent oracle: largest singular value via the Hermitian
    eigendecomposition of a^H a."""
    a = np.asarray(a, dtype=np.complex128)
    return float(np.sqrt(max(np.linalg.eigvalsh(a.conj().T @ a).max(), 0.0)))


class TestOperatorNorm:
    def test_identity(self):
        assert linalg.operator_norm(np.eye(2)) == pytest.approx(1.0)

    def test_diagonal(self):
        assert linalg.operator_norm(np.diag([3.0, -4.0])) == pytest.approx(4.0)

    def test_matches_eigh_oracle(self, rng):
        for _ in range(10):
            a = linalg.complex_gaussian(rng, (5, 5))
            assert linalg.operator_norm(a) == pytest.approx(
                eigh_opnorm(a), rel=1e-10)

    def test_rejects_nonfinite(self):
        with pytest.raises(InputError):
            linalg.operator_norm(np.array([[np.nan, 0], [0, 1]]))
        with pytest.raises(InputError):
            linalg.operator_norm(np.array([[np.inf + 1j, 0], [0, 1]]))

    def test_submultiplicative_and_unitary_invariant(self, rng):
        for _ in range(25):
            a = linalg.complex_gaussian(rng, (4, 4))
            b = linalg.complex_gaussian(rng, (4, 4))
            na, nb = linalg.operator_norm(a), linalg.operator_norm(b)
            assert linalg.operator_norm(a @ b) <= na * nb * (1 + 1e-9)
            q, _ = np.linalg.qr(linalg.complex_gaussian(rng, (4, 4)))
            assert linalg.operator_norm(q @ a) == pytest.approx(na, rel=1e-9)
            assert linalg.operator_norm(a @ q) == pytest.approx(na, rel=1e-9)


class TestKron:
    def test_identities(self):
        assert np.allclose(linalg.kron(np.eye(2), np.eye(3)), np.eye(6))

    def test_unit_bookkeeping(self):
        e11 = np.zeros((2, 2)); e11[0, 0] = 1
        e22 = np.zeros((2, 2)); e22[1, 1] = 1
        out = linalg.kron(e11, e22)
        expect = np.zeros((4, 4)); expect[1, 1] = 1
        assert np.allclose(out, expect)

    def test_norm_multiplicative(self, rng):
        for _ in range(10):
            a = linalg.complex_gaussian(rng, (3, 3))
            b = linalg.complex_gaussian(rng, (3, 3))
            assert linalg.operator_norm(linalg.kron(a, b)) == pytest.approx(
                linalg.operator_norm(a) * linalg.operator_norm(b), rel=1e-9)
            assert linalg.trace_norm(linalg.kron(a, b)) == pytest.approx(
                linalg.trace_norm(a) * linalg.trace_norm(b), rel=1e-9)

    def test_size_cap(self):
        big = np.ones((1, 600))
        with pytest.raises(ResourceLimitError):
            linalg.kron(big, np.ones((600, 600)), max_elements=1 << 20)


class TestConjugations:
    def test_real_fixed_point(self):
        a = np.array([[1.0, 2.0], [3.0, 4.0]])
        assert np.allclose(linalg.conj(a), a)

    def test_adjoint_involution(self, rng):
        a = linalg.complex_gaussian(rng, (3, 4))
        assert np.allclose(linalg.adjoint(linalg.adjoint(a)), a)

    def test_conj_preserves_norm(self, rng):
        for _ in range(10):
            a = linalg.complex_gaussian(rng, (3, 4))
            assert linalg.operator_norm(linalg.conj(a)) == pytest.approx(
                linalg.operator_norm(a), rel=1e-12)
            assert linalg.operator_norm(linalg.transpose(a)) == pytest.approx(
                linalg.operator_norm(a), rel=1e-12)


class TestFractionalPower:
    def test_identity(self):
        assert np.allclose(linalg.fractional_power(np.eye(3), 0.37), np.eye(3))

    def test_commuting_diagonal(self):
        out = linalg.fractional_power(np.diag([4.0, 9.0]), 0.5)
        assert np.allclose(out, np.diag([2.0, 3.0]), atol=1e-12)

    def test_diagonal_exact_and_monotone(self):
        d = np.array([0.5, 1.0, 7.0])
        prev = None
        for t in np.linspace(0.0, 1.0, 9):
            out = np.diag(linalg.fractional_power(np.diag(d), t)).real
            assert out == pytest.approx(d ** t, rel=1e-12)
            if prev is not None:
                moved = out - prev
                assert np.all(moved * np.sign(np.log(d)) >= -1e-12)
            prev = out

    def test_square_root_reconstructs(self, rng):
        for _ in range(10):
            g = rand_pd(rng, 4)
            r = linalg.fractional_power(g, 0.5)
            assert np.allclose(r @ r, g, atol=1e-10 * np.linalg.norm(g))

    def test_near_singular_rejected(self):
        g = np.diag([1.0, 1e-14])
        with pytest.raises(NearSingularError):
            linalg.fractional_power(g, 0.5)

    def test_bad_exponent(self):
        with pytest.raises(InputError):
            linalg.fractional_power(np.eye(2), 1.5)

    def test_non_hermitian_rejected(self, rng):
        with pytest.raises(InputError):
            linalg.fractional_power(linalg.complex_gaussian(rng, (3, 3)), 0.5)


class TestGeometricMean:
    def test_idempotent(self, rng):
        g = rand_pd(rng, 3)
        assert np.allclose(linalg.geometric_mean(g, g, 0.3), g, atol=1e-10)

    def test_commuting_case(self):
        out = linalg.geometric_mean(np.eye(2), np.diag([4.0, 9.0]), 0.5)
        assert np.allclose(out, np.diag([2.0, 3.0]), atol=1e-10)

    def test_congruence_invariance(self, rng):
        for _ in range(5):
            g0, g1 = rand_pd(rng, 3), rand_pd(rng, 3)
            m = linalg.complex_gaussian(rng, (3, 3)) + 2 * np.eye(3)
            lhs = m.conj().T @ linalg.geometric_mean(g0, g1, 0.4) @ m
            rhs = linalg.geometric_mean(m.conj().T @ g0 @ m,
                                        m.conj().T @ g1 @ m, 0.4)
            assert np.allclose(lhs, rhs, atol=1e-8 * np.linalg.norm(lhs))

    def test_symmetric_at_midpoint(self, rng):
        for _ in range(100):
            d = int(rng.integers(2, 7))
            g0, g1 = rand_pd(rng, d), rand_pd(rng, d)
            ab = linalg.geometric_mean(g0, g1, 0.5)
            ba = linalg.geometric_mean(g1, g0, 0.5)
            assert np.allclose(ab, ba, atol=1e-9 * max(1, np.linalg.norm(ab)))

    def test_dimension_mismatch(self, rng):
        with pytest.raises(Exception):
            linalg.geometric_mean(rand_pd(rng, 2), rand_pd(rng, 3), 0.5)


class TestTraceNorm:
    def test_rank_one(self, rng):
        u = linalg.complex_gaussian(rng, 4)
        v = linalg.complex_gaussian(rng, 3)
        a = np.outer(u, v.conj())
        assert linalg.trace_norm(a) == pytest.approx(
            np.linalg.norm(u) * np.linalg.norm(v), rel=1e-10)

    def test_identity(self):
        assert linalg.trace_norm(np.eye(5)) == pytest.approx(5.0)

    def test_majorizes_operator_norm(self, rng):
        for _ in range(10):
            a = linalg.complex_gaussian(rng, (4, 5))
            assert linalg.trace_norm(a) >= linalg.operator_norm(a) - 1e-12

    def test_duality_sampled_sup(self, rng):
        a = linalg.complex_gaussian(rng, (3, 3))
        tn = linalg.trace_norm(a)
        # sampled sup of |tr(b^H a)| over contractions b stays below the norm
        best = 0.0
        for _ in range(300):
            b = linalg.complex_gaussian(rng, (3, 3))
            b = b / linalg.operator_norm(b)
            best = max(best, abs(np.trace(b.conj().T @ a)))
        assert best <= tn + 1e-9
        # the polar factor witnesses equality
        u, s, vh = np.linalg.svd(a)
        w = u @ vh
        assert abs(np.trace(w.conj().T @ a)) == pytest.approx(tn, rel=1e-10)
