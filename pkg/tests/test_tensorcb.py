import numpy as np
import pytest

from opspace import linalg, spaces, tensorcb
from opspace.errors import (InfeasibleRankError, InputError,
                            UnsupportedStructureError)
from opspace.params import SolverParams

FAST = SolverParams(restarts=8, max_iter=50, seed=0)


def oh_pair(m, n):
    return spaces.OHSpace(m), spaces.OHSpace(n)


class TestRepresentationTypes:
    def test_tensor_element_shape_check(self, rng):
        e, f = oh_pair(2, 3)
        with pytest.raises(Exception):
            tensorcb.TensorElement(e, f, np.eye(2))

    def test_representation_residual(self, rng):
        u = linalg.complex_gaussian(rng, (2, 2))
        x = linalg.complex_gaussian(rng, (2, 2))
        rep = tensorcb.Representation(x, np.linalg.solve(x, u).T)
        rep.check(u)
        bad = tensorcb.Representation(x, x)
        with pytest.raises(InputError):
            bad.check(u)

    def test_rank_too_small(self, rng):
        e, f = oh_pair(2, 2)
        u = np.eye(2, dtype=complex)
        with pytest.raises(InfeasibleRankError):
            tensorcb.oh_tensor_norm_ub(tensorcb.TensorElement(e, f, u), r=1)


class TestOhTensorNorm:
    def test_rank_one_unit(self):
        e, f = oh_pair(2, 2)
        u = np.zeros((2, 2), dtype=complex)
        u[0, 0] = 1.0
        val, rep = tensorcb.oh_tensor_norm_ub(
            tensorcb.TensorElement(e, f, u), solver=FAST)
        # pairing lower bound 1 and the trivial representation both give 1
        assert val == pytest.approx(1.0, abs=1e-6)
        assert rep.residual(u) <= 1e-10

    def test_scalar_homogeneous(self):
        e, f = oh_pair(1, 1)
        u = np.array([[5.0 + 0j]])
        val, _ = tensorcb.oh_tensor_norm_ub(
            tensorcb.TensorElement(e, f, u), solver=FAST)
        assert val == pytest.approx(5.0, rel=1e-9)

    def test_matches_operator_norm_oracle(self, rng):
        # factorization closed form on the self-dual structures: the true
        # infimum is the operator norm of the coefficients
        for d in (2, 3):
            e, f = oh_pair(d, d)
            for i in range(6):
                u = linalg.complex_gaussian(rng, (d, d))
                val, rep = tensorcb.oh_tensor_norm_ub(
                    tensorcb.TensorElement(e, f, u), solver=FAST)
                op = linalg.operator_norm(u)
                assert val >= op - 1e-9
                assert val <= 1.03 * op
                assert rep.residual(u) <= 1e-8 * np.linalg.norm(u)

    def test_pairing_lower_bound(self, rng):
        # |<B, U>| <= trace_norm(B) * value for the self-dual structures
        e, f = oh_pair(3, 3)
        for _ in range(20):
            u = linalg.complex_gaussian(rng, (3, 3))
            val, _ = tensorcb.oh_tensor_norm_ub(
                tensorcb.TensorElement(e, f, u), solver=FAST)
            b = linalg.complex_gaussian(rng, (3, 3))
            assert abs(np.sum(b * u)) <= linalg.trace_norm(b) * val + 1e-9

    def test_subadditive_with_concatenated_seeds(self, rng):
        e, f = oh_pair(3, 3)
        u = linalg.complex_gaussian(rng, (3, 3))
        v = linalg.complex_gaussian(rng, (3, 3))
        val_u, rep_u = tensorcb.oh_tensor_norm_ub(
            tensorcb.TensorElement(e, f, u), solver=FAST)
        val_v, rep_v = tensorcb.oh_tensor_norm_ub(
            tensorcb.TensorElement(e, f, v), solver=FAST)
        concat = tensorcb.Representation(
            np.hstack([rep_u.X, rep_v.X]), np.hstack([rep_u.Y, rep_v.Y]))
        val_sum, _ = tensorcb.oh_tensor_norm_ub(
            tensorcb.TensorElement(e, f, u + v), r=concat.rank,
            solver=FAST, extra_seeds=[concat])
        # the concatenated representation is evaluated directly, but its
        # factor product can exceed the triangle bound; the sum of the
        # separate values is itself an upper bound the search may beat
        assert val_sum <= val_u + val_v + 1e-6

    def test_homogeneity(self, rng):
        e, f = oh_pair(2, 2)
        u = linalg.complex_gaussian(rng, (2, 2))
        val, _ = tensorcb.oh_tensor_norm_ub(
            tensorcb.TensorElement(e, f, u), solver=FAST)
        val2, _ = tensorcb.oh_tensor_norm_ub(
            tensorcb.TensorElement(e, f, 2.5 * u), solver=FAST)
        assert val2 == pytest.approx(2.5 * val, rel=1e-4)

    def test_raised_rank_no_worse(self, rng):
        e, f = oh_pair(2, 2)
        u = linalg.complex_gaussian(rng, (2, 2))
        val, _ = tensorcb.oh_tensor_norm_ub(
            tensorcb.TensorElement(e, f, u), solver=FAST)
        val_hi, _ = tensorcb.oh_tensor_norm_ub(
            tensorcb.TensorElement(e, f, u), r=4, solver=FAST)
        assert val_hi <= val + 1e-6


class TestHaagerupNorm:
    def test_rank_one_feasibility(self, rng):
        e = spaces.RowSpace(3)
        f = spaces.ColumnSpace(2)
        x = linalg.complex_gaussian(rng, 3)
        y = linalg.complex_gaussian(rng, 2)
        u = np.outer(x, y)
        val, _ = tensorcb.haagerup_norm_ub(
            tensorcb.TensorElement(e, f, u), solver=FAST)
        cap = (e.level_norm(x.reshape(3, 1, 1))
               * f.level_norm(y.reshape(2, 1, 1)))
        assert val <= cap + 1e-9

    def test_scalar(self):
        e, f = oh_pair(1, 1)
        u = np.array([[2.0 - 1.0j]])
        val, _ = tensorcb.haagerup_norm_ub(
            tensorcb.TensorElement(e, f, u), solver=FAST)
        assert val == pytest.approx(abs(u[0, 0]), rel=1e-9)

    def test_frobenius_oracle_on_self_dual(self, rng):
        # the product identity collapses the norm to the Euclidean norm of
        # the coefficients at the scalar level
        e, f = oh_pair(2, 2)
        for i in range(10):
            u = linalg.complex_gaussian(rng, (2, 2))
            val, _ = tensorcb.haagerup_norm_ub(
                tensorcb.TensorElement(e, f, u), solver=FAST)
            fro = float(np.linalg.norm(u))
            assert fro - 1e-9 <= val <= 1.03 * fro

    def test_unitary_scaled(self, rng):
        e, f = oh_pair(2, 2)
        q, _ = np.linalg.qr(linalg.complex_gaussian(rng, (2, 2)))
        u = 1.7 * q
        val, _ = tensorcb.haagerup_norm_ub(
            tensorcb.TensorElement(e, f, u), solver=FAST)
        assert val == pytest.approx(np.linalg.norm(u), rel=0.03)

    def test_pairing_lower_bound(self, rng):
        e, f = oh_pair(2, 2)
        for _ in range(20):
            u = linalg.complex_gaussian(rng, (2, 2))
            val, _ = tensorcb.haagerup_norm_ub(
                tensorcb.TensorElement(e, f, u), solver=FAST)
            b = linalg.complex_gaussian(rng, (2, 2))
            assert abs(np.sum(b * u)) <= np.linalg.norm(b) * val + 1e-9


class TestCbLevels:
    def test_identity_map(self):
        oh = spaces.OHSpace(3)
        cm = tensorcb.CoeffMap(oh, oh, np.eye(3))
        for k in (1, 2, 3):
            assert tensorcb.cb_level_lower(cm, k, FAST) == pytest.approx(
                1.0, abs=1e-9)

    def test_scaling_map(self):
        oh = spaces.OHSpace(2)
        cm = tensorcb.CoeffMap(oh, oh, 2.0 * np.eye(2))
        assert tensorcb.cb_level_lower(cm, 2, FAST) == pytest.approx(
            2.0, abs=1e-9)

    def test_rank_one_map(self, rng):
        oh = spaces.OHSpace(3)
        m = np.outer(linalg.complex_gaussian(rng, 3),
                     linalg.complex_gaussian(rng, 3))
        cm = tensorcb.CoeffMap(oh, oh, m)
        op = linalg.operator_norm(m)
        for k in (1, 2, 3):
            assert tensorcb.cb_level_lower(cm, k, FAST) == pytest.approx(
                op, abs=1e-6 * max(1, op))

    def test_levels_match_operator_norm(self, rng):
        oh = spaces.OHSpace(3)
        for i in range(5):
            m = linalg.complex_gaussian(rng, (3, 3))
            cm = tensorcb.CoeffMap(oh, oh, m)
            op = linalg.operator_norm(m)
            vals = [tensorcb.cb_level_lower(cm, k, FAST) for k in (1, 2, 3)]
            for v in vals:
                assert abs(v - op) <= 1e-6
            # monotone nondecreasing by construction
            assert vals[0] <= vals[1] + 1e-12 <= vals[2] + 2e-12

    def test_monotone_on_concrete_maps(self, rng):
        units = spaces.matrix_units(2)
        m = linalg.complex_gaussian(rng, (4, 4))
        cm = tensorcb.CoeffMap(units, units, m)
        vals = [tensorcb.cb_level_lower(
            cm, k, SolverParams(max_iter=80, restarts=6, seed=3))
            for k in (1, 2, 3)]
        assert vals[0] <= vals[1] + 1e-9
        assert vals[1] <= vals[2] + 1e-9

    def test_exact_requires_oh(self):
        units = spaces.matrix_units(2)
        cm = tensorcb.CoeffMap(units, units, np.eye(4))
        with pytest.raises(UnsupportedStructureError):
            tensorcb.cb_norm_oh_exact(cm)

    def test_exact_examples(self, rng):
        oh = spaces.OHSpace(3)
        assert tensorcb.cb_norm_oh_exact(
            tensorcb.CoeffMap(oh, oh, np.eye(3))) == pytest.approx(1.0)
        assert tensorcb.cb_norm_oh_exact(
            tensorcb.CoeffMap(oh, oh, np.diag([1.0, 2.0, 3.0]))) \
            == pytest.approx(3.0)
        m = linalg.complex_gaussian(rng, (3, 3))
        cm = tensorcb.CoeffMap(oh, oh, m)
        sup = max(tensorcb.cb_level_lower(cm, k, FAST) for k in (1, 2, 3))
        assert tensorcb.cb_norm_oh_exact(cm) == pytest.approx(sup, abs=1e-6)


class TestPhiMap:
    def test_identity_tensor(self):
        units = spaces.matrix_units(2)
        u = np.zeros((4, 4), dtype=complex)
        for a in range(2):
            for b in range(2):
                u[a * 2 + a, b * 2 + b] = 1.0
        pm = tensorcb.phi_map(tensorcb.TensorElement(units, units, u))
        assert np.allclose(pm.M, np.eye(4))

    def test_rank_one_compression(self):
        units = spaces.matrix_units(2)
        u = np.zeros((4, 4), dtype=complex)
        u[0, 0] = 1.0  # e11 (x) e11
        pm = tensorcb.phi_map(tensorcb.TensorElement(units, units, u))
        e11 = np.zeros((2, 2), dtype=complex)
        e11[0, 0] = 1.0
        for _ in range(5):
            a = np.arange(4, dtype=complex).reshape(2, 2) + 1
            out = (pm.M @ a.reshape(-1)).reshape(2, 2)
            assert np.allclose(out, e11 @ a @ e11)

    def test_linear(self, rng):
        units = spaces.matrix_units(2)
        u = linalg.complex_gaussian(rng, (4, 4))
        v = linalg.complex_gaussian(rng, (4, 4))
        pm_sum = tensorcb.phi_map(
            tensorcb.TensorElement(units, units, 2.0 * u + 3.0 * v))
        pm_u = tensorcb.phi_map(tensorcb.TensorElement(units, units, u))
        pm_v = tensorcb.phi_map(tensorcb.TensorElement(units, units, v))
        assert np.allclose(pm_sum.M, 2.0 * pm_u.M + 3.0 * pm_v.M)

    def test_composition_on_units(self):
        # phi(x (x) y) . phi(x' (x) y') = phi(x x' (x) y' y), exactly
        d = 2
        units = spaces.matrix_units(d)

        def simple(x, y):
            u = np.einsum("a,b->ab", x.reshape(-1), y.reshape(-1))
            return tensorcb.phi_map(tensorcb.TensorElement(units, units, u))

        def mat_unit(i, j):
            e = np.zeros((d, d), dtype=complex)
            e[i, j] = 1.0
            return e

        for (i, j, k, l, p, q, r, s) in [(0, 1, 1, 0, 1, 1, 0, 0),
                                         (0, 0, 0, 1, 0, 1, 1, 1)]:
            x, y = mat_unit(i, j), mat_unit(k, l)
            xp, yp = mat_unit(p, q), mat_unit(r, s)
            lhs = simple(x, y).M @ simple(xp, yp).M
            rhs = simple(x @ xp, yp @ y).M
            assert np.allclose(lhs, rhs)

    def test_transpose_tensor_involution(self, rng):
        units = spaces.matrix_units(2)
        t = tensorcb.TensorElement(units, units,
                                   linalg.complex_gaussian(rng, (4, 4)))
        back = tensorcb.transpose_tensor(tensorcb.transpose_tensor(t))
        assert np.allclose(back.U, t.U)


class TestRowColumnConstant:
    def test_identity(self):
        units = spaces.matrix_units(2)
        cr, cc = tensorcb.row_column_constant(
            tensorcb.CoeffMap(units, units, np.eye(4)), samples=5)
        assert cr == pytest.approx(1.0, abs=1e-9)
        assert cc == pytest.approx(1.0, abs=1e-9)

    def test_homogeneous(self):
        units = spaces.matrix_units(2)
        cr, cc = tensorcb.row_column_constant(
            tensorcb.CoeffMap(units, units, 0.5 * np.eye(4)), samples=5)
        assert cr == pytest.approx(0.5, abs=1e-9)
        assert cc == pytest.approx(0.5, abs=1e-9)

    def test_transpose_constant(self):
        # transposing swaps row and column forms; brute-force ascent over
        # 2-tuples exhibits the sqrt(2) lower bound
        units = spaces.matrix_units(2)
        tmat = np.zeros((4, 4), dtype=complex)
        for i in range(2):
            for j in range(2):
                tmat[i * 2 + j, j * 2 + i] = 1.0
        cr, cc = tensorcb.row_column_constant(
            tensorcb.CoeffMap(units, units, tmat), samples=20,
            solver=SolverParams(seed=1, max_iter=120, restarts=6),
            tuple_len=2)
        assert cc >= np.sqrt(2) - 1e-3
        assert cr >= np.sqrt(2) - 1e-3


def test_cb_estimate_norm_subgrad_consistency(rng):
    # Danskin-style subgradients of the cb-estimate oracles must match
    # finite differences of the underlying value
    from opspace.verify import _CbEstimateNorm
    inner = SolverParams(max_iter=40, restarts=2, seed=0)
    for transpose_first in (False, True):
        oracle = _CbEstimateNorm(transpose_first, 2, 2, inner)
        u = linalg.complex_gaussian(rng, 16)
        val, g = oracle.subgrad(u)
        h = 1e-5
        nums, anas = [], []
        for _ in range(6):
            d = linalg.complex_gaussian(rng, 16)
            nums.append((oracle.value(u + h * d)
                         - oracle.value(u - h * d)) / (2 * h))
            anas.append(float(np.real(np.vdot(g, d))))
        # the estimate is a max over a nonconvex inner ascent, so the
        # directional derivatives are noisy; the Danskin direction only
        # needs to track them in aggregate for the outer solver to descend
        nums, anas = np.array(nums), np.array(anas)
        corr = float(np.dot(nums, anas)
                     / (np.linalg.norm(nums) * np.linalg.norm(anas)))
        assert corr > 0.9
        assert np.linalg.norm(nums - anas) <= 0.35 * np.linalg.norm(nums)
