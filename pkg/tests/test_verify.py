import dataclasses

import numpy as np
import pytest

from opspace import verify
from opspace.errors import InputError
from opspace.params import SolverParams

SMALL = SolverParams(degree=6, grid=24, max_iter=150, restarts=3,
                     dual_max_iter=100, dual_restarts=2, seed=0)


class TestHaagerupCsCheck:
    def test_passes(self):
        r = verify.check_haagerup_cs(samples=100, seed=3)
        assert r.passed
        assert r.margin >= -1e-9

    def test_deterministic(self):
        a = verify.check_haagerup_cs(samples=50, seed=11)
        b = verify.check_haagerup_cs(samples=50, seed=11)
        assert a.values == b.values
        assert a.margin == b.margin

    def test_caps(self):
        with pytest.raises(InputError):
            verify.check_haagerup_cs(n=9, samples=10)
        with pytest.raises(InputError):
            verify.check_haagerup_cs(samples=5000)


class TestRuanCheck:
    def test_all_structures(self):
        reports = verify.check_ruan_axioms(samples=60, seed=2)
        names = {r.params["structure"] for r in reports}
        assert names == {"row", "column", "oh", "intersection"}
        assert all(r.passed for r in reports)

    def test_single_structure(self):
        (r,) = verify.check_ruan_axioms("oh", samples=40, seed=5)
        assert r.passed


class TestOppositeCheck:
    def test_passes(self):
        r = verify.check_opposite_invariance(samples=80, seed=1)
        assert r.passed


class TestInterpolationChecks:
    def test_theorem3_scalar_level(self):
        r = verify.check_theorem3(n=3, k=1, samples=4, solver=SMALL, seed=0)
        assert r.passed

    def test_theorem3_matrix_level(self):
        r = verify.check_theorem3(n=2, k=2, samples=3, seed=0)
        assert r.passed
        assert r.values["lower"] <= r.values["lhs"] * (1 + 1e-6)
        assert r.values["upper"] >= r.values["lhs"] * (1 - 1e-9)

    def test_corollary4_reduces_to_theorem3_at_m1(self):
        r = verify.check_corollary4(n=2, m=1, k=1, samples=3, solver=SMALL,
                                    seed=4)
        assert r.passed

    def test_corollary4(self):
        r = verify.check_corollary4(samples=2, seed=0)
        assert r.passed

    def test_caps(self):
        with pytest.raises(InputError):
            verify.check_theorem3(n=5, k=4, samples=1)


class TestTensorChecks:
    def test_oh_h(self):
        r = verify.check_oh_h_tensor(samples=15, seed=2)
        assert r.passed

    def test_cb_oh(self):
        r = verify.check_cb_oh(samples=6, seed=1)
        assert r.passed

    def test_oh_fact(self):
        r = verify.check_oh_factorization(samples=8, seed=1)
        assert r.passed


class TestDualityCheck:
    def test_passes(self):
        r = verify.check_duality_level1(n=3, samples=10, seed=0)
        assert r.passed

    def test_degenerate_dimension(self):
        r = verify.check_duality_level1(n=1, samples=5, seed=0)
        assert r.passed


class TestCorollary7:
    def test_report_only_by_default(self):
        r = verify.check_corollary7(samples=2, seed=0)
        assert r.passed  # report-only unless strict
        assert "lhs" in r.values and "rhs" in r.values

    def test_identity_calibration(self):
        r = verify.check_corollary7(samples=1, seed=0)
        # first sample is identity (x) identity with known zero gap
        assert r.margin >= 0.15 - 0.02


class TestSuiteDriver:
    def test_run_suite_selection(self):
        reports = verify.run_suite(["opposite"], seed=9,
                                   overrides={"samples": 20})
        assert len(reports) == 1
        assert reports[0].check == "opposite"

    def test_unknown_check(self):
        with pytest.raises(InputError):
            verify.run_suite(["bogus"], seed=0)

    def test_reports_replay_identically(self):
        a = verify.run_suite(["opposite", "oh-h"], seed=7,
                             overrides={"samples": 10})
        b = verify.run_suite(["opposite", "oh-h"], seed=7,
                             overrides={"samples": 10})
        for ra, rb in zip(a, b):
            da, db = ra.to_dict(), rb.to_dict()
            da.pop("runtime_ms"), db.pop("runtime_ms")
            assert da == db

    def test_report_schema(self):
        (r,) = verify.run_suite(["oh-h"], seed=0, overrides={"samples": 5})
        d = r.to_dict()
        assert set(d) == {"check", "params", "values", "margin", "pass",
                          "runtime_ms", "seed"}
        assert set(d["values"]) == {"lhs", "rhs", "lower", "upper"}
