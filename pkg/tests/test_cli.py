import json
import subprocess
import sys

import numpy as np
import pytest
from click.testing import CliRunner

from opspace import cli as climod
from opspace import spaces
from opspace.errors import OpspaceError


def run_cli(*args, env=None):
    return CliRunner().invoke(climod.cli, list(args), env=env,
                              catch_exceptions=False)


@pytest.fixture
def tuple_file(tmp_path):
    def make(text, name="t.txt"):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return make


class TestComplexParsing:
    @pytest.mark.parametrize("token,expect", [
        ("3", 3 + 0j), ("-2.5", -2.5 + 0j), ("1+2i", 1 + 2j),
        ("-1.5-0.25i", -1.5 - 0.25j), ("2i", 2j), ("-i", -1j), ("i", 1j),
    ])
    def test_tokens(self, token, expect):
        assert climod.parse_complex(token) == expect

    def test_bad_token(self):
        with pytest.raises(OpspaceError):
            climod.parse_complex("foo")

    def test_roundtrip(self, rng):
        t = spaces.MatrixTuple.random(2, 2, 3, rng)
        text = climod.write_tuple_text(t)
        back = climod.parse_tuple_text(text)
        assert np.allclose(back.mats, t.mats)


class TestNormCommand:
    def test_oh_scalars(self, tuple_file):
        path = tuple_file("2 1 1\n3\n4\n")
        res = run_cli("norm", "--space", "oh", "--n", "2",
                      "--level", "1x1", "--input", path)
        assert res.exit_code == 0
        assert "norm=5" in res.output

    def test_row_vs_column_adjoint_flip(self, tuple_file, rng):
        t = spaces.MatrixTuple.random(2, 2, 2, rng)
        p1 = tuple_file(climod.write_tuple_text(t), "a.txt")
        p2 = tuple_file(climod.write_tuple_text(t.adjoint_tuple()), "b.txt")
        r1 = run_cli("norm", "--space", "row", "--input", p2)
        r2 = run_cli("norm", "--space", "column", "--input", p1)
        v1 = float(r1.output.split("norm=")[1])
        v2 = float(r2.output.split("norm=")[1])
        assert v1 == pytest.approx(v2, rel=1e-10)

    def test_malformed_row_exits_2(self, tuple_file):
        path = tuple_file("2 1 1\n3 4\n5\n")
        res = run_cli("norm", "--space", "row", "--input", path)
        assert res.exit_code == 2

    def test_wrong_level_exits_2(self, tuple_file):
        path = tuple_file("2 1 1\n3\n4\n")
        res = run_cli("norm", "--space", "row", "--level", "2x2",
                      "--input", path)
        assert res.exit_code == 2

    def test_unknown_space_exits_2(self, tuple_file):
        path = tuple_file("2 1 1\n3\n4\n")
        res = run_cli("norm", "--space", "banana", "--input", path)
        assert res.exit_code == 2

    def test_opposite_suffix(self, tuple_file, rng):
        t = spaces.MatrixTuple.random(2, 2, 2, rng)
        p = tuple_file(climod.write_tuple_text(t))
        r1 = run_cli("norm", "--space", "row-op", "--input", p)
        r2 = run_cli("norm", "--space", "column", "--input", p)
        v1 = float(r1.output.split("norm=")[1])
        v2 = float(r2.output.split("norm=")[1])
        assert v1 == pytest.approx(v2, rel=1e-10)


class TestInterpCommand:
    def test_equal_couple(self, tuple_file):
        path = tuple_file("3 1 1\n1\n2\n2\n")
        res = run_cli("interp", "--couple", "l2-l2", "--theta", "0.5",
                      "--input", path, "--seed", "1", "--iters", "150")
        assert res.exit_code == 0
        lower = float(res.output.split("lower=")[1].split()[0])
        upper = float(res.output.split("upper=")[1].split()[0])
        assert lower == pytest.approx(3.0, rel=0.01)
        assert upper == pytest.approx(3.0, rel=0.01)

    def test_linf_l1_unit_vector(self, tuple_file):
        path = tuple_file("3 1 1\n1\n0\n0\n")
        res = run_cli("interp", "--couple", "linf-l1", "--theta", "0.5",
                      "--input", path, "--seed", "1")
        lower = float(res.output.split("lower=")[1].split()[0])
        upper = float(res.output.split("upper=")[1].split()[0])
        assert 0.97 <= lower <= upper <= 1.03

    def test_rc_couple_contains_oh(self, tuple_file, rng):
        t = spaces.MatrixTuple.random(2, 2, 2, rng)
        oh = spaces.oh_level_norm(t)
        path = tuple_file(climod.write_tuple_text(t))
        res = run_cli("interp", "--couple", "rc", "--theta", "0.5",
                      "--input", path, "--seed", "2", "--grid", "32",
                      "--iters", "250", "--restarts", "3")
        assert res.exit_code == 0
        lower = float(res.output.split("lower=")[1].split()[0])
        upper = float(res.output.split("upper=")[1].split()[0])
        assert lower <= oh * 1.001
        assert upper >= oh * 0.999

    def test_bad_theta_exits_2(self, tuple_file):
        path = tuple_file("2 1 1\n3\n4\n")
        res = run_cli("interp", "--couple", "l2-l2", "--theta", "1.5",
                      "--input", path)
        assert res.exit_code == 2


class TestVerifyCommand:
    def test_suite_run_json(self, tmp_path):
        out = tmp_path / "r.json"
        res = run_cli("verify", "--suite", "ruan", "--seed", "7",
                      "--samples", "30", "--output", str(out))
        assert res.exit_code == 0
        doc = json.loads(out.read_text())
        assert doc["schema"] == 1
        assert len(doc["reports"]) == 4
        for rep in doc["reports"]:
            assert set(rep) == {"check", "params", "values", "margin",
                                "pass", "runtime_ms", "seed"}

    def test_caps_exit_2(self):
        res = run_cli("verify", "--suite", "theorem3", "--n", "5", "--k", "4")
        assert res.exit_code == 2
        res = run_cli("verify", "--suite", "ruan", "--samples", "5000")
        assert res.exit_code == 2

    def test_failing_config_exits_1(self):
        # a deliberately under-resourced solver cannot meet the sandwich
        res = run_cli("verify", "--suite", "theorem3", "--n", "4", "--k", "3",
                      "--samples", "2", "--seed", "1", "--iters", "100",
                      "--grid", "16", "--format", "text")
        assert res.exit_code == 1
        assert "FAIL" in res.output

    def test_env_seed_override(self, tmp_path):
        out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
        run_cli("verify", "--suite", "opposite", "--samples", "20",
                "--output", str(out1), env={"OPSPACE_SEED": "123"})
        run_cli("verify", "--suite", "opposite", "--samples", "20",
                "--seed", "123", "--output", str(out2))
        a = climod.normalized_report_bytes(out1.read_text())
        b = climod.normalized_report_bytes(out2.read_text())
        assert a == b

    def test_csv_and_text_formats(self):
        res = run_cli("verify", "--suite", "opposite", "--samples", "10",
                      "--seed", "3", "--format", "csv")
        assert res.exit_code == 0
        assert res.output.splitlines()[0].startswith("check,")
        res = run_cli("verify", "--suite", "opposite", "--samples", "10",
                      "--seed", "3", "--format", "text")
        assert "[PASS] opposite" in res.output


class TestDeterminism:
    def test_serial_runs_identical(self, tmp_path):
        args = ["verify", "--suite", "oh-h", "--seed", "7", "--serial",
                "--samples", "10"]
        outs = []
        for name in ("x.json", "y.json"):
            p = tmp_path / name
            res = run_cli(*args, "--output", str(p))
            assert res.exit_code == 0
            outs.append(climod.normalized_report_bytes(p.read_text()))
        assert outs[0] == outs[1]

    def test_subprocess_entrypoint(self, tmp_path):
        # exercise the installed console path end to end
        p = tmp_path / "v.txt"
        p.write_text("2 1 1\n3\n4\n")
        res = subprocess.run(
            [sys.executable, "-m", "opspace.cli", "norm", "--space", "oh",
             "--input", str(p)],
            capture_output=True, text=True)
        assert res.returncode == 0
        assert "norm=5" in res.stdout
