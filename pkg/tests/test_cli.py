"""Command-line behavior: exit codes, output shapes, document plumbing."""

import json
import re
import subprocess
import sys

import pytest

from coneforge import cli
from coneforge.catalog import construct
from coneforge.document import dump_algebra


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def doc(tmp_path):
    def write(name):
        path = tmp_path / f"{name.replace('(', '_').replace(')', '')}.json"
        dump_algebra(construct(name), str(path))
        return str(path)

    return write


class TestConstruct:
    def test_stdout_document(self, capsys):
        code, out, _ = run(capsys, "construct", "R")
        assert code == 0
        assert json.loads(out)["dim"] == 1

    def test_writes_file(self, capsys, tmp_path):
        target = tmp_path / "t_color.json"
        code, out, _ = run(capsys, "construct", "triple(color)", "-o", str(target))
        assert code == 0 and "dim 18" in out
        assert json.loads(target.read_text())["dim"] == 18

    def test_cartan_document_field(self, capsys, tmp_path):
        target = tmp_path / "c2.json"
        code, _, _ = run(capsys, "construct", "cartan(2)", "-o", str(target))
        doc = json.loads(target.read_text())
        assert code == 0 and doc["field"] == "Qr3" and doc["dim"] == 8

    def test_unknown_name_exits_2(self, capsys):
        code, _, err = run(capsys, "construct", "nonsense(3)")
        assert code == 2 and "error:" in err

    def test_inadmissible_clifford_cites_rho(self, capsys):
        code, _, err = run(capsys, "construct", "clifford(1,3)")
        assert code == 2
        assert "rho(1)=1" in err

    def test_from_cubic(self, capsys, tmp_path):
        target = tmp_path / "lawson.json"
        code, _, _ = run(
            capsys, "construct", "from-cubic", "--cubic", "1*x1*x2*x3", "-o", str(target)
        )
        assert code == 0
        assert json.loads(target.read_text())["dim"] == 3

    def test_from_cubic_requires_text(self, capsys):
        code, _, err = run(capsys, "construct", "from-cubic")
        assert code == 2 and "--cubic" in err

    def test_from_cubic_rejects_inhomogeneous(self, capsys):
        code, _, err = run(capsys, "construct", "from-cubic", "--cubic", "1*x1^2")
        assert code == 2 and "degree 3" in err

    def test_cubic_flag_only_for_from_cubic(self, capsys):
        code, _, err = run(capsys, "construct", "R", "--cubic", "1*x1^3")
        assert code == 2 and "from-cubic" in err


class TestVerify:
    def test_hsiang_on_tripled_color(self, capsys, doc):
        code, out, _ = run(capsys, "verify", "hsiang", doc("triple(color)"))
        assert code == 0
        assert "theta = 4/3" in out

    def test_quasicomposition_color(self, capsys, doc):
        code, out, _ = run(capsys, "verify", "quasicomposition", doc("color"))
        assert code == 0
        assert "delta = 2" in out

    def test_skewed_linear_forms_radial_fails_nonradial_passes(self, capsys, tmp_path):
        from coneforge.cubic import algebra_from_cubic
        from coneforge.polynomials import parse_polynomial

        path = tmp_path / "lawson_skewed.json"
        skewed = algebra_from_cubic(
            parse_polynomial("1*x1^2*x2+1*x1*x2^2+1*x1*x2*x3", 3), name="skewed"
        )
        dump_algebra(skewed, str(path))
        code, _, _ = run(capsys, "verify", "hsiang", str(path))
        assert code == 1
        code, out, _ = run(capsys, "verify", "nonradial", str(path))
        assert code == 0
        assert "b =" in out

    def test_metrized_json_schema(self, capsys, doc):
        code, out, _ = run(capsys, "verify", "metrized", doc("O"), "--json")
        payload = json.loads(out)
        assert code == 0
        assert set(payload) == {"check", "pass", "theta", "delta", "n1", "n2", "d", "witness"}

    def test_quasicomposition_json_carries_delta(self, capsys, doc):
        code, out, _ = run(capsys, "verify", "quasicomposition", doc("cross7"), "--json")
        assert code == 0
        assert json.loads(out)["delta"] == 1

    def test_hsiang_json_theta_is_exact_string(self, capsys, doc):
        code, out, _ = run(capsys, "verify", "hsiang", doc("triple(H)"), "--json")
        assert code == 0
        assert json.loads(out)["theta"] == "4/3"

    def test_polar_requires_zero_block(self, capsys, doc):
        code, _, err = run(capsys, "verify", "polar", doc("clifford(1,2)"))
        assert code == 2 and "--zero-block" in err

    def test_polar_passes_with_block(self, capsys, doc):
        code, out, _ = run(
            capsys, "verify", "polar", doc("clifford(1,2)"), "--zero-block", "2,3"
        )
        assert code == 0 and "dim A0 = 2" in out

    def test_polar_wrong_block_fails(self, capsys, doc):
        code, out, _ = run(
            capsys, "verify", "polar", doc("clifford(1,2)"), "--zero-block", "0,1"
        )
        assert code == 1 and "witness" in out

    def test_polar_bad_block_text(self, capsys, doc):
        code, _, err = run(
            capsys, "verify", "polar", doc("clifford(1,2)"), "--zero-block", "2,x"
        )
        assert code == 2 and "comma-separated" in err

    def test_eikonal(self, capsys, doc):
        code, out, _ = run(capsys, "verify", "eikonal", doc("paraC"))
        assert code == 0 and "theta' = 1" in out
        code, _, _ = run(capsys, "verify", "eikonal", doc("triple(R)"))
        assert code == 1

    def test_killing_dichotomy(self, capsys, doc):
        code, out, _ = run(capsys, "verify", "killing", doc("triple(cross3)"))
        assert code == 0 and "kappa = 4 h" in out
        code, _, _ = run(capsys, "verify", "killing", doc("clifford(1,2)"))
        assert code == 1

    def test_cartan_munzner(self, capsys, doc):
        code, _, _ = run(capsys, "verify", "cartan-munzner", doc("cartan(4)"))
        assert code == 0
        code, _, _ = run(capsys, "verify", "cartan-munzner", doc("paraC"))
        assert code == 1

    def test_noncommutative_input_is_invalid_for_hsiang(self, capsys, doc):
        code, _, err = run(capsys, "verify", "hsiang", doc("H"))
        assert code == 2 and "commutative" in err

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "verify", "metrized", "/nonexistent/alg.json")
        assert code == 2 and "error:" in err


class TestReport:
    def test_cartan0_peirce(self, capsys, doc):
        code, out, _ = run(capsys, "report", doc("cartan(0)"), "--peirce")
        assert code == 0
        assert "theta = 36" in out
        assert "(n1, n2) = (1, 0)" in out
        assert "0.02777" in out  # |c|^2 = 1/36

    def test_cube_is_degenerate(self, capsys, tmp_path):
        from coneforge.cubic import algebra_from_cubic
        from coneforge.polynomials import parse_polynomial

        path = tmp_path / "cube.json"
        dump_algebra(algebra_from_cubic(parse_polynomial("1*x1^3", 1)), str(path))
        code, out, _ = run(capsys, "report", str(path))
        assert code == 0
        assert "degenerate: yes" in out

    def test_json_mode_round_trips(self, capsys, doc):
        code, out, _ = run(capsys, "report", doc("triple(cross7)"), "--peirce", "--json")
        assert code == 0
        payload = json.loads(out)
        spectral = payload["spectral"]
        assert (spectral["n1"], spectral["n2"], spectral["d"]) == (4, 5, 1)
        assert abs(spectral["idempotent_norm"] - 0.75) < 1e-8
        assert spectral["defect_matches_d"]

    def test_exit_zero_even_when_checks_fail(self, capsys, doc):
        code, out, _ = run(capsys, "report", doc("H"))
        assert code == 0
        assert "quasicomposition: delta = 0" in out


class TestTable:
    def test_full_sweep_matches(self, capsys):
        code, out, err = run(capsys, "table")
        assert code == 0, err
        assert "all rows match" in out
        assert re.search(r"cartan\(8\)\s+26\s+9\s+0", out)

    def test_mismatch_names_the_row(self, capsys, monkeypatch):
        monkeypatch.setattr(cli, "QC_ROWS", (("cross3", 3, 1, 9, 0, 5, 2),))
        monkeypatch.setattr(cli, "CARTAN_ROWS", ())
        code, _, err = run(capsys, "table")
        assert code == 1
        assert "MISMATCH cross3" in err


class TestEnvironment:
    def test_thread_budget_default(self, monkeypatch):
        monkeypatch.delenv("CONEFORGE_THREADS", raising=False)
        assert cli.thread_budget() >= 1

    @pytest.mark.parametrize("value", ["0", "-2", "four"])
    def test_invalid_thread_budget_exits_2(self, capsys, monkeypatch, value):
        monkeypatch.setenv("CONEFORGE_THREADS", value)
        code, _, err = run(capsys, "construct", "R")
        assert code == 2 and "CONEFORGE_THREADS" in err

    def test_valid_thread_budget(self, capsys, monkeypatch):
        monkeypatch.setenv("CONEFORGE_THREADS", "4")
        code, _, _ = run(capsys, "construct", "R")
        assert code == 0

    def test_module_entry_point(self):
        proc = subprocess.run(
            [sys.executable, "-m", "coneforge.cli", "construct", "cross3"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["dim"] == 3
