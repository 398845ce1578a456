import io
import json
import subprocess
import sys

import pytest

from liebullet import build_model, contractible_algebra, deserialize_algebra, serialize_algebra
from liebullet.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


class TestCoeffs:
    def test_xi(self):
        code, text = run("coeffs", "xi", "4")
        assert code == 0
        lines = text.splitlines()
        assert lines[:5] == ["0 1", "1 -1/4", "2 5/144", "3 -1/576", "4 -131/518400"]
        assert "-4/15829" in lines[5]

    def test_no_note_below_four(self):
        code, text = run("coeffs", "xi", "3")
        assert code == 0 and "note" not in text

    def test_bernoulli(self):
        _, text = run("coeffs", "bernoulli", "6")
        assert text.split("\n")[:7] == ["0 1", "1 -1/2", "2 1/6", "3 0", "4 -1/30", "5 0", "6 1/42"]

    @pytest.mark.parametrize("kind", ["f", "epsilon", "exp"])
    def test_other_tables(self, kind):
        code, text = run("coeffs", kind, "3")
        assert code == 0 and len(text.splitlines()) == 4

    def test_negative_order(self):
        assert run("coeffs", "xi", "-1")[0] == 2


class TestEval:
    def test_contractible(self):
        code, text = run("eval", "--algebra", "contractible:2", "--trunc", "2", "bullet(u1, u2)")
        assert code == 0
        assert text == "u1 + u2 + 1/4*u1.v2 - 1/4*u2.v1 + 1/4*v1.u2 - 1/4*v2.u1\n"

    def test_brackets_and_diff(self):
        code, text = run(
            "eval", "--algebra", "contractible:2", "--trunc", "2", "--style", "brackets", "--diff", "bullet(u1,u2)"
        )
        assert code == 0
        assert text.splitlines() == ["u1 + u2 + 1/4*[u1,v2] - 1/4*[u2,v1]", "v1 + v2 + 1/2*[v1,v2]"]

    def test_algebra_file(self, tmp_path):
        path = tmp_path / "l2.json"
        path.write_text(serialize_algebra(contractible_algebra(2, 3).presentation))
        code, text = run("eval", "--algebra", str(path), "--diff", "[u1,v2]")
        assert code == 0
        assert text.splitlines()[1] == "v1.v2 - v2.v1"

    def test_simplex(self):
        code, text = run("eval", "--algebra", "simplex:1", "--trunc", "2", "d(a0)")
        assert code == 0 and text == "-a0.a0\n"

    @pytest.mark.parametrize(
        "argv",
        [
            ["eval", "--algebra", "contractible:2", "w"],
            ["eval", "--algebra", "nowhere.json", "u1"],
            ["eval", "--algebra", "contractible:x", "u1"],
            ["eval", "--algebra", "simplex:7", "a0"],
            ["eval", "--algebra", "contractible:2", "--trunc", "0", "u1"],
            ["eval", "contractible:2"],
        ],
    )
    def test_usage_errors(self, argv, capsys):
        assert run(*argv)[0] == 2
        assert capsys.readouterr().err

    def test_parse_error_position(self, capsys):
        assert run("eval", "--algebra", "contractible:2", "[u1,")[0] == 2
        assert "column 5" in capsys.readouterr().err


class TestProducts:
    def test_bch(self):
        code, text = run("bch", "--algebra", "contractible:2", "--trunc", "2", "v1", "v2")
        assert code == 0 and text == "v1 + v2 + 1/2*v1.v2 - 1/2*v2.v1\n"

    def test_bullet_matches_eval(self):
        a = run("bullet", "--algebra", "contractible:2", "--trunc", "4", "u1", "u2")
        b = run("eval", "--algebra", "contractible:2", "--trunc", "4", "bullet(u1,u2)")
        assert a == b and a[0] == 0

    def test_degree_error(self):
        assert run("bullet", "--algebra", "contractible:2", "v1", "u2")[0] == 2


class TestModel:
    def test_build_out(self, tmp_path):
        path = tmp_path / "l2.json"
        code, _ = run("model", "build", "2", "--trunc", "4", "--out", str(path))
        assert code == 0
        pres = deserialize_algebra(path.read_text())
        assert pres.differential == build_model(2, 4).differential

    def test_build_stdout(self):
        code, text = run("model", "build", "1", "--trunc", "3")
        assert code == 0 and json.loads(text)["truncation"] == 3

    def test_verify_pass(self):
        code, text = run("model", "verify", "2", "--trunc", "5")
        assert code == 0 and text.rstrip().endswith("verified")
        assert "FAIL" not in text

    def test_verify_tetrahedron(self):
        assert run("model", "verify", "3", "--trunc", "6", "--threads", "2")[0] == 0

    def test_verify_failure_exit_code(self):
        code, text = run("model", "verify", "4", "--trunc", "4")
        assert code == 1
        assert "FAIL phi_cycle" in text and "discrepancy from word length 3" in text
        assert text.rstrip().endswith("NOT verified")

    @pytest.mark.parametrize(
        "argv",
        [["model", "verify", "5"], ["model", "verify", "x"], ["model"], ["model", "build", "2", "--trunc", "-3"], []],
    )
    def test_usage(self, argv):
        assert run(*argv)[0] == 2


def test_selfcheck_reports_each_check():
    code, text = run("selfcheck", "--level", "fast")
    lines = [line for line in text.splitlines() if line.startswith(("PASS", "FAIL"))]
    assert len(lines) == 11
    failed = {line.split()[1].rstrip(":") for line in lines if line.startswith("FAIL")}
    assert failed == {"bullet_associativity", "simplex_models"}
    assert code == 1


def test_output_is_byte_stable():
    argv = ["eval", "--algebra", "simplex:2", "--trunc", "4", "--diff", "a012"]
    assert run(*argv) == run(*argv)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "liebullet", "coeffs", "bernoulli", "2"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0 and proc.stdout == "0 1\n1 -1/2\n2 1/6\n"
