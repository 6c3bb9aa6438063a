import json
import subprocess
import sys

from btquot.cli import main


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


class TestCusps:
    def test_line_example(self, capsys):
        code, out, _ = run_cli(
            ["cusps", "--p", "2", "--level", "t", "--depth", "10"], capsys)
        assert code == 0
        assert out.splitlines()[0] == "certified=2 formula=2 exact=true"

    def test_split_reporting(self, capsys):
        code, out, _ = run_cli(
            ["cusps", "--p", "3", "--level", "t", "--depth", "6"], capsys)
        assert code == 0
        assert "split=2 nonsplit=0 indeterminate=0" in out


class TestReduce:
    def test_documented_example(self, capsys):
        code, out, _ = run_cli(
            ["reduce", "--p", "2", "--vertex", "r=2;a=1*s^-1"], capsys)
        assert code == 0
        assert "level=2" in out
        assert "word=[tau[t], I]" in out


class TestFormula:
    def test_cubed_level(self, capsys):
        code, out, _ = run_cli(
            ["formula", "--p", "3", "--level", "t^3"], capsys)
        assert code == 0
        assert "c_HD=4 exact=true" in out
        assert "card_D=2 card_I=2" in out
        assert "verdict=infinite-Fp-part" in out

    def test_serre_case(self, capsys):
        code, out, _ = run_cli(["formula", "--p", "2", "--level", "0"],
                               capsys)
        assert code == 0
        assert "serre_case=true" in out

    def test_picard_inputs(self, capsys):
        code, out, _ = run_cli(
            ["formula", "--p", "2", "--level", "t", "--g2-order", "2"],
            capsys)
        assert code == 0
        assert "exact=false" in out


class TestQuotient:
    def test_json_export(self, capsys, tmp_path):
        out_path = tmp_path / "q.json"
        code, _, _ = run_cli(
            ["quotient", "--p", "2", "--level", "t", "--depth", "6",
             "--format", "json", "--out", str(out_path)], capsys)
        assert code == 0
        doc = json.loads(out_path.read_text())
        assert len(doc["classes"]) == 13

    def test_dot_export(self, capsys):
        code, out, _ = run_cli(
            ["quotient", "--p", "2", "--level", "t", "--depth", "6",
             "--format", "dot"], capsys)
        assert code == 0
        assert out.startswith("graph quotient {")

    def test_determinism(self, capsys):
        args = ["quotient", "--p", "3", "--level", "t", "--depth", "5",
                "--format", "json"]
        code1, out1, _ = run_cli(args, capsys)
        code2, out2, _ = run_cli(args, capsys)
        assert code1 == code2 == 0 and out1 == out2

    def test_depth_one_exports_at_least_two_nodes(self, capsys):
        code, out, _ = run_cli(
            ["quotient", "--p", "2", "--level", "t", "--depth", "1",
             "--format", "json"], capsys)
        assert code == 0
        assert len(json.loads(out)["classes"]) >= 2


class TestStabOrbit:
    def test_stab_with_oracle(self, capsys):
        code, out, _ = run_cli(
            ["stab", "--p", "2", "--level", "t", "--vertex", "r=-1;a=0",
             "--brute-force"], capsys)
        assert code == 0
        assert "order=4" in out and "agree=true" in out

    def test_orbit_negative(self, capsys):
        code, out, _ = run_cli(
            ["orbit", "--p", "2", "--level", "t", "--vertex", "r=1;a=0",
             "--vertex2", "r=-1;a=0"], capsys)
        assert code == 0
        assert "equivalent=false" in out

    def test_orbit_positive(self, capsys):
        code, out, _ = run_cli(
            ["orbit", "--p", "2", "--level", "0", "--vertex", "r=1;a=0",
             "--vertex2", "r=-1;a=0"], capsys)
        assert code == 0
        assert "equivalent=true" in out and "witness=" in out


class TestAmalgam:
    def test_text_output(self, capsys):
        code, out, _ = run_cli(
            ["amalgam", "--p", "3", "--level", "t", "--depth", "6"], capsys)
        assert code == 0
        assert out.startswith("PRESENTATION level=t q=3")
        assert "TAILS" in out


class TestErrors:
    def test_usage_error_exit_2(self, capsys):
        assert run_cli(["cusps", "--p", "2", "--level", "t^2+t"],
                       capsys)[0] == 2

    def test_bad_vertex_exit_2(self, capsys):
        assert run_cli(["reduce", "--p", "2", "--vertex", "nope"],
                       capsys)[0] == 2

    def test_bad_threads(self, capsys):
        assert run_cli(["cusps", "--p", "2", "--level", "t",
                        "--threads", "0"], capsys)[0] == 2

    def test_unknown_command(self, capsys):
        code, _, _ = run_cli(["frobnicate"], capsys)
        assert code == 2

    def test_extension_field_with_modulus(self, capsys):
        code, out, _ = run_cli(
            ["formula", "--p", "2", "--s", "2", "--modulus", "g^2+g+1",
             "--level", "t"], capsys)
        assert code == 0
        assert "c_HD=2" in out


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "btquot.cli", "formula", "--p", "2",
         "--level", "t"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "c_HD=2" in proc.stdout
