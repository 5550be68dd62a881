import json
from fractions import Fraction

import pytest

from affcopy.cli import main

F = Fraction


def run(tmp_path, *argv):
    out = tmp_path / "report.json"
    code = main(list(argv) + ["--out", str(out)])
    report = json.loads(out.read_text()) if out.exists() else None
    return code, report


class TestCantorCommands:
    def test_build_depth_two(self, tmp_path):
        code, report = run(tmp_path, "cantor-build", "--depth", "2")
        assert code == 0
        assert report["depth"] == 2
        assert report["levels"][0]["gaps"] == ["(4/9,5/9)"]

    def test_verify(self, tmp_path):
        code, report = run(tmp_path, "cantor-verify", "--depth", "5", "--kmax", "2")
        assert code == 0
        assert report["pass"] is True

    def test_cover_example(self, tmp_path):
        code, report = run(tmp_path, "cover", "--depth", "10", "--N", "2", "--kmax", "4")
        assert code == 0
        assert F(report["uncovered_measure"]) < F(256, 729)
        assert report["bound"] == "256/729"

    def test_cover_depth_error(self, tmp_path):
        code, _ = run(tmp_path, "cover", "--depth", "4", "--N", "4", "--kmax", "1")
        assert code == 2


class TestSequenceCommands:
    def test_seq_build(self, tmp_path):
        code, report = run(tmp_path, "seq-build", "--depth", "4", "--horizon", "100")
        assert code == 0
        assert report["mu"][0] == "1/9"
        assert report["breakpoints"][0] == 0

    def test_seq_decompose(self, tmp_path):
        code, report = run(tmp_path, "seq-decompose", "--depth", "6", "--horizon", "300",
                           "--delta", "2", "--m0", "1", "--lo", "0", "--length", "1/50")
        assert code == 0
        assert report["brute_force_ok"] is True

    def test_coverage01(self, tmp_path):
        code, report = run(tmp_path, "coverage01", "--depth", "6", "--N", "3",
                           "--M", "80", "--delta", "1", "--m0", "1")
        assert report["residual_measure"] == "0"
        assert code == (0 if report["pass"] else 1)

    def test_malformed_rational(self, tmp_path):
        with pytest.raises(SystemExit) as err:
            run(tmp_path, "coverage01", "--depth", "6", "--N", "3", "--M", "80",
                "--delta", "nope")
        assert err.value.code == 2


class TestAvoiderCommands:
    def test_build(self, tmp_path):
        code, report = run(tmp_path, "avoider-build", "--beta", "harmonic",
                           "--depth", "8")
        assert code == 0
        assert report["depth"] == 8
        assert len(report["holes"]) == 8
        assert report["holes"][0]["V"] == "(1/4,3/4)"

    def test_measure(self, tmp_path):
        code, report = run(tmp_path, "avoider-measure", "--beta", "harmonic",
                           "--M", "40", "--lo", "0", "--length", "1/10")
        assert code == 0
        assert report["identity_ok"] is True

    def test_embed_certificate(self, tmp_path):
        code, report = run(tmp_path, "avoider-embed", "--beta", "harmonic",
                           "--alpha", "geometric:1/2", "--M", "100", "--depth", "64")
        assert code == 0
        assert report["checked_points"] == 100
        assert F(report["residual_measure"]) > 0

    def test_sequence_file_input(self, tmp_path):
        path = tmp_path / "beta.json"
        path.write_text(json.dumps([f"1/{m}" for m in range(1, 200)]))
        code, report = run(tmp_path, "avoider-build", "--beta", str(path),
                           "--depth", "3")
        assert code == 0
        assert len(report["holes"]) == 3


class TestAppendixCommands:
    def test_schedule_default(self, tmp_path):
        code, report = run(tmp_path, "appendix-schedule", "--depth", "2")
        assert code == 0
        assert report == {"radices": [4, 14], "h_verified": [True, True]}

    def test_schedule_rejected(self, tmp_path):
        code, report = run(tmp_path, "appendix-schedule", "--schedule", "4,12")
        assert code == 0
        assert report["h_verified"] == [True, False]

    def test_intersect_example(self, tmp_path):
        code, report = run(tmp_path, "appendix-intersect", "--schedule", "4,14",
                           "--alphas", "0,0", "--U", "2")
        assert code == 0
        assert report["interval"] == "[0,1/56]"
        assert report["branch"] == [1, 2]
        assert report["sampled_membership_ok"] is True

    def test_premeasure(self, tmp_path):
        code, report = run(tmp_path, "appendix-premeasure", "--schedule", "4,14",
                           "--j", "1", "--k", "1")
        assert code == 0
        assert report["bound"] == "2" == report["target"]


class TestHarness:
    def test_prop_suite(self, tmp_path):
        code, report = run(tmp_path, "prop-suite", "--seed", "7", "--instances", "40")
        assert code == 0
        assert report["pass"] is True

    def test_unknown_subcommand_exits_two(self):
        with pytest.raises(SystemExit) as err:
            main(["no-such-thing"])
        assert err.value.code == 2

    def test_byte_determinism(self, tmp_path):
        a = tmp_path / "a.json"
        b = tmp_path / "b.json"
        argv = ["coverage01", "--depth", "5", "--N", "2", "--M", "40"]
        main(argv + ["--out", str(a)])
        main(argv + ["--out", str(b)])
        assert a.read_bytes() == b.read_bytes()
        c = tmp_path / "c.json"
        d = tmp_path / "d.json"
        main(["prop-suite", "--seed", "11", "--instances", "25", "--out", str(c)])
        main(["prop-suite", "--seed", "11", "--instances", "25", "--out", str(d)])
        assert c.read_bytes() == d.read_bytes()

    def test_stdout_when_no_out_flag(self, capsys):
        code = main(["appendix-premeasure", "--schedule", "4,14", "--j", "1", "--k", "1"])
        assert code == 0
        report = json.loads(capsys.readouterr().out)
        assert report["meets_target"] is True
