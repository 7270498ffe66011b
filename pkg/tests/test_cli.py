import json
import subprocess
import sys

import pytest

from pathlab import cli


def run_cli(*argv):
    return cli.main(list(argv))


class TestListAndVerify:
    def test_list_smoke(self, capsys):
        assert run_cli("list") == 0
        out = capsys.readouterr().out
        for token in ("inj-fail", "quarter-circle", "parabola-trap", "cases:"):
            assert token in out

    def test_verify_pass_case(self, capsys):
        assert run_cli("verify", "inverse-formula") == 0
        assert "PASS" in capsys.readouterr().out

    def test_verify_unknown_case_is_usage_error(self):
        assert run_cli("verify", "nonexistent") == 2

    def test_verify_json_deterministic(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        assert run_cli("verify", "inverse-formula", "--json", str(a)) == 0
        assert run_cli("verify", "inverse-formula", "--json", str(b)) == 0
        assert a.read_bytes() == b.read_bytes()
        payload = json.loads(a.read_text())
        assert payload["case_id"] == "inverse-formula"
        assert payload["status"] == "pass"
        assert payload["runtime_ms"] == 0
        assert list(payload) == ["case_id", "status", "claims", "config_digest",
                                 "runtime_ms"]

    def test_verify_fail_exit_code(self, tmp_path):
        # an impossible residual tolerance makes the reparametrization case fail
        cfg = tmp_path / "cfg.txt"
        cfg.write_text("residual_tol=1e-16\n")
        assert run_cli("verify", "quarter-circle-reparam", "--config", str(cfg)) == 1

    def test_verify_nonconvergence_exit_code(self, tmp_path, capsys):
        # an unreachable oscillatory tolerance hits the period cap: the
        # quadrature claims go inconclusive, exit code 3
        cfg = tmp_path / "cfg.txt"
        cfg.write_text("osc_tol=1e-12\n")
        assert run_cli("verify", "onesided-osc", "--config", str(cfg)) == 3
        assert "inconclusive" in capsys.readouterr().out

    def test_bad_config_is_usage_error(self, tmp_path):
        cfg = tmp_path / "cfg.txt"
        cfg.write_text("unknown_key=3\n")
        assert run_cli("verify", "inverse-formula", "--config", str(cfg)) == 2


class TestSample:
    def test_linear_two_points_exact(self, tmp_path):
        out = tmp_path / "lin.csv"
        assert run_cli("sample", "identity", "--from", "0", "--to", "1",
                       "--points", "2", "--out", str(out)) == 0
        assert out.read_bytes() == b"x,f\n0,0\n1,1\n"

    def test_header_and_roundtrip(self, tmp_path):
        out = tmp_path / "s.csv"
        assert run_cli("sample", "min-no-flank", "--from", "-0.02", "--to", "0.02",
                       "--points", "101", "--deriv", "--out", str(out)) == 0
        raw = out.read_bytes()
        assert b"\r" not in raw
        lines = raw.decode().splitlines()
        assert lines[0] == "x,f,f_prime"
        assert len(lines) == 102
        from pathlab import catalog
        for line in lines[1:]:
            x, f, _ = (float(v) for v in line.split(","))
            assert f == catalog.evaluate("min-no-flank", x)  # 17g round-trips

    def test_figure_style_ranges(self, tmp_path):
        out = tmp_path / "wave.csv"
        assert run_cli("sample", "improper-unbounded", "--from", "0", "--to", "8",
                       "--points", "4001", "--out", str(out)) == 0
        lines = out.read_text().splitlines()
        assert len(lines) == 4002
        peak = max(abs(float(l.split(",")[1])) for l in lines[1:])
        assert peak >= 7.0

    def test_unknown_entry(self, tmp_path):
        assert run_cli("sample", "nope", "--from", "0", "--to", "1",
                       "--points", "2", "--out", str(tmp_path / "x.csv")) == 2

    def test_domain_breach(self, tmp_path):
        assert run_cli("sample", "inverse-counterexample", "--from", "-2",
                       "--to", "2", "--points", "3",
                       "--out", str(tmp_path / "x.csv")) == 2

    def test_bivariate_rejected(self, tmp_path):
        assert run_cli("sample", "parabola-trap", "--from", "0", "--to", "1",
                       "--points", "2", "--out", str(tmp_path / "x.csv")) == 2


class TestReparam:
    def test_quarter_pair_table(self, tmp_path):
        out = tmp_path / "t.csv"
        assert run_cli("reparam", "quarter-circle", "quarter-circle-sq",
                       "--points", "21", "--out", str(out)) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "t,s,phi_prime,residual"
        assert len(lines) == 22
        import math
        last = lines[-1].split(",")
        assert float(last[1]) == pytest.approx(math.sqrt(math.pi / 2.0), abs=1e-8)

    def test_non_equivalent_pair_fails(self, tmp_path):
        assert run_cli("reparam", "circle", "circle-overwound",
                       "--points", "21", "--out", str(tmp_path / "t.csv")) == 1

    def test_unknown_curve(self, tmp_path):
        assert run_cli("reparam", "circle", "nope",
                       "--points", "21", "--out", str(tmp_path / "t.csv")) == 2


class TestConsoleEntryPoint:
    def test_module_invocation(self):
        proc = subprocess.run(
            [sys.executable, "-m", "pathlab.cli", "list"],
            capture_output=True, text=True, timeout=120,
        )
        assert proc.returncode == 0
        assert "catalog entries:" in proc.stdout
