"""Command-line surface tests: exit codes, report schemas, determinism."""

import json

import pytest

from bohrlab import cli


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestRadiusCommand:
    def test_cesaro_json_report(self, capsys):
        code, out, _ = run_cli(capsys, "radius", "--op", "cesaro", "--beta", "1")
        assert code == 0
        payload = json.loads(out)
        assert set(payload) == {"command", "params", "results", "seed", "version"}
        assert abs(payload["results"]["root"] - 0.5335) <= 1e-3
        assert abs(payload["results"]["residual"]) < 1e-12

    def test_libera_alias(self, capsys):
        code, out, _ = run_cli(capsys, "radius", "--op", "libera")
        assert code == 0
        assert abs(json.loads(out)["results"]["root"] - 0.5828) <= 1e-3

    def test_bernardi_flags(self, capsys):
        code, out, _ = run_cli(
            capsys, "radius", "--op", "bernardi", "--gamma", "0", "--m", "1"
        )
        assert code == 0
        assert abs(json.loads(out)["results"]["root"] - 0.5828) <= 1e-3

    def test_nonpositive_beta_exits_2(self, capsys):
        code, _, err = run_cli(capsys, "radius", "--op", "cesaro", "--beta", "-1")
        assert code == 2 and "parameter" in err

    def test_tiny_positive_beta_is_valid(self, capsys):
        code, out, _ = run_cli(capsys, "radius", "--op", "cesaro", "--beta", "1e-12")
        assert code == 0
        assert 0.0 < json.loads(out)["results"]["root"] < 1.0

    def test_missing_beta_exits_2(self, capsys):
        code, _, _ = run_cli(capsys, "radius", "--op", "cesaro")
        assert code == 2

    def test_csv_format(self, capsys):
        code, out, _ = run_cli(
            capsys, "radius", "--op", "cesaro", "--beta", "2", "--format", "csv"
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "root,residual,bracket_lo,bracket_hi,iterations"
        assert abs(float(lines[1].split(",")[0]) - 0.5) <= 1e-12


class TestCurveCommand:
    def test_beta_window_rows(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "curve",
            "--op",
            "cesaro",
            "--grid-values",
            "0.999999,1,1.000001",
            "--format",
            "csv",
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "param,root,residual"
        roots = [float(line.split(",")[1]) for line in lines[1:]]
        assert max(roots) - min(roots) <= 1e-4
        assert abs(roots[1] - 0.5335) <= 1e-3

    def test_gamma_singleton(self, capsys):
        code, out, _ = run_cli(
            capsys, "curve", "--op", "bernardi", "--m", "0", "--grid-values", "1"
        )
        assert code == 0
        rows = json.loads(out)["results"]["rows"]
        assert abs(rows[0]["root"] - 0.5828) <= 1e-3

    def test_empty_grid_exits_0(self, capsys):
        code, out, _ = run_cli(
            capsys, "curve", "--op", "cesaro", "--grid-values", "", "--format", "csv"
        )
        assert code == 0
        assert out.strip() == "param,root,residual"

    def test_linspace_grid(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "curve",
            "--op",
            "cesaro",
            "--grid-min",
            "0.5",
            "--grid-max",
            "2.5",
            "--grid-points",
            "5",
        )
        assert code == 0
        assert len(json.loads(out)["results"]["rows"]) == 5


class TestVerifyCommand:
    def test_below_mode_clean_sweep(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "verify",
            "--op",
            "cesaro",
            "--beta",
            "1",
            "--samples",
            "40",
            "--seed",
            "5",
        )
        assert code == 0
        results = json.loads(out)["results"]
        assert results["violations"] == 0
        assert results["max_excess"] <= 1e-9

    def test_above_mode_finds_witness(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "verify",
            "--op",
            "cesaro",
            "--beta",
            "1",
            "--r-mode",
            "above",
            "--r",
            "0.55",
        )
        assert code == 0
        results = json.loads(out)["results"]
        assert results["witness"] is not None and results["margin"] > 0

    def test_baseline_op(self, capsys):
        code, out, _ = run_cli(
            capsys, "verify", "--op", "bohr", "--samples", "25", "--seed", "9"
        )
        assert code == 0
        assert json.loads(out)["results"]["violations"] == 0

    def test_zero_samples_exits_2(self, capsys):
        code, _, _ = run_cli(
            capsys, "verify", "--op", "cesaro", "--beta", "1", "--samples", "0"
        )
        assert code == 2

    def test_determinism_bytes(self, capsys):
        argv = ("verify", "--op", "libera", "--samples", "30", "--seed", "123")
        _, first, _ = run_cli(capsys, *argv)
        _, second, _ = run_cli(capsys, *argv)
        assert first == second


class TestSharpnessCommand:
    def test_table_and_exit_code(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "sharpness",
            "--op",
            "cesaro",
            "--beta",
            "1",
            "--r",
            "0.5",
            "--format",
            "csv",
        )
        assert code == 0
        lines = out.strip().splitlines()
        header = lines[0].split(",")
        assert header[:5] == ["a", "bound_term", "deficit_term", "remainder", "total"]
        # the a = 1 row is exact: zero deficit and remainder
        last = lines[-1].split(",")
        assert float(last[2]) == 0.0 and float(last[3]) == 0.0

    def test_positive_deficit_below_radius(self, capsys):
        code, out, _ = run_cli(
            capsys, "sharpness", "--op", "libera", "--r", "0.5"
        )
        assert code == 0
        rows = json.loads(out)["results"]["rows"]
        assert all(row["deficit_term"] > 0 for row in rows if row["a"] < 1.0)

    def test_requires_radius_flag(self, capsys):
        code, _, _ = run_cli(capsys, "sharpness", "--op", "cesaro", "--beta", "1")
        assert code == 2


class TestSelftestCommand:
    def test_all_suites_pass(self, capsys):
        code, out, _ = run_cli(capsys, "selftest")
        assert code == 0
        results = json.loads(out)["results"]
        assert results["all_passed"] is True
        assert {s["suite"] for s in results["suites"]} == {
            "weight-running-sum-identity",
            "envelope-concavity",
            "coefficient-slack",
            "series-vs-quadrature",
        }

    def test_seed_echo(self, capsys):
        code, out, _ = run_cli(capsys, "selftest", "--seed", "777")
        assert code == 0
        assert json.loads(out)["seed"] == 777


class TestFailurePaths:
    """Mutation checks: the failure exit codes fire when the math breaks."""

    def test_corrupted_recurrence_fails_selftest(self, capsys, monkeypatch):
        import numpy as np

        import bohrlab.series as series

        def broken(beta, n_max):
            w = np.empty(n_max + 1)
            w[0] = 1.0
            for n in range(1, n_max + 1):
                # drifting factor: the running-sum identity degrades ~ n * 1e-8
                w[n] = w[n - 1] * (n - 1 + beta) / n * (1.0 + 1e-8)
            return series.BinomialWeights(beta, w)

        monkeypatch.setattr(series, "binomial_coeffs", broken)
        code, out, _ = run_cli(capsys, "selftest")
        assert code != 0
        results = json.loads(out)["results"]
        identity = next(
            s for s in results["suites"] if s["suite"] == "weight-running-sum-identity"
        )
        assert identity["passed"] is False

    def test_no_witness_hairline_above_radius_exits_4(self, capsys):
        # a hair beyond the radius the extremal excess is quadratically
        # small, below the witness threshold, so the scan reports none
        import bohrlab as bl

        root = bl.solve_radius(bl.RadiusProblem(bl.Bernardi(1.0, 0))).root
        code, _, err = run_cli(
            capsys,
            "verify",
            "--op",
            "libera",
            "--r-mode",
            "above",
            "--r",
            f"{root + 1e-12:.17g}",
        )
        assert code == 4 and "no violation witness" in err

    def test_forced_violations_exit_4_and_log_seed(self, capsys, monkeypatch):
        from bohrlab import cli as cli_mod

        monkeypatch.setattr(cli_mod, "sup_bound", lambda kind, r: 0.0)
        code, _, err = run_cli(
            capsys, "verify", "--op", "libera", "--samples", "10", "--seed", "3"
        )
        assert code == 4 and "seed" in err

    def test_forced_reconstruction_mismatch_exits_5(self, capsys, monkeypatch):
        import bohrlab as bl
        from bohrlab import cli as cli_mod

        def skewed(beta, a, r, eps=1e-12):
            dec = bl.decomposition_cesaro(beta, a, r, eps)
            return bl.Decomposition(
                dec.bound_term + 1e-6, dec.deficit_term, dec.remainder, dec.total
            )

        monkeypatch.setattr(cli_mod, "decomposition_cesaro", skewed)
        code, _, err = run_cli(
            capsys, "sharpness", "--op", "cesaro", "--beta", "1", "--r", "0.5"
        )
        assert code == 5 and "reconstruction" in err


def test_out_flag_writes_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out, _ = run_cli(
        capsys, "radius", "--op", "cesaro", "--beta", "1", "--out", str(target)
    )
    assert code == 0 and out == ""
    payload = json.loads(target.read_text())
    assert payload["command"] == "radius"


def test_csv_uses_17_significant_digits(capsys):
    code, out, _ = run_cli(
        capsys, "radius", "--op", "libera", "--format", "csv"
    )
    assert code == 0
    root_text = out.strip().splitlines()[1].split(",")[0]
    assert float(root_text) == pytest.approx(0.5828116438658134, abs=1e-15)
    assert len(root_text.replace("0.", "")) >= 16
