"""Tests for the command line interface and the figure-data exporters."""

import subprocess
import sys
from unittest import mock

import pytest

from bibench.cli import (
    FIGURE_KINDS,
    build_figure,
    figure_levels_vs_ones,
    figure_objective_space,
    figure_objectives_vs_ones,
    main,
)
from bibench.errors import ValidationError
from bibench.landscape import enumerate_landscape, render_report
from bibench.oracles import ClaimResult, VerificationReport
from bibench.problems import parse_descriptor, validate


def run_main(capsys, argv):
    rc = main(argv)
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


class TestEval:
    def test_descriptor_form(self, capsys):
        assert run_main(capsys, ["eval", "lotz:n=8", "11100000"]) == (0, "(3,5)\n", "")

    def test_flag_form(self, capsys):
        argv = ["eval", "--family", "ojzj", "--n", "8", "--k", "2", "11111111"]
        assert run_main(capsys, argv) == (0, "(10,2)\n", "")

    def test_descriptor_and_flags_conflict(self, capsys):
        rc, out, err = run_main(
            capsys, ["eval", "lotz:n=8", "--family", "omm", "--n", "8", "11100000"]
        )
        assert rc == 1
        assert err.startswith("error:")

    def test_bad_bits(self, capsys):
        rc, _, err = run_main(capsys, ["eval", "lotz:n=8", "11x00000"])
        assert rc == 1
        assert err.startswith("error:")

    def test_length_mismatch(self, capsys):
        rc, _, err = run_main(capsys, ["eval", "lotz:n=8", "111"])
        assert rc == 1
        assert err.startswith("error:")


class TestLandscapeCommand:
    def test_writes_report_and_prints_summary(self, capsys, tmp_path):
        out_file = tmp_path / "report.txt"
        rc, out, err = run_main(capsys, ["landscape", "lotz:n=8", "--out", str(out_file)])
        assert (rc, out, err) == (0, "|PS|=9 ratio=9/256 components=1 |LO|=0\n", "")
        expected = render_report(enumerate_landscape(parse_descriptor("lotz:n=8")))
        assert out_file.read_text(encoding="utf-8") == expected

    def test_reruns_are_byte_identical(self, capsys, tmp_path):
        a, b = tmp_path / "a.txt", tmp_path / "b.txt"
        run_main(capsys, ["landscape", "ojzj:n=8,k=2", "--out", str(a)])
        run_main(capsys, ["landscape", "ojzj:n=8,k=2", "--out", str(b)])
        assert a.read_bytes() == b.read_bytes()

    def test_cap_guard(self, capsys, tmp_path):
        rc, _, err = run_main(
            capsys, ["landscape", "omm:n=30", "--out", str(tmp_path / "x")]
        )
        assert rc == 1
        assert "exceeds the enumeration cap" in err


class TestRatioCommand:
    def test_ojzj(self, capsys):
        rc, out, _ = run_main(capsys, ["ratio", "ojzj", "--n", "8", "--k", "2"])
        assert rc == 0
        assert out == (
            "ratio = 15/16 (0.937500)\n"
            "threshold_k = 1\n"
            "ratio >= 1/2: true\n"
        )

    def test_ojzj_rejects_block_length(self, capsys):
        rc, _, err = run_main(capsys, ["ratio", "ojzj", "--n", "8", "--k", "2", "--l", "1"])
        assert rc == 1
        assert "ojzj takes no --l" in err

    def test_ojzr_narrow_blocks_print_no_bound(self, capsys):
        rc, out, _ = run_main(capsys, ["ratio", "ojzr", "--n", "8", "--k", "3", "--l", "2"])
        assert (rc, out) == (0, "ratio = 9/64 (0.140625)\n")

    def test_ojzr_with_bound(self, capsys):
        rc, out, _ = run_main(capsys, ["ratio", "ojzr", "--n", "12", "--k", "5", "--l", "3"])
        assert rc == 0
        assert out == (
            "ratio = 39/1024 (0.038086)\n"
            "bound = 2^(-3) (0.125000)\n"
            "within_bound: true\n"
        )

    def test_ojzr_bound_violation_is_reported(self, capsys):
        rc, out, _ = run_main(capsys, ["ratio", "ojzr", "--n", "8", "--k", "3", "--l", "4"])
        assert rc == 0
        assert out == (
            "ratio = 15/64 (0.234375)\n"
            "bound = 2^(-3) (0.125000)\n"
            "within_bound: false\n"
        )

    def test_ojzr_half_integer_exponent(self, capsys):
        rc, out, _ = run_main(capsys, ["ratio", "ojzr", "--n", "9", "--k", "2", "--l", "3"])
        assert rc == 0
        assert out == (
            "ratio = 11/128 (0.085938)\n"
            "bound = 2^(-5/2) (0.176777)\n"
            "within_bound: true\n"
        )

    def test_domain_error(self, capsys):
        rc, _, err = run_main(capsys, ["ratio", "ojzj", "--n", "8", "--k", "4"])
        assert rc == 1
        assert err.startswith("error:")


class TestFigureDatasets:
    def test_objective_space_golden(self, capsys, tmp_path):
        out_file = tmp_path / "fig.csv"
        rc, out, _ = run_main(
            capsys,
            ["figure", "omm:n=8", "--kind", "objective_space", "--out", str(out_file)],
        )
        assert (rc, out) == (0, "objective_space: 9 rows\n")
        assert out_file.read_text(encoding="utf-8") == (
            "f1,f2,count,class\n"
            "0,8,1,pareto\n"
            "1,7,8,pareto\n"
            "2,6,28,pareto\n"
            "3,5,56,pareto\n"
            "4,4,70,pareto\n"
            "5,3,56,pareto\n"
            "6,2,28,pareto\n"
            "7,1,8,pareto\n"
            "8,0,1,pareto\n"
        )

    def test_levels_vs_ones_golden(self, capsys, tmp_path):
        out_file = tmp_path / "fig.csv"
        rc, out, _ = run_main(
            capsys,
            ["figure", "lotz:n=2", "--kind", "levels_vs_ones", "--out", str(out_file)],
        )
        assert (rc, out) == (0, "levels_vs_ones: 4 rows\n")
        assert out_file.read_text(encoding="utf-8") == (
            "ones,level,count\n0,1,1\n1,1,1\n1,2,1\n2,1,1\n"
        )

    def test_objectives_vs_ones_golden(self, capsys, tmp_path):
        out_file = tmp_path / "fig.csv"
        rc, out, _ = run_main(
            capsys,
            ["figure", "lotz:n=2", "--kind", "objectives_vs_ones", "--out", str(out_file)],
        )
        assert (rc, out) == (0, "objectives_vs_ones: 8 rows\n")
        assert out_file.read_text(encoding="utf-8") == (
            "ones,objective,value,count\n"
            "0,1,0,1\n"
            "0,2,2,1\n"
            "1,1,0,1\n"
            "1,1,1,1\n"
            "1,2,0,1\n"
            "1,2,1,1\n"
            "2,1,2,1\n"
            "2,2,0,1\n"
        )

    def test_reruns_are_byte_identical(self, capsys, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        argv = ["figure", "ojzr:n=12,k=5,l=3", "--kind", "objective_space", "--out"]
        run_main(capsys, argv + [str(a)])
        run_main(capsys, argv + [str(b)])
        assert a.read_bytes() == b.read_bytes()

    def test_classes_partition_the_cube(self):
        report = enumerate_landscape(parse_descriptor("ojzr:n=12,k=5,l=3"))
        dataset = figure_objective_space(report)
        assert sum(row[2] for row in dataset.rows) == 1 << 12
        assert {row[3] for row in dataset.rows} == {"pareto", "local_optimum", "other"}

    def test_levels_partition_the_cube(self):
        report = enumerate_landscape(parse_descriptor("cocz:n=8"))
        dataset = figure_levels_vs_ones(report)
        assert sum(row[2] for row in dataset.rows) == 256

    def test_objectives_count_each_string_twice(self):
        report = enumerate_landscape(parse_descriptor("omtz:n=8"))
        dataset = figure_objectives_vs_ones(report)
        assert sum(row[3] for row in dataset.rows) == 2 * 256

    def test_build_figure_dispatch_and_unknown_kind(self):
        report = enumerate_landscape(parse_descriptor("omm:n=4"))
        for kind in FIGURE_KINDS:
            assert build_figure(report, kind).kind == kind
        with pytest.raises(ValidationError):
            build_figure(report, "histogram")


class TestVerifyCommand:
    def test_family_scope_golden_summary(self, capsys):
        rc, out, err = run_main(capsys, ["verify", "lotz"])
        assert rc == 0
        lines = out.splitlines()
        assert lines[-1] == "instances=5 must_match_failures=0 informational_mismatches=0"
        assert out.count("lotz:n=") == 5

    def test_informational_mismatches_do_not_fail(self, capsys):
        rc, out, _ = run_main(capsys, ["verify", "ojzr", "--n-max", "6"])
        assert rc == 0
        assert out.splitlines()[-1] == (
            "instances=6 must_match_failures=0 informational_mismatches=4"
        )

    def test_out_file_holds_body_and_summary(self, capsys, tmp_path):
        out_file = tmp_path / "verify.txt"
        rc, out, _ = run_main(capsys, ["verify", "omm", "--out", str(out_file)])
        assert rc == 0
        text = out_file.read_text(encoding="utf-8")
        assert text.count("pareto_set: match") == 5
        assert text.endswith("instances=5 must_match_failures=0 informational_mismatches=0\n")
        assert out == "instances=5 must_match_failures=0 informational_mismatches=0\n"

    def test_must_match_failure_exits_two(self, capsys):
        def fake_verify(inst, cap=None, max_counterexamples=5):
            claim = ClaimResult("pareto_set", True, False, "claimed=1 actual=2", ())
            return VerificationReport(inst, (claim,), ())

        with mock.patch("bibench.cli.verify", fake_verify):
            rc, out, _ = run_main(capsys, ["verify", "omm", "--n-max", "6"])
        assert rc == 2
        assert "must_match_failures=1" in out

    def test_empty_grid_rejected(self, capsys):
        rc, _, err = run_main(capsys, ["verify", "omm", "--n-max", "2"])
        assert rc == 1
        assert err.startswith("error:")


class TestRunCommand:
    def test_stdout_golden(self, capsys):
        rc, out, _ = run_main(
            capsys, ["run", "gsemo", "omm:n=4", "--seeds", "1,2", "--budget", "1000"]
        )
        assert rc == 0
        assert out == (
            "seed,hit,hitting_time,evaluations_used\n"
            "1,true,36,36\n"
            "2,true,61,61\n"
            "summary: success=1/1 median_hitting_time=48.5 mean_hitting_time=48.5\n"
        )

    def test_seed_range_and_float_budget_to_file(self, capsys, tmp_path):
        out_file = tmp_path / "runs.csv"
        rc, out, _ = run_main(
            capsys,
            [
                "run", "gsemo", "omm:n=4",
                "--seeds", "1..3", "--budget", "2e2", "--out", str(out_file),
            ],
        )
        assert rc == 0
        assert out == "summary: success=1/1 median_hitting_time=58 mean_hitting_time=51.666666666666664\n"
        text = out_file.read_text(encoding="utf-8")
        assert text.startswith("seed,hit,hitting_time,evaluations_used\n1,true,36,36\n")
        assert text.count("\n") == 5

    def test_front_point_target(self, capsys):
        rc, out, _ = run_main(
            capsys,
            [
                "run", "semo", "omm:n=4",
                "--seeds", "1", "--budget", "500", "--target", "front_point=4,0",
            ],
        )
        assert rc == 0
        assert "1,true,25,25\n" in out

    def test_coverage_target(self, capsys):
        rc, out, _ = run_main(
            capsys,
            [
                "run", "semo", "omm:n=4",
                "--seeds", "1", "--budget", "500", "--target", "coverage=3/5",
            ],
        )
        assert rc == 0
        assert out.splitlines()[1].startswith("1,true,")

    def test_reruns_are_identical(self, capsys):
        argv = ["run", "semo", "lotz:n=8", "--seeds", "4,5", "--budget", "50000"]
        _, first, _ = run_main(capsys, argv)
        _, second, _ = run_main(capsys, argv)
        assert first == second

    def test_bad_seed_list(self, capsys):
        rc, _, err = run_main(capsys, ["run", "semo", "omm:n=4", "--seeds", "x", "--budget", "10"])
        assert (rc, err) == (1, "error: bad seed list 'x'\n")

    def test_bad_budget(self, capsys):
        rc, _, err = run_main(
            capsys, ["run", "semo", "omm:n=4", "--seeds", "1", "--budget", "0.5"]
        )
        assert rc == 1
        assert "budget must be a positive integer" in err

    def test_bad_target(self, capsys):
        rc, _, err = run_main(
            capsys,
            ["run", "semo", "omm:n=4", "--seeds", "1", "--budget", "10", "--target", "most"],
        )
        assert rc == 1
        assert "unknown target 'most'" in err


class TestFamiliesCommand:
    def test_lists_all_families(self, capsys):
        rc, out, _ = run_main(capsys, ["families"])
        assert rc == 0
        lines = out.splitlines()
        assert len(lines) == 11
        assert lines[0] == "omm: objectives=(ones; zeroes) params=- constraints=1 <= n <= 63"
        assert all("objectives=" in line for line in lines)


class TestUsageErrors:
    def test_unknown_command(self, capsys):
        rc, _, err = run_main(capsys, ["nope"])
        assert rc == 1
        assert err.startswith("error:")

    def test_missing_command(self, capsys):
        rc, _, err = run_main(capsys, [])
        assert rc == 1
        assert err.startswith("error:")

    def test_instance_required(self, capsys):
        rc, _, err = run_main(capsys, ["eval", "11100000"])
        assert rc == 1
        assert err.startswith("error:")

    def test_unwritable_out_path(self, capsys, tmp_path):
        target = str(tmp_path / "missing" / "report.txt")
        rc, _, err = run_main(capsys, ["landscape", "lotz:n=4", "--out", target])
        assert rc == 1
        assert err.startswith(f"error: cannot write {target}:")


class TestModuleEntryPoint:
    def test_python_dash_m(self):
        proc = subprocess.run(
            [sys.executable, "-m", "bibench", "eval", "omm:n=8", "10110010"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert proc.stdout == "(4,4)\n"
