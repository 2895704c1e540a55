"""CLI behavior: exit codes, output shapes, determinism."""

import json
import os
import subprocess
import sys

import pytest

from convexmod.cli import main

PKG_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestEq:
    def test_convexity_instance_is_equal(self, capsys):
        code, out, _ = run(capsys, "eq", "--semiring", "qplus",
                           "--vars", "x,y",
                           "x|y", "x|y|(1/2.x+1/2.y)")
        assert code == 0
        assert out == "equal\n"

    def test_unequal_exits_one_with_witness(self, capsys):
        code, out, _ = run(capsys, "eq", "--vars", "x", "x|2.x", "x")
        assert code == 1
        assert "unequal" in out
        assert "{x: 2}" in out

    def test_unequal_json_witness(self, capsys):
        code, out, _ = run(capsys, "eq", "--vars", "x", "--format", "json",
                           "x|2.x", "x")
        assert code == 1
        d = json.loads(out)
        assert d == {"equal": False, "side": "left", "witness": {"x": "2"}}

    def test_empty_versus_zero(self, capsys):
        code, out, _ = run(capsys, "eq", "--vars", "x", "--format", "json",
                           "bot", "0")
        assert code == 1
        d = json.loads(out)
        assert d["equal"] is False

    def test_csv_row(self, capsys):
        code, out, _ = run(capsys, "eq", "--vars", "x", "--format", "csv",
                           "x", "x")
        assert code == 0
        assert out == "equal,side,witness\ntrue,,\n"


class TestEval:
    def test_interval_json(self, capsys):
        code, out, _ = run(capsys, "eval", "--semiring", "qplus",
                           "--vars", "x", "2.x|5.x", "--format", "json")
        assert code == 0
        d = json.loads(out)
        assert d["kind"] == "interval"
        assert (d["min"], d["max"]) == ("2", "5")
        assert d["set"]["generators"] == [{"x": "2"}, {"x": "5"}]

    def test_empty_interval_json(self, capsys):
        code, out, _ = run(capsys, "eval", "--vars", "x", "bot",
                           "--format", "json")
        assert code == 0
        d = json.loads(out)
        assert d["min"] is None and d["max"] is None

    def test_interval_csv(self, capsys):
        code, out, _ = run(capsys, "eval", "--vars", "x", "2.x|5.x",
                           "--format", "csv")
        assert code == 0
        assert out == "min,max\n2,5\n"

    def test_empty_interval_csv_has_header_only(self, capsys):
        code, out, _ = run(capsys, "eval", "--vars", "x", "x+bot",
                           "--format", "csv")
        assert code == 0
        assert out == "min,max\n"

    def test_polygon_text(self, capsys):
        code, out, _ = run(capsys, "eval", "--vars", "x,y",
                           "x | y | (x + 3.y)")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "generators: {x: 1} {x: 1, y: 3} {y: 1}"
        assert lines[1] == "polygon: (0, 1) (1, 0) (1, 3)"

    def test_three_variables_fall_back_to_generators(self, capsys):
        code, out, _ = run(capsys, "eval", "--vars", "x,y,z",
                           "x|y|z", "--format", "json")
        assert code == 0
        assert json.loads(out)["kind"] == "generators"

    def test_bool_generators_kind(self, capsys):
        code, out, _ = run(capsys, "eval", "--semiring", "bool",
                           "--vars", "x", "x|0", "--format", "json")
        assert code == 0
        assert json.loads(out)["kind"] == "generators"

    def test_parse_error_is_usage(self, capsys):
        code, out, err = run(capsys, "eval", "--vars", "x", "x +",
                             "--format", "json")
        assert code == 2
        assert out == ""
        d = json.loads(err)
        assert d["kind"] == "parse"
        assert "position" in d["error"]

    def test_unbound_variable_is_usage(self, capsys):
        code, _, err = run(capsys, "eval", "--vars", "x", "x + y")
        assert code == 2
        assert "unbound variable" in err


class TestLaws:
    def test_weakdist_bool_xsize3_meets_expectations(self, capsys):
        code, out, _ = run(capsys, "laws", "--suite", "weakdist",
                           "--semiring", "bool", "--xsize", "3",
                           "--format", "json")
        assert code == 0
        rows = [json.loads(line) for line in out.splitlines()]
        status = {r["law"]: r["status"] for r in rows}
        assert status == {"eta_P_triangle": "pass",
                          "mu_S_rectangle": "pass",
                          "mu_P_rectangle": "pass",
                          "eta_S_triangle": "fail"}
        eta_s = next(r for r in rows if r["law"] == "eta_S_triangle")
        assert eta_s["meta"]["expected"] == "fail"
        assert eta_s["counterexample"]

    def test_weakdist_nat_all_pass(self, capsys):
        code, out, _ = run(capsys, "laws", "--suite", "weakdist",
                           "--semiring", "nat", "--format", "json")
        assert code == 0
        rows = [json.loads(line) for line in out.splitlines()]
        assert all(r["status"] == "pass" for r in rows)

    def test_pentagon_qplus(self, capsys):
        code, out, _ = run(capsys, "laws", "--suite", "pentagon",
                           "--trials", "15", "--format", "json")
        assert code == 0
        rows = [json.loads(line) for line in out.splitlines()]
        assert [r["law"] for r in rows] == [
            "pentagon:free", "pentagon:interval",
            "pentagon:interval:sum_rule"]
        assert all(r["status"] == "pass" for r in rows)

    def test_pentagon_nat_is_usage_error(self, capsys):
        code, _, err = run(capsys, "laws", "--suite", "pentagon",
                           "--semiring", "nat")
        assert code == 2
        assert "positive semifield" in err

    def test_naturality_expected_failure_met(self, capsys):
        code, out, _ = run(capsys, "laws", "--suite", "naturality",
                           "--trials", "10", "--format", "json")
        assert code == 0
        rows = [json.loads(line) for line in out.splitlines()]
        choice = next(r for r in rows if r["law"] == "choice_naturality")
        assert choice["status"] == "fail"
        assert choice["meta"]["expected"] == "fail"
        assert choice["counterexample"]["f"] == {"x": "x", "y": "y",
                                                 "z": "y"}

    def test_appendix_a(self, capsys):
        code, out, _ = run(capsys, "laws", "--suite", "appendixA",
                           "--format", "json")
        assert code == 0
        rows = [json.loads(line) for line in out.splitlines()]
        assert [r["law"] for r in rows] == [
            "appendixA:forward_image", "trivial_lifting_fixed_points"]
        assert rows[1]["meta"]["families"] == 256

    def test_text_format_marks_expected_outcomes(self, capsys):
        code, out, _ = run(capsys, "laws", "--suite", "weakdist",
                           "--semiring", "bool")
        assert code == 0
        lines = out.splitlines()
        assert any(line.startswith("ok  fail eta_S_triangle")
                   for line in lines)
        assert not any(line.startswith("BAD") for line in lines)

    def test_csv_format(self, capsys):
        code, out, _ = run(capsys, "laws", "--suite", "appendixA",
                           "--format", "csv")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "name,semiring,status,mode,detail"
        assert lines[1].startswith("appendixA:forward_image,bool,pass,")

    def test_zero_trials_rejected(self, capsys):
        code, _, err = run(capsys, "laws", "--suite", "pentagon",
                           "--trials", "0")
        assert code == 2
        assert "trials" in err


EXAMPLE_PHI = {"weights": [
    {"set": ["x", "y"], "value": "5"},
    {"set": ["x", "z"], "value": "9"},
    {"set": ["a", "b"], "value": "13"},
]}


class TestDelta:
    def test_qplus_hull_generators(self, capsys, tmp_path):
        p = tmp_path / "phi.json"
        p.write_text(json.dumps(EXAMPLE_PHI), encoding="utf-8")
        code, out, _ = run(capsys, "delta", "--phi", str(p),
                           "--format", "json")
        assert code == 0
        d = json.loads(out)
        assert d["kind"] == "generators"
        assert len(d["generators"]) == 8
        assert {"a": "13", "x": "14"} in d["generators"]

    def test_bool_compare_bruteforce_agrees(self, capsys, tmp_path):
        p = tmp_path / "phi.json"
        p.write_text(json.dumps({"weights": [
            {"set": ["x", "y"], "value": True},
            {"set": ["y", "z"], "value": True},
        ]}), encoding="utf-8")
        code, out, _ = run(capsys, "delta", "--semiring", "bool",
                           "--phi", str(p), "--compare-bruteforce",
                           "--format", "json")
        assert code == 0
        d = json.loads(out)
        assert d["compare"]["agree"] is True
        assert d["compare"]["bruteforce_count"] == 5

    def test_compare_needs_bool(self, capsys, tmp_path):
        p = tmp_path / "phi.json"
        p.write_text(json.dumps(EXAMPLE_PHI), encoding="utf-8")
        code, _, err = run(capsys, "delta", "--phi", str(p),
                           "--compare-bruteforce")
        assert code == 2
        assert "bool" in err

    def test_nat_routes_through_bruteforce(self, capsys, tmp_path):
        p = tmp_path / "phi.json"
        p.write_text(json.dumps({"weights": [
            {"set": ["x", "y"], "value": 2},
        ]}), encoding="utf-8")
        code, out, _ = run(capsys, "delta", "--semiring", "nat",
                           "--phi", str(p), "--format", "json")
        assert code == 0
        gens = json.loads(out)["generators"]
        # weak compositions of 2 over two symbols, canonical order
        assert gens == [{"x": 1, "y": 1}, {"x": 2}, {"y": 2}]

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "delta", "--phi", "/nonexistent.json")
        assert code == 2
        assert "no such file" in err

    def test_malformed_json(self, capsys, tmp_path):
        p = tmp_path / "phi.json"
        p.write_text("{not json", encoding="utf-8")
        code, _, err = run(capsys, "delta", "--phi", str(p))
        assert code == 2
        assert "bad JSON" in err

    def test_wrong_shape(self, capsys, tmp_path):
        p = tmp_path / "phi.json"
        p.write_text(json.dumps({"weights": [{"set": ["x"]}]}),
                     encoding="utf-8")
        code, _, err = run(capsys, "delta", "--phi", str(p))
        assert code == 2
        assert "'set' and 'value'" in err

    def test_csv_output(self, capsys, tmp_path):
        p = tmp_path / "phi.json"
        p.write_text(json.dumps({"weights": [
            {"set": ["x", "y"], "value": "1"},
        ]}), encoding="utf-8")
        code, out, _ = run(capsys, "delta", "--phi", str(p),
                           "--format", "csv")
        assert code == 0
        assert out == "x,y\n1,0\n0,1\n"


class TestRender:
    def test_polygon_json(self, capsys):
        code, out, _ = run(capsys, "render", "--vars", "x,y",
                           "x | y | (x + 3.y)", "--format", "json")
        assert code == 0
        d = json.loads(out)
        assert d == {"semiring": "qplus", "variables": ["x", "y"],
                     "kind": "polygon",
                     "vertices": [["0", "1"], ["1", "0"], ["1", "3"]]}

    def test_segment_csv(self, capsys):
        code, out, _ = run(capsys, "render", "--vars", "x1,x2", "x1 | x2",
                           "--format", "csv")
        assert code == 0
        assert out == "x1,x2\n0,1\n1,0\n"

    def test_from_set_json(self, capsys, tmp_path):
        p = tmp_path / "set.json"
        p.write_text(json.dumps({
            "semiring": "qplus",
            "generators": [{"x": "2"}, {"x": "5"}],
        }), encoding="utf-8")
        code, out, _ = run(capsys, "render", "--set-json", str(p),
                           "--format", "json")
        assert code == 0
        d = json.loads(out)
        assert d["kind"] == "interval"
        assert (d["min"], d["max"]) == ("2", "5")

    def test_needs_input(self, capsys):
        code, _, err = run(capsys, "render", "--vars", "x")
        assert code == 2
        assert "term or --set-json" in err


class TestUsage:
    def test_unknown_subcommand(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 2

    def test_missing_required_flag(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["eval", "x"])
        assert exc.value.code == 2

    def test_blank_vars_list(self, capsys):
        code, _, err = run(capsys, "eval", "--vars", ",", "x")
        assert code == 2
        assert "empty variable list" in err

    def test_bad_env_seed(self, capsys, monkeypatch):
        monkeypatch.setenv("CONVEXMOD_SEED", "not-a-number")
        code, _, err = run(capsys, "laws", "--suite", "appendixA")
        assert code == 2
        assert "CONVEXMOD_SEED" in err


class TestDeterminism:
    def test_identical_argv_identical_output(self, capsys):
        argv = ["laws", "--suite", "pentagon", "--trials", "8",
                "--seed", "3", "--format", "json"]
        code1 = main(list(argv))
        out1 = capsys.readouterr().out
        code2 = main(list(argv))
        out2 = capsys.readouterr().out
        assert code1 == code2 == 0
        assert out1 == out2

    def test_env_seed_overrides_flag(self, capsys, monkeypatch):
        base = ["laws", "--suite", "pentagon", "--trials", "8",
                "--format", "json"]
        monkeypatch.setenv("CONVEXMOD_SEED", "5")
        main(base + ["--seed", "0"])
        with_env = capsys.readouterr().out
        monkeypatch.delenv("CONVEXMOD_SEED")
        main(base + ["--seed", "5"])
        plain = capsys.readouterr().out
        assert with_env == plain

    def test_subprocess_byte_identical(self):
        cmd = [sys.executable, "-m", "convexmod", "laws", "--suite",
               "weakdist", "--semiring", "qplus", "--trials", "10",
               "--format", "json"]
        env = dict(os.environ, PYTHONHASHSEED="0")
        a = subprocess.run(cmd, capture_output=True, cwd=PKG_ROOT, env=env)
        env2 = dict(os.environ, PYTHONHASHSEED="12345")
        b = subprocess.run(cmd, capture_output=True, cwd=PKG_ROOT, env=env2)
        assert a.returncode == b.returncode == 0
        assert a.stdout == b.stdout


class TestConsoleEntry:
    def test_module_invocation(self):
        out = subprocess.run(
            [sys.executable, "-m", "convexmod", "eq", "--vars", "x,y",
             "x|y", "y|x"],
            capture_output=True, text=True, cwd=PKG_ROOT)
        assert out.returncode == 0
        assert out.stdout == "equal\n"
