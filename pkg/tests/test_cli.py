import json

import pytest

from musum.cli import (
    EXIT_DOMAIN,
    EXIT_OK,
    EXIT_USAGE,
    run,
)
from musum.sweeps import SWEEP_KINDS, replay_instances, run_sweep


def _run(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestSumCommands:
    def test_equality_at_one(self, capsys):
        code, out, _ = _run(capsys, "sum", "--set", "all", "--x", "1")
        assert code == EXIT_OK
        assert "1/1" in out
        assert "True" in out or "true" in out

    def test_parse_error_exits_one(self, capsys):
        code, _, err = _run(capsys, "sum", "--set", "finite:4", "--x", "10")
        assert code == EXIT_USAGE
        assert "4 is not prime" in err

    def test_unknown_subcommand(self, capsys):
        code, _, err = _run(capsys, "frobnicate")
        assert code == EXIT_USAGE

    def test_exact_ceiling_is_usage_error(self, capsys):
        code, _, err = _run(capsys, "sum", "--set", "all", "--x", "200000",
                            "--mode", "exact")
        assert code == EXIT_USAGE
        assert "float" in err

    def test_json_exact_value(self, capsys):
        code, out, _ = _run(capsys, "sum", "--set", "finite:2,3", "--x", "6",
                            "--format", "json")
        assert code == EXIT_OK
        payload = json.loads(out)
        assert payload["value_exact"] == "1/3"
        assert payload["bound_ok"] is True

    def test_coprime(self, capsys):
        code, out, _ = _run(capsys, "coprime", "--p", "6", "--x", "10",
                            "--format", "json")
        assert code == EXIT_OK
        assert json.loads(out)["value_exact"] == "23/35"

    def test_semiprime_bound_violation_is_not_a_failure(self, capsys):
        code, out, _ = _run(capsys, "semiprime", "--x", "10", "--format", "json")
        assert code == EXIT_OK
        payload = json.loads(out)
        assert payload["value_exact"] == "19/15"
        assert payload["bound_ok"] is False


class TestZornCommand:
    def test_example(self, capsys):
        code, out, _ = _run(capsys, "zorn", "--set", "finite:2,3", "--x", "10",
                            "--format", "json")
        assert code == EXIT_OK
        payload = json.loads(out)
        assert payload == {"lhs": 3, "rhs": 3, "equal": True}


class TestDomainErrors:
    def test_zeta_on_boundary(self, capsys):
        code, _, err = _run(capsys, "zeta", "--set", "all", "--re", "1.0")
        assert code == EXIT_DOMAIN

    def test_beurling_bad_generator(self, capsys):
        code, _, err = _run(capsys, "beurling", "--generators", "0.9", "--x", "1.0")
        assert code == EXIT_DOMAIN

    def test_blowup_zero_t(self, capsys):
        code, _, err = _run(capsys, "blowup", "--t", "0", "--shift", "0",
                            "--eps", "0.5,0.2", "--prime-limit", "100")
        assert code == EXIT_DOMAIN


class TestFormats:
    def test_csv_convergence_header(self, capsys):
        code, out, _ = _run(capsys, "converge", "--set", "finite:2,3",
                            "--x-grid", "6,100", "--format", "csv")
        assert code == EXIT_OK
        lines = out.strip().splitlines()
        assert lines[0] == "x,sum_value,product_value,gap"
        assert len(lines) == 3

    def test_csv_blowup_header(self, capsys):
        code, out, _ = _run(capsys, "blowup", "--t", "1.0", "--shift", "0.0",
                            "--eps", "0.5,0.2", "--prime-limit", "1000",
                            "--format", "csv")
        assert code == EXIT_OK
        assert out.splitlines()[0] == "eps,re,im,modulus,log_tail_bound"

    def test_empty_table_is_header_only(self, capsys):
        code, out, _ = _run(capsys, "enumerate", "--set", "all", "--x", "0",
                            "--format", "csv")
        assert code == EXIT_OK
        assert out == "n,mu\n"

    def test_floats_have_17_significant_digits(self, capsys):
        code, out, _ = _run(capsys, "mertens", "--x", "10000", "--format", "csv")
        assert code == EXIT_OK
        value = out.strip().splitlines()[1].split(",")[0]
        assert len(value.replace("-", "").replace(".", "").lstrip("0")) >= 16

    def test_json_has_stable_key_order(self, capsys):
        _, first, _ = _run(capsys, "sum", "--set", "all", "--x", "100",
                           "--format", "json")
        _, second, _ = _run(capsys, "sum", "--set", "all", "--x", "100",
                            "--format", "json")
        assert first == second
        keys = list(json.loads(first))
        assert keys == ["params", "x", "mode", "value_exact", "value_float",
                        "float_error_bound", "term_count", "bound_ok"]

    def test_experiment_json_envelope(self, capsys):
        code, out, _ = _run(capsys, "mean-mobius", "--set", "all", "--x", "100",
                            "--format", "json")
        assert code == EXIT_OK
        payload = json.loads(out)
        assert list(payload) == ["experiment", "params", "verdicts",
                                 "fixtures_version", "result"]
        assert payload["fixtures_version"] == 1

    def test_out_file(self, capsys, tmp_path):
        target = tmp_path / "report.json"
        code, out, _ = _run(capsys, "gs-const", "--format", "json",
                            "--out", str(target))
        assert code == EXIT_OK
        assert out == ""
        assert json.loads(target.read_text())["value"] == pytest.approx(-0.45539701, abs=1e-6)

    def test_unwritable_out_is_resource_error(self, capsys, tmp_path):
        code, _, err = _run(capsys, "gs-const", "--out", str(tmp_path))
        assert code == 4
        assert "resource error" in err


class TestDeterminism:
    @pytest.mark.parametrize(
        "argv",
        [
            ("sum", "--set", "cofinite:3,5", "--x", "2000", "--format", "csv"),
            ("sweep", "--kind", "theorem1", "--trials", "25", "--seed", "42",
             "--format", "json"),
            ("blowup", "--t", "1.0", "--shift", "0.5", "--eps", "0.5,0.1",
             "--prime-limit", "2000", "--format", "csv"),
        ],
    )
    def test_byte_identical_reruns(self, capsys, argv):
        first = _run(capsys, *argv)
        second = _run(capsys, *argv)
        assert first == second


class TestSweeps:
    def test_all_kinds_pass_small(self, capsys):
        for kind in SWEEP_KINDS:
            code, out, _ = _run(capsys, "sweep", "--kind", kind, "--trials", "20",
                                "--seed", "7", "--format", "json")
            assert code == EXIT_OK, kind
            payload = json.loads(out)
            assert payload["passed"] == 20
            assert payload["failed"] == 0

    def test_dump_and_replay_identical_verdict(self, capsys, tmp_path):
        dump = tmp_path / "instances.json"
        code, out, _ = _run(capsys, "sweep", "--kind", "zorn", "--trials", "15",
                            "--seed", "3", "--dump", str(dump), "--format", "json")
        assert code == EXIT_OK
        code2, out2, _ = _run(capsys, "sweep", "--kind", "zorn",
                              "--replay", str(dump), "--format", "json")
        assert code2 == EXIT_OK
        replayed = json.loads(out2)
        assert replayed["kind"] == "replay"
        assert replayed["trials"] == 15
        assert replayed["passed"] == 15

    def test_python_api_replay_matches(self):
        result = run_sweep("mock", 30, 11)
        assert result.ok and result.passed == 30
        replay = replay_instances(result.instances)
        assert replay.passed == 30
        assert replay.failures == result.failures == []


class TestHelp:
    def test_top_level_help(self, capsys):
        code, out, _ = _run(capsys, "--help")
        assert code == 0
        assert "COMMAND" in out

    @pytest.mark.parametrize(
        "command,needle",
        [
            ("sum", "unit bound"),
            ("coprime", "coprime"),
            ("divisors", "phi(N)/N"),
            ("shifted", "mu(m*n)"),
            ("zorn", "counting identity"),
            ("euler", "limit of the partial sums"),
            ("weighted", "convexity"),
            ("converge", "Landau"),
            ("mertens", "Mertens"),
            ("mean-mobius", "Wirsing"),
            ("gran", "gamma"),
            ("zeta", "Re(s) > 1"),
            ("logres", "p^-sigma"),
            ("blowup", "blows up"),
            ("gs-const", "-0.4553"),
            ("semiprime", "diverges"),
            ("beurling", "Beurling"),
            ("density", "Density"),
            ("sweep", "theorem1"),
        ],
    )
    def test_subcommand_help_names_its_result(self, capsys, command, needle):
        code, out, _ = _run(capsys, command, "--help")
        assert code == 0
        assert needle in out
