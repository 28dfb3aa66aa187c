"""Command-line interface: exit codes, JSON reports, file round-trips."""

import json
from fractions import Fraction

import pytest

from promata import loads, machine_accepts
from promata.cli import ExperimentConfig, main, run


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_build_prints_machine_json(capsys):
    code, out, _ = run_cli(capsys, "build", "evenodd-afa", "--k", "3")
    assert code == 0
    data = json.loads(out)
    assert data["states"] == 23
    assert data["type"] == "afa"


def test_build_writes_file(tmp_path, capsys):
    path = tmp_path / "machine.json"
    code, out, _ = run_cli(capsys, "build", "evenodd-dfa", "--k", "1", "--out", str(path))
    assert code == 0
    assert out == ""
    machine = loads(path.read_text())
    assert machine.state_count == 4


def test_build_missing_parameter_is_usage_error(capsys):
    code, _, err = run_cli(capsys, "build", "evenodd-dfa")
    assert code == 2
    assert "--k" in err


def test_simulate_dfa(tmp_path, capsys):
    path = tmp_path / "d.json"
    run_cli(capsys, "build", "evenodd-dfa", "--k", "1", "--out", str(path))
    code, out, _ = run_cli(capsys, "simulate", "--machine", str(path), "--word", "aaaa")
    assert code == 0
    payload = json.loads(out)
    assert payload["outcome"] == "accept"
    code, out, _ = run_cli(capsys, "simulate", "--machine", str(path), "--word", "aa")
    assert json.loads(out)["outcome"] == "reject"


def test_simulate_pfa_distribution(tmp_path, capsys):
    path = tmp_path / "p.json"
    run_cli(capsys, "build", "up-pfa", "--p", "1/2", "--out", str(path))
    code, out, _ = run_cli(capsys, "simulate", "--machine", str(path), "--word", "aa")
    assert code == 0
    payload = json.loads(out)
    assert payload["distribution"]["accept"] == "1/4"


def test_convert_round_trip(tmp_path, capsys):
    src = tmp_path / "afa.json"
    run_cli(capsys, "build", "evenodd-afa", "--k", "1", "--out", str(src))
    code, out, _ = run_cli(capsys, "convert", "--from", str(src), "--algorithm", "unary-afa-dfa")
    assert code == 0
    big = loads(out)
    for n in range(0, 17):
        assert machine_accepts(big, "a" * n) == (n % 4 == 0)


def test_convert_wrong_machine_type(tmp_path, capsys):
    src = tmp_path / "dfa.json"
    run_cli(capsys, "build", "evenodd-dfa", "--k", "1", "--out", str(src))
    code, _, err = run_cli(capsys, "convert", "--from", str(src), "--algorithm", "subset")
    assert code == 2
    assert "nondeterministic" in err


def test_convert_missing_file(capsys):
    code, _, err = run_cli(capsys, "convert", "--from", "/nonexistent.json", "--algorithm", "minimize")
    assert code == 2


def test_bounds_report(capsys):
    code, out, _ = run_cli(capsys, "bounds", "--formula", "svfa-to-dfa", "--n", "7")
    assert code == 0
    payload = json.loads(out)
    assert payload["value"] == "10"
    assert payload["real_value"] == 10.0

    code, out, _ = run_cli(capsys, "bounds", "--formula", "afa-to-dfa", "--n", "2")
    assert json.loads(out)["value"] == "256"


def test_prob_exact_and_neutral_merge(tmp_path, capsys):
    path = tmp_path / "p.json"
    run_cli(capsys, "build", "trios-pfa", "--n", "1", "--r", "1", "--out", str(path))
    code, out, _ = run_cli(capsys, "prob", "exact", "--machine", str(path), "--word", "#001")
    assert code == 0
    assert json.loads(out)["accept"] == "1/1"

    code, out, _ = run_cli(
        capsys,
        "prob",
        "exact",
        "--machine",
        str(path),
        "--word",
        "#0",
        "--neutral-as-reject",
    )
    payload = json.loads(out)
    assert payload["neutral"] == "0/1"
    assert payload["reporting_mode"] == "neutral-as-reject"


def test_prob_mc_records_seed_and_algorithm(tmp_path, capsys):
    path = tmp_path / "p.json"
    run_cli(capsys, "build", "up-pfa", "--p", "1/2", "--out", str(path))
    code, out, _ = run_cli(
        capsys,
        "prob",
        "mc",
        "--machine",
        str(path),
        "--word",
        "a",
        "--trials",
        "1000",
        "--seed",
        "7",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["seed"] == 7
    assert payload["trials"] == 1000
    assert payload["algorithm"] == "mersenne-twister-per-trial"
    num, den = payload["accept"].split("/")
    assert abs(int(num) / int(den) - 0.5) < 0.1


def test_prob_mc_is_byte_stable(tmp_path, capsys):
    path = tmp_path / "p.json"
    run_cli(capsys, "build", "up-pfa", "--p", "9/10", "--out", str(path))
    args = ("prob", "mc", "--machine", str(path), "--word", "aa", "--trials", "500", "--seed", "3")
    _, first, _ = run_cli(capsys, *args)
    _, second, _ = run_cli(capsys, *args)
    assert first == second


def test_prob_lasvegas_verdict_exit(tmp_path, capsys):
    path = tmp_path / "lv.json"
    run_cli(capsys, "build", "trios-pfa", "--n", "2", "--r", "1", "--out", str(path))
    code, out, _ = run_cli(
        capsys,
        "prob",
        "lasvegas",
        "--machine",
        str(path),
        "--problem",
        "trios",
        "--n",
        "2",
        "--r",
        "1",
        "--max-length",
        "7",
        "--threshold",
        "1/2",
    )
    assert code == 0
    assert json.loads(out)["verdict"] == "solves"

    code, out, _ = run_cli(
        capsys,
        "prob",
        "lasvegas",
        "--machine",
        str(path),
        "--problem",
        "trios",
        "--n",
        "2",
        "--r",
        "1",
        "--max-length",
        "7",
        "--threshold",
        "9/10",
    )
    assert code == 1
    assert json.loads(out)["verdict"] == "fails"


def test_prob_expeq_params(capsys):
    code, out, _ = run_cli(capsys, "prob", "expeq-params", "--c", "3", "--m", "1", "--n", "1")
    assert code == 0
    payload = json.loads(out)
    assert payload["a"] == "1/972"
    assert payload["t"] == "1944"


def test_prob_expeq_compose_exit_codes(capsys):
    code, out, _ = run_cli(
        capsys, "prob", "expeq-compose", "--c", "3", "--m", "1", "--n", "1", "--r", "1/2916"
    )
    assert code == 0
    payload = json.loads(out)
    accept = Fraction(payload["accept"])
    assert accept > Fraction(1, 2)

    code, _, err = run_cli(
        capsys, "prob", "expeq-compose", "--c", "10", "--m", "1", "--n", "1", "--r", "1/600"
    )
    assert code == 3
    assert "cap" in err


def test_prob_rounds(capsys):
    code, out, _ = run_cli(capsys, "prob", "rounds", "--sigma", "1/2")
    assert code == 0
    assert json.loads(out)["expected_rounds"] == "2/1"


def test_minsize_report(capsys):
    code, out, _ = run_cli(
        capsys,
        "minsize",
        "--kind",
        "unary-dfa",
        "--problem",
        "evenodd",
        "--k",
        "1",
        "--max-states",
        "18",
        "--max-length",
        "32",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["size"] == 4
    assert payload["witness"]["states"] == 4
    assert payload["bounded_by"] == {"max_states": 18, "max_length": 32}


def test_minsize_not_found_exits_one(capsys):
    code, out, _ = run_cli(
        capsys,
        "minsize",
        "--kind",
        "dfa",
        "--problem",
        "trios",
        "--n",
        "2",
        "--r",
        "1",
        "--max-states",
        "3",
        "--max-length",
        "7",
    )
    assert code == 1
    payload = json.loads(out)
    assert payload["size"] is None
    assert payload["witness"] is None


def test_pumping_cli(tmp_path, capsys):
    path = tmp_path / "d.json"
    run_cli(capsys, "build", "evenodd-dfa", "--k", "1", "--out", str(path))
    code, out, _ = run_cli(capsys, "pumping", "--machine", str(path), "--m", "4")
    assert code == 0
    assert json.loads(out)["verdict"] == "solves"

    code, _, err = run_cli(capsys, "pumping", "--machine", str(path), "--m", "13")
    assert code == 3


def test_verify_promise(tmp_path, capsys):
    path = tmp_path / "d.json"
    run_cli(capsys, "build", "evenodd-dfa", "--k", "2", "--out", str(path))
    code, out, _ = run_cli(
        capsys,
        "verify",
        "promise",
        "--machine",
        str(path),
        "--problem",
        "evenodd",
        "--k",
        "2",
        "--max-length",
        "64",
    )
    assert code == 0
    assert json.loads(out)["verdict"] == "solves"


def test_verify_promise_failing_machine(tmp_path, capsys):
    path = tmp_path / "d.json"
    run_cli(capsys, "build", "evenodd-dfa", "--k", "1", "--out", str(path))
    code, out, _ = run_cli(
        capsys,
        "verify",
        "promise",
        "--machine",
        str(path),
        "--problem",
        "evenodd",
        "--k",
        "2",
        "--max-length",
        "32",
    )
    assert code == 1
    payload = json.loads(out)
    assert payload["verdict"] == "fails"
    assert payload["counterexample"] is not None


def test_verify_lv_trios_defaults(capsys):
    code, out, _ = run_cli(capsys, "verify", "lv-trios", "--n", "2", "--r", "1")
    assert code == 0
    payload = json.loads(out)
    assert payload["verdict"] == "solves"
    assert payload["measured"]["min_success"] == "1/2"


def test_verify_disjoint(capsys):
    code, out, _ = run_cli(
        capsys,
        "verify",
        "disjoint",
        "--problem",
        "evenodd",
        "--k",
        "1",
        "--max-length",
        "16",
    )
    assert code == 0
    assert json.loads(out)["verdict"] == "solves"


def test_unknown_subcommand_is_usage_error(capsys):
    code = main(["frobnicate"])
    capsys.readouterr()
    assert code == 2


def test_alphabet_mismatch_is_usage_error(tmp_path, capsys):
    path = tmp_path / "d.json"
    run_cli(capsys, "build", "parity-dfa", "--out", str(path))
    code, _, err = run_cli(
        capsys,
        "verify",
        "promise",
        "--machine",
        str(path),
        "--problem",
        "trios",
        "--n",
        "1",
        "--r",
        "1",
        "--max-length",
        "4",
    )
    assert code == 2
    assert "alphabet" in err


def test_jobs_flag_is_accepted(capsys):
    code, out, _ = run_cli(capsys, "--jobs", "4", "bounds", "--formula", "2nfa-to-dfa", "--n", "2")
    assert code == 0
    assert json.loads(out)["value"] == "7"


def test_run_config_dispatches(tmp_path, capsys):
    config = ExperimentConfig(
        command="build",
        parameters={"kind": "evenodd-afa", "k": 2},
        output_path=str(tmp_path / "m.json"),
    )
    assert run(config) == 0
    capsys.readouterr()
    machine = loads((tmp_path / "m.json").read_text())
    assert machine.state_count == 16


def test_run_config_underscore_names(capsys):
    config = ExperimentConfig(
        command="verify",
        parameters={"mode": "lv-trios", "n": 2, "r": 1, "max_length": 7},
    )
    assert run(config) == 0
    out = capsys.readouterr().out
    assert json.loads(out)["verdict"] == "solves"


def test_run_config_bad_parameter_is_usage_error(capsys):
    config = ExperimentConfig(command="bounds", parameters={"formula": "svfa-to-dfa"})
    assert run(config) == 2  # --n missing
    capsys.readouterr()
    config = ExperimentConfig(command="prob", parameters={})
    assert run(config) == 2  # positional mode missing
    capsys.readouterr()


def test_run_config_caps_apply(capsys):
    config = ExperimentConfig(
        command="verify",
        parameters={"mode": "disjoint", "problem": "trios", "n": 1, "r": 1, "max_length": 8},
        caps={"work_cap": 10},
    )
    assert run(config) == 3
    capsys.readouterr()


def test_run_config_unknown_cap(capsys):
    config = ExperimentConfig(
        command="bounds",
        parameters={"formula": "afa-to-dfa", "n": 1},
        caps={"woods-cap": 10},
    )
    assert run(config) == 2
    assert "unknown cap" in capsys.readouterr().err


def test_run_config_seed_threads_through(tmp_path, capsys):
    path = tmp_path / "p.json"
    run_cli(capsys, "build", "up-pfa", "--p", "1/2", "--out", str(path))
    config = ExperimentConfig(
        command="prob",
        parameters={"mode": "mc", "machine": str(path), "word": "a", "trials": 300},
        seed=11,
    )
    assert run(config) == 0
    first = capsys.readouterr().out
    assert run(config) == 0
    second = capsys.readouterr().out
    assert first == second
    assert json.loads(first)["seed"] == 11


def test_explicit_cap_flag_beats_environment(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("PROMATA_WORK_CAP", "10")
    code, out, _ = run_cli(
        capsys,
        "verify",
        "disjoint",
        "--problem",
        "trios",
        "--n",
        "1",
        "--r",
        "1",
        "--max-length",
        "8",
        "--work-cap",
        "100000",
    )
    assert code == 0
    assert json.loads(out)["verdict"] == "solves"


def test_env_cap_override(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("PROMATA_WORK_CAP", "10")
    code, _, err = run_cli(
        capsys,
        "verify",
        "disjoint",
        "--problem",
        "trios",
        "--n",
        "1",
        "--r",
        "1",
        "--max-length",
        "8",
    )
    assert code == 3
    assert "cap" in err.lower()
