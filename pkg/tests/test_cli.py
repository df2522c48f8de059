"""Command-line tests: parsing, config round-trips, exit codes, outputs."""

import json
import os

import pytest

from coverforge.cli import (
    DEFAULT_SEED,
    SEED_ENV,
    RunConfig,
    main,
    parse_args,
    run,
)


def test_parse_radius_example():
    config = parse_args(["radius", "--n", "6", "--seed", "7"])
    assert config.command == "radius"
    assert config.n == 6
    assert config.master_seed == 7
    assert config.fmt == "json"
    assert config.out is None


def test_parse_hex_seed_and_guard_overrides():
    config = parse_args(
        [
            "fraction",
            "--n",
            "5",
            "--seed",
            "0x10",
            "--radius",
            "3",
            "--max-bitmap-dim",
            "22",
            "--max-syndrome-dim",
            "12",
        ]
    )
    assert config.master_seed == 16
    assert config.radius == 3
    assert config.m_max == 22
    assert config.s_max == 12


def test_parse_sweep_list():
    config = parse_args(["sweep", "--n", "4,5,6", "--trials", "3"])
    assert config.ns == (4, 5, 6)
    assert config.n is None
    assert config.trials == 3


def test_bad_sweep_list_is_usage_error(capsys):
    assert main(["sweep", "--n", "4,x"]) == 2
    assert "bad --n list" in capsys.readouterr().err


def test_t_and_c_are_mutually_exclusive():
    with pytest.raises(SystemExit) as exc:
        parse_args(["radius", "--n", "6", "--t", "2", "--c", "3"])
    assert exc.value.code == 2


def test_missing_n_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        parse_args(["radius"])
    assert exc.value.code == 2


def test_unknown_command_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        parse_args(["no-such-command"])
    assert exc.value.code == 2


def test_runconfig_round_trip():
    for argv in (
        ["radius", "--n", "6", "--seed", "7"],
        ["sweep", "--n", "8,10", "--c", "2.5", "--trials", "9"],
        ["fraction", "--n", "5", "--ball-volume", "100"],
        ["lemma2", "--n", "10", "--t", "12", "--threads", "2"],
    ):
        config = parse_args(argv)
        assert RunConfig.from_dict(config.to_dict()) == config


def test_seed_default_env_and_flag_precedence(monkeypatch):
    monkeypatch.delenv(SEED_ENV, raising=False)
    assert parse_args(["field", "--n", "4"]).master_seed == DEFAULT_SEED
    monkeypatch.setenv(SEED_ENV, "123")
    assert parse_args(["field", "--n", "4"]).master_seed == 123
    monkeypatch.setenv(SEED_ENV, "0x20")
    assert parse_args(["field", "--n", "4"]).master_seed == 32
    assert parse_args(["field", "--n", "4", "--seed", "9"]).master_seed == 9


def test_bad_env_seed_is_usage_error(monkeypatch, capsys):
    monkeypatch.setenv(SEED_ENV, "not-a-number")
    assert main(["field", "--n", "4"]) == 2
    assert SEED_ENV in capsys.readouterr().err


def test_field_command_stdout(capsys):
    assert main(["field", "--n", "8"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc == {"command": "field", "n": 8, "modulus_hex": "11b"}


def test_radius_command_stdout(capsys):
    assert main(["radius", "--n", "5", "--t", "0", "--seed", "3"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["blocklength"] == 10
    assert 0 <= doc["radius"] <= 10
    assert doc["seed"] == "3"


def test_build_command_reports_sample(capsys):
    assert main(["build", "--n", "4", "--t", "2", "--seed", "11"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["sample"]["n"] == 4
    assert doc["sample"]["t"] == 2
    assert doc["blocklength"] == 8
    assert doc["nominal_dimension"] == 6


def test_guard_rejection_exit_code(capsys):
    code = main(
        [
            "radius",
            "--n",
            "14",
            "--t",
            "0",
            "--max-bitmap-dim",
            "5",
            "--max-syndrome-dim",
            "5",
        ]
    )
    assert code == 1
    assert "guard rejected" in capsys.readouterr().err


def test_invalid_parameters_exit_code(capsys):
    assert main(["fraction", "--n", "4", "--radius", "9"]) == 2
    assert "invalid parameters" in capsys.readouterr().err


def test_out_file_and_rerun_byte_identity(tmp_path):
    out = tmp_path / "report.json"
    argv = [
        "lemma1",
        "--n",
        "10",
        "--trials",
        "3",
        "--seed",
        "42",
        "--threads",
        "1",
        "--out",
        str(out),
    ]
    assert main(argv) == 0
    first = out.read_bytes()
    doc = json.loads(first)
    assert doc["name"] == "lemma1"
    assert len(doc["trials"]) == 3
    assert "timings" not in doc
    assert main(argv) == 0
    assert out.read_bytes() == first


def test_csv_format_for_experiments(tmp_path):
    out = tmp_path / "report.csv"
    assert (
        main(
            [
                "directsum",
                "--trials",
                "4",
                "--seed",
                "5",
                "--threads",
                "1",
                "--format",
                "csv",
                "--out",
                str(out),
            ]
        )
        == 0
    )
    lines = out.read_text().splitlines()
    assert lines[0] == "# name = directsum"
    data = [ln for ln in lines if not ln.startswith("#")]
    assert len(data) == 1 + 4
    assert "# summary all_additive = true" in lines


def test_csv_format_for_scalar_commands(capsys):
    assert main(["field", "--n", "4", "--format", "csv"]) == 0
    text = capsys.readouterr().out
    assert text.splitlines()[0] == "key,value"
    assert "modulus_hex,13" in text


def test_plot_requires_out(capsys):
    assert main(["moments", "--n", "10", "--trials", "2", "--plot"]) == 2
    assert "--plot requires --out" in capsys.readouterr().err


def test_plot_writes_figure(tmp_path, capsys):
    out = tmp_path / "moments.json"
    assert (
        main(
            [
                "moments",
                "--n",
                "10",
                "--trials",
                "5",
                "--seed",
                "8",
                "--threads",
                "1",
                "--out",
                str(out),
                "--plot",
            ]
        )
        == 0
    )
    figure = tmp_path / "moments.png"
    assert figure.exists()
    assert figure.stat().st_size > 0
    assert figure.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_run_rejects_unknown_config_command(capsys):
    assert run(RunConfig(command="bogus")) == 2


def test_threads_do_not_change_output(tmp_path):
    outs = []
    for threads in ("1", "4"):
        out = tmp_path / f"t{threads}.json"
        assert (
            main(
                [
                    "gv",
                    "--n",
                    "6",
                    "--trials",
                    "8",
                    "--seed",
                    "21",
                    "--threads",
                    threads,
                    "--out",
                    str(out),
                ]
            )
            == 0
        )
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]
