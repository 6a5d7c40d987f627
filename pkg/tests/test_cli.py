"""Tests for the tiltver command line."""

import json

import pytest

from tiltver.main import EXIT_CONFIG, EXIT_OK, main


@pytest.fixture(autouse=True)
def clean_env(monkeypatch, tmp_path):
    for name in (
        "TILTVER_OUTPUT_FORMAT",
        "TILTVER_DECOMP_TABLE",
        "TILTVER_TILTING_TABLE",
        "TILTVER_DATA_ROOT",
        "TILTVER_BUILTIN_OVERRIDES",
        "TILTVER_WEIGHT_SPACES",
    ):
        monkeypatch.delenv(name, raising=False)
    monkeypatch.chdir(tmp_path)


def test_tmc_json_goes_to_stdout(capsys):
    assert main(["tmc", "--type", "A1", "--p", "3", "--format", "json"]) == EXIT_OK
    document = json.loads(capsys.readouterr().out)
    assert document["kind"] == "tmc"
    assert [entry["verdict"] for entry in document["entries"]] == ["VERIFIED"] * 3


def test_tmc_text_report(capsys):
    assert main(["tmc", "--type", "A1", "--p", "3", "--weights", "1"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "tiltver tmc: A1 p=3" in out
    assert "VERIFIED" in out


def test_char_command(capsys):
    assert main(["char", "--type", "A2", "--p", "2", "--weight", "1,1", "--format", "json"]) == EXIT_OK
    document = json.loads(capsys.readouterr().out)
    assert document["dimension"] == 8
    assert document["char_kind"] == "weyl"


def test_ext_command_writes_file(tmp_path):
    out = tmp_path / "reports" / "ext.json"
    code = main(["ext", "--type", "B2", "--p", "3", "--format", "json", "--out", str(out)])
    assert code == EXIT_OK
    document = json.loads(out.read_text(encoding="utf-8"))
    assert document["kind"] == "ext"
    assert document["bound"] == 2


def test_levi_command(capsys):
    assert main(["levi", "--type", "A2", "--p", "2", "--J", "1", "--format", "json"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["levi"] == [1]


@pytest.mark.parametrize(
    "argv",
    [
        ["tmc", "--type", "A1", "--p", "4"],
        ["tmc", "--type", "E6", "--p", "5"],
        ["tmc", "--type", "A2", "--p", "3", "--weights", "3,0"],
        ["tmc", "--type", "A2", "--p", "3", "--decomp-table", "/nonexistent/decomp.txt"],
        ["levi", "--type", "A2", "--p", "3", "--J", "3"],
        ["char", "--type", "A2", "--p", "3", "--weight", "1"],
    ],
)
def test_bad_input_exits_with_config_code(argv, capsys):
    assert main(argv) == EXIT_CONFIG
    assert "tiltver:" in capsys.readouterr().err


def test_missing_arguments_exit_through_argparse():
    with pytest.raises(SystemExit):
        main(["tmc", "--p", "3"])


def test_weight_spaces_can_be_switched_off(capsys):
    argv = ["char", "--type", "G2", "--p", "3", "--weight", "1,1", "--kind", "simple", "--no-builtin-overrides"]
    assert main([*argv, "--format", "json"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["dimension"] == 49
    assert main([*argv, "--no-weight-spaces"]) == EXIT_CONFIG
    assert "1,0" in capsys.readouterr().err
