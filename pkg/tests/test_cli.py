import json
from pathlib import Path

import pytest

from main import build_parser, main
from services import catalog
from services.cli.models import EXIT_ERROR, EXIT_FALSE, EXIT_OK, RunConfig
from services.sepsil.codec import dump_sep_derivation

FIXTURES = Path(__file__).parent / "fixtures"


def _fixture(name: str) -> str:
    return str(FIXTURES / f"{name}.rc")


def _json_lines(output: str):
    return [json.loads(line) for line in output.splitlines() if line.strip()]


def test_check_valid_triple():
    code = main(
        ["check", _fixture("r42"), "--logic", "sil", "--pre", "x mod 2 = 0 && y mod 2 = 1", "--post", "z = 42"]
    )

    assert code == EXIT_OK


def test_check_invalid_triple_prints_witness(capsys):
    code = main(
        [
            "check",
            _fixture("r42"),
            "--logic", "SIL",
            "--pre", "z = 11",
            "--post", "z = 42 && y mod 2 = 1 && x mod 2 = 0",
            "--domain", "64",
        ]
    )

    assert code == EXIT_FALSE
    output = capsys.readouterr().out
    assert "SIL: inválida" in output
    assert "x=0, y=0, z=11" in output


def test_check_json_output(capsys):
    code = main(
        ["check", _fixture("rxy"), "--logic", "HL", "--pre", "x = 0", "--post", "x = 0", "--format", "json"]
    )

    (record,) = _json_lines(capsys.readouterr().out)
    assert code == EXIT_OK
    assert record["valid"] is True
    assert record["logic"] == "HL"


def test_undeclared_variable_is_an_input_error():
    code = main(["check", _fixture("rxy"), "--logic", "IL", "--pre", "w = 0", "--post", "true"])

    assert code == EXIT_ERROR


def test_missing_program_file_is_an_input_error(tmp_path):
    code = main(["check", str(tmp_path / "nada.rc"), "--logic", "HL", "--pre", "true", "--post", "true"])

    assert code == EXIT_ERROR


def test_invalid_log_level_is_rejected():
    code = main(["check", _fixture("rxy"), "--logic", "HL", "--pre", "true", "--post", "true", "--log-level", "LOUD"])

    assert code == EXIT_ERROR


def test_infer_then_check_proof(tmp_path, capsys):
    derivation = tmp_path / "rxy.json"

    code = main(["infer", _fixture("rxy"), "--post", "x = 0 && y = 0", "--emit-derivation", str(derivation)])

    output = capsys.readouterr().out
    assert code == EXIT_OK
    assert "derivação (7 nós)" in output
    assert "x = 0 || y = 0" in output
    assert json.loads(derivation.read_text(encoding="utf-8"))["rule"] == "choice"
    assert main(["check-proof", str(derivation), "--program", _fixture("rxy")]) == EXIT_OK


def test_strict_proof_check_rejects_iter(tmp_path, capsys):
    derivation = tmp_path / "rloop0.json"
    assert main(["infer", _fixture("rloop0"), "--post", "x = 3", "--emit-derivation", str(derivation)]) == EXIT_OK
    capsys.readouterr()

    assert main(["check-proof", str(derivation), "--program", _fixture("rloop0")]) == EXIT_OK
    assert main(["check-proof", str(derivation), "--program", _fixture("rloop0"), "--strict"]) == EXIT_FALSE
    assert "(regra iter)" in capsys.readouterr().out


@pytest.mark.parametrize("domain", ["4", "8", "64"])
def test_handwritten_derivation_holds_in_every_domain(domain, fixtures_dir):
    derivation = str(fixtures_dir / "rxy.json")

    assert main(["check-proof", derivation, "--program", _fixture("rxy"), "--domain", domain]) == EXIT_OK


def test_malformed_derivation_is_an_input_error(tmp_path):
    derivation = tmp_path / "rxy.json"
    derivation.write_text('{"rule": "magic"}', encoding="utf-8")

    assert main(["check-proof", str(derivation), "--program", _fixture("rxy")]) == EXIT_ERROR


def test_sep_check(capsys):
    args = ["sep-check", _fixture("rclient"), "--sep-locs", "2"]

    assert main(args + ["--pre", catalog.CLIENT_PRE, "--post", catalog.CLIENT_POST]) == EXIT_OK
    assert "Separation SIL: válida (2 localizações, inteiros 0..1" in capsys.readouterr().out
    assert main(args + ["--pre", "emp", "--post", catalog.CLIENT_POST]) == EXIT_FALSE
    assert "testemunha" in capsys.readouterr().out


def test_sep_check_rejects_bad_int_range():
    args = ["sep-check", _fixture("rclient"), "--pre", "emp", "--post", "emp", "--sep-ints", "0-1"]

    assert main(args) == EXIT_ERROR


def test_sep_proof_check(tmp_path, capsys):
    derivation = tmp_path / "rclient.json"
    derivation.write_text(dump_sep_derivation(catalog.rclient_derivation()), encoding="utf-8")

    code = main(
        ["check-proof", str(derivation), "--program", _fixture("rclient"), "--sep", "--format", "json"]
    )

    (record,) = _json_lines(capsys.readouterr().out)
    assert code == EXIT_OK
    assert record["accepted"] is True


def test_fuzz_reports_one_line_per_property(capsys):
    code = main(
        [
            "fuzz",
            "--seed", "3",
            "--instances", "4",
            "--property", "oracle",
            "--property", "conj-sil",
            "--format", "json",
        ]
    )

    records = _json_lines(capsys.readouterr().out)
    assert code == EXIT_OK
    assert [record["property_id"] for record in records] == ["oracle", "conj-sil"]
    assert all(record["ok"] for record in records)


def test_parser_requires_logic_for_check():
    with pytest.raises(SystemExit):
        build_parser().parse_args(["check", _fixture("r42"), "--pre", "true", "--post", "true"])


def test_run_config_expands_all_properties():
    cfg = RunConfig(command="fuzz", properties=["oracle", "all"], sep_ints="0..2")

    assert cfg.properties is None
    assert cfg.sep_ints == (0, 2)
