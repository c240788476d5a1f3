import json

import pytest

from qtorus.cli import ConfigError, SessionConfig, main, parse_range, parse_word, run_suite


def test_parse_range():
    assert parse_range("-2:3") == (-2, 3)
    with pytest.raises(ConfigError):
        parse_range("1..2")


@pytest.mark.parametrize("cfg", [SessionConfig(qmode="root"), SessionConfig(tau=2), SessionConfig(lo=-17),
                                 SessionConfig(degree=9), SessionConfig(N=0)])
def test_config_errors_exit_2(cfg, tmp_path):
    cfg.output = str(tmp_path / "r.json")
    assert run_suite("id236", cfg) == 2


def test_unknown_suite(tmp_path):
    assert run_suite("nope", SessionConfig(output=str(tmp_path / "r.json"))) == 2


def test_id236_default(tmp_path):
    path = tmp_path / "r.json"
    assert run_suite("id236", SessionConfig(output=str(path))) == 0
    doc = json.loads(path.read_text())
    assert doc["schema_version"] == 1 and doc["config"]["qmode"] == "generic"


def test_all_reports_central(tmp_path):
    path = tmp_path / "all.json"
    assert main(["verify", "all", "--N", "1", "--range", "-1:1", "--degree", "2",
                 "--output", str(path)]) == 0
    doc = json.loads(path.read_text())
    assert doc["central"]["gamma"]["c_y"]["even"] == "0"
    assert {s["suite"] for s in doc["suites"]} == {"prop11", "lemma21", "props2", "theorem", "id236"}
    assert "timing_seconds" not in doc


def test_output_dir_env(tmp_path, monkeypatch):
    monkeypatch.setenv("QTORUS_OUTPUT_DIR", str(tmp_path))
    assert main(["verify", "id236", "--qmode", "root:3"]) == 0
    assert (tmp_path / "id236.json").exists()


def test_bad_qmode_cli(capsys):
    assert main(["verify", "id236", "--qmode", "bogus"]) == 2


def test_export(tmp_path):
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["export", "--N", "1", "--range", "0:0", "--output", str(p1)]) == 0
    main(["export", "--N", "1", "--range", "0:0", "--output", str(p2)])
    assert p1.read_bytes() == p2.read_bytes()
    table = json.loads(p1.read_text())["table"]
    pairs = {(e["a"]["family"], e["b"]["family"]) for e in table}
    assert ("g", "h") in pairs


def test_export_empty_window(tmp_path):
    p = tmp_path / "t.json"
    assert main(["export", "--range", "1:0", "--output", str(p)]) == 0
    assert json.loads(p.read_text())["table"] == []


def test_act(capsys):
    assert main(["act", "a_1(1) a*_1(-1)"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["terms"][0]["c"]["even"] == "-1"
    assert main(["act", "f_11(0,0)"]) == 0
    assert json.loads(capsys.readouterr().out)["terms"][0]["c"]["even"] == "1/2"


def test_parse_word_rejects():
    with pytest.raises(ConfigError):
        parse_word("b_1(0)")
