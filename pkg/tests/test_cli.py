import json

import pytest

from wsscheck import cli
from wsscheck.instances import data_dir, gen_ngon, mutate, toy_names
from wsscheck.strata import save


def run_cli(args):
    return cli.main(list(args))


def test_validate_pass(tmp_path, capsys):
    path = tmp_path / "ngon.json"
    save(gen_ngon(3), path)
    assert run_cli(["validate", "--instance", str(path)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["ok"] is True


def test_validate_failure_names_axiom(tmp_path, capsys):
    path = tmp_path / "bad.json"
    save(mutate(gen_ngon(4), "adjunction", seed=3), path)
    assert run_cli(["validate", "--instance", str(path)]) == 1
    doc = json.loads(capsys.readouterr().out)
    failed = [c["axiom"] for c in doc["checks"] if not c["ok"]]
    assert failed == ["adjunction"]


def test_parse_error_exit_code(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{")
    assert run_cli(["validate", "--instance", str(path)]) == 2


def test_check_threefold_guards_dimension(tmp_path):
    path = tmp_path / "curve.json"
    save(gen_ngon(3), path)
    assert run_cli(["check-threefold", "--instance", str(path)]) == 2


def test_check_wmc_with_w_filter(tmp_path, capsys):
    path = tmp_path / "ngon.json"
    save(gen_ngon(5), path)
    assert run_cli(["check-wmc", "--instance", str(path), "--w", "1"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert all(e["w"] == 1 for e in doc["entries"])
    assert doc["filtration_agreement"] == {"1": True}


def test_gen_roundtrip(tmp_path, capsys):
    out = tmp_path / "gen.json"
    assert run_cli(["gen", "ngon", "--n", "6", "--out", str(out)]) == 0
    assert run_cli(["validate", "--instance", str(out)]) == 0


def test_gen_smooth_with_betti(tmp_path):
    out = tmp_path / "smooth.json"
    code = run_cli(
        ["gen", "smooth", "--n", "2", "--betti", "1,2,2,2,1", "--out", str(out)]
    )
    assert code == 0
    assert run_cli(["validate", "--instance", str(out)]) == 0


def test_gen_toy(tmp_path):
    out = tmp_path / "toy.json"
    assert run_cli(["gen", "toy", "--name", "toy_blowup_point", "--out", str(out)]) == 0
    assert run_cli(["check-threefold", "--instance", str(out)]) == 0


def test_out_dir_env(tmp_path, monkeypatch):
    monkeypatch.setenv(cli.OUT_DIR_ENV, str(tmp_path))
    assert run_cli(["gen", "ngon", "--n", "3", "--out", "nested/g.json"]) == 0
    assert (tmp_path / "nested" / "g.json").exists()


def test_report_deterministic(tmp_path):
    for name in toy_names():
        instance = data_dir() / f"{name}.json"
        out1 = tmp_path / "r1.json"
        out2 = tmp_path / "r2.json"
        assert run_cli(["report", "--instance", str(instance), "--out", str(out1)]) == 0
        assert run_cli(["report", "--instance", str(instance), "--out", str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()


def test_report_contains_sections(tmp_path, capsys):
    instance = data_dir() / "toy_blowup_point.json"
    assert run_cli(["report", "--instance", str(instance)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["validate"]["ok"]
    assert doc["threefold"]["ok"]
    assert doc["pages"]["verdict"]["overall"]
    assert all(doc["filtration_agreement"].values())


def test_pages_text_grid(tmp_path, capsys):
    path = tmp_path / "ngon.json"
    save(gen_ngon(3), path)
    assert run_cli(["pages", "--instance", str(path), "--format", "text"]) == 0
    out = capsys.readouterr().out
    assert "E1" in out and "E2 dims" in out and "j/i" in out


def test_tensor_power_flag(tmp_path, capsys):
    path = tmp_path / "ngon.json"
    save(gen_ngon(3), path)
    code = run_cli(
        ["check-wmc", "--instance", str(path), "--tensor-power", "2"]
    )
    assert code == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["overall"] is True
