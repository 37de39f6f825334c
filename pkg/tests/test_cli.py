import json

import pytest

from looijenga.cli import main
from looijenga.corpus import EXAMPLES
from looijenga.io import PairDocument


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def p2_file(tmp_path, capsys):
    code, out, _ = run(capsys, "examples", "p2-axes")
    assert code == 0
    path = tmp_path / "p2.json"
    path.write_text(out)
    return path


def test_examples_listing(capsys):
    code, out, _ = run(capsys, "examples")
    assert code == 0 and json.loads(out) == sorted(EXAMPLES)


def test_unknown_example(capsys):
    code, _, err = run(capsys, "examples", "nope")
    assert code == 2 and "unknown example" in err


@pytest.mark.parametrize("name", sorted(EXAMPLES))
def test_documents_round_trip_byte_for_byte(capsys, tmp_path, name):
    _, out, _ = run(capsys, "examples", name)
    path = tmp_path / "doc.json"
    path.write_text(out)
    assert PairDocument.load(path).dumps() == out


def test_analyze(capsys, p2_file):
    code, out, _ = run(capsys, "analyze", str(p2_file))
    rep = json.loads(out)
    assert code == 0
    assert rep["roots"] == 2 and rep["generic"] == "yes" and rep["K2"] == 6
    assert rep["interior_euler"] == 3


def test_analyze_cycle8(capsys, tmp_path):
    _, out, _ = run(capsys, "examples", "cycle8")
    path = tmp_path / "c8.json"
    path.write_text(out)
    code, out, _ = run(capsys, "analyze", str(path))
    rep = json.loads(out)
    assert code == 0 and rep["roots"] == 0 and rep["mw_rank"] == 1 and rep["interior_euler"] == 4


def test_bound_from_environment(capsys, p2_file, monkeypatch):
    monkeypatch.setenv("LOOIJENGA_BOUND", "7")
    _, out, _ = run(capsys, "roots", str(p2_file))
    assert json.loads(out)["bound"] == 7
    _, out, _ = run(capsys, "roots", str(p2_file), "--bound", "9")
    assert json.loads(out)["bound"] == 9
    monkeypatch.setenv("LOOIJENGA_BOUND", "seven")
    code, _, err = run(capsys, "roots", str(p2_file))
    assert code == 2 and "LOOIJENGA_BOUND" in err


def test_bad_documents(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "analyze", str(bad))[0] == 2
    bad.write_text(json.dumps({"fan": [[1, 0], [0, 1], [1, 1]]}))
    assert run(capsys, "analyze", str(bad))[0] == 2
    bad.write_text(json.dumps({"fan": [[1, 0], [0, 1], [-1, -1]], "extra": 1}))
    assert run(capsys, "analyze", str(bad))[0] == 2
    assert run(capsys, "analyze", str(tmp_path / "missing.json"))[0] == 2


def test_period(capsys, p2_file):
    code, out, _ = run(capsys, "period", str(p2_file))
    d = json.loads(out)
    assert code == 0 and set(d) == {"marking", "marked", "unmarked"}


def test_torelli_exit_codes(capsys, tmp_path, p2_file):
    ident = tmp_path / "id.json"
    ident.write_text(json.dumps([[int(i == j) for j in range(4)] for i in range(4)]))
    code, out, _ = run(capsys, "torelli", str(p2_file), str(p2_file), "--map", str(ident))
    assert code == 0 and json.loads(out)["verdict"] == "yes"
    _, ye, _ = run(capsys, "examples", "ye-p2-axes")
    ye_file = tmp_path / "ye.json"
    ye_file.write_text(ye)
    code, out, _ = run(capsys, "torelli", str(p2_file), str(ye_file), "--map", str(ident))
    # 3H - E1 - E2 - E3 is zero on the line through the collinear points
    assert code == 1 and json.loads(out)["failed_condition"] == 3
    refl = tmp_path / "refl.json"
    refl.write_text(json.dumps({"matrix": [[2, 1, 1, 1], [-1, 0, -1, -1], [-1, -1, 0, -1], [-1, -1, -1, 0]]}))
    code, out, _ = run(capsys, "torelli", str(ye_file), str(ye_file), "--map", str(refl), "--weak")
    assert code == 0 and json.loads(out)["g"]["word"] == [[1, -1, -1, -1]]
    singular = tmp_path / "sing.json"
    singular.write_text(json.dumps([[0] * 4] * 4))
    assert run(capsys, "torelli", str(p2_file), str(p2_file), "--map", str(singular))[0] == 2


def test_mutate_and_reconstruct(capsys, tmp_path, p2_file):
    cfg = tmp_path / "F.json"
    cfg.write_text(json.dumps([[[1, 0, -1, -1]], [[1, -1, 0, -1]], [[1, -1, -1, 0]]]))
    mp = tmp_path / "map.json"
    code, out, _ = run(capsys, "mutate", str(p2_file), "--config", str(cfg), "--map-out", str(mp))
    assert code == 0
    new = json.loads(out)
    assert "marking" in new and json.loads(mp.read_text())["matrix"]
    # reconstruct p2-axes from its own period point
    code, conf, _ = run(capsys, "examples", "p2-axes", "--config")
    conf_file = tmp_path / "conf.json"
    conf_file.write_text(conf)
    _, per, _ = run(capsys, "period", str(p2_file))
    phi = tmp_path / "phi.json"
    phi.write_text(json.dumps(json.loads(per)["marked"]))
    fan = tmp_path / "fan.json"
    fan.write_text(json.dumps({"fan": [[1, 0], [0, 1], [-1, -1]]}))
    code, out, _ = run(capsys, "reconstruct", "--fan", str(fan), "--config", str(conf_file), "--phi", str(phi))
    assert code == 0
    got = json.loads(out)
    orig = json.loads(p2_file.read_text())
    assert got["pair"]["blowups"] == orig["blowups"]


def test_bad_configuration(capsys, tmp_path, p2_file):
    cfg = tmp_path / "bad.json"
    cfg.write_text(json.dumps([[[0, 1, 0, 0]], [[0, 0, 1, 0]], [[0, 1, 0, 0]]]))
    code, _, err = run(capsys, "mutate", str(p2_file), "--config", str(cfg))
    assert code == 2 and "invalid exceptional configuration" in err
