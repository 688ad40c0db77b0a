import json
import subprocess
import sys

import pytest

from hexflip.cli import derive_seed, main
from hexflip.hyperbolic_core import distance
from hexflip.sextuple import Sextuple, sample_random


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def config_file(tmp_path):
    path = tmp_path / "z.json"
    path.write_text(sample_random(7).to_json())
    return str(path)


def test_derive_seed_is_stable_and_distinct():
    assert derive_seed(0, 0) == derive_seed(0, 0)
    assert len({derive_seed(42, k) for k in range(100_000)}) == 100_000
    assert derive_seed(1, 0) != derive_seed(0, 1)


def test_sample_is_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    assert run(["sample", "--n", "5", "--seed", "3", "--out", str(a)], capsys)[0] == 0
    assert run(["sample", "--n", "5", "--seed", "3", "--out", str(b)], capsys)[0] == 0
    assert a.read_bytes() == b.read_bytes()
    lines = a.read_text().splitlines()
    assert len(lines) == 5
    Sextuple.from_json(lines[0])


def test_reduce_then_replay(tmp_path, config_file, capsys):
    verdict, words, trace, svg = (tmp_path / n for n in ("v.json", "w.json", "t.csv", "s.svg"))
    code, _, _ = run(["reduce", "--in", config_file, "--verdict", str(verdict), "--words", str(words),
                      "--trace", str(trace), "--svg", str(svg)], capsys)
    assert code == 0
    v = json.loads(verdict.read_text())
    assert v["verdict"] == "Reduced" and v["eps"] == 1e-3
    assert trace.read_text().startswith("step,op,|word|,A,B,F,class")
    assert svg.read_text().startswith("<svg")
    out = tmp_path / "r.json"
    assert run(["replay", "--words", str(words), "--out", str(out)], capsys)[0] == 0
    final = Sextuple.from_json(json.dumps(v["final"]))
    replayed = Sextuple.from_json(out.read_text())
    assert max(distance(p, q) for p, q in zip(final.x, replayed.x)) < 1e-9


def test_singular_input_gives_singular_verdict(tmp_path, capsys):
    path = tmp_path / "s.json"
    path.write_text(Sextuple.of([0.1] * 6).to_json())
    code, out, _ = run(["reduce", "--in", str(path)], capsys)
    assert code == 0 and json.loads(out)["verdict"] == "Singular"


def test_classify(config_file, capsys):
    code, out, _ = run(["classify", "--in", config_file], capsys)
    d = json.loads(out)
    assert code == 0 and d["class"] == "TRI" and d["component"] == "X0" and d["valid"]


def test_missing_file_is_an_input_error(capsys):
    code, _, err = run(["classify", "--in", "/nonexistent/z.json"], capsys)
    assert code == 2
    assert "error" in json.loads(err)


def test_invalid_relation_is_rejected(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(Sextuple.of([0, 0.1, 0.2, 0.3, 0.4, 0.5]).to_json())
    code, _, err = run(["reduce", "--in", str(path)], capsys)
    assert code == 2 and json.loads(err)["error"] == "schema"


def test_bad_tolerance_env(config_file, capsys, monkeypatch):
    monkeypatch.setenv("HEXFLIP_TOL", "abc")
    code, _, err = run(["classify", "--in", config_file], capsys)
    assert code == 2 and json.loads(err)["error"] == "config"


def test_orbit_is_deterministic(tmp_path, config_file, capsys):
    stats = tmp_path / "o.csv"
    _, out1, _ = run(["orbit", "--in", config_file, "--steps", "30", "--seed", "5", "--stats", str(stats)], capsys)
    _, out2, _ = run(["orbit", "--in", config_file, "--steps", "30", "--seed", "5"], capsys)
    assert out1 == out2
    d = json.loads(out1)
    assert d["status"] in {"completed", "left_disc"}
    assert stats.read_text().startswith("step,running_min")


def test_flow_full_turn(config_file, capsys):
    code, out, _ = run(["flow", "--in", config_file, "--curve", "tri:1,2,3", "--t", "6.283185307179586"], capsys)
    assert code == 0
    moved = Sextuple.from_json(out)
    assert max(distance(p, q) for p, q in zip(moved.x, sample_random(7).x)) < 1e-8


def test_flow_bad_curve(config_file, capsys):
    assert run(["flow", "--in", config_file, "--curve", "tri:1,2"], capsys)[0] == 2


def test_euclid_modes(capsys):
    _, out, _ = run(["euclid", "--mode", "signature"], capsys)
    assert json.loads(out) == {"signature": [2, 2]}
    _, out, _ = run(["euclid", "--mode", "q", "--seed", "1"], capsys)
    assert abs(json.loads(out)["q"]) < 1e-12
    _, out, _ = run(["euclid", "--mode", "rank", "--seed", "1"], capsys)
    assert json.loads(out) == {"upstairs": [5, 7], "quotient": [4, 6]}


def test_check_filter(capsys):
    code, out, _ = run(["check", "--filter", "euclid_degenerate"], capsys)
    assert code == 0 and out.startswith("[PASS]  5")


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "hexflip", "euclid", "--mode", "signature"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and json.loads(res.stdout)["signature"] == [2, 2]
