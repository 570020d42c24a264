import csv
import io
import json

import numpy as np
import pytest

from mannheim4.cli import FRENET_COLUMNS, run

from conftest import HELIX_K1, HELIX_K2

HELIX = {"curve": ["sqrt(1.16)*sinh(s)", "sqrt(1.16)*cosh(s)", "0.2*cos(2*s)", "0.2*sin(2*s)"],
         "domain": [0, 2], "samples": 16}
WIDE = {"curve": ["sqrt(2)*sinh(s)", "sqrt(2)*cosh(s)", "cos(s)", "sin(s)"], "domain": [0, 2], "samples": 16}
WAVY = {"generator": {"g": "0.4*sin(s)", "h": "0.3*cos(s)", "beta": 1.5, "s_range": [0, 1]}, "samples": 8}
BAD_GEN = {"generator": {"g": "s", "h": "0", "beta": 1.0, "s_range": [0, 1.5]}, "samples": 8}


def write(tmp_path, name, cfg):
    p = tmp_path / name
    p.write_text(json.dumps(cfg) if isinstance(cfg, dict) else cfg)
    return str(p)


def run_to(tmp_path, args, name="out"):
    out = tmp_path / name
    code = run(args + ["--out", str(out)])
    return code, (out.read_text() if out.exists() else None)


def test_frenet_csv(tmp_path):
    code, text = run_to(tmp_path, ["frenet", "--config", write(tmp_path, "c.json", HELIX)])
    assert code == 0
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == FRENET_COLUMNS
    assert len(rows) == 17
    data = np.array(rows[1:], dtype=float)
    assert np.allclose(data[:, FRENET_COLUMNS.index("k1")], HELIX_K1, rtol=1e-12)
    assert np.allclose(data[:, FRENET_COLUMNS.index("k2")], HELIX_K2, rtol=1e-12)
    assert set(data[:, -1]) <= {1.0, -1.0}


def test_frenet_reparametrizes_generated_curve(tmp_path):
    cfg = dict(WAVY, samples=4)
    code, text = run_to(tmp_path, ["frenet", "--config", write(tmp_path, "g.json", cfg), "--output", "json"])
    assert code == 0
    doc = json.loads(text)
    assert len(doc["samples"]) == 4 and doc["samples"][0]["k1"] > 0


@pytest.mark.parametrize("fmt", ["csv", "json"])
@pytest.mark.parametrize("command,cfg", [("frenet", HELIX), ("check-mannheim", WIDE),
                                         ("verify-pair", HELIX), ("generate", WAVY), ("mate", WIDE)])
def test_deterministic(tmp_path, fmt, command, cfg):
    path = write(tmp_path, "c.json", cfg)
    _, first = run_to(tmp_path, [command, "--config", path, "--output", fmt], "a")
    _, second = run_to(tmp_path, [command, "--config", path, "--output", fmt], "b")
    assert first == second and first


def test_json_structure_and_precision(tmp_path):
    code, text = run_to(tmp_path, ["check-mannheim", "--config", write(tmp_path, "w.json", WIDE),
                                   "--output", "json"])
    assert code == 0
    doc = json.loads(text)
    assert set(doc) == {"config", "samples", "summary"}
    assert doc["config"]["curve"] == WIDE["curve"]
    assert doc["summary"]["beta"] == pytest.approx(-3 * np.sqrt(3), rel=1e-12)
    assert doc["summary"]["satisfied"] is True


def test_verify_pair_passes(tmp_path):
    code, text = run_to(tmp_path, ["verify-pair", "--config", write(tmp_path, "h.json", HELIX),
                                   "--output", "json"])
    assert code == 0
    assert json.loads(text)["summary"]["verified_def31"] is True


def test_verify_pair_falsified(tmp_path):
    code, text = run_to(tmp_path, ["verify-pair", "--config", write(tmp_path, "h.json", HELIX),
                                   "--beta", "0.86", "--output", "json"])
    assert code == 2
    assert json.loads(text)["summary"]["verified_def31"] is False


def test_spacelike_mate_is_a_failed_verification(tmp_path):
    code, text = run_to(tmp_path, ["verify-pair", "--config", write(tmp_path, "w.json", WIDE),
                                   "--output", "json"])
    assert code == 2
    assert json.loads(text)["summary"]["failure"] == "MateNotTimelike"


def test_invalid_generator(tmp_path, capsys):
    code, text = run_to(tmp_path, ["generate", "--config", write(tmp_path, "b.json", BAD_GEN)])
    assert code == 1 and text is None
    assert "InvalidDomain" in capsys.readouterr().err


def test_json_syntax_error_location(tmp_path, capsys):
    path = write(tmp_path, "bad.json", '{"curve": ["s", "0", "0", "0"],\n "samples": 8,}')
    assert run(["frenet", "--config", path]) == 1
    assert "bad.json:2:" in capsys.readouterr().err


@pytest.mark.parametrize("args", [
    ["nope"],
    ["frenet"],
    ["frenet", "--curve", "s", "0", "0", "0", "--samples", "1"],
    ["frenet", "--curve", "sinh s", "0", "0", "0"],
    ["frenet", "--config", "/nonexistent.json"],
])
def test_input_errors_exit_1(args):
    assert run(args) == 1


def test_flags_override_config(tmp_path):
    path = write(tmp_path, "c.json", HELIX)
    code, text = run_to(tmp_path, ["frenet", "--config", path, "--samples", "3", "--domain", "0", "1"])
    assert code == 0
    rows = list(csv.reader(io.StringIO(text)))
    assert len(rows) == 4 and float(rows[-1][0]) == 1.0


def test_mate_and_generate_outputs(tmp_path):
    code, text = run_to(tmp_path, ["mate", "--config", write(tmp_path, "w.json", WIDE), "--output", "json"])
    assert code == 0
    summary = json.loads(text)["summary"]
    assert summary["mate_causal"] == "spacelike" and summary["beta_source"] == "estimated"
    code, text = run_to(tmp_path, ["generate", "--config", write(tmp_path, "g.json", WAVY)])
    assert code == 0
    header = text.splitlines()[0].split(",")
    assert header == ["s", "x0", "x1", "x2", "x3", "k1", "k2sq_minus_k1sq", "k2"]
