import io
import json
import subprocess
import sys

import pytest

from mubar import cli

GOLDEN = '{"strands": 2, "word": [1, 1]}'
HOPF_LONG = '{"m": 2, "longitudes": ["X1^-1 X2", "X2^-1 X1"]}'


def run_json(*argv):
    text, code = cli.run(list(argv))
    return json.loads(text), code


def test_mu_braid_matches_explicit_longitudes():
    a, ca = run_json("mu", "-i", GOLDEN, "-q", "5")
    b, cb = run_json("mu", "-i", HOPF_LONG, "-q", "5")
    assert ca == cb == 0
    assert a["mu"] == b["mu"]
    assert a["schema"] == "mubar-report/1"
    assert a["mu"]["1,1"] == -1 and a["mu"]["1,1,1"] == 1


def test_mu_trivial_is_empty():
    out, code = run_json("mu", "-i", '{"strands": 3, "word": []}')
    assert code == 0 and all(v == 0 for v in out["mu"].values())


def test_longitudes_are_normalized_with_note():
    out, code = run_json("mu", "-i", '{"m": 2, "longitudes": ["X2", "X1"]}', "-q", "3")
    assert code == 0
    assert out["notes"] and "normalized" in out["notes"][0]
    assert out["mu"]["1,1"] == -1


def test_gamma_and_phi():
    out, code = run_json("gamma", "-i", '{"strands": 3, "word": [1, -2, 1, -2, 1, -2]}', "-q", "7")
    assert code == 0
    assert out["checks"] == {"parity": True, "divisibility": True, "square": True}
    assert out["gamma_z"][0] == [4, 1, 1]
    out, _ = run_json("gamma", "-i", GOLDEN)
    assert out["checks"] is None and out["gamma_z"] == [[1, -1, 1]]
    out, _ = run_json("phi", "-i", GOLDEN)
    assert out["rational"] == "(-1*u^1)/(1+u)^1"


def test_conway_inputs():
    out, _ = run_json("conway", "-i", GOLDEN)
    assert out["nabla_L"] == [0, -1] and out["nabla_K"] == [1]
    out, _ = run_json("conway", "-i", '{"strands": 2, "word": [1, 1, 1]}')
    assert out["nabla"] == [1, 0, 1]
    pd = '{"components": 2, "crossings": [[1, 3, 2, 4, "+"], [3, 1, 4, 2, "+"]]}'
    out, _ = run_json("conway", "-i", pd)
    assert out["nabla"] in ([0, 1], [0, -1])


def test_verify_exit_codes():
    out, code = run_json("verify", "-i", GOLDEN, "-q", "9")
    assert code == 0 and out["pass"]
    out, code = run_json("verify", "-i", '{"strands": 3, "word": []}')
    assert code == 0 and out["pass"]
    out, code = run_json("verify", "-i", '{"strands": 3, "word": [1, 1, 2, 2]}', "-q", "9")
    assert code == 1 and not out["pass"] and out["mismatch_degrees"] == [4]


@pytest.mark.parametrize("argv", [
    ["mu", "-i", "{not json"],
    ["mu", "-i", "[1, 2]"],
    ["mu", "-i", '{"foo": 1}'],
    ["mu", "-i", '{"strands": 2, "word": [5]}'],
    ["mu", "-i", '{"m": 1, "longitudes": ["X1 X2"]}'],
    ["mu", "-i", "/nonexistent/file.json"],
])
def test_parse_errors(argv):
    out, code = run_json(*argv)
    assert code == 2 and out["error"] == "parse" and out["schema"]


@pytest.mark.parametrize("argv", [
    ["mu", "-i", '{"strands": 2, "word": [1]}'],
    ["verify", "-i", HOPF_LONG],
    ["mu", "-i", '{"components": 1, "crossings": []}'],
    ["mu", "-i", GOLDEN, "-q", "1"],
    ["verify", "-i", '{"strands": 2, "word": [1, 1, 1, 1]}', "--max-crossings", "2"],
])
def test_precondition_errors(argv):
    out, code = run_json(*argv)
    assert code == 3 and out["error"] == "precondition"


def test_file_and_stdin_input(tmp_path, monkeypatch):
    f = tmp_path / "golden.json"
    f.write_text(GOLDEN)
    a, _ = run_json("mu", "-i", str(f))
    monkeypatch.setattr(sys, "stdin", io.StringIO(GOLDEN))
    b, _ = run_json("mu", "-i", "-")
    assert a == b


def test_text_format():
    text, code = cli.run(["verify", "-i", GOLDEN, "--format", "text"])
    assert code == 0
    assert text.startswith('schema: "mubar-report/1"')
    assert "pass: true" in text


def test_corpus_small():
    out, code = run_json("corpus", "--strands", "2", "--max-letters", "4", "-q", "6")
    assert code == 0
    assert out["total"] == 5 and out["passed"] == 5
    assert [it["word"] for it in out["items"]] == [[], [-1, -1], [1, 1], [-1] * 4, [1] * 4]


def test_corpus_reports_mismatch_and_sampling():
    out, code = run_json("corpus", "--strands", "3", "--max-letters", "4", "-q", "5")
    assert code == 1 and out["failed"] > 0
    a, _ = run_json("corpus", "--strands", "3", "--max-letters", "4", "-q", "5",
                    "--sample", "4", "--seed", "3")
    b, _ = run_json("corpus", "--strands", "3", "--max-letters", "4", "-q", "5",
                    "--sample", "4", "--seed", "3", "--jobs", "2")
    assert a == b and a["total"] == 4
    ids = [it["id"] for it in a["items"]]
    assert ids == sorted(ids)


def test_console_script_and_env(tmp_path):
    env = {"MUBAR_MAX_CROSSINGS": "1", "PATH": "/usr/bin:/bin:/usr/local/bin"}
    p = subprocess.run([sys.executable, "-m", "mubar.cli", "conway", "-i", GOLDEN],
                       capture_output=True, text=True, env=env)
    assert p.returncode == 3
    p = subprocess.run([sys.executable, "-m", "mubar.cli", "conway", "-i", GOLDEN],
                       capture_output=True, text=True)
    assert p.returncode == 0 and json.loads(p.stdout)["nabla_L"] == [0, -1]
