import json
import os
import subprocess
import sys

import pytest

from dihedral_hurwitz.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out.strip(), out.err


def test_validate(capsys):
    assert run(capsys, "validate", "[s0,s0,s1,s1]@n=5")[:2] == (0, "[s0,s0,s1,s1]@n=5")
    code, out, _ = run(capsys, "validate", "[s0,s0,s2,s2]@n=4")
    assert (code, out) == (2, "invalid: NotGenerating(4)")
    code, out, _ = run(capsys, "--output", "json", "validate", "[s0,s1]@n=5")
    assert code == 2 and json.loads(out)["condition"].startswith("ProductNotIdentity")


def test_parse_error_is_usage(capsys):
    code, _, err = run(capsys, "validate", "[s0,x1]@n=5")
    assert code == 1 and "parse error" in err


def test_reduce(capsys):
    code, out, _ = run(capsys, "reduce", "[s0,s2,s1,s3]@n=4")
    assert (code, out) == (0, "[s0,s0,s1,s1]@n=4")
    code, out, _ = run(capsys, "--output", "json", "reduce", "--trace", "--check", "[s3,s3,r2,r4,r3]@n=9")
    js = json.loads(out)
    assert code == 0 and js["check"] is True
    assert set(js) == {"input", "normal_form", "type", "case", "trace", "check"}
    assert js["case"] in ("I", "II", "III") and isinstance(js["trace"]["steps"], list)
    code, out, _ = run(capsys, "reduce", "--check", "[s0,s0,s1,s1]@n=5")
    assert code == 0 and out.splitlines()[-1] == "check: ok"


def test_types(capsys):
    code, out, _ = run(capsys, "types", "4", "4")
    assert code == 0
    assert "NotRealizable" not in out and "k_even=2 k_odd=2 rot=[0, 0]  [s0,s0,s1,s1]@n=4  g=1" in out
    code, out, _ = run(capsys, "types", "4", "4", "--all")
    assert "k_even=0 k_odd=4 rot=[0, 0]  NotRealizable(NotGenerating(4))" in out
    code, out, _ = run(capsys, "--output", "json", "types", "5", "4")
    js = json.loads(out)
    assert js["n"] == 5 and js["d"] == 4
    assert {"type": {"n": 5, "k": 4, "rot": [0, 0]}, "realizable": True,
            "form": "[s0,s0,s1,s1]@n=5", "genus": 1} in js["types"]
    assert run(capsys, "types", "3", "2")[:2] == (0, "(no types)")
    assert run(capsys, "types", "2", "4")[0] == 1


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "4", "4")
    assert code == 0 and out.startswith("PASS  n=4 d=4 valid=240")
    code, out, _ = run(capsys, "--output", "json", "verify", "5", "4", "--samples", "0")
    js = json.loads(out)
    assert code == 0 and js["theorem"] == "PASS"
    code, out, _ = run(capsys, "verify", "12", "8")
    assert code == 3 and out.startswith("BudgetExceeded")


def test_orbit(capsys):
    assert run(capsys, "orbit", "[s0,s2,s1,s3]@n=4", "[s0,s0,s1,s1]@n=4")[:2] == (0, "true")
    assert run(capsys, "orbit", "--flavor", "b", "[s3,s3,s1,s1]@n=5", "[s0,s0,s1,s1]@n=5")[:2] == (0, "true")
    assert run(capsys, "orbit", "[s0,s0,s1,s1]@n=5", "[s0,s1,r2,r4]@n=5")[:2] == (2, "false")
    code, out, _ = run(capsys, "--max-states", "5", "orbit", "--flavor", "b",
                       "[s0,s1,s1,s0,r3,r4]@n=7", "[s1,s0,s0,s1,r4,r3]@n=7")
    assert (code, out) == (3, "inconclusive")
    assert run(capsys, "orbit", "[s0,s0,s1,s1]@n=5", "[s0,s0,s1,s1]@n=6")[0] == 1
    assert run(capsys, "orbit", "[s0,s0,s2,s2]@n=4", "[s0,s0,s1,s1]@n=4")[0] == 2


def test_genus(capsys):
    assert run(capsys, "genus", "[s0,s0,s1,s1]@n=5")[:2] == (0, "1")
    assert run(capsys, "genus", "[s0,s1,r1]@n=3")[:2] == (0, "0")
    code, out, _ = run(capsys, "--output", "json", "genus", "[s3,s1,r1,r1]@n=4")
    assert json.loads(out)["genus"] == 3


def test_config_precedence(tmp_path, capsys, monkeypatch):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"max_states": 5, "output": "json"}))
    pair = ["orbit", "--flavor", "b", "[s0,s1,s1,s0,r3,r4]@n=7", "[s1,s0,s0,s1,r4,r3]@n=7"]
    code, out, _ = run(capsys, "--config", str(cfg), *pair)
    assert code == 3 and json.loads(out)["verdict"] == "inconclusive"
    # environment beats the file, flags beat the environment
    monkeypatch.setenv("HURWITZ_MAX_STATES", "100000")
    assert run(capsys, "--config", str(cfg), *pair)[0] in (0, 2)
    assert run(capsys, "--config", str(cfg), "--max-states", "5", *pair)[0] == 3
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"colour": 1}))
    assert run(capsys, "--config", str(bad), "types", "4", "4")[0] == 1


def test_usage_errors(capsys):
    assert run(capsys, "nonsense")[0] == 1
    assert run(capsys, "--max-states", "0", "types", "4", "4")[0] == 1
    assert run(capsys, "types", "x", "4")[0] == 1


def test_console_script():
    env = dict(os.environ)
    proc = subprocess.run(
        [sys.executable, "-m", "dihedral_hurwitz.cli", "validate", "[s0,s0,s2,s2]@n=4"],
        capture_output=True, text=True, env=env,
    )
    assert proc.returncode == 2 and proc.stdout.strip() == "invalid: NotGenerating(4)"
