from __future__ import annotations

import io
import json
import shutil
import subprocess
import sys
from pathlib import Path

import pytest

from ccrgraph.cli import run

FIX = Path(__file__).parent / "fixtures"
MANIFEST = json.loads((FIX / "cli" / "manifest.json").read_text(encoding="utf-8"))


def invoke(argv, cwd=FIX, monkeypatch=None):
    out, err = io.StringIO(), io.StringIO()
    monkeypatch.chdir(cwd)
    code = run(argv, out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("name", sorted(MANIFEST))
def test_stored_expectation(name, monkeypatch):
    case = MANIFEST[name]
    code, out, err = invoke(case["argv"], monkeypatch=monkeypatch)
    assert code == case["exit"]
    assert out == (FIX / "cli" / f"{name}.out").read_text(encoding="utf-8")
    if code == 64:
        assert out == "" and err.startswith(("usage error", "input error"))


def test_every_subcommand_is_covered():
    covered = {case["argv"][0] for case in MANIFEST.values() if case["argv"]}
    assert covered == {"classify", "check-m", "check-n", "orbits", "oracle", "convolve",
                       "repn-check"}
    checks = {case["argv"][1] for case in MANIFEST.values()
              if case["argv"][:1] == ["repn-check"] and len(case["argv"]) > 1}
    assert checks == {"chop", "clifford", "amplification", "corner"}
    assert {case["exit"] for case in MANIFEST.values()} == {0, 10, 20, 64}


def test_exit_codes_follow_levels(monkeypatch):
    for name, code in [("tree", 0), ("loop_exit", 10), ("fig8", 20)]:
        assert invoke(["classify", "--graph", f"graphs/{name}.json"], monkeypatch=monkeypatch)[0] == code


def test_repeat_runs_are_byte_identical(monkeypatch):
    for name in sorted(MANIFEST):
        argv = MANIFEST[name]["argv"]
        first = invoke(argv, monkeypatch=monkeypatch)
        second = invoke(argv, monkeypatch=monkeypatch)
        assert first == second


def test_seed_is_recorded(monkeypatch):
    code, out, _ = invoke(["repn-check", "chop", "--group", "S3", "--seed", "17"],
                          monkeypatch=monkeypatch)
    assert code == 0
    doc = json.loads(out)
    assert doc["seed"] == 17 and doc["config"]["seed"] == 17


def test_batch_mode(tmp_path, monkeypatch):
    src = tmp_path / "in"
    shutil.copytree(FIX / "graphs", src)
    shutil.copy(FIX / "bad" / "garbage.json", src / "zz_garbage.json")
    dest = tmp_path / "out"
    code, out, err = invoke(["classify", "--batch", str(src), "--out", str(dest), "--workers", "3"],
                            cwd=tmp_path, monkeypatch=monkeypatch)
    summary = json.loads(out)
    levels = {r["input"]: r.get("level") for r in summary["reports"]}
    assert levels == {
        "fig8.json": "not_GCR", "loop_entrance.json": "CCR", "loop_exit.json": "GCR_not_CCR",
        "path3.json": "CCR", "single_loop.json": "CCR", "tree.json": "CCR",
        "two_loops.json": "CCR", "zz_garbage.json": None,
    }
    assert code == 64 and "zz_garbage.json" in err
    written = sorted(p.name for p in dest.iterdir())
    assert written == sorted(p.stem + ".report.json" for p in (FIX / "graphs").iterdir())
    # per-file reports match the single-file command
    for p in (FIX / "graphs").iterdir():
        _, single, _ = invoke(["classify", "--graph", str(p)], monkeypatch=monkeypatch)
        batch = json.loads((dest / (p.stem + ".report.json")).read_text(encoding="utf-8"))
        one = json.loads(single)
        batch["config"].pop("inputs"), one["config"].pop("inputs")
        assert batch == one


def test_batch_exit_code_is_worst_level(tmp_path, monkeypatch):
    src = tmp_path / "in"
    src.mkdir()
    for name in ("tree", "loop_exit"):
        shutil.copy(FIX / "graphs" / f"{name}.json", src)
    assert invoke(["classify", "--batch", str(src)], cwd=tmp_path, monkeypatch=monkeypatch)[0] == 10


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ccrgraph", "check-n", "--graph", "graphs/fig8.json"],
                          cwd=FIX, capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["verdict"]["witness"]["kind"] == "cycle-pair"
    proc = subprocess.run([sys.executable, "-m", "ccrgraph", "classify"], cwd=FIX,
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 64 and proc.stdout == ""
