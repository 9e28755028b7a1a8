import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from energy_buchi.cli import main
from energy_buchi.io import parse_wba
from energy_buchi.wba import EnergyConfig, accumulate

DATA = Path(__file__).resolve().parent.parent / "data"
SAT = str(DATA / "satellite.json")
SAT_TIMED = str(DATA / "satellite_timed.json")


def run(*argv):
    out = io.StringIO()
    code = main([str(a) for a in argv], out=out)
    return code, out.getvalue()


def test_check_exit_codes():
    assert run("check", SAT, "--credit", 360, "--bound", 750)[0] == 0
    assert run("check", SAT, "--credit", 349, "--bound", 750)[0] == 1


def test_check_witness_trace():
    code, text = run("check", SAT, "-c", 360, "-b", 750, "--witness")
    assert code == 0
    lines = dict(line.split(": ", 1) for line in text.splitlines()[1:])
    trace = [int(x) for x in lines["energy"].split()]
    assert trace[:5] == [360, 10, 750, 400, 750]
    assert all(0 <= e <= 750 for e in trace)
    a = parse_wba(Path(SAT).read_bytes())
    ids = [] if lines["prefix"] == "-" else [int(x) for x in lines["prefix"].split()]
    cyc = [int(x) for x in lines["cycle"].split()]
    weights = [a.transitions[i].weight for i in ids + cyc * 2]
    assert accumulate(weights, EnergyConfig(360, 750)) == trace


def test_cpa_then_check(tmp_path):
    out = tmp_path / "cpa.json"
    code, text = run("cpa", SAT_TIMED, "-o", out)
    assert code == 0 and "11 states" in text
    assert run("check", out, "-c", 360, "-b", 750)[0] == 0
    assert run("oracle", out, "-c", 360, "-b", 750)[0] == 0
    assert run("check", out, "-c", 349, "-b", 750)[0] == 1


def test_cpa_without_bounding(tmp_path):
    out = tmp_path / "raw.json"
    assert run("cpa", SAT_TIMED, "-o", out, "--no-bound-clocks")[0] == 0
    assert json.loads(out.read_text())["states"] == 11


def test_cpa_unbounded_without_bounding_fails(tmp_path):
    doc = tmp_path / "free.json"
    doc.write_text(json.dumps({"initial": 0, "locations": [{"name": "q", "rate": 1}], "edges": []}))
    assert run("cpa", doc, "-o", tmp_path / "x.json", "--no-bound-clocks")[0] == 2
    assert run("cpa", doc, "-o", tmp_path / "x.json")[0] == 0


def test_two_clocks_rejected(tmp_path, capsys):
    doc = tmp_path / "two.json"
    doc.write_text(json.dumps({"clock": ["x", "y"], "initial": 0, "locations": [{"name": "q", "rate": 1}], "edges": []}))
    assert run("cpa", doc, "-o", tmp_path / "x.json")[0] == 2
    assert run("check-timed", doc, "-c", 1, "-b", 1)[0] == 2
    assert "clock" in capsys.readouterr().err


def test_check_timed(tmp_path):
    code, text = run("check-timed", SAT_TIMED, "-c", 360, "-b", 750, "--witness")
    assert code == 0
    assert "caveat" not in text
    assert "cycle:" in text
    trap = str(DATA / "zeno_trap.json")
    assert run("check-timed", trap, "-c", 5, "-b", 5)[0] == 1
    assert run("check-timed", trap, "-c", 5, "-b", 5, "--allow-zeno")[0] == 0


def test_check_timed_caveat(tmp_path):
    doc = tmp_path / "strict.json"
    doc.write_text(
        json.dumps(
            {
                "initial": 0,
                "locations": [{"name": "q", "invariant": [{"op": "<", "k": 3}], "rate": 1}],
                "edges": [{"src": 0, "dst": 0, "guard": [{"op": ">", "k": 1}], "reset": 0}],
            }
        )
    )
    code, text = run("check-timed", doc, "-c", 0, "-b", 5)
    assert code == 0
    assert text.splitlines()[1].startswith("caveat:")


def test_degeneralize(tmp_path):
    out = tmp_path / "deg.json"
    assert run("degeneralize", DATA / "double_check.json", "-o", out)[0] == 0
    g = parse_wba(out.read_bytes())
    assert g.num_states == 6 and g.num_colors == 1
    assert run("degeneralize", SAT, "-o", out)[0] == 2


def test_maxenergy_table():
    code, text = run("maxenergy", DATA / "double_check.json", "-c", 0, "-b", 30)
    assert code == 0
    rows = [line.split("\t") for line in text.splitlines()]
    assert rows[0] == ["state", "energy", "via"]
    assert [r[1] for r in rows[1:]] == ["0", "30", "30"]
    _, text = run("maxenergy", SAT, "-c", 100, "-b", 750)
    assert text.splitlines()[2].split("\t")[1] == "-inf"


def test_oracle_guard(capsys):
    assert run("oracle", SAT, "-c", 360, "-b", 750)[0] == 0
    assert run("oracle", SAT, "-c", 360, "-b", 750, "--limit", 10)[0] == 2
    assert "limit" in capsys.readouterr().err


def test_errors_exit_two(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"states": 2, "transitions": []}')
    assert run("check", bad, "-c", 1, "-b", 1)[0] == 2
    assert "initial" in capsys.readouterr().err
    assert run("check", tmp_path / "missing.json", "-c", 1, "-b", 1)[0] == 2
    assert run("check", SAT, "-c", -1, "-b", 1)[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["check", SAT])
    assert exc.value.code == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "energy_buchi", "check", SAT, "-c", "349", "-b", "750"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 1
    assert proc.stdout.strip() == "infeasible"
