import io
import json
import subprocess
import sys

import pytest

from symcrystal.cli import main, parse_weight, parse_word
from symcrystal.multiseg import Multisegment, Weight, enumerate_theta_restricted
from symcrystal.vtheta import phi, reduce_mod_q, unit, vector_from_json, vector_to_json


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_crystal_dot_small_bounds():
    code, text = run("crystal", "--content-bound", "2", "--index-bound", "1")
    assert code == 0
    assert 'v0 -> v1 [label="-1"];' in text and 'v0 [label="∅"]' in text


def test_crystal_single_vertex_and_json():
    code, text = run("crystal", "--content-bound", "0", "--index-bound", "1", "--format", "json")
    assert code == 0
    data = json.loads(text)
    assert len(data["vertices"]) == 1 and data["edges"] == []


@pytest.mark.parametrize("argv", [
    ["crystal", "--index-bound", "2"],
    ["crystal", "--content-bound", "-1"],
    ["act", "G:1"],
    ["act", "F:2"],
    ["straighten", "<1,2>"],
    ["global", "--bounds", "3"],
    ["verify", "--suite", "nope"],
    ["act", "F:1", "--format", "dot"],
    ["act", "F:1", "--fuel", "0"],
    [],
])
def test_usage_errors_exit_2(argv, capsys):
    code, _ = run(*argv)
    assert code == 2


def test_act_examples():
    code, text = run("act", "F:-1", "--format", "json")
    assert code == 0
    data = json.loads(text)
    assert vector_from_json(data) == unit(Multisegment.of((1, 1)))
    assert data["in_lattice"] is True
    code, text = run("act", "", "--format", "json")
    assert vector_from_json(json.loads(text)) == phi()
    code, text = run("act", "E:1")
    assert text.splitlines() == ["0", "in lattice: yes"]


def test_act_reads_a_vector_file(tmp_path):
    path = tmp_path / "v.json"
    path.write_text(json.dumps(vector_to_json(unit(Multisegment.of((-1, 1))))))
    code, text = run("act", "Etilde:-1", "--input", str(path), "--format", "json")
    assert code == 0
    # the root operator is only congruent to the crystal move modulo q
    assert reduce_mod_q(vector_from_json(json.loads(text))) == {Multisegment.of((1, 1)): 1}
    code, _ = run("act", "F:1", "--input", str(tmp_path / "missing.json"))
    assert code == 1
    (tmp_path / "bad.json").write_text("{")
    code, _ = run("act", "F:1", "--input", str(tmp_path / "bad.json"))
    assert code == 2


def test_tilde_operators_reject_mixed_weights(tmp_path):
    path = tmp_path / "v.json"
    path.write_text(json.dumps(vector_to_json(phi() + unit(Multisegment.of((1, 1))))))
    code, _ = run("act", "Ftilde:1", "--input", str(path))
    assert code == 2


def test_verify_report():
    code, text = run("verify", "--suite", "qboson", "--content-bound", "4", "--index-bound", "3", "--format", "json")
    assert code == 0
    data = json.loads(text)
    assert [s["suite"] for s in data["suites"]] == ["qboson"] and data["suites"][0]["ok"]
    code, text = run("verify", "--suite", "gram", "--suite", "crystal", "--content-bound", "3", "--index-bound", "3")
    assert code == 0 and text.count("PASS") == 2


def test_global_verb():
    code, text = run("global", "--weight", "[-1,1] + [1,1]", "--check")
    assert code == 0
    assert "G([1,1] + [-1,1]) = " in text and "bar-invariance check: ok" in text
    code, text = run("global", "--bounds", "2,3", "--format", "json")
    rows = json.loads(text)
    assert code == 0 and all(set(r) == {"m", "text", "coords"} for r in rows)
    assert len(rows) == len(enumerate_theta_restricted(2, 3)) == 8


def test_straighten_verb():
    code, text = run("straighten", "<1,1> * <3,3>", "--format", "json")
    assert code == 0
    data = json.loads(text)
    assert {e["coeff"] for e in data} == {"1", "q"}


def test_parsers():
    assert parse_word("F:-1, Etilde:3") == [("F", -1), ("Etilde", 3)]
    assert parse_word("") == []
    assert parse_weight("1:-1,-1:-1") == Weight({1: -1, -1: -1})
    assert parse_weight("[1,1]") == Weight({1: -1, -1: -1})


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "symcrystal.cli", "act", "F:3"], capture_output=True, text=True)
    assert proc.returncode == 0 and "P_theta([3,3])phi" in proc.stdout
