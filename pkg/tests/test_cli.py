import json

import pydot
import pytest

from planedom.cli import main
from planedom.instance import encode
from planedom.workbench import u3


def kv(text: str) -> dict[str, str]:
    out = {}
    for line in text.splitlines():
        key, sep, value = line.partition("=")
        if sep:
            out[key] = value
    return out


@pytest.fixture
def u3_file(tmp_path):
    p = tmp_path / "u3.json"
    p.write_text(encode(u3()))
    return p


def test_validate_ok(u3_file, capsys):
    assert main(["validate", str(u3_file)]) == 0
    assert kv(capsys.readouterr().out)["valid"] == "true"


def test_validate_overlap_fails(tmp_path, capsys):
    doc = {"n": 2, "clauses": [], "layout": {"intervals": [[[0, 1], [5, 1]], [[4, 1], [9, 1]]], "rects": [], "legs": []}}
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(doc))
    assert main(["validate", str(p)]) == 1
    out = capsys.readouterr().out
    assert "intervals overlap" in out and kv(out)["valid"] == "false"


def test_missing_file_is_usage_error(tmp_path):
    assert main(["validate", str(tmp_path / "missing.json")]) == 2


def test_bad_arguments_are_usage_errors():
    assert main(["solve", "--what", "nonsense", "--in", "x"]) == 2
    assert main([]) == 2


def test_full_chain(tmp_path, capsys):
    inst, g, t, dot = (tmp_path / f for f in ("i.json", "g.json", "t.json", "t.dot"))
    assert main(["gen", "--n", "4", "--m", "3", "--seed", "7", "--out", str(inst)]) == 0
    assert main(["validate", str(inst)]) == 0
    assert main(["reduce", "--mode", "pdom", "--in", str(inst), "--out", str(g)]) == 0
    capsys.readouterr()
    assert main(["triangulate", "--in", str(g), "--z-from-labels", "--out", str(t)]) == 0
    out = kv(capsys.readouterr().out)
    assert out["certified"] == "true" and out["fallback"] == "false" and out["verified"] == "true"
    assert main(["solve", "--what", "pdom", "--in", str(t)]) == 0
    assert kv(capsys.readouterr().out)["gamma_p"] == "4"
    assert main(["export", "--format", "dot", "--in", str(t), "--out", str(dot)]) == 0
    assert pydot.graph_from_dot_data(dot.read_text())


def test_solve_budget_exceeded(u3_file, tmp_path, capsys):
    g = tmp_path / "g.json"
    main(["reduce", "--mode", "dom", "--in", str(u3_file), "--out", str(g)])
    capsys.readouterr()
    assert main(["solve", "--what", "dom", "--in", str(g), "--budget", "3"]) == 0
    out = kv(capsys.readouterr().out)
    assert out["exceeded"] == "true"


def test_solve_sat(u3_file, capsys):
    assert main(["solve", "--what", "sat", "--in", str(u3_file)]) == 0
    assert kv(capsys.readouterr().out)["sat"] == "false"


def test_verify_u3(u3_file, capsys):
    for mode in ("dom", "pdom"):
        assert main(["verify", "--mode", mode, "--in", str(u3_file)]) == 0
        out = kv(capsys.readouterr().out)
        assert out["claim"] == "holds" and out["sat"] == "false"


def test_triangulate_rejects_uncertified_graph(tmp_path, capsys):
    g = tmp_path / "g.json"
    g.write_text(json.dumps({"n": 4, "rotations": [[3, 1], [0, 2], [1, 3], [2, 0]], "labels": ["w:0", "a", "b", "c"]}))
    # the protected vertex has degree 2, so certification fails
    assert main(["triangulate", "--in", str(g), "--z-from-labels", "--out", str(tmp_path / "t.json")]) == 1
    assert kv(capsys.readouterr().out)["certified"] == "false"


def test_batch_deterministic(capsys):
    args = ["batch", "--count", "10", "--seed", "3", "--max-n", "3", "--max-m", "4"]
    assert main(args) == 0
    first = capsys.readouterr().out
    assert main(args) == 0
    assert capsys.readouterr().out == first
    assert kv(first)["failures"] == "0"


def test_export_json_roundtrip(u3_file, tmp_path, capsys):
    g, h = tmp_path / "g.json", tmp_path / "h.json"
    main(["reduce", "--mode", "dom", "--in", str(u3_file), "--out", str(g)])
    assert main(["export", "--format", "json", "--in", str(g), "--out", str(h)]) == 0
    assert g.read_text() == h.read_text()
