import json
import subprocess
import sys

import pytest

from jsjtree.cli import main
from jsjtree.io import bundled


def write(tmp_path, name, data):
    p = tmp_path / name
    p.write_text(json.dumps(data))
    return str(p)


@pytest.fixture
def files(tmp_path):
    return {
        "path3": write(tmp_path, "path3.json", {"n": 3, "edges": [[0, 1], [1, 2]]}),
        "c5": write(tmp_path, "c5.json", {"n": 5, "edges": [[i, (i + 1) % 5] for i in range(5)]}),
        "chord": write(
            tmp_path, "chord.json",
            {"n": 6, "edges": [[0, 1], [1, 2], [2, 3], [3, 4], [4, 5], [5, 0], [0, 3]]},
        ),
        "swap": write(tmp_path, "swap.json", [[0, 5, 4, 3, 2, 1]]),
        "ex74": write(tmp_path, "ex74.json", bundled("example74.json")),
    }


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cutpoint_tree_path3(capsys, files, tmp_path):
    dot = tmp_path / "t.dot"
    code, out, _ = run(capsys, "cutpoint-tree", files["path3"], "--dot", dot)
    data = json.loads(out)
    assert code == 0
    assert len(data["tree"]["nodes"]) == 3 and len(data["tree"]["edges"]) == 2
    assert dot.read_text().startswith("graph cutpoint_tree {")


def test_jsj_tree_c5_trim(capsys, files):
    code, out, _ = run(capsys, "jsj-tree", files["c5"], "--trim")
    data = json.loads(out)
    assert code == 0
    assert [e["kind"] for e in data["elements"]] == ["necklace"]
    assert data["tree"]["nodes"] == []


def test_quotient(capsys, files):
    code, out, _ = run(capsys, "quotient", files["chord"], files["swap"], "--trim")
    q = json.loads(out)["quotient"]
    assert code == 0
    assert sorted(v["label"] for v in q["vertices"]) == ["1", "G2"]
    assert [e["label"] for e in q["edges"]] == ["1"]


def test_gog_refine_then_collapse(capsys, files, tmp_path):
    refined = tmp_path / "refined.json"
    assert run(capsys, "gog", "refine", files["ex74"], "-o", refined)[0] == 0
    code, out, _ = run(capsys, "gog", "collapse", refined)
    data = json.loads(out)
    assert code == 0
    assert [v["label"] for v in data["vertices"]] == ["B", "C"]
    assert [e["label"] for e in data["edges"]] == ["<x>"]


def test_pi_check_and_dynamics(capsys, tmp_path):
    cfg = write(
        tmp_path, "cfg.json",
        {"model": {"rank1": 2, "rank2": 2}, "isometry": {"w1": "ab", "w2": "A"}, "samples": 20, "seed": 1},
    )
    code, out, _ = run(capsys, "pi-check", cfg)
    data = json.loads(out)
    assert code == 0 and data["summary"]["fail"] == 0
    assert len(data["certificates"]) == 20 * 9
    code, out, _ = run(capsys, "dynamics", "--word", "ab", "--samples", "5")
    assert code == 0 and json.loads(out)["passed"]


def test_validate_small(capsys):
    code, out, _ = run(capsys, "validate", "--max-n", "4")
    data = json.loads(out)
    assert code == 0 and data["graphs_scanned"] == 44 and data["passed"]


@pytest.mark.parametrize(
    "argv",
    [
        ["cutpoint-tree", "missing.json"],
        ["jsj-tree", "PATH3"],
        ["validate", "--max-n", "9"],
        ["pi-check", "--w1", "aA", "--w2", ""],
        ["pi-check", "--w1", "c", "--w2", "a"],
        ["dynamics", "--word", "a", "--rank", "1"],
    ],
)
def test_input_errors_exit_2(capsys, files, argv):
    argv = [files["path3"] if a == "PATH3" else a for a in argv]
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_malformed_json_exit_2(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{")
    assert run(capsys, "cutpoint-tree", p)[0] == 2
    q = write(tmp_path, "loop.json", {"n": 2, "edges": [[0, 0]]})
    code, _, err = run(capsys, "cutpoint-tree", q)
    assert code == 2 and "loop" in err


def test_check_failure_exit_1(capsys, files, monkeypatch):
    import jsjtree.cli as cli

    monkeypatch.setattr(cli, "adjacency_findings", lambda P: [("cut:1", "class:{0}", "forced")])
    assert run(capsys, "cutpoint-tree", files["path3"])[0] == 1


def test_output_is_byte_identical(capsys, files):
    first = run(capsys, "jsj-tree", files["chord"])[1]
    second = run(capsys, "jsj-tree", files["chord"])[1]
    assert first == second
    a = run(capsys, "pi-check", "--w1", "a", "--w2", "b", "--samples", "30")[1]
    b = run(capsys, "pi-check", "--w1", "a", "--w2", "b", "--samples", "30")[1]
    assert a == b


def test_module_entry_point(files):
    res = subprocess.run(
        [sys.executable, "-m", "jsjtree", "cutpoint-tree", files["path3"]],
        capture_output=True, text=True, check=False,
    )
    assert res.returncode == 0 and json.loads(res.stdout)["trim"] is False
