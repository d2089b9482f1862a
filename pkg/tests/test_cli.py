import json
from pathlib import Path

import pytest

from kunneth_ph.barcode import Barcode
from kunneth_ph.cli import main
from kunneth_ph.intervals import Interval

DATA = Path(__file__).parent / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_algebra(capsys):
    code, out, _ = run(capsys, "algebra", "tensor", 1, 3, 2, 4, "--p", "inf")
    assert code == 0
    assert json.loads(out.splitlines()[0]) == {"birth": 2, "death": 3}
    code, out, _ = run(capsys, "algebra", "tor", 1, 2, 1, 2, "--p", 1)
    assert json.loads(out.splitlines()[0]) == {"birth": 3, "death": 4}
    code, out, _ = run(capsys, "algebra", "ext", 1, "inf", 2, 3, "--p", 2)
    assert out.splitlines() == ["null", "case: projective first argument"]


def test_algebra_unsupported_case(capsys):
    code, _, err = run(capsys, "algebra", "hom", 1, 3, 2, "inf", "--p", "inf")
    assert code == 2
    assert "unsupported p=inf hom case" in err


def test_algebra_parse_error(capsys):
    code, _, err = run(capsys, "algebra", "tensor", 1, "x", 2, 4)
    assert code == 2


def test_homology(capsys):
    code, out, _ = run(capsys, "homology", DATA / "triangle.txt")
    assert code == 0
    assert Barcode.loads(out) == Barcode({0: [Interval(0), Interval(1, 3), Interval(2, 4)],
                                          1: [Interval(5, 6)]})
    code, out, _ = run(capsys, "homology", DATA / "empty.txt")
    assert (code, json.loads(out)) == (0, [])
    code, _, err = run(capsys, "homology", DATA / "bad.txt")
    assert code == 2 and "cell 2, face 0" in err


def test_kunneth_with_check_and_provenance(capsys, tmp_path):
    _, tri, _ = run(capsys, "homology", DATA / "triangle.txt")
    bk = tmp_path / "tri.json"
    bk.write_text(tri)
    prov = tmp_path / "prov.jsonl"
    code, out, err = run(capsys, "kunneth", bk, bk, "--p", 2, "--provenance", prov,
                         "--check", DATA / "triangle.txt", DATA / "triangle.txt", "--field", 3)
    assert code == 0 and "equals direct reduction" in err
    lines = [json.loads(x) for x in prov.read_text().splitlines()]
    assert {x["kind"] for x in lines} == {"tensor", "tor"}
    assert set(lines[0]) == {"kind", "n", "i", "j", "left", "right", "result"}
    unit = tmp_path / "unit.json"
    unit.write_text(json.dumps([{"degree": 0, "bars": [{"birth": 0, "death": "inf"}]}]))
    code, out, _ = run(capsys, "kunneth", bk, unit, "--p", 1)
    assert Barcode.loads(out) == Barcode.loads(tri)


def test_kunneth_check_mismatch(capsys, tmp_path):
    bk = tmp_path / "wrong.json"
    bk.write_text(json.dumps([{"degree": 0, "bars": [{"birth": 0, "death": "inf"}]}]))
    code, _, err = run(capsys, "kunneth", bk, bk, "--check", DATA / "triangle.txt",
                       DATA / "triangle.txt")
    assert code == 1 and "check failed" in err


def test_uct_and_borel_moore(capsys, tmp_path):
    code, out, _ = run(capsys, "borel-moore", DATA / "triangle.txt", "--alpha", 10, "--p", 1)
    assert code == 0
    bm = Barcode.loads(out)
    assert bm.degree(2) == [Interval(4, 5)]
    _, tri, _ = run(capsys, "homology", DATA / "triangle.txt")
    (tmp_path / "tri.json").write_text(tri)
    code, out, _ = run(capsys, "uct", tmp_path / "tri.json", "--alpha", 10, "--p", 1)
    assert Barcode.loads(out) == bm
    code, _, err = run(capsys, "borel-moore", DATA / "triangle.txt", "--alpha", 3)
    assert code == 2 and "alpha" in err


def test_vr_and_bottleneck(capsys, tmp_path, monkeypatch):
    csv_path = tmp_path / "d.csv"
    csv_path.write_text("0,1,1.5\n1,0,1\n1.5,1,0\n")
    code, out, _ = run(capsys, "vr", csv_path, "--max-dim", 1)
    assert Barcode.loads(out) == Barcode({0: [Interval(0), Interval(0, 1), Interval(0, 1)]})
    monkeypatch.setenv("KPH_SEED", "7")
    _, a, _ = run(capsys, "vr", "--sample", "circle", "--n", 6)
    _, b, _ = run(capsys, "vr", "--sample", "circle", "--n", 6, "--seed", 7)
    assert a == b
    (tmp_path / "a.json").write_text(a)
    (tmp_path / "b.json").write_text(json.dumps([{"degree": 0, "bars": [{"birth": 0, "death": "inf"}]}]))
    code, out, _ = run(capsys, "bottleneck", tmp_path / "a.json", tmp_path / "b.json", "--degree", 0)
    assert code == 0 and set(json.loads(out)) == {"0"}
    code, _, _ = run(capsys, "vr")
    assert code == 2


def test_experiment(capsys, tmp_path):
    code, out, _ = run(capsys, "experiment", "--shape", "square", "--n", "4,5", "--p", "1,inf",
                       "--seeds", 0)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "shape,p,n,seed,degree,bottleneck"
    assert len(lines) == 1 + 2 * 2 * 2
    code, _, err = run(capsys, "experiment", "--n", 40)
    assert code == 3 and "resource guard" in err


def test_config_file_defaults(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("shape = torus\nn = 4\np = 2\nseeds = 1\n")
    code, out, _ = run(capsys, "--config", cfg, "experiment")
    assert code == 0
    rows = out.splitlines()[1:]
    assert len(rows) == 3 and all(r.startswith("torus,2,4,1,") for r in rows)
    code, out, _ = run(capsys, "--config", cfg, "experiment", "--p", "1")
    assert all(r.startswith("torus,1,") for r in out.splitlines()[1:])


def test_output_flag(capsys, tmp_path):
    target = tmp_path / "out.json"
    code, out, _ = run(capsys, "homology", DATA / "triangle.txt", "-o", target)
    assert code == 0 and out == ""
    assert Barcode.loads(target.read_text()).degree(1) == [Interval(5, 6)]


def test_missing_file(capsys):
    code, _, err = run(capsys, "homology", "/nonexistent/file.txt")
    assert code == 2


def test_bad_subcommand():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
