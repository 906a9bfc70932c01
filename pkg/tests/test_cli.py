import io
import json

import numpy as np
import pytest

from projspec import serialize as ser
from projspec.cli import main
from projspec.demos import clock_shift_pair, clock_shift_tuple
from projspec.equiv import random_equivalent_tuple
from projspec.fixtures import diagonal_tuple, scalar_tuple
from projspec.mcform import LinearFunctional
from projspec.pencil import MatrixTuple
from projspec.periods import Loop


@pytest.fixture
def files(tmp_path, plane_quadric, braid):
    pair = clock_shift_pair(3)
    objects = {
        "ex6": ser.tuple_to_json(plane_quadric),
        "ex6_moved": ser.tuple_to_json(random_equivalent_tuple(plane_quadric, seed=3)[0]),
        "braid": ser.tuple_to_json(braid),
        "scalar": ser.tuple_to_json(scalar_tuple(2, 3)),
        "diag12": ser.tuple_to_json(diagonal_tuple([1, 1], [1, 2])),
        "cs8": ser.tuple_to_json(clock_shift_tuple(8)),
        "cs_padded": ser.tuple_to_json(MatrixTuple(np.array([pair.U, pair.V, np.eye(3)]))),
        "trace": ser.functional_to_json(LinearFunctional.trace(3)),
        "phi1": ser.functional_to_json(LinearFunctional.diagonal([1, 0, 0], "phi1")),
        "phi2": ser.functional_to_json(LinearFunctional.diagonal([0, 1, 1], "phi2")),
        "offdiag": ser.functional_to_json(LinearFunctional(np.outer([0, 1, 0], [0, 0, 1]).astype(complex))),
        "linking": ser.loop_to_json(Loop.circle([1, -1, 0], [1, 0, 0], 0.1)),
        "touching": ser.loop_to_json(Loop.circle([2, -1, 0], [1, 0, 0], 1.0)),
    }
    paths = {}
    for name, obj in objects.items():
        path = tmp_path / f"{name}.json"
        path.write_text(ser.dumps(obj))
        paths[name] = str(path)
    return paths


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_det(capsys, files):
    code, out, _ = run(capsys, "det", files["ex6"])
    assert code == 0
    p = ser.polynomial_from_json(json.loads(out))
    assert p.coefficient((1, 2, 0)) == pytest.approx(1)
    code, out, _ = run(capsys, "det", files["scalar"])
    p = ser.polynomial_from_json(json.loads(out))
    assert p.coefficient((1, 0)) == pytest.approx(2) and p.coefficient((0, 1)) == pytest.approx(3)


def test_det_rank_deficient_exit_2(capsys, files):
    code, _, err = run(capsys, "det", files["ex6"], "--samples", 4)
    assert code == 2 and "samples" in err


def test_sample_cloud_and_chart(capsys, files):
    code, out, _ = run(capsys, "sample", files["braid"], "--lines", 5)
    assert code == 0
    pts, margins = ser.read_points_csv(out)
    assert len(pts) > 0 and np.all(margins <= 1e-8)
    prod = (pts[:, 0] - pts[:, 1]) * (pts[:, 1] - pts[:, 2]) * (pts[:, 2] - pts[:, 0])
    assert np.all(np.abs(prod) <= 1e-10)
    code, out, _ = run(capsys, "sample", files["cs8"], "--lines", 5)
    pts, _ = ser.read_points_csv(out)
    assert np.max(np.abs(np.abs(pts[:, 0]) - np.abs(pts[:, 1]))) <= 1e-8
    code, out, _ = run(capsys, "sample", files["ex6"], "--lines", 0)
    assert code == 0 and out == "re_z0,im_z0,re_z1,im_z1,re_z2,im_z2,margin\n"
    code, out, _ = run(capsys, "sample", files["cs8"], "--chart", 0, "--resolution", 5, 5)
    assert code == 0 and len(out.splitlines()) == 26


def test_arrange(capsys, files):
    code, out, _ = run(capsys, "arrange", files["braid"])
    assert code == 0 and len(json.loads(out)) == 3
    code, out, _ = run(capsys, "arrange", files["diag12"])
    assert code == 0 and len(json.loads(out)) == 2
    code, _, err = run(capsys, "arrange", files["ex6"])
    assert code == 3 and "NotCommutative" in err


def test_check_form(capsys, files):
    code, out, _ = run(capsys, "check-form", files["ex6"], files["trace"], "--points", 4)
    checks = json.loads(out)["checks"]
    assert code == 0 and all(c["pass"] for c in checks.values())
    assert checks["euler"]["max"] <= 1e-10
    code, out, _ = run(capsys, "check-form", files["ex6"], files["offdiag"], "--points", 4)
    checks = json.loads(out)["checks"]
    assert not checks["closedness"]["pass"] and not checks["centrality"]["pass"]
    assert checks["euler"]["pass"]


def test_period(capsys, files):
    code, out, _ = run(capsys, "period", files["ex6"], files["phi1"], files["linking"])
    rep = json.loads(out)
    assert code == 0 and rep["verdict"] == "NONTRIVIAL" and rep["quantized"] == 1
    assert rep["value"][1] == pytest.approx(2 * np.pi, abs=1e-6)
    code, out, _ = run(capsys, "period", files["ex6"], files["phi2"], files["linking"])
    rep = json.loads(out)
    assert rep["verdict"] == "INCONCLUSIVE" and abs(complex(*rep["value"])) <= 1e-6
    code, _, err = run(capsys, "period", files["ex6"], files["phi1"], files["touching"])
    assert code == 4 and "LoopTouchesSpectrum" in err


def test_equiv(capsys, files):
    code, out, _ = run(capsys, "equiv", files["ex6"], files["ex6_moved"])
    rep = json.loads(out)
    assert code == 0 and rep["status"] == "Similar" and rep["residual"] <= 1e-8
    code, out, _ = run(capsys, "equiv", files["ex6"], files["ex6"])
    w = ser.witness_from_json(json.loads(out))
    assert np.allclose(w.U @ w.V, np.eye(3) * (w.U @ w.V)[0, 0], atol=1e-8)
    code, out, _ = run(capsys, "equiv", files["braid"], files["cs_padded"])
    assert code == 0 and json.loads(out)["status"] == "NotSimilar"


def test_demo(capsys):
    code, out, _ = run(capsys, "demo", "rotation", "--q", 8, "--lines", 5)
    rep = json.loads(out)
    assert code == 0 and rep["outer"]["quantized"] == 1 and rep["inner"]["quantized"] == 1
    code, out, _ = run(capsys, "demo", "disk", "--coeffs", "1,-1")
    rep = json.loads(out)
    assert not rep["invertible"] and rep["margin"] == pytest.approx(0, abs=1e-12)
    code, _, _ = run(capsys, "demo", "rotation", "--q", 1)
    assert code == 1


def test_usage_errors(capsys, files, tmp_path):
    assert run(capsys)[0] == 1
    assert run(capsys, "det")[0] == 1
    assert run(capsys, "det", tmp_path / "missing.json")[0] == 1
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "det", bad)[0] == 1


def test_stdin_and_output_file(capsys, monkeypatch, files, tmp_path):
    monkeypatch.setattr("sys.stdin", io.StringIO(open(files["ex6"]).read()))
    out_path = tmp_path / "poly.json"
    assert run(capsys, "det", "-", "-o", out_path)[0] == 0
    assert json.loads(out_path.read_text())["degree"] == 3


def test_seed_controls_output(capsys, monkeypatch, files):
    a = run(capsys, "sample", files["ex6"], "--lines", 3)[1]
    b = run(capsys, "sample", files["ex6"], "--lines", 3)[1]
    assert a == b
    c = run(capsys, "--seed", 42, "sample", files["ex6"], "--lines", 3)[1]
    assert c == a
    monkeypatch.setenv("PROJSPEC_SEED", "7")
    d = run(capsys, "sample", files["ex6"], "--lines", 3)[1]
    assert d != a
    e = run(capsys, "--seed", 7, "sample", files["ex6"], "--lines", 3)[1]
    assert d == e
