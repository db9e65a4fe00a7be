import csv
import io
import json
import math
import subprocess
import sys

import pytest

from ps12.cli import FUNCTIONS, bary_grid, main
from ps12.sbasis import SplineFunction


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_tabulate_dims(capsys):
    code, out, _ = run(capsys, "tabulate", "dims")
    assert code == 0 and out == "0 12\n1 10\n2 12\n3 16\n"


def test_tabulate_kappa_and_points(capsys):
    _, out, _ = run(capsys, "tabulate", "kappa")
    assert "s2 28/9" in out and "s3t 1297/17" in out
    _, out, _ = run(capsys, "tabulate", "domain-points", "--basis", "s3t")
    assert out.splitlines()[12] == "13 (7/9, 1/9, 1/9)"


def test_eval_exact_with_derivatives(capsys):
    code, out, _ = run(capsys, "eval", "--basis", "s3", "--index", "1", "--exact", "--grid", "3", "--dir", "1,0", "--dir", "0,1")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["x", "y", "value", "d1", "d2"]
    assert rows[1] == ["0", "0", "1", "-6", "24"]
    assert len(rows) == 1 + len(bary_grid(3))


def test_eval_whole_basis_partition(capsys, tmp_path):
    tri = tmp_path / "t.json"
    tri.write_text(json.dumps({"p1": [0, 0], "p2": [2, "1/3"], "p3": ["1/2", 1]}))
    code, out, _ = run(capsys, "eval", "--basis", "s2t", "--triangle", str(tri), "--grid", "4")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0][:3] == ["x", "y", "S1"] and len(rows[0]) == 14
    for r in rows[1:]:
        assert math.isclose(sum(float(v) for v in r[2:]), 1.0, abs_tol=1e-14)


def test_eval_is_byte_stable(capsys):
    _, a, _ = run(capsys, "eval", "--basis", "s3t", "--grid", "5")
    _, b, _ = run(capsys, "eval", "--basis", "s3t", "--grid", "5")
    assert a == b


def test_eval_errors(capsys):
    assert run(capsys, "eval", "--index", "17")[0] == 2
    assert run(capsys, "eval", "--basis", "s1", "--index", "1", "--dir", "1,0", "--dir", "0,1")[0] == 2
    assert run(capsys, "eval", "--dir", "1,0")[0] == 2
    assert run(capsys, "eval", "--grid", "1")[0] == 2
    assert run(capsys, "eval", "--triangle", "/nonexistent.json")[0] == 2
    with pytest.raises(SystemExit):
        main(["eval", "--basis", "s9"])


def test_qi_reproduces_cubic(capsys):
    code, out, _ = run(capsys, "qi", "--basis", "s3", "--func", "cubic", "--exact")
    f = SplineFunction.from_json(json.loads(out))
    x = (f.triangle.p1[0] / 3 + f.triangle.p2[0] / 2, f.triangle.p3[1] / 7)
    assert f(x) == FUNCTIONS["cubic"](*x)


def test_qi_samples_roundtrip(capsys, tmp_path):
    _, pts, _ = run(capsys, "qi-points", "--basis", "s2")
    rows = list(csv.reader(io.StringIO(pts)))[1:]
    samples = tmp_path / "s.csv"
    with open(samples, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["x", "y", "f"])
        for x, y in rows:
            w.writerow([x, y, repr(FUNCTIONS["exp"](float(x), float(y)))])
    _, a, _ = run(capsys, "qi", "--basis", "s2", "--samples", str(samples))
    _, b, _ = run(capsys, "qi", "--basis", "s2", "--func", "exp")
    assert json.loads(a) == json.loads(b)
    with open(samples, "w") as fh:
        fh.write("x,y,f\n0.3,0.3,1\n")
    assert run(capsys, "qi", "--basis", "s2", "--samples", str(samples))[0] == 2


def _join_config(tmp_path, **extra):
    left = {"basis": "s3", "variant": "standard", "triangle": {"p1": [0, 0], "p2": [2, 0], "p3": ["1/2", "3/2"]},
            "coeffs": [str(j % 5 - 2) for j in range(16)]}
    cfg = {"left": left, "right_apex": ["6/5", "-7/4"], "order": 2, "free": [1, 2, 3, 4]}
    cfg.update(extra)
    path = tmp_path / "join.json"
    path.write_text(json.dumps(cfg))
    return path


def test_join(capsys, tmp_path):
    code, out, _ = run(capsys, "join", str(_join_config(tmp_path)))
    rep = json.loads(out)
    assert code == 0 and rep["passed"]
    assert len(rep["c_hat_sigma"]) == 16 and rep["c_hat_sigma"][12:] == ["1", "2", "3", "4"]
    assert all(float(r) <= 1e-10 for r in rep["residuals"])


def test_join_errors(capsys, tmp_path):
    assert run(capsys, "join", str(_join_config(tmp_path, free=[1])))[0] == 2
    assert run(capsys, "join", str(_join_config(tmp_path, right_apex=[1, 0])))[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert run(capsys, "join", str(bad))[0] == 2


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "-d", "3")
    assert code == 0 and len(out.split()) == 7
    _, out, _ = run(capsys, "enumerate", "-d", "1", "--no-filter")
    assert len(out.split()) == 11
    assert run(capsys, "enumerate", "-d", "4")[0] == 2


def test_verify_subset(capsys):
    code, out, _ = run(capsys, "verify", "kappa", "supports")
    assert code == 0
    assert [line.split()[0] for line in out.splitlines()] == ["[PASS]", "[PASS]"]
    code, out, _ = run(capsys, "verify", "kappa", "--json")
    assert json.loads(out)[0]["passed"] is True
    assert run(capsys, "verify", "nonsense")[0] == 2


def test_verify_reports_failure(capsys):
    code, out, _ = run(capsys, "verify", "enumeration")
    assert code == 1 and out.startswith("[FAIL]")


def test_module_entry_point(tmp_path):
    out = tmp_path / "dims.txt"
    subprocess.run([sys.executable, "-m", "ps12", "tabulate", "dims", "--out", str(out)], check=True)
    assert out.read_text().startswith("0 12")
