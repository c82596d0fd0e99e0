import json
import subprocess
import sys

import pytest

from artifact.cli import main, math_text
from artifact.ring import Coef
from artifact.schur import series_from_json, series_to_json

PARAMS = {"alpha": {"3": "a3", "4": "a4", "5": "a5"}, "beta": {"0": "b0", "2": "b2", "3": "b3", "4": "b4", "5": "b5"}}


@pytest.fixture
def params(tmp_path):
    p = tmp_path / "window.json"
    p.write_text(json.dumps(PARAMS))
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_lattice_example(capsys, params):
    code, out, _ = run(capsys, "lattice", "--top", "5", "--bottom", "2", "--charge", "0", "--model", "plus",
                       "--x", "x", "--y", "y", "--params", params, "--format", "json")
    assert code == 0
    doc = json.loads(out)
    want = ((1 - Coef("a5*b5")) / (1 - Coef("b5*x")) * (Coef("x") - Coef("a4")) / (1 - Coef("b4*x"))
            * (Coef("x") - Coef("a3")) / (1 - Coef("b3*x")) * Coef("x + y") / (1 - Coef("b2*x"))
            * (1 - Coef("b0*x")) / (1 + Coef("b0*y")))
    assert Coef(doc["result"]["product"]) == want
    assert len(doc["result"]["factors"]) == 5


def test_compute_json_round_trip(capsys, params):
    code, out, _ = run(capsys, "compute", "dfs", "--shape", "2,1", "--trunc", "4", "--params", params,
                       "--format", "json")
    assert code == 0
    doc = json.loads(out)
    again = json.dumps({"job": doc["job"], "result": series_to_json(series_from_json(doc["result"]))},
                       sort_keys=True, indent=2, ensure_ascii=False)
    assert again == out.rstrip("\n")
    for t in doc["result"]["terms"]:
        assert sum(t["p"]) <= 4


def test_compute_is_deterministic(capsys):
    argv = ["compute", "jacobi-trudi", "--shape", "2,2", "--skew", "1", "--trunc", "3", "--window", "0,2"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second


def test_compute_variants(capsys):
    for fn in ("dfs-dual", "giambelli"):
        code, out, _ = run(capsys, "compute", fn, "--shape", "2,1", "--trunc", "2", "--window", "0,1")
        assert code == 0 and "p1" in out
    code, out, _ = run(capsys, "compute", "hk", "--k", "2", "--trunc", "2", "--window", "0,1",
                       "--format", "math-text")
    assert code == 0 and "β_" in out


def test_specialized_compute(capsys):
    code, out, _ = run(capsys, "compute", "dfs", "--shape", "1", "--x", "x", "--y", "y")
    assert code == 0
    assert Coef(out.strip()) == Coef("x + y")


def test_usage_errors(capsys):
    assert run(capsys, "compute", "dfs", "--shape", "2,x", "--trunc", "2")[0] == 2
    assert run(capsys, "compute", "dfs", "--shape", "2")[0] == 2
    assert run(capsys, "compute", "hk", "--trunc", "2")[0] == 2
    assert run(capsys, "compute", "dfs", "--shape", "1", "--x", "x")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["compute", "nonsense"])
    assert exc.value.code == 2


def test_specialized_dual_uses_the_lattice(capsys):
    # specialized values come from the transfer matrix, so they exist for any finite window
    code, out, _ = run(capsys, "compute", "dfs-dual", "--shape", "1", "--x", "x", "--y", "y", "--window", "0,1")
    assert code == 0
    code2, out2, _ = run(capsys, "lattice", "--top", "", "--bottom", "1", "--model", "minus", "--window", "0,1")
    assert code2 == 0
    assert Coef(out.strip()) == Coef(out2.strip().splitlines()[-1])


def test_bad_params_file(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"gamma": {}}')
    assert run(capsys, "lattice", "--top", "1", "--params", str(p))[0] == 2
    assert run(capsys, "lattice", "--top", "1", "--params", str(tmp_path / "missing.json"))[0] == 2


def test_state_dump(capsys, params):
    code, out, _ = run(capsys, "state-dump", "--top", "5", "--bottom", "2", "--params", params)
    assert code == 0 and "col" in out
    code, out, _ = run(capsys, "state-dump", "--top", "3,1", "--maya", "--format", "json")
    assert json.loads(out)["result"]["occupied"] == [-4, -3, -2, 0, 3]


def test_verify_small_suite(capsys):
    code, out, _ = run(capsys, "verify", "pk_expansion")
    assert code == 0 and "PASS" in out
    code, out, _ = run(capsys, "verify", "lattice_example", "--format", "json")
    assert json.loads(out)["ok"] is True


def test_math_text():
    assert math_text("a[-1]*b[2]**2") == "α_-1·β_2^2"


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "artifact", "verify", "shift"], capture_output=True, text=True)
    assert res.returncode == 0, res.stderr
