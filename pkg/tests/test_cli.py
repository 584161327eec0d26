import io
import json
import subprocess
import sys

import pytest

from conftest import data_file
from gridhom.cli import run

BAD = __import__("os").path.join(__import__("os").path.dirname(__file__), "data", "bad.json")


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_alexander_golden():
    code, out, _ = call("alexander", data_file("trefoil.json"))
    assert code == 0 and out == '{"offset":-1,"coeffs":[1,-1,1]}\n'


def test_alexander_methods_agree():
    outs = {call("alexander", data_file("t34.json"), "--method", m)[1] for m in ("euler", "homology", "fox")}
    assert outs == {'{"offset":-3,"coeffs":[1,-1,0,1,0,-1,1]}\n'}


def test_validate():
    code, out, _ = call("validate", data_file("trefoil.json"))
    assert code == 0 and json.loads(out) == {"valid": True, "size": 5, "components": 1, "diagonal": True}
    code, out, err = call("validate", BAD)
    assert code == 1
    assert json.loads(out) == {"error": "ValidationError", "message": "O and X share the square in column 0",
                               "field": "collision"}
    assert "ValidationError" in err
    code, out, _ = call("validate", "/nonexistent.json")
    assert code == 1 and json.loads(out)["field"] == "path"


def test_homology_trefoil():
    code, out, _ = call("homology", data_file("trefoil.json"))
    assert json.loads(out) == [{"stratum": 1, "dims": [[0, 1]], "flavor": "hat"},
                               {"stratum": 0, "dims": [[-1, 1]], "flavor": "hat"},
                               {"stratum": -1, "dims": [[-2, 1]], "flavor": "hat"}]
    code, out, _ = call("homology", data_file("trefoil.json"), "--flavor", "tilde", "--strata", "g")
    assert json.loads(out) == [{"stratum": 1, "dims": [[0, 1]], "flavor": "tilde"}]


def test_homology_size_cap_and_strata():
    code, out, _ = call("homology", data_file("13n241.json"))
    assert code == 1 and json.loads(out)["error"] == "SizeCapExceeded"
    code, out, _ = call("homology", data_file("13n241.json"), "--strata", "g-2")
    assert code == 0 and json.loads(out) == [{"stratum": 3, "dims": [[-1, 2]], "flavor": "hat"}]


def test_diagonal_report():
    code, out, _ = call("diagonal-report", data_file("13n241.json"), "--assert-minimal")
    r = json.loads(out)
    assert code == 0 and r["m"] == 2 and r["genus"] == 5
    assert r["top"] == {"0": 1} and r["next"] == {"-1": 1}
    assert {tuple(w["interval1"]) for w in r["witnesses"]} == {(0, 5), (0, 7)}


def test_braid2grid():
    code, out, _ = call("braid2grid", "--family", "4,3", "--twists", "1")
    assert code == 0 and json.loads(out)["size"] == 13
    code, out, _ = call("braid2grid", "--word", "a1^4 a2 a1^3 a2^2")
    assert code == 0 and json.loads(out)["size"] == 26
    code, out, _ = call("braid2grid", "--family", "2,2")
    assert code == 1 and json.loads(out)["error"] == "NotAKnot"
    assert call("braid2grid")[0] == 2
    assert call("braid2grid", "--family", "x")[0] == 2


def test_connect_sum_and_unknot(tmp_path):
    t = data_file("trefoil.json")
    code, out, _ = call("connect-sum", t, t)
    assert code == 0 and json.loads(out)["size"] == 8
    p = tmp_path / "sum.json"
    p.write_text(out)
    code, out, _ = call("unknot", str(p))
    r = json.loads(out)
    assert code == 0 and r["genus"] == 2 and r["length"] == 2
    assert r["steps"][-1]["alexander"] == {"offset": 0, "coeffs": [1]}


def test_aux():
    code, out, _ = call("aux", "partition", "5")
    assert json.loads(out) == {"N": 5, "dims": {"1": 1, "2": 4, "3": 6, "4": 4, "5": 1}, "homology": {}}
    code, out, _ = call("aux", "planar", data_file("planar_example.json"))
    assert json.loads(out)["homology"] == {"2": 1}
    a = call("aux", "planar", "--random", "4", "--seed", "3")[1]
    assert a == call("aux", "planar", "--random", "4", "--seed", "3")[1]
    assert call("aux", "planar")[0] == 2


@pytest.mark.parametrize("argv", [[], ["nonsense"], ["homology"], ["alexander", "x.json", "--method", "bogus"],
                                  ["info", "x.json", "--threads", "0"], ["info", "x.json", "--max-full-enum", "q"]])
def test_usage_errors(argv):
    code, out, err = call(*argv)
    assert code == 2 and out == "" and "usage error" in err


def test_bad_strata_is_usage_error():
    code, _, err = call("homology", data_file("trefoil.json"), "--strata", "q")
    assert code == 1 and "stratum" in err


def test_table_format():
    code, out, _ = call("homology", data_file("trefoil.json"), "--format", "table")
    assert code == 0 and out.splitlines()[0] == "flavor: hat"
    code, out, _ = call("info", data_file("trefoil.json"), "--format", "table")
    assert "genus: 1" in out


def test_console_script_is_deterministic():
    cmd = [sys.executable, "-m", "gridhom.cli", "diagonal-report", data_file("13n241.json"), "--assert-minimal"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and json.loads(a)["m"] == 2
