import io
import json
import subprocess
import sys

import pytest

from trisect.cli import run
from trisect.diagram import parse_diagram
from trisect.fixtures import FIXTURES, load_fixture


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_homology_s4():
    code, out, _ = call("homology", "s4", "--json")
    assert code == 0
    doc = json.loads(out)
    assert [doc["homology"][str(i)]["rank"] for i in range(5)] == [1, 0, 0, 0, 1]
    assert doc["digest"] == load_fixture("s4").digest()


def test_torsion_example_document():
    code, out, _ = call("torsion", "paper-sec9", "--basis", "sec9-basis", "--json")
    assert code == 0
    sec = json.loads(out)["torsion"]
    assert sec["tau"] == "t1 - 1"
    assert sec["ambiguity"] == "pm-monomial"
    assert sec["u"] == "x1"


def test_torsion_u_flag():
    code, out, _ = call("torsion", "paper-sec9", "--basis", "sec9-basis", "--u", "y1", "--json")
    assert code == 0 and json.loads(out)["torsion"]["u"] == "y1"


def test_json_is_deterministic():
    a = call("forms", "paper-sec9", "--twisted", "--basis", "sec9-basis", "--json")[1]
    b = call("forms", "paper-sec9", "--twisted", "--basis", "sec9-basis", "--json")[1]
    assert a == b
    doc = json.loads(a)
    assert doc["forms"]["h1h3"]["matrix"] == [["-1 + t1^-1"]]


@pytest.mark.parametrize("name", FIXTURES)
def test_example_roundtrip(name):
    code, out, _ = call("example", name)
    assert code == 0
    assert parse_diagram(out).digest() == load_fixture(name).digest()


def test_validate_bad_relator(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"genus": 1, "relator": "x1 y1 X1", "alpha": ["x1"], "beta": ["y1"],
                             "gamma": ["x1 y1"]}))
    code, out, err = call("validate", str(p))
    assert code == 1
    assert "relator: occurrence" in err
    assert "INVALID" in out


def test_validate_ok():
    code, out, _ = call("validate", "paper-sec9", "--json")
    assert code == 0 and json.loads(out)["validate"]["ok"]


def test_usage_errors(tmp_path):
    assert call("frobnicate")[0] == 2
    assert call("homology")[0] == 2
    assert call("homology", "no-such-fixture")[0] == 2
    p = tmp_path / "junk.json"
    p.write_text("{")
    code, _, err = call("homology", str(p))
    assert code == 2 and "JSON" in err
    assert call("torsion", "paper-sec9", "--u", "q7")[0] == 2


def test_twisted_on_trivial_phi_fails():
    code, _, err = call("homology", "cp2", "--twisted")
    assert code == 1 and "nontrivial phi" in err


def test_phi_file(tmp_path):
    p = tmp_path / "phi.json"
    p.write_text(json.dumps({"rank": 1, "values": {"y1": [1]}}))
    code, out, _ = call("homology", "s1xs3", "--twisted", "--phi", str(p), "--json")
    assert code == 0 and json.loads(out)["homology"]["phi"]["values"]["y1"] == [1]
    p.write_text(json.dumps({"rank": 1, "values": {"x1": [1]}}))  # x1 is a curve
    assert call("homology", "s1xs3", "--twisted", "--phi", str(p))[0] == 1


def test_alexander_text():
    code, out, _ = call("alexander", "paper-sec9")
    assert code == 0 and "Delta = 1" in out


def test_check_command():
    code, out, _ = call("check")
    assert code == 0
    assert out.count("PASS") >= 9


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "trisect", "homology", "cp2"], capture_output=True, text=True)
    assert res.returncode == 0
    assert "H2 = Z" in res.stdout
