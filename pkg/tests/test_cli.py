import io
import json

import pytest

from qmzv.cli import parse_tau, run
from qmzv.iterint import Tensor
from qmzv.mes import MESExpansion, mzv_numeric
from qmzv.qseries import QSeries
from qmzv.relations import RelationSet
from qmzv.words import LinComb


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), stdout=out)
    return code, out.getvalue()


def body(text):
    return [line for line in text.splitlines() if not line.startswith("#")]


def payload(*argv):
    code, text = call(*argv, "--format", "json")
    assert code == 0
    return json.loads(text)


def test_bracket_golden():
    code, text = call("bracket", "--index", "2", "--order", "8", "--format", "text")
    assert code == 0
    assert body(text) == ["q + 3q^2 + 4q^3 + 7q^4 + 6q^5 + 12q^6 + 8q^7 + 15q^8"]
    assert text.startswith("# version=")


def test_config_echo_in_json():
    data = payload("bracket", "--index", "4,2", "--order", "8")
    assert data["config"]["order"] == 8 and data["config"]["precision"] == 64
    assert data["config"]["tol"] == 1e-8
    assert QSeries.from_json(data["result"]) == QSeries.from_json(data["result"])


def test_default_order_from_environment(monkeypatch):
    monkeypatch.setenv("QMZV_DEFAULT_ORDER", "5")
    data = payload("bracket", "--index", "2")
    assert data["result"]["order"] == 5
    monkeypatch.setenv("QMZV_DEFAULT_ORDER", "x")
    assert call("bracket", "--index", "2")[0] == 2


def test_coproduct_json():
    data = payload("coproduct", "--index", "3,2")
    t = Tensor.from_json(data["result"]["result"])
    assert t == LinComb({((), (3, 2)): 1, ((2,), (3,)): 3, ((3,), (2,)): 2, ((3, 2), ()): 1})


def test_check_delta12():
    code, text = call("check", "--suite", "delta12", "--order", "60")
    assert code == 0 and "verified to q^60" in text


def test_usage_errors():
    assert call("frobnicate")[0] == 2
    assert call("bracket")[0] == 2
    assert call("bracket", "--index", "x")[0] == 2
    assert call("check", "--suite", "nonsense")[0] == 2
    assert call("suite", "nonsense")[0] == 2
    assert call("mes", "--index", "4,3", "--tau", "-i")[0] == 2


@pytest.mark.filterwarnings("ignore::UserWarning")
def test_failed_verification_exit_code():
    # five series at order 2 admit spurious relations that die at order 12
    code, text = call("find-relations", "2", "4", "6", "8", "10", "--order", "2")
    assert code == 1 and "stable False" in text


def test_find_relations_round_trip():
    data = payload("find-relations", "D=delta", "5,7", "7,5", "9,3", "2", "4", "6", "8", "12", "--order", "60")
    labels = ["D", "[5,7]", "[7,5]", "[9,3]", "[2]", "[4]", "[6]", "[8]", "[12]"]
    rel = RelationSet.from_json(data["result"], labels)
    assert rel.basis[0][1] == -168 and rel.verified_to_order == 70


def test_lincomb_verbs_round_trip():
    for argv in (["multiply", "--left", "2", "--right", "3"], ["derive", "--index", "1,1"],
                 ["partition", "--index", "2,2"], ["shuffle-bracket", "--index", "4,1"],
                 ["multiply", "--left", "2", "--right", "1", "--product", "shuffle"]):
        data = payload(*argv, "--order", "20")
        lc = LinComb.from_json(data["result"]["result"])
        assert lc and data["result"].get("verified", True)


def test_regularize():
    code, text = call("regularize", "--index", "1,2")
    assert body(text) == ["(1*[2])*T^1 + (-2*[2,1])"]


def test_mes_methods_agree():
    values = {}
    for method in ("lattice", "fourier", "shuffle", "star"):
        data = payload("mes", "--index", "4,3", "--method", method, "--precision", "30")
        v = data["result"]["value"]
        values[method] = complex(float(v["re"]), float(v["im"]))
    ref = values["fourier"]
    assert all(abs(v - ref) < 1e-10 for v in values.values())


def test_mes_expansion_json():
    data = payload("mes", "--index", "3,2", "--method", "fourier", "--precision", "20")
    exp = MESExpansion.from_json(data["result"]["expansion"])
    assert exp.weight == 5 and len(exp) == 4


def test_zk_verb():
    code, text = call("zk", "--k", "5", "--format", "json", "--", "2,3")
    assert code == 0
    data = json.loads(text)
    assert abs(data["result"]["value"] - float(mzv_numeric((2, 3)))) < 1e-8
    data = payload("zk", "--k", "3", "1,1|1,0")
    assert data["result"]["diverges"] is True


def test_suite_output_is_deterministic():
    a = call("suite", "coproduct", "--no-timings")
    b = call("suite", "coproduct", "--no-timings")
    assert a == b and a[0] == 0
    assert body(a[1])[-1] == "5/5 passed"


def test_out_file(tmp_path):
    target = tmp_path / "r.json"
    code, text = call("bracket", "--index", "2", "--order", "3", "--format", "json", "--out", str(target))
    assert code == 0 and text == ""
    assert json.loads(target.read_text())["result"]["coeffs"][1] == "1/1"


@pytest.mark.parametrize("text,want", [("i", 1j), ("2i", 2j), ("0.5+1.2i", 0.5 + 1.2j), ("-0.25+i", -0.25 + 1j)])
def test_parse_tau(text, want):
    assert complex(parse_tau(text)) == want
