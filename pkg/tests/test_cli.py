import json

import pytest

from biquad import codec
from biquad.biquadratic import classify_field
from biquad.cli import EXIT_CAPABILITY, EXIT_INPUT, EXIT_OK, EXIT_VERIFY, main
from biquad.sos import SosRep


def test_classify(capsys):
    assert main(["classify", "--radicands", "-3", "5"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "B(i)" in out
    assert "radicands: -3, 5, -15" in out


def test_classify_json(capsys):
    assert main(["classify", "--radicands", "5", "-6", "--json"]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["field"] == {"r1": 5, "r2": -6, "class_tag": "C(1,2)"}
    assert report["basis"][3] == ["0", "0", "1/2", "1/2"]


def test_classify_rejects_non_squarefree(capsys):
    assert main(["classify", "--radicands", "4", "-3"]) == EXIT_INPUT
    assert "radicand 4 not squarefree" in capsys.readouterr().err


def test_unit(capsys):
    assert main(["unit", "21"]) == EXIT_OK
    assert "(5+√21)/2" in capsys.readouterr().out
    assert main(["unit", "14", "--json"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out) == {
        "D": "14",
        "t": "15",
        "u": "4",
        "halved": False,
        "norm": "1",
    }
    assert main(["unit", "12"]) == EXIT_INPUT


def test_decompose(capsys):
    assert main(["decompose", "--field", "-3", "5", "--coords=1,2,-3,4", "--json"]) == EXIT_OK
    obj = json.loads(capsys.readouterr().out)
    assert obj["verified"] is True
    assert len(obj["squares"]) <= 4


def test_decompose_times_four(capsys):
    args = ["decompose", "--field", "-3", "2", "--coords=1,1,1,1", "--times-four"]
    assert main(args) == EXIT_OK
    assert capsys.readouterr().out.startswith("4(")


def test_decompose_needs_times_four_outside_class_i(capsys):
    assert main(["decompose", "--field", "-3", "2", "--coords=1,1,1,1"]) == EXIT_CAPABILITY
    assert "requires --times-four" in capsys.readouterr().err


def test_decompose_rejects_bad_coordinates():
    assert main(["decompose", "--field", "-3", "5", "--coords=1,2,3"]) == EXIT_INPUT
    assert main(["decompose", "--field", "-3", "5", "--coords=a,b,c,d"]) == EXIT_INPUT


def test_verify(tmp_path, capsys):
    K = classify_field(-3, 5)
    good = tmp_path / "good.json"
    good.write_text(codec.dumps(codec.rep_to_json(SosRep(K.constant(2), [K.constant(1)] * 2))))
    assert main(["verify", "--json-file", str(good)]) == EXIT_OK
    assert capsys.readouterr().out.startswith("ok:")

    bad = tmp_path / "bad.json"
    bad.write_text(codec.dumps(codec.rep_to_json(SosRep(K.constant(2), [K.constant(1)]))))
    assert main(["verify", "--json-file", str(bad)]) == EXIT_VERIFY
    assert "residual 1" in capsys.readouterr().out

    assert main(["verify", "--json-file", str(tmp_path / "missing.json")]) == EXIT_INPUT


def test_s_number(capsys):
    assert main(["s-number", "7"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "field level: 4" in out
    assert "ring level (oracle): 4" in out


def test_moser(capsys):
    assert main(["moser", "--dmax", "10"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "improvement: 2, 5, 10" in out
    assert "excess: 6" in out


def test_survey(tmp_path, capsys):
    out = tmp_path / "survey.csv"
    assert main(["survey", "--rmax", "3", "--samples", "1", "--out", str(out)]) == EXIT_OK
    assert out.read_text().startswith("r1,r2,class_tag")
    assert main(["survey", "--rmax", "0", "--samples", "1", "--out", str(out)]) == EXIT_INPUT


def test_evidence(capsys):
    args = ["evidence", "--samples", "3", "--target-height", "2", "--pool-height", "1"]
    assert main(args) == EXIT_OK
    assert "evidence at height bound 1" in capsys.readouterr().out


def test_unknown_command_exits():
    with pytest.raises(SystemExit):
        main(["frobnicate"])


def test_decompose_output_verifies(tmp_path, capsys):
    args = ["decompose", "--field", "-3", "5", "--coords=3,-2,5,1", "--json"]
    assert main(args) == EXIT_OK
    saved = tmp_path / "rep.json"
    saved.write_text(capsys.readouterr().out)
    assert main(["verify", "--json-file", str(saved)]) == EXIT_OK
    assert capsys.readouterr().out.startswith("ok:")


def test_verify_rejects_malformed_json(tmp_path, capsys):
    broken = tmp_path / "broken.json"
    broken.write_text('{"target": ')
    assert main(["verify", "--json-file", str(broken)]) == EXIT_INPUT
    assert "malformed JSON" in capsys.readouterr().err


def test_evidence_integers(capsys):
    args = ["evidence", "--samples", "2", "--target-height", "2", "--pool-height", "1"]
    assert main([*args, "--multiplier", "1"]) == EXIT_OK
    assert "elements of O_K" in capsys.readouterr().out
    assert main([*args, "--multiplier", "1", "--field", "-3", "2"]) == EXIT_CAPABILITY


def test_evidence_caps_pool_height(capsys):
    assert main(["evidence", "--samples", "1", "--pool-height", "6"]) == EXIT_INPUT
    assert "pool height" in capsys.readouterr().err
