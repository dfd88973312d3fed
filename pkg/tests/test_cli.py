import json
from fractions import Fraction

import pytest

from polarcyl.cli import BAD_INPUT, FAILED, OK, main, run_text
from polarcyl.documents import (
    DocumentError,
    class_doc,
    dump_job,
    loads_job,
    parse_job,
    surface_doc,
    threshold_certificate_doc,
)
from polarcyl.families import DP2_CONTRACTED, dp2_tower, nine_points
from polarcyl.picard import canonical_class

F = Fraction


def general(n):
    return {"model": "general", "n": n}


def anticanonical(n):
    return class_doc(-canonical_class(n))


def run(doc, command=None):
    return run_text(command, json.dumps(doc))


def floats_in(value):
    if isinstance(value, float):
        return True
    if isinstance(value, dict):
        return any(floats_in(v) for v in value.values())
    if isinstance(value, list):
        return any(floats_in(v) for v in value)
    return False


def nine_points_doc(x, command="classify"):
    spec, A, cert = nine_points(x)
    return {
        "command": command,
        "surface": surface_doc(spec),
        "A": class_doc(A),
        "options": {"certificate": threshold_certificate_doc(cert)},
    }


# --------------------------------------------------------------------------
# commands


def test_fujita():
    code, out = run({"command": "fujita", "surface": general(6), "A": anticanonical(6)})
    assert code == OK
    assert out["mu"] == "1" and out["r"] == 0 and out["face"] == [] and out["K2"] == "3"


def test_fujita_nine_points():
    code, out = run(nine_points_doc(F(1, 4), "fujita"))
    assert code == OK and out["r"] == 4 and out["source"] == "certificate"
    doc = nine_points_doc(F(1, 4), "fujita")
    del doc["options"]
    code, out = run(doc)
    assert code == BAD_INPUT and out["error"]["field"] == "options"


@pytest.mark.parametrize("kind,count", [("minus-one", 240), ("minus-two", 120)])
def test_rays(kind, count):
    code, out = run({"command": "rays", "surface": general(8), "options": {"kind": kind}})
    assert code == OK and out["count"] == count == len(out["classes"])


def test_classify():
    code, out = run({"command": "classify", "surface": general(6), "A": anticanonical(6)})
    assert code == OK
    assert out["status"] == "no-cylinder" and out["reason"] == "theorem-main"
    code, out = run(nine_points_doc(F(1, 4)))
    assert code == OK and out["reason"] == "nine-points-lemma" and out["r"] == 4
    code, out = run(nine_points_doc(F(9, 10)))
    assert out["status"] == "cylinder" and "certificate" in out


def test_star_check_exit_codes():
    code, out = run({"command": "star-check", "surface": general(7)})
    assert code == OK and out["status"] == "holds"
    code, out = run({"command": "star-check", "surface": surface_doc(dp2_tower(DP2_CONTRACTED))})
    assert code == FAILED and out["status"] == "violated"
    names = {v["curve"] for v in out["violations"]}
    assert {"L2", "F1"} <= names


def test_verify_example():
    code, out = run({"command": "verify-example", "options": {
        "example": "auxiliary", "params": {"k": 1, "eps1": "1/4", "eps2": "1/4", "x": "15/16"}}})
    assert code == OK and all(c["status"] == "pass" for c in out["checks"])
    assert out["residual"] == ["0"] * 7
    code, out = run({"command": "verify-example", "options": {
        "example": "dp2", "params": {"eps": "1/4", "x": "1/8"}}})
    assert code == OK
    printed = [c for c in out["checks"] if c["name"] == "twisted-as-printed"][0]
    assert not printed["passed"] and not printed["required"]
    code, out = run({"command": "verify-example", "options": {
        "example": "auxiliary", "params": {"k": 1, "eps1": "1/4", "eps2": "1/4", "x": "1/2"}}})
    assert code == BAD_INPUT and "x > 1 - " in out["error"]["message"]


def test_verify_certificate_round_trip():
    code, out = run({"command": "verify-example", "options": {
        "example": "auxiliary", "params": {"k": 2, "eps1": "1/5", "eps2": "1/5", "x": "7/8"}}})
    cert = out["certificate"]
    doc = {"command": "verify-certificate", "surface": general(7), "A": out["A"],
           "options": {"certificate": cert}}
    code, rep = run(doc)
    assert code == OK and rep["accepted"]
    cert["components"] = cert["components"][1:]
    code, rep = run(doc)
    assert code == FAILED and not rep["accepted"]


def test_reports_have_no_floats():
    docs = [
        {"command": "fujita", "surface": general(7), "A": anticanonical(7)},
        {"command": "classify", "surface": general(7),
         "A": ["3", "-1", "-1", "-1", "-1", "-1", "-1/10", "-1/10"]},
        nine_points_doc(F(1, 2)),
        {"command": "verify-example", "options": {"example": "dp2", "params": {"eps": "1/5", "x": "1/7"}}},
    ]
    for doc in docs:
        _, out = run(doc)
        assert not floats_in(out)


# --------------------------------------------------------------------------
# documents


def test_canonical_round_trip_is_byte_identical():
    docs = [
        nine_points_doc(F(1, 4)),
        {"command": "rays", "surface": general(5), "options": {"kind": "minus-two"}},
        {"command": "star-check", "surface": surface_doc(dp2_tower(DP2_CONTRACTED))},
        {"command": "verify-example", "options": {"example": "nine-points",
                                                  "params": {"x": "2/4", "indices": [2, 3, 5, 7]}}},
    ]
    for doc in docs:
        for pretty in (True, False):
            text = dump_job(parse_job(doc), pretty)
            assert dump_job(loads_job(text), pretty) == text
    # rationals are normalised on the way through
    assert '"1/2"' in dump_job(parse_job(docs[3]))


@pytest.mark.parametrize("doc,field", [
    ({"command": "fujita", "surface": general(6), "A": ["3", "-1", "-1", "-1", "-1", -1.0, "-1"]}, "A[5]"),
    ({"command": "fujita", "surface": general(6), "A": ["3", "-1"]}, "A"),
    ({"command": "fujita", "surface": {"model": "general"}, "A": []}, "surface.n"),
    ({"command": "explode", "surface": general(6)}, "command"),
    ({"command": "rays", "surface": general(6), "options": {"kind": "minus-three"}}, "options.kind"),
    ({"command": "rays", "surface": general(6), "options": {"colour": 1}}, "options.colour"),
    ({"command": "verify-example", "options": {"example": "dp2", "params": {"eps": "1/4"}}},
     "options.params.x"),
    ({"command": "classify", "surface": general(6)}, "A"),
])
def test_malformed_documents_name_the_field(doc, field):
    code, out = run(doc)
    assert code == BAD_INPUT
    assert out["error"]["field"] == field
    with pytest.raises(DocumentError):
        parse_job(doc)


def test_not_ample_is_bad_input():
    # -K + 2 E6 is negative on E6
    A = ["3", "-1", "-1", "-1", "-1", "-1", "1"]
    code, out = run({"command": "classify", "surface": general(6), "A": A})
    assert code == BAD_INPUT and out["error"]["field"] == "A"


def test_invalid_json_and_command_mismatch():
    code, out = run_text("fujita", "{not json")
    assert code == BAD_INPUT and out["error"]["field"] == "document"
    code, out = run({"command": "rays", "surface": general(3)}, command="fujita")
    assert code == BAD_INPUT and out["error"]["field"] == "command"
    code, out = run({"surface": general(3)}, command="rays")
    assert code == OK and out["count"] == 6


# --------------------------------------------------------------------------
# entry point


def test_main_files(tmp_path, capsys):
    src = tmp_path / "job.json"
    dst = tmp_path / "report.json"
    src.write_text(json.dumps({"surface": general(6), "A": anticanonical(6)}))
    assert main(["fujita", "--input", str(src), "--output", str(dst), "--pretty"]) == OK
    text = dst.read_text()
    assert text.endswith("}\n") and "\n  " in text
    assert json.loads(text)["mu"] == "1"
    assert capsys.readouterr().out == ""


def test_main_reports_errors_on_stderr(tmp_path, capsys):
    src = tmp_path / "job.json"
    src.write_text(json.dumps({"surface": general(6), "A": [3.0]}))
    assert main(["fujita", "--input", str(src)]) == BAD_INPUT
    captured = capsys.readouterr()
    assert "A[0]" in captured.err
    assert json.loads(captured.out)["error"]["field"] == "A[0]"
    assert main(["fujita", "--input", str(tmp_path / "missing.json")]) == BAD_INPUT
