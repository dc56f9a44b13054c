import json
import os
import pathlib

import pytest

import criticut

DATA = pathlib.Path(os.environ.get("CRITICUT_DATA_DIR", pathlib.Path(__file__).parents[2] / "data"))


def load(name):
    return json.loads((DATA / name).read_text())


def test_golden_example():
    report = criticut.analyze(load("listing1.json"))
    assert [n["id"] for n in report["cut"]["nodes"]] == ["a", "c"]
    assert report["cut"]["cost"] == 4.0
    assert report["formula"] == "c1 & ( d & ( ( ( a & s ) & ( b & s ) ) | ( ( b & s ) & ( c & s ) ) ) )"
    assert report["cnf"] == {"variables": 15, "clauses": 28}


def test_accepts_json_text_and_target():
    text = (DATA / "listing1.json").read_text()
    report = criticut.analyze(text, target="d")
    assert report["target"] == "d"


def test_hardening_trace():
    trace = criticut.harden(load("listing1.json"))
    assert [r["cost"] for r in trace["rounds"]] == [4.0, 5.0, 10.0, "inf"]
    assert trace["stopReason"] == "fully hardened"
    assert len(criticut.harden(load("listing1.json"), threshold=4.5)["rounds"]) == 2


def test_errors():
    doc = load("listing1.json")
    for node in doc["graph"]["nodes"]:
        if node["id"] in ("a", "b", "d"):
            node["value"] = "inf"
    with pytest.raises(criticut.UnsatError):
        criticut.analyze(doc)
    with pytest.raises(criticut.Error):
        criticut.analyze("{")
    bad = load("listing1.json")
    bad["graph"]["edges"].append({"source": "c1", "target": "d"})
    with pytest.raises(criticut.ValidationError):
        criticut.analyze(bad)


def test_generate_and_dimacs():
    doc = criticut.generate(200, "80,10,10", seed=3)
    assert doc == criticut.generate(200, "80-10-10", seed=3)
    assert criticut.analyze(doc)["cut"]["nodes"]
    assert "p cnf 15 28" in criticut.dimacs(load("listing1.json"))


def test_score():
    assert criticut.score("C,F,AS") == 5
    assert criticut.score("") == 0
