import json

import pytest

import lts

SL2 = {"rank": 1, "simple_roots": [[2]], "simple_coroots": [[1]]}


def test_catalog_names():
    assert "sl2" in lts.catalog_groups()
    assert "a1a1_swap" in lts.catalog_groups()
    assert "o2" in lts.catalog_models()


def test_sigma_values():
    assert lts.sigma("sl2") == "-1/8"
    assert lts.sigma(SL2) == "-1/8"
    assert lts.sigma("pgl2") == "-1/4"
    assert lts.sigma("gl1") == "0/1"
    assert lts.sigma("sl2xsl2") == "+1/64"


def test_ei_twisted():
    r = lts.verify_ei("o2_twist")
    assert r["equal"] and r["i"] == "+1/2"
    assert lts.verify_ei({"group": "sl2xsl2", "theta": [[0, 1], [1, 0]]})["equal"]


def test_elliptic_classes():
    classes = lts.elliptic_classes("sp4")
    assert [c["centralizer"] for c in classes] == ["B2", "A1xA1", "B2"]
    assert classes[1]["rep"] == ["0/1", "+1/2"]


def test_packets_and_stabilization():
    assert lts.packet_checks(1, 2) == (True, True)
    assert lts.transfer_factor(0, 0, 0, 0, 0) == "+1/1"
    f = lts.stabilization_fixture("o2")
    assert f == {"discrete_part": "+1/4+0/1i", "stable_form": "+1/4+0/1i", "endoscopic_form": "+1/4+0/1i"}
    assert lts.i_phi("o2", 1) == "+1/2"


def test_errors():
    with pytest.raises(lts.LtsError, match="NonCartan"):
        lts.sigma({"rank": 1, "simple_roots": [[3]], "simple_coroots": [[1]]})
    with pytest.raises(lts.LtsError, match="MalformedInput"):
        lts.sigma({"rank": 1, "simple_roots": [[2]], "simple_coroots": [[1]], "bogus": 1})


def test_cli_round_trip():
    code, out, _ = lts.run_cli(["stabilize", "verify", "--models", "o2", "--trials", "3", "--seed", "42"])
    assert code == 0
    report = json.loads(out)
    assert report["pass"] is True
    assert json.dumps(report, indent=2, ensure_ascii=False) + "\n" == out
    assert lts.run_cli(["nope"])[0] == 2
