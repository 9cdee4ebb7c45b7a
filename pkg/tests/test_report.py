import copy
import json
from fractions import Fraction

import pytest

from crnextinct.engine import SearchConfig, analyze
from crnextinct.report import (
    build_report,
    decode_rational,
    emit_report,
    encode_rational,
    report_certificate,
    verify_report,
)


def test_rational_encoding_round_trip():
    for value in (Fraction(0), Fraction(3, 7), Fraction(-12, 5), Fraction(10**30)):
        assert decode_rational(encode_rational(value)) == value
    with pytest.raises(ValueError):
        decode_rational({"num": "1"})


def _extinction_report(net):
    cfg = SearchConfig()
    verdict = analyze(net, cfg)
    return verdict, build_report(net, verdict, cfg)


def test_report_verifies_from_scratch(nets):
    for name in ("intro", "example21", "example999", "envz"):
        net = nets[name]
        _, report = _extinction_report(net)
        # the JSON layer must survive a serialization round trip
        report = json.loads(json.dumps(report))
        assert report["verdict"] == "guaranteed-extinction"
        assert verify_report(net, report), name


def test_report_certificate_mismatched_network(nets):
    _, report = _extinction_report(nets["example21"])
    with pytest.raises(ValueError, match="does not match"):
        report_certificate(nets["intro"], report)


def test_report_rejects_tampering(nets):
    net = nets["example21"]
    _, report = _extinction_report(net)
    report = json.loads(json.dumps(report))

    zeroed = copy.deepcopy(report)
    for wit in zeroed["balance_refutations"]:
        for key in ("eq", "ge", "nonneg"):
            wit["farkas"][key] = [
                {"num": "0", "den": "1"} for _ in wit["farkas"][key]
            ]
    assert not verify_report(net, zeroed)

    wrong_y = copy.deepcopy(report)
    wrong_y["absorbing_indices"] = [0]
    assert not verify_report(net, wrong_y)

    dropped_edge = copy.deepcopy(report)
    dropped_edge["forest"]["choices"] = dropped_edge["forest"]["choices"][1:]
    assert not verify_report(net, dropped_edge)


def test_envz_report_contents(nets):
    net = nets["envz"]
    verdict, report = _extinction_report(net)
    assert len(report["transient_complexes"]) == 12
    assert report["absorbing_set"] == ["X4"]
    assert len(report["dom_edges"]) == 5
    assert len(report["forest"]["choices"]) == 12
    assert report["statistics"]["candidates"] == 1


def test_inconclusive_report(nets):
    net = nets["example100"]
    cfg = SearchConfig()
    verdict = analyze(net, cfg)
    report = build_report(net, verdict, cfg)
    assert report["verdict"] == "inconclusive"
    assert "subconservativity_witness" in report
    assert report["statistics"]["balanced"] == report["statistics"]["forests"]


def test_not_applicable_report(nets):
    net = nets["example22"]
    cfg = SearchConfig()
    verdict = analyze(net, cfg)
    report = build_report(net, verdict, cfg)
    assert report["verdict"] == "not-applicable"
    farkas = report["subconservativity_refutation"]
    assert set(farkas) >= {"eq", "ge"}
    # the refutation is carried exactly: all multipliers rational-encoded
    for item in farkas["ge"]:
        decode_rational(item)


def test_text_rendering(nets):
    net = nets["example21"]
    cfg = SearchConfig()
    verdict = analyze(net, cfg)
    text = emit_report(net, verdict, cfg, "text").decode()
    assert "guaranteed extinction" in text
    assert "X1 + X2" in text
    assert "extinction pathway" in text
    assert "2 X2 -> X1 + X2" in text and "X2 -> X1" in text
    with pytest.raises(ValueError):
        emit_report(net, verdict, cfg, "yaml")
