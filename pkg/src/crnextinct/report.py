"""Analysis reports: exact JSON serialization and a human-readable summary.

Rationals travel as {"num": "...", "den": "..."} strings so no precision is
lost between tools.  A guaranteed-extinction report is self-contained: given
the report and the network text alone, the certificate chain can be rebuilt
and re-audited (see verify_report).
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .domination import DominationEdge
from .engine import (
    ExtinctionCertificate,
    GuaranteedExtinction,
    Inconclusive,
    NotApplicable,
    SearchConfig,
    SearchStats,
    Verdict,
    verify_verdict,
)
from .exactlp import Farkas
from .forests import ExteriorForest, Unbalanced
from .graphs import EdgeId
from .model import ReactionNetwork, format_complex

REPORT_FORMAT = "crn-extinction-report"
REPORT_VERSION = 1


def encode_rational(x: Fraction) -> dict[str, str]:
    return {"num": str(x.numerator), "den": str(x.denominator)}


def decode_rational(obj: Any) -> Fraction:
    if not isinstance(obj, dict) or set(obj) != {"num", "den"}:
        raise ValueError(f"not a rational encoding: {obj!r}")
    return Fraction(int(obj["num"]), int(obj["den"]))


def _rational_vector(values) -> list[dict[str, str]]:
    return [encode_rational(Fraction(v)) for v in values]


def _decode_vector(items) -> tuple[Fraction, ...]:
    return tuple(decode_rational(v) for v in items)


def _complex_names(net: ReactionNetwork, indices) -> list[str]:
    names = net.species_names
    return [format_complex(net.complexes[i], names) for i in sorted(indices)]


def _edge_obj(net: ReactionNetwork, e: DominationEdge, j: int) -> dict[str, Any]:
    names = net.species_names
    return {
        "label": EdgeId("D", j).label(),
        "from": format_complex(net.complexes[e.src], names),
        "to": format_complex(net.complexes[e.dst], names),
        "from_index": e.src,
        "to_index": e.dst,
    }


def _farkas_obj(cert: Farkas) -> dict[str, Any]:
    obj = {
        "eq": _rational_vector(cert.eq_mult),
        "ge": _rational_vector(cert.ge_mult),
    }
    if cert.nonneg_mult is not None:
        obj["nonneg"] = _rational_vector(cert.nonneg_mult)
    return obj


def _decode_farkas(obj: Any) -> Farkas:
    nonneg = _decode_vector(obj["nonneg"]) if "nonneg" in obj else None
    return Farkas(_decode_vector(obj["eq"]), _decode_vector(obj["ge"]), nonneg)


def _stats_obj(stats: SearchStats) -> dict[str, Any]:
    return {
        "candidates": stats.candidates,
        "forests": stats.forests,
        "balanced": stats.balanced,
        "truncated": stats.truncated,
        "vacuous_skipped": stats.vacuous_skipped,
    }


def _config_obj(cfg: SearchConfig, net: ReactionNetwork) -> dict[str, Any]:
    obj: dict[str, Any] = {
        "dom_strategy": cfg.dom_strategy,
        "absorbing_strategy": cfg.absorbing_strategy,
        "forest_cap": cfg.forest_cap,
        "nontriviality": cfg.nontriviality,
    }
    if cfg.dom_strategy == "all-subsets":
        obj["dom_cap"] = cfg.dom_cap
    if cfg.absorbing_strategy == "enumerate":
        obj["absorbing_cap"] = cfg.absorbing_cap
    if cfg.absorbing_strategy == "explicit":
        obj["explicit_absorbing"] = _complex_names(net, cfg.explicit_absorbing)
    return obj


def build_report(net: ReactionNetwork, verdict: Verdict, cfg: SearchConfig) -> dict[str, Any]:
    names = net.species_names
    report: dict[str, Any] = {
        "format": REPORT_FORMAT,
        "version": REPORT_VERSION,
        "species": names,
        "complexes": [format_complex(c, names) for c in net.complexes],
        "search": _config_obj(cfg, net),
    }
    if isinstance(verdict, NotApplicable):
        report["verdict"] = "not-applicable"
        report["reason"] = verdict.reason
        report["subconservativity_refutation"] = _farkas_obj(verdict.refutation.farkas)
        return report
    if isinstance(verdict, Inconclusive):
        report["verdict"] = "inconclusive"
        report["subconservativity_witness"] = _rational_vector(verdict.subconservation)
        report["statistics"] = _stats_obj(verdict.stats)
        return report
    cert = verdict.certificate
    report["verdict"] = "guaranteed-extinction"
    report["transient_complexes"] = _complex_names(net, verdict.transient)
    report["absorbing_set"] = _complex_names(net, cert.absorbing)
    report["absorbing_indices"] = sorted(cert.absorbing)
    report["dom_edges"] = [_edge_obj(net, e, j) for j, e in enumerate(cert.dom_edges)]
    report["forest"] = {
        "choices": [
            {
                "complex": format_complex(net.complexes[y], names),
                "complex_index": y,
                "edge": {"kind": eid.kind, "index": eid.index, "label": eid.label()},
            }
            for y, eid in cert.forest.choices
        ],
        "interior_reactions": list(cert.forest.interior),
    }
    report["nontriviality"] = cert.nontriviality
    report["balance_refutations"] = [
        {
            "candidate_reaction": cand if cand < net.r else None,
            "candidate_variable": cand,
            "label": (
                EdgeId("R", cand).label()
                if cand < net.r
                else EdgeId("D", cand - net.r).label()
            ),
            "farkas": _farkas_obj(farkas),
        }
        for cand, farkas in cert.outcome.witnesses
    ]
    report["subconservativity_witness"] = _rational_vector(cert.subconservation)
    report["statistics"] = _stats_obj(verdict.stats)
    return report


def report_certificate(net: ReactionNetwork, report: dict[str, Any]) -> GuaranteedExtinction:
    """Rebuild a guaranteed-extinction verdict from its JSON report.

    Cross-checks the report's complex names against the network before
    trusting any index.
    """
    if report.get("verdict") != "guaranteed-extinction":
        raise ValueError("report does not carry a guaranteed-extinction verdict")
    names = net.species_names
    expected = [format_complex(c, names) for c in net.complexes]
    if report.get("complexes") != expected or report.get("species") != names:
        raise ValueError("report does not match this network")
    dom_edges = tuple(
        DominationEdge(e["from_index"], e["to_index"]) for e in report["dom_edges"]
    )
    absorbing = frozenset(report["absorbing_indices"])
    choices = tuple(
        (c["complex_index"], EdgeId(c["edge"]["kind"], c["edge"]["index"]))
        for c in report["forest"]["choices"]
    )
    forest = ExteriorForest(
        choices=choices, interior=tuple(report["forest"]["interior_reactions"])
    )
    outcome = Unbalanced(
        tuple(
            (w["candidate_variable"], _decode_farkas(w["farkas"]))
            for w in report["balance_refutations"]
        )
    )
    certificate = ExtinctionCertificate(
        subconservation=_decode_vector(report["subconservativity_witness"]),
        dom_edges=dom_edges,
        absorbing=absorbing,
        forest=forest,
        outcome=outcome,
        nontriviality=report["nontriviality"],
    )
    transient = frozenset(range(net.n)) - absorbing
    stats = SearchStats(0, 0, 0, bool(report["statistics"]["truncated"]), 0, ())
    verdict = GuaranteedExtinction(transient, certificate, stats)
    if report.get("transient_complexes") != _complex_names(net, transient):
        raise ValueError("transient complex names disagree with the absorbing set")
    return verdict


def verify_report(net: ReactionNetwork, report: dict[str, Any]) -> bool:
    """Rebuild the certificate from the report and re-audit it against the network."""
    try:
        verdict = report_certificate(net, report)
    except (ValueError, KeyError, TypeError):
        return False
    return verify_verdict(net, verdict)


def render_text(net: ReactionNetwork, verdict: Verdict, cfg: SearchConfig) -> str:
    names = net.species_names

    def cname(i: int) -> str:
        return format_complex(net.complexes[i], names)

    lines: list[str] = []
    if isinstance(verdict, NotApplicable):
        lines.append("verdict: not applicable")
        lines.append(f"reason: {verdict.reason}")
        lines.append(
            "refutation: no strictly positive combination of species is "
            "nonincreasing under every reaction (exact certificate in the JSON report)"
        )
        return "\n".join(lines) + "\n"
    if isinstance(verdict, Inconclusive):
        s = verdict.stats
        lines.append("verdict: inconclusive")
        lines.append(
            f"search: {s.candidates} candidate(s), {s.forests} forest(s), "
            f"{s.balanced} balanced"
        )
        if s.truncated:
            lines.append("warning: forest enumeration truncated; verdict limited to the searched portion")
        return "\n".join(lines) + "\n"
    cert = verdict.certificate
    s = verdict.stats
    lines.append("verdict: guaranteed extinction event")
    lines.append("transient complexes: " + ", ".join(_complex_names(net, verdict.transient)))
    lines.append("absorbing set: " + ", ".join(_complex_names(net, cert.absorbing)))
    if cert.dom_edges:
        lines.append(
            "domination edges: "
            + ", ".join(
                f"D{j + 1}: {cname(e.src)} -> {cname(e.dst)}"
                for j, e in enumerate(cert.dom_edges)
            )
        )
    lines.append(
        "unbalanced forest edges: " + ", ".join(cert.forest.edge_labels())
    )
    pathway = [
        f"{cname(net.source_index[eid.index])} -> {cname(net.target_index[eid.index])}"
        for _, eid in cert.forest.choices
        if eid.kind == "R"
    ]
    if pathway:
        lines.append("extinction pathway (true reactions of the forest): " + "; ".join(pathway))
    witness = ", ".join(str(c) for c in cert.subconservation)
    lines.append(f"subconservativity witness: c = ({witness})")
    lines.append(
        f"search: {s.candidates} candidate(s), {s.forests} forest(s), {s.balanced} balanced"
    )
    return "\n".join(lines) + "\n"


def emit_report(
    net: ReactionNetwork, verdict: Verdict, cfg: SearchConfig, fmt: str = "json"
) -> bytes:
    if fmt == "json":
        return (
            json.dumps(build_report(net, verdict, cfg), indent=2, sort_keys=False) + "\n"
        ).encode("utf-8")
    if fmt == "text":
        return render_text(net, verdict, cfg).encode("utf-8")
    raise ValueError(f"unknown report format {fmt!r}")
