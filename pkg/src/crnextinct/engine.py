"""Search orchestration: apply the unbalanced-forest criterion and emit verdicts.

For a subconservative network the engine walks candidate domination
expansions and absorbing sets, enumerates exterior forests in canonical order,
and stops at the first unbalanced one: that forest certifies a guaranteed
extinction event on the complement of the absorbing set.  Every verdict
carries the full certificate chain (subconservativity witness, expansion,
forest, per-candidate refutations) and can be re-audited independently.

Candidates whose absorbing set is the whole complex set are skipped: the
extinction claim on an empty complement is vacuous.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterator, Optional, Union

from .domination import (
    AdmissibilityError,
    DomCRN,
    DominationEdge,
    build_dom_crn,
    check_slc_coincidence,
    dom_graph,
    domination_set,
)
from .forests import (
    TRUE_REACTIONS,
    Balanced,
    ExteriorForest,
    Unbalanced,
    build_balancing_system,
    decide_balance,
    enumerate_forests,
    forest_is_valid,
    verify_balance_outcome,
)
from .graphs import enumerate_absorbing_sets, is_absorbing_set, terminal_complexes
from .invariants import FeasibilityOutcome, is_subconservative
from .model import ReactionNetwork, stoich_matrix


class InternalCheckError(AssertionError):
    """A structural identity that must hold for subconservative networks failed; a bug."""


@dataclass(frozen=True)
class SearchConfig:
    """Knobs for the candidate search.

    dom_strategy: "maximal" tries only the shrink-to-fixpoint expansion;
        "all-subsets" walks subsets of the domination set, largest first,
        visiting at most dom_cap of them.
    absorbing_strategy: "terminal" uses each expansion's terminal complexes;
        "enumerate" additionally tries absorbing sets of the expanded graph
        (up to absorbing_cap); "explicit" uses exactly explicit_absorbing.
    nontriviality: which edges may carry the required positive weight in a
        balancing vector ("true-reactions" or "any-edge").
    """

    dom_strategy: str = "maximal"
    dom_cap: int = 64
    absorbing_strategy: str = "terminal"
    absorbing_cap: int = 64
    explicit_absorbing: Optional[frozenset[int]] = None
    forest_cap: int = 10000
    nontriviality: str = TRUE_REACTIONS

    def __post_init__(self) -> None:
        if self.dom_strategy not in ("maximal", "all-subsets"):
            raise ValueError(f"unknown dom_strategy {self.dom_strategy!r}")
        if self.absorbing_strategy not in ("terminal", "enumerate", "explicit"):
            raise ValueError(f"unknown absorbing_strategy {self.absorbing_strategy!r}")
        if self.absorbing_strategy == "explicit" and self.explicit_absorbing is None:
            raise ValueError("explicit absorbing strategy needs explicit_absorbing")
        if min(self.dom_cap, self.absorbing_cap, self.forest_cap) < 1:
            raise ValueError("caps must be >= 1")


@dataclass(frozen=True)
class CandidateRecord:
    """What the search saw for one (expansion, absorbing set) candidate."""

    dom_edges: tuple[DominationEdge, ...]
    absorbing: frozenset[int]
    forest_outcomes: tuple[bool, ...]  # True = balanced, per forest in order
    forests_truncated: bool


@dataclass(frozen=True)
class SearchStats:
    candidates: int
    forests: int
    balanced: int
    truncated: bool
    vacuous_skipped: int
    examined: tuple[CandidateRecord, ...]


@dataclass(frozen=True)
class ExtinctionCertificate:
    """Everything needed to re-verify a guaranteed-extinction verdict."""

    subconservation: tuple[Fraction, ...]
    dom_edges: tuple[DominationEdge, ...]
    absorbing: frozenset[int]
    forest: ExteriorForest
    outcome: Unbalanced
    nontriviality: str


@dataclass(frozen=True)
class GuaranteedExtinction:
    transient: frozenset[int]  # complex indices, the complement of the absorbing set
    certificate: ExtinctionCertificate
    stats: SearchStats


@dataclass(frozen=True)
class Inconclusive:
    stats: SearchStats
    subconservation: tuple[Fraction, ...]


@dataclass(frozen=True)
class NotApplicable:
    reason: str
    refutation: FeasibilityOutcome  # infeasible subconservativity query with Farkas data


Verdict = Union[GuaranteedExtinction, Inconclusive, NotApplicable]


def _candidate_pairs(net: ReactionNetwork, cfg: SearchConfig) -> Iterator[DomCRN]:
    """Validated (expansion, absorbing set) candidates in deterministic order."""
    reaction_pairs = {
        (net.source_index[k], net.target_index[k]) for k in range(net.r)
    }
    full = tuple(
        e for e in domination_set(net) if (e.src, e.dst) not in reaction_pairs
    )

    def seeds() -> Iterator[tuple[DominationEdge, ...]]:
        if cfg.dom_strategy == "maximal":
            yield full
            return
        count = 0
        for size in range(len(full), -1, -1):
            for combo in combinations(full, size):
                yield combo
                count += 1
                if count >= cfg.dom_cap:
                    return

    def stabilize(seed: tuple[DominationEdge, ...]) -> tuple[tuple[DominationEdge, ...], frozenset[int]]:
        edges = list(seed)
        while True:
            terminals = terminal_complexes(dom_graph(net, edges))
            kept = [e for e in edges if e.dst not in terminals and e.src not in terminals]
            if kept == edges:
                return tuple(edges), terminals
            edges = kept

    def restrict(seed, absorbing: frozenset[int]) -> tuple[DominationEdge, ...]:
        return tuple(e for e in seed if e.src not in absorbing and e.dst not in absorbing)

    seen: set[tuple[tuple[DominationEdge, ...], frozenset[int]]] = set()
    for seed in seeds():
        pairs: list[tuple[tuple[DominationEdge, ...], frozenset[int]]] = []
        if cfg.absorbing_strategy == "explicit":
            aset = cfg.explicit_absorbing
            pairs.append((restrict(seed, aset), aset))
        else:
            edges, terminals = stabilize(seed)
            pairs.append((edges, terminals))
            if cfg.absorbing_strategy == "enumerate":
                for aset in enumerate_absorbing_sets(dom_graph(net, edges), cfg.absorbing_cap):
                    pairs.append((restrict(edges, aset), aset))
        for edges, aset in pairs:
            key = (edges, aset)
            if key in seen:
                continue
            seen.add(key)
            if not is_absorbing_set(dom_graph(net, edges), aset):
                continue
            try:
                yield build_dom_crn(net, edges, aset)
            except AdmissibilityError:
                continue


def analyze(net: ReactionNetwork, cfg: SearchConfig = SearchConfig()) -> Verdict:
    """Decide whether the network has a certifiable guaranteed extinction event.

    Deterministic for a fixed config: the first unbalanced forest in canonical
    candidate-then-forest order is the one reported.
    """
    sub = is_subconservative(stoich_matrix(net))
    if not sub.feasible:
        return NotApplicable("network is not subconservative", sub)
    candidates = 0
    forests_seen = 0
    balanced_seen = 0
    truncated = False
    vacuous = 0
    examined: list[CandidateRecord] = []

    def stats() -> SearchStats:
        return SearchStats(
            candidates, forests_seen, balanced_seen, truncated, vacuous, tuple(examined)
        )

    for dcrn in _candidate_pairs(net, cfg):
        if len(dcrn.absorbing) == net.n:
            vacuous += 1
            continue
        candidates += 1
        coincidence = check_slc_coincidence(net, dcrn.dom_edges, subconservative=True)
        if coincidence.violated:
            raise InternalCheckError(
                f"SLC coincidence failed for expansion {dcrn.dom_edges}: {coincidence}"
            )
        forest_set = enumerate_forests(dcrn, cfg.forest_cap)
        truncated = truncated or forest_set.truncated
        outcomes: list[bool] = []
        for forest in forest_set.forests:
            forests_seen += 1
            system = build_balancing_system(dcrn, forest, cfg.nontriviality)
            outcome = decide_balance(system)
            if isinstance(outcome, Balanced):
                balanced_seen += 1
                outcomes.append(True)
                continue
            outcomes.append(False)
            examined.append(
                CandidateRecord(
                    dcrn.dom_edges, dcrn.absorbing, tuple(outcomes), forest_set.truncated
                )
            )
            certificate = ExtinctionCertificate(
                subconservation=sub.witness,
                dom_edges=dcrn.dom_edges,
                absorbing=dcrn.absorbing,
                forest=forest,
                outcome=outcome,
                nontriviality=cfg.nontriviality,
            )
            transient = frozenset(range(net.n)) - dcrn.absorbing
            return GuaranteedExtinction(transient, certificate, stats())
        examined.append(
            CandidateRecord(
                dcrn.dom_edges, dcrn.absorbing, tuple(outcomes), forest_set.truncated
            )
        )
    return Inconclusive(stats(), sub.witness)


def audit_extinction(net: ReactionNetwork, verdict: GuaranteedExtinction) -> list[tuple[str, bool]]:
    """Re-verify every link of a guaranteed-extinction certificate, in order.

    Returns (check name, passed) pairs; verification short-circuits nothing,
    so the first False names the broken link.
    """
    cert = verdict.certificate
    checks: list[tuple[str, bool]] = []
    gamma = stoich_matrix(net)

    c = cert.subconservation
    ok_c = (
        len(c) == net.m
        and all(ci >= 1 for ci in c)
        and all(
            sum(ci * gamma[i][k] for i, ci in enumerate(c)) <= 0 for k in range(net.r)
        )
    )
    checks.append(("subconservativity-witness", ok_c))

    full = {(e.src, e.dst) for e in domination_set(net)}
    reaction_pairs = {(net.source_index[k], net.target_index[k]) for k in range(net.r)}
    ok_edges = all(
        (e.src, e.dst) in full and (e.src, e.dst) not in reaction_pairs
        for e in cert.dom_edges
    )
    checks.append(("domination-edges", ok_edges))

    aset = cert.absorbing
    ok_y = (
        aset <= frozenset(range(net.n))
        and len(aset) < net.n
        and all(e.dst not in aset and e.src not in aset for e in cert.dom_edges)
    )
    if ok_y:
        ok_y = is_absorbing_set(dom_graph(net, cert.dom_edges), aset)
    checks.append(("absorbing-set", ok_y))

    ok_t = verdict.transient == frozenset(range(net.n)) - aset
    checks.append(("transient-set", ok_t))

    dcrn = DomCRN(net, cert.dom_edges, aset)
    ok_f = ok_y and forest_is_valid(dcrn, cert.forest)
    checks.append(("forest", ok_f))

    ok_u = isinstance(cert.outcome, Unbalanced)
    if ok_u and ok_f:
        ok_u = verify_balance_outcome(dcrn, cert.forest, cert.outcome, cert.nontriviality)
    checks.append(("unbalanced-certificates", bool(ok_u)))
    return checks


def verify_verdict(net: ReactionNetwork, verdict: Verdict) -> bool:
    """True iff every certificate embedded in a guaranteed-extinction verdict re-verifies."""
    if not isinstance(verdict, GuaranteedExtinction):
        raise ValueError("verify_verdict audits GuaranteedExtinction verdicts")
    try:
        return all(ok for _, ok in audit_extinction(net, verdict))
    except (IndexError, KeyError, ValueError, TypeError):
        return False
