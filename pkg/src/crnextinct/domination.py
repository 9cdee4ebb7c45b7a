"""Domination relations, domination-expanded networks, and admissibility.

A complex dominates another when it is componentwise at least as large and the
two differ.  Adding some of these relations as extra directed edges yields a
domination-expanded network.  Such an expansion is admissible for an absorbing
complex set Y of the expanded graph when no added edge duplicates a true
reaction and no added edge points into Y.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .graphs import (
    EdgeId,
    GraphEdge,
    ReactionGraph,
    is_absorbing_set,
    reaction_graph,
    strong_linkage_classes,
    terminal_complexes,
    terminal_slcs,
)
from .model import ReactionNetwork


@dataclass(frozen=True)
class DominationEdge:
    """Directed edge from a dominating complex to the complex it dominates."""

    src: int
    dst: int


class AdmissibilityError(ValueError):
    """A proposed domination expansion violates one of the admissibility conditions."""

    def __init__(self, condition: str, message: str, edge: Optional[DominationEdge] = None):
        super().__init__(message)
        self.condition = condition
        self.edge = edge


@dataclass(frozen=True)
class DomCRN:
    """A validated domination-expanded network with its absorbing complex set.

    Construct through build_dom_crn (or maximal_admissible); direct
    construction skips validation, which the tests use to reproduce
    deliberately inadmissible expansions.
    """

    net: ReactionNetwork
    dom_edges: tuple[DominationEdge, ...]
    absorbing: frozenset[int]

    def graph(self) -> ReactionGraph:
        return dom_graph(self.net, self.dom_edges)

    def exterior_complexes(self) -> list[int]:
        return [i for i in range(self.net.n) if i not in self.absorbing]

    @property
    def d(self) -> int:
        return len(self.dom_edges)


def domination_set(net: ReactionNetwork) -> list[DominationEdge]:
    """All ordered pairs (dominating, dominated) of distinct comparable complexes.

    Ordered lexicographically by (source index, target index).
    """
    edges = []
    for i, big in enumerate(net.complexes):
        for j, small in enumerate(net.complexes):
            if i != j and big.dominates(small):
                edges.append(DominationEdge(i, j))
    return edges


def dom_graph(net: ReactionNetwork, dom_edges: Sequence[DominationEdge]) -> ReactionGraph:
    """Reaction graph of the expanded network: true reactions plus domination edges."""
    base = reaction_graph(net).edges
    extra = tuple(
        GraphEdge(e.src, e.dst, EdgeId("D", j)) for j, e in enumerate(dom_edges)
    )
    return ReactionGraph(net.n, base + extra)


def _reaction_pairs(net: ReactionNetwork) -> set[tuple[int, int]]:
    return {(net.source_index[k], net.target_index[k]) for k in range(net.r)}


def build_dom_crn(
    net: ReactionNetwork,
    dom_edges: Iterable[DominationEdge],
    absorbing: Iterable[int],
) -> DomCRN:
    """Validate and assemble a domination-expanded network.

    A domination edge that duplicates a true reaction is dropped with a
    warning.  Raises AdmissibilityError when an edge is not a domination
    relation, an edge targets the absorbing set, or the set is not absorbing
    on the expanded graph.
    """
    aset = frozenset(absorbing)
    if not aset <= set(range(net.n)):
        raise AdmissibilityError("absorbing", "absorbing set contains an invalid complex index")
    full = set((e.src, e.dst) for e in domination_set(net))
    pairs = _reaction_pairs(net)
    kept: list[DominationEdge] = []
    for e in dom_edges:
        if (e.src, e.dst) not in full:
            raise AdmissibilityError(
                "domination",
                f"edge {e.src}->{e.dst} is not a domination relation of the network",
                e,
            )
        if (e.src, e.dst) in pairs:
            warnings.warn(
                f"domination edge {e.src}->{e.dst} duplicates a true reaction; dropped",
                stacklevel=2,
            )
            continue
        kept.append(e)
    for e in kept:
        if e.dst in aset:
            raise AdmissibilityError(
                "targets-absorbing",
                f"domination edge {e.src}->{e.dst} targets the absorbing set",
                e,
            )
    dedup = tuple(dict.fromkeys(kept))
    g = dom_graph(net, dedup)
    if not is_absorbing_set(g, aset):
        raise AdmissibilityError(
            "absorbing",
            "set is not absorbing on the expanded graph "
            "(must contain every terminal complex and have no outgoing edges)",
        )
    return DomCRN(net, dedup, aset)


def maximal_admissible(net: ReactionNetwork) -> DomCRN:
    """The default expansion: start from all domination relations and shrink.

    Fixpoint: delete every domination edge touching the terminal complexes of
    the current expanded graph, recompute terminality, repeat until stable.
    The edge set shrinks monotonically, so this terminates; the returned
    absorbing set is the final graph's terminal-complex set.
    """
    pairs = _reaction_pairs(net)
    edges = [e for e in domination_set(net) if (e.src, e.dst) not in pairs]
    while True:
        terminals = terminal_complexes(dom_graph(net, edges))
        kept = [e for e in edges if e.dst not in terminals and e.src not in terminals]
        if kept == edges:
            return build_dom_crn(net, edges, terminals)
        edges = kept


@dataclass(frozen=True)
class SlcCoincidenceReport:
    """Structural coincidence check between a network and its expansion.

    For subconservative networks the strong linkage classes must coincide and
    every terminal SLC of the expansion must be terminal in the base network.
    A False in either field on a subconservative input indicates an internal
    bug, not a property of the model.
    """

    applicable: bool
    slcs_coincide: Optional[bool]
    terminal_subset: Optional[bool]
    offending: tuple[frozenset[int], ...] = ()

    @property
    def violated(self) -> bool:
        return self.applicable and not (self.slcs_coincide and self.terminal_subset)


def check_slc_coincidence(
    net: ReactionNetwork,
    dom_edges: Sequence[DominationEdge],
    *,
    subconservative: Optional[bool] = None,
) -> SlcCoincidenceReport:
    """Check SLC coincidence between base and expanded graphs.

    `subconservative` may be passed by callers that already decided it;
    otherwise it is computed here.  Not-applicable (and no verdict) when the
    network is not subconservative.
    """
    if subconservative is None:
        from .invariants import is_subconservative
        from .model import stoich_matrix

        subconservative = is_subconservative(stoich_matrix(net)).feasible
    if not subconservative:
        return SlcCoincidenceReport(False, None, None)
    base = reaction_graph(net)
    expanded = dom_graph(net, dom_edges)
    base_slcs = strong_linkage_classes(base)
    dom_slcs = strong_linkage_classes(expanded)
    coincide = base_slcs == dom_slcs
    base_terminal = set(terminal_slcs(base))
    dom_terminal = terminal_slcs(expanded)
    subset = all(t in base_terminal for t in dom_terminal)
    offending = tuple(
        b for b in dom_slcs if b not in base_slcs
    ) + tuple(t for t in dom_terminal if t not in base_terminal)
    return SlcCoincidenceReport(True, coincide, subset, offending)
