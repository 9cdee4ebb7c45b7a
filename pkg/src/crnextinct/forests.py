"""Exterior forests of a domination-expanded network and their balance status.

An exterior forest picks exactly one outgoing edge (true reaction or
domination edge, never a self-loop) for every complex outside the absorbing
set, such that following the choices always reaches the absorbing set without
revisiting a complex.  Every interior reaction is included by convention.

A forest is balanced when a nonnegative vector over all edges exists that
(C1) is supported on the forest, (C2) has its reaction part in the kernel of
the stoichiometric matrix, and (C3) at every exterior complex weighs the
outgoing edge at least as much as the sum of the incoming forest edges, with
strictly positive weight on at least one nontriviality candidate.  By default
the candidates are the exterior true reactions of the forest; a switch widens
them to include domination edges for comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Union

from .domination import DomCRN
from .exactlp import (
    Farkas,
    Feasible,
    LinearSystem,
    check_farkas,
    check_feasible,
    lexmin,
    make_row,
    solve_feasibility,
)
from .graphs import EdgeId, GraphEdge
from .model import stoich_matrix

TRUE_REACTIONS = "true-reactions"
ANY_EDGE = "any-edge"


@dataclass(frozen=True)
class ExteriorForest:
    """One outgoing edge per exterior complex, plus all interior reactions."""

    choices: tuple[tuple[int, EdgeId], ...]  # (exterior complex, chosen edge), ascending
    interior: tuple[int, ...]  # reaction indices whose source lies in the absorbing set

    def choice_map(self) -> dict[int, EdgeId]:
        return dict(self.choices)

    def edge_labels(self) -> list[str]:
        labels = [eid.label() for _, eid in self.choices]
        labels.extend(EdgeId("R", k).label() for k in self.interior)
        return labels


@dataclass(frozen=True)
class ForestSet:
    forests: tuple[ExteriorForest, ...]
    truncated: bool


def _edge_target(dcrn: DomCRN, eid: EdgeId) -> int:
    if eid.kind == "R":
        return dcrn.net.target_index[eid.index]
    return dcrn.dom_edges[eid.index].dst


def _edge_source(dcrn: DomCRN, eid: EdgeId) -> int:
    if eid.kind == "R":
        return dcrn.net.source_index[eid.index]
    return dcrn.dom_edges[eid.index].src


def interior_reactions(dcrn: DomCRN) -> tuple[int, ...]:
    net = dcrn.net
    return tuple(k for k in range(net.r) if net.source_index[k] in dcrn.absorbing)


def enumerate_forests(dcrn: DomCRN, cap: int = 10000) -> ForestSet:
    """Backtracking enumeration of exterior forests in canonical order.

    Choices advance by exterior complex index; per complex, true reactions
    come before domination edges, each in index order.  Any selection whose
    functional graph would cycle among exterior complexes is pruned.  The
    result is truncated at `cap` with the truncation flag set.
    """
    if cap < 1:
        raise ValueError("cap must be >= 1")
    g = dcrn.graph()
    absorbing = dcrn.absorbing
    exterior = dcrn.exterior_complexes()
    options: dict[int, list[GraphEdge]] = {y: [] for y in exterior}
    for e in g.edges:
        if e.src in options and e.src != e.dst:
            options[e.src].append(e)
    interior = interior_reactions(dcrn)
    choice: dict[int, GraphEdge] = {}
    collected: list[ExteriorForest] = []

    def creates_cycle(start: int, assigning: int) -> bool:
        cur = start
        while True:
            if cur == assigning:
                return True
            if cur in absorbing or cur not in choice:
                return False
            cur = choice[cur].dst

    def descend(i: int) -> bool:
        """Returns False to abort once the cap is exceeded."""
        if i == len(exterior):
            if len(collected) >= cap:
                return False
            collected.append(
                ExteriorForest(
                    choices=tuple((y, choice[y].eid) for y in exterior),
                    interior=interior,
                )
            )
            return True
        y = exterior[i]
        for e in options[y]:
            if creates_cycle(e.dst, y):
                continue
            choice[y] = e
            keep_going = descend(i + 1)
            del choice[y]
            if not keep_going:
                return False
        return True

    exhausted = descend(0)
    return ForestSet(tuple(collected), truncated=not exhausted)


def forest_is_valid(dcrn: DomCRN, forest: ExteriorForest) -> bool:
    """Direct path-walk check of the unique-path property and conventions."""
    exterior = dcrn.exterior_complexes()
    cmap = forest.choice_map()
    if sorted(cmap) != exterior:
        return False
    if forest.interior != interior_reactions(dcrn):
        return False
    for y, eid in cmap.items():
        if eid.kind == "R":
            if not 0 <= eid.index < dcrn.net.r:
                return False
        elif eid.kind == "D":
            if not 0 <= eid.index < dcrn.d:
                return False
        else:
            return False
        if _edge_source(dcrn, eid) != y or _edge_target(dcrn, eid) == y:
            return False
    for y in exterior:
        seen = set()
        cur = y
        while cur not in dcrn.absorbing:
            if cur in seen:
                return False
            seen.add(cur)
            cur = _edge_target(dcrn, cmap[cur])
    return True


@dataclass(frozen=True)
class BalancingSystem:
    """The constraint system a balancing vector must satisfy.

    Variables are indexed 0..r-1 for reactions and r..r+d-1 for domination
    edges.  The assembled LinearSystem lays rows out deterministically:
    equalities are the support zeros (ascending variable) followed by the
    kernel rows (species order); inequalities are the flow rows (ascending
    exterior complex) followed, when requested, by the candidate row.
    """

    n_reactions: int
    n_dom: int
    zero_vars: tuple[int, ...]
    kernel_rows: tuple[tuple[int, ...], ...]  # width r, one per species
    flow_rows: tuple[tuple[int, int, tuple[int, ...]], ...]  # (complex, out var, in vars)
    candidates: tuple[int, ...]

    @property
    def n_vars(self) -> int:
        return self.n_reactions + self.n_dom

    def linear_system(self, candidate: Optional[int] = None) -> LinearSystem:
        n = self.n_vars
        eq = []
        for v in self.zero_vars:
            coeffs = [0] * n
            coeffs[v] = 1
            eq.append(make_row(coeffs, 0))
        for row in self.kernel_rows:
            eq.append(make_row(list(row) + [0] * self.n_dom, 0))
        ge = []
        for _, out_var, in_vars in self.flow_rows:
            coeffs = [0] * n
            coeffs[out_var] += 1
            for v in in_vars:
                coeffs[v] -= 1
            ge.append(make_row(coeffs, 0))
        if candidate is not None:
            coeffs = [0] * n
            coeffs[candidate] = 1
            ge.append(make_row(coeffs, 1))
        return LinearSystem(n, eq=tuple(eq), ge=tuple(ge))


def _edge_var(dcrn: DomCRN, eid: EdgeId) -> int:
    return eid.index if eid.kind == "R" else dcrn.net.r + eid.index


def build_balancing_system(
    dcrn: DomCRN,
    forest: ExteriorForest,
    nontriviality: str = TRUE_REACTIONS,
) -> BalancingSystem:
    if nontriviality not in (TRUE_REACTIONS, ANY_EDGE):
        raise ValueError(f"unknown nontriviality reading {nontriviality!r}")
    net = dcrn.net
    support = {_edge_var(dcrn, eid) for _, eid in forest.choices}
    support |= set(forest.interior)
    zero_vars = tuple(v for v in range(net.r + dcrn.d) if v not in support)
    kernel_rows = stoich_matrix(net)
    incoming: dict[int, list[int]] = {y: [] for y, _ in forest.choices}
    forest_edges = [eid for _, eid in forest.choices]
    forest_edges.extend(EdgeId("R", k) for k in forest.interior)
    for eid in forest_edges:
        tgt = _edge_target(dcrn, eid)
        if tgt in incoming:
            incoming[tgt].append(_edge_var(dcrn, eid))
    flow_rows = tuple(
        (y, _edge_var(dcrn, eid), tuple(sorted(incoming[y])))
        for y, eid in forest.choices
    )
    if nontriviality == TRUE_REACTIONS:
        candidates = tuple(
            sorted(eid.index for _, eid in forest.choices if eid.kind == "R")
        )
    else:
        candidates = tuple(sorted(_edge_var(dcrn, eid) for _, eid in forest.choices))
    return BalancingSystem(
        n_reactions=net.r,
        n_dom=dcrn.d,
        zero_vars=zero_vars,
        kernel_rows=kernel_rows,
        flow_rows=flow_rows,
        candidates=candidates,
    )


@dataclass(frozen=True)
class Balanced:
    alpha: tuple[int, ...]  # integer balancing vector over all r+d edges
    positive_edge: int  # candidate variable with weight >= 1


@dataclass(frozen=True)
class Unbalanced:
    witnesses: tuple[tuple[int, Farkas], ...]  # per-candidate refutations, ascending


BalanceOutcome = Union[Balanced, Unbalanced]


def _integerize(alpha: tuple[Fraction, ...]) -> tuple[int, ...]:
    lcm = 1
    for a in alpha:
        lcm = lcm * a.denominator // gcd(lcm, a.denominator)
    return tuple(int(a * lcm) for a in alpha)


def decide_balance(system: BalancingSystem) -> BalanceOutcome:
    """Balanced iff some candidate pivot is feasible; certificates either way.

    Candidates are tried in ascending order; the first feasible one yields the
    canonical (lexicographically least, integer-scaled) balancing vector.  If
    all fail, every Farkas refutation is retained.  An empty candidate set is
    unbalanced outright.
    """
    refutations: list[tuple[int, Farkas]] = []
    for cand in system.candidates:
        sys_k = system.linear_system(candidate=cand)
        probe = solve_feasibility(sys_k)
        if isinstance(probe, Farkas):
            refutations.append((cand, probe))
            continue
        best = lexmin(sys_k)
        assert isinstance(best, Feasible)
        alpha = _integerize(best.witness)
        assert check_feasible(sys_k, alpha)
        return Balanced(alpha=alpha, positive_edge=cand)
    return Unbalanced(tuple(refutations))


def verify_balance_outcome(
    dcrn: DomCRN,
    forest: ExteriorForest,
    outcome: BalanceOutcome,
    nontriviality: str = TRUE_REACTIONS,
) -> bool:
    """Audit a balance outcome by direct exact evaluation, independent of the solver."""
    if not forest_is_valid(dcrn, forest):
        return False
    system = build_balancing_system(dcrn, forest, nontriviality)
    if isinstance(outcome, Balanced):
        if outcome.positive_edge not in system.candidates:
            return False
        if any(a != int(a) for a in outcome.alpha):
            return False
        return check_feasible(
            system.linear_system(candidate=outcome.positive_edge), outcome.alpha
        )
    if isinstance(outcome, Unbalanced):
        if tuple(c for c, _ in outcome.witnesses) != system.candidates:
            return False
        return all(
            check_farkas(system.linear_system(candidate=cand), cert)
            for cand, cert in outcome.witnesses
        )
    return False
