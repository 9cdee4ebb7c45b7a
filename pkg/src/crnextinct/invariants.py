"""Conservation tests, nonnegative kernel generators, and Petri-net invariants.

Conservation queries are answered with exact certificates: a strictly positive
vector c (encoded as c >= 1, which loses nothing by homogeneity) or a Farkas
refutation.  Kernel generators are the extreme rays of {v >= 0 : Gamma v = 0},
computed by the double description method and normalized to coprime integers
in lexicographic order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

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

Matrix = Sequence[Sequence[int]]


@dataclass(frozen=True)
class FeasibilityOutcome:
    """A feasibility verdict bundled with its system so it can re-verify itself."""

    feasible: bool
    witness: Optional[tuple[Fraction, ...]]
    farkas: Optional[Farkas]
    system: LinearSystem

    def verify(self) -> bool:
        if self.feasible:
            return self.witness is not None and check_feasible(self.system, self.witness)
        return self.farkas is not None and check_farkas(self.system, self.farkas)


def _decide(system: LinearSystem, canonical: bool = True) -> FeasibilityOutcome:
    outcome = lexmin(system) if canonical else solve_feasibility(system)
    if isinstance(outcome, Feasible):
        return FeasibilityOutcome(True, outcome.witness, None, system)
    return FeasibilityOutcome(False, None, outcome, system)


def _columns(gamma: Matrix) -> list[tuple[int, ...]]:
    rows = [tuple(row) for row in gamma]
    if not rows:
        return []
    width = len(rows[0])
    return [tuple(row[k] for row in rows) for k in range(width)]


def conservation_system(gamma: Matrix, *, equality: bool) -> LinearSystem:
    """The system for c >= 1 with c^T Gamma = 0 (equality) or <= 0 (subconservative)."""
    rows = [tuple(row) for row in gamma]
    m = len(rows)
    cols = _columns(gamma)
    unit = [make_row([1 if j == i else 0 for j in range(m)], 1) for i in range(m)]
    if equality:
        return LinearSystem(m, eq=tuple(make_row(col, 0) for col in cols), ge=tuple(unit))
    neg = [make_row([-c for c in col], 0) for col in cols]
    return LinearSystem(m, ge=tuple(neg) + tuple(unit))


def is_conservative(gamma: Matrix) -> FeasibilityOutcome:
    """Does some c >= 1 satisfy c^T Gamma = 0 exactly?"""
    return _decide(conservation_system(gamma, equality=True))


def is_subconservative(gamma: Matrix) -> FeasibilityOutcome:
    """Does some c >= 1 satisfy c^T Gamma <= 0 componentwise?"""
    return _decide(conservation_system(gamma, equality=False))


@dataclass(frozen=True)
class ConeGenerators:
    """Extreme rays of a cone {v >= 0 : M v = 0}, coprime integers, lex-sorted."""

    rays: tuple[tuple[int, ...], ...]


def _primitive(vec: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for v in vec:
        g = gcd(g, abs(v))
    if g > 1:
        return tuple(v // g for v in vec)
    return tuple(vec)


def nonneg_kernel_generators(gamma: Matrix) -> ConeGenerators:
    """Extreme rays of {v >= 0 : Gamma v = 0} via double description.

    Starts from the nonnegative orthant and intersects with one kernel
    hyperplane at a time; the combinatorial adjacency test over coordinate
    zero-sets keeps only extreme rays.
    """
    rows = [tuple(row) for row in gamma]
    r = len(rows[0]) if rows else 0
    if r == 0:
        return ConeGenerators(())
    rays: list[tuple[int, ...]] = [
        tuple(1 if j == i else 0 for j in range(r)) for i in range(r)
    ]
    for a in rows:
        products = [sum(ai * vi for ai, vi in zip(a, ray)) for ray in rays]
        zero = [ray for ray, p in zip(rays, products) if p == 0]
        pos = [(ray, p) for ray, p in zip(rays, products) if p > 0]
        neg = [(ray, p) for ray, p in zip(rays, products) if p < 0]
        zero_sets = {ray: frozenset(j for j, v in enumerate(ray) if v == 0) for ray in rays}

        def adjacent(u: tuple[int, ...], w: tuple[int, ...]) -> bool:
            common = zero_sets[u] & zero_sets[w]
            return not any(
                t is not u and t is not w and common <= zero_sets[t] for t in rays
            )

        combined = []
        for u, pu in pos:
            for w, pw in neg:
                if adjacent(u, w):
                    combined.append(
                        _primitive(tuple(pu * wi - pw * ui for ui, wi in zip(u, w)))
                    )
        rays = zero + combined
    return ConeGenerators(tuple(sorted(set(rays))))


def transpose(gamma: Matrix) -> tuple[tuple[int, ...], ...]:
    return tuple(_columns(gamma))


def p_invariants(gamma: Matrix) -> ConeGenerators:
    """Nonnegative generators of the left kernel (Petri-net P-invariants)."""
    return nonneg_kernel_generators(transpose(gamma))


def t_invariants(gamma: Matrix) -> ConeGenerators:
    """Nonnegative generators of the right kernel (Petri-net T-invariants)."""
    return nonneg_kernel_generators(gamma)


def in_cone(vector: Sequence, gens: ConeGenerators) -> bool:
    """Is the vector a nonnegative combination of the generators?  Exact LP check."""
    target = [Fraction(v) for v in vector]
    k = len(gens.rays)
    if k == 0:
        return all(v == 0 for v in target)
    dim = len(target)
    eq = tuple(
        make_row([gens.rays[j][i] for j in range(k)], target[i]) for i in range(dim)
    )
    system = LinearSystem(k, eq=eq)
    return isinstance(solve_feasibility(system), Feasible)
