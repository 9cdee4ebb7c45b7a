"""Core data model: species, complexes, reactions, networks, and discrete states.

A network is a finite set of named species together with an indexed list of
reactions between complexes (nonnegative integer combinations of species).
The complex list is derived from the reactions in first-appearance order
(source before target), which fixes a deterministic complex indexing used
everywhere else in the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence


@dataclass(frozen=True)
class Species:
    index: int
    name: str


@dataclass(frozen=True)
class Complex:
    """A nonnegative integer combination of species, stored as a coefficient vector."""

    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(c < 0 for c in self.coeffs):
            raise ValueError(f"negative stoichiometric coefficient in {self.coeffs}")

    def __len__(self) -> int:
        return len(self.coeffs)

    def dominates(self, other: "Complex") -> bool:
        """True when every coefficient of `other` is <= ours and the two differ."""
        return (
            self.coeffs != other.coeffs
            and all(a <= b for a, b in zip(other.coeffs, self.coeffs))
        )

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)


@dataclass(frozen=True)
class Reaction:
    index: int
    source: Complex
    target: Complex

    @property
    def is_self_loop(self) -> bool:
        return self.source == self.target

    @property
    def vector(self) -> tuple[int, ...]:
        return tuple(t - s for s, t in zip(self.source.coeffs, self.target.coeffs))


State = tuple  # nonnegative integer counts, one per species


class ReactionNetwork:
    """A reaction network with derived, deterministically indexed complex list.

    Attributes:
        species: list of Species, index equals list position.
        reactions: list of Reaction, index equals list position.
        complexes: deduplicated complexes in first-appearance order
            (per reaction: source then target, reactions in input order).
    """

    def __init__(self, species: Sequence[Species], reactions: Sequence[Reaction]):
        self.species = list(species)
        self.reactions = list(reactions)
        self.complexes: list[Complex] = []
        self._complex_index: dict[tuple[int, ...], int] = {}
        for rxn in self.reactions:
            for cpx in (rxn.source, rxn.target):
                if cpx.coeffs not in self._complex_index:
                    self._complex_index[cpx.coeffs] = len(self.complexes)
                    self.complexes.append(cpx)
        # complex indices of each reaction endpoint, in reaction order
        self.source_index = [self._complex_index[r.source.coeffs] for r in self.reactions]
        self.target_index = [self._complex_index[r.target.coeffs] for r in self.reactions]

    @property
    def m(self) -> int:
        return len(self.species)

    @property
    def r(self) -> int:
        return len(self.reactions)

    @property
    def n(self) -> int:
        return len(self.complexes)

    @property
    def species_names(self) -> list[str]:
        return [s.name for s in self.species]

    def complex_index(self, cpx: Complex) -> int:
        try:
            return self._complex_index[cpx.coeffs]
        except KeyError:
            raise KeyError(f"complex {cpx.coeffs} does not occur in the network") from None

    def __repr__(self) -> str:
        return f"ReactionNetwork(m={self.m}, r={self.r}, n={self.n})"


def build_network(
    species_names: Sequence[str],
    reactions: Iterable[tuple[Sequence[int], Sequence[int]]],
) -> ReactionNetwork:
    """Build a network from species names and (source, target) coefficient pairs.

    Raises ValueError on duplicate species names, coefficient vectors whose
    length does not match the species count, or negative coefficients.
    Self-loops (source equal to target) are accepted.
    """
    names = list(species_names)
    seen: set[str] = set()
    for name in names:
        if name in seen:
            raise ValueError(f"duplicate species name {name!r}")
        seen.add(name)
    m = len(names)
    species = [Species(i, name) for i, name in enumerate(names)]
    built: list[Reaction] = []
    for k, (src, tgt) in enumerate(reactions):
        if len(src) != m or len(tgt) != m:
            raise ValueError(
                f"reaction {k}: coefficient vector length must equal species count {m}"
            )
        built.append(Reaction(k, Complex(tuple(src)), Complex(tuple(tgt))))
    return ReactionNetwork(species, built)


def stoich_matrix(net: ReactionNetwork) -> tuple[tuple[int, ...], ...]:
    """The m-by-r matrix whose column k is the reaction vector of reaction k."""
    cols = [rxn.vector for rxn in net.reactions]
    return tuple(tuple(col[i] for col in cols) for i in range(net.m))


def is_charged(y: Complex, state: State) -> bool:
    """True when the state has at least the counts the complex requires."""
    if len(y.coeffs) != len(state):
        raise ValueError("complex and state have different lengths")
    return all(x >= c for c, x in zip(y.coeffs, state))


def fire(net: ReactionNetwork, state: State, k: int) -> Optional[State]:
    """Apply reaction k to the state, or return None when the source is not charged."""
    if not 0 <= k < net.r:
        raise IndexError(f"reaction index {k} out of range for r={net.r}")
    rxn = net.reactions[k]
    if not is_charged(rxn.source, state):
        return None
    return tuple(x + d for x, d in zip(state, rxn.vector))


def format_complex(cpx: Complex, species_names: Sequence[str]) -> str:
    """Render a complex in the text format, e.g. 'X1 + 2 X2' or '0'."""
    terms = []
    for coeff, name in zip(cpx.coeffs, species_names):
        if coeff == 0:
            continue
        terms.append(name if coeff == 1 else f"{coeff} {name}")
    return " + ".join(terms) if terms else "0"
