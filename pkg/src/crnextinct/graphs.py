"""Reaction-graph analysis: linkage classes, strong linkage classes, absorbing sets.

Vertices are complex indices.  Edges carry a label identifying either a true
reaction ("R", reaction index) or a domination edge ("D", domination index),
so the same machinery serves plain networks and domination-expanded ones.
Parallel edges and self-loops are permitted.

Partitions are returned as lists of frozensets ordered by their smallest
member, which keeps every derived object deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from heapq import heappop, heappush
from typing import Iterable, NamedTuple

from .model import ReactionNetwork


class EdgeId(NamedTuple):
    kind: str  # "R" for a reaction, "D" for a domination edge
    index: int

    def label(self) -> str:
        """1-based display label: reactions are bare numbers, dominations 'Dk'."""
        return str(self.index + 1) if self.kind == "R" else f"D{self.index + 1}"


class GraphEdge(NamedTuple):
    src: int
    dst: int
    eid: EdgeId


@dataclass(frozen=True)
class ReactionGraph:
    n: int
    edges: tuple[GraphEdge, ...]

    def __post_init__(self) -> None:
        for e in self.edges:
            if not (0 <= e.src < self.n and 0 <= e.dst < self.n):
                raise ValueError(f"edge {e} has endpoint outside 0..{self.n - 1}")

    def successors(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.n)]
        for e in self.edges:
            out[e.src].append(e.dst)
        return out


def reaction_graph(net: ReactionNetwork) -> ReactionGraph:
    edges = tuple(
        GraphEdge(net.source_index[k], net.target_index[k], EdgeId("R", k))
        for k in range(net.r)
    )
    return ReactionGraph(net.n, edges)


def _sorted_blocks(blocks: Iterable[Iterable[int]]) -> list[frozenset[int]]:
    return sorted((frozenset(b) for b in blocks), key=min)


def linkage_classes(g: ReactionGraph) -> list[frozenset[int]]:
    """Weakly connected components of the graph (singletons for isolated vertices)."""
    parent = list(range(g.n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for e in g.edges:
        ra, rb = find(e.src), find(e.dst)
        if ra != rb:
            parent[ra] = rb
    groups: dict[int, set[int]] = {}
    for v in range(g.n):
        groups.setdefault(find(v), set()).add(v)
    return _sorted_blocks(groups.values())


def strong_linkage_classes(g: ReactionGraph) -> list[frozenset[int]]:
    """Strongly connected components (iterative Tarjan), singletons allowed."""
    succ = g.successors()
    index_of = [-1] * g.n
    low = [0] * g.n
    on_stack = [False] * g.n
    stack: list[int] = []
    sccs: list[set[int]] = []
    counter = 0
    for root in range(g.n):
        if index_of[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                index_of[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            advanced = False
            while pi < len(succ[v]):
                w = succ[v][pi]
                pi += 1
                if index_of[w] == -1:
                    work[-1] = (v, pi)
                    work.append((w, 0))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index_of[w])
            if advanced:
                continue
            work.pop()
            if low[v] == index_of[v]:
                comp = set()
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.add(w)
                    if w == v:
                        break
                sccs.append(comp)
            if work:
                u, _ = work[-1]
                low[u] = min(low[u], low[v])
    return _sorted_blocks(sccs)


def terminal_slcs(g: ReactionGraph) -> list[frozenset[int]]:
    """Strong linkage classes with no edge leaving them."""
    sccs = strong_linkage_classes(g)
    block_of = {}
    for i, block in enumerate(sccs):
        for v in block:
            block_of[v] = i
    has_out = [False] * len(sccs)
    for e in g.edges:
        if block_of[e.src] != block_of[e.dst]:
            has_out[block_of[e.src]] = True
    return [block for i, block in enumerate(sccs) if not has_out[i]]


def terminal_complexes(g: ReactionGraph) -> frozenset[int]:
    out: set[int] = set()
    for block in terminal_slcs(g):
        out |= block
    return frozenset(out)


def is_absorbing_set(g: ReactionGraph, absorbing: Iterable[int]) -> bool:
    """True when the set contains every terminal complex and no edge leaves it."""
    aset = set(absorbing)
    if not aset <= set(range(g.n)):
        raise ValueError("absorbing set contains an invalid complex index")
    if not terminal_complexes(g) <= aset:
        return False
    return all(e.dst in aset for e in g.edges if e.src in aset)


def enumerate_absorbing_sets(g: ReactionGraph, cap: int) -> list[frozenset[int]]:
    """All absorbing complex sets in increasing-size order, truncated at `cap`.

    Works on the SLC condensation: an absorbing set is a union of SLCs that
    contains every sink SLC and is closed under condensation edges.  Closed
    sets grow one addable SLC at a time from the terminal set, so a best-first
    search over the lattice emits them in nondecreasing complex count and the
    cap bounds both the output and the work.  The terminal-complex set and the
    full vertex set always appear (cap permitting).
    """
    if cap < 1:
        raise ValueError("cap must be >= 1")
    sccs = strong_linkage_classes(g)
    block_of = {}
    for i, block in enumerate(sccs):
        for v in block:
            block_of[v] = i
    succ: list[set[int]] = [set() for _ in sccs]
    for e in g.edges:
        a, b = block_of[e.src], block_of[e.dst]
        if a != b:
            succ[a].add(b)
    sinks = frozenset(i for i in range(len(sccs)) if not succ[i])

    def members(chosen: frozenset[int]) -> frozenset[int]:
        return frozenset(v for i in chosen for v in sccs[i])

    def weight(chosen: frozenset[int]) -> int:
        return sum(len(sccs[i]) for i in chosen)

    found: list[frozenset[int]] = []
    heap: list[tuple[int, tuple[int, ...], frozenset[int]]] = [
        (weight(sinks), tuple(sorted(sinks)), sinks)
    ]
    seen = {sinks}
    while heap and len(found) < cap:
        w, _, chosen = heappop(heap)
        found.append(members(chosen))
        for i in range(len(sccs)):
            if i in chosen or not succ[i] <= chosen:
                continue
            bigger = chosen | {i}
            if bigger not in seen:
                seen.add(bigger)
                heappush(heap, (w + len(sccs[i]), tuple(sorted(bigger)), bigger))
    return found
