"""Exhaustive discrete state-space exploration: the ground truth the engine is judged against.

States are tuples of molecular counts.  From a root state the oracle computes
the full closure under single reaction firings (finite for subconservative
networks; a hard cap guards everything else), labels states recurrent or
transient through terminal strongly connected components, and decides
recurrence of complexes and extinction events directly from the definitions.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .domination import domination_set
from .graphs import reaction_graph, strong_linkage_classes
from .model import Complex, ReactionNetwork, State, fire, is_charged


class StateCapExceeded(RuntimeError):
    """Exploration found more states than the safety cap allows."""

    def __init__(self, cap: int):
        super().__init__(
            f"state count exceeded cap {cap}; the reachable space may be infinite"
        )
        self.cap = cap


class RecurrenceLawViolation(AssertionError):
    """A structural recurrence law failed: internal arithmetic or graph bug."""


@dataclass
class StateGraph:
    """Reachability closure of one root state, with SCC condensation labels."""

    net: ReactionNetwork
    root: State
    states: list[State]
    index: dict[State, int]
    edges: list[tuple[int, int, int]]  # (state, reaction, state)
    succ: list[list[int]]
    parent: list[Optional[tuple[int, int]]]  # BFS tree: (parent state, reaction)
    scc_of: list[int] = field(default_factory=list)
    scc_terminal: list[bool] = field(default_factory=list)

    def recurrent_flags(self) -> list[bool]:
        return [self.scc_terminal[self.scc_of[i]] for i in range(len(self.states))]


@dataclass(frozen=True)
class Trace:
    """A firing sequence from a start state, with its per-reaction count vector."""

    start: State
    reactions: tuple[int, ...]

    def counts(self, r: int) -> tuple[int, ...]:
        n = [0] * r
        for k in self.reactions:
            n[k] += 1
        return tuple(n)

    def replay(self, net: ReactionNetwork) -> State:
        state = self.start
        for k in self.reactions:
            nxt = fire(net, state, k)
            if nxt is None:
                raise ValueError(f"trace fires uncharged reaction {k} at {state}")
            state = nxt
        return state


def explore(net: ReactionNetwork, root: Sequence[int], hard_cap: int = 200000) -> StateGraph:
    """Breadth-first closure of the root under single firings.

    Raises StateCapExceeded when more than `hard_cap` states appear, which for
    non-subconservative networks is the only stopping guarantee.
    """
    start: State = tuple(int(x) for x in root)
    if len(start) != net.m or any(x < 0 for x in start):
        raise ValueError(f"root must be a nonnegative vector of length {net.m}")
    states = [start]
    index = {start: 0}
    edges: list[tuple[int, int, int]] = []
    succ: list[list[int]] = [[]]
    parent: list[Optional[tuple[int, int]]] = [None]
    queue = deque([0])
    while queue:
        i = queue.popleft()
        state = states[i]
        for k in range(net.r):
            nxt = fire(net, state, k)
            if nxt is None:
                continue
            j = index.get(nxt)
            if j is None:
                if len(states) >= hard_cap:
                    raise StateCapExceeded(hard_cap)
                j = len(states)
                index[nxt] = j
                states.append(nxt)
                succ.append([])
                parent.append((i, k))
                queue.append(j)
            edges.append((i, k, j))
            succ[i].append(j)
    graph = StateGraph(net, start, states, index, edges, succ, parent)
    _condense(graph)
    return graph


def _condense(g: StateGraph) -> None:
    n = len(g.states)
    index_of = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comp_of = [-1] * n
    comp_count = 0
    counter = 0
    for root in range(n):
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
            while pi < len(g.succ[v]):
                w = g.succ[v][pi]
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
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp_of[w] = comp_count
                    if w == v:
                        break
                comp_count += 1
            if work:
                u, _ = work[-1]
                low[u] = min(low[u], low[v])
    terminal = [True] * comp_count
    for i, _, j in g.edges:
        if comp_of[i] != comp_of[j]:
            terminal[comp_of[i]] = False
    g.scc_of = comp_of
    g.scc_terminal = terminal


def recurrent_states(g: StateGraph) -> list[bool]:
    """Per-state labels: recurrent iff the state's SCC is terminal."""
    return g.recurrent_flags()


def trace_to(g: StateGraph, state: Sequence[int]) -> Trace:
    """The BFS-tree firing sequence from the root to a stored state."""
    i = g.index[tuple(state)]
    seq: list[int] = []
    while g.parent[i] is not None:
        i, k = g.parent[i]
        seq.append(k)
    return Trace(g.root, tuple(reversed(seq)))


def complex_recurrent(net: ReactionNetwork, g: StateGraph, y: Complex) -> bool:
    """Can every reachable state still reach a state charging the complex?

    Implements the definition directly: reverse reachability from the set of
    charging states must cover the whole graph.
    """
    n = len(g.states)
    charged = [is_charged(y, s) for s in g.states]
    pred: list[list[int]] = [[] for _ in range(n)]
    for i, _, j in g.edges:
        pred[j].append(i)
    can = list(charged)
    queue = deque(i for i in range(n) if can[i])
    while queue:
        j = queue.popleft()
        for i in pred[j]:
            if not can[i]:
                can[i] = True
                queue.append(i)
    return all(can)


def recurrent_complexes(net: ReactionNetwork, g: StateGraph) -> frozenset[int]:
    """Complex indices recurrent from the graph's root.

    Uses the terminal-SCC characterization (a complex is recurrent iff every
    terminal SCC charges it somewhere), which agrees with complex_recurrent on
    finite graphs; the test suite asserts that agreement.
    """
    alive: Optional[set[int]] = None
    members: dict[int, list[int]] = {}
    for i, c in enumerate(g.scc_of):
        if g.scc_terminal[c]:
            members.setdefault(c, []).append(i)
    for group in members.values():
        charged_here = {
            ci
            for ci, cpx in enumerate(g.net.complexes)
            if any(is_charged(cpx, g.states[i]) for i in group)
        }
        alive = charged_here if alive is None else alive & charged_here
    return frozenset(alive or set())


def extinction_on(net: ReactionNetwork, g: StateGraph, complexes: Iterable[int]) -> bool:
    """True when every listed complex is transient from the graph's root."""
    return all(
        not complex_recurrent(net, g, net.complexes[ci]) for ci in set(complexes)
    )


def states_with_total(m: int, total: int) -> Iterable[State]:
    """All length-m nonnegative integer vectors with the given coordinate sum."""
    if m == 0:
        if total == 0:
            yield ()
        return
    if m == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in states_with_total(m - 1, total - head):
            yield (head,) + rest


def guaranteed_extinction_on(
    net: ReactionNetwork,
    complexes: Iterable[int],
    budget: int = 6,
    hard_cap: int = 200000,
) -> bool:
    """Extinction from every root with coordinate sum up to `budget`.

    A budgeted under-approximation of quantifying over the whole state space;
    callers report the budget alongside the answer.
    """
    targets = set(complexes)
    for total in range(budget + 1):
        for root in states_with_total(net.m, total):
            g = explore(net, root, hard_cap)
            if not extinction_on(net, g, targets):
                return False
    return True


def find_recurrent_witness(
    net: ReactionNetwork,
    complexes: Iterable[int],
    budget: int = 6,
    hard_cap: int = 200000,
) -> Optional[tuple[State, int]]:
    """A (root, complex) pair where the complex is recurrent, if one exists in budget."""
    targets = sorted(set(complexes))
    for total in range(budget + 1):
        for root in states_with_total(net.m, total):
            g = explore(net, root, hard_cap)
            alive = recurrent_complexes(net, g)
            for ci in targets:
                if ci in alive:
                    return g.root, ci
    return None


@dataclass(frozen=True)
class SlcRecurrenceReport:
    slc_labels: tuple[tuple[frozenset[int], bool], ...]  # (SLC, recurrent?)
    recurrent_complexes: frozenset[int]


def slc_recurrence_report(net: ReactionNetwork, g: StateGraph) -> SlcRecurrenceReport:
    """Label each SLC recurrent/transient from the root and assert the structural laws.

    Checks, raising RecurrenceLawViolation on failure:
      (a) complexes within one SLC share a single recurrence label;
      (b) along every edge of the fully expanded graph (all true reactions and
          all domination relations), recurrence propagates forward, hence
          transience backward;
      (c) consequently the recurrent complex set is closed in that graph and
          is a union of SLCs.
    """
    alive = recurrent_complexes(net, g)
    slcs = strong_linkage_classes(reaction_graph(net))
    labels = []
    for block in slcs:
        flags = {ci in alive for ci in block}
        if len(flags) > 1:
            raise RecurrenceLawViolation(f"SLC {sorted(block)} mixes recurrent and transient complexes")
        labels.append((block, flags.pop()))
    edges = [(net.source_index[k], net.target_index[k]) for k in range(net.r)]
    edges += [(e.src, e.dst) for e in domination_set(net)]
    for src, dst in edges:
        if src in alive and dst not in alive:
            raise RecurrenceLawViolation(
                f"recurrence fails to propagate along edge {src}->{dst} "
                "of the fully expanded graph"
            )
    return SlcRecurrenceReport(tuple(labels), alive)


def subconservation_monotone(
    net: ReactionNetwork, g: StateGraph, witness: Sequence
) -> bool:
    """Does c . X never increase along any explored edge?  (Constant for conservative c.)"""

    def weight(state: State):
        return sum(c * x for c, x in zip(witness, state))

    return all(weight(g.states[j]) <= weight(g.states[i]) for i, _, j in g.edges)
