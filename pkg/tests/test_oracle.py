from collections import deque

import pytest

from crnextinct.model import Complex, build_network
from crnextinct.oracle import (
    StateCapExceeded,
    complex_recurrent,
    explore,
    extinction_on,
    find_recurrent_witness,
    guaranteed_extinction_on,
    recurrent_complexes,
    recurrent_states,
    slc_recurrence_report,
    states_with_total,
    subconservation_monotone,
    trace_to,
)

from conftest import name_to_index, state_of


def test_explore_intro(nets):
    g = explore(nets["intro"], (2, 0))
    assert set(g.states) == {(2, 0), (1, 1), (0, 2)}


def test_explore_zero_state(nets):
    g = explore(nets["intro"], (0, 0))
    assert g.states == [(0, 0)] and g.edges == []


def test_explore_example21(nets):
    g = explore(nets["example21"], (1, 1))
    assert set(g.states) == {(1, 1), (2, 0), (0, 2)}


def test_explore_closed_under_firing(nets):
    from crnextinct.model import fire

    for name in ("intro", "example21", "example23"):
        net = nets[name]
        g = explore(net, (2, 1))
        stored = set(g.states)
        for state in g.states:
            for k in range(net.r):
                nxt = fire(net, state, k)
                if nxt is not None:
                    assert nxt in stored


def test_explore_invalid_root(nets):
    with pytest.raises(ValueError):
        explore(nets["intro"], (1,))
    with pytest.raises(ValueError):
        explore(nets["intro"], (-1, 0))


def test_cap_exceeded():
    growing = build_network(["A"], [((0,), (1,))])
    with pytest.raises(StateCapExceeded):
        explore(growing, (0,), hard_cap=10)


def test_recurrent_states_intro(nets):
    g = explore(nets["intro"], (1, 1))
    labels = dict(zip(g.states, recurrent_states(g)))
    assert labels[(0, 2)] and not labels[(1, 1)] and not labels[(2, 0)]


def test_single_absorbing_state_recurrent(nets):
    g = explore(nets["intro"], (0, 2))
    assert recurrent_states(g) == [True]


def test_recurrent_states_example23(nets):
    g = explore(nets["example23"], (1, 1))
    labels = dict(zip(g.states, recurrent_states(g)))
    assert labels[(1, 0)] and labels[(0, 1)]
    assert not labels[(1, 1)] and not labels[(0, 2)] and not labels[(2, 0)]


def _definitional_recurrence(g):
    # brute-force pairwise reachability: X recurrent iff X ~> Y implies Y ~> X
    n = len(g.states)
    reach = []
    for i in range(n):
        seen = {i}
        queue = deque([i])
        while queue:
            u = queue.popleft()
            for v in g.succ[u]:
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
        reach.append(seen)
    return [all(i in reach[j] for j in reach[i]) for i in range(n)]


def test_recurrence_matches_definition(nets):
    for name in ("intro", "example21", "example23", "example999", "example100"):
        net = nets[name]
        g = explore(net, tuple([2] * net.m))
        assert len(g.states) <= 200
        assert recurrent_states(g) == _definitional_recurrence(g)


def test_complex_recurrent_example23(nets):
    net = nets["example23"]
    g = explore(net, (1, 1))
    names = name_to_index(net)
    assert complex_recurrent(net, g, net.complexes[names["X1"]])
    assert complex_recurrent(net, g, net.complexes[names["X2"]])
    assert not complex_recurrent(net, g, net.complexes[names["X1 + X2"]])


def test_zero_complex_always_recurrent():
    net = build_network(["A"], [((1,), (0,))])
    g = explore(net, (3,))
    assert complex_recurrent(net, g, Complex((0,)))


def test_recurrent_complexes_agrees_with_definition(nets):
    for name in ("intro", "example21", "example23", "example100", "example101"):
        net = nets[name]
        g = explore(net, tuple([1] * net.m))
        fast = recurrent_complexes(net, g)
        slow = {
            i
            for i in range(net.n)
            if complex_recurrent(net, g, net.complexes[i])
        }
        assert fast == slow


def test_extinction_on_intro(nets):
    net = nets["intro"]
    names = name_to_index(net)
    for root in [(3, 1), (1, 1), (5, 0)]:
        g = explore(net, root)
        assert extinction_on(net, g, {names["2 X1"], names["X1 + X2"]})


def test_extinction_on_envz_small_root(nets):
    net = nets["envz"]
    names = name_to_index(net)
    g = explore(net, state_of(net, X1=1, X5=1))
    targets = set(range(net.n)) - {names["X4"]}
    assert extinction_on(net, g, targets)
    finals = [s for s, f in zip(g.states, recurrent_states(g)) if f]
    assert finals == [(0, 0, 0, 1, 0, 0, 1, 0, 0)]


def test_extinction_on_example101_false(nets):
    net = nets["example101"]
    names = name_to_index(net)
    g = explore(net, state_of(net, X1=1, X4=1, X5=1))
    nonterminal = {names["X1"], names["X2 + X4"]}
    assert not extinction_on(net, g, nonterminal)
    assert recurrent_complexes(net, g) == frozenset(range(net.n))


def test_guaranteed_extinction_example999(nets):
    net = nets["example999"]
    names = name_to_index(net)
    assert guaranteed_extinction_on(net, {names["X1 + X2"], names["2 X1"]}, budget=6)


def test_guaranteed_extinction_example100(nets):
    # extinction holds on the complexes needing the fourth species, from every
    # initial state, even though no forest certificate can affirm it
    net = nets["example100"]
    names = name_to_index(net)
    targets = {names["X3 + X4"], names["X1 + X4"]}
    assert guaranteed_extinction_on(net, targets, budget=6)
    # the base nonterminal complexes, by contrast, stay recurrent from a
    # state with no X4 but cycling X1/X2 material
    g = explore(net, state_of(net, X2=1, X3=1))
    assert not extinction_on(net, g, {names["X1"], names["X2 + X3"]})


def test_guaranteed_extinction_example101_false(nets):
    net = nets["example101"]
    names = name_to_index(net)
    nonterminal = {names["X1"], names["X2 + X4"]}
    assert not guaranteed_extinction_on(net, nonterminal, budget=6)
    witness = find_recurrent_witness(net, nonterminal, budget=6)
    assert witness is not None
    root, ci = witness
    g = explore(net, root)
    assert complex_recurrent(net, g, net.complexes[ci])


def test_states_with_total():
    assert sorted(states_with_total(2, 2)) == [(0, 2), (1, 1), (2, 0)]
    assert list(states_with_total(1, 3)) == [(3,)]
    assert list(states_with_total(0, 0)) == [()]


def test_slc_recurrence_report_example23(nets):
    net = nets["example23"]
    g = explore(net, (1, 1))
    report = slc_recurrence_report(net, g)
    labels = {tuple(sorted(block)): flag for block, flag in report.slc_labels}
    assert labels == {(0,): False, (1, 2): True}


def test_slc_recurrence_report_all_recurrent():
    net = build_network(["A", "B"], [((1, 0), (0, 1)), ((0, 1), (1, 0))])
    g = explore(net, (1, 0))
    report = slc_recurrence_report(net, g)
    assert all(flag for _, flag in report.slc_labels)


def test_slc_recurrence_report_envz(nets):
    net = nets["envz"]
    g = explore(net, state_of(net, X2=1, X5=2))
    report = slc_recurrence_report(net, g)
    names = name_to_index(net)
    recurrent_blocks = [
        sorted(block) for block, flag in report.slc_labels if flag
    ]
    assert [names["X4"]] in recurrent_blocks


def test_trace_replay(nets):
    from crnextinct.model import stoich_matrix

    net = nets["example23"]
    g = explore(net, (2, 1))
    gamma = stoich_matrix(net)
    for state in g.states:
        trace = trace_to(g, state)
        assert trace.replay(net) == state
        counts = trace.counts(net.r)
        walked = tuple(
            x0 + sum(gamma[i][k] * counts[k] for k in range(net.r))
            for i, x0 in enumerate(g.root)
        )
        assert walked == state


def test_subconservation_monotone(nets):
    from crnextinct.invariants import is_conservative, is_subconservative
    from crnextinct.model import stoich_matrix

    net = nets["example23"]
    witness = is_subconservative(stoich_matrix(net)).witness
    g = explore(net, (2, 2))
    assert subconservation_monotone(net, g, witness)
    net21 = nets["example21"]
    c = is_conservative(stoich_matrix(net21)).witness
    g21 = explore(net21, (2, 1))
    total = sum(ci * x for ci, x in zip(c, g21.root))
    for state in g21.states:
        assert sum(ci * x for ci, x in zip(c, state)) == total
