import pytest

from crnextinct.engine import (
    GuaranteedExtinction,
    Inconclusive,
    NotApplicable,
    SearchConfig,
    analyze,
    audit_extinction,
    verify_verdict,
)
from crnextinct.forests import Unbalanced

from conftest import complex_names, name_to_index


def test_example21_extinction(nets):
    net = nets["example21"]
    verdict = analyze(net)
    assert isinstance(verdict, GuaranteedExtinction)
    assert complex_names(net, verdict.transient) == ["2 X2", "X1 + X2", "X2"]
    assert verify_verdict(net, verdict)
    assert isinstance(verdict.certificate.outcome, Unbalanced)


def test_intro_extinction(nets):
    net = nets["intro"]
    verdict = analyze(net)
    assert isinstance(verdict, GuaranteedExtinction)
    assert complex_names(net, verdict.transient) == ["2 X1", "X1 + X2"]
    assert verify_verdict(net, verdict)


def test_envz_extinction(nets):
    net = nets["envz"]
    verdict = analyze(net)
    assert isinstance(verdict, GuaranteedExtinction)
    names = name_to_index(net)
    assert verdict.transient == frozenset(range(net.n)) - {names["X4"]}
    assert verify_verdict(net, verdict)


def test_example999_extinction(nets):
    net = nets["example999"]
    verdict = analyze(net)
    assert isinstance(verdict, GuaranteedExtinction)
    assert complex_names(net, verdict.transient) == ["2 X1", "X1 + X2"]
    assert verify_verdict(net, verdict)


def test_example22_not_applicable(nets):
    verdict = analyze(nets["example22"])
    assert isinstance(verdict, NotApplicable)
    assert not verdict.refutation.feasible
    assert verdict.refutation.verify()


def test_example100_inconclusive(nets):
    verdict = analyze(nets["example100"])
    assert isinstance(verdict, Inconclusive)
    assert verdict.stats.forests == verdict.stats.balanced
    wide = analyze(
        nets["example100"],
        SearchConfig(
            dom_strategy="all-subsets",
            dom_cap=64,
            absorbing_strategy="enumerate",
            absorbing_cap=64,
        ),
    )
    assert isinstance(wide, Inconclusive)


def test_example101_inconclusive(nets):
    assert isinstance(analyze(nets["example101"]), Inconclusive)


def test_example001_inconclusive(nets):
    verdict = analyze(nets["example001"])
    assert isinstance(verdict, Inconclusive)
    # the only candidate is the trivial expansion whose absorbing set is
    # everything, which carries no extinction content
    assert verdict.stats.vacuous_skipped >= 1


def test_example000_needs_bigger_absorbing_set(nets):
    net = nets["example000"]
    assert isinstance(analyze(net), Inconclusive)
    names = name_to_index(net)
    explicit = frozenset(
        {names["X2 + X3"], names["2 X3"], names["2 X2"]}
    )
    verdict = analyze(
        net,
        SearchConfig(absorbing_strategy="explicit", explicit_absorbing=explicit),
    )
    assert isinstance(verdict, GuaranteedExtinction)
    assert complex_names(net, verdict.transient) == ["2 X1"]
    assert verify_verdict(net, verdict)
    enumerated = analyze(net, SearchConfig(absorbing_strategy="enumerate"))
    assert isinstance(enumerated, GuaranteedExtinction)


def test_determinism(nets):
    for name in ("example21", "envz", "example100"):
        net = nets[name]
        assert analyze(net) == analyze(net)


def test_stats_shape(nets):
    verdict = analyze(nets["example21"])
    stats = verdict.stats
    assert stats.candidates == 1
    assert stats.forests == 2  # first forest balanced, second unbalanced
    assert stats.balanced == 1
    assert not stats.truncated
    assert len(stats.examined) == 1
    record = stats.examined[0]
    assert record.forest_outcomes == (True, False)


def test_forest_cap_marks_truncated(nets):
    verdict = analyze(nets["example21"], SearchConfig(forest_cap=1))
    # the single examined forest is balanced, so the search ends inconclusive
    # but flags that it did not see everything
    assert isinstance(verdict, Inconclusive)
    assert verdict.stats.truncated


def test_audit_names_failing_link(nets):
    net = nets["example21"]
    verdict = analyze(net)
    checks = audit_extinction(net, verdict)
    assert all(ok for _, ok in checks)
    names = [name for name, _ in checks]
    assert names == [
        "subconservativity-witness",
        "domination-edges",
        "absorbing-set",
        "transient-set",
        "forest",
        "unbalanced-certificates",
    ]


def test_verify_verdict_rejects_wrong_kind(nets):
    with pytest.raises(ValueError):
        verify_verdict(nets["example100"], analyze(nets["example100"]))


def test_invalid_config():
    with pytest.raises(ValueError):
        SearchConfig(dom_strategy="bogus")
    with pytest.raises(ValueError):
        SearchConfig(absorbing_strategy="explicit")
    with pytest.raises(ValueError):
        SearchConfig(forest_cap=0)


def test_widened_search_claims_survive_oracle():
    from crnextinct.oracle import explore, recurrent_complexes, states_with_total

    from conftest import random_subconservative

    config = SearchConfig(
        dom_strategy="all-subsets",
        dom_cap=16,
        absorbing_strategy="enumerate",
        absorbing_cap=16,
    )
    for net in random_subconservative(424242, 40):
        verdict = analyze(net, config)
        if not isinstance(verdict, GuaranteedExtinction):
            continue
        assert verify_verdict(net, verdict)
        for total in range(5):
            for root in states_with_total(net.m, total):
                alive = recurrent_complexes(net, explore(net, root))
                assert not (alive & verdict.transient), (root, alive)
