import pytest

from distnets.classify import (
    PATTERN_FOR,
    behavioural_async,
    chosen_distribution,
    classify,
    detect_pattern,
    detect_pure_visible_M,
    plain_distributable,
    ready_M_pair,
    structural_async,
    truly_synchronous_upper,
)
from distnets.distribution import Requirement, satisfies
from distnets.errors import Verdict
from distnets.net import LabelledNet
from distnets.semantics import readiness_equivalent
from distnets.transform import async_implementation

import bruteforce as bf

YES, NO, UNKNOWN = Verdict.YES, Verdict.NO, Verdict.UNKNOWN


def test_fig1_report(fig):
    v = classify(fig("fig1")).verdicts
    assert v["fully_asynchronous_structural"] is NO
    assert v["symmetrically_asynchronous_behavioural"] is NO
    assert v["asymmetrically_asynchronous_structural"] is YES
    assert v["asymmetrically_asynchronous_behavioural"] is YES
    assert v["distributed"] is YES
    assert v["truly_synchronous"] is NO


def test_fig2_report(fig):
    v = classify(fig("fig2")).verdicts
    assert v["distributed"] is NO
    assert v["plain_distributable"] is NO
    assert v["truly_synchronous"] is YES
    assert all(v[k] is NO for k in v if "asynchronous" in k)


def test_fig1_patterns(fig):
    n = fig("fig1")
    assert detect_pattern(n, "Conflict").transitions == ("t", "u")
    assert detect_pattern(n, "N").places == ("p",)
    assert detect_pattern(n, "M") is None


def test_fig2_witnesses(fig):
    n = fig("fig2")
    w = detect_pure_visible_M(n)
    assert w.transitions == ("t", "u", "v")
    assert w.markings == (n.initial_marking,)
    assert truly_synchronous_upper(n)[0] is YES
    r = plain_distributable(n)
    assert r.pair == ("t", "v") and r.chain == ("t", "u", "v")
    p = ready_M_pair(n)
    assert p.trace == () and p.actions == ("a", "b", "c")


def test_truly_synchronous_upper_is_unknown_without_pattern(fig):
    assert truly_synchronous_upper(fig("fig1")) == (UNKNOWN, None)


def test_behavioural_async_witness_distribution(fig):
    n = fig("fig1")
    r = behavioural_async(n, "ad")
    assert r.verdict is YES
    assert satisfies(n, r.distribution, "ad")[0]
    assert readiness_equivalent(n, async_implementation(n, r.distribution).net)


def test_chosen_distribution_prefers_conflict_free(fig):
    n = fig("fig1")
    d = chosen_distribution(n, Requirement.AD)
    assert readiness_equivalent(n, async_implementation(n, d).net)


def test_non_plain_async_is_unknown(fig):
    v = classify(fig("fig3")).verdicts
    assert v["fully_asynchronous_structural"] is UNKNOWN
    assert v["plain_distributable"] is UNKNOWN


def test_bound_gives_unknown(fig):
    v = classify(fig("fig4"), state_bound=1).verdicts
    assert set(v.values()) == {UNKNOWN}


def test_pretty_table(fig):
    table = classify(fig("fig2")).table()
    assert table.splitlines()[0] == "net fig2"
    assert "truly_synchronous" in table


@pytest.mark.parametrize("req", ["fd", "sd", "ad"])
def test_small_nets_structural_vs_pattern(req, corpus):
    for net in corpus[:100]:
        s = structural_async(net, req)
        p = detect_pattern(net, PATTERN_FOR[Requirement(req)])
        assert (s.verdict is YES) == (p is None), net.name


def test_classification_consistent_on_corpus(corpus):
    for net in corpus[:150]:
        v = classify(net).verdicts
        assert not (v["truly_synchronous"] is YES and v["plain_distributable"] is YES)
        if v["distributed"] is YES:
            assert v["plain_distributable"] is YES, net.name


def test_ready_M_pair_is_a_pair(corpus):
    for net in corpus[:150]:
        p = ready_M_pair(net)
        if p is None:
            continue
        a, b, c = p.actions
        assert (p.trace, p.menu) in bf.ready_pairs(net, len(p.trace))
        assert (b,) in p.menu and tuple(sorted((a, c))) in p.menu
        assert tuple(sorted((a, b))) not in p.menu and tuple(sorted((b, c))) not in p.menu


def test_empty_net():
    net = LabelledNet(["p"], [], [], ["p"])
    v = classify(net).verdicts
    assert v["distributed"] is YES and v["fully_asynchronous_behavioural"] is YES
