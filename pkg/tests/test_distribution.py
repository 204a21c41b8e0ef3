import pytest
from hypothesis import assume, given

from distnets.distribution import (
    Distribution,
    Requirement,
    canonical_distributions,
    count_candidates,
    is_distributed,
    satisfies,
)
from distnets.errors import CandidateCapExceeded, Verdict

import bruteforce as bf
from conftest import contact_free, plain_nets


def test_distribution_mapping():
    d = Distribution.from_groups([["p", "t"]], None)
    assert d.same("p", "t")
    assert d.partition() == {frozenset({"p", "t"})}
    assert Distribution({"a": 1, "b": 1}).groups() == {1: ["a", "b"]}


def test_fd_clauses(fig):
    n = fig("fig1")
    assert satisfies(n, Distribution.finest(n), "fd") == (True, None)
    d = Distribution.from_groups([["p", "t"]], n)
    assert satisfies(n, d, "fd") == (False, ("elements", "p", "t"))


def test_sd_and_ad_clauses(fig):
    n = fig("fig1")
    # u has preset {p, q}: it may sit with p under AD but never under SD
    d = Distribution.from_groups([["p", "u"]], n)
    assert satisfies(n, d, "sd") == (False, ("transition-place", "u", "p"))
    assert satisfies(n, d, "ad") == (True, None)
    d = Distribution.from_groups([["p", "q"]], n)
    assert satisfies(n, d, "ad") == (False, ("places", "p", "q"))
    d = Distribution.from_groups([["t", "u"]], n)
    assert satisfies(n, d, "ad") == (False, ("transitions", "t", "u"))
    d = Distribution.from_groups([["t", "u", "p"]], n)
    assert satisfies(n, d, "ad")[0]


def test_distributed_clauses(fig):
    n = fig("fig2")
    d = Distribution.from_groups([["p", "q", "t", "u", "v"]], n)
    assert satisfies(n, d, "effectual") == (True, None)
    assert satisfies(n, d, "distributed") == (False, ("concurrent", "t", "v"))
    assert satisfies(n, Distribution.finest(n), "effectual")[0] is False


def test_is_distributed_examples(fig):
    r = is_distributed(fig("fig2"))
    assert r.verdict is Verdict.NO and r.chain == ("t", "u", "v")
    r = is_distributed(fig("fig1"))
    assert r and satisfies(fig("fig1"), r.distribution, "distributed")[0]
    assert is_distributed(fig("fig7-impl"))


def test_canonical_candidates_meet_requirement(fig):
    for name in ("fig1", "fig2", "fig4", "fig7-spec"):
        n = fig(name)
        for req in ("fd", "sd", "ad"):
            cands = list(canonical_distributions(n, req))
            assert len(cands) == count_candidates(n, req)
            assert all(satisfies(n, d, req)[0] for d in cands)


def test_candidate_cap(fig):
    assert count_candidates(fig("fig1"), "ad") == 2 * 3
    with pytest.raises(CandidateCapExceeded):
        list(canonical_distributions(fig("fig1"), "ad", cap=5))


def test_requirement_values():
    assert Requirement("ad") is Requirement.AD


@given(plain_nets(max_places=3, max_transitions=3, tau=True))
def test_is_distributed_matches_partition_search(net):
    assume(contact_free(net))
    r = is_distributed(net)
    assert bool(r) == bf.distributed_partition_exists(net)
    if r:
        assert satisfies(net, r.distribution, "distributed")[0]
