import pytest
from hypothesis import assume, given

from distnets.distribution import Distribution
from distnets.errors import NotStable
from distnets.net import LabelledNet
from distnets.semantics import (
    bounded_equivalent,
    hide_action,
    menu,
    multiset_json,
    readiness_equivalent,
    ready_pairs_bounded,
    ready_semantics,
)
from distnets.transform import async_implementation

import bruteforce as bf
from conftest import contact_free, plain_nets

E = frozenset()


def test_fig1_pairs(fig):
    pairs = ready_semantics(fig("fig1")).pairs(3)
    assert pairs == {((), frozenset({("a",), ("b",)})), (("a",), E), (("b",), E)}


def test_fig2_initial_menu(fig):
    rs = ready_semantics(fig("fig2"))
    assert rs.annotations[0] == {frozenset({("a",), ("b",), ("c",), ("a", "c")})}


def test_fig3_pairs_match_bruteforce(fig):
    net = fig("fig3")
    pairs = ready_semantics(net).pairs(4)
    assert pairs == bf.ready_pairs(net, 4)
    assert pairs == {(("b",), E), (("a", "c"), E), (("c", "a"), E)}


def test_menu_requires_stability(fig):
    with pytest.raises(NotStable):
        menu(fig("fig3"), fig("fig3").initial_marking)


def test_multiset_json():
    assert multiset_json(("a", "a", "b")) == [["a", 2], ["b", 1]]


def test_fig1_against_async(fig):
    n = fig("fig1")
    impl = async_implementation(n, Distribution.finest(n)).net
    r = readiness_equivalent(n, impl)
    assert not r
    # the shortest distinguishing trace is the empty one
    assert r.witness.trace == ()
    left, right = ready_semantics(n).annotations[0], ready_semantics(impl).annotations[0]
    assert r.witness.menu in left ^ right
    assert frozenset({("b",)}) in right - left


def test_hide(fig):
    hidden = hide_action(fig("fig1"), "a")
    assert hidden.labels["t"] == "tau"
    assert ready_semantics(hidden).pairs(3) == {((), E), (("b",), E)}


def test_equivalence_is_reflexive(fig):
    for name in ("fig1", "fig2", "fig3", "fig4"):
        assert readiness_equivalent(fig(name), fig(name))


def test_bounded_is_flagged(fig):
    r = bounded_equivalent(fig("fig4"), fig("fig5"), 3)
    assert r.equivalent and not r.sound
    assert r.to_json()["mode"] == "bounded (unsound)"


def test_tau_loop_divergence_has_no_pairs():
    net = LabelledNet(["p"], ["t"], [("p", "t"), ("t", "p")], ["p"], {"t": "tau"})
    assert ready_semantics(net).is_empty


@given(plain_nets(tau=True))
def test_pairs_match_bruteforce(net):
    assume(contact_free(net))
    expected = bf.ready_pairs(net, 3)
    assert ready_semantics(net).pairs(3) == expected
    assert ready_pairs_bounded(net, 3) == expected


@given(plain_nets(tau=True), plain_nets(tau=True))
def test_witness_is_genuine(a, b):
    assume(contact_free(a) and contact_free(b))
    r = readiness_equivalent(a, b)
    if r:
        assert bf.ready_pairs(a, 3) == bf.ready_pairs(b, 3)
    else:
        w = r.witness
        ra = bf.ready_pairs(a, len(w.trace))
        rb = bf.ready_pairs(b, len(w.trace))
        pair = (w.trace, w.menu)
        assert (pair in ra) != (pair in rb)
        assert (pair in ra) == (w.side == "left")
