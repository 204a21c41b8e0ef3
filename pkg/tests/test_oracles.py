import pytest

from distnets.classify import chosen_distribution, has_distributed_conflict
from distnets.distribution import Distribution
from distnets.oracles import (
    AlphaContext,
    BetaContext,
    alpha,
    alpha_candidates,
    alpha_d,
    beta,
    beta_d,
    beta_sweep,
    check_alpha_characterization,
    check_branching_clauses,
    check_compositionality,
    check_d_descent,
    check_menus,
    check_mutant,
    check_simulation,
    check_step_projection,
    generated_arcs,
    mutate,
    rename_tau,
    strip_dead_places,
    tau_back,
)
from distnets.textio import fixture_names

import bruteforce as bf

ALPHA_CHECKS = [check_alpha_characterization, check_d_descent, check_step_projection,
                check_simulation]


def test_alpha_on_fig1(fig):
    n = fig("fig1")
    ctx = AlphaContext(n, Distribution.finest(n))
    m = frozenset({"p__u", "q"})
    assert tau_back(ctx, m) == {"p", "q"}
    assert alpha(ctx, m)
    assert alpha_d(ctx, m) == 1
    assert not alpha(ctx, frozenset({"p__u", "p__t", "q"}))
    # candidates agree with a brute-force exploration of the implementation
    assert alpha_candidates(ctx) == bf.reachable(ctx.impl)


@pytest.mark.parametrize("name", fixture_names())
def test_alpha_checks_on_fixtures(fig, name):
    n = fig(name)
    ctx = AlphaContext(n, Distribution.finest(n))
    for check in ALPHA_CHECKS:
        ok, cex = check(ctx)
        assert ok, (check.__name__, cex)


@pytest.mark.parametrize("name", fixture_names())
def test_beta_checks_on_fixtures(fig, name):
    ctx = BetaContext(fig(name))
    assert beta_sweep(ctx) == (True, None)
    assert check_branching_clauses(ctx) == (True, None)


def test_menus_on_conflict_free_distribution(fig):
    n = fig("fig1")
    d = chosen_distribution(n, "ad")
    assert has_distributed_conflict(n, d) is None
    assert check_menus(AlphaContext(n, d)) == (True, None)


def test_beta_initial_marking(fig):
    ctx = BetaContext(fig("fig4"))
    m0 = ctx.impl.initial_marking
    assert beta(ctx, m0)[0]
    assert beta_d(ctx, m0) == 2


def test_rename_tau_and_strip(fig):
    n, i = rename_tau(fig("fig3"))
    assert i == "__i0"
    assert "tau" not in n.labels.values()
    s = strip_dead_places(fig("fig1"))
    assert set(s.places) == {"p", "q"}
    s = strip_dead_places(fig("fig4"))
    assert set(s.places) == {"r", "p", "q"}


def test_every_generated_arc_mutation_is_caught(fig):
    ctx = BetaContext(fig("fig4"))
    arcs = generated_arcs(ctx)
    assert len(arcs) == 31
    caught = 0
    for arc in arcs:
        ok, cex = check_mutant(mutate(ctx, arc))
        caught += not ok
    assert caught == len(arcs)


def test_compositionality_on_tcc(fig):
    assert check_compositionality(fig("fig4"), fig("fig5")) == (True, None)


def test_oracles_on_random_nets(oracle_corpus):
    for net in oracle_corpus[:25]:
        actx = AlphaContext(net, Distribution.finest(net))
        for check in ALPHA_CHECKS:
            assert check(actx)[0], (net.name, check.__name__)
        bctx = BetaContext(net)
        assert beta_sweep(bctx)[0], net.name
        assert check_branching_clauses(bctx)[0], net.name
