"""Seeded random plain nets for the property suites."""

import random

from .errors import StateBoundExceeded
from .net import LabelledNet, validate

MAX_PLACES = 6
MAX_TRANSITIONS = 6
MAX_ARCS = 12


def random_net(rng, max_places=MAX_PLACES, max_transitions=MAX_TRANSITIONS, max_arcs=MAX_ARCS):
    """One candidate net: every transition gets a nonempty preset, the arc
    budget is respected, and labels are the identity (plain)."""
    n_places = rng.randint(1, max_places)
    n_trans = rng.randint(1, min(max_transitions, max_arcs))
    places = [f"p{i}" for i in range(n_places)]
    transitions = [f"t{i}" for i in range(n_trans)]
    arcs = set()
    budget = max_arcs - n_trans
    for t in transitions:
        k = 1
        while budget and k < n_places and rng.random() < 0.35:
            k += 1
            budget -= 1
        for p in rng.sample(places, k):
            arcs.add((p, t))
    for t in transitions:
        for p in rng.sample(places, min(n_places, rng.randint(0, 2))):
            if budget and (t, p) not in arcs:
                arcs.add((t, p))
                budget -= 1
    marked = [p for p in places if rng.random() < 0.5] or [rng.choice(places)]
    return LabelledNet(places, transitions, arcs, marked)


def random_corpus(count, seed=0, state_bound=10_000, **limits):
    """``count`` contact-free random nets, deterministic in ``seed``.  Candidates
    failing validation (or the bound) are discarded."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        net = random_net(rng, **limits)
        try:
            ok = validate(net, state_bound).ok
        except StateBoundExceeded:
            ok = False
        if ok:
            out.append(LabelledNet(net.places, net.transitions, net.arcs, net.initial_marking,
                                   name=f"rand{seed}-{len(out)}"))
    return out
