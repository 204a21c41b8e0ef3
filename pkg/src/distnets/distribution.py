"""Distributions (location assignments) and the requirements imposed on them."""

import enum
from collections import deque
from collections.abc import Mapping
from itertools import product

from .errors import CandidateCapExceeded, Verdict
from .net import DEFAULT_BOUND, concurrency_relation

DEFAULT_CAP = 1_000_000


class Requirement(str, enum.Enum):
    FD = "fd"
    SD = "sd"
    AD = "ad"
    EFFECTUAL = "effectual"
    DISTRIBUTED = "distributed"


class Distribution(Mapping):
    """Total map from net elements to location ids; only the induced
    equivalence matters."""

    def __init__(self, locations):
        self._loc = dict(locations)

    @classmethod
    def finest(cls, net):
        return cls({x: x for x in net.elements})

    @classmethod
    def from_groups(cls, groups, net=None):
        """Build from an iterable of element groups; elements of ``net`` not in
        any group get a private location."""
        loc = {}
        for k, group in enumerate(groups):
            for x in group:
                loc[x] = f"L{k}"
        if net is not None:
            for x in net.elements:
                loc.setdefault(x, x)
        return cls(loc)

    def __getitem__(self, x):
        return self._loc[x]

    def __iter__(self):
        return iter(self._loc)

    def __len__(self):
        return len(self._loc)

    def same(self, x, y):
        return self._loc[x] == self._loc[y]

    def groups(self):
        out = {}
        for x, loc in self._loc.items():
            out.setdefault(loc, []).append(x)
        return out

    def partition(self):
        return frozenset(frozenset(g) for g in self.groups().values())

    def is_total(self, net):
        return all(x in self._loc for x in net.elements)

    def to_json(self):
        return dict(self._loc)

    def __repr__(self):
        return f"Distribution({sorted(sorted(g) for g in self.groups().values())})"


def _check_location_clauses(net, d, singleton_preset):
    places, transitions = net.places, net.transitions
    for i, p in enumerate(places):
        for q in places[i + 1:]:
            if d.same(p, q):
                return ("places", p, q)
    for t in transitions:
        for p in places:
            if d.same(t, p):
                ok = net.preset(t) == {p} if singleton_preset else p in net.preset(t)
                if not ok:
                    return ("transition-place", t, p)
    for i, t in enumerate(transitions):
        for u in transitions[i + 1:]:
            if d.same(t, u) and not any(d.same(t, p) for p in places):
                return ("transitions", t, u)
    return None


def satisfies(net, d, requirement, state_bound=DEFAULT_BOUND, concurrency=None):
    """Check ``d`` against ``requirement``; return ``(ok, witness)`` where the
    witness names the violated clause and the offending elements."""
    requirement = Requirement(requirement)
    if requirement is Requirement.FD:
        elements = net.elements
        for i, x in enumerate(elements):
            for y in elements[i + 1:]:
                if d.same(x, y):
                    return False, ("elements", x, y)
        return True, None
    if requirement is Requirement.SD:
        w = _check_location_clauses(net, d, singleton_preset=True)
        return w is None, w
    if requirement is Requirement.AD:
        w = _check_location_clauses(net, d, singleton_preset=False)
        return w is None, w

    for t in net.transitions:
        for s in sorted(net.preset(t)):
            if not d.same(s, t):
                return False, ("effectual", s, t)
    if requirement is Requirement.EFFECTUAL:
        return True, None
    if concurrency is None:
        concurrency = concurrency_relation(net, state_bound)
    for pair in sorted(concurrency, key=sorted):
        t, u = sorted(pair)
        if net.is_visible(t) and net.is_visible(u) and d.same(t, u):
            return False, ("concurrent", t, u)
    return True, None


class DistributedResult:
    def __init__(self, verdict, distribution=None, chain=None):
        self.verdict = verdict
        self.distribution = distribution
        self.chain = chain

    def __bool__(self):
        return self.verdict is Verdict.YES

    def to_json(self):
        return {"verdict": str(self.verdict),
                "distribution": self.distribution.to_json() if self.distribution else None,
                "chain": list(self.chain) if self.chain else None}


def _shared_preplace_path(net, start, goal):
    """Shortest transition chain from ``start`` to ``goal`` in which
    consecutive transitions share a preplace."""
    prev = {start: None}
    queue = deque([start])
    while queue:
        t = queue.popleft()
        if t == goal:
            break
        for p in sorted(net.preset(t), key=net.places.index):
            for u in net.transitions:
                if u not in prev and p in net.preset(u):
                    prev[u] = t
                    queue.append(u)
    chain = [goal]
    while prev[chain[-1]] is not None:
        chain.append(prev[chain[-1]])
    return tuple(reversed(chain))


def is_distributed(net, state_bound=DEFAULT_BOUND, strict=False, concurrency=None):
    """Decide whether some distribution makes ``net`` a distributed net.

    Effectuality forces every transition onto the location of its preplaces,
    so the coarsest admissible distribution is the connected components of
    the place/posttransition graph.  ``strict`` drops the visibility condition
    on the concurrent pair.
    """
    parent = {x: x for x in net.elements}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for t in net.transitions:
        for s in net.preset(t):
            parent[find(s)] = find(t)

    if concurrency is None:
        concurrency = concurrency_relation(net, state_bound)
    order = {t: k for k, t in enumerate(net.transitions)}
    for pair in sorted(concurrency, key=lambda p: sorted(order[x] for x in p)):
        t, u = sorted(pair, key=order.get)
        if not strict and not (net.is_visible(t) and net.is_visible(u)):
            continue
        if find(t) == find(u):
            return DistributedResult(Verdict.NO, chain=_shared_preplace_path(net, t, u))
    return DistributedResult(Verdict.YES, Distribution({x: find(x) for x in net.elements}))


def _shared_preplace_transitions(net):
    return [t for t in net.transitions
            if any(len(net.postset(p)) > 1 for p in net.preset(t))]


def count_candidates(net, requirement):
    requirement = Requirement(requirement)
    if requirement in (Requirement.FD, Requirement.SD):
        return 1
    total = 1
    for t in _shared_preplace_transitions(net):
        total *= len(net.preset(t)) + 1
    return total


def canonical_distributions(net, requirement, cap=DEFAULT_CAP):
    """Candidate distributions searched by the asynchrony predicates.

    FD yields the finest distribution.  SD yields one distribution placing
    each transition with a singleton preset on that preplace.  AD yields one
    distribution per choice, for each transition sharing a preplace with
    another transition, of "alone" or one of its preplaces.
    """
    requirement = Requirement(requirement)
    if requirement is Requirement.FD:
        yield Distribution.finest(net)
        return
    if requirement is Requirement.SD:
        loc = {x: x for x in net.elements}
        for t in net.transitions:
            if len(net.preset(t)) == 1:
                (loc[t],) = net.preset(t)
        yield Distribution(loc)
        return
    if requirement is not Requirement.AD:
        raise ValueError(f"no canonical distributions for {requirement}")
    count = count_candidates(net, requirement)
    if count > cap:
        raise CandidateCapExceeded(cap, count)
    constrained = _shared_preplace_transitions(net)
    options = [[None] + [p for p in net.places if p in net.preset(t)] for t in constrained]
    for choice in product(*options):
        loc = {x: x for x in net.elements}
        for t, p in zip(constrained, choice):
            if p is not None:
                loc[t] = p
        yield Distribution(loc)
