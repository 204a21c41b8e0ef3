"""Labelled 1-safe Petri nets, the step firing rule and state-space exploration.

Markings are exchanged with callers as ``frozenset`` of place ids.  Internally
every marking is an ``int`` bit-set indexed by the net's place order, which is
what the exploration loops work on.
"""

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from types import MappingProxyType

from .errors import StateBoundExceeded, StepNotEnabled, Verdict

TAU = "tau"
DEFAULT_BOUND = 1_000_000


class LabelledNet:
    """A finite labelled net ``(S, T, F, M0, l)``.

    Place and transition ids share one namespace.  ``labels`` defaults to the
    identity on transitions, which gives a plain net.
    """

    def __init__(self, places, transitions, arcs, initial_marking=(), labels=None, name=None):
        self.places = tuple(places)
        self.transitions = tuple(transitions)
        self.name = name
        elements = self.places + self.transitions
        if len(set(elements)) != len(elements):
            dup = sorted({x for x in elements if elements.count(x) > 1})
            raise ValueError(f"duplicate element ids: {dup}")
        self._pidx = {p: i for i, p in enumerate(self.places)}
        self._tidx = {t: i for i, t in enumerate(self.transitions)}

        arcs = frozenset((a, b) for a, b in arcs)
        pre = {x: set() for x in elements}
        post = {x: set() for x in elements}
        for a, b in arcs:
            if not ((a in self._pidx and b in self._tidx) or (a in self._tidx and b in self._pidx)):
                raise ValueError(f"arc {a} -> {b} must connect a place and a transition")
            post[a].add(b)
            pre[b].add(a)
        self.arcs = arcs
        self._pre = {x: frozenset(v) for x, v in pre.items()}
        self._post = {x: frozenset(v) for x, v in post.items()}

        initial_marking = frozenset(initial_marking)
        unknown = initial_marking - set(self.places)
        if unknown:
            raise ValueError(f"initial marking mentions unknown places {sorted(unknown)}")
        self.initial_marking = initial_marking

        if labels is None:
            labels = {t: t for t in self.transitions}
        missing = set(self.transitions) - set(labels)
        if missing:
            raise ValueError(f"transitions without label: {sorted(missing)}")
        self.labels = MappingProxyType({t: labels[t] for t in self.transitions})

        self._pre_mask = [self.encode(self._pre[t]) for t in self.transitions]
        self._post_mask = [self.encode(self._post[t]) for t in self.transitions]
        self._is_tau = [self.labels[t] == TAU for t in self.transitions]
        self.m0 = self.encode(initial_marking)

    # -- structure ---------------------------------------------------------

    def preset(self, x):
        return self._pre[x]

    def postset(self, x):
        return self._post[x]

    def preset_of(self, xs):
        out = set()
        for x in xs:
            out |= self._pre[x]
        return frozenset(out)

    def postset_of(self, xs):
        out = set()
        for x in xs:
            out |= self._post[x]
        return frozenset(out)

    def is_place(self, x):
        return x in self._pidx

    def is_transition(self, x):
        return x in self._tidx

    def label(self, t):
        return self.labels[t]

    def is_visible(self, t):
        return self.labels[t] != TAU

    @property
    def elements(self):
        return self.places + self.transitions

    @property
    def visible_actions(self):
        return sorted({a for a in self.labels.values() if a != TAU})

    @property
    def is_plain(self):
        labs = list(self.labels.values())
        return TAU not in labs and len(set(labs)) == len(labs)

    @property
    def is_plain_tau(self):
        vis = [a for a in self.labels.values() if a != TAU]
        return len(set(vis)) == len(vis)

    def with_labels(self, labels, name=None):
        return LabelledNet(self.places, self.transitions, self.arcs, self.initial_marking,
                           labels, name=self.name if name is None else name)

    # -- marking encoding --------------------------------------------------

    def encode(self, marking):
        mask = 0
        for p in marking:
            mask |= 1 << self._pidx[p]
        return mask

    def decode(self, mask):
        out = []
        i = 0
        while mask:
            if mask & 1:
                out.append(self.places[i])
            mask >>= 1
            i += 1
        return frozenset(out)

    # -- identity ----------------------------------------------------------

    def _key(self):
        return (frozenset(self.places), frozenset(self.transitions), self.arcs,
                self.initial_marking, frozenset(self.labels.items()))

    def __eq__(self, other):
        if not isinstance(other, LabelledNet):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return (f"LabelledNet({self.name or '?'}: {len(self.places)} places, "
                f"{len(self.transitions)} transitions, {len(self.arcs)} arcs)")


# -- firing ------------------------------------------------------------------


def _enabled(net, mask):
    pre = net._pre_mask
    return [i for i in range(len(pre)) if mask & pre[i] == pre[i]]


def _steps(net, mask, candidates=None):
    """All steps at ``mask`` as tuples of transition indices (simplified rule).

    Backtracks over the enabled transitions picking pairwise disjoint presets,
    so the cost is exponential in the width of the enabled set only.
    """
    pre = net._pre_mask
    en = _enabled(net, mask) if candidates is None else candidates
    out = []
    chosen = []

    def extend(start, used):
        for j in range(start, len(en)):
            i = en[j]
            if pre[i] & used:
                continue
            chosen.append(i)
            out.append(tuple(chosen))
            extend(j + 1, used | pre[i])
            chosen.pop()

    extend(0, 0)
    return out


def _fire_mask(net, mask, idxs):
    pre = post = 0
    for i in idxs:
        pre |= net._pre_mask[i]
        post |= net._post_mask[i]
    return (mask & ~pre) | post


def enabled_steps(net, marking):
    """Every nonempty set of enabled, pairwise independent transitions."""
    mask = net.encode(marking)
    return {frozenset(net.transitions[i] for i in step) for step in _steps(net, mask)}


def fire(net, marking, step):
    step = frozenset(step)
    if not step:
        raise StepNotEnabled("a step must be nonempty")
    mask = net.encode(marking)
    idxs = [net._tidx[t] for t in step]
    used = 0
    for i in idxs:
        pre = net._pre_mask[i]
        if mask & pre != pre:
            raise StepNotEnabled(f"{net.transitions[i]} is not enabled at {sorted(marking)}")
        if used & pre:
            raise StepNotEnabled(f"transitions of {sorted(step)} are not independent")
        used |= pre
    return net.decode(_fire_mask(net, mask, idxs))


# -- validation --------------------------------------------------------------


@dataclass
class Violation:
    kind: str
    detail: dict = field(default_factory=dict)


@dataclass
class ValidationReport:
    violations: list

    @property
    def ok(self):
        return not self.violations

    @property
    def verdict(self):
        return Verdict.of(self.ok)

    def kinds(self):
        return [v.kind for v in self.violations]

    def to_json(self):
        return {"verdict": str(self.verdict),
                "violations": [{"kind": v.kind, **v.detail} for v in self.violations]}


def validate(net, state_bound=DEFAULT_BOUND):
    """Check the structural restrictions and contact-freeness.

    Exploration uses the unsimplified firing rule (enabledness includes the
    contact condition), so a net that is not contact-free is still explored
    soundly up to its first contact.
    """
    violations = []
    for t in net.transitions:
        if not net.preset(t):
            violations.append(Violation("EmptyPreset", {"transition": t}))

    pre, post = net._pre_mask, net._post_mask
    seen = {net.m0}
    queue = deque([net.m0])
    contact = []
    while queue:
        m = queue.popleft()
        for i in range(len(pre)):
            if not pre[i] or m & pre[i] != pre[i]:
                continue
            if (m & ~pre[i]) & post[i]:
                contact.append((m, i))
                continue
            nxt = (m & ~pre[i]) | post[i]
            if nxt not in seen:
                if len(seen) >= state_bound:
                    raise StateBoundExceeded(state_bound)
                seen.add(nxt)
                queue.append(nxt)
    for m, i in contact[:1]:
        violations.append(Violation("ContactFreeness", {
            "marking": sorted(net.decode(m)), "transition": net.transitions[i]}))
    return ValidationReport(violations)


# -- reachability --------------------------------------------------------------


class ReachGraph:
    """Reachable markings in canonical order (BFS layer, then bit-set value).

    ``succ[k]`` lists ``(transition index, target node)`` for every singleton
    step; larger steps at a node are available via :meth:`steps`.
    """

    def __init__(self, net, masks, succ):
        self.net = net
        self.masks = masks
        self.index = {m: k for k, m in enumerate(masks)}
        self.succ = succ
        tau = [i for i, flag in enumerate(net._is_tau) if flag]
        self.stable = [not any(m & net._pre_mask[i] == net._pre_mask[i] for i in tau)
                       for m in masks]

    def __len__(self):
        return len(self.masks)

    def marking(self, k):
        return self.net.decode(self.masks[k])

    def markings(self):
        return [self.net.decode(m) for m in self.masks]

    def steps(self, k):
        return [frozenset(self.net.transitions[i] for i in s) for s in _steps(self.net, self.masks[k])]

    def edges(self):
        for k, out in enumerate(self.succ):
            for i, j in out:
                yield k, self.net.transitions[i], j


def reachability_graph(net, state_bound=DEFAULT_BOUND):
    layer = [net.m0]
    seen = {net.m0}
    masks = []
    pre, post = net._pre_mask, net._post_mask
    raw = {}
    while layer:
        masks.extend(layer)
        nxt_layer = set()
        for m in layer:
            out = []
            for i in range(len(pre)):
                if m & pre[i] == pre[i]:
                    n = (m & ~pre[i]) | post[i]
                    out.append((i, n))
                    if n not in seen:
                        if len(seen) >= state_bound:
                            raise StateBoundExceeded(state_bound)
                        seen.add(n)
                        nxt_layer.add(n)
            raw[m] = out
        layer = sorted(nxt_layer)
    index = {m: k for k, m in enumerate(masks)}
    succ = [[(i, index[n]) for i, n in raw[m]] for m in masks]
    return ReachGraph(net, masks, succ)


def reachable_masks(net, state_bound=DEFAULT_BOUND):
    return reachability_graph(net, state_bound).masks


def _tau_closure(net, masks, state_bound=DEFAULT_BOUND, budget=None):
    pre, post, tau = net._pre_mask, net._post_mask, net._is_tau
    seen = set(masks)
    stack = list(seen)
    while stack:
        m = stack.pop()
        for i in range(len(pre)):
            if tau[i] and m & pre[i] == pre[i]:
                n = (m & ~pre[i]) | post[i]
                if n not in seen:
                    seen.add(n)
                    stack.append(n)
                    if budget is not None:
                        budget.add(n)
                        if len(budget) > state_bound:
                            raise StateBoundExceeded(state_bound)
                    elif len(seen) > state_bound:
                        raise StateBoundExceeded(state_bound)
    return frozenset(seen)


def _visible_successors(net, masks, action):
    pre, post, labels = net._pre_mask, net._post_mask, net.transitions
    out = set()
    for m in masks:
        for i in range(len(pre)):
            if net.labels[labels[i]] == action and m & pre[i] == pre[i]:
                out.add((m & ~pre[i]) | post[i])
    return out


def weak_reach(net, marking, sigma, state_bound=DEFAULT_BOUND):
    """Markings reachable from ``marking`` by the weak trace ``sigma``."""
    current = _tau_closure(net, {net.encode(marking)}, state_bound)
    for a in sigma:
        current = _tau_closure(net, _visible_successors(net, current, a), state_bound)
    return {net.decode(m) for m in current}


# -- relations -----------------------------------------------------------------


def _pair(t, u):
    return frozenset((t, u))


def concurrency_relation(net, state_bound=DEFAULT_BOUND, graph=None):
    """Pairs of distinct transitions firable together from a reachable marking."""
    graph = graph or reachability_graph(net, state_bound)
    pre = net._pre_mask
    out = set()
    for m in graph.masks:
        en = _enabled(net, m)
        for i, j in combinations(en, 2):
            if not pre[i] & pre[j]:
                out.add(_pair(net.transitions[i], net.transitions[j]))
    return out


def enabled_conflict_relation(net, state_bound=DEFAULT_BOUND, graph=None):
    """Pairs individually enabled but not jointly firable at a reachable marking."""
    graph = graph or reachability_graph(net, state_bound)
    pre = net._pre_mask
    out = set()
    for m in graph.masks:
        en = _enabled(net, m)
        for i, j in combinations(en, 2):
            if pre[i] & pre[j]:
                out.add(_pair(net.transitions[i], net.transitions[j]))
    return out


def coverable_transitions(net, state_bound=DEFAULT_BOUND, graph=None):
    """Map each transition whose preset is covered by a reachable marking to one
    such marking (the first in canonical order)."""
    graph = graph or reachability_graph(net, state_bound)
    pre = net._pre_mask
    out = {}
    for m in graph.masks:
        for i in range(len(pre)):
            t = net.transitions[i]
            if t not in out and m & pre[i] == pre[i]:
                out[t] = net.decode(m)
    return out
