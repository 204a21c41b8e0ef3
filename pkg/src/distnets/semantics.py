"""Step ready pairs and step readiness equivalence.

The set of step ready pairs of a net is usually infinite, so it is represented
by a deterministic automaton over visible actions: a subset construction whose
states are tau-closed sets of markings, annotated with the menus of the stable
markings they contain.  Two nets are equivalent iff a joint traversal of their
automata never meets differing annotations.
"""

from collections import Counter, deque
from dataclasses import dataclass

from .errors import NotStable, StateBoundExceeded
from .net import DEFAULT_BOUND, TAU, _steps, _tau_closure, weak_reach


def multiset(labels):
    """Canonical form of a label multiset: the sorted tuple of its elements."""
    return tuple(sorted(labels))


def multiset_json(ms):
    return [[a, n] for a, n in sorted(Counter(ms).items())]


def menu_json(menu):
    return [multiset_json(ms) for ms in sorted(menu, key=lambda ms: (len(ms), ms))]


def _is_stable(net, mask):
    pre = net._pre_mask
    return not any(net._is_tau[i] and mask & pre[i] == pre[i] for i in range(len(pre)))


def _menu_mask(net, mask):
    labels = [net.labels[t] for t in net.transitions]
    return frozenset(multiset(labels[i] for i in step) for step in _steps(net, mask)
                     if all(labels[i] != TAU for i in step))


def menu(net, marking):
    """Label multisets of the steps enabled at a stable marking."""
    mask = net.encode(marking)
    if not _is_stable(net, mask):
        raise NotStable(f"a tau transition is enabled at {sorted(marking)}")
    return _menu_mask(net, mask)


class _Determinizer:
    """Lazy subset construction with memoized successors and annotations."""

    def __init__(self, net, state_bound=DEFAULT_BOUND):
        self.net = net
        self.bound = state_bound
        self.touched = set()
        self._succ = {}
        self._ann = {}
        self._menus = {}
        self.initial = self._close({net.m0})

    def _close(self, masks):
        self.touched.update(masks)
        if len(self.touched) > self.bound:
            raise StateBoundExceeded(self.bound)
        return _tau_closure(self.net, masks, self.bound, budget=self.touched)

    def successors(self, state):
        if state not in self._succ:
            net = self.net
            pre, post = net._pre_mask, net._post_mask
            labels = [net.labels[t] for t in net.transitions]
            targets = {}
            for m in state:
                for i in range(len(pre)):
                    if labels[i] != TAU and m & pre[i] == pre[i]:
                        targets.setdefault(labels[i], set()).add((m & ~pre[i]) | post[i])
            self._succ[state] = {a: self._close(ms) for a, ms in sorted(targets.items())}
        return self._succ[state]

    def menu(self, mask):
        if mask not in self._menus:
            self._menus[mask] = _menu_mask(self.net, mask)
        return self._menus[mask]

    def annotation(self, state):
        if state not in self._ann:
            self._ann[state] = frozenset(self.menu(m) for m in state if _is_stable(self.net, m))
        return self._ann[state]


@dataclass
class ReadySemantics:
    """Finite automaton for the step ready pairs of a net.

    ``states[k]`` is the set of (bit-set) markings reached by the traces leading
    to state ``k``; ``annotations[k]`` the menus of its stable members; state 0
    is initial.  ``edges`` maps ``(state, action)`` to a state.
    """

    net: object
    states: list
    annotations: list
    edges: dict

    initial = 0

    def run(self, trace):
        k = 0
        for a in trace:
            k = self.edges.get((k, a))
            if k is None:
                return None
        return k

    def contains(self, trace, menu):
        k = self.run(trace)
        return k is not None and frozenset(menu) in self.annotations[k]

    def pairs(self, max_len):
        """All step ready pairs with traces of length at most ``max_len``."""
        out = set()
        frontier = [((), 0)]
        for depth in range(max_len + 1):
            nxt = []
            for trace, k in frontier:
                out.update((trace, x) for x in self.annotations[k])
                if depth < max_len:
                    nxt.extend((trace + (a,), j) for (i, a), j in self.edges.items() if i == k)
            frontier = nxt
        return out

    @property
    def is_empty(self):
        return not any(self.annotations)

    def to_json(self):
        return {
            "states": [{"id": k, "menus": [menu_json(x) for x in
                                           sorted(ann, key=lambda x: sorted(x))]}
                       for k, ann in enumerate(self.annotations)],
            "edges": [{"from": i, "action": a, "to": j}
                      for (i, a), j in sorted(self.edges.items())],
            "initial": 0,
        }


def ready_semantics(net, state_bound=DEFAULT_BOUND):
    det = _Determinizer(net, state_bound)
    index = {det.initial: 0}
    states = [det.initial]
    edges = {}
    queue = deque([det.initial])
    while queue:
        s = queue.popleft()
        for a, t in det.successors(s).items():
            if t not in index:
                index[t] = len(states)
                states.append(t)
                queue.append(t)
            edges[(index[s], a)] = index[t]
    return ReadySemantics(net, states, [det.annotation(s) for s in states], edges)


@dataclass(frozen=True)
class Witness:
    """A step ready pair of exactly one of two nets."""

    trace: tuple
    menu: frozenset
    side: str

    def to_json(self):
        return {"trace": list(self.trace), "menu": menu_json(self.menu), "side": self.side}


@dataclass
class EquivResult:
    equivalent: bool
    witness: Witness = None
    sound: bool = True

    def __bool__(self):
        return self.equivalent

    def to_json(self):
        out = {"verdict": "yes" if self.equivalent else "no",
               "witness": self.witness.to_json() if self.witness else None}
        if not self.sound:
            out["mode"] = "bounded (unsound)"
        return out


def _pick_witness(trace, left, right):
    diff = [(x, "left") for x in left - right] + [(x, "right") for x in right - left]
    # the larger menu is usually the more telling one
    x, side = min(diff, key=lambda d: (-len(d[0]), sorted(d[0]), d[1]))
    return Witness(tuple(trace), x, side)


def readiness_equivalent(a, b, state_bound=DEFAULT_BOUND):
    """Decide ``R(a) == R(b)``; on failure return a shortest distinguishing pair."""
    da, db = _Determinizer(a, state_bound), _Determinizer(b, state_bound)
    empty = frozenset()
    start = (da.initial, db.initial)
    seen = {start}
    queue = deque([(start, ())])
    while queue:
        (sa, sb), trace = queue.popleft()
        ann_a = da.annotation(sa) if sa else empty
        ann_b = db.annotation(sb) if sb else empty
        if ann_a != ann_b:
            return EquivResult(False, _pick_witness(trace, ann_a, ann_b))
        succ_a = da.successors(sa) if sa else {}
        succ_b = db.successors(sb) if sb else {}
        for act in sorted(set(succ_a) | set(succ_b)):
            nxt = (succ_a.get(act, empty), succ_b.get(act, empty))
            if nxt not in seen:
                seen.add(nxt)
                queue.append((nxt, trace + (act,)))
    return EquivResult(True)


def ready_pairs_bounded(net, max_len, state_bound=DEFAULT_BOUND):
    """Step ready pairs with traces up to ``max_len``, by direct enumeration of
    weak traces.  Independent of the subset construction above."""
    out = set()
    actions = net.visible_actions
    frontier = [()]
    for depth in range(max_len + 1):
        nxt = []
        for trace in frontier:
            reached = weak_reach(net, net.initial_marking, trace, state_bound)
            if not reached:
                continue
            for m in reached:
                mask = net.encode(m)
                if _is_stable(net, mask):
                    out.add((trace, _menu_mask(net, mask)))
            if depth < max_len:
                nxt.extend(trace + (x,) for x in actions)
        frontier = nxt
    return out


def bounded_equivalent(a, b, max_len, state_bound=DEFAULT_BOUND):
    """Compare ready pairs up to a trace length.  Unsound: a "yes" only covers
    traces of length ``max_len`` or less."""
    ra = ready_pairs_bounded(a, max_len, state_bound)
    rb = ready_pairs_bounded(b, max_len, state_bound)
    if ra == rb:
        return EquivResult(True, sound=False)
    diff = [(p, "left") for p in ra - rb] + [(p, "right") for p in rb - ra]
    (trace, x), side = min(diff, key=lambda d: (len(d[0][0]), d[0][0], -len(d[0][1]),
                                                  sorted(d[0][1]), d[1]))
    return EquivResult(False, Witness(trace, x, side), sound=False)


def hide_action(net, action):
    """Relabel every transition labelled ``action`` as tau."""
    labels = {t: (TAU if a == action else a) for t, a in net.labels.items()}
    return net.with_labels(labels)
