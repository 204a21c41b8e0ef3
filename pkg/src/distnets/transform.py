"""Net transformations: the distribution-based asynchronous implementation and
the transition-controlled-choice (TCC) implementation.

Generated element names are deterministic so that outputs round-trip through
the text format and can be diffed against fixtures:

=====================  =========================
buffer place           ``s__t``
buffer transition      ``t__s``
TCC dispatch           ``box_s``
TCC embassy            ``s_AT_c`` (``c`` names a conflict class)
TCC fired flag         ``circ_t``
TCC cleanup request    ``s_BY_t_AT_c``
TCC cleanup done       ``bar_s_BY_t_AT_c``
TCC cleanup            ``t_GC_s_AT_c``
TCC completion         ``prime_t``
=====================  =========================
"""

import json
from dataclasses import dataclass, field

from .distribution import Distribution
from .net import DEFAULT_BOUND, TAU, LabelledNet, enabled_conflict_relation


@dataclass
class AsyncNet:
    net: LabelledNet
    origin: dict = field(default_factory=dict)
    distribution: Distribution = None

    def provenance_json(self):
        return json.dumps(self.origin, indent=2, sort_keys=True)


@dataclass
class TccNet:
    net: LabelledNet
    origin: dict
    classes: dict
    source: LabelledNet = None

    def provenance_json(self):
        return json.dumps(self.origin, indent=2, sort_keys=True)

    def element(self, kind, **params):
        """Look up a generated element by kind and parameters."""
        for name, info in self.origin.items():
            if info["kind"] == kind and all(info.get(k) == v for k, v in params.items()):
                return name
        raise KeyError((kind, params))


def _fresh(name, taken):
    while name in taken:
        name += "_"
    taken.add(name)
    return name


def async_implementation(net, d):
    """Insert a silent hop on every arc from a place to a remote posttransition."""
    taken = set(net.elements)
    origin = {x: {"kind": "original"} for x in net.elements}
    places, transitions = list(net.places), list(net.transitions)
    labels = dict(net.labels)
    arcs = {(t, s) for t in net.transitions for s in net.postset(t)}
    for t in net.transitions:
        for s in sorted(net.preset(t), key=net.places.index):
            if d.same(s, t):
                arcs.add((s, t))
                continue
            buf = _fresh(f"{s}__{t}", taken)
            hop = _fresh(f"{t}__{s}", taken)
            places.append(buf)
            transitions.append(hop)
            labels[hop] = TAU
            arcs |= {(s, hop), (hop, buf), (buf, t)}
            origin[buf] = {"kind": "buffer_place", "place": s, "transition": t}
            origin[hop] = {"kind": "buffer_transition", "place": s, "transition": t}
    impl = LabelledNet(places, transitions, arcs, net.initial_marking, labels,
                       name=f"{net.name}-async" if net.name else None)
    return AsyncNet(impl, origin, d)


def conflict_classes(net, state_bound=DEFAULT_BOUND, conflict=None):
    """Map each transition to the representative of its class under the
    reflexive-transitive closure of the enabled conflict relation.  The
    representative is the class member declared first."""
    if conflict is None:
        conflict = enabled_conflict_relation(net, state_bound)
    parent = {t: t for t in net.transitions}

    def find(t):
        while parent[t] != t:
            parent[t] = parent[parent[t]]
            t = parent[t]
        return t

    order = {t: k for k, t in enumerate(net.transitions)}
    for pair in conflict:
        a, b = (find(x) for x in pair)
        if a != b:
            if order[a] > order[b]:
                a, b = b, a
            parent[b] = a
    return {t: find(t) for t in net.transitions}


def tcc_implementation(net, state_bound=DEFAULT_BOUND, classes=None):
    """Build the transition-controlled-choice implementation of ``net``.

    Transitions keep their labels; all added transitions are silent.  The
    construction never looks at labels, so nets with silent transitions need
    no special treatment.
    """
    if classes is None:
        classes = conflict_classes(net, state_bound)
    taken = set(net.elements)
    origin = {x: {"kind": "original"} for x in net.elements}
    places, transitions = list(net.places), list(net.transitions)
    labels = dict(net.labels)
    arcs = set()
    torder = {t: k for k, t in enumerate(net.transitions)}

    def new_place(name, info):
        name = _fresh(name, taken)
        places.append(name)
        origin[name] = info
        return name

    def new_trans(name, info):
        name = _fresh(name, taken)
        transitions.append(name)
        labels[name] = TAU
        origin[name] = info
        return name

    def post_transitions(s):
        return sorted(net.postset(s), key=torder.get)

    embassy = {}
    for s in net.places:
        box = new_trans(f"box_{s}", {"kind": "box", "place": s})
        arcs.add((s, box))
        for t in post_transitions(s):
            c = classes[t]
            if (s, c) not in embassy:
                embassy[s, c] = new_place(f"{s}_AT_{c}", {"kind": "embassy", "place": s, "class": c})
                arcs.add((box, embassy[s, c]))
            arcs.add((embassy[s, c], t))

    circ, prime = {}, {}
    for t in net.transitions:
        circ[t] = new_place(f"circ_{t}", {"kind": "circ", "transition": t})
        prime[t] = new_trans(f"prime_{t}", {"kind": "prime", "transition": t})
        arcs |= {(t, circ[t]), (circ[t], prime[t])}
        arcs |= {(prime[t], s) for s in net.postset(t)}

    for s in net.places:
        posts = post_transitions(s)
        for t in posts:
            seen = set()
            for u in posts:
                c = classes[u]
                if c == classes[t] or c in seen:
                    continue
                seen.add(c)
                info = {"place": s, "transition": t, "class": c}
                req = new_place(f"{s}_BY_{t}_AT_{c}", {"kind": "gc_request", **info})
                done = new_place(f"bar_{s}_BY_{t}_AT_{c}", {"kind": "gc_done", **info})
                gc = new_trans(f"{t}_GC_{s}_AT_{c}", {"kind": "gc", **info})
                arcs |= {(t, req), (req, gc), (gc, done), (done, prime[t]), (embassy[s, c], gc)}

    impl = LabelledNet(places, transitions, arcs, net.initial_marking, labels,
                       name=f"{net.name}-tcc" if net.name else None)
    return TccNet(impl, origin, dict(classes), source=net)


def locations_of_tcc(tcc, state_bound=DEFAULT_BOUND):
    """Locations of a TCC net: one per original place (with its dispatch
    transition) and one per conflict class.  Accepts a ``TccNet`` or the
    source net."""
    if isinstance(tcc, LabelledNet):
        tcc = tcc_implementation(tcc, state_bound)
    loc = {}
    for x, info in tcc.origin.items():
        kind = info["kind"]
        if kind == "original":
            loc[x] = x if tcc.net.is_place(x) else "class:" + tcc.classes[x]
        elif kind == "box":
            loc[x] = info["place"]
        elif kind in ("embassy", "gc_request", "gc"):
            loc[x] = "class:" + info["class"]
        else:
            loc[x] = "class:" + tcc.classes[info["transition"]]
    return Distribution(loc)
