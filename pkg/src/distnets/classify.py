"""Class membership: asynchrony (structural and behavioural), distributed,
plain-distributable and the truly-synchronous upper bound."""

from dataclasses import dataclass, field
from .distribution import (
    DEFAULT_CAP,
    Requirement,
    canonical_distributions,
    is_distributed,
    satisfies,
)
from .errors import CandidateCapExceeded, StateBoundExceeded, Verdict
from .net import (
    DEFAULT_BOUND,
    concurrency_relation,
    coverable_transitions,
    enabled_conflict_relation,
    reachability_graph,
)
from .semantics import multiset, readiness_equivalent, ready_semantics
from .transform import async_implementation, conflict_classes, locations_of_tcc, tcc_implementation

ASYNC_REQUIREMENTS = (Requirement.FD, Requirement.SD, Requirement.AD)
PATTERN_FOR = {Requirement.FD: "Conflict", Requirement.SD: "N", Requirement.AD: "M"}


@dataclass
class PatternWitness:
    kind: str
    transitions: tuple
    places: tuple = ()
    markings: tuple = ()

    def to_json(self):
        return {"kind": self.kind, "transitions": list(self.transitions),
                "places": list(self.places),
                "markings": [sorted(m) for m in self.markings]}


class _Context:
    """Reachability-derived data shared by the predicates of one net."""

    def __init__(self, net, state_bound):
        self.net = net
        self.graph = reachability_graph(net, state_bound)
        self.coverable = coverable_transitions(net, graph=self.graph)
        self._bound = state_bound
        self._conc = self._conf = None

    @property
    def concurrency(self):
        if self._conc is None:
            self._conc = concurrency_relation(self.net, graph=self.graph)
        return self._conc

    @property
    def conflict(self):
        if self._conf is None:
            self._conf = enabled_conflict_relation(self.net, graph=self.graph)
        return self._conf


def _ctx(net, state_bound, ctx):
    return ctx if ctx is not None else _Context(net, state_bound)


def _place_order(net, places):
    return tuple(sorted(places, key=net.places.index))


def has_distributed_conflict(net, d, state_bound=DEFAULT_BOUND, ctx=None):
    """Witness ``(t, u, p, M)`` with ``p`` shared, ``p`` remote from ``u`` and
    the preset of ``t`` covered by the reachable ``M``; or ``None``."""
    ctx = _ctx(net, state_bound, ctx)
    for t in net.transitions:
        if t not in ctx.coverable:
            continue
        for u in net.transitions:
            if u == t:
                continue
            for p in _place_order(net, net.preset(t) & net.preset(u)):
                if not d.same(p, u):
                    return PatternWitness("DistributedConflict", (t, u), (p,), (ctx.coverable[t],))
    return None


@dataclass
class AsyncResult:
    verdict: Verdict
    distribution: object = None
    witness: PatternWitness = None

    def to_json(self):
        return {"verdict": str(self.verdict),
                "distribution": self.distribution.to_json() if self.distribution else None,
                "witness": self.witness.to_json() if self.witness else None}


def structural_async(net, requirement, state_bound=DEFAULT_BOUND, cap=DEFAULT_CAP, ctx=None):
    ctx = _ctx(net, state_bound, ctx)
    first = None
    for d in canonical_distributions(net, requirement, cap):
        w = has_distributed_conflict(net, d, ctx=ctx)
        if w is None:
            return AsyncResult(Verdict.YES, d)
        first = first or w
    return AsyncResult(Verdict.NO, witness=first)


def chosen_distribution(net, requirement, state_bound=DEFAULT_BOUND, cap=DEFAULT_CAP):
    """A canonical distribution without distributed conflict when one exists,
    else the first canonical candidate."""
    r = structural_async(net, requirement, state_bound, cap)
    if r.verdict is Verdict.YES:
        return r.distribution
    return next(iter(canonical_distributions(net, requirement, cap)))


def behavioural_async(net, requirement, state_bound=DEFAULT_BOUND, cap=DEFAULT_CAP):
    """Search the canonical distributions for one whose asynchronous
    implementation is step readiness equivalent to ``net``."""
    for d in canonical_distributions(net, requirement, cap):
        impl = async_implementation(net, d).net
        if readiness_equivalent(net, impl, state_bound):
            return AsyncResult(Verdict.YES, d)
    return AsyncResult(Verdict.NO)


def detect_pattern(net, kind, state_bound=DEFAULT_BOUND, ctx=None):
    """Search for a partially reachable conflict, N, or left and right border
    reachable M (``kind`` is ``"Conflict"``, ``"N"`` or ``"M"``)."""
    ctx = _ctx(net, state_bound, ctx)
    cov = ctx.coverable
    ts = net.transitions
    if kind in ("Conflict", "N"):
        for t in ts:
            if t not in cov:
                continue
            for u in ts:
                if u == t or (kind == "N" and len(net.preset(u)) < 2):
                    continue
                shared = net.preset(t) & net.preset(u)
                if shared:
                    p = _place_order(net, shared)[0]
                    return PatternWitness(kind, (t, u), (p,), (cov[t],))
        return None
    if kind != "M":
        raise ValueError(f"unknown pattern {kind!r}")
    for u in ts:
        for t in ts:
            if t == u or t not in cov or not net.preset(t) & net.preset(u):
                continue
            for v in ts:
                if v == u or v not in cov:
                    continue
                for p in _place_order(net, net.preset(t) & net.preset(u)):
                    for q in _place_order(net, net.preset(u) & net.preset(v)):
                        if p != q:
                            return PatternWitness("M", (t, u, v), (p, q), (cov[t], cov[v]))
    return None


def detect_pure_visible_M(net, state_bound=DEFAULT_BOUND, ctx=None):
    """Find visible ``t, u, v`` where ``u`` shares a preplace with each of
    ``t`` and ``v``, the presets of ``t`` and ``v`` are disjoint, and one
    reachable marking covers all three presets."""
    ctx = _ctx(net, state_bound, ctx)
    pre = net._pre_mask
    idx = {t: i for i, t in enumerate(net.transitions)}
    vis = [t for t in net.transitions if net.is_visible(t)]
    triples = [(t, u, v) for u in vis for t in vis for v in vis
               if t != u and u != v
               and net.preset(t) & net.preset(u)
               and net.preset(u) & net.preset(v)
               and not net.preset(t) & net.preset(v)]
    if not triples:
        return None
    for m in ctx.graph.masks:
        for t, u, v in triples:
            need = pre[idx[t]] | pre[idx[u]] | pre[idx[v]]
            if m & need == need:
                return PatternWitness("PureVisibleM", (t, u, v), (), (net.decode(m),))
    return None


def truly_synchronous_upper(net, state_bound=DEFAULT_BOUND, ctx=None):
    """``YES`` (truly synchronous) when a pure visible M exists, else
    ``UNKNOWN``: absence of the pattern is not known to imply distributability."""
    w = detect_pure_visible_M(net, state_bound, ctx)
    return (Verdict.YES, w) if w else (Verdict.UNKNOWN, None)


def _conflict_chain(net, conflict, start, goal):
    adj = {t: set() for t in net.transitions}
    for pair in conflict:
        a, b = tuple(pair)
        adj[a].add(b)
        adj[b].add(a)
    order = {t: k for k, t in enumerate(net.transitions)}
    prev = {start: None}
    frontier = [start]
    while frontier and goal not in prev:
        nxt = []
        for t in frontier:
            for u in sorted(adj[t], key=order.get):
                if u not in prev:
                    prev[u] = t
                    nxt.append(u)
        frontier = nxt
    chain = [goal]
    while prev[chain[-1]] is not None:
        chain.append(prev[chain[-1]])
    return tuple(reversed(chain))


@dataclass
class DistributableResult:
    verdict: Verdict
    tcc: object = None
    locations: object = None
    pair: tuple = None
    chain: tuple = None

    def to_json(self):
        out = {"verdict": str(self.verdict)}
        if self.pair:
            out["pair"] = list(self.pair)
            out["chain"] = list(self.chain)
        if self.tcc is not None:
            out["implementation"] = self.tcc.net.name or "tcc"
            out["locations"] = {k: sorted(v) for k, v in sorted(self.locations.groups().items())}
        return out


def plain_distributable(net, state_bound=DEFAULT_BOUND, ctx=None):
    """Decide whether the closure of enabled conflict is disjoint from
    concurrency; on success also return the TCC implementation and its
    locations as the distributed equivalent."""
    ctx = _ctx(net, state_bound, ctx)
    classes = conflict_classes(net, conflict=ctx.conflict)
    order = {t: k for k, t in enumerate(net.transitions)}
    for pair in sorted(ctx.concurrency, key=lambda p: sorted(order[x] for x in p)):
        t, u = sorted(pair, key=order.get)
        if classes[t] == classes[u]:
            return DistributableResult(Verdict.NO, pair=(t, u),
                                       chain=_conflict_chain(net, ctx.conflict, t, u))
    tcc = tcc_implementation(net, classes=classes)
    return DistributableResult(Verdict.YES, tcc, locations_of_tcc(tcc))


def _has_ready_M(menu):
    singles = {ms[0] for ms in menu if len(ms) == 1}
    for ms in menu:
        if len(ms) != 2 or ms[0] == ms[1]:
            continue
        a, c = ms
        for b in sorted(singles):
            if multiset((a, b)) not in menu and multiset((b, c)) not in menu:
                return a, b, c
    return None


@dataclass
class ReadyMPair:
    trace: tuple
    menu: frozenset
    actions: tuple


def ready_M_pair(net, state_bound=DEFAULT_BOUND):
    """Search the step ready pairs for a menu offering ``{b}`` and ``{a, c}``
    but neither ``{a, b}`` nor ``{b, c}``."""
    rs = ready_semantics(net, state_bound)
    traces = {0: ()}
    order = [0]
    for k in order:
        for (i, a), j in sorted(rs.edges.items()):
            if i == k and j not in traces:
                traces[j] = traces[k] + (a,)
                order.append(j)
    for k in order:
        for x in sorted(rs.annotations[k], key=sorted):
            hit = _has_ready_M(x)
            if hit:
                return ReadyMPair(traces[k], x, hit)
    return None


@dataclass
class ClassReport:
    name: str
    plain: bool
    verdicts: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)

    def to_json(self):
        return {"net": self.name, "plain": self.plain,
                "verdicts": {k: str(v) for k, v in self.verdicts.items()},
                "witnesses": self.witnesses}

    def table(self):
        width = max(len(k) for k in self.verdicts)
        rows = [f"{k.ljust(width)}  {v}" for k, v in self.verdicts.items()]
        return "\n".join([f"net {self.name}"] + rows)


_ASYNC_NAMES = {Requirement.FD: "fully_asynchronous",
                Requirement.SD: "symmetrically_asynchronous",
                Requirement.AD: "asymmetrically_asynchronous"}


def _guard(fn):
    try:
        return fn()
    except (StateBoundExceeded, CandidateCapExceeded):
        return None


def classify(net, state_bound=DEFAULT_BOUND, cap=DEFAULT_CAP):
    """Run every class predicate.  Anything cut off by a bound is ``unknown``,
    as are the predicates only defined for plain nets when ``net`` is not plain."""
    report = ClassReport(net.name or "net", net.is_plain)
    v, w = report.verdicts, report.witnesses
    ctx = _guard(lambda: _Context(net, state_bound))

    for req in ASYNC_REQUIREMENTS:
        name = _ASYNC_NAMES[req]
        s = b = None
        if net.is_plain and ctx:
            s = _guard(lambda: structural_async(net, req, state_bound, cap, ctx))
            b = _guard(lambda: behavioural_async(net, req, state_bound, cap))
        v[name + "_structural"] = s.verdict if s else Verdict.UNKNOWN
        v[name + "_behavioural"] = b.verdict if b else Verdict.UNKNOWN
        if s:
            w[name] = s.to_json()
        if s and b and s.verdict != b.verdict:
            w[name + "_disagreement"] = True

    d = _guard(lambda: is_distributed(net, concurrency=ctx.concurrency)) if ctx else None
    v["distributed"] = d.verdict if d is not None else Verdict.UNKNOWN
    if d is not None:
        w["distributed"] = d.to_json()

    pd = _guard(lambda: plain_distributable(net, ctx=ctx)) if ctx and net.is_plain else None
    v["plain_distributable"] = pd.verdict if pd else Verdict.UNKNOWN
    if pd:
        w["plain_distributable"] = pd.to_json()

    ts = _guard(lambda: truly_synchronous_upper(net, ctx=ctx)) if ctx and net.is_plain else None
    v["truly_synchronous"] = ts[0] if ts else Verdict.UNKNOWN
    if Verdict.YES in (v["distributed"], v["plain_distributable"]):
        # the net itself or its TCC is a distributed net with the same ready pairs
        v["truly_synchronous"] = Verdict.NO
    if ts and ts[1]:
        w["truly_synchronous"] = ts[1].to_json()
    return report


def pattern_consistent(net, requirement, state_bound=DEFAULT_BOUND):
    """Whether the structural verdict for ``requirement`` is the negation of the
    matching pattern detector."""
    ctx = _Context(net, state_bound)
    s = structural_async(net, requirement, ctx=ctx)
    p = detect_pattern(net, PATTERN_FOR[Requirement(requirement)], ctx=ctx)
    return (s.verdict is Verdict.YES) == (p is None)


def tcc_is_distributed(result, state_bound=DEFAULT_BOUND):
    """Check the constructive witness of a positive distributability verdict."""
    ok, _ = satisfies(result.tcc.net, result.locations, Requirement.DISTRIBUTED, state_bound)
    return ok


__all__ = [
    "PatternWitness", "AsyncResult", "DistributableResult", "ClassReport", "ReadyMPair",
    "has_distributed_conflict", "structural_async", "chosen_distribution", "behavioural_async", "detect_pattern",
    "detect_pure_visible_M", "truly_synchronous_upper", "plain_distributable", "ready_M_pair",
    "classify", "pattern_consistent", "tcc_is_distributed",
]
