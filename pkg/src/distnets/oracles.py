"""Executable proof machinery for the two implementations.

For the asynchronous implementation: the shift-back map, the validity
predicate alpha and the distance d, with exhaustive checks of the facts the
correctness argument rests on.  For the TCC implementation: the two
projections back to the source net, the distance, the invariant beta (seven
clauses) and the five clauses of the branching-bisimulation criterion.

Every check returns ``(ok, counterexample)``; counterexamples are plain dicts.
"""

from itertools import product

from .net import DEFAULT_BOUND, TAU, LabelledNet, _fire_mask, _steps, reachability_graph
from .semantics import _menu_mask, hide_action, multiset, readiness_equivalent
from .transform import async_implementation, tcc_implementation


def _sorted(xs):
    return sorted(xs)


def _visible_steps(net, mask):
    return [s for s in _steps(net, mask) if not any(net._is_tau[i] for i in s)]


def _labels_of(net, step):
    return multiset(net.labels[net.transitions[i]] for i in step)


# -- asynchronous implementation ------------------------------------------------


class AlphaContext:
    """A net, a distribution and the matching asynchronous implementation."""

    def __init__(self, net, d, state_bound=DEFAULT_BOUND):
        self.net = net
        self.distribution = d
        self.bound = state_bound
        self.async_net = async_implementation(net, d)
        self.impl = self.async_net.net
        self.shift = {}
        self.buffers = {s: [] for s in net.places}
        for x, info in self.async_net.origin.items():
            if info["kind"] == "buffer_place":
                self.shift[x] = info["place"]
                self.buffers[info["place"]].append(x)
        self.hops = {i for i, t in enumerate(self.impl.transitions)
                     if self.async_net.origin[t]["kind"] == "buffer_transition"}
        self.remote = {s for s in net.places if any(not d.same(s, t) for t in net.postset(s))}
        self._reach = None

    @property
    def reachable(self):
        """Reachable markings of the source net."""
        if self._reach is None:
            self._reach = set(reachability_graph(self.net, self.bound).markings())
        return self._reach


def tau_back(ctx, m):
    return frozenset(ctx.shift.get(p, p) for p in m)


def alpha(ctx, m):
    back = tau_back(ctx, m)
    return back in ctx.reachable and len(back) == len(m)


def alpha_d(ctx, m):
    return len(set(m) & ctx.remote)


def alpha_candidates(ctx):
    """All markings obtained from a reachable source marking by moving each
    token into at most one of its buffers: exactly the alpha-markings."""
    out = set()
    for m in ctx.reachable:
        choices = [[s] + ctx.buffers[s] for s in sorted(m)]
        for pick in product(*choices):
            out.add(frozenset(pick))
    return out


def check_alpha_characterization(ctx):
    reach = set(reachability_graph(ctx.impl, ctx.bound).markings())
    cands = alpha_candidates(ctx)
    for m in sorted(cands ^ reach, key=_sorted):
        return False, {"marking": _sorted(m), "reachable": m in reach, "alpha": alpha(ctx, m)}
    for m in sorted(reach, key=_sorted):
        if not alpha(ctx, m):
            return False, {"marking": _sorted(m), "reachable": True, "alpha": False}
    return True, None


def _impl_graph(ctx):
    return reachability_graph(ctx.impl, ctx.bound)


def check_d_descent(ctx):
    """Every buffer hop from an alpha-marking lowers d, keeps the shift-back
    image and preserves alpha.  Silent transitions of the source net move
    tokens between original places and are not covered."""
    g = _impl_graph(ctx)
    impl = ctx.impl
    for k, out in enumerate(g.succ):
        m = g.marking(k)
        if not alpha(ctx, m):
            return False, {"marking": _sorted(m), "reason": "alpha"}
        for i, j in out:
            if i not in ctx.hops:
                continue
            m2 = g.marking(j)
            if not (alpha_d(ctx, m) > alpha_d(ctx, m2) and tau_back(ctx, m) == tau_back(ctx, m2)
                    and alpha(ctx, m2)):
                return False, {"marking": _sorted(m), "transition": impl.transitions[i],
                               "target": _sorted(m2)}
    return True, None


def check_step_projection(ctx):
    """Visible steps of the implementation project onto steps of the source."""
    g = _impl_graph(ctx)
    impl, net = ctx.impl, ctx.net
    for k, mask in enumerate(g.masks):
        m = impl.decode(mask)
        back = net.encode(tau_back(ctx, m))
        for step in _steps(impl, mask):
            if any(impl._is_tau[i] for i in step):
                continue
            names = [impl.transitions[i] for i in step]
            m2 = impl.decode(_fire_mask(impl, mask, step))
            src = tuple(net._tidx[t] for t in names)
            ok = src in set(_steps(net, back)) and \
                net.decode(_fire_mask(net, back, src)) == tau_back(ctx, m2) and alpha(ctx, m2)
            if not ok:
                return False, {"marking": _sorted(m), "step": sorted(names)}
    return True, None


def _hop_closure(ctx, mask):
    """Markings reachable from ``mask`` by buffer hops only."""
    pre, post = ctx.impl._pre_mask, ctx.impl._post_mask
    seen = {mask}
    stack = [mask]
    while stack:
        m = stack.pop()
        for i in ctx.hops:
            if m & pre[i] == pre[i]:
                n = (m & ~pre[i]) | post[i]
                if n not in seen:
                    seen.add(n)
                    stack.append(n)
    return seen


def check_simulation(ctx):
    """Every visible source step is matched by silent steps followed by a
    step with the same label multiset, reaching the same marking."""
    net, impl = ctx.net, ctx.impl
    for m in sorted(ctx.reachable, key=_sorted):
        mask = net.encode(m)
        closure = _hop_closure(ctx, impl.encode(m))
        for step in _visible_steps(net, mask):
            a = _labels_of(net, step)
            target = impl.encode(net.decode(_fire_mask(net, mask, step)))
            found = any(_fire_mask(impl, c, s) == target and _labels_of(impl, s) == a
                        for c in closure for s in _visible_steps(impl, c))
            if not found:
                return False, {"marking": _sorted(m),
                               "step": sorted(net.transitions[i] for i in step)}
    return True, None


def check_menus(ctx):
    """For a net without distributed conflict: the menu at each reachable
    marking equals the menu of every hop-normal form in the implementation."""
    net, impl = ctx.net, ctx.impl
    pre, hops = impl._pre_mask, ctx.hops
    for m in sorted(ctx.reachable, key=_sorted):
        want = _menu_mask(net, net.encode(m))
        for c in _hop_closure(ctx, impl.encode(m)):
            if any(c & pre[i] == pre[i] for i in hops):
                continue
            got = _menu_mask(impl, c)
            if got != want:
                return False, {"marking": _sorted(m), "normal_form": _sorted(impl.decode(c))}
    return True, None


# -- TCC implementation -----------------------------------------------------------


def fresh_action(net):
    used = set(net.labels.values())
    k = 0
    while f"__i{k}" in used:
        k += 1
    return f"__i{k}"


def rename_tau(net):
    """Relabel silent transitions with a fresh visible action; return the new
    net and the action (``None`` when there was nothing to rename)."""
    if TAU not in net.labels.values():
        return net, None
    i = fresh_action(net)
    return net.with_labels({t: (i if a == TAU else a) for t, a in net.labels.items()}), i


def strip_dead_places(net):
    """Drop places without posttransitions.  They never influence behaviour,
    and the TCC dispatch transition silently consumes their tokens."""
    live = [s for s in net.places if net.postset(s)]
    arcs = {(a, b) for a, b in net.arcs if a in live or b in live}
    return LabelledNet(live, net.transitions, arcs, net.initial_marking & set(live),
                       dict(net.labels), name=net.name)


class BetaContext:
    """A silent-free source net, its TCC implementation and the lookup tables
    for the projections, the distance and beta.

    ``impl`` may override the implementation net (used for mutation tests);
    element names must then still follow the generated scheme.
    """

    def __init__(self, source, state_bound=DEFAULT_BOUND, impl=None):
        self.original = source
        self.source, self.hidden = rename_tau(source)
        self.bound = state_bound
        self.tcc = tcc_implementation(self.source, state_bound)
        self.impl = impl if impl is not None else self.tcc.net
        self.target = strip_dead_places(self.source)
        src = self.source
        cls = self.tcc.classes
        self.cls = cls
        self.live = [s for s in src.places if src.postset(s)]
        self.embassy, self.circ, self.req, self.done = {}, {}, {}, {}
        for x, info in self.tcc.origin.items():
            kind = info["kind"]
            if kind == "embassy":
                self.embassy[info["place"], info["class"]] = x
            elif kind == "circ":
                self.circ[info["transition"]] = x
            elif kind == "gc_request":
                self.req[info["place"], info["transition"], info["class"]] = x
            elif kind == "gc_done":
                self.done[info["place"], info["transition"], info["class"]] = x
        self.embassies_of = {s: sorted({self.embassy[s, cls[t]] for t in src.postset(s)})
                             for s in src.places}
        self._reach = None

    def emb(self, s, t):
        """The embassy of ``s`` at the location of ``t``."""
        return self.embassy[s, self.cls[t]]

    @property
    def target_reachable(self):
        if self._reach is None:
            self._reach = set(reachability_graph(self.target, self.bound).markings())
        return self._reach


def tau_fwd(ctx, m):
    """Project forward: a place counts once all its embassies hold a token or
    once a fired transition that produces it awaits completion."""
    src = ctx.source
    out = {s for s in ctx.live if s in m}
    out |= {s for s in ctx.live if all(e in m for e in ctx.embassies_of[s])}
    for t, c in ctx.circ.items():
        if c in m:
            out |= {s for s in src.postset(t) if s in ctx.live}
    return frozenset(out)


def tau_bwd(ctx, m):
    """Project backward: a place counts once any of its embassies holds a token
    or a fired transition that consumed it awaits completion."""
    src = ctx.source
    out = {s for s in ctx.live if s in m}
    out |= {s for s in ctx.live if any(e in m for e in ctx.embassies_of[s])}
    for t, c in ctx.circ.items():
        if c in m:
            out |= set(src.preset(t))
    return frozenset(out)


def beta_d(ctx, m):
    src = ctx.source
    n = sum(1 for s in src.places if s in m)
    n += sum(1 + len(src.postset(t)) for t, c in ctx.circ.items() if c in m)
    n += sum(1 for x in ctx.req.values() if x in m)
    return n


def beta(ctx, m):
    """Evaluate the seven clauses of beta in order; return ``(ok, clause)``
    with the index of the first failing clause."""
    src, cls = ctx.source, ctx.cls
    if tau_bwd(ctx, m) not in ctx.target_reachable:
        return False, 1
    for s in src.places:
        if s in m and any(e in m for e in ctx.embassies_of[s]):
            return False, 2
    for s in src.places:
        post = sorted(src.postset(s))
        for u in post:
            for t in post:
                if ctx.emb(s, u) in m and ctx.emb(s, t) not in m:
                    if not any(ctx.req.get((s, v, cls[u])) in m for v in post):
                        return False, 3
    marked = [t for t in src.transitions if ctx.circ[t] in m]
    for i, t in enumerate(marked):
        for u in marked[i + 1:]:
            if src.preset(t) & src.preset(u):
                return False, 4
    for (s, t, c), x in ctx.req.items():
        if x in m and (ctx.done[s, t, c] in m or ctx.embassy[s, c] not in m
                       or ctx.circ[t] not in m):
            return False, 5
    for (s, t, c), x in ctx.done.items():
        if x in m and ctx.circ[t] not in m:
            return False, 6
    for t in marked:
        for s in src.preset(t):
            if s in m or ctx.emb(s, t) in m:
                return False, 7
            for u in src.postset(s):
                c = cls[u]
                if c != cls[t] and ctx.req[s, t, c] not in m and ctx.done[s, t, c] not in m:
                    return False, 7
    return True, None


def _impl_reach(ctx):
    return reachability_graph(ctx.impl, ctx.bound)


def beta_sweep(ctx):
    """beta holds at every reachable marking of the implementation."""
    g = _impl_reach(ctx)
    for m in g.markings():
        ok, clause = beta(ctx, m)
        if not ok:
            return False, {"clause": clause, "marking": _sorted(m)}
    return True, None


def check_branching_clauses(ctx):
    """Check the five clauses of the branching-bisimulation criterion at every
    reachable marking of the implementation."""
    impl, tgt = ctx.impl, ctx.target
    g = _impl_reach(ctx)

    def fail(clause, m, **extra):
        return False, {"clause": clause, "marking": _sorted(m), **extra}

    m0 = g.marking(0)
    if not beta(ctx, m0)[0] or tau_fwd(ctx, m0) != tgt.initial_marking:
        return fail(1, m0)
    for k, mask in enumerate(g.masks):
        m1 = g.marking(k)
        if not beta(ctx, m1)[0]:
            continue
        fwd = tau_fwd(ctx, m1)
        d1 = beta_d(ctx, m1)
        tau_enabled = False
        for i, j in g.succ[k]:
            if not impl._is_tau[i]:
                continue
            tau_enabled = True
            m2 = g.marking(j)
            if not (beta(ctx, m2)[0] and tau_fwd(ctx, m2) == fwd and d1 > beta_d(ctx, m2)):
                return fail(2, m1, transition=impl.transitions[i])
        fmask = tgt.encode(fwd)
        tsteps = {}
        for s in _steps(tgt, fmask):
            tsteps.setdefault(_labels_of(tgt, s), set()).add(_fire_mask(tgt, fmask, s))
        isteps = {}
        for s in _visible_steps(impl, mask):
            m2 = impl.decode(_fire_mask(impl, mask, s))
            if not beta(ctx, m2)[0] or \
                    tgt.encode(tau_fwd(ctx, m2)) not in tsteps.get(_labels_of(impl, s), ()):
                return fail(3, m1, step=sorted(impl.transitions[i] for i in s))
            isteps.setdefault(_labels_of(impl, s), set()).add(tgt.encode(tau_fwd(ctx, m2)))
        if d1 > 0 and not tau_enabled:
            return fail(4, m1)
        if d1 == 0:
            for a, targets in tsteps.items():
                missing = targets - isteps.get(a, set())
                if missing:
                    return fail(5, m1, action=list(a),
                                target=_sorted(tgt.decode(min(missing))))
    return True, None


def generated_arcs(ctx):
    """Arcs of the implementation touching a generated element, in a stable
    order."""
    orig = set(ctx.source.elements)
    return sorted(a for a in ctx.impl.arcs if not (a[0] in orig and a[1] in orig))


def mutate(ctx, arc):
    """A context whose implementation lacks ``arc``."""
    impl = ctx.impl
    mutant = LabelledNet(impl.places, impl.transitions, impl.arcs - {arc},
                         impl.initial_marking, dict(impl.labels), name=impl.name)
    return BetaContext(ctx.original, ctx.bound, impl=mutant)


def check_mutant(ctx):
    """Run the beta sweep and the branching clauses; report the first failure."""
    ok, cex = beta_sweep(ctx)
    if not ok:
        return False, {"check": "beta", **cex}
    ok, cex = check_branching_clauses(ctx)
    if not ok:
        return False, {"check": "branching", **cex}
    return True, None


# -- hiding -----------------------------------------------------------------------


def check_compositionality(a, b, state_bound=DEFAULT_BOUND):
    """If ``a`` and ``b`` are equivalent, hiding any single action keeps them so."""
    if not readiness_equivalent(a, b, state_bound):
        return True, None
    for i in sorted(set(a.visible_actions) | set(b.visible_actions)):
        r = readiness_equivalent(hide_action(a, i), hide_action(b, i), state_bound)
        if not r:
            return False, {"action": i, "witness": r.witness.to_json()}
    return True, None


__all__ = [
    "AlphaContext", "tau_back", "alpha", "alpha_d", "alpha_candidates",
    "check_alpha_characterization", "check_d_descent", "check_step_projection",
    "check_simulation", "check_menus",
    "BetaContext", "rename_tau", "strip_dead_places", "tau_fwd", "tau_bwd", "beta_d", "beta",
    "beta_sweep", "check_branching_clauses", "generated_arcs", "mutate", "check_mutant",
    "check_compositionality",
]
