"""Run the proof oracles and the class cross-checks on one net or a random corpus."""

import os

from .classify import (
    ASYNC_REQUIREMENTS,
    behavioural_async,
    chosen_distribution,
    detect_pure_visible_M,
    has_distributed_conflict,
    pattern_consistent,
    plain_distributable,
    ready_M_pair,
    structural_async,
    tcc_is_distributed,
)
from .corpus import random_corpus
from .distribution import Requirement, satisfies
from .errors import CandidateCapExceeded, StateBoundExceeded, Verdict
from .net import DEFAULT_BOUND, concurrency_relation, enabled_conflict_relation
from .oracles import (
    AlphaContext,
    BetaContext,
    beta_sweep,
    check_alpha_characterization,
    check_branching_clauses,
    check_compositionality,
    check_d_descent,
    check_menus,
    check_simulation,
    check_step_projection,
)
from .semantics import readiness_equivalent
from .transform import locations_of_tcc, tcc_implementation

PASS, FAIL, UNKNOWN, SKIPPED = "pass", "fail", "unknown", "skipped"


def _run(fn):
    try:
        ok, cex = fn()
    except (StateBoundExceeded, CandidateCapExceeded) as e:
        return UNKNOWN, {"reason": str(e)}
    return (PASS, None) if ok else (FAIL, cex)


def _async_agreement(net, bound):
    for req in ASYNC_REQUIREMENTS:
        s = structural_async(net, req, bound)
        b = behavioural_async(net, req, bound)
        if s.verdict != b.verdict:
            return False, {"requirement": req.value, "structural": str(s.verdict),
                           "behavioural": str(b.verdict)}
    return True, None


def _pattern_agreement(net, bound):
    for req in ASYNC_REQUIREMENTS:
        if not pattern_consistent(net, req, bound):
            return False, {"requirement": req.value}
    return True, None


def _distributable_agreement(net, bound):
    r = plain_distributable(net, bound)
    if r.verdict is Verdict.YES:
        if not tcc_is_distributed(r, bound):
            return False, {"reason": "TCC witness not distributed"}
        if not readiness_equivalent(net, r.tcc.net, bound):
            return False, {"reason": "TCC witness not equivalent"}
        return True, None
    return relational_witness_ok(net, r, bound)


def relational_witness_ok(net, r, bound=DEFAULT_BOUND):
    """Re-validate a negative verdict: the pair is concurrent, linked by a chain
    of enabled conflicts, and the TCC under its locations is not distributed."""
    t, u = r.pair
    conc = concurrency_relation(net, bound)
    conf = enabled_conflict_relation(net, bound)
    chain = r.chain
    if frozenset((t, u)) not in conc or chain[0] != t or chain[-1] != u:
        return False, {"reason": "pair not concurrent", "pair": [t, u]}
    if any(frozenset(p) not in conf for p in zip(chain, chain[1:])):
        return False, {"reason": "broken conflict chain", "chain": list(chain)}
    tcc = tcc_implementation(net, bound)
    ok, _ = satisfies(tcc.net, locations_of_tcc(tcc), Requirement.DISTRIBUTED, bound)
    if ok:
        return False, {"reason": "TCC distributed despite concurrent conflict"}
    return True, None


def _ready_M_agreement(net, bound):
    a = detect_pure_visible_M(net, bound) is not None
    b = ready_M_pair(net, bound) is not None
    return a == b, None if a == b else {"pure_visible_M": a, "ready_M_pair": b}


def verify_net(net, requirement, state_bound=DEFAULT_BOUND):
    checks, cexs = {}, {}

    def record(name, fn):
        checks[name], cex = _run(fn)
        if cex:
            cexs[name] = cex

    try:
        d = chosen_distribution(net, requirement, state_bound)
    except (StateBoundExceeded, CandidateCapExceeded):
        d = None
    if d is not None:
        actx = AlphaContext(net, d, state_bound)
        record("alpha_characterization", lambda: check_alpha_characterization(actx))
        record("d_descent", lambda: check_d_descent(actx))
        record("step_projection", lambda: check_step_projection(actx))
        record("simulation", lambda: check_simulation(actx))
        if net.is_plain and has_distributed_conflict(net, d, state_bound) is None:
            record("menus", lambda: check_menus(actx))
        else:
            checks["menus"] = SKIPPED
    else:
        for name in ("alpha_characterization", "d_descent", "step_projection", "simulation",
                     "menus"):
            checks[name] = UNKNOWN

    bctx = BetaContext(net, state_bound)
    record("beta_sweep", lambda: beta_sweep(bctx))
    record("branching_clauses", lambda: check_branching_clauses(bctx))
    tcc_net = tcc_implementation(net, state_bound).net
    record("tcc_equivalent", lambda: _as_check(readiness_equivalent(net, tcc_net, state_bound)))
    record("compositionality", lambda: check_compositionality(net, tcc_net, state_bound))

    plain_checks = {"async_agreement": _async_agreement, "pattern_agreement": _pattern_agreement,
                    "distributable_agreement": _distributable_agreement,
                    "ready_M_agreement": _ready_M_agreement}
    for name, fn in plain_checks.items():
        if net.is_plain:
            record(name, lambda fn=fn: fn(net, state_bound))
        else:
            checks[name] = SKIPPED
    return {"net": net.name or "net", "checks": checks, "counterexamples": cexs}


def _as_check(result):
    return result.equivalent, (None if result.equivalent else result.witness.to_json())


def verify_corpus(count, seed=0, state_bound=DEFAULT_BOUND, requirement="fd", figures=None):
    counts = {}
    failures = []
    done = 0
    interrupted = False
    try:
        for net in random_corpus(count, seed):
            r = verify_net(net, requirement, state_bound)
            for name, v in r["checks"].items():
                counts.setdefault(name, {PASS: 0, FAIL: 0, UNKNOWN: 0, SKIPPED: 0})[v] += 1
            if r["counterexamples"] and len(failures) < 10:
                failures.append(r)
            done += 1
    except KeyboardInterrupt:
        interrupted = True
    checks = {}
    for name, c in counts.items():
        checks[name] = FAIL if c[FAIL] else UNKNOWN if (c[UNKNOWN] or interrupted) else PASS
    out = {"corpus": {"size": count, "checked": done, "seed": seed},
           "checks": checks, "counts": counts, "failures": failures}
    if interrupted:
        out["interrupted"] = True
    if figures:
        from .plotting import draw_corpus_summary

        os.makedirs(figures, exist_ok=True)
        path = os.path.join(figures, f"corpus-{seed}.png")
        draw_corpus_summary({k: (c[PASS], c[FAIL]) for k, c in counts.items()}, path,
                            title=f"{done} random nets, seed {seed}")
        out["figure"] = path
    return out
