"""Step readiness semantics, asynchronous and distributed implementations of
1-safe labelled Petri nets."""

from .classify import (
    classify,
    behavioural_async,
    detect_pattern,
    detect_pure_visible_M,
    has_distributed_conflict,
    plain_distributable,
    ready_M_pair,
    structural_async,
    truly_synchronous_upper,
)
from .distribution import Distribution, Requirement, canonical_distributions, is_distributed, satisfies
from .errors import (
    CandidateCapExceeded,
    DuplicateElement,
    InvariantViolation,
    NetError,
    NotStable,
    ParseError,
    StateBoundExceeded,
    StepNotEnabled,
    UnknownEndpoint,
    Verdict,
)
from .net import (
    TAU,
    LabelledNet,
    concurrency_relation,
    enabled_conflict_relation,
    enabled_steps,
    fire,
    reachability_graph,
    validate,
    weak_reach,
)
from .semantics import hide_action, menu, readiness_equivalent, ready_semantics
from .textio import emit_net, load_fixture, load_net, parse_net
from .transform import async_implementation, locations_of_tcc, tcc_implementation

__version__ = "0.1.0"
