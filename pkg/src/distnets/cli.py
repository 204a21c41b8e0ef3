"""Command-line front end.

Exit codes: 0 ok / equivalent / all checks passed, 1 inequivalent / failed
check, 2 parse error, 3 state bound exceeded (or a check left unknown),
4 internal invariant violation, 130 interrupted.
"""

import argparse
import json
import os
import sys

from .classify import chosen_distribution, classify
from .distribution import DEFAULT_CAP, Distribution, Requirement
from .dot import to_dot
from .errors import (
    CandidateCapExceeded,
    InvariantViolation,
    ParseError,
    StateBoundExceeded,
    Verdict,
)
from .net import DEFAULT_BOUND, validate
from .semantics import bounded_equivalent, hide_action, readiness_equivalent, ready_semantics
from .textio import emit_net, parse_net
from .transform import async_implementation, locations_of_tcc, tcc_implementation

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_BOUND, EXIT_INVARIANT, EXIT_INTERRUPT = 0, 1, 2, 3, 4, 130


def _read(path):
    if path == "-":
        return parse_net(sys.stdin.read())
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    name = os.path.splitext(os.path.basename(path))[0]
    return parse_net(text, name=name if not path.startswith("/dev/fd") else None)


def _dump(obj, out):
    out.write(json.dumps(obj, indent=2, sort_keys=False) + "\n")


# -- subcommands ---------------------------------------------------------------------


def cmd_validate(args, out):
    report = validate(_read(args.net), args.bound)
    _dump(report.to_json(), out)
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_classify(args, out):
    net = _read(args.net)
    report = classify(net, args.bound, args.cap)
    if args.pretty:
        out.write(report.table() + "\n")
    else:
        _dump(report.to_json(), out)
    if args.figures:
        for path in write_figures(net, report, args.figures, args.bound):
            print(f"wrote {path}", file=sys.stderr)
    return EXIT_OK


def write_figures(net, report, directory, state_bound=DEFAULT_BOUND):
    from . import plotting

    os.makedirs(directory, exist_ok=True)
    stem = os.path.join(directory, report.name)
    loc = None
    dist = report.witnesses.get("distributed") or {}
    if dist.get("distribution"):
        loc = Distribution(dist["distribution"])
    paths = [plotting.draw_net(net, stem + "-net.png", locations=loc),
             plotting.draw_verdicts(report, stem + "-verdicts.png")]
    if report.verdicts.get("plain_distributable") is Verdict.YES:
        tcc = tcc_implementation(net, state_bound)
        paths.append(plotting.draw_net(tcc.net, stem + "-tcc.png", tcc.origin,
                                       locations_of_tcc(tcc)))
    return paths


def cmd_semantics(args, out):
    _dump(ready_semantics(_read(args.net), args.bound).to_json(), out)
    return EXIT_OK


def cmd_equiv(args, out):
    a, b = _read(args.left), _read(args.right)
    if args.bounded is not None:
        r = bounded_equivalent(a, b, args.bounded, args.bound)
    else:
        r = readiness_equivalent(a, b, args.bound)
    _dump(r.to_json(), out)
    return EXIT_OK if r.equivalent else EXIT_FAIL


def cmd_transform(args, out):
    net = _read(args.net)
    if args.kind == "async":
        if args.distribution:
            with open(args.distribution, encoding="utf-8") as fh:
                d = Distribution(json.load(fh))
        else:
            d = chosen_distribution(net, Requirement(args.req), args.bound, args.cap)
        res = async_implementation(net, d)
        result, origin = res.net, res.origin
    elif args.kind == "tcc":
        res = tcc_implementation(net, args.bound)
        result, origin = res.net, res.origin
    else:
        if not args.action:
            raise SystemExit("transform hide needs --action")
        result = hide_action(net, args.action)
        origin = {x: {"kind": "original"} for x in result.elements}
    text = emit_net(result)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)
    sidecar = args.provenance or (args.output + ".provenance.json" if args.output else None)
    if sidecar:
        with open(sidecar, "w", encoding="utf-8") as fh:
            json.dump(origin, fh, indent=2, sort_keys=True)
    return EXIT_OK


def cmd_dot(args, out):
    net = _read(args.net)
    origin = loc = None
    if args.transform == "tcc":
        tcc = tcc_implementation(net, args.bound)
        net, origin = tcc.net, tcc.origin
        loc = locations_of_tcc(tcc) if args.locations else None
    elif args.transform == "async":
        d = chosen_distribution(net, Requirement(args.req), args.bound, args.cap)
        res = async_implementation(net, d)
        net, origin = res.net, res.origin
    out.write(to_dot(net, origin, loc))
    return EXIT_OK


def cmd_verify(args, out):
    from .verify import verify_corpus, verify_net

    if args.random:
        result = verify_corpus(args.random, args.seed, args.bound, figures=args.figures)
    elif args.net:
        result = verify_net(_read(args.net), Requirement(args.req), args.bound)
    else:
        raise SystemExit("verify needs a net or --random N")
    _dump(result, out)
    verdicts = list(result["checks"].values())
    if "fail" in verdicts:
        return EXIT_FAIL
    if "unknown" in verdicts:
        return EXIT_BOUND
    return EXIT_OK


# -- parser ----------------------------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(prog="distnets", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--bound", type=int, default=DEFAULT_BOUND,
                        help="maximum number of markings explored (default %(default)s)")
    common.add_argument("--cap", type=int, default=DEFAULT_CAP,
                        help="maximum number of candidate distributions (default %(default)s)")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="check net restrictions")
    s.add_argument("net")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("classify", parents=[common], help="class membership report")
    s.add_argument("net")
    fmt = s.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON report (default)")
    fmt.add_argument("--pretty", action="store_true", help="plain table")
    s.add_argument("--figures", metavar="DIR", help="also render PNG figures into DIR")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("semantics", parents=[common], help="ready-pair automaton as JSON")
    s.add_argument("net")
    s.set_defaults(func=cmd_semantics)

    s = sub.add_parser("equiv", parents=[common], help="step readiness equivalence")
    s.add_argument("left")
    s.add_argument("right")
    s.add_argument("--bounded", type=int, metavar="L",
                   help="compare traces up to length L only (unsound)")
    s.set_defaults(func=cmd_equiv)

    s = sub.add_parser("transform", parents=[common], help="async / tcc / hide")
    s.add_argument("kind", choices=["async", "tcc", "hide"])
    s.add_argument("net")
    s.add_argument("--req", choices=["fd", "sd", "ad"], default="fd")
    s.add_argument("--distribution", metavar="JSON", help="explicit {element: location} map")
    s.add_argument("--action", help="action to hide")
    s.add_argument("-o", "--output")
    s.add_argument("--provenance", metavar="PATH", help="provenance sidecar JSON")
    s.set_defaults(func=cmd_transform)

    s = sub.add_parser("verify", parents=[common], help="run the proof oracles")
    s.add_argument("net", nargs="?")
    s.add_argument("--req", choices=["fd", "sd", "ad"], default="fd")
    s.add_argument("--random", type=int, metavar="N", help="check N random nets instead")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--figures", metavar="DIR", help="render a summary chart into DIR")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("dot", parents=[common], help="Graphviz export")
    s.add_argument("net")
    s.add_argument("--transform", choices=["tcc", "async"])
    s.add_argument("--req", choices=["fd", "sd", "ad"], default="fd")
    s.add_argument("--locations", action="store_true", help="cluster by TCC locations")
    s.set_defaults(func=cmd_dot)
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except (StateBoundExceeded, CandidateCapExceeded) as e:
        _dump({"verdict": "unknown", "reason": str(e)}, out)
        return EXIT_BOUND
    except InvariantViolation as e:
        print(f"invariant violation: {e}", file=sys.stderr)
        return EXIT_INVARIANT
    except KeyboardInterrupt:
        _dump({"verdict": "unknown", "reason": "interrupted"}, out)
        return EXIT_INTERRUPT


if __name__ == "__main__":
    sys.exit(main())
