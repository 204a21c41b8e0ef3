"""Line-oriented text format for nets.

::

    net <name>
    place <id> [marked]
    trans <id> label <action|tau>
    arc <id> -> <id>

``#`` starts a comment.  Arcs may only be declared after both endpoints.
"""

import re
from importlib import resources

from .errors import DuplicateElement, ParseError, UnknownEndpoint
from .net import TAU, LabelledNet


def parse_net(text, name=None):
    places, transitions, labels, arcs, marked = [], [], {}, [], set()
    kinds = {}
    net_name = name
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        tokens = [(m.start() + 1, m.group()) for m in re.finditer(r"\S+", line)]
        if not tokens:
            continue
        words = [w for _, w in tokens]
        column = tokens[0][0]
        head = words[0]
        if head == "net":
            if len(words) != 2:
                raise ParseError("expected 'net <name>'", lineno, column)
            net_name = words[1]
        elif head == "place":
            if len(words) not in (2, 3) or (len(words) == 3 and words[2] != "marked"):
                raise ParseError("expected 'place <id> [marked]'", lineno, column)
            pid = words[1]
            if pid in kinds:
                raise DuplicateElement(f"element {pid!r} declared twice", lineno, column)
            kinds[pid] = "place"
            places.append(pid)
            if len(words) == 3:
                marked.add(pid)
        elif head == "trans":
            if len(words) != 4 or words[2] != "label":
                raise ParseError("expected 'trans <id> label <action|tau>'", lineno, column)
            tid = words[1]
            if tid in kinds:
                raise DuplicateElement(f"element {tid!r} declared twice", lineno, column)
            kinds[tid] = "trans"
            transitions.append(tid)
            labels[tid] = words[3]
        elif head == "arc":
            if len(words) != 4 or words[2] != "->":
                raise ParseError("expected 'arc <id> -> <id>'", lineno, column)
            src, dst = words[1], words[3]
            for end, (col, _) in ((src, tokens[1]), (dst, tokens[3])):
                if end not in kinds:
                    raise UnknownEndpoint(f"arc endpoint {end!r} is not declared", lineno, col)
            if kinds[src] == kinds[dst]:
                raise ParseError(f"arc {src} -> {dst} must connect a place and a transition",
                                 lineno, column)
            if (src, dst) in arcs:
                raise DuplicateElement(f"arc {src} -> {dst} declared twice", lineno, column)
            arcs.append((src, dst))
        else:
            raise ParseError(f"unknown declaration {head!r}", lineno, column)
    return LabelledNet(places, transitions, arcs, marked, labels, name=net_name)


def emit_net(net):
    """Render ``net`` in canonical form: declarations in net order, arcs sorted
    by source then target position."""
    order = {x: k for k, x in enumerate(net.elements)}
    lines = []
    if net.name:
        lines.append(f"net {net.name}")
    for p in net.places:
        lines.append(f"place {p}" + (" marked" if p in net.initial_marking else ""))
    for t in net.transitions:
        lines.append(f"trans {t} label {net.labels[t]}")
    for a, b in sorted(net.arcs, key=lambda arc: (order[arc[0]], order[arc[1]])):
        lines.append(f"arc {a} -> {b}")
    return "\n".join(lines) + "\n"


def load_net(path):
    with open(path, encoding="utf-8") as fh:
        return parse_net(fh.read())


def fixture_names():
    files = resources.files("distnets") / "fixtures"
    return sorted(f.name[:-4] for f in files.iterdir() if f.name.endswith(".net"))


def load_fixture(name):
    """One of the shipped figure nets, e.g. ``load_fixture("fig4")``."""
    text = (resources.files("distnets") / "fixtures" / f"{name}.net").read_text(encoding="utf-8")
    return parse_net(text, name=name)


def save_net(net, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(emit_net(net))


__all__ = ["parse_net", "emit_net", "load_net", "save_net", "load_fixture", "fixture_names", "TAU"]
