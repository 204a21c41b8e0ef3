"""Graphviz DOT export.  Generated elements are dashed, silent transitions
filled; an optional distribution draws one cluster per location."""

from .net import TAU


def _q(x):
    return '"' + str(x).replace("\\", "\\\\").replace('"', '\\"') + '"'


def _node(net, x, origin):
    style = []
    if origin and origin.get(x, {}).get("kind", "original") != "original":
        style.append("dashed")
    if net.is_place(x):
        attrs = {"shape": "circle", "label": "●" if x in net.initial_marking else "",
                 "xlabel": x}
    else:
        attrs = {"shape": "box", "label": net.labels[x], "xlabel": x}
        if net.labels[x] == TAU:
            style.append("filled")
            attrs["fillcolor"] = "gray80"
    if style:
        attrs["style"] = ",".join(style)
    body = ", ".join(f"{k}={_q(v)}" for k, v in attrs.items())
    return f"{_q(x)} [{body}];"


def to_dot(net, origin=None, locations=None):
    lines = [f"digraph {_q(net.name or 'net')} {{", "  rankdir=LR;", "  forcelabels=true;"]
    if locations is not None:
        for k, (loc, members) in enumerate(sorted(locations.groups().items(), key=lambda kv: str(kv[0]))):
            lines.append(f"  subgraph cluster_{k} {{")
            lines.append(f"    label={_q(loc)}; style=dashed;")
            for x in sorted(members, key=net.elements.index):
                lines.append("    " + _node(net, x, origin))
            lines.append("  }")
    else:
        for x in net.elements:
            lines.append("  " + _node(net, x, origin))
    order = {x: k for k, x in enumerate(net.elements)}
    for a, b in sorted(net.arcs, key=lambda arc: (order[arc[0]], order[arc[1]])):
        lines.append(f"  {_q(a)} -> {_q(b)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
