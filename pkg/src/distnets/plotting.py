"""Matplotlib rendering of nets and of corpus summaries, written to files."""

from collections import deque

import matplotlib
from matplotlib.figure import Figure
from matplotlib.patches import Circle, FancyArrowPatch, Rectangle

from .net import TAU


def _figure(size):
    # no pyplot: rendering must not depend on or change the user's backend
    fig = Figure(figsize=size)
    return fig, fig.subplots()


def layered_layout(net):
    """Column = BFS distance along arcs from the marked places (unreached
    elements go after the last column); row = position within the column."""
    start = sorted(net.initial_marking, key=net.places.index) or list(net.places[:1])
    depth = {x: 0 for x in start}
    queue = deque(start)
    while queue:
        x = queue.popleft()
        for y in sorted(net.postset(x), key=net.elements.index):
            if y not in depth:
                depth[y] = depth[x] + 1
                queue.append(y)
    last = max(depth.values(), default=0) + 1
    for x in net.elements:
        depth.setdefault(x, last)
    cols = {}
    for x in net.elements:
        cols.setdefault(depth[x], []).append(x)
    pos = {}
    for c, members in cols.items():
        for r, x in enumerate(members):
            pos[x] = (c * 1.6, -(r - (len(members) - 1) / 2) * 1.2)
    return pos


def draw_net(net, path, origin=None, locations=None, title=None):
    pos = layered_layout(net)
    fig, ax = _figure((max(4, 1.1 * len(set(x for x, _ in pos.values())) + 2), 4))
    if locations is not None:
        cmap = matplotlib.colormaps["tab20"]
        for k, (_, members) in enumerate(sorted(locations.groups().items(), key=lambda kv: str(kv[0]))):
            for x in members:
                px, py = pos[x]
                ax.add_patch(Circle((px, py), 0.42, color=cmap(k % 20), alpha=0.25, zorder=0))
    for a, b in sorted(net.arcs):
        ax.add_patch(FancyArrowPatch(pos[a], pos[b], arrowstyle="-|>", mutation_scale=10,
                                     shrinkA=12, shrinkB=12, lw=0.8, color="0.3", zorder=1))
    for x in net.elements:
        px, py = pos[x]
        generated = origin and origin.get(x, {}).get("kind", "original") != "original"
        ls = "--" if generated else "-"
        if net.is_place(x):
            ax.add_patch(Circle((px, py), 0.2, fill=False, ls=ls, zorder=2))
            if x in net.initial_marking:
                ax.add_patch(Circle((px, py), 0.06, color="black", zorder=3))
        else:
            silent = net.labels[x] == TAU
            ax.add_patch(Rectangle((px - 0.22, py - 0.22), 0.44, 0.44, ls=ls, zorder=2,
                                   facecolor="0.75" if silent else "white", edgecolor="black"))
            if not silent:
                ax.text(px, py, net.labels[x], ha="center", va="center", fontsize=8, zorder=3)
        ax.text(px, py - 0.34, x, ha="center", va="top", fontsize=6, zorder=3)
    xs = [p[0] for p in pos.values()]
    ys = [p[1] for p in pos.values()]
    ax.set_xlim(min(xs) - 0.8, max(xs) + 0.8)
    ax.set_ylim(min(ys) - 0.8, max(ys) + 0.8)
    ax.set_aspect("equal")
    ax.axis("off")
    ax.set_title(title or net.name or "net", fontsize=9)
    fig.savefig(path, dpi=120, bbox_inches="tight")
    return path


def draw_verdicts(report, path):
    """Bar chart of a classification report: one bar per predicate, height
    1 for yes, 0 for no, hatched half bar for unknown."""
    names = list(report.verdicts)
    fig, ax = _figure((6, 0.35 * len(names) + 1))
    for k, name in enumerate(names):
        v = str(report.verdicts[name])
        width = {"yes": 1.0, "no": 0.0, "unknown": 0.5}[v]
        ax.barh(k, width, color={"yes": "tab:green", "no": "tab:red", "unknown": "0.7"}[v],
                hatch="//" if v == "unknown" else None)
        ax.text(max(width, 0.02) + 0.02, k, v, va="center", fontsize=8)
    ax.set_yticks(range(len(names)))
    ax.set_yticklabels(names, fontsize=8)
    ax.set_xlim(0, 1.3)
    ax.set_xticks([])
    ax.invert_yaxis()
    ax.set_title(report.name, fontsize=9)
    fig.savefig(path, dpi=120, bbox_inches="tight")
    return path


def draw_corpus_summary(counts, path, title="corpus checks"):
    """Stacked pass/fail bars per check; ``counts`` maps check -> (passed, failed)."""
    names = list(counts)
    passed = [counts[n][0] for n in names]
    failed = [counts[n][1] for n in names]
    fig, ax = _figure((6, 0.35 * len(names) + 1))
    ax.barh(names, passed, color="tab:green", label="pass")
    ax.barh(names, failed, left=passed, color="tab:red", label="fail")
    ax.invert_yaxis()
    ax.legend(fontsize=7, loc="lower right")
    ax.set_title(title, fontsize=9)
    ax.tick_params(labelsize=7)
    fig.savefig(path, dpi=120, bbox_inches="tight")
    return path
