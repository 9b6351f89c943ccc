"""Diagram emitters for component windows.

Two formats are provided for a :class:`~beilinson.artrans.ComponentReport`:

* DOT (``component_dot``) — a directed graph whose nodes are labeled by
  dimension vectors and filled by classification: equal-images nodes gray,
  equal-kernels nodes black, unclassified middle nodes and "neither" nodes
  white.  Mesh arrows are solid; translate arrows are dashed.

* ASCII (``component_ascii``) — a layered text diagram with the
  quasi-simple row at the bottom and the translate direction running
  right-to-left (applying the translate moves one column to the left).
"""

from __future__ import annotations

from .artrans import ComponentReport, WindowNode

__all__ = ["component_ascii", "component_dot"]

_DOT_STYLE = {
    "EIP": ' [fillcolor="gray", fontcolor="black"]',
    "EKP": ' [fillcolor="black", fontcolor="white"]',
    "neither": ' [fillcolor="white", fontcolor="black"]',
    "projective-hit": ' [fillcolor="white", fontcolor="black", peripheries=2]',
    "injective-hit": ' [fillcolor="white", fontcolor="black", peripheries=2]',
    None: ' [fillcolor="white", fontcolor="black"]',
}

_ASCII_MARK = {
    "EIP": "o",
    "EKP": "#",
    "neither": "x",
    "projective-hit": "P",
    "injective-hit": "I",
    None: ".",
}


def _dims_label(node: WindowNode) -> str:
    return "(" + ",".join(str(d) for d in node.dims) + ")"


def _node_id(node: WindowNode) -> str:
    return f"q{node.quasi_length}_t{node.offset}"


def _mesh_edges(index: dict[tuple[int, int], WindowNode]):
    """Solid mesh arrows: up-right (o, q) -> (o, q+1) and down-right
    (o, q) -> (o-1, q-1), whenever both endpoints were computed."""
    for (off, ql) in sorted(index, key=lambda t: (-t[0], t[1])):
        if (off, ql + 1) in index:
            yield (off, ql), (off, ql + 1)
        if ql > 1 and (off - 1, ql - 1) in index:
            yield (off, ql), (off - 1, ql - 1)


def component_dot(report: ComponentReport) -> str:
    """Render a component window as a DOT digraph string."""
    index = {(nd.offset, nd.quasi_length): nd for nd in report.nodes}
    lines = [
        "digraph component_window {",
        "  rankdir=TB;",
        '  node [shape=ellipse, style=filled, fillcolor="white"];',
        f'  label="window around ({report.n},{report.r}) '
        f'source module m={report.m}";',
    ]
    levels: dict[int, list[WindowNode]] = {}
    for nd in report.nodes:
        levels.setdefault(nd.quasi_length, []).append(nd)
    for ql in sorted(levels, reverse=True):
        row = sorted(levels[ql], key=lambda nd: -nd.offset)
        lines.append("  { rank=same; " +
                     " ".join(f'"{_node_id(nd)}";' for nd in row) + " }")
    for nd in report.nodes:
        style = _DOT_STYLE.get(nd.classification, _DOT_STYLE[None])
        attrs = style.strip()[1:-1]  # "fillcolor=..., fontcolor=..."
        lines.append(
            f'  "{_node_id(nd)}" [{attrs}, label="{_dims_label(nd)}"];'
        )
    for src, dst in _mesh_edges(index):
        lines.append(f'  "{_node_id(index[src])}" -> "{_node_id(index[dst])}";')
    for (off, ql) in sorted(index, key=lambda t: (t[1], -t[0])):
        if (off + 1, ql) in index:
            lines.append(
                f'  "{_node_id(index[(off, ql)])}" -> '
                f'"{_node_id(index[(off + 1, ql)])}" '
                "[style=dashed, constraint=false];"
            )
    lines.append("}")
    return "\n".join(lines) + "\n"


def component_ascii(report: ComponentReport) -> str:
    """Render a component window as layered text.

    Quasi-length grows upward (quasi-simple row at the bottom); applying
    the translate moves one column to the left, so the leftmost column is
    the deepest translate and the rightmost the deepest inverse translate.
    """
    index = {(nd.offset, nd.quasi_length): nd for nd in report.nodes}
    if not index:
        return "(empty window)\n"
    offsets = sorted({off for off, _ in index}, reverse=True)
    max_ql = max(ql for _, ql in index)
    labels = {key: f"{_ASCII_MARK.get(nd.classification, '.')}{_dims_label(nd)}"
              for key, nd in index.items()}
    cell = max(len(s) for s in labels.values()) + 2
    half = cell // 2

    def xpos(off: int, ql: int) -> int:
        return offsets.index(off) * cell + (ql - 1) * half

    width = max(xpos(off, ql) + len(labels[(off, ql)])
                for off, ql in index) + 1
    rows: list[str] = []
    for ql in range(max_ql, 0, -1):
        line = [" "] * width
        for off in offsets:
            if (off, ql) not in index:
                continue
            x = xpos(off, ql)
            for k, ch in enumerate(labels[(off, ql)]):
                line[x + k] = ch
        rows.append("".join(line).rstrip())
        if ql == 1:
            break
        joint = [" "] * width
        for off in offsets:
            # up-right arrow (off, ql-1) -> (off, ql)
            if (off, ql - 1) in index and (off, ql) in index:
                x = (xpos(off, ql - 1) + xpos(off, ql)) // 2 + 1
                joint[x] = "/"
            # down-right arrow (off, ql) -> (off-1, ql-1)
            if (off, ql) in index and (off - 1, ql - 1) in index:
                x = (xpos(off, ql) + xpos(off - 1, ql - 1)) // 2 + 1
                joint[x] = "\\"
        rows.append("".join(joint).rstrip())
    rows.append("")
    rows.append("legend: o equal images   # equal kernels   x neither   "
                "P projective   I injective   . unclassified")
    rows.append("translate direction: right to left "
                "(leftmost column = deepest translate)")
    if report.wc_count is not None:
        rows.append(f"neither-count: {report.wc_count}")
    for note in report.notes:
        rows.append(f"note: {note}")
    return "\n".join(rows) + "\n"
