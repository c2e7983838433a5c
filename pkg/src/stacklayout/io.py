"""Plain-text graph and layout formats.

Graph::

    dag <n> <m>
    <u> <v>          # m lines, 0-indexed

Layout::

    order: v0 v1 ... v(n-1)
    <u> <v> <page>   # one line per edge
    parts: H1=0..2 s=2 ...   # optional

``#`` starts a comment anywhere on a line.
"""

from __future__ import annotations

from pathlib import Path

from .graph import Dag, GraphError, LinearOrder, PartitionedOrder, StackLayout


class FormatError(GraphError):
    pass


def _lines(text: str) -> list[tuple[int, list[str]]]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((lineno, line.split()))
    return out


def parse_graph(text: str) -> Dag:
    lines = _lines(text)
    if not lines:
        raise FormatError("empty graph file")
    lineno, head = lines[0]
    if len(head) != 3 or head[0] != "dag":
        raise FormatError(f"line {lineno}: expected 'dag <n> <m>'")
    try:
        n, m = int(head[1]), int(head[2])
    except ValueError as exc:
        raise FormatError(f"line {lineno}: bad header numbers") from exc
    body = lines[1:]
    if len(body) != m:
        raise FormatError(f"header announces {m} edges, found {len(body)}")
    edges = []
    for lineno, toks in body:
        if len(toks) != 2:
            raise FormatError(f"line {lineno}: expected '<u> <v>'")
        try:
            edges.append((int(toks[0]), int(toks[1])))
        except ValueError as exc:
            raise FormatError(f"line {lineno}: non-integer vertex") from exc
    try:
        return Dag(n, edges)
    except GraphError as exc:
        raise FormatError(str(exc)) from exc


def format_graph(g: Dag) -> str:
    rows = [f"dag {g.n} {g.m}"]
    rows.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(rows) + "\n"


def read_graph(path: str | Path) -> Dag:
    return parse_graph(Path(path).read_text())


def write_graph(g: Dag, path: str | Path) -> None:
    Path(path).write_text(format_graph(g))


def parse_layout(text: str) -> tuple[LinearOrder, dict[tuple[int, int], int]]:
    """Return the order and the (possibly empty) page map of a layout file."""
    order = None
    pages: dict[tuple[int, int], int] = {}
    for lineno, toks in _lines(text):
        if toks[0] == "order:":
            try:
                order = LinearOrder(int(t) for t in toks[1:])
            except (ValueError, GraphError) as exc:
                raise FormatError(f"line {lineno}: bad order ({exc})") from exc
        elif toks[0] == "parts:":
            continue
        elif len(toks) == 3:
            try:
                u, v, p = (int(t) for t in toks)
            except ValueError as exc:
                raise FormatError(f"line {lineno}: non-integer field") from exc
            pages[(u, v)] = p
        else:
            raise FormatError(f"line {lineno}: expected '<u> <v> <page>'")
    if order is None:
        raise FormatError("layout file has no 'order:' line")
    return order, pages


def format_layout(
    g: Dag,
    order: LinearOrder,
    page_of: dict[tuple[int, int], int] | None = None,
    parts: PartitionedOrder | None = None,
) -> str:
    rows = ["order: " + " ".join(map(str, order.vertices))]
    if page_of is not None:
        rows.extend(f"{u} {v} {page_of[(u, v)]}" for u, v in g.edges)
    if parts is not None:
        rows.append(parts.format())
    return "\n".join(rows) + "\n"


def layout_from_text(text: str) -> StackLayout:
    order, pages = parse_layout(text)
    k = max(pages.values(), default=-1) + 1
    return StackLayout(order, pages, k)
