"""Immutable bipartite graphs, induced-subgraph algebra and the text format.

A graph has ``n_a`` vertices on side A and ``n_b`` on side B, both densely
0-indexed per side.  Adjacency is stored twice (A->B and B->A) as sorted
tuples; graphs are hashable values and safe to share.  Degrees of a vertex
subset are always measured in the ambient graph; anything that needs degrees
*inside* a selection must materialize the selection first.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, TextIO

from .errors import GraphConstructionError, GraphFormatError, SelectionError


class Side(enum.Enum):
    A = "A"
    B = "B"

    def other(self) -> "Side":
        return Side.B if self is Side.A else Side.A


@dataclass(frozen=True)
class VertexRef:
    """A vertex named by (side, per-side index)."""

    side: Side
    index: int

    def sort_key(self) -> tuple[int, int]:
        # Total order used by cycle canonicalization: all of A before all of B.
        return (0 if self.side is Side.A else 1, self.index)


@dataclass(frozen=True)
class BipartiteGraph:
    n_a: int
    n_b: int
    adj_a: tuple[tuple[int, ...], ...]
    adj_b: tuple[tuple[int, ...], ...]
    edge_count: int

    def degree_a(self, a: int) -> int:
        return len(self.adj_a[a])

    def degree_b(self, b: int) -> int:
        return len(self.adj_b[b])

    def has_edge(self, a: int, b: int) -> bool:
        row = self.adj_a[a]
        lo, hi = 0, len(row)
        while lo < hi:
            mid = (lo + hi) // 2
            if row[mid] < b:
                lo = mid + 1
            else:
                hi = mid
        return lo < len(row) and row[lo] == b

    def edges(self) -> Iterator[tuple[int, int]]:
        for a, row in enumerate(self.adj_a):
            for b in row:
                yield (a, b)

    def vertex_count(self) -> int:
        return self.n_a + self.n_b

    def adjacency(self, side: Side) -> tuple[tuple[int, ...], ...]:
        return self.adj_a if side is Side.A else self.adj_b

    def side_size(self, side: Side) -> int:
        return self.n_a if side is Side.A else self.n_b


def build_graph(n_a: int, n_b: int, edges: Iterable[tuple[int, int]]) -> BipartiteGraph:
    """Build a simple bipartite graph; duplicate edges collapse silently.

    Raises GraphConstructionError naming the first offending edge whose
    endpoint is out of range.
    """
    if n_a < 0 or n_b < 0:
        raise GraphConstructionError(f"negative side size ({n_a}, {n_b})")
    rows: list[set[int]] = [set() for _ in range(n_a)]
    for a, b in edges:
        if not (0 <= a < n_a and 0 <= b < n_b):
            raise GraphConstructionError(
                f"edge ({a}, {b}) out of range for sides ({n_a}, {n_b})"
            )
        rows[a].add(b)
    adj_a = tuple(tuple(sorted(r)) for r in rows)
    cols: list[list[int]] = [[] for _ in range(n_b)]
    for a, row in enumerate(adj_a):
        for b in row:
            cols[b].append(a)
    adj_b = tuple(tuple(c) for c in cols)  # already sorted: a ascends
    m = sum(len(r) for r in adj_a)
    return BipartiteGraph(n_a, n_b, adj_a, adj_b, m)


def check_invariants(g: BipartiteGraph) -> None:
    """O(m) structural audit: sortedness, mirror consistency, edge count."""
    for row in g.adj_a:
        assert all(row[i] < row[i + 1] for i in range(len(row) - 1)), "A row unsorted"
    for col in g.adj_b:
        assert all(col[i] < col[i + 1] for i in range(len(col) - 1)), "B row unsorted"
    m_a = sum(len(r) for r in g.adj_a)
    m_b = sum(len(c) for c in g.adj_b)
    assert m_a == m_b == g.edge_count, "edge count mismatch"
    mirror = {(a, b) for a, row in enumerate(g.adj_a) for b in row}
    back = {(a, b) for b, col in enumerate(g.adj_b) for a in col}
    assert mirror == back, "adjacency mirrors disagree"


@dataclass(frozen=True)
class InducedSelection:
    """A pair of vertex subsets denoting an induced subgraph of ``parent``."""

    parent: BipartiteGraph
    subset_a: frozenset[int]
    subset_b: frozenset[int]

    def __post_init__(self):
        for a in self.subset_a:
            if not 0 <= a < self.parent.n_a:
                raise SelectionError(f"A-index {a} out of range")
        for b in self.subset_b:
            if not 0 <= b < self.parent.n_b:
                raise SelectionError(f"B-index {b} out of range")


def make_selection(
    parent: BipartiteGraph, subset_a: Iterable[int], subset_b: Iterable[int]
) -> InducedSelection:
    return InducedSelection(parent, frozenset(subset_a), frozenset(subset_b))


def induced_subgraph(
    sel: InducedSelection,
) -> tuple[BipartiteGraph, tuple[int, ...], tuple[int, ...]]:
    """Materialize a selection.

    Returns (graph, a_map, b_map) where the maps send new dense indices back
    to the parent's indices (ascending order).
    """
    a_map = tuple(sorted(sel.subset_a))
    b_map = tuple(sorted(sel.subset_b))
    a_new = {old: new for new, old in enumerate(a_map)}
    b_new = {old: new for new, old in enumerate(b_map)}
    edges = [
        (a_new[a], b_new[b])
        for a in a_map
        for b in sel.parent.adj_a[a]
        if b in b_new
    ]
    return build_graph(len(a_map), len(b_map), edges), a_map, b_map


@dataclass(frozen=True)
class DegreeStats:
    """min/max/average degree of a vertex set; all zero when it is empty."""

    min_deg: int
    max_deg: int
    avg_deg: Fraction


def degree_stats(
    g: BipartiteGraph, side: Side, subset: Iterable[int] | None = None
) -> DegreeStats:
    """Degree statistics of ``subset`` on ``side``, measured in ``g``.

    ``subset=None`` means the whole side.  The average is the exact mean
    degree of the subset's vertices.
    """
    adj = g.adjacency(side)
    n = g.side_size(side)
    if subset is None:
        indices: Sequence[int] = range(n)
    else:
        indices = sorted(set(subset))
        for v in indices:
            if not 0 <= v < n:
                raise SelectionError(f"{side.value}-index {v} out of range")
    if not indices:
        return DegreeStats(0, 0, Fraction(0))
    degs = [len(adj[v]) for v in indices]
    return DegreeStats(min(degs), max(degs), Fraction(sum(degs), len(degs)))


def average_degree(g: BipartiteGraph) -> Fraction:
    """Exact average degree 2|E|/|V| of the whole graph (0 if no vertices)."""
    n = g.vertex_count()
    if n == 0:
        return Fraction(0)
    return Fraction(2 * g.edge_count, n)


def is_r_regular_side(
    g: BipartiteGraph, side: Side, subset: Iterable[int] | None, r: int
) -> bool:
    """True iff the subset is non-empty and every vertex has degree exactly r
    in ``g``.  The empty set is never r-regular."""
    adj = g.adjacency(side)
    if subset is None:
        subset = range(g.side_size(side))
    vs = list(subset)
    if not vs:
        return False
    return all(len(adj[v]) == r for v in vs)


# ----------------------------------------------------------------------------
# Text format: `bip <nA> <nB> <m>` header, then `e <a> <b>` lines sorted by
# (a, b); `#` starts a comment.  This is the interchange for the CLI.
# ----------------------------------------------------------------------------


def write_graph(g: BipartiteGraph, out: TextIO) -> None:
    out.write(f"bip {g.n_a} {g.n_b} {g.edge_count}\n")
    for a, b in g.edges():  # adj_a rows are sorted, so (a, b) ascends
        out.write(f"e {a} {b}\n")


def graph_to_text(g: BipartiteGraph) -> str:
    import io

    buf = io.StringIO()
    write_graph(g, buf)
    return buf.getvalue()


def write_selection(sel: InducedSelection, out: TextIO) -> None:
    """Vertex-list artifact: `sel <#A> <#B>` header, then sorted `a <i>` and
    `b <j>` lines."""
    out.write(f"sel {len(sel.subset_a)} {len(sel.subset_b)}\n")
    for a in sorted(sel.subset_a):
        out.write(f"a {a}\n")
    for b in sorted(sel.subset_b):
        out.write(f"b {b}\n")


def parse_selection(text: str, parent: BipartiteGraph) -> InducedSelection:
    subset_a: list[int] = []
    subset_b: list[int] = []
    header_seen = False
    for line_no, raw in enumerate(str(text).splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "sel":
            header_seen = True
        elif parts[0] == "a" and len(parts) == 2:
            subset_a.append(int(parts[1]))
        elif parts[0] == "b" and len(parts) == 2:
            subset_b.append(int(parts[1]))
        else:
            raise GraphFormatError(f"unknown selection record {parts[0]!r}", line_no)
    if not header_seen:
        raise GraphFormatError("missing 'sel' header")
    try:
        return make_selection(parent, subset_a, subset_b)
    except SelectionError as exc:
        raise GraphFormatError(str(exc)) from exc


def parse_graph(text: str | TextIO) -> BipartiteGraph:
    if hasattr(text, "read"):
        text = text.read()  # type: ignore[union-attr]
    header: tuple[int, int, int] | None = None
    edges: list[tuple[int, int]] = []
    for line_no, raw in enumerate(str(text).splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "bip":
            if header is not None:
                raise GraphFormatError("duplicate header", line_no)
            if len(parts) != 4:
                raise GraphFormatError("header needs 'bip <nA> <nB> <m>'", line_no)
            try:
                header = (int(parts[1]), int(parts[2]), int(parts[3]))
            except ValueError:
                raise GraphFormatError("non-integer header field", line_no) from None
        elif parts[0] == "e":
            if header is None:
                raise GraphFormatError("edge before header", line_no)
            if len(parts) != 3:
                raise GraphFormatError("edge needs 'e <a> <b>'", line_no)
            try:
                edges.append((int(parts[1]), int(parts[2])))
            except ValueError:
                raise GraphFormatError("non-integer edge endpoint", line_no) from None
        else:
            raise GraphFormatError(f"unknown record {parts[0]!r}", line_no)
    if header is None:
        raise GraphFormatError("missing 'bip' header")
    n_a, n_b, m = header
    try:
        g = build_graph(n_a, n_b, edges)
    except GraphConstructionError as exc:
        raise GraphFormatError(str(exc)) from exc
    if g.edge_count != m:
        raise GraphFormatError(
            f"header claims {m} edges, file has {g.edge_count} distinct"
        )
    return g
