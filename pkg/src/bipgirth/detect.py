"""Exact structural detectors: girth, short-cycle census, biclique search.

Vertices are ordered globally for canonicalization purposes: side A first
(global id = index), then side B (global id = n_a + index).  A cycle's
canonical form starts at its least global id and takes the lexicographically
smaller of the two traversal directions.
"""

from __future__ import annotations

import math
import os
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .errors import EnumerationCapExceeded, ParameterError, SearchBudgetExceeded
from .graph import BipartiteGraph, Side, VertexRef

DEFAULT_CYCLE_CAP = 10_000_000
_CYCLE_CAP_ENV = "BIPGIRTH_CYCLE_CAP"


def _global_adjacency(g: BipartiteGraph) -> list[tuple[int, ...]]:
    n_a = g.n_a
    adj: list[tuple[int, ...]] = []
    for row in g.adj_a:
        adj.append(tuple(n_a + b for b in row))
    for col in g.adj_b:
        adj.append(col)
    return adj


def _to_ref(g: BipartiteGraph, v: int) -> VertexRef:
    if v < g.n_a:
        return VertexRef(Side.A, v)
    return VertexRef(Side.B, v - g.n_a)


def girth(g: BipartiteGraph) -> int | float:
    """Length of a shortest cycle; math.inf for forests.

    Exact: BFS from every vertex, taking the best cycle closed by a non-tree
    edge (the minimum over all start vertices equals the girth).
    """
    adj = _global_adjacency(g)
    n = len(adj)
    best: int | float = math.inf
    dist = [-1] * n
    parent = [-1] * n
    for s in range(n):
        if not adj[s]:
            continue
        touched = [s]
        dist[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] >= best:
                break
            for w in adj[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    touched.append(w)
                    queue.append(w)
                elif w != parent[u]:
                    cand = dist[u] + dist[w] + 1
                    if cand < best:
                        best = cand
        for v in touched:
            dist[v] = -1
            parent[v] = -1
    return best


@dataclass(frozen=True)
class CycleCensus:
    max_length: int
    counts_by_length: dict[int, int]
    total: int


def _resolve_cap(cap: int | None) -> int:
    if cap is not None:
        return cap
    env = os.environ.get(_CYCLE_CAP_ENV)
    return int(env) if env else DEFAULT_CYCLE_CAP


def _enumerate_global(g: BipartiteGraph, max_len: int, cap: int | None):
    """Yield cycles of length <= max_len as tuples of global ids, each once.

    DFS paths are rooted at the least vertex of each cycle (only larger ids
    may appear later), and requiring path[1] < path[-1] picks the
    lexicographically smaller orientation.  Yields lazily so counting does
    not materialize the list; the cap aborts as soon as it is crossed.
    """
    if max_len < 4 or max_len % 2 != 0:
        raise ParameterError(f"max cycle length must be even and >= 4, got {max_len}")
    limit = _resolve_cap(cap)
    adj = _global_adjacency(g)
    n = len(adj)
    yielded = 0
    path: list[int] = []
    on_path = [False] * n
    for s in range(n):
        if len(adj[s]) < 2:
            continue
        path.append(s)
        on_path[s] = True
        stack: list[tuple[int, int]] = [(s, 0)]  # (vertex, next-neighbour slot)
        while stack:
            u, slot = stack[-1]
            if slot < len(adj[u]):
                stack[-1] = (u, slot + 1)
                w = adj[u][slot]
                if w == s and len(path) >= 4 and path[1] < path[-1]:
                    yielded += 1
                    if yielded > limit:
                        raise EnumerationCapExceeded(
                            f"more than {limit} cycles of length <= {max_len}"
                        )
                    yield tuple(path)
                elif w > s and not on_path[w] and len(path) < max_len:
                    path.append(w)
                    on_path[w] = True
                    stack.append((w, 0))
            else:
                stack.pop()
                on_path[path.pop()] = False


def enumerate_short_cycles(
    g: BipartiteGraph, max_len: int, cap: int | None = None
) -> list[tuple[VertexRef, ...]]:
    """All cycles of length <= max_len, each once, in canonical form."""
    return [
        tuple(_to_ref(g, v) for v in cyc) for cyc in _enumerate_global(g, max_len, cap)
    ]


def count_short_cycles(
    g: BipartiteGraph, max_len: int, cap: int | None = None
) -> CycleCensus:
    """Exact counts of distinct cycles by length, up to max_len."""
    counts = {length: 0 for length in range(4, max_len + 1, 2)}
    for cyc in _enumerate_global(g, max_len, cap):
        counts[len(cyc)] += 1
    return CycleCensus(max_len, counts, sum(counts.values()))


@dataclass(frozen=True)
class BicliqueWitness:
    """A claimed complete bipartite subgraph with side-of-origin labels.

    The side named by ``s_side`` carries ``s`` vertices, the other ``t``.
    """

    side_in_a: tuple[int, ...]
    side_in_b: tuple[int, ...]
    s: int
    t: int
    s_side: Side = Side.A


def verify_biclique(g: BipartiteGraph, w: BicliqueWitness) -> bool:
    """True iff the witness invariants all hold in g (never raises)."""
    if w.s < 1 or w.t < 1:
        return False
    want_a = w.s if w.s_side is Side.A else w.t
    want_b = w.t if w.s_side is Side.A else w.s
    if len(w.side_in_a) != want_a or len(w.side_in_b) != want_b:
        return False
    if len(set(w.side_in_a)) != len(w.side_in_a):
        return False
    if len(set(w.side_in_b)) != len(w.side_in_b):
        return False
    if any(not 0 <= a < g.n_a for a in w.side_in_a):
        return False
    if any(not 0 <= b < g.n_b for b in w.side_in_b):
        return False
    return all(g.has_edge(a, b) for a in w.side_in_a for b in w.side_in_b)


def _prune_candidates(
    g: BipartiteGraph, s_side: Side, s: int, t: int
) -> tuple[list[int], list[int]]:
    """Iteratively drop s-side vertices of degree < t and opposite-side
    vertices of degree < s (degrees within the surviving subgraph).  Any
    K_{s,t} placed accordingly survives in full."""
    adj_s = g.adjacency(s_side)
    adj_o = g.adjacency(s_side.other())
    cand_s = set(range(g.side_size(s_side)))
    cand_o = set(range(g.side_size(s_side.other())))
    changed = True
    while changed:
        changed = False
        drop = [v for v in cand_s if sum(u in cand_o for u in adj_s[v]) < t]
        if drop:
            cand_s.difference_update(drop)
            changed = True
        drop = [u for u in cand_o if sum(v in cand_s for v in adj_o[u]) < s]
        if drop:
            cand_o.difference_update(drop)
            changed = True
    return sorted(cand_s), sorted(cand_o)


def find_biclique(
    g: BipartiteGraph,
    s: int,
    t: int,
    s_side: Side = Side.A,
    work_limit: int | None = None,
) -> BicliqueWitness | None:
    """Exact search for a K_{s,t} whose s-sized side lies on ``s_side``.

    Returns None only when no such biclique exists.  The search enumerates
    subsets of whichever side has fewer candidate subsets after pruning;
    ``work_limit`` bounds subset expansions and raises SearchBudgetExceeded
    when spent (distinct from "none exists").
    """
    if s < 1 or t < 1:
        raise ParameterError("biclique sides must be >= 1")
    cand_s, cand_o = _prune_candidates(g, s_side, s, t)
    if len(cand_s) < s or len(cand_o) < t:
        return None

    from_s = math.comb(len(cand_s), s) <= math.comb(len(cand_o), t)
    if from_s:
        pool, pick, need = cand_s, s, t
        adj = g.adjacency(s_side)
        universe = set(cand_o)
    else:
        pool, pick, need = cand_o, t, s
        adj = g.adjacency(s_side.other())
        universe = set(cand_s)

    work = 0

    def expand(start: int, chosen: list[int], common: set[int]) -> tuple[list[int], list[int]] | None:
        nonlocal work
        if len(chosen) == pick:
            return chosen[:], sorted(common)[:need]
        for idx in range(start, len(pool)):
            if len(pool) - idx < pick - len(chosen):
                break
            v = pool[idx]
            work += 1
            if work_limit is not None and work > work_limit:
                raise SearchBudgetExceeded(f"biclique search exceeded {work_limit} expansions")
            nxt = common & set(adj[v]) if chosen else universe & set(adj[v])
            if len(nxt) < need:
                continue
            chosen.append(v)
            hit = expand(idx + 1, chosen, nxt)
            if hit is not None:
                return hit
            chosen.pop()
        return None

    found = expand(0, [], universe)
    if found is None:
        return None
    subset, partners = found
    if from_s:
        s_list, t_list = subset, partners
    else:
        s_list, t_list = partners, subset
    if s_side is Side.A:
        w = BicliqueWitness(tuple(s_list), tuple(t_list), s, t, Side.A)
    else:
        w = BicliqueWitness(tuple(t_list), tuple(s_list), s, t, Side.B)
    assert verify_biclique(g, w)
    return w


def _iroot_floor(x: int, n: int) -> int:
    """Exact floor of the n-th root of a non-negative integer."""
    if x < 0:
        raise ParameterError("negative radicand")
    if x == 0:
        return 0
    r = 1 << ((x.bit_length() + n - 1) // n)
    while True:
        nr = ((n - 1) * r + x // r ** (n - 1)) // n
        if nr >= r:
            break
        r = nr
    while r ** n > x:
        r -= 1
    while (r + 1) ** n <= x:
        r += 1
    return r


def _iroot_ceil(x: int, n: int) -> int:
    r = _iroot_floor(x, n)
    return r if r ** n == x else r + 1


_KST_PRECISION_BITS = 64


def kst_edge_bound(n_per_side: int, t: int) -> Fraction:
    """Exact-rational upper bound on edges of a K_{t,t}-free bipartite graph
    with n vertices per side: (t-1)^{1/t} (n-t+1) n^{1-1/t} + (t-1) n.

    The irrational factor ((t-1) n^{t-1})^{1/t} is replaced by a scaled-integer
    ceiling, so the returned value is always >= the true bound.  Advisory
    diagnostic only; never gates extraction.
    """
    if t < 1:
        raise ParameterError("t must be >= 1")
    if n_per_side < t:
        raise ParameterError(f"need n >= t, got n={n_per_side}, t={t}")
    if t == 1:
        return Fraction(0)
    radicand = (t - 1) * n_per_side ** (t - 1)
    scaled = _iroot_ceil(radicand << (t * _KST_PRECISION_BITS), t)
    root_ub = Fraction(scaled, 1 << _KST_PRECISION_BITS)
    return (n_per_side - t + 1) * root_ub + (t - 1) * n_per_side


def count_paths_from_edge(g: BipartiteGraph, a: int, b: int, edge_count: int) -> int:
    """Number of simple paths with ``edge_count`` edges whose first edge is
    (a, b) traversed from a to b.  Small-scale diagnostic used to check the
    per-edge path bound Delta^(k-1)."""
    adj = _global_adjacency(g)
    start, second = a, g.n_a + b
    total = 0

    def walk(u: int, used: set[int], left: int) -> None:
        nonlocal total
        if left == 0:
            total += 1
            return
        for w in adj[u]:
            if w not in used:
                used.add(w)
                walk(w, used, left - 1)
                used.remove(w)

    walk(second, {start, second}, edge_count - 1)
    return total
