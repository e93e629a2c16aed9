"""Random vertex sparsification to girth >= 2k, with expectation diagnostics.

Each attempt keeps every vertex independently with probability
p = 1/d^(1-eps), eps = 1/(2kt), then deletes a hitting set of the surviving
short cycles (greedy max-coverage by default; the one-vertex-per-cycle
baseline, selectable by flag, satisfies the exact edge-loss accounting
loss <= 2*X1 + X2 on every trial).  A success must end with average degree
at least t; girth >= 2k holds by construction and is re-audited anyway.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass
from fractions import Fraction

from .detect import count_short_cycles, enumerate_short_cycles, girth
from .errors import ParameterError
from .generate import Seed
from .graph import (
    BipartiteGraph,
    InducedSelection,
    Side,
    VertexRef,
    average_degree,
    induced_subgraph,
    make_selection,
)

HITTING_MODES = ("greedy", "per-cycle")


@dataclass(frozen=True)
class SparsifyParams:
    t: int  # target average degree; 0 is the documented fallback mode
    k: int  # output girth target is 2k
    seed: Seed
    lambda_reg: int = 1
    max_retries: int = 20

    def __post_init__(self):
        if self.t < 0 or self.k < 2 or self.lambda_reg < 1 or self.max_retries < 1:
            raise ParameterError(
                "need t >= 0 (0 = fallback), k >= 2, lambda_reg >= 1, retries >= 1"
            )


@dataclass(frozen=True)
class SparsifyDiagnostics:
    d: Fraction
    epsilon: Fraction
    p: float
    sampled_vertices: int
    sampled_edges: int
    short_cycles_found: int
    incident_edge_tally: int
    vertices_deleted: int
    final_girth: int | float
    final_avg_deg: Fraction


@dataclass(frozen=True)
class SparsifyResult:
    success: bool
    selection: InducedSelection | None
    diagnostics: SparsifyDiagnostics
    attempts: int


def sampling_probability(g: BipartiteGraph, params: SparsifyParams) -> tuple[Fraction, Fraction, float]:
    """(d, eps, p) for this input; d must exceed 1 so that p <= 1."""
    d = average_degree(g)
    if d <= 1:
        raise ParameterError(
            f"average degree {d} too small: p = 1/d^(1-eps) needs d > 1"
        )
    eps = Fraction(1, 2 * params.k * params.t) if params.t >= 1 else Fraction(0)
    p = math.exp((float(eps) - 1.0) * math.log(float(d)))
    return d, eps, min(p, 1.0)


def _sample_vertices(g: BipartiteGraph, p: float, seed: Seed) -> tuple[list[int], list[int]]:
    rng = seed.rng()
    kept_a = [a for a in range(g.n_a) if rng.random() < p]
    kept_b = [b for b in range(g.n_b) if rng.random() < p]
    return kept_a, kept_b


def _cycle_vertex_sets(
    sub: BipartiteGraph, cycles: list[tuple[VertexRef, ...]]
) -> list[frozenset[int]]:
    """Cycles as sets of global ids of ``sub`` (A first, then B)."""
    out = []
    for cyc in cycles:
        out.append(
            frozenset(
                v.index if v.side is Side.A else sub.n_a + v.index for v in cyc
            )
        )
    return out


def _greedy_hitting(cycle_sets: list[frozenset[int]]) -> set[int]:
    remaining = list(cycle_sets)
    deleted: set[int] = set()
    while remaining:
        counts: dict[int, int] = {}
        for cyc in remaining:
            for v in cyc:
                counts[v] = counts.get(v, 0) + 1
        victim = max(counts, key=lambda v: (counts[v], -v))
        deleted.add(victim)
        remaining = [cyc for cyc in remaining if victim not in cyc]
    return deleted


def _per_cycle_hitting(cycle_sets: list[frozenset[int]]) -> set[int]:
    # One vertex from *each* enumerated cycle; choices may coincide.
    return {min(cyc) for cyc in cycle_sets}


def sparsify_high_girth(
    g: BipartiteGraph,
    params: SparsifyParams,
    hitting_mode: str = "greedy",
) -> SparsifyResult:
    """Sample at p, hit the short cycles, keep the survivor if its average
    degree reaches t.  On failure after max_retries the best attempt (by
    final average degree) is reported with success=False."""
    if hitting_mode not in HITTING_MODES:
        raise ParameterError(f"hitting_mode must be one of {HITTING_MODES}")
    if g.vertex_count() == 0:
        raise ParameterError("empty graph")
    d, eps, p = sampling_probability(g, params)

    best: SparsifyResult | None = None
    for attempt in range(params.max_retries):
        kept_a, kept_b = _sample_vertices(g, p, params.seed.child(f"attempt:{attempt}"))
        sample_sel = make_selection(g, kept_a, kept_b)
        sub, sub_a, sub_b = induced_subgraph(sample_sel)
        cycles = enumerate_short_cycles(sub, 2 * params.k)
        cycle_sets = _cycle_vertex_sets(sub, cycles)
        x2 = _incident_pair_tally(sub, cycle_sets)
        deleted = (
            _greedy_hitting(cycle_sets)
            if hitting_mode == "greedy"
            else _per_cycle_hitting(cycle_sets)
        )
        survive_a = [sub_a[v] for v in range(sub.n_a) if v not in deleted]
        survive_b = [
            sub_b[v - sub.n_a]
            for v in range(sub.n_a, sub.n_a + sub.n_b)
            if v not in deleted
        ]
        survivor_sel = make_selection(g, survive_a, survive_b)
        survivor, _, _ = induced_subgraph(survivor_sel)
        final_girth = girth(survivor)
        final_avg = average_degree(survivor)
        assert count_short_cycles(survivor, 2 * params.k).total == 0
        assert final_girth >= 2 * params.k
        diag = SparsifyDiagnostics(
            d=d,
            epsilon=eps,
            p=p,
            sampled_vertices=sub.vertex_count(),
            sampled_edges=sub.edge_count,
            short_cycles_found=len(cycles),
            incident_edge_tally=x2,
            vertices_deleted=len(deleted),
            final_girth=final_girth,
            final_avg_deg=final_avg,
        )
        result = SparsifyResult(final_avg >= params.t, survivor_sel, diag, attempt + 1)
        if result.success:
            return result
        if best is None or diag.final_avg_deg > best.diagnostics.final_avg_deg:
            best = SparsifyResult(False, None, diag, attempt + 1)
    assert best is not None
    return SparsifyResult(False, None, best.diagnostics, params.max_retries)


def naive_cycle_bound(n: int, d: Fraction | int, lambda_reg: int, k: int) -> int:
    """n * (lambda * ceil(d))^(2k-1): the degree-power bound on the number of
    cycles of length exactly 2k in a (d, lambda)-regular n-vertex graph."""
    if n < 1 or lambda_reg < 1 or k < 1 or Fraction(d) < 1:
        raise ParameterError("all arguments must be >= 1")
    return n * (lambda_reg * math.ceil(Fraction(d))) ** (2 * k - 1)


def _incident_pair_tally(sub: BipartiteGraph, cycle_sets: list[frozenset[int]]) -> int:
    """X2: tuples (e, C) with edge e incident to cycle C but not on it."""
    if not cycle_sets:
        return 0
    degree = [len(row) for row in sub.adj_a] + [len(col) for col in sub.adj_b]
    total = 0
    for cyc in cycle_sets:
        inside = 0
        for v in cyc:
            if v < sub.n_a:
                inside += sum(1 for b in sub.adj_a[v] if sub.n_a + b in cyc)
        incident = sum(degree[v] for v in cyc) - inside
        total += incident - len(cyc)  # a cycle on 2j vertices has 2j edges
    return total


@dataclass(frozen=True)
class ExpectationReport:
    trials: int
    p: float
    predicted_vertex_mean: float
    predicted_edge_mean: float
    observed_vertex_mean: float
    observed_edge_mean: float
    vertex_stderr: float
    edge_stderr: float
    x1_mean: float
    x2_mean: float
    edge_loss_bound_held: bool
    worst_slack: int


def expectation_diagnostics(
    g: BipartiteGraph,
    params: SparsifyParams,
    trials: int,
    seed: Seed,
    p_override: float | None = None,
) -> ExpectationReport:
    """Monte-Carlo check of E|V(H)| = p*n and E|E(H)| = p^2*d*n/2, plus the
    per-trial edge-loss accounting for the one-vertex-per-cycle baseline."""
    if trials < 30:
        raise ParameterError("need at least 30 trials for a standard error")
    if p_override is not None:
        if not 0 < p_override <= 1:
            raise ParameterError("p_override must lie in (0, 1]")
        p = p_override
    else:
        _, _, p = sampling_probability(g, params)
    n = g.vertex_count()
    vertex_counts: list[int] = []
    edge_counts: list[int] = []
    x1s: list[int] = []
    x2s: list[int] = []
    held = True
    worst = 0
    for trial in range(trials):
        kept_a, kept_b = _sample_vertices(g, p, seed.child(f"trial:{trial}"))
        sub, _, _ = induced_subgraph(make_selection(g, kept_a, kept_b))
        cycles = enumerate_short_cycles(sub, 2 * params.k)
        cycle_sets = _cycle_vertex_sets(sub, cycles)
        x1 = len(cycle_sets)
        x2 = _incident_pair_tally(sub, cycle_sets)
        deleted = _per_cycle_hitting(cycle_sets)
        lost = 0
        for v in deleted:
            if v < sub.n_a:
                lost += len(sub.adj_a[v])
            else:
                lost += len(sub.adj_b[v - sub.n_a])
        # edges between two deleted vertices were double-counted
        for v in deleted:
            if v < sub.n_a:
                lost -= sum(1 for b in sub.adj_a[v] if sub.n_a + b in deleted)
        slack = 2 * x1 + x2 - lost
        if slack < 0:
            held = False
        worst = min(worst, slack) if trial else slack
        vertex_counts.append(sub.vertex_count())
        edge_counts.append(sub.edge_count)
        x1s.append(x1)
        x2s.append(x2)
    return ExpectationReport(
        trials=trials,
        p=p,
        predicted_vertex_mean=p * n,
        predicted_edge_mean=p * p * g.edge_count,
        observed_vertex_mean=statistics.mean(vertex_counts),
        observed_edge_mean=statistics.mean(edge_counts),
        vertex_stderr=statistics.stdev(vertex_counts) / math.sqrt(trials),
        edge_stderr=statistics.stdev(edge_counts) / math.sqrt(trials),
        x1_mean=statistics.mean(x1s),
        x2_mean=statistics.mean(x2s),
        edge_loss_bound_held=held,
        worst_slack=worst,
    )
