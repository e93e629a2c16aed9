"""The (r,t)-partition layer, the girth-6 dichotomy and iterated extraction.

An (r,t)-partition splits B into r blocks so that every vertex of a core
A-set meets each block, and any cross-block pair of B-vertices with two
common core neighbours forces every intersecting cross-block pair of those
blocks to share at least t.  Partitions are found by search (exact for tiny
B, repair heuristic otherwise) and checked by an explicit verifier; the
existence guarantee behind them holds only at scales far beyond anything
runnable, so achieved core sizes are reported, never promised.

Every outcome that leaves this module is audited against its own claims
first; a failed audit becomes an error (or an exhaustion entry in the
iterated pipeline), never a result.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .detect import BicliqueWitness, count_short_cycles, girth, verify_biclique
from .errors import (
    AuditError,
    NeitherError,
    ParameterError,
    PartitionStructureError,
    PartitionUnavailableError,
    PreconditionError,
)
from .generate import Seed
from .graph import (
    BipartiteGraph,
    InducedSelection,
    Side,
    average_degree,
    induced_subgraph,
    is_r_regular_side,
    make_selection,
)


@dataclass(frozen=True)
class RTPartition:
    """r ordered blocks covering B, plus the core A-set they serve."""

    blocks: tuple[frozenset[int], ...]
    a_core: frozenset[int]
    r: int
    t: int


@dataclass(frozen=True)
class RTVerifyReport:
    ok: bool
    violations: tuple[str, ...]


@dataclass(frozen=True)
class NeighbourlyGraph:
    """Block-index graph: {i, j} is an edge iff blocks i and j contain a
    cross pair with at least two common core neighbours."""

    order: int
    edges: frozenset[tuple[int, int]]

    def degree(self, i: int) -> int:
        return sum(1 for e in self.edges if i in e)

    def neighbours(self, i: int) -> tuple[int, ...]:
        return tuple(sorted(j for e in self.edges for j in e if i in e and j != i))


def _core_neighbour_sets(
    g: BipartiteGraph, a_core: frozenset[int]
) -> dict[int, frozenset[int]]:
    return {b: frozenset(a_core.intersection(g.adj_b[b])) for b in range(g.n_b)}


def verify_rt_partition(g: BipartiteGraph, part: RTPartition) -> RTVerifyReport:
    """Check both partition invariants; violations name the offender.

    Malformed structure (overlapping blocks, or blocks not covering B)
    raises PartitionStructureError before any semantic check.
    """
    if len(part.blocks) != part.r:
        raise PartitionStructureError(
            f"{len(part.blocks)} blocks but r={part.r}"
        )
    seen: set[int] = set()
    total = 0
    for i, block in enumerate(part.blocks):
        for b in block:
            if not 0 <= b < g.n_b:
                raise PartitionStructureError(f"block {i} holds out-of-range {b}")
        total += len(block)
        seen.update(block)
    if total != len(seen):
        raise PartitionStructureError("blocks overlap")
    if seen != set(range(g.n_b)):
        raise PartitionStructureError("blocks do not cover B")

    violations: list[str] = []
    block_of = {}
    for i, block in enumerate(part.blocks):
        for b in block:
            block_of[b] = i
    for a in sorted(part.a_core):
        if not 0 <= a < g.n_a:
            raise PartitionStructureError(f"core A-index {a} out of range")
        met = {block_of[b] for b in g.adj_a[a]}
        for i in range(part.r):
            if i not in met:
                violations.append(f"core vertex A{a} has no neighbour in block {i}")

    core_nbrs = _core_neighbour_sets(g, part.a_core)
    for i, j in itertools.combinations(range(part.r), 2):
        pairs = [
            (u, v, len(core_nbrs[u] & core_nbrs[v]))
            for u in sorted(part.blocks[i])
            for v in sorted(part.blocks[j])
        ]
        if any(c >= 2 for _, _, c in pairs):
            for u, v, c in pairs:
                if 1 <= c < part.t:
                    violations.append(
                        f"blocks ({i},{j}): B{u} and B{v} share {c} core "
                        f"neighbours; neighbourly blocks require >= {part.t}"
                    )
    return RTVerifyReport(not violations, tuple(violations))


def neighbourly_graph(g: BipartiteGraph, part: RTPartition) -> NeighbourlyGraph:
    """Build the block graph; the partition must verify first."""
    report = verify_rt_partition(g, part)
    if not report.ok:
        raise PreconditionError(
            f"partition fails verification: {report.violations[0]}"
        )
    core_nbrs = _core_neighbour_sets(g, part.a_core)
    edges = set()
    for i, j in itertools.combinations(range(part.r), 2):
        if any(
            len(core_nbrs[u] & core_nbrs[v]) >= 2
            for u in part.blocks[i]
            for v in part.blocks[j]
        ):
            edges.add((i, j))
    return NeighbourlyGraph(part.r, frozenset(edges))


# ----------------------------------------------------------------------------
# Partition search
# ----------------------------------------------------------------------------


def _coverage_core(
    g: BipartiteGraph, a_set: frozenset[int], part_of: list[int], r: int
) -> set[int]:
    out = set()
    for a in a_set:
        met = {part_of[b] for b in g.adj_a[a]}
        if len(met) == r:
            out.add(a)
    return out


def _first_violation(
    g: BipartiteGraph, blocks: list[list[int]], a_core: set[int], t: int
) -> tuple[int, int, int, int, frozenset[int]] | None:
    """First (i, j, u, v, common core neighbours) violating the neighbourly
    condition, scanning block pairs and vertex pairs in ascending order."""
    core_nbrs = {
        b: frozenset(a for a in g.adj_b[b] if a in a_core)
        for block in blocks
        for b in block
    }
    for i, j in itertools.combinations(range(len(blocks)), 2):
        commons = [
            (u, v, core_nbrs[u] & core_nbrs[v])
            for u in sorted(blocks[i])
            for v in sorted(blocks[j])
        ]
        if any(len(c) >= 2 for _, _, c in commons):
            for u, v, c in commons:
                if 1 <= len(c) < t:
                    return (i, j, u, v, c)
    return None


def find_rt_partition(
    g: BipartiteGraph,
    a_set: frozenset[int] | set[int],
    r: int,
    t: int,
    mode: str = "auto",
    seed: Seed = Seed(0),
    heuristic_iters: int = 500,
    heuristic_restarts: int = 20,
    exact_limit: int = 12,
    exact_assignments_cap: int = 200_000,
) -> RTPartition | None:
    """Search for an (r,t)-partition of B with a non-empty core inside a_set.

    Requires a_set to be exactly r-regular in g.  Exact mode enumerates every
    r-colouring of B (only for small B) and keeps the one with the largest
    core after greedy pruning; heuristic mode repairs random partitions by
    moving offending B-vertices or banning the A-vertices realizing a
    violation.  The classical core-size guarantee is not promised; the
    achieved |core|/|A| is simply whatever the search reached.
    """
    a_set = frozenset(a_set)
    if not is_r_regular_side(g, Side.A, a_set, r):
        raise PreconditionError(f"A-set is not {r}-regular (or empty)")
    if t < 1:
        raise ParameterError("t must be >= 1")
    if mode == "auto":
        mode = "exact" if g.n_b <= exact_limit else "heuristic"

    if mode == "exact":
        if g.n_b > exact_limit or r ** g.n_b > exact_assignments_cap:
            raise ParameterError(
                f"exact mode infeasible: {r}^{g.n_b} colourings exceed the cap"
            )
        best: RTPartition | None = None
        for assignment in itertools.product(range(r), repeat=g.n_b):
            blocks = [[b for b in range(g.n_b) if assignment[b] == i] for i in range(r)]
            if any(not blk for blk in blocks):
                continue
            core = _coverage_core(g, a_set, list(assignment), r)
            while core:
                hit = _first_violation(g, blocks, core, t)
                if hit is None:
                    break
                core -= hit[4]  # drop the common neighbours realizing it
            if core and (best is None or len(core) > len(best.a_core)):
                best = RTPartition(
                    tuple(frozenset(blk) for blk in blocks), frozenset(core), r, t
                )
                if len(core) == len(a_set):
                    break
        return best

    if mode != "heuristic":
        raise ParameterError(f"unknown mode {mode!r}")
    for restart in range(heuristic_restarts):
        rng = seed.child(f"restart:{restart}").rng()
        assignment = [rng.randrange(r) for _ in range(g.n_b)]
        banned: set[int] = set()
        for _ in range(heuristic_iters):
            blocks = [[b for b in range(g.n_b) if assignment[b] == i] for i in range(r)]
            core = _coverage_core(g, a_set, assignment, r) - banned
            if not core or any(not blk for blk in blocks):
                b = rng.randrange(g.n_b)
                assignment[b] = rng.randrange(r)
                continue
            hit = _first_violation(g, blocks, core, t)
            if hit is None:
                return RTPartition(
                    tuple(frozenset(blk) for blk in blocks), frozenset(core), r, t
                )
            _, _, u, v, commons = hit
            if rng.random() < 0.5:
                cu = sum(1 for a in g.adj_b[u] if a in core)
                cv = sum(1 for a in g.adj_b[v] if a in core)
                offender = u if (cu, u) <= (cv, v) else v
                choices = [i for i in range(r) if i != assignment[offender]]
                assignment[offender] = rng.choice(choices)
            else:
                banned |= commons
    return None


# ----------------------------------------------------------------------------
# Neighbourhood deduplication and the colouring dichotomy
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class DedupeResult:
    """Either t A-vertices sharing one neighbourhood, or representatives of
    the (all-distinct) neighbourhood classes, at least |A|/t of them."""

    duplicates: tuple[int, ...] | None
    representatives: tuple[int, ...] | None


def dedupe_neighbourhoods(
    g: BipartiteGraph, a_set: frozenset[int] | set[int], t: int
) -> DedupeResult:
    if t < 1:
        raise ParameterError("t must be >= 1")
    groups: dict[tuple[int, ...], list[int]] = {}
    for a in sorted(a_set):
        group = groups.setdefault(g.adj_a[a], [])
        group.append(a)
        if len(group) == t:
            return DedupeResult(tuple(group), None)
    reps = tuple(sorted(group[0] for group in groups.values()))
    return DedupeResult(None, reps)


@dataclass(frozen=True)
class IndependentSetResult:
    indices: tuple[int, ...]


@dataclass(frozen=True)
class HubResult:
    index: int
    degree: int


def independent_set_or_hub(
    h: NeighbourlyGraph, need_is: int, need_deg: int
) -> IndependentSetResult | HubResult:
    """Greedy colouring in ascending index order; return the largest colour
    class if it reaches need_is, else a maximum-degree vertex if it reaches
    need_deg, else raise NeitherError.

    The dichotomy is guaranteed only when h.order >= need_is*(need_deg+1).
    """
    if need_is < 1 or need_deg < 1:
        raise ParameterError("need_is and need_deg must be >= 1")
    adj = {i: set(h.neighbours(i)) for i in range(h.order)}
    colour: dict[int, int] = {}
    for v in range(h.order):
        used = {colour[w] for w in adj[v] if w in colour}
        c = 0
        while c in used:
            c += 1
        colour[v] = c
    classes: dict[int, list[int]] = {}
    for v in range(h.order):
        classes.setdefault(colour[v], []).append(v)
    if classes:
        best_colour = max(classes, key=lambda c: (len(classes[c]), -c))
        best_class = classes[best_colour]
        if len(best_class) >= need_is:
            return IndependentSetResult(tuple(best_class[:need_is]))
    if h.order > 0:
        hub = max(range(h.order), key=lambda v: (len(adj[v]), -v))
        if len(adj[hub]) >= need_deg:
            return HubResult(hub, len(adj[hub]))
    raise NeitherError(
        f"no independent set of {need_is} and no vertex of degree {need_deg} "
        f"in a block graph of order {h.order}"
    )


# ----------------------------------------------------------------------------
# The dichotomy step and the iterated pipeline
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class SearchBudgets:
    partition_mode: str = "auto"
    heuristic_iters: int = 500
    heuristic_restarts: int = 20
    exact_limit: int = 12


@dataclass(frozen=True)
class GirthSixOutcome:
    selection: InducedSelection
    t: int
    required_degree: int


@dataclass(frozen=True)
class FunnelOutcome:
    a_prime: frozenset[int]
    b_prime: frozenset[int]
    apex: int
    t: int
    required_degree: int


@dataclass(frozen=True)
class BicliqueOutcome:
    witness: BicliqueWitness
    t: int
    required_degree: int


ExtractOutcome = GirthSixOutcome | FunnelOutcome | BicliqueOutcome


def audit_girth_six(g: BipartiteGraph, sel: InducedSelection, min_avg: int) -> list[str]:
    """Names of failed girth-6 claims for this selection (empty = pass)."""
    sub, _, _ = induced_subgraph(sel)
    failures = []
    if count_short_cycles(sub, 4).total != 0:
        failures.append("four_cycle_free")
    if girth(sub) < 6:
        failures.append("girth_at_least_6")
    if average_degree(sub) < min_avg:
        failures.append(f"average_degree_at_least_{min_avg}")
    return failures


def dichotomy_step(
    g: BipartiteGraph,
    a_set: frozenset[int] | set[int],
    r: int,
    lam: int,
    budgets: SearchBudgets | None = None,
    seed: Seed = Seed(0),
) -> ExtractOutcome:
    """One application of the girth-6 dichotomy.

    With t = lam*r + 1 and R = t*(r+1), the A-set must be exactly R-regular.
    Returns one of: a K_{t,t} witness (t identical neighbourhoods), an
    audited girth-6 selection of average degree >= r, or an audited funnel
    (A', B', apex) with A' r-regular, |A'| >= lam*|B'| and A' inside the
    apex's neighbourhood.  Partition unavailability and audit failures raise;
    they are desk-scale limitations, not disproofs.
    """
    if r < 1 or lam < 1:
        raise ParameterError("need r >= 1 and lambda >= 1")
    budgets = budgets or SearchBudgets()
    a_set = frozenset(a_set)
    t = lam * r + 1
    required_degree = t * (r + 1)
    if not is_r_regular_side(g, Side.A, a_set, required_degree):
        raise PreconditionError(
            f"A-set must be exactly {required_degree}-regular for r={r}, lambda={lam}"
        )

    dedupe = dedupe_neighbourhoods(g, a_set, t)
    if dedupe.duplicates is not None:
        twins = dedupe.duplicates
        shared = g.adj_a[twins[0]]  # degree >= t, so enough partners
        witness = BicliqueWitness(tuple(twins), tuple(shared[:t]), t, t, Side.A)
        assert verify_biclique(g, witness)
        return BicliqueOutcome(witness, t, required_degree)

    part = find_rt_partition(
        g,
        a_set,
        required_degree,
        t,
        mode=budgets.partition_mode,
        seed=seed.child("partition"),
        heuristic_iters=budgets.heuristic_iters,
        heuristic_restarts=budgets.heuristic_restarts,
        exact_limit=budgets.exact_limit,
    )
    if part is None:
        raise PartitionUnavailableError(
            f"no ({required_degree},{t})-partition with a non-empty core found within budget"
        )
    h = neighbourly_graph(g, part)
    res = independent_set_or_hub(h, need_is=t, need_deg=r)

    if isinstance(res, IndependentSetResult):
        chosen = res.indices[:r]
        b_union = set().union(*(part.blocks[i] for i in chosen))
        core = part.a_core
        pruned = {b for b in b_union if any(a in core for a in g.adj_b[b])}
        sel = make_selection(g, core, pruned)
        failures = audit_girth_six(g, sel, r)
        if failures:
            raise AuditError(f"girth-6 branch failed audits: {', '.join(failures)}")
        return GirthSixOutcome(sel, t, required_degree)

    hub = res.index
    independent_j = h.neighbours(hub)[:r]
    core = part.a_core
    candidates = [
        (sum(1 for a in g.adj_b[b] if a in core), b) for b in sorted(part.blocks[hub])
    ]
    candidates = [(c, b) for c, b in candidates if c >= 1]
    if not candidates:  # cannot happen: every core vertex meets block hub
        raise AuditError("hub block has no vertex with core neighbours")
    _, apex = max(candidates, key=lambda cb: (cb[0], -cb[1]))
    a_prime = frozenset(a for a in g.adj_b[apex] if a in core)
    b_prime = frozenset(
        b
        for j in independent_j
        for b in part.blocks[j]
        if any(a in a_prime for a in g.adj_b[b])
    )
    sub, _, _ = induced_subgraph(make_selection(g, a_prime, b_prime))
    failures = []
    if not is_r_regular_side(sub, Side.A, None, r):
        failures.append(f"a_prime_exactly_{r}_regular")
    if len(a_prime) < lam * len(b_prime):
        failures.append("size_ratio_at_least_lambda")
    if apex in b_prime:
        failures.append("apex_outside_b_prime")
    if not all(g.has_edge(a, apex) for a in a_prime):
        failures.append("a_prime_in_apex_neighbourhood")
    if any(
        sum(1 for a in g.adj_b[b] if a in a_prime) < t for b in b_prime
    ):
        failures.append(f"b_prime_degrees_at_least_{t}")
    if r * len(a_prime) < t * len(b_prime):
        failures.append("edge_count_inequality")
    if failures:
        raise AuditError(f"funnel branch failed audits: {', '.join(failures)}")
    return FunnelOutcome(a_prime, b_prime, apex, t, required_degree)


@dataclass(frozen=True)
class ScheduleRow:
    s: int
    required_degree: int
    required_ratio: int


def extraction_schedule(
    s: int, t: int, c_override: Fraction | int
) -> tuple[ScheduleRow, ...]:
    """The per-depth (required degree, required ratio) table for 1..s, with
    the unquantified partition constant replaced by c_override."""
    c = Fraction(c_override)
    if s < 1 or t < 1 or c <= 0:
        raise ParameterError("need s, t >= 1 and c_override > 0")
    rows = [ScheduleRow(1, t, 1)]
    for j in range(2, s + 1):
        r, lam = rows[-1].required_degree, rows[-1].required_ratio
        t_next = lam * r + 1
        rows.append(ScheduleRow(j, t_next * (r + 1), math.ceil(t_next / c)))
    return tuple(rows)


@dataclass(frozen=True)
class TraceRow:
    depth: int
    s_cur: int
    action: str
    detail: str
    a_size: int
    b_size: int
    apex_orig: int | None = None
    a_set_orig: tuple[int, ...] | None = None


@dataclass(frozen=True)
class IterationResult:
    kind: str  # "girth6" | "biclique" | "exhausted"
    selection: InducedSelection | None
    witness: BicliqueWitness | None
    trace: tuple[TraceRow, ...]
    schedule: tuple[ScheduleRow, ...]


def iterate_extraction(
    g: BipartiteGraph,
    s: int,
    t: int,
    budgets: SearchBudgets | None = None,
    seed: Seed = Seed(0),
    c_override: Fraction | int = 1,
) -> IterationResult:
    """Drive the dichotomy down from s, accumulating funnel apexes.

    Every apex is adjacent (in g) to the whole of every deeper A-set; at the
    base the apexes plus one B-vertex with t neighbours in the innermost
    t-regular A-set assemble a K_{s,t}.  A K_{t',t'} found on the way is
    carved directly.  Every witness is re-verified against g before being
    returned: a failed verification, a missing partition or a failed audit
    becomes an exhaustion report with the full trace, never a bogus result.
    """
    if s < 1 or t < 1:
        raise ParameterError("need s >= 1 and t >= 1")
    budgets = budgets or SearchBudgets()
    schedule = extraction_schedule(s, t, c_override)
    trace: list[TraceRow] = []

    cur = g
    a_map = tuple(range(g.n_a))
    b_map = tuple(range(g.n_b))
    apexes: list[int] = []

    def exhausted(row: TraceRow) -> IterationResult:
        trace.append(row)
        return IterationResult("exhausted", None, None, tuple(trace), schedule)

    def finish_biclique(
        side_a: tuple[int, ...], side_b: tuple[int, ...], action: str, depth: int,
        s_side: Side,
    ) -> IterationResult:
        witness = BicliqueWitness(side_a, side_b, s, t, s_side)
        if not verify_biclique(g, witness):
            return exhausted(
                TraceRow(depth, s - depth + 1, action, "verification failed",
                         cur.n_a, cur.n_b)
            )
        trace.append(TraceRow(depth, s - depth + 1, action, "verified", cur.n_a, cur.n_b))
        return IterationResult("biclique", None, witness, tuple(trace), schedule)

    s_cur = s
    while True:
        depth = s - s_cur + 1
        if s_cur == 1:
            if cur.n_a == 0 or min(len(row) for row in cur.adj_a) < t:
                return exhausted(
                    TraceRow(depth, 1, "base", f"A side lacks degree >= {t}",
                             cur.n_a, cur.n_b)
                )
            if not apexes:
                a_star = 0
                side_a = (a_map[a_star],)
                side_b = tuple(sorted(b_map[b] for b in cur.adj_a[a_star][:t]))
                return finish_biclique(side_a, side_b, "base", depth, Side.A)
            best_b = max(range(cur.n_b), key=lambda b: (len(cur.adj_b[b]), -b))
            if len(cur.adj_b[best_b]) < t:
                return exhausted(
                    TraceRow(depth, 1, "base",
                             f"no B-vertex with {t} neighbours in the core",
                             cur.n_a, cur.n_b)
                )
            side_a = tuple(sorted(a_map[a] for a in cur.adj_b[best_b][:t]))
            side_b = tuple(sorted(apexes + [b_map[best_b]]))
            return finish_biclique(side_a, side_b, "base", depth, Side.B)

        # Fast path at the requested t: enough identical neighbourhoods give a
        # K_{t,t} in the current graph regardless of the schedule's
        # regularity precondition.
        dedupe = dedupe_neighbourhoods(cur, frozenset(range(cur.n_a)), t)
        if (
            dedupe.duplicates is not None
            and len(cur.adj_a[dedupe.duplicates[0]]) >= t
            and s_cur <= t
        ):
            twins = dedupe.duplicates
            shared = cur.adj_a[twins[0]][:t]
            side_a = tuple(sorted(a_map[a] for a in twins))
            side_b = tuple(sorted(apexes + [b_map[b] for b in shared[:s_cur]]))
            return finish_biclique(side_a, side_b, "fast-path", depth, Side.B)

        row = schedule[s_cur - 1]
        prev = schedule[s_cur - 2]
        if not is_r_regular_side(cur, Side.A, None, row.required_degree):
            return exhausted(
                TraceRow(depth, s_cur, "dichotomy",
                         f"A side is not exactly {row.required_degree}-regular",
                         cur.n_a, cur.n_b)
            )
        try:
            outcome = dichotomy_step(
                cur,
                frozenset(range(cur.n_a)),
                prev.required_degree,
                prev.required_ratio,
                budgets,
                seed.child(f"depth:{depth}"),
            )
        except (PartitionUnavailableError, NeitherError, AuditError) as exc:
            return exhausted(
                TraceRow(depth, s_cur, "dichotomy", str(exc), cur.n_a, cur.n_b)
            )

        if isinstance(outcome, BicliqueOutcome):
            w = outcome.witness  # a K_{t',t'} with t' >= t and t' >= s_cur
            if w.t < t or w.t < s_cur:
                return exhausted(
                    TraceRow(depth, s_cur, "dichotomy",
                             f"K_{{{w.t},{w.t}}} too small to carve K_{{{s},{t}}}",
                             cur.n_a, cur.n_b)
                )
            side_a = tuple(sorted(a_map[a] for a in w.side_in_a[:t]))
            side_b = tuple(
                sorted(apexes + [b_map[b] for b in w.side_in_b[:s_cur]])
            )
            return finish_biclique(side_a, side_b, "dichotomy-biclique", depth, Side.B)

        if isinstance(outcome, GirthSixOutcome):
            sel = make_selection(
                g,
                (a_map[a] for a in outcome.selection.subset_a),
                (b_map[b] for b in outcome.selection.subset_b),
            )
            failures = audit_girth_six(g, sel, t)
            if failures:
                return exhausted(
                    TraceRow(depth, s_cur, "girth6",
                             f"re-audit failed: {', '.join(failures)}",
                             cur.n_a, cur.n_b)
                )
            trace.append(
                TraceRow(depth, s_cur, "girth6", "audited", cur.n_a, cur.n_b)
            )
            return IterationResult("girth6", sel, None, tuple(trace), schedule)

        assert isinstance(outcome, FunnelOutcome)
        apex_orig = b_map[outcome.apex]
        a_set_orig = tuple(sorted(a_map[a] for a in outcome.a_prime))
        trace.append(
            TraceRow(depth, s_cur, "funnel", "audited",
                     len(outcome.a_prime), len(outcome.b_prime),
                     apex_orig, a_set_orig)
        )
        apexes.append(apex_orig)
        sub, sub_a, sub_b = induced_subgraph(
            make_selection(cur, outcome.a_prime, outcome.b_prime)
        )
        a_map = tuple(a_map[old] for old in sub_a)
        b_map = tuple(b_map[old] for old in sub_b)
        cur = sub
        s_cur -= 1
