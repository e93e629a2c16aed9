"""Regular-side extraction: random partition + sparse sampling.

Produces an induced subgraph whose A side is exactly r-regular and at least
lambda times larger than its B side.  The one-shot expectation argument this
follows only works above astronomically large degree thresholds (see
``regularization_threshold``); at practical scale both random steps run inside
explicit retry loops and every success is audited before being returned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParameterError
from .generate import Seed
from .graph import (
    BipartiteGraph,
    InducedSelection,
    Side,
    degree_stats,
    induced_subgraph,
    is_r_regular_side,
    make_selection,
)


@dataclass(frozen=True)
class ThresholdReport:
    """d and the average-degree threshold 8*(4d)^(12r+1) above which the
    one-shot extraction argument is guaranteed."""

    d_inner: int
    d_threshold: int


def _exp_bounds(r: int, terms: int) -> tuple[Fraction, Fraction]:
    """Rational lower/upper bounds on e**r from the Taylor series of e."""
    partial = Fraction(0)
    fact = 1
    for k in range(terms + 1):
        if k > 0:
            fact *= k
        partial += Fraction(1, fact)
    tail = Fraction(2, fact * (terms + 1))
    return partial ** r, (partial + tail) ** r


def regularization_threshold(r: int, lam: int) -> ThresholdReport:
    """Evaluate d = ceil(max(((2*lam)^(1/r) * 16e)^(1/11), 2r^2)) and the
    threshold 8*(4d)^(12r+1), in exact arbitrary-precision arithmetic.

    The smallest integer c >= ((2*lam)^(1/r) * 16e)^(1/11) is found by the
    equivalent integer test c^(11r) >= 2*lam * 16^r * e^r, bracketing e^r
    between rational Taylor bounds (the quantity is transcendental, so the
    bracket always separates consecutive integers at some precision).
    """
    if r < 1 or lam < 1:
        raise ParameterError("need r >= 1 and lambda >= 1")
    terms = 30
    ceil_term: int | None = None
    while ceil_term is None:
        lo, hi = _exp_bounds(r, terms)
        base = 2 * lam * 16 ** r
        c = 1
        while True:
            power = c ** (11 * r)
            if power * hi.denominator >= base * hi.numerator:
                ceil_term = c  # certainly >= the real value
                break
            if power * lo.denominator >= base * lo.numerator:
                break  # ambiguous: between the bounds; retry more precisely
            c += 1
        terms += 10
    d_inner = max(ceil_term, 2 * r * r)
    return ThresholdReport(d_inner, 8 * (4 * d_inner) ** (12 * r + 1))


def degree_band_extract(
    g: BipartiteGraph, d_target: int, band_factor: int = 16
) -> tuple[InducedSelection, Fraction]:
    """Select the A-vertices whose degree lies in [d_target, band_factor *
    d_target] together with their neighbourhood, pruned to a fixed point.

    Returns the selection and the achieved |A|/|B| ratio (0 when empty); no
    lower bound on that ratio is promised, it is simply measured.  An empty
    selection is a valid outcome, not an error.
    """
    if d_target < 1:
        raise ParameterError("d_target must be >= 1")
    if band_factor < 2:
        raise ParameterError("band_factor must be >= 2")
    hi = band_factor * d_target
    a_sel = {a for a in range(g.n_a) if d_target <= len(g.adj_a[a]) <= hi}
    b_sel = {b for a in a_sel for b in g.adj_a[a]}
    changed = True
    while changed:
        changed = False
        drop_a = {a for a in a_sel if sum(b in b_sel for b in g.adj_a[a]) < d_target}
        if drop_a:
            a_sel -= drop_a
            changed = True
        drop_b = {b for b in b_sel if not any(a in a_sel for a in g.adj_b[b])}
        if drop_b:
            b_sel -= drop_b
            changed = True
    sel = make_selection(g, a_sel, b_sel)
    ratio = Fraction(len(a_sel), len(b_sel)) if b_sel else Fraction(0)
    return sel, ratio


def partition_B_uniform(g: BipartiteGraph, r: int, seed: Seed) -> tuple[tuple[int, ...], ...]:
    """Assign each B-vertex to one of r parts independently and uniformly.
    Parts may be empty."""
    if r < 1:
        raise ParameterError("r must be >= 1")
    rng = seed.rng()
    parts: list[list[int]] = [[] for _ in range(r)]
    for b in range(g.n_b):
        parts[rng.randrange(r)].append(b)
    return tuple(tuple(p) for p in parts)


@dataclass(frozen=True)
class RegularizeParams:
    r: int
    lam: int
    seed: Seed
    max_retries: int = 200
    partition_attempts: int = 50
    accept_ratio: Fraction = Fraction(1, 2)  # partition accepted at |A1| >= ratio*|A|

    def __post_init__(self):
        if self.r < 1 or self.lam < 1 or self.max_retries < 1:
            raise ParameterError("need r >= 1, lambda >= 1, max_retries >= 1")
        if self.partition_attempts < 1 or not 0 < self.accept_ratio <= 1:
            raise ParameterError("bad partition budget or acceptance ratio")


@dataclass
class RegularizeOutcome:
    """Result of extract_regular_side; ``selection`` is None when every
    attempt failed, with the counters still filled in."""

    selection: InducedSelection | None
    attempts: int
    partition_draws: int
    sampling_prob: Fraction
    best_a1_size: int
    a2_size: int = 0
    b_prime_size: int = 0
    audit_passed: bool = False


def _sampling_probability(g: BipartiteGraph) -> Fraction:
    """p = 1 / (16 * ceil(Delta(A)/16)), clamped into (0, 1]."""
    delta = degree_stats(g, Side.A).max_deg
    return Fraction(1, max(1, 16 * math.ceil(delta / 16)))


def extract_regular_side(
    g: BipartiteGraph, params: RegularizeParams
) -> RegularizeOutcome:
    """Per attempt: (1) draw uniform partitions of B into r parts until the
    vertices covering every part number at least accept_ratio*|A| (or the
    partition budget dies, keeping the best draw); (2) keep each B-vertex
    with probability p = 1/(16*ceil(Delta(A)/16)); (3) accept the A-vertices
    with exactly one kept neighbour in each part if they are non-empty and at
    least lambda times the kept B set.  Success is audited on the
    materialized subgraph before being returned.
    """
    if g.n_a == 0:
        raise ParameterError("A side is empty")
    p = _sampling_probability(g)
    p_float = float(p)
    outcome = RegularizeOutcome(None, 0, 0, p, 0)
    if degree_stats(g, Side.A).max_deg < params.r:
        return outcome  # no A-vertex can ever meet r disjoint parts

    accept_num = params.accept_ratio.numerator
    accept_den = params.accept_ratio.denominator

    for attempt in range(params.max_retries):
        outcome.attempts = attempt + 1
        best_a1: list[int] = []
        best_part: tuple[tuple[int, ...], ...] | None = None
        for draw in range(params.partition_attempts):
            outcome.partition_draws += 1
            part_seed = params.seed.child(f"attempt:{attempt}:part:{draw}")
            parts = partition_B_uniform(g, params.r, part_seed)
            part_of = [0] * g.n_b
            for i, block in enumerate(parts):
                for b in block:
                    part_of[b] = i
            a1 = [
                a
                for a in range(g.n_a)
                if len({part_of[b] for b in g.adj_a[a]}) == params.r
            ]
            if len(a1) > len(best_a1):
                best_a1, best_part = a1, parts
            if len(a1) * accept_den >= g.n_a * accept_num:
                break
        outcome.best_a1_size = max(outcome.best_a1_size, len(best_a1))
        if not best_a1 or best_part is None:
            continue

        rng = params.seed.child(f"attempt:{attempt}:sample").rng()
        kept = [b for b in range(g.n_b) if rng.random() < p_float]
        kept_set = set(kept)
        part_of = [0] * g.n_b
        for i, block in enumerate(best_part):
            for b in block:
                part_of[b] = i
        a2 = []
        for a in best_a1:
            per_part = [0] * params.r
            for b in g.adj_a[a]:
                if b in kept_set:
                    per_part[part_of[b]] += 1
            if all(c == 1 for c in per_part):
                a2.append(a)
        if not a2 or len(a2) < params.lam * len(kept):
            continue

        sel = make_selection(g, a2, kept)
        sub, _, _ = induced_subgraph(sel)
        audit = (
            is_r_regular_side(sub, Side.A, None, params.r)
            and sub.n_b > 0
            and sub.n_a >= params.lam * sub.n_b
        )
        if not audit:  # pragma: no cover - construction guarantees this
            continue
        outcome.selection = sel
        outcome.a2_size = len(a2)
        outcome.b_prime_size = len(kept)
        outcome.audit_passed = True
        return outcome
    return outcome
