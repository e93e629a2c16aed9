"""Seeded fixture generators.

All randomness comes from Python's ``random.Random`` (MT19937), seeded from a
64-bit ``Seed``.  Sub-streams are derived with BLAKE2b over a string label, so
the same seed and parameters reproduce the same graph bit-for-bit within this
implementation; across implementations only statistical agreement is promised.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass

from .errors import GenerationError, ParameterError
from .graph import BipartiteGraph, build_graph


@dataclass(frozen=True)
class Seed:
    value: int

    def __post_init__(self):
        if not 0 <= self.value < 2 ** 64:
            raise ParameterError("seed must be a 64-bit unsigned integer")

    def child(self, label: str) -> "Seed":
        digest = hashlib.blake2b(
            label.encode("utf-8"), key=self.value.to_bytes(8, "big"), digest_size=8
        ).digest()
        return Seed(int.from_bytes(digest, "big"))

    def rng(self) -> random.Random:
        return random.Random(self.value)


def gen_complete(s: int, t: int) -> BipartiteGraph:
    """The complete bipartite graph K_{s,t}."""
    if s < 0 or t < 0:
        raise ParameterError("sides must be non-negative")
    return build_graph(s, t, ((a, b) for a in range(s) for b in range(t)))


def gen_random(n_a: int, n_b: int, edge_prob: float, seed: Seed) -> BipartiteGraph:
    """Each of the n_a * n_b potential edges independently with probability
    edge_prob, in fixed (a, b) order."""
    if not 0.0 <= edge_prob <= 1.0:
        raise ParameterError("edge probability must lie in [0, 1]")
    rng = seed.rng()
    edges = [
        (a, b) for a in range(n_a) for b in range(n_b) if rng.random() < edge_prob
    ]
    return build_graph(n_a, n_b, edges)


_SWITCHES_PER_CONFLICT = 1000
_MAX_RESAMPLES = 50


def gen_biregular(n_a: int, n_b: int, deg_a: int, seed: Seed) -> BipartiteGraph:
    """A simple graph with every A-degree exactly deg_a and every B-degree
    exactly n_a*deg_a/n_b, by configuration-model sampling with switch repair.

    Requires deg_a <= n_b and n_b | n_a*deg_a.
    """
    if n_a < 1 or n_b < 1 or deg_a < 0:
        raise ParameterError("need n_a, n_b >= 1 and deg_a >= 0")
    if deg_a > n_b:
        raise GenerationError(f"deg_a={deg_a} exceeds n_b={n_b}; simple graph impossible")
    if (n_a * deg_a) % n_b != 0:
        raise GenerationError(
            f"n_b={n_b} does not divide n_a*deg_a={n_a * deg_a}; B side cannot be regular"
        )
    if deg_a == 0:
        return build_graph(n_a, n_b, [])
    if deg_a == n_b:
        return gen_complete(n_a, n_b)  # forced: every A-vertex meets all of B

    deg_b = (n_a * deg_a) // n_b
    a_of_stub = [a for a in range(n_a) for _ in range(deg_a)]
    base_b_stubs = [b for b in range(n_b) for _ in range(deg_b)]
    m = len(a_of_stub)
    rng = seed.rng()

    for _ in range(_MAX_RESAMPLES):
        pairing = base_b_stubs[:]
        rng.shuffle(pairing)
        counts: dict[tuple[int, int], int] = {}
        for i in range(m):
            cell = (a_of_stub[i], pairing[i])
            counts[cell] = counts.get(cell, 0) + 1
        conflicts = sum(c - 1 for c in counts.values() if c > 1)
        budget = _SWITCHES_PER_CONFLICT * max(1, conflicts)
        switches = 0
        while conflicts > 0 and switches < budget:
            progressed = False
            for i in range(m):
                cell_i = (a_of_stub[i], pairing[i])
                if counts[cell_i] < 2:
                    continue
                j = rng.randrange(m)
                if j == i:
                    continue
                cell_j = (a_of_stub[j], pairing[j])
                new_i = (a_of_stub[i], pairing[j])
                new_j = (a_of_stub[j], pairing[i])
                for cell in (cell_i, cell_j):
                    counts[cell] -= 1
                for cell in (new_i, new_j):
                    counts[cell] = counts.get(cell, 0) + 1
                pairing[i], pairing[j] = pairing[j], pairing[i]
                switches += 1
                progressed = True
                if switches >= budget:
                    break
            conflicts = sum(c - 1 for c in counts.values() if c > 1)
            if not progressed:
                break
        if conflicts == 0:
            return build_graph(n_a, n_b, zip(a_of_stub, pairing))
    raise GenerationError(
        f"could not repair configuration model for ({n_a}, {n_b}, {deg_a}) "
        f"within {_MAX_RESAMPLES} resamples"
    )


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    if q % 2 == 0:
        return q == 2
    f = 3
    while f * f <= q:
        if q % f == 0:
            return False
        f += 2
    return True


def gen_projective_incidence(q: int) -> BipartiteGraph:
    """Point-line incidence graph of the projective plane PG(2, q), q prime.

    Both sides have q^2+q+1 vertices, every degree is q+1, the girth is 6.
    q = 2 yields the Heawood graph.
    """
    if not _is_prime(q):
        raise ParameterError(f"q={q} is not prime (prime-power fields unsupported)")
    reps: list[tuple[int, int, int]] = []
    reps.extend((1, x, y) for x in range(q) for y in range(q))
    reps.extend((0, 1, x) for x in range(q))
    reps.append((0, 0, 1))
    n = len(reps)  # q^2 + q + 1
    edges = [
        (i, j)
        for i, p in enumerate(reps)
        for j, line in enumerate(reps)
        if (p[0] * line[0] + p[1] * line[1] + p[2] * line[2]) % q == 0
    ]
    return build_graph(n, n, edges)


@dataclass(frozen=True)
class NeighbourhoodRegularSpec:
    """B splits into r blocks; block i is internally d_i-regular and every
    A-vertex has exactly one neighbour in each block."""

    r: int
    block_degrees: tuple[int, ...]
    a_size: int

    def __post_init__(self):
        if self.r < 1 or len(self.block_degrees) != self.r:
            raise ParameterError(
                f"need exactly r={self.r} block degrees, got {len(self.block_degrees)}"
            )
        if self.a_size < 1:
            raise ParameterError("a_size must be >= 1")
        for i, d in enumerate(self.block_degrees):
            if d < self.r:
                raise ParameterError(f"block degree d_{i + 1}={d} is below r={self.r}")
            if self.a_size % d != 0:
                raise ParameterError(
                    f"a_size={self.a_size} is not divisible by d_{i + 1}={d}"
                )

    def block_sizes(self) -> tuple[int, ...]:
        return tuple(self.a_size // d for d in self.block_degrees)


def gen_neighbourhood_regular(
    spec: NeighbourhoodRegularSpec, seed: Seed
) -> tuple[BipartiteGraph, tuple[tuple[int, ...], ...]]:
    """Random neighbourhood-regular graph plus its block partition of B.

    Per block, a random permutation of A is cut into contiguous chunks of
    size d_i, one chunk per block vertex, which meets the exact degree
    constraints by construction.
    """
    sizes = spec.block_sizes()
    n_b = sum(sizes)
    edges: list[tuple[int, int]] = []
    blocks: list[tuple[int, ...]] = []
    offset = 0
    for i, (d, size) in enumerate(zip(spec.block_degrees, sizes)):
        rng = seed.child(f"block:{i}").rng()
        perm = list(range(spec.a_size))
        rng.shuffle(perm)
        block = tuple(range(offset, offset + size))
        blocks.append(block)
        for j in range(size):
            for a in perm[j * d : (j + 1) * d]:
                edges.append((a, offset + j))
        offset += size
    return build_graph(spec.a_size, n_b, edges), tuple(blocks)
