from fractions import Fraction

import pytest

from bipgirth.detect import girth, verify_biclique
from bipgirth.errors import (
    NeitherError,
    ParameterError,
    PartitionStructureError,
    PreconditionError,
)
from bipgirth.generate import Seed, gen_complete, gen_projective_incidence, gen_random
from bipgirth.girth6 import (
    BicliqueOutcome,
    FunnelOutcome,
    GirthSixOutcome,
    HubResult,
    IndependentSetResult,
    NeighbourlyGraph,
    SearchBudgets,
    RTPartition,
    dedupe_neighbourhoods,
    find_rt_partition,
    independent_set_or_hub,
    iterate_extraction,
    neighbourly_graph,
    dichotomy_step,
    extraction_schedule,
    verify_rt_partition,
)
from bipgirth.graph import (
    Side,
    average_degree,
    build_graph,
    induced_subgraph,
    is_r_regular_side,
    make_selection,
)

from .oracles import rt_partition_ok_bruteforce


def product_graph(blocks=4, width=2):
    """A-vertices are all choice profiles picking one B-vertex per block."""
    n_a = width ** blocks
    edges = []
    for a in range(n_a):
        x = a
        for i in range(blocks):
            edges.append((a, width * i + x % width))
            x //= width
    return build_graph(n_a, blocks * width, edges)


def singleton_partition(g, r, t):
    blocks = tuple(frozenset({b}) for b in range(g.n_b))
    return RTPartition(blocks, frozenset(range(g.n_a)), r, t)


def test_verify_k33_singletons_pass():
    g = gen_complete(3, 3)
    report = verify_rt_partition(g, singleton_partition(g, 3, 3))
    assert report.ok and report.violations == ()


def test_verify_fano_partition_vacuous():
    heawood = gen_projective_incidence(2)
    blocks = (frozenset({0, 1, 2}), frozenset({3, 4}), frozenset({5, 6}))
    covered = frozenset(
        a
        for a in range(7)
        if all(any(b in heawood.adj_a[a] for b in blk) for blk in blocks)
    )
    part = RTPartition(blocks, covered, 3, 2)
    assert verify_rt_partition(heawood, part).ok  # no 2 lines share 2 points


def test_verify_4_cycle_split_fails_at_t3():
    c4 = gen_complete(2, 2)
    part = RTPartition((frozenset({0}), frozenset({1})), frozenset({0, 1}), 2, 3)
    report = verify_rt_partition(c4, part)
    assert not report.ok
    assert any("share 2" in v for v in report.violations)


def test_verify_coverage_violation_names_vertex():
    g = build_graph(2, 2, [(0, 0), (0, 1), (1, 0)])
    part = RTPartition((frozenset({0}), frozenset({1})), frozenset({0, 1}), 2, 2)
    report = verify_rt_partition(g, part)
    assert any("A1" in v and "block 1" in v for v in report.violations)


def test_verify_structural_errors():
    g = gen_complete(2, 2)
    with pytest.raises(PartitionStructureError, match="overlap"):
        verify_rt_partition(
            g, RTPartition((frozenset({0, 1}), frozenset({1})), frozenset(), 2, 2)
        )
    with pytest.raises(PartitionStructureError, match="cover"):
        verify_rt_partition(
            g, RTPartition((frozenset({0}), frozenset()), frozenset(), 2, 2)
        )


def test_verifier_agrees_with_double_loop_oracle():
    rng_seed = 0
    for i in range(60):
        rng_seed += 1
        g = gen_random(6, 6, 0.45, Seed(rng_seed))
        rng = Seed(1000 + i).rng()
        for r in (2, 3):
            for t in (2, 3):
                assignment = [rng.randrange(r) for _ in range(g.n_b)]
                blocks = [
                    [b for b in range(g.n_b) if assignment[b] == i_] for i_ in range(r)
                ]
                a_core = {a for a in range(g.n_a) if rng.random() < 0.7}
                part = RTPartition(
                    tuple(frozenset(b) for b in blocks), frozenset(a_core), r, t
                )
                assert (
                    verify_rt_partition(g, part).ok
                    == rt_partition_ok_bruteforce(g, blocks, a_core, t)
                )


def test_find_partition_exact_on_ktt():
    g = gen_complete(3, 3)
    part = find_rt_partition(g, frozenset(range(3)), 3, 3, mode="exact")
    assert part is not None
    assert part.a_core == frozenset(range(3))
    assert verify_rt_partition(g, part).ok
    assert all(len(b) == 1 for b in part.blocks)


def test_find_partition_heuristic_on_pg3():
    pg3 = gen_projective_incidence(3)
    hits = 0
    for seed in range(10):
        part = find_rt_partition(
            pg3, frozenset(range(13)), 4, 2, mode="heuristic", seed=Seed(seed)
        )
        if part is not None:
            hits += 1
            assert verify_rt_partition(pg3, part).ok
            assert part.a_core
    assert hits >= 1


def test_find_partition_requires_regular_a():
    g = build_graph(2, 2, [(0, 0), (1, 0), (1, 1)])
    with pytest.raises(PreconditionError):
        find_rt_partition(g, frozenset({0, 1}), 2, 2)


def test_find_partition_exact_cap():
    with pytest.raises(ParameterError, match="infeasible"):
        find_rt_partition(gen_complete(13, 13), frozenset(range(13)), 13, 2, mode="exact")


def test_dedupe_k33_first_arm():
    res = dedupe_neighbourhoods(gen_complete(3, 3), frozenset(range(3)), 3)
    assert res.duplicates == (0, 1, 2)


def test_dedupe_hexagon_second_arm():
    hexagon = build_graph(3, 3, [(0, 0), (0, 1), (1, 1), (1, 2), (2, 2), (2, 0)])
    res = dedupe_neighbourhoods(hexagon, frozenset(range(3)), 2)
    assert res.duplicates is None
    assert res.representatives == (0, 1, 2)
    assert len(res.representatives) * 2 >= 3  # |F| >= |A| / t


def test_dedupe_two_k22_copies():
    g = build_graph(4, 4, [(0, 0), (0, 1), (1, 0), (1, 1), (2, 2), (2, 3), (3, 2), (3, 3)])
    res = dedupe_neighbourhoods(g, frozenset(range(4)), 2)
    assert res.duplicates == (0, 1)


def test_neighbourly_graph_complete_on_k33():
    g = gen_complete(3, 3)
    h = neighbourly_graph(g, singleton_partition(g, 3, 3))
    assert h.edges == frozenset({(0, 1), (0, 2), (1, 2)})
    assert h.degree(0) == 2 and h.neighbours(0) == (1, 2)


def test_neighbourly_graph_empty_on_fano():
    heawood = gen_projective_incidence(2)
    blocks = (frozenset({0, 1, 2}), frozenset({3, 4}), frozenset({5, 6}))
    covered = frozenset(
        a
        for a in range(7)
        if all(any(b in heawood.adj_a[a] for b in blk) for blk in blocks)
    )
    h = neighbourly_graph(heawood, RTPartition(blocks, covered, 3, 2))
    assert h.edges == frozenset()


def test_neighbourly_graph_single_cross_4_cycle():
    c4 = gen_complete(2, 2)
    part = RTPartition((frozenset({0}), frozenset({1})), frozenset({0, 1}), 2, 2)
    h = neighbourly_graph(c4, part)
    assert h.edges == frozenset({(0, 1)})


def test_neighbourly_graph_rejects_failing_partition():
    c4 = gen_complete(2, 2)
    bad = RTPartition((frozenset({0}), frozenset({1})), frozenset({0, 1}), 2, 3)
    with pytest.raises(PreconditionError):
        neighbourly_graph(c4, bad)


def test_is_or_hub_empty_graph():
    h = NeighbourlyGraph(9, frozenset())
    res = independent_set_or_hub(h, 3, 2)
    assert isinstance(res, IndependentSetResult) and len(res.indices) == 3


def test_is_or_hub_complete_graph():
    edges = frozenset((i, j) for i in range(9) for j in range(i + 1, 9))
    res = independent_set_or_hub(NeighbourlyGraph(9, edges), 3, 2)
    assert isinstance(res, HubResult) and res.degree == 8


def test_is_or_hub_neither():
    h = NeighbourlyGraph(2, frozenset({(0, 1)}))
    with pytest.raises(NeitherError):
        independent_set_or_hub(h, 2, 2)


def test_dichotomy_k99_biclique_arm():
    g = gen_complete(9, 9)
    out = dichotomy_step(g, frozenset(range(9)), 2, 1, seed=Seed(3))
    assert isinstance(out, BicliqueOutcome)
    assert out.t == 3 and out.required_degree == 9
    assert out.witness.s == out.witness.t == 3
    assert verify_biclique(g, out.witness)


def test_dichotomy_requires_R_regular():
    heawood = gen_projective_incidence(2)  # 3-regular, R would be 4
    with pytest.raises(PreconditionError):
        dichotomy_step(heawood, frozenset(range(7)), 1, 1, seed=Seed(0))


@pytest.mark.parametrize("seed", range(6))
def test_dichotomy_pg3_girth_six_arm(seed):
    pg3 = gen_projective_incidence(3)
    budgets = SearchBudgets(partition_mode="heuristic")
    out = dichotomy_step(pg3, frozenset(range(13)), 1, 1, budgets, Seed(seed))
    assert isinstance(out, GirthSixOutcome)
    sub, _, _ = induced_subgraph(out.selection)
    assert girth(sub) >= 6
    assert average_degree(sub) >= 1


@pytest.mark.parametrize("seed", range(6))
def test_dichotomy_product_graph_funnel_arm(seed):
    g = product_graph()
    budgets = SearchBudgets(partition_mode="exact")
    out = dichotomy_step(g, frozenset(range(16)), 1, 1, budgets, Seed(seed))
    assert isinstance(out, FunnelOutcome)
    sub, _, _ = induced_subgraph(make_selection(g, out.a_prime, out.b_prime))
    assert is_r_regular_side(sub, Side.A, None, 1)
    assert len(out.a_prime) >= len(out.b_prime)              # lambda = 1
    assert 1 * len(out.a_prime) >= out.t * len(out.b_prime)  # r|A'| >= t|B'|
    assert out.apex not in out.b_prime
    assert all(g.has_edge(a, out.apex) for a in out.a_prime)
    assert all(
        sum(1 for a in g.adj_b[b] if a in out.a_prime) >= out.t for b in out.b_prime
    )


def test_schedule_base_case():
    rows = extraction_schedule(1, 5, 1)
    assert rows[0].required_degree == 5 and rows[0].required_ratio == 1


def test_schedule_s2_t3():
    rows = extraction_schedule(2, 3, 1)
    # r = 3, lam = 1 -> t' = 4, next degree 4*4 = 16
    assert rows[1].required_degree == 16
    assert rows[1].required_ratio == 4


def test_schedule_fractional_c_override():
    rows = extraction_schedule(2, 3, Fraction(1, 2))
    assert rows[1].required_ratio == 8  # ceil(4 / (1/2))


def test_schedule_strictly_increasing_in_s():
    rows = extraction_schedule(5, 2, 1)
    for a, b in zip(rows, rows[1:]):
        assert b.required_degree > a.required_degree


def test_iterate_base_case_s1():
    g = gen_complete(5, 5)
    res = iterate_extraction(g, 1, 3, seed=Seed(1))
    assert res.kind == "biclique"
    assert res.witness.s == 1 and res.witness.t == 3
    assert res.witness.s_side is Side.A
    assert verify_biclique(g, res.witness)


def test_iterate_base_case_on_any_regular_instance():
    heawood = gen_projective_incidence(2)  # 3-regular with r = t = 3
    res = iterate_extraction(heawood, 1, 3, seed=Seed(1))
    assert res.kind == "biclique" and verify_biclique(heawood, res.witness)


def test_iterate_k44_s2_fast_path():
    g = gen_complete(4, 4)
    res = iterate_extraction(g, 2, 3, seed=Seed(1))
    assert res.kind == "biclique"
    assert res.witness.s == 2 and res.witness.t == 3
    assert verify_biclique(g, res.witness)


def test_iterate_fano_s2_never_invalid():
    heawood = gen_projective_incidence(2)
    res = iterate_extraction(heawood, 2, 3, seed=Seed(1))
    assert res.kind in ("girth6", "exhausted")
    if res.kind == "girth6":
        sub, _, _ = induced_subgraph(res.selection)
        assert girth(sub) >= 6 and average_degree(sub) >= 3


def test_iterate_funnel_chain_with_apex_nesting():
    g = product_graph()
    res = iterate_extraction(
        g, 2, 1, SearchBudgets(partition_mode="exact"), Seed(2)
    )
    assert res.kind == "biclique"
    assert verify_biclique(g, res.witness)
    funnel_rows = [row for row in res.trace if row.action == "funnel"]
    assert funnel_rows
    # every recorded apex is adjacent to every deeper A-set vertex
    for i, row in enumerate(funnel_rows):
        for later in funnel_rows[i:]:
            assert all(g.has_edge(a, row.apex_orig) for a in later.a_set_orig)


def test_iterate_girth6_short_circuit():
    # 2 disjoint hexagons: 2-regular A, so s=1, t=2 gives a base K_{1,2};
    # at s=2 the schedule needs 12-regular A and reports exhaustion honestly.
    hexes = build_graph(
        6, 6,
        [(0, 0), (0, 1), (1, 1), (1, 2), (2, 2), (2, 0),
         (3, 3), (3, 4), (4, 4), (4, 5), (5, 5), (5, 3)],
    )
    res = iterate_extraction(hexes, 1, 2, seed=Seed(0))
    assert res.kind == "biclique" and verify_biclique(hexes, res.witness)
    res2 = iterate_extraction(hexes, 2, 2, seed=Seed(0))
    assert res2.kind == "exhausted"
    assert res2.trace[-1].action == "dichotomy"


def test_iterate_rejects_bad_parameters():
    with pytest.raises(ParameterError):
        iterate_extraction(gen_complete(2, 2), 0, 1)
