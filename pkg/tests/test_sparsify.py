import math
from fractions import Fraction

import pytest

from bipgirth.detect import count_short_cycles, girth
from bipgirth.errors import ParameterError
from bipgirth.generate import Seed, gen_biregular, gen_complete, gen_projective_incidence, gen_random
from bipgirth.graph import build_graph, induced_subgraph, average_degree
from bipgirth.sparsify import (
    SparsifyParams,
    expectation_diagnostics,
    naive_cycle_bound,
    sampling_probability,
    sparsify_high_girth,
)


def test_heawood_girth4_request_succeeds():
    heawood = gen_projective_incidence(2)
    res = sparsify_high_girth(heawood, SparsifyParams(t=1, k=2, seed=Seed(3)))
    assert res.success
    sub, _, _ = induced_subgraph(res.selection)
    assert girth(sub) >= 4
    assert count_short_cycles(sub, 4).total == 0
    assert average_degree(sub) >= 1


def test_forest_fallback_mode():
    forest = build_graph(5, 4, [(0, 0), (1, 0), (2, 1), (3, 2), (4, 3)])
    res = sparsify_high_girth(forest, SparsifyParams(t=0, k=3, seed=Seed(1)))
    assert res.success
    assert res.diagnostics.short_cycles_found == 0
    assert res.diagnostics.vertices_deleted == 0


@pytest.mark.parametrize("seed", range(8))
def test_k20_every_success_is_sound(seed):
    g = gen_complete(20, 20)
    res = sparsify_high_girth(g, SparsifyParams(t=2, k=3, seed=Seed(seed), max_retries=10))
    if res.success:
        sub, _, _ = induced_subgraph(res.selection)
        assert girth(sub) >= 6
        assert average_degree(sub) >= 2
    else:
        assert res.selection is None
        assert res.attempts == 10


@pytest.mark.parametrize("seed", range(6))
def test_random_graph_successes_audited(seed):
    g = gen_random(150, 150, 0.04, Seed(40 + seed))  # d ~ 6
    params = SparsifyParams(t=1, k=2, seed=Seed(seed), max_retries=15)
    res = sparsify_high_girth(g, params)
    if res.success:
        sub, _, _ = induced_subgraph(res.selection)
        assert count_short_cycles(sub, 4).total == 0
        assert girth(sub) >= 4
        assert average_degree(sub) >= 1


def test_survivor_is_induced():
    g = gen_projective_incidence(3)
    res = sparsify_high_girth(g, SparsifyParams(t=1, k=3, seed=Seed(8), max_retries=40))
    if res.selection is None:
        pytest.skip("no success at this seed")
    sub, a_map, b_map = induced_subgraph(res.selection)
    for ai, a in enumerate(a_map):
        expected = [b for b in g.adj_a[a] if b in res.selection.subset_b]
        assert [b_map[bj] for bj in sub.adj_a[ai]] == expected


def test_probability_requires_average_degree_above_one():
    with pytest.raises(ParameterError, match="too small"):
        sampling_probability(
            build_graph(1, 1, [(0, 0)]), SparsifyParams(t=1, k=2, seed=Seed(0))
        )


def test_probability_formula():
    g = gen_biregular(100, 100, 10, Seed(0))
    d, eps, p = sampling_probability(g, SparsifyParams(t=1, k=2, seed=Seed(0)))
    assert d == 10 and eps == Fraction(1, 4)
    assert math.isclose(p, 10 ** (-0.75))


def test_hitting_modes_both_sound():
    g = gen_complete(8, 8)
    for mode in ("greedy", "per-cycle"):
        res = sparsify_high_girth(
            g, SparsifyParams(t=0, k=2, seed=Seed(5), max_retries=5), hitting_mode=mode
        )
        assert res.success  # t=0 accepts any survivor
        sub, _, _ = induced_subgraph(res.selection)
        assert count_short_cycles(sub, 4).total == 0


def test_greedy_deletes_no_more_than_per_cycle():
    g = gen_complete(10, 10)
    params = SparsifyParams(t=0, k=2, seed=Seed(13), max_retries=1)
    greedy = sparsify_high_girth(g, params, "greedy")
    per_cycle = sparsify_high_girth(g, params, "per-cycle")
    assert greedy.diagnostics.vertices_deleted <= per_cycle.diagnostics.vertices_deleted


def test_naive_cycle_bound_values():
    assert naive_cycle_bound(10, 2, 1, 2) == 80
    assert naive_cycle_bound(14, 3, 1, 3) == 3402
    heawood = gen_projective_incidence(2)
    assert count_short_cycles(heawood, 6).counts_by_length[6] <= 3402
    assert naive_cycle_bound(14, Fraction(5, 2), 1, 3) == 14 * 3 ** 5  # d rounded up


def test_naive_cycle_bound_monotone():
    base = naive_cycle_bound(10, 3, 2, 2)
    assert naive_cycle_bound(11, 3, 2, 2) > base
    assert naive_cycle_bound(10, 4, 2, 2) > base
    assert naive_cycle_bound(10, 3, 3, 2) > base
    assert naive_cycle_bound(10, 3, 2, 3) > base
    with pytest.raises(ParameterError):
        naive_cycle_bound(0, 3, 1, 2)


def test_expectation_diagnostics_closed_forms():
    g = gen_biregular(100, 100, 10, Seed(9))
    rep = expectation_diagnostics(
        g, SparsifyParams(t=1, k=2, seed=Seed(0)), 200, Seed(11), p_override=0.1
    )
    assert rep.predicted_vertex_mean == pytest.approx(20.0)
    assert rep.predicted_edge_mean == pytest.approx(10.0)
    assert abs(rep.observed_vertex_mean - 20.0) <= 5 * rep.vertex_stderr
    assert abs(rep.observed_edge_mean - 10.0) <= 5 * rep.edge_stderr
    assert rep.edge_loss_bound_held


def test_expectation_inequality_every_trial_dense():
    # K_{6,6} sampled at a fat p so short cycles actually appear
    g = gen_complete(6, 6)
    rep = expectation_diagnostics(
        g, SparsifyParams(t=1, k=2, seed=Seed(0)), 120, Seed(21), p_override=0.7
    )
    assert rep.x1_mean > 0  # cycles occurred, the bound was exercised
    assert rep.edge_loss_bound_held
    assert rep.worst_slack >= 0


def test_expectation_requires_30_trials():
    g = gen_complete(6, 6)
    with pytest.raises(ParameterError):
        expectation_diagnostics(
            g, SparsifyParams(t=1, k=2, seed=Seed(0)), 10, Seed(0), p_override=0.5
        )


def test_params_validation():
    with pytest.raises(ParameterError):
        SparsifyParams(t=1, k=1, seed=Seed(0))
    with pytest.raises(ParameterError):
        SparsifyParams(t=-1, k=2, seed=Seed(0))
