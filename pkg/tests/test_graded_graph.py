import pytest

from opergraph import LEAF, Combination, corolla, enumerate_trees, parse_term
from opergraph.free_graphs import (phi_free, prefix_graph, prefix_pair,
                                   twisted_graph)
from opergraph import operads
from opergraph.operads import get_operad


def test_up_adjoint_examples(a2):
    graph = prefix_graph(a2)
    assert graph.up_adjoint(corolla(a2["a"])) == \
        Combination.unit(graph.universe, LEAF)
    assert not graph.up_adjoint(LEAF)


def test_adjointness_exhaustive(a2):
    graph = prefix_graph(a2)
    for d in range(4):
        for x in enumerate_trees(a2, d):
            for y, w in graph.up(x).items():
                assert graph.up_adjoint(y).coeff(x) == w
    # and nothing extra: adjoint entries all come from up
    for d in range(1, 5):
        for y in enumerate_trees(a2, d):
            for x, w in graph.up_adjoint(y).items():
                assert graph.up(x).coeff(y) == w


def test_explicit_adjoints_match_generic(a2c3):
    for build in (prefix_graph, twisted_graph):
        graph = build(a2c3)
        for d in range(4):
            for t in enumerate_trees(a2c3, d):
                assert graph.star(t) == graph.up_adjoint(t)


def test_path_weight_sum_chain():
    graph = operads.prefix_graph(get_operad("as"))
    assert graph.path_weight_sum(1, 4) == 6  # weights 1 * 2 * 3
    assert graph.path_weight_sum(2, 2) == 1
    assert graph.path_weight_sum(4, 2) == 0


def test_path_weight_sum_free(a2):
    graph = prefix_graph(a2)
    total = sum(graph.path_weight_sum(LEAF, t) for t in enumerate_trees(a2, 3))
    assert total == 6
    assert graph.path_weight_sum(LEAF, LEAF) == 1


def test_hook_series_matches_path_weights(a2):
    graph = prefix_graph(a2)
    hooks = graph.hook_series_up_to(4)
    assert hooks.coeff(LEAF) == 1
    for d in range(5):
        for t in enumerate_trees(a2, d):
            assert hooks.coeff(t) == graph.path_weight_sum(LEAF, t)
    assert hooks.coeff(parse_term("a[a[*,*],a[*,*]]", a2)) == 2


def test_initial_paths_series_small(a2):
    assert prefix_graph(a2).initial_paths_series(5).t_coeff_list(5) == \
        [1, 1, 2, 6, 24, 120]
    assert twisted_graph(a2).initial_paths_series(5).t_coeff_list(5) == \
        [1, 1, 2, 5, 14, 42]


def test_dias_hooks_in_canonical_order():
    dias = get_operad("dias")
    hooks = operads.prefix_graph(dias).hook_series_up_to(4)
    assert [c for _, c in hooks.items()] == \
        [1, 1, 1, 3, 2, 3, 15, 9, 9, 15, 105, 60, 54, 60, 105]


def test_initial_paths_series_is_the_hook_trace(a2c3):
    for build in (prefix_graph, twisted_graph):
        graph = build(a2c3)
        assert graph.initial_paths_series(4).t_coeff_list(4) == \
            graph.hook_series_up_to(4).trace().t_coeff_list(4)


def test_returning_hooks_free_pair_by_path_pairs(a2):
    pair = prefix_pair(a2)
    returning = pair.returning_hook_series(3)
    assert returning.coeff(LEAF) == 1

    def count_paths(graph, target):
        # path enumeration by walking predecessors, deliberately unmemoized
        if target is LEAF:
            return 1
        return sum(w * count_paths(graph, p)
                   for p, w in graph.up_adjoint(target).items())

    for t in enumerate_trees(a2, 3):
        assert returning.coeff(t) == \
            count_paths(pair.u, t) * count_paths(pair.v, t)


def test_duality_commutator_examples(a2):
    pair = prefix_pair(a2)
    assert pair.duality_commutator(LEAF) == \
        Combination.unit(pair.universe, LEAF, 1)

    dias = get_operad("dias")
    dias_pair = operads.prefix_pair(dias)
    assert dias_pair.duality_commutator((1, 0)) == \
        Combination(dias, {(1, 0): 3, (0, 1): 2})

    motz = get_operad("motz")
    motz_pair = operads.prefix_pair(motz)
    assert motz_pair.duality_commutator((0, 0)) == \
        Combination(motz, {(0, 0): 2})


def test_check_phi_diagonal_free(a2c3):
    report = prefix_pair(a2c3).check_phi_diagonal(
        lambda t: phi_free(t, a2c3), 4)
    assert report.ok and report.mode == "check"
    assert report.checked == sum(len(enumerate_trees(a2c3, d)) for d in range(5))


def test_check_phi_diagonal_dias_self_dual():
    dias = get_operad("dias")
    report = operads.self_pair(dias).check_phi_diagonal(dias.phi, 4)
    assert report.ok


def test_check_phi_diagonal_dias_uv_fails():
    dias = get_operad("dias")
    report = operads.prefix_pair(dias).check_phi_diagonal(None, 3)
    assert not report.ok
    witness = report.witness()
    assert witness.element == (1, 0)
    assert witness.commutator == Combination(dias, {(1, 0): 3, (0, 1): 2})
    # discovery collected the diagonal part seen before the failure
    assert report.table[(0,)] == 2


def test_check_iterated_identity(a2):
    pair = prefix_pair(a2)
    phi = lambda t: phi_free(t, a2)
    sample = [t for d in range(3) for t in enumerate_trees(a2, d)]
    assert pair.check_iterated_identity(phi, 0, sample).ok
    assert pair.check_iterated_identity(phi, 2, sample).ok

    comp = get_operad("comp")
    comp_pair = operads.prefix_pair(comp)
    elements = [x for d in range(3) for x in comp.elements_of_degree(d)]
    report = comp_pair.check_iterated_identity(lambda x: 2, 3, elements)
    assert report.ok and report.checked == len(elements)


def test_structural_checks(a2c3):
    for build in (prefix_graph, twisted_graph):
        graph = build(a2c3)
        ok, witness = graph.check_graded(3)
        assert ok, witness
        ok, witness = graph.check_simple(3)
        assert ok, witness
        ok, witness = graph.check_rooted(3)
        assert ok, witness


def test_dot_export(a2):
    graph = prefix_graph(a2)
    dot = graph.export_dot(2)
    assert dot == graph.export_dot(2)  # deterministic
    assert 'digraph "prefix(a:2)"' in dot
    assert '"*" -> "a[*,*]";' in dot
    assert dot.count("subgraph cluster_") == 3
    for d in range(3):
        for t in enumerate_trees(a2, d):
            assert f'"{t.term}";' in dot
    # the chain shows its weight labels, weight-1 edges stay bare
    chain_dot = operads.prefix_graph(get_operad("as")).export_dot(3)
    assert '"2" -> "3" [label="2"];' in chain_dot
    assert '"1" -> "2";' in chain_dot


def test_json_export(a2):
    payload = prefix_graph(a2).export_json(2)
    by_rank = {}
    for node in payload["nodes"]:
        by_rank[node["rank"]] = by_rank.get(node["rank"], 0) + 1
    assert by_rank == {0: 1, 1: 1, 2: 2}
    assert {"src": "*", "dst": "a[*,*]", "w": 1} in payload["edges"]
    assert all(e["w"] == 1 for e in payload["edges"])


def test_pair_requires_shared_universe(a2, a2c3):
    from opergraph.graded_graph import GradedGraphPair
    with pytest.raises(ValueError):
        GradedGraphPair(prefix_graph(a2), twisted_graph(a2c3))
