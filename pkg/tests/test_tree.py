import json

import pytest

from opergraph import (LEAF, Alphabet, compose_address, compose_forest,
                       compose_index, contract_node, corolla, delete_node,
                       enumerate_trees, is_prefix, node_stats, parse_term,
                       render_term, subtree_at)
from opergraph.series import Series2, fixed_point
from opergraph.tree import (AddressError, ParseError, format_address,
                            leaf_index, parse_address, tree_from_json,
                            tree_to_json)

ABC = Alphabet.parse("a:2,b:2,c:3")

# the degree-5 running example: c at the root, a corolla of b, a bare leaf,
# and an a-node carrying a c-corolla and an a-corolla
RUNNING = parse_term("c[b[*,*],*,a[c[*,*,*],a[*,*]]]", ABC)


def test_parse_render_roundtrip():
    assert parse_term("*", ABC) is LEAF
    t = parse_term(" a[ b[*, *], * ] ", ABC)
    assert render_term(t) == "a[b[*,*],*]"
    assert t.degree == 2 and t.arity == 3
    assert parse_term(render_term(t), ABC) is t


def test_parse_errors_carry_positions():
    with pytest.raises(ParseError) as err:
        parse_term("a[*,*,*]", Alphabet.parse("a:2"))
    assert "arity" in str(err.value) and err.value.position == 0
    with pytest.raises(ParseError) as err:
        parse_term("z[*,*]", ABC)
    assert "unknown letter" in str(err.value)
    with pytest.raises(ParseError):
        parse_term("a[*,*] junk", ABC)
    with pytest.raises(ParseError):
        parse_term("a[*,", ABC)


def test_subtree_at_running_example():
    assert subtree_at(RUNNING, (1,)) == parse_term("b[*,*]", ABC)
    assert subtree_at(RUNNING, (2,)) is LEAF
    assert subtree_at(RUNNING, (3, 2)) == corolla(ABC["a"])
    assert subtree_at(RUNNING, ()) is RUNNING
    with pytest.raises(AddressError):
        subtree_at(parse_term("a[*,*]", ABC), (3,))


def test_node_stats_running_example():
    stats = node_stats(RUNNING)
    assert stats.internal_nodes == ((), (1,), (3,), (3, 1), (3, 2))
    assert stats.leaves == ((1, 1), (1, 2), (2,),
                            (3, 1, 1), (3, 1, 2), (3, 1, 3), (3, 2, 1), (3, 2, 2))
    assert len(stats.nodes) == 13


def test_node_stats_leaf():
    stats = node_stats(LEAF)
    assert stats.leaves == ((),)
    assert stats.internal_nodes == ()
    assert stats.non_first_leaves == ((),)


def test_quasi_maximal_and_non_first_framed_examples(eac):
    t = parse_term("c[a[*,*],c[e[*],*,*],c[*,a[*,*],c[*,*,*]]]", eac)
    stats = node_stats(t)
    assert stats.quasi_maximal_nodes == ((2,), (3, 2), (3, 3))
    assert len(stats.non_first_leaves) == 5
    assert stats.non_first_leaves == ((2, 2), (2, 3), (3, 2, 2), (3, 3, 2), (3, 3, 3))


def test_compose_index_worked_example():
    t = parse_term("a[b[*,a[*,*]],c[*,*,*]]", ABC)
    s = parse_term("c[*,*,b[*,*]]", ABC)
    expected = parse_term("a[b[*,a[*,*]],c[*,c[*,*,b[*,*]],*]]", ABC)
    assert compose_index(t, 5, s) == expected
    # the fifth leaf sits at address 22
    assert node_stats(t).leaves[4] == (2, 2)
    assert compose_address(t, (2, 2), s) == expected


def test_compose_unit_axioms(a2):
    s = parse_term("a[a[*,*],*]", a2)
    assert compose_index(LEAF, 1, s) is s
    for i in range(1, s.arity + 1):
        assert compose_index(s, i, LEAF) is s


def test_compose_degrees_and_arities(a2c3):
    t = parse_term("a[*,c[*,*,*]]", a2c3)
    s = parse_term("c[a[*,*],*,*]", a2c3)
    out = compose_index(t, 3, s)
    assert out.degree == t.degree + s.degree
    assert out.arity == t.arity + s.arity - 1


def test_operad_axioms_exhaustive(a2):
    trees = [t for d in range(3) for t in enumerate_trees(a2, d)]
    for x in trees:
        for y in trees:
            for z in trees:
                # nested composition: inner graft then outer
                for i in range(1, x.arity + 1):
                    for j in range(1, y.arity + 1):
                        lhs = compose_index(compose_index(x, i, y), i + j - 1, z)
                        rhs = compose_index(x, i, compose_index(y, j, z))
                        assert lhs == rhs
                # disjoint grafts commute
                for i in range(1, x.arity + 1):
                    for j in range(i + 1, x.arity + 1):
                        lhs = compose_index(compose_index(x, i, y), j + y.arity - 1, z)
                        rhs = compose_index(compose_index(x, j, z), i, y)
                        assert lhs == rhs


def test_leaf_index_agrees_with_compose_index(a2c3):
    t = parse_term("c[a[*,*],*,c[*,a[*,*],*]]", a2c3)
    s = corolla(a2c3["a"])
    leaves = node_stats(t).leaves
    for i, address in enumerate(leaves, start=1):
        assert leaf_index(t, address) == i
        assert compose_address(t, address, s) == compose_index(t, i, s)


def test_delete_node_examples(a2):
    t = parse_term("a[a[*,*],*]", a2)
    assert delete_node(t, (1,)) == parse_term("a[*,*]", a2)
    assert delete_node(corolla(a2["a"]), ()) is LEAF
    with pytest.raises(AddressError):
        delete_node(t, ())  # root has an internal child
    with pytest.raises(AddressError):
        delete_node(t, (2,))  # a leaf


def test_delete_after_graft_roundtrip(a2):
    c = corolla(a2["a"])
    for d in range(5):
        for t in enumerate_trees(a2, d):
            leaves = node_stats(t).leaves
            for i in range(1, t.arity + 1):
                grown = compose_index(t, i, c)
                assert delete_node(grown, leaves[i - 1]) == t


def test_contract_node_examples(a2, a2c3):
    t = parse_term("c[a[*,*],c[*,*,a[a[*,*],a[*,*]]],*]", a2c3)
    assert contract_node(t, (2,)) == parse_term("c[a[*,*],a[a[*,*],a[*,*]],*]", a2c3)
    # on a maximal node contraction and deletion agree
    u = parse_term("a[*,a[*,*]]", a2)
    assert contract_node(u, (2,)) == delete_node(u, (2,)) == parse_term("a[*,*]", a2)
    with pytest.raises(AddressError):
        contract_node(parse_term("a[a[*,*],a[*,*]]", a2), ())


def test_enumerate_trees_counts(a2, a2c3):
    assert enumerate_trees(a2, 0) == [LEAF]
    assert len(enumerate_trees(a2, 3)) == 5
    # canonical order is term-lexicographic
    terms = [t.term for t in enumerate_trees(a2, 2)]
    assert terms == sorted(terms)
    # count oracle: the grading series solves S = 1 + t * sum_a S^|a|
    gen = a2c3.gen_poly()
    series = fixed_point(lambda s: Series2.one(5) + Series2.t(5) * gen.subs_t(s), 5)
    for d in range(6):
        assert len(enumerate_trees(a2c3, d)) == series.coeff(0, d)


def test_arity_degree_identity(a2c3):
    for d in range(4):
        for t in enumerate_trees(a2c3, d):
            internal = node_stats(t).internal_nodes
            assert t.arity == 1 + sum(subtree_at(t, u).letter.arity - 1 for u in internal)


def test_every_tree_has_maximal_and_quasi_maximal(eac):
    for d in range(1, 4):
        for t in enumerate_trees(eac, d):
            stats = node_stats(t)
            assert stats.maximal_nodes
            assert stats.quasi_maximal_nodes


def test_is_prefix_examples(a2):
    assert is_prefix(LEAF, parse_term("a[a[*,*],*]", a2))
    assert is_prefix(parse_term("a[*,*]", a2), parse_term("a[a[*,*],*]", a2))
    assert not is_prefix(parse_term("a[*,*]", ABC), parse_term("b[*,*]", ABC))


def test_is_prefix_against_decomposition_search(a2):
    # brute force: s is a prefix of t iff some forest recomposes s into t
    from itertools import product
    trees = [t for d in range(4) for t in enumerate_trees(a2, d)]
    pool = [t for d in range(4) for t in enumerate_trees(a2, d)]
    for s in trees:
        for t in trees:
            found = False
            if t.degree >= s.degree:
                for forest in product(pool, repeat=s.arity):
                    if sum(r.degree for r in forest) != t.degree - s.degree:
                        continue
                    if compose_forest(s, forest) == t:
                        found = True
                        break
            assert is_prefix(s, t) == found


def test_json_codec(a2c3):
    t = parse_term("c[a[*,*],*,c[*,*,*]]", a2c3)
    blob = json.dumps(tree_to_json(t))
    assert tree_from_json(json.loads(blob), a2c3) == t
    assert tree_to_json(LEAF) is None


def test_address_formatting():
    assert format_address(()) == "e"
    assert format_address((3, 2)) == "32"
    assert format_address((3, 12, 1)) == "3.12.1"
    assert parse_address("32") == (3, 2)
    assert parse_address("3.12.1") == (3, 12, 1)
    assert parse_address("e") == ()


def test_wide_node_addresses():
    wide = Alphabet.parse("w:12")
    t = parse_term("w[" + ",".join(["*"] * 11 + ["w[" + ",".join(["*"] * 12) + "]"]) + "]", wide)
    stats = node_stats(t)
    assert (12,) in stats.internal_nodes
    assert format_address(stats.leaves[-1]) == "12.12"
