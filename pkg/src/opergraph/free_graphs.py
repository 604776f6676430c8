"""The two graded graphs on decorated trees: grafting (prefix) and its
twisted companion, with their closed-form hook statistics and duality map.

Up in the prefix graph grafts one corolla onto a leaf; its adjoint deletes a
maximal node.  The twisted adjoint contracts a quasi-maximal node (an
internal node reachable without first-child steps whose children beyond the
first are leaves); its adjoint inserts above first children only.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import permutations
from math import factorial

from .alphabet import Alphabet
from .graded_graph import GradedGraph, GradedGraphPair
from .poly import Combination
from .tree import (LEAF, SyntaxTree, TreeUniverse, compose_index, corolla, node,
                   node_stats)


class OracleBoundError(ValueError):
    """Input too large for a brute-force oracle."""


# -- the four linear maps -----------------------------------------------------

def up_free(t: SyntaxTree, alphabet: Alphabet) -> Combination:
    """Graft each letter onto each leaf; always simple (coefficients 1)."""
    universe = TreeUniverse(alphabet)
    terms = {}
    for letter in alphabet:
        c = corolla(letter)
        for i in range(1, t.arity + 1):
            result = compose_index(t, i, c)
            terms[result] = terms.get(result, 0) + 1
    return Combination(universe, terms)


_DELETIONS: dict[SyntaxTree, tuple[SyntaxTree, ...]] = {}


def _deletions(t: SyntaxTree) -> tuple[SyntaxTree, ...]:
    """Deletions of t at each of its maximal nodes (alphabet independent)."""
    cached = _DELETIONS.get(t)
    if cached is not None:
        return cached
    if t.is_leaf:
        out: tuple[SyntaxTree, ...] = ()
    elif all(c.is_leaf for c in t.children):
        out = (LEAF,)
    else:
        acc = []
        kids = t.children
        for i, child in enumerate(kids):
            for d in _deletions(child):
                acc.append(node(t.letter, kids[:i] + (d,) + kids[i + 1:]))
        out = tuple(acc)
    _DELETIONS[t] = out
    return out


def up_star_free(t: SyntaxTree, alphabet: Alphabet) -> Combination:
    return Combination(TreeUniverse(alphabet), {d: 1 for d in _deletions(t)})


_CONTRACTIONS: dict[SyntaxTree, tuple[SyntaxTree, ...]] = {}


def _contractions(t: SyntaxTree) -> tuple[SyntaxTree, ...]:
    """Contractions of t at each of its quasi-maximal nodes.

    Recursively: nothing on the leaf; the root itself when every child past
    the first is a leaf; otherwise contractions inside children 2..k.
    """
    cached = _CONTRACTIONS.get(t)
    if cached is not None:
        return cached
    if t.is_leaf:
        out: tuple[SyntaxTree, ...] = ()
    else:
        kids = t.children
        if all(c.is_leaf for c in kids[1:]):
            out = (kids[0],)
        else:
            acc = []
            for j in range(1, len(kids)):
                for c in _contractions(kids[j]):
                    acc.append(node(t.letter, kids[:j] + (c,) + kids[j + 1:]))
            out = tuple(acc)
    _CONTRACTIONS[t] = out
    return out


def v_star_free(t: SyntaxTree, alphabet: Alphabet) -> Combination:
    return Combination(TreeUniverse(alphabet), {c: 1 for c in _contractions(t)})


def v_free(t: SyntaxTree, alphabet: Alphabet) -> Combination:
    """Adjoint of the twisted contraction map: a new root above, or a
    recursive insertion inside a child past the first."""
    universe = TreeUniverse(alphabet)
    terms: dict[SyntaxTree, int] = {}
    for letter in alphabet:
        grown = compose_index(corolla(letter), 1, t)
        terms[grown] = terms.get(grown, 0) + 1
    if not t.is_leaf:
        kids = t.children
        for j in range(1, len(kids)):
            for inner, c in v_free(kids[j], alphabet).terms():
                grown = node(t.letter, kids[:j] + (inner,) + kids[j + 1:])
                terms[grown] = terms.get(grown, 0) + c
    return Combination(universe, terms)


# -- hook statistics ------------------------------------------------------------

def multinomial(parts) -> int:
    """Number of shuffles of blocks of the given sizes."""
    parts = list(parts)
    out = factorial(sum(parts))
    for p in parts:
        out //= factorial(p)
    return out


@lru_cache(maxsize=None)
def _subtree_degree_product(t: SyntaxTree) -> int:
    if t.is_leaf:
        return 1
    out = t.degree
    for c in t.children:
        out *= _subtree_degree_product(c)
    return out


def hook_closed_form(t: SyntaxTree) -> int:
    """deg(t)! divided by the product of the degrees of all internal-node
    subtrees; counts the linear extensions of the ancestor order of t."""
    return factorial(t.degree) // _subtree_degree_product(t)


@lru_cache(maxsize=None)
def twisted_hook(t: SyntaxTree) -> int:
    """Linear extensions of the twisted ancestor order: the shuffle factor
    skips the first child."""
    if t.is_leaf:
        return 1
    out = multinomial(c.degree for c in t.children[1:])
    for c in t.children:
        out *= twisted_hook(c)
    return out


@lru_cache(maxsize=None)
def nf(t: SyntaxTree) -> int:
    """Number of leaves whose address avoids the integer 1."""
    if t.is_leaf:
        return 1
    return sum(nf(c) for c in t.children[1:])


def phi_free(t: SyntaxTree, alphabet: Alphabet) -> int:
    """Diagonal coefficient making the prefix/twisted pair dual."""
    return len(alphabet) * nf(t)


@lru_cache(maxsize=None)
def _maximal_count(t: SyntaxTree) -> int:
    if t.is_leaf:
        return 0
    if all(c.is_leaf for c in t.children):
        return 1
    return sum(_maximal_count(c) for c in t.children)


def phi_self_singleton(t: SyntaxTree, alphabet: Alphabet) -> int:
    """Self-duality coefficient arity(t) - #maximal(t); only singleton
    alphabets admit a diagonal self-commutator."""
    if len(alphabet) != 1:
        raise ValueError(
            f"self-duality is diagonal only for singleton alphabets, got {alphabet.render()}")
    return t.arity - _maximal_count(t)


# -- brute-force oracle -----------------------------------------------------------

def _ancestor_pairs(t: SyntaxTree, twisted: bool):
    internal = node_stats(t).internal_nodes
    pairs = []
    for u in internal:
        for v in internal:
            if u == v:
                continue
            if twisted:
                # u before v when v sits past a non-first child of u,
                # or u sits inside the first subtree of v
                if (len(v) > len(u) and v[:len(u)] == u and v[len(u)] >= 2) or \
                   (len(u) > len(v) and u[:len(v)] == v and u[len(v)] == 1):
                    pairs.append((u, v))
            else:
                if len(v) > len(u) and v[:len(u)] == u:
                    pairs.append((u, v))
    return internal, pairs


def linear_extensions(t: SyntaxTree, twisted: bool = False, *, bound: int = 8,
                      return_words: bool = False):
    """Count linear extensions of the (twisted) order on internal nodes by
    filtering all permutations; the independent oracle for the hook formulas."""
    if t.degree > bound:
        raise OracleBoundError(f"degree {t.degree} exceeds the oracle bound {bound}")
    internal, pairs = _ancestor_pairs(t, twisted)
    words = []
    count = 0
    for perm in permutations(internal):
        position = {u: k for k, u in enumerate(perm)}
        if all(position[u] < position[v] for u, v in pairs):
            count += 1
            if return_words:
                words.append(perm)
    return (count, words) if return_words else count


# -- path enumeration by arity ------------------------------------------------------

def theta_table(alphabet: Alphabet, d_max: int) -> dict[tuple[int, int], int]:
    """Initial path counts to trees of degree d and arity n.

    theta(0,1) = 1 and theta(d,n) sums (n+1-|a|) * theta(d-1, n+1-|a|) over
    letters of arity at most n; rows are supported on 1 <= n <= 1+(m-1)d for
    m the maximal arity.
    """
    m = alphabet.max_arity()
    table: dict[tuple[int, int], int] = {(0, 1): 1}
    for d in range(1, d_max + 1):
        for n in range(1, 1 + max(m - 1, 0) * d + 1):
            total = 0
            for letter in alphabet:
                if letter.arity <= n:
                    total += (n + 1 - letter.arity) * table.get((d - 1, n + 1 - letter.arity), 0)
            if total:
                table[(d, n)] = total
    return table


def theta_row_sums(alphabet: Alphabet, d_max: int) -> list[int]:
    table = theta_table(alphabet, d_max)
    return [sum(c for (d, _), c in table.items() if d == row) for row in range(d_max + 1)]


# -- graph builders ----------------------------------------------------------------

@lru_cache(maxsize=None)
def prefix_graph(alphabet: Alphabet) -> GradedGraph:
    return GradedGraph(TreeUniverse(alphabet),
                       up=lambda t: up_free(t, alphabet),
                       up_star=lambda t: up_star_free(t, alphabet),
                       name=f"prefix({alphabet.render()})")


@lru_cache(maxsize=None)
def twisted_graph(alphabet: Alphabet) -> GradedGraph:
    return GradedGraph(TreeUniverse(alphabet),
                       up=lambda t: v_free(t, alphabet),
                       up_star=lambda t: v_star_free(t, alphabet),
                       name=f"twisted({alphabet.render()})")


def prefix_pair(alphabet: Alphabet) -> GradedGraphPair:
    return GradedGraphPair(prefix_graph(alphabet), twisted_graph(alphabet))


def self_pair(alphabet: Alphabet) -> GradedGraphPair:
    g = prefix_graph(alphabet)
    return GradedGraphPair(g, g)
