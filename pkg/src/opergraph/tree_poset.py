"""The prefix order on decorated trees: lattice operations, intervals,
shadows and interval enumeration.

The order is "s below t when t grows out of s"; meets intersect trees from
the root, joins superimpose them (term unification) and exist exactly for
pairs with a common upper bound.  Interval structure is controlled by the
shadow, the nonplanar undecorated image of the difference forest.
"""
from __future__ import annotations

from functools import lru_cache

from .alphabet import Alphabet, Letter
from .series import Series2, fixed_point
from .tree import (LEAF, SyntaxTree, compose_forest, enumerate_trees, is_prefix,
                   node)

Forest = tuple[SyntaxTree, ...]


class NotComparableError(ValueError):
    """The two trees are not related in the prefix order."""


def poset_leq(s: SyntaxTree, t: SyntaxTree) -> bool:
    return is_prefix(s, t)


def meet(t: SyntaxTree, t2: SyntaxTree) -> SyntaxTree:
    """Greatest common prefix (the largest common part from the roots)."""
    if t.is_leaf or t2.is_leaf or t.letter != t2.letter:
        return LEAF
    return node(t.letter, (meet(a, b) for a, b in zip(t.children, t2.children)))


def join(t: SyntaxTree, t2: SyntaxTree) -> SyntaxTree | None:
    """Least upper bound (unification); None when the roots clash anywhere."""
    if t.is_leaf:
        return t2
    if t2.is_leaf:
        return t
    if t.letter != t2.letter:
        return None
    kids = []
    for a, b in zip(t.children, t2.children):
        j = join(a, b)
        if j is None:
            return None
        kids.append(j)
    return node(t.letter, kids)


def difference_forest(s: SyntaxTree, t: SyntaxTree) -> Forest:
    """The unique forest r with t = s composed with r; requires s <= t."""
    if s.is_leaf:
        return (t,)
    if t.is_leaf or s.letter != t.letter:
        raise NotComparableError(f"{s.term} is not a prefix of {t.term}")
    out: list[SyntaxTree] = []
    for a, b in zip(s.children, t.children):
        out.extend(difference_forest(a, b))
    return tuple(out)


def render_forest(forest: Forest) -> str:
    return ";".join(t.term for t in forest)


def parse_forest(text: str, alphabet: Alphabet) -> Forest:
    from .tree import parse_term
    return tuple(parse_term(chunk, alphabet) for chunk in text.split(";"))


def slot_letter(k: int) -> Letter:
    """The reserved arity-k letter used to root a forest; never user-visible."""
    return Letter(f"#{k}", k)


def slot_tree(forest: Forest) -> SyntaxTree:
    """Root the forest on a fresh reserved letter of matching arity."""
    if not forest:
        raise ValueError("forests are nonempty")
    return node(slot_letter(len(forest)), forest)


# -- shadows ---------------------------------------------------------------------

class Shadow:
    """Finite multiset of shadows; canonical form sorts children by their
    own serialization, so equality is multiset equality."""

    __slots__ = ("children", "serial")

    def __init__(self, children=()):
        kids = tuple(sorted(children, key=lambda s: s.serial))
        self.children = kids
        self.serial = "{" + ",".join(c.serial for c in kids) + "}"

    def __eq__(self, other):
        return isinstance(other, Shadow) and self.serial == other.serial

    def __hash__(self):
        return hash(self.serial)

    def __str__(self):
        return self.serial

    def __repr__(self):
        return f"<shadow {self.serial}>"


EMPTY_SHADOW = Shadow()


def shadow(t: SyntaxTree) -> Shadow:
    """Forget planarity, decorations and leaves; keeps only the nesting of
    internal nodes below the root."""
    if t.is_leaf:
        raise ValueError("the leaf has no shadow")
    return Shadow(shadow(c) for c in t.children if not c.is_leaf)


def load(s: Shadow) -> int:
    """Product over children of (1 + load); sizes the ideals of the shadow."""
    out = 1
    for c in s.children:
        out *= 1 + load(c)
    return out


# -- intervals ----------------------------------------------------------------------

def prefixes(t: SyntaxTree) -> list[SyntaxTree]:
    """All prefixes of t, sorted canonically."""
    out = _prefixes(t)
    return sorted(out, key=lambda r: (r.degree, r.term))


@lru_cache(maxsize=None)
def _prefixes(t: SyntaxTree) -> tuple[SyntaxTree, ...]:
    if t.is_leaf:
        return (LEAF,)
    acc = [LEAF]
    from itertools import product
    for kids in product(*[_prefixes(c) for c in t.children]):
        acc.append(node(t.letter, kids))
    return tuple(acc)


def interval_shadow(s: SyntaxTree, t: SyntaxTree) -> Shadow:
    if not poset_leq(s, t):
        raise NotComparableError(f"{s.term} is not a prefix of {t.term}")
    return shadow(slot_tree(difference_forest(s, t)))


def interval_count(s: SyntaxTree, t: SyntaxTree) -> int:
    return load(interval_shadow(s, t))


def interval_elements(s: SyntaxTree, t: SyntaxTree) -> list[SyntaxTree]:
    """Every r with s <= r <= t, through the product structure of the
    interval: one independent prefix choice per difference-forest slot."""
    if not poset_leq(s, t):
        raise NotComparableError(f"{s.term} is not a prefix of {t.term}")
    from itertools import product
    slots = [prefixes(r) for r in difference_forest(s, t)]
    out = [compose_forest(s, choice) for choice in product(*slots)]
    return sorted(out, key=lambda r: (r.degree, r.term))


def interval(s: SyntaxTree, t: SyntaxTree, mode: str = "count"):
    if mode == "count":
        return interval_count(s, t)
    if mode == "elements":
        return interval_elements(s, t)
    raise ValueError(f"unknown mode {mode!r}")


def interval_isomorphic(s: SyntaxTree, t: SyntaxTree,
                        s2: SyntaxTree, t2: SyntaxTree) -> bool:
    """Two intervals are order-isomorphic exactly when their difference
    shadows agree."""
    return interval_shadow(s, t) == interval_shadow(s2, t2)


# -- enumeration -----------------------------------------------------------------------

def is_stringy(t: SyntaxTree) -> bool:
    """At most one internal child under every internal node."""
    if t.is_leaf:
        return True
    big = [c for c in t.children if not c.is_leaf]
    return len(big) <= 1 and all(is_stringy(c) for c in big)


def stringy_count(alphabet: Alphabet, d: int) -> int:
    """Number of stringy trees of degree d (the co-irreducible elements):
    (#letters) * (sum of arities)^(d-1).

    The closed form starts at d = 1; d = 0 returns 1 for the leaf by
    convention (the leaf covers nothing, hence is also co-irreducible).
    """
    if d < 0:
        raise ValueError("degree must be >= 0")
    if d == 0:
        return 1
    count = len(alphabet)
    arity_sum = sum(letter.arity for letter in alphabet)
    return count * arity_sum ** (d - 1)


def interval_series(alphabet: Alphabet, t_trunc: int) -> Series2:
    """Bivariate interval counts: q marks the degree of the lower bound,
    t the degree of the upper bound.

    Solves F = 1 + t*R(F - q*t*R(F)) + q*t*R(F) where R is the alphabet's
    counting polynomial, by contraction iteration.
    """
    gen = alphabet.gen_poly()
    qt = Series2.q(t_trunc) * Series2.t(t_trunc)
    t = Series2.t(t_trunc)
    one = Series2.one(t_trunc)

    def equation(f: Series2) -> Series2:
        marked = qt * gen.subs_t(f)
        return one + t * gen.subs_t(f - marked) + marked

    return fixed_point(equation, t_trunc, require_integral=True)


def interval_count_brute(alphabet: Alphabet, lower_degree: int, upper_degree: int) -> int:
    """Directly count comparable pairs (s, t) with the given degrees."""
    total = 0
    for t in enumerate_trees(alphabet, upper_degree):
        for s in enumerate_trees(alphabet, lower_degree):
            if is_prefix(s, t):
                total += 1
    return total
