"""Planar rooted trees decorated by an alphabet.

Trees are immutable values: the textual canonical form (``*`` for the leaf,
``name[child,...]`` for internal nodes) is the sole equality and ordering
witness, and structurally equal trees are interned to a single object so
that repeated enumeration and deletion work at dictionary speed.

Node addresses are tuples of positive integers; the empty tuple is the root.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .alphabet import Alphabet, Letter

Address = tuple[int, ...]


class ParseError(ValueError):
    """Syntax error in a term, with the 0-based offset where it occurred."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class AddressError(ValueError):
    """An address that does not point where the operation requires."""


class SyntaxTree:
    """Either the leaf or a letter with exactly ``letter.arity`` subtrees."""

    __slots__ = ("letter", "children", "term", "degree", "arity", "_hash")

    def __init__(self, letter: Letter | None, children: tuple["SyntaxTree", ...],
                 term: str, degree: int, arity: int):
        self.letter = letter
        self.children = children
        self.term = term
        self.degree = degree
        self.arity = arity
        self._hash = hash(term)

    @property
    def is_leaf(self) -> bool:
        return self.letter is None

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return self is other or (isinstance(other, SyntaxTree) and self.term == other.term)

    def __lt__(self, other: "SyntaxTree"):
        return self.term < other.term

    def __str__(self) -> str:
        return self.term

    def __repr__(self) -> str:
        return f"<tree {self.term}>"


_INTERN: dict[str, SyntaxTree] = {}

LEAF = SyntaxTree(None, (), "*", 0, 1)
_INTERN["*"] = LEAF


def node(letter: Letter, children) -> SyntaxTree:
    children = tuple(children)
    if len(children) != letter.arity:
        raise ValueError(
            f"letter {letter.name!r} has arity {letter.arity}, got {len(children)} children")
    term = f"{letter.name}[{','.join(c.term for c in children)}]"
    cached = _INTERN.get(term)
    if cached is not None:
        return cached
    tree = SyntaxTree(
        letter, children, term,
        1 + sum(c.degree for c in children),
        sum(c.arity for c in children))
    _INTERN[term] = tree
    return tree


def corolla(letter: Letter) -> SyntaxTree:
    return node(letter, (LEAF,) * letter.arity)


# -- text codec --------------------------------------------------------------

def render_term(t: SyntaxTree) -> str:
    return t.term


def parse_term(text: str, alphabet: Alphabet) -> SyntaxTree:
    pos = 0

    def skip_ws():
        nonlocal pos
        while pos < len(text) and text[pos].isspace():
            pos += 1

    def parse() -> SyntaxTree:
        nonlocal pos
        skip_ws()
        if pos >= len(text):
            raise ParseError("unexpected end of input", pos)
        if text[pos] == "*":
            pos += 1
            return LEAF
        start = pos
        while pos < len(text) and (text[pos].isalnum() or text[pos] in "_#"):
            pos += 1
        name = text[start:pos]
        if not name:
            raise ParseError(f"expected '*' or a letter, found {text[pos]!r}", pos)
        letter = alphabet.get(name)
        if letter is None:
            raise ParseError(f"unknown letter {name!r}", start)
        skip_ws()
        if pos >= len(text) or text[pos] != "[":
            raise ParseError(f"expected '[' after letter {name!r}", pos)
        pos += 1
        children = [parse()]
        skip_ws()
        while pos < len(text) and text[pos] == ",":
            pos += 1
            children.append(parse())
            skip_ws()
        if pos >= len(text) or text[pos] != "]":
            raise ParseError("expected ',' or ']'", pos)
        pos += 1
        if len(children) != letter.arity:
            raise ParseError(
                f"letter {name!r} has arity {letter.arity}, got {len(children)} children",
                start)
        return node(letter, children)

    result = parse()
    skip_ws()
    if pos != len(text):
        raise ParseError(f"trailing input {text[pos:]!r}", pos)
    return result


def tree_to_json(t: SyntaxTree):
    """Nested ``{letter, children}`` records; the leaf is null."""
    if t.is_leaf:
        return None
    return {"letter": t.letter.name, "children": [tree_to_json(c) for c in t.children]}


def tree_from_json(obj, alphabet: Alphabet) -> SyntaxTree:
    if obj is None:
        return LEAF
    letter = alphabet.get(obj["letter"])
    if letter is None:
        raise ValueError(f"unknown letter {obj['letter']!r}")
    return node(letter, (tree_from_json(c, alphabet) for c in obj["children"]))


# -- addresses ---------------------------------------------------------------

def format_address(u: Address) -> str:
    if not u:
        return "e"
    if all(i <= 9 for i in u):
        return "".join(str(i) for i in u)
    return ".".join(str(i) for i in u)


def parse_address(text: str) -> Address:
    if text in ("", "e"):
        return ()
    if "." in text:
        return tuple(int(x) for x in text.split("."))
    return tuple(int(ch) for ch in text)


def subtree_at(t: SyntaxTree, u: Address) -> SyntaxTree:
    """The suffix subtree rooted at address u."""
    current = t
    for depth, i in enumerate(u):
        if current.is_leaf or not 1 <= i <= len(current.children):
            raise AddressError(
                f"address {format_address(u)} invalid in {t.term} "
                f"(no child {i} at {format_address(u[:depth])})")
        current = current.children[i - 1]
    return current


def _replace_at(t: SyntaxTree, u: Address, replacement: SyntaxTree) -> SyntaxTree:
    if not u:
        return replacement
    i = u[0]
    kids = t.children
    return node(t.letter, kids[:i - 1] + (_replace_at(kids[i - 1], u[1:], replacement),) + kids[i:])


# -- structural statistics ----------------------------------------------------

@dataclass(frozen=True)
class NodeStats:
    nodes: tuple[Address, ...]
    internal_nodes: tuple[Address, ...]
    leaves: tuple[Address, ...]
    maximal_nodes: tuple[Address, ...]
    quasi_maximal_nodes: tuple[Address, ...]
    non_first_leaves: tuple[Address, ...]


def node_stats(t: SyntaxTree) -> NodeStats:
    """All node classes of the tree, each sorted lexicographically.

    Leaves in this order carry the leaf indices 1..arity used by
    ``compose_index``.  A leaf or internal node is "non-first"/"quasi-maximal
    eligible" when its address avoids the integer 1 entirely.
    """
    nodes, internal, leaves = [], [], []
    maximal, quasi, non_first = [], [], []

    def walk(sub: SyntaxTree, addr: Address, saw_first: bool):
        nodes.append(addr)
        if sub.is_leaf:
            leaves.append(addr)
            if not saw_first:
                non_first.append(addr)
            return
        internal.append(addr)
        if all(c.is_leaf for c in sub.children):
            maximal.append(addr)
        if not saw_first and all(c.is_leaf for c in sub.children[1:]):
            quasi.append(addr)
        for i, child in enumerate(sub.children, start=1):
            walk(child, addr + (i,), saw_first or i == 1)

    walk(t, (), False)
    return NodeStats(tuple(sorted(nodes)), tuple(sorted(internal)), tuple(sorted(leaves)),
                     tuple(sorted(maximal)), tuple(sorted(quasi)), tuple(sorted(non_first)))


# -- composition ---------------------------------------------------------------

def compose_index(t: SyntaxTree, i: int, s: SyntaxTree) -> SyntaxTree:
    """Graft the root of s onto the i-th leaf of t (leaves numbered 1..arity
    in lexicographic address order)."""
    if not 1 <= i <= t.arity:
        raise IndexError(f"leaf index {i} out of range 1..{t.arity} for {t.term}")
    if t.is_leaf:
        return s
    remaining = i
    kids = t.children
    for pos, child in enumerate(kids):
        if remaining <= child.arity:
            return node(t.letter,
                        kids[:pos] + (compose_index(child, remaining, s),) + kids[pos + 1:])
        remaining -= child.arity
    raise AssertionError("unreachable: leaf count bookkeeping broke")


def leaf_index(t: SyntaxTree, u: Address) -> int:
    sub = subtree_at(t, u)
    if not sub.is_leaf:
        raise AddressError(f"{format_address(u)} is not a leaf of {t.term}")
    return node_stats(t).leaves.index(u) + 1


def compose_address(t: SyntaxTree, u: Address, s: SyntaxTree) -> SyntaxTree:
    """Graft the root of s into the leaf at address u of t."""
    sub = subtree_at(t, u)
    if not sub.is_leaf:
        raise AddressError(f"{format_address(u)} is not a leaf of {t.term}")
    return _replace_at(t, u, s)


def compose_forest(t: SyntaxTree, forest) -> SyntaxTree:
    """Full composition: graft forest[i-1] onto the i-th leaf, for all i."""
    forest = tuple(forest)
    if len(forest) != t.arity:
        raise ValueError(f"need {t.arity} trees, got {len(forest)}")
    if t.is_leaf:
        return forest[0]
    out, start = [], 0
    for child in t.children:
        out.append(compose_forest(child, forest[start:start + child.arity]))
        start += child.arity
    return node(t.letter, out)


# -- deletion and contraction ---------------------------------------------------

def delete_node(t: SyntaxTree, u: Address) -> SyntaxTree:
    """Replace the maximal internal node at u by a leaf."""
    sub = subtree_at(t, u)
    if sub.is_leaf or not all(c.is_leaf for c in sub.children):
        raise AddressError(f"{format_address(u)} is not a maximal internal node of {t.term}")
    return _replace_at(t, u, LEAF)


def contract_node(t: SyntaxTree, u: Address) -> SyntaxTree:
    """Remove the internal node at u, splicing its unique internal subtree
    (or a leaf, when the node is maximal) into its place.

    Defined whenever the node at u has at most one non-leaf child; on maximal
    nodes it coincides with ``delete_node``.
    """
    sub = subtree_at(t, u)
    if sub.is_leaf:
        raise AddressError(f"{format_address(u)} is not an internal node of {t.term}")
    big = [c for c in sub.children if not c.is_leaf]
    if len(big) > 1:
        raise AddressError(
            f"node {format_address(u)} of {t.term} has {len(big)} internal children; "
            "contraction needs at most one")
    return _replace_at(t, u, big[0] if big else LEAF)


# -- enumeration and prefix order ------------------------------------------------

@lru_cache(maxsize=None)
def _degree_slice(alphabet: Alphabet, degree: int) -> tuple[SyntaxTree, ...]:
    if degree == 0:
        return (LEAF,)
    out = []
    for letter in alphabet:
        for split in _compositions(degree - 1, letter.arity):
            for kids in product(*[_degree_slice(alphabet, d) for d in split]):
                out.append(node(letter, kids))
    return tuple(sorted(out, key=lambda t: t.term))


@lru_cache(maxsize=None)
def _compositions(total: int, parts: int) -> tuple[tuple[int, ...], ...]:
    if parts == 1:
        return ((total,),)
    return tuple((first,) + rest
                 for first in range(total + 1)
                 for rest in _compositions(total - first, parts - 1))


def enumerate_trees(alphabet: Alphabet, degree: int) -> list[SyntaxTree]:
    """All trees over the alphabet with the given number of internal nodes,
    in canonical (term-lexicographic) order."""
    if degree < 0:
        raise ValueError("degree must be >= 0")
    return list(_degree_slice(alphabet, degree))


def is_prefix(s: SyntaxTree, t: SyntaxTree) -> bool:
    """True when t can be obtained from s by grafting a forest onto its leaves."""
    if s.is_leaf:
        return True
    if t.is_leaf or s.letter != t.letter:
        return False
    return all(is_prefix(a, b) for a, b in zip(s.children, t.children))


# -- universe for combinations / graded graphs ------------------------------------

@dataclass(frozen=True)
class TreeUniverse:
    """Trees over one alphabet, graded by degree."""

    alphabet: Alphabet

    @property
    def name(self) -> str:
        return f"trees({self.alphabet.render()})"

    @property
    def root(self) -> SyntaxTree:
        return LEAF

    def elements_of_rank(self, d: int) -> list[SyntaxTree]:
        return enumerate_trees(self.alphabet, d)

    def rank_of(self, t: SyntaxTree) -> int:
        return t.degree

    def render_elem(self, t: SyntaxTree) -> str:
        return t.term

    def sort_key(self, t: SyntaxTree):
        return (t.degree, t.term)
