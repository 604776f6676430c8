"""Concrete graded operads and the graded graphs they induce.

Each operad packages an element codec, composition, a degree, its minimal
generators, and explicit up/twisted maps; it doubles as the universe object
for combinations and graded graphs over its elements.  Elements are plain
ints (the chain) or tuples of small ints (all word operads).
"""
from __future__ import annotations

from functools import lru_cache
from itertools import product

from .alphabet import Alphabet, Letter
from .free_graphs import OracleBoundError, v_free
from .graded_graph import GradedGraph, GradedGraphPair
from .poly import Combination
from .tree import LEAF, SyntaxTree, enumerate_trees


class NotDiagonalError(ValueError):
    """A commutator which is not a multiple of its argument."""

    def __init__(self, message, element, commutator):
        super().__init__(message)
        self.element = element
        self.commutator = commutator


def render_word(u: tuple[int, ...]) -> str:
    if all(a <= 9 for a in u):
        return "".join(str(a) for a in u)
    return ",".join(str(a) for a in u)


def parse_word(text: str) -> tuple[int, ...]:
    text = text.strip()
    if "," in text:
        return tuple(int(x) for x in text.split(","))
    return tuple(int(ch) for ch in text)


class Operad:
    """Shared machinery; subclasses fill in the combinatorial substance."""

    name = "operad"
    unit = None
    generators: tuple = ()
    phi_pair = "uv"

    def __init__(self):
        self._degree_slices: list[list] = [[self.unit]]

    # -- per-operad substance ------------------------------------------------

    def arity(self, x) -> int:
        raise NotImplementedError

    def degree(self, x) -> int:
        raise NotImplementedError

    def compose(self, x, i: int, y):
        raise NotImplementedError

    def contains(self, x) -> bool:
        raise NotImplementedError

    def elements_of_arity(self, n: int) -> list:
        raise NotImplementedError

    def v_explicit(self, x) -> list:
        """Successor list of the twisted map, from the closed form."""
        raise NotImplementedError

    def phi(self, x) -> int:
        """Diagonal duality coefficient for this operad's dual pair."""
        raise NotImplementedError

    # -- codec ----------------------------------------------------------------

    def render_elem(self, x) -> str:
        return render_word(x)

    def parse_elem(self, text: str):
        x = parse_word(text)
        if not self.contains(x):
            raise ValueError(f"{text!r} is not an element of {self.name}")
        return x

    # -- universe protocol ------------------------------------------------------

    @property
    def root(self):
        return self.unit

    def rank_of(self, x) -> int:
        return self.degree(x)

    def sort_key(self, x):
        return (self.degree(x), self.render_elem(x))

    def elements_of_rank(self, d: int) -> list:
        return self.elements_of_degree(d)

    def elements_of_degree(self, d: int) -> list:
        """Degree slice, generated by composing generators onto the slice
        below (complete because every element is built from generators)."""
        if d < 0:
            raise ValueError("degree must be >= 0")
        while len(self._degree_slices) <= d:
            below = self._degree_slices[-1]
            grown = set()
            for x in below:
                for g in self.generators:
                    for i in range(1, self.arity(x) + 1):
                        grown.add(self.compose(x, i, g))
            self._degree_slices.append(sorted(grown, key=self.sort_key))
        return self._degree_slices[d]

    def __eq__(self, other):
        return isinstance(other, Operad) and self.name == other.name

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return f"<operad {self.name}>"


class AsOperad(Operad):
    """The chain: one element per arity, composition adds arities."""

    name = "as"
    unit = 1
    generators = (2,)

    def arity(self, x):
        return x

    def degree(self, x):
        return x - 1

    def compose(self, x, i, y):
        return x + y - 1

    def contains(self, x):
        return isinstance(x, int) and x >= 1

    def elements_of_arity(self, n):
        return [n]

    def render_elem(self, x):
        return str(x)

    def parse_elem(self, text):
        x = int(text)
        if not self.contains(x):
            raise ValueError(f"{text!r} is not an element of {self.name}")
        return x

    def v_explicit(self, x):
        return [x + 1]

    def phi(self, x):
        return 1


class DiasOperad(Operad):
    """Binary words with exactly one 0; substitution lifts the inserted word
    by the replaced letter."""

    name = "dias"
    unit = (0,)
    generators = ((0, 1), (1, 0))
    phi_pair = "uu"

    def arity(self, x):
        return len(x)

    def degree(self, x):
        return len(x) - 1

    def compose(self, x, i, y):
        pivot = x[i - 1]
        inserted = tuple(max(pivot, a) for a in y)
        return x[:i - 1] + inserted + x[i:]

    def contains(self, x):
        return (isinstance(x, tuple) and len(x) >= 1
                and all(a in (0, 1) for a in x) and x.count(0) == 1)

    def elements_of_arity(self, n):
        return [(1,) * k + (0,) + (1,) * (n - 1 - k) for k in range(n)]

    def v_explicit(self, x):
        return [x + (1,), (1,) * len(x) + (0,)]

    def phi(self, x):
        k = x.index(0)
        ell = len(x) - 1 - k
        return (1 if k == 0 else 8 * k) + (1 if ell == 0 else 8 * ell)


class CompOperad(Operad):
    """Binary words starting with 0; substitution complements the inserted
    word under a 1."""

    name = "comp"
    unit = (0,)
    generators = ((0, 0), (0, 1))

    def arity(self, x):
        return len(x)

    def degree(self, x):
        return len(x) - 1

    def compose(self, x, i, y):
        pivot = x[i - 1]
        inserted = y if pivot == 0 else tuple(1 - a for a in y)
        return x[:i - 1] + inserted + x[i:]

    def contains(self, x):
        return (isinstance(x, tuple) and len(x) >= 1 and x[0] == 0
                and all(a in (0, 1) for a in x))

    def elements_of_arity(self, n):
        return [(0,) + tail for tail in product((0, 1), repeat=n - 1)]

    def v_explicit(self, x):
        return [x + (0,), x + (1,)]

    def phi(self, x):
        return 2


class MotzOperad(Operad):
    """Nonnegative words from 0 to 0 with unit steps; substitution shifts the
    inserted word up by the replaced letter."""

    name = "motz"
    unit = (0,)
    generators = ((0, 0), (0, 1, 0))

    def arity(self, x):
        return len(x)

    def degree(self, x):
        ascents = sum(1 for a, b in zip(x, x[1:]) if b == a + 1)
        return len(x) - 1 - ascents

    def compose(self, x, i, y):
        pivot = x[i - 1]
        inserted = tuple(a + pivot for a in y)
        return x[:i - 1] + inserted + x[i:]

    def contains(self, x):
        return (isinstance(x, tuple) and len(x) >= 1
                and x[0] == 0 and x[-1] == 0 and all(a >= 0 for a in x)
                and all(abs(b - a) <= 1 for a, b in zip(x, x[1:])))

    def elements_of_arity(self, n):
        out = []

        def extend(word):
            if len(word) == n:
                if word[-1] == 0:
                    out.append(tuple(word))
                return
            remaining = n - len(word) - 1
            for step in (-1, 0, 1):
                value = word[-1] + step
                if 0 <= value <= remaining:
                    word.append(value)
                    extend(word)
                    word.pop()

        extend([0])
        return sorted(out)

    def v_explicit(self, x):
        out = []
        n = len(x)
        for i in range(1, n + 1):
            if i == n or x[i - 1] > x[i]:
                a = x[i - 1]
                out.append(x[:i] + (a,) + x[i:])
                out.append(x[:i] + (a + 1, a) + x[i:])
        return out

    def phi(self, x):
        return 2 + sum(1 for a, b in zip(x, x[1:]) if a != b)


class FCatOperad(Operad):
    """Nonnegative words with 0 first and ascents bounded by m; substitution
    shifts the inserted word up by the replaced letter."""

    unit = (0,)

    def __init__(self, m: int):
        if m < 0:
            raise ValueError("m must be >= 0")
        self.m = m
        self.name = f"fcat:{m}"
        self.generators = tuple((0, a) for a in range(m + 1))
        super().__init__()

    def arity(self, x):
        return len(x)

    def degree(self, x):
        return len(x) - 1

    def compose(self, x, i, y):
        pivot = x[i - 1]
        inserted = tuple(a + pivot for a in y)
        return x[:i - 1] + inserted + x[i:]

    def contains(self, x):
        return (isinstance(x, tuple) and len(x) >= 1 and x[0] == 0
                and all(a >= 0 for a in x)
                and all(b <= a + self.m for a, b in zip(x, x[1:])))

    def elements_of_arity(self, n):
        out = []

        def extend(word):
            if len(word) == n:
                out.append(tuple(word))
                return
            for value in range(word[-1] + self.m + 1):
                word.append(value)
                extend(word)
                word.pop()

        extend([0])
        return sorted(out)

    def v_explicit(self, x):
        return [x + (a,) for a in range(x[-1] + self.m + 1)]

    def phi(self, x):
        return self.m + 1


@lru_cache(maxsize=None)
def get_operad(selector: str) -> Operad:
    """Selector strings: as | dias | comp | motz | fcat:<m>."""
    selector = selector.strip().lower()
    if selector == "as":
        return AsOperad()
    if selector == "dias":
        return DiasOperad()
    if selector == "comp":
        return CompOperad()
    if selector == "motz":
        return MotzOperad()
    if selector.startswith("fcat:"):
        return FCatOperad(int(selector.split(":", 1)[1]))
    raise ValueError(f"unknown operad selector {selector!r}")


# -- operations over any operad ---------------------------------------------------

def compose_operad(op: Operad, x, i: int, y):
    if not op.contains(x):
        raise ValueError(f"{op.render_elem(x)} is not an element of {op.name}")
    if not op.contains(y):
        raise ValueError(f"{op.render_elem(y)} is not an element of {op.name}")
    if not 1 <= i <= op.arity(x):
        raise IndexError(f"index {i} out of range 1..{op.arity(x)}")
    return op.compose(x, i, y)


def degree_operad(op: Operad, x) -> int:
    if not op.contains(x):
        raise ValueError(f"{op.render_elem(x)} is not an element of {op.name}")
    return op.degree(x)


def up_operad(op: Operad, x) -> Combination:
    """Graft each generator at each position, with multiplicity the number
    of (generator, position) pairs producing the same element."""
    terms: dict = {}
    for g in op.generators:
        for i in range(1, op.arity(x) + 1):
            y = op.compose(x, i, g)
            terms[y] = terms.get(y, 0) + 1
    return Combination(op, terms)


def v_operad(op: Operad, x) -> Combination:
    terms: dict = {}
    for y in op.v_explicit(x):
        terms[y] = terms.get(y, 0) + 1
    return Combination(op, terms)


# -- treelike expressions ------------------------------------------------------------

@lru_cache(maxsize=None)
def generator_alphabet(op: Operad):
    """A letter per generator (named g<word>), with the decoding map."""
    letters, mapping = [], {}
    for g in op.generators:
        name = "g" + op.render_elem(g).replace(",", "_")
        letter = Letter(name, op.arity(g))
        letters.append(letter)
        mapping[letter] = g
    return Alphabet(letters), mapping


def evaluate_tree(op: Operad, t: SyntaxTree):
    """The evaluation morphism: decode letters and compose down the tree."""
    _, mapping = generator_alphabet(op)

    def ev(sub: SyntaxTree):
        if sub.is_leaf:
            return op.unit
        x = mapping[sub.letter]
        for i in range(len(sub.children), 0, -1):
            x = op.compose(x, i, ev(sub.children[i - 1]))
        return x

    return ev(t)


def treelike_expressions(op: Operad, x, bound: int = 6) -> list[SyntaxTree]:
    """All trees over the generator alphabet evaluating to x."""
    d = op.degree(x)
    if d > bound:
        raise OracleBoundError(f"degree {d} exceeds the oracle bound {bound}")
    alphabet, _ = generator_alphabet(op)
    return [t for t in enumerate_trees(alphabet, d) if evaluate_tree(op, t) == x]


def v_operad_oracle(op: Operad, x, bound: int = 6) -> Combination:
    """Twisted successors through treelike expressions: evaluate the free
    twisted map on every expression of x and collect the images."""
    alphabet, _ = generator_alphabet(op)
    seen = set()
    for t in treelike_expressions(op, x, bound):
        for t2, _ in v_free(t, alphabet).terms():
            seen.add(evaluate_tree(op, t2))
    return Combination.characteristic(op, seen)


# -- duality -------------------------------------------------------------------------

def phi_operad(op: Operad, x, pair: str | None = None) -> int:
    """The diagonal duality coefficient for the operad's dual pair.

    Requesting the (U,V) pair of the one operad whose commutator is not
    diagonal raises NotDiagonalError carrying the witness.
    """
    pair = pair or op.phi_pair
    if pair not in ("uv", "uu"):
        raise ValueError(f"unknown pair {pair!r}")
    if pair == op.phi_pair:
        return op.phi(x)
    if op.name == "dias" and pair == "uv":
        witness = (1, 0)
        commutator = prefix_pair(op).duality_commutator(witness)
        raise NotDiagonalError(
            f"the (U,V) pair of dias is not diagonal: commutator at "
            f"{op.render_elem(witness)} is {commutator.render()}",
            witness, commutator)
    raise ValueError(f"no diagonal map known for {op.name} with pair {pair!r}")


# -- generators and order ---------------------------------------------------------------

def minimal_generators(op: Operad, arity_max: int) -> list:
    """The unique minimal generating set up to the given arity: strip out,
    arity by arity, everything reachable from lower-arity generators."""
    gens: list = []
    span_by_arity: dict[int, set] = {1: {op.unit}}
    for n in range(2, arity_max + 1):
        reachable = set()
        for g in gens:
            ag = op.arity(g)
            p = n - ag + 1
            for x in span_by_arity.get(p, ()):
                for i in range(1, p + 1):
                    reachable.add(op.compose(x, i, g))
        new = [x for x in op.elements_of_arity(n) if x not in reachable]
        gens.extend(new)
        span_by_arity[n] = reachable | set(new)
    return sorted(gens, key=op.sort_key)


def operad_poset_leq(op: Operad, x, y) -> bool:
    """x below y in the prefix order: reachability along generator grafts."""
    dx, dy = op.degree(x), op.degree(y)
    if dx > dy:
        return False
    frontier = {x}
    for _ in range(dy - dx):
        grown = set()
        for z in frontier:
            for w, _ in up_operad(op, z).terms():
                grown.add(w)
        frontier = grown
    return y in frontier


# -- graph builders ------------------------------------------------------------------------

@lru_cache(maxsize=None)
def prefix_graph(op: Operad) -> GradedGraph:
    return GradedGraph(op, up=lambda x: up_operad(op, x), name=f"prefix({op.name})")


@lru_cache(maxsize=None)
def twisted_graph(op: Operad) -> GradedGraph:
    return GradedGraph(op, up=lambda x: v_operad(op, x), name=f"twisted({op.name})")


def prefix_pair(op: Operad) -> GradedGraphPair:
    return GradedGraphPair(prefix_graph(op), twisted_graph(op))


def self_pair(op: Operad) -> GradedGraphPair:
    g = prefix_graph(op)
    return GradedGraphPair(g, g)
