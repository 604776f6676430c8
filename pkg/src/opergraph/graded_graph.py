"""Graded graphs: rank-indexed universes with an "up" operator.

A graph is specified by its universe (rank slices, root) and a linear map
``up`` sending each element to a combination supported one rank higher.
Adjoints, path counting, hook series and the duality commutators are all
derived here; concrete graphs plug in their universe and up map (and an
explicit adjoint when a fast direct description exists).
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .poly import Combination
from .series import Series2


class GradedGraph:
    def __init__(self, universe, up: Callable, *, up_star: Callable | None = None,
                 name: str = ""):
        self.universe = universe
        self.name = name or getattr(universe, "name", "graph")
        self._up = up
        self._explicit_star = up_star
        self._reverse: dict[int, dict] = {}
        self._lock = threading.Lock()

    # -- the two operators ---------------------------------------------------

    def up(self, x) -> Combination:
        return self._up(x)

    def _reverse_edges(self, rank: int) -> dict:
        """Predecessor table for elements of the given rank, built once from
        the full rank-1 slice."""
        cached = self._reverse.get(rank)
        if cached is not None:
            return cached
        with self._lock:
            cached = self._reverse.get(rank)
            if cached is not None:
                return cached
            table: dict = {}
            if rank >= 1:
                for x in self.universe.elements_of_rank(rank - 1):
                    for y, w in self._up(x).terms():
                        table.setdefault(y, []).append((x, w))
            self._reverse[rank] = table
            return table

    def up_adjoint(self, x) -> Combination:
        """Adjoint of up, from the reverse-edge table of the lower slice."""
        rank = self.universe.rank_of(x)
        if rank == 0:
            return Combination.zero(self.universe)
        table = self._reverse_edges(rank)
        return Combination(self.universe, dict(table.get(x, ())))

    def star(self, x) -> Combination:
        """The adjoint, through the explicit description when one is known."""
        if self._explicit_star is not None:
            return self._explicit_star(x)
        return self.up_adjoint(x)

    # -- linear extensions of the operators -----------------------------------

    def apply_up(self, f: Combination) -> Combination:
        return f.apply_linear(self._up)

    def apply_star(self, f: Combination) -> Combination:
        return f.apply_linear(self.star)

    # -- paths and hooks ---------------------------------------------------------

    def path_weight_sum(self, x, y) -> int:
        """Sum over paths from x to y of the product of edge weights
        (the multipath count for natural graphs); 1 when x = y."""
        rx, ry = self.universe.rank_of(x), self.universe.rank_of(y)
        if rx > ry:
            return 0
        front = {x: 1}
        for _ in range(ry - rx):
            nxt: dict = {}
            for z, c in front.items():
                for w, weight in self._up(z).terms():
                    nxt[w] = nxt.get(w, 0) + c * weight
            front = nxt
        return front.get(y, 0)

    def hook_slices(self, d: int) -> list[dict]:
        """Hook coefficients, one dict per rank 0..d.

        The recursion h(root) = 1, h(x) = <star(x), h> walks each rank slice
        once and only ever needs the previous slice.
        """
        root = self.universe.root
        slices: list[dict] = [{root: 1}]
        for rank in range(1, d + 1):
            prev = slices[-1]
            cur: dict = {}
            for x in self.universe.elements_of_rank(rank):
                total = 0
                for p, w in self.star(x).terms():
                    total += w * prev.get(p, 0)
                cur[x] = total
            slices.append(cur)
        return slices

    def hook_series_up_to(self, d: int) -> Combination:
        terms: dict = {}
        for slice_ in self.hook_slices(d):
            terms.update(slice_)
        return Combination(self.universe, terms)

    def initial_paths_series(self, d: int) -> Series2:
        """Trace of the hook series: coefficient of t^r counts the initial
        multipaths of length r."""
        root = self.universe.root
        prev = {root: 1}
        coeffs: dict[tuple[int, int], int] = {(0, 0): 1}
        for rank in range(1, d + 1):
            cur: dict = {}
            for x in self.universe.elements_of_rank(rank):
                total = 0
                for p, w in self.star(x).terms():
                    total += w * prev.get(p, 0)
                cur[x] = total
            coeffs[(0, rank)] = sum(cur.values())
            prev = cur
        return Series2(coeffs)

    # -- structural checks ----------------------------------------------------------

    def check_graded(self, d: int):
        for rank in range(d + 1):
            for x in self.universe.elements_of_rank(rank):
                for y, _ in self._up(x).terms():
                    if self.universe.rank_of(y) != rank + 1:
                        return False, (x, y)
        return True, None

    def check_simple(self, d: int):
        for rank in range(d + 1):
            for x in self.universe.elements_of_rank(rank):
                for y, w in self._up(x).terms():
                    if w not in (0, 1):
                        return False, (x, y, w)
        return True, None

    def check_rooted(self, d: int):
        """Every element of rank <= d is reachable from the root."""
        for rank, slice_ in enumerate(self.hook_slices(d)):
            for x in self.universe.elements_of_rank(rank):
                if slice_.get(x, 0) <= 0:
                    return False, x
        return True, None

    # -- exports ---------------------------------------------------------------------

    def export_dot(self, max_rank: int, min_rank: int = 0) -> str:
        render = self.universe.render_elem
        lines = [f'digraph "{self.name}" {{', "  node [shape=box];"]
        for rank in range(min_rank, max_rank + 1):
            lines.append(f"  subgraph cluster_{rank} {{")
            lines.append(f'    label="rank {rank}"; rank=same;')
            for x in self.universe.elements_of_rank(rank):
                lines.append(f'    "{render(x)}";')
            lines.append("  }")
        for rank in range(min_rank, max_rank):
            for x in self.universe.elements_of_rank(rank):
                for y, w in self._up(x).items():
                    label = "" if w == 1 else f' [label="{w}"]'
                    lines.append(f'  "{render(x)}" -> "{render(y)}"{label};')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def export_json(self, max_rank: int, min_rank: int = 0) -> dict:
        render = self.universe.render_elem
        nodes, edges = [], []
        for rank in range(min_rank, max_rank + 1):
            for x in self.universe.elements_of_rank(rank):
                nodes.append({"id": render(x), "rank": rank})
        for rank in range(min_rank, max_rank):
            for x in self.universe.elements_of_rank(rank):
                for y, w in self._up(x).items():
                    edges.append({"src": render(x), "dst": render(y), "w": w})
        return {"nodes": nodes, "edges": edges}


# -- pairs and duality ------------------------------------------------------------


@dataclass
class DualityFailure:
    element: object
    commutator: Combination
    expected: Combination | None = None

    def render(self, universe) -> str:
        msg = (f"commutator at {universe.render_elem(self.element)} "
               f"is {self.commutator.render()}")
        if self.expected is not None:
            msg += f", expected {self.expected.render()}"
        return msg


@dataclass
class DualityReport:
    ok: bool
    mode: str
    max_rank: int
    checked: int
    failures: list[DualityFailure] = field(default_factory=list)
    table: dict | None = None

    def witness(self) -> DualityFailure | None:
        return self.failures[0] if self.failures else None


@dataclass
class IteratedIdentityReport:
    ok: bool
    n: int
    checked: int
    failures: list = field(default_factory=list)


class GradedGraphPair:
    """Two graded graphs over one universe, sharing the root."""

    def __init__(self, u: GradedGraph, v: GradedGraph):
        if u.universe != v.universe:
            raise ValueError("the two graphs must share their universe")
        self.u = u
        self.v = v
        self.universe = u.universe

    def returning_hook_series(self, d: int) -> Combination:
        return self.u.hook_series_up_to(d).hadamard(self.v.hook_series_up_to(d))

    def returning_paths_series(self, d: int) -> Series2:
        return self.returning_hook_series(d).trace()

    def duality_commutator(self, x) -> Combination:
        """(V* U - U V*)(x), exactly."""
        left = self.u.up(x).apply_linear(self.v.star)
        right = self.v.star(x).apply_linear(self.u.up)
        return left - right

    def check_phi_diagonal(self, phi: Callable | None, d: int) -> DualityReport:
        """Verify the commutator equals phi(x)*x for every x of rank <= d.

        With ``phi=None`` runs in discovery mode: solves for the diagonal
        coefficient at each element, stopping at the first element whose
        commutator is not a multiple of the element itself.
        """
        mode = "check" if phi is not None else "discover"
        table: dict | None = None if phi is not None else {}
        checked = 0
        for rank in range(d + 1):
            for x in self.universe.elements_of_rank(rank):
                commutator = self.duality_commutator(x)
                checked += 1
                if phi is not None:
                    expected = Combination.unit(self.universe, x, phi(x))
                    if commutator != expected:
                        return DualityReport(False, mode, d, checked,
                                             [DualityFailure(x, commutator, expected)])
                else:
                    extra = commutator.support() - {x}
                    if extra:
                        return DualityReport(False, mode, d, checked,
                                             [DualityFailure(x, commutator)], table)
                    table[x] = commutator.coeff(x)
        return DualityReport(True, mode, d, checked, [], table)

    def check_iterated_identity(self, phi: Callable, n: int,
                                sample: Iterable) -> IteratedIdentityReport:
        """Verify V* U^n = U^n V* + sum over k1+k2 = n-1 of U^k1 phi U^k2
        on every sample element."""
        failures = []
        checked = 0
        for x in sample:
            checked += 1
            start = Combination.unit(self.universe, x)
            lhs = start
            for _ in range(n):
                lhs = self.u.apply_up(lhs)
            lhs = self.v.apply_star(lhs)

            rhs = self.v.apply_star(start)
            for _ in range(n):
                rhs = self.u.apply_up(rhs)
            for k2 in range(n):
                k1 = n - 1 - k2
                term = start
                for _ in range(k2):
                    term = self.u.apply_up(term)
                term = term.apply_diagonal(phi)
                for _ in range(k1):
                    term = self.u.apply_up(term)
                rhs = rhs + term
            if lhs != rhs:
                failures.append((x, lhs, rhs))
        return IteratedIdentityReport(not failures, n, checked, failures)
