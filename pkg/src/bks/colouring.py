"""Deciding colourability: exhaustive 0/1 search and GF(2) parity certificates.

A colouring gives every ray 0 or 1 so that every basis holds exactly one 1.
``Mode.PAIRWISE`` additionally forbids two orthogonal rays from both being 1.
"""

from __future__ import annotations

import enum
from collections.abc import Sequence
from dataclasses import dataclass

from .ortho import Basis, bits, build_graph, enumerate_bases, mask_of
from .rays import RaySet


class Mode(str, enum.Enum):
    BASIS = "basis"
    PAIRWISE = "basis+pairwise"

    @classmethod
    def parse(cls, value: str | Mode) -> Mode:
        if isinstance(value, Mode):
            return value
        for m in cls:
            if m.value == value or m.name.lower() == value.lower():
                return m
        raise ValueError(f"unknown mode {value!r}; expected 'basis' or 'basis+pairwise'")


class BoundExceeded(RuntimeError):
    pass


class BudgetExceeded(RuntimeError):
    def __init__(self, nodes: int):
        super().__init__(f"search budget of {nodes} nodes exhausted")
        self.nodes = nodes


@dataclass(frozen=True)
class Colouring:
    values: tuple[int, ...]

    @classmethod
    def from_mask(cls, mask: int, size: int) -> Colouring:
        return cls(tuple(mask >> i & 1 for i in range(size)))

    @property
    def mask(self) -> int:
        return mask_of([i for i, v in enumerate(self.values) if v])

    def to_json(self) -> dict:
        return {"colouring": list(self.values)}


@dataclass(frozen=True)
class ParityCertificate:
    """An odd number of bases covering every ray an even number of times."""

    bases: tuple[int, ...]

    def to_json(self) -> dict:
        return {"kind": "parity", "bases": list(self.bases)}


@dataclass
class SearchStats:
    nodes: int = 0
    backtracks: int = 0


@dataclass(frozen=True)
class NonColourable:
    mode: Mode
    stats: SearchStats
    certificate: ParityCertificate | None = None

    def to_json(self) -> dict:
        return {"kind": "exhaustive", "nodes": self.stats.nodes, "mode": self.mode.value}


class Problem:
    """Colourability of a fixed ray set and of any of its subsets.

    Subsets are given as bitmasks over ray indices. The active bases of a
    subset are the bases lying entirely inside it: removing rays never
    creates a basis.
    """

    def __init__(
        self,
        size: int,
        bases: Sequence[Basis],
        mode: Mode = Mode.BASIS,
        adjacency: Sequence[int] | None = None,
    ):
        self.size = size
        self.bases = [tuple(b) for b in bases]
        self.basis_masks = [mask_of(b) for b in self.bases]
        self.mode = Mode.parse(mode)
        if self.mode is Mode.PAIRWISE and adjacency is None:
            raise ValueError("pairwise mode needs the orthogonality adjacency")
        self.adjacency = list(adjacency) if adjacency is not None else None
        self.full = (1 << size) - 1

    @classmethod
    def from_rays(cls, rays: RaySet, mode: Mode | str = Mode.BASIS) -> Problem:
        graph = build_graph(rays)
        return cls(len(rays), enumerate_bases(rays, graph), Mode.parse(mode), graph.adj)

    def active_bases(self, subset: int | None = None) -> list[int]:
        if subset is None:
            return list(self.basis_masks)
        return [b for b in self.basis_masks if b & subset == b]

    def _order(self, bases: Sequence[int], subset: int) -> list[int]:
        counts = [0] * self.size
        for b in bases:
            for i in bits(b):
                counts[i] += 1
        members = [i for i in bits(subset)]
        return sorted(members, key=lambda i: (-counts[i], i))

    def _propagate(self, bases: Sequence[int], ones: int, zeros: int):
        """Unit propagation to a fixpoint; ``None`` on conflict."""
        adj = self.adjacency if self.mode is Mode.PAIRWISE else None
        if adj is not None:
            for i in bits(ones):
                zeros |= adj[i]
            if ones & zeros:
                return None
        while True:
            changed = False
            for b in bases:
                o = b & ones
                if o:
                    if o & (o - 1):
                        return None
                    rest = b & ~ones & ~zeros
                    if rest:
                        zeros |= rest
                        changed = True
                else:
                    free = b & ~zeros
                    if not free:
                        return None
                    if not free & (free - 1):
                        ones |= free
                        if adj is not None:
                            zeros |= adj[free.bit_length() - 1]
                            if ones & zeros:
                                return None
                        changed = True
            if not changed:
                return ones, zeros

    def solve(
        self,
        subset: int | None = None,
        node_budget: int | None = None,
        stats: SearchStats | None = None,
    ) -> int | None:
        """Return a colouring bitmask of ``subset`` or ``None`` if none exists.

        Rays outside ``subset`` are never set. Unconstrained rays come back 0.
        """
        subset = self.full if subset is None else subset
        stats = stats if stats is not None else SearchStats()
        bases = self.active_bases(subset)
        order = self._order(bases, subset)
        outside = self.full & ~subset
        state = self._propagate(bases, 0, outside)
        if state is None:
            return None

        def search(ones: int, zeros: int) -> int | None:
            stats.nodes += 1
            if node_budget is not None and stats.nodes > node_budget:
                raise BudgetExceeded(node_budget)
            open_rays = 0
            for b in bases:
                if not b & ones:
                    open_rays |= b
            if not open_rays:
                return ones
            assigned = ones | zeros
            var = next(i for i in order if open_rays >> i & 1 and not assigned >> i & 1)
            bit = 1 << var
            for branch in ((ones, zeros | bit), (ones | bit, zeros)):
                nxt = self._propagate(bases, *branch)
                if nxt is not None:
                    found = search(*nxt)
                    if found is not None:
                        return found
            stats.backtracks += 1
            return None

        return search(*state)

    def count(self, subset: int | None = None) -> int:
        """Exact number of valid colourings of ``subset`` by backtracking."""
        subset = self.full if subset is None else subset
        bases = self.active_bases(subset)
        order = self._order(bases, subset)
        covered = 0
        for b in bases:
            covered |= b
        pairwise = self.mode is Mode.PAIRWISE
        state = self._propagate(bases, 0, self.full & ~subset)
        if state is None:
            return 0

        def search(ones: int, zeros: int) -> int:
            assigned = ones | zeros
            pending = subset & ~assigned
            if not pairwise:
                # values of rays outside every basis are unconstrained
                if not pending & covered:
                    return 1 << pending.bit_count()
            elif not pending:
                return 1
            var = next(i for i in order if pending >> i & 1 and (pairwise or covered >> i & 1))
            bit = 1 << var
            total = 0
            for branch in ((ones, zeros | bit), (ones | bit, zeros)):
                nxt = self._propagate(bases, *branch)
                if nxt is not None:
                    total += search(*nxt)
            return total

        return search(*state)

    def is_valid(self, colouring: int, subset: int | None = None) -> bool:
        subset = self.full if subset is None else subset
        for b in self.active_bases(subset):
            if (b & colouring).bit_count() != 1:
                return False
        if self.mode is Mode.PAIRWISE:
            ones = colouring & subset
            for i in bits(ones):
                if self.adjacency[i] & ones:
                    return False
        return True


def solve(
    rays: RaySet,
    mode: Mode | str = Mode.BASIS,
    node_budget: int | None = None,
) -> Colouring | NonColourable:
    mode = Mode.parse(mode)
    problem = Problem.from_rays(rays, mode)
    stats = SearchStats()
    found = problem.solve(node_budget=node_budget, stats=stats)
    if found is None:
        cert = parity_certificate(rays, problem.bases)
        return NonColourable(mode, stats, cert)
    return Colouring.from_mask(found, len(rays))


def is_colourable(rays: RaySet, mode: Mode | str = Mode.BASIS) -> bool:
    return isinstance(solve(rays, mode), Colouring)


def validate(rays: RaySet, colouring: Colouring | Sequence[int], mode: Mode | str = Mode.BASIS) -> bool:
    """Check a total 0/1 assignment against every basis, recomputed from scratch."""
    values = colouring.values if isinstance(colouring, Colouring) else tuple(colouring)
    if len(values) != len(rays) or any(v not in (0, 1) for v in values):
        return False
    for basis in enumerate_bases(rays):
        if sum(values[i] for i in basis) != 1:
            return False
    if Mode.parse(mode) is Mode.PAIRWISE:
        graph = build_graph(rays)
        for i, j in graph.edges():
            if values[i] and values[j]:
                return False
    return True


def _gf2_solve(rows: Sequence[int], rhs: Sequence[int]) -> int | None:
    """Solve A x = b over GF(2); rows are bitmasks over columns. Free variables set to 0."""
    eqs = [(r, v) for r, v in zip(rows, rhs)]
    pivots: list[tuple[int, int, int]] = []  # (column, row, rhs)
    for row, val in eqs:
        for col, prow, pval in pivots:
            if row >> col & 1:
                row ^= prow
                val ^= pval
        if not row:
            if val:
                return None
            continue
        col = (row & -row).bit_length() - 1
        # keep reduced form so back substitution is a single pass
        pivots = [
            (c, r ^ row, v ^ val) if r >> col & 1 else (c, r, v) for c, r, v in pivots
        ]
        pivots.append((col, row, val))
    x = 0
    for col, _row, val in pivots:
        if val:
            x |= 1 << col
    return x


def parity_certificate(rays: RaySet, bases: Sequence[Basis] | None = None) -> ParityCertificate | None:
    """Find an odd set of bases in which every ray occurs an even number of times."""
    if bases is None:
        bases = enumerate_bases(rays)
    if not bases:
        return None
    rows = [0] * len(rays)
    for j, b in enumerate(bases):
        for i in b:
            rows[i] |= 1 << j
    parity_row = (1 << len(bases)) - 1
    x = _gf2_solve(rows + [parity_row], [0] * len(rows) + [1])
    if x is None:
        return None
    return ParityCertificate(tuple(bits(x)))


def check_parity_certificate(rays: RaySet, bases: Sequence[Basis], cert: ParityCertificate) -> bool:
    if len(cert.bases) % 2 != 1 or len(set(cert.bases)) != len(cert.bases):
        return False
    counts = [0] * len(rays)
    for j in cert.bases:
        for i in bases[j]:
            counts[i] += 1
    return all(c % 2 == 0 for c in counts)


def count_colourings(
    rays: RaySet,
    mode: Mode | str = Mode.BASIS,
    *,
    method: str = "backtrack",
    bound: int = 30,
) -> int:
    """Exact number of valid total colourings.

    ``method="brute"`` tries all 2^|S| assignments and refuses sets larger
    than ``bound``.
    """
    mode = Mode.parse(mode)
    if method == "backtrack":
        return Problem.from_rays(rays, mode).count()
    if method != "brute":
        raise ValueError(f"unknown method {method!r}")
    if len(rays) > bound:
        raise BoundExceeded(f"{len(rays)} rays exceed the exhaustive bound {bound}")
    graph = build_graph(rays)
    masks = [mask_of(b) for b in enumerate_bases(rays, graph)]
    edges = [(1 << i) | (1 << j) for i, j in graph.edges()] if mode is Mode.PAIRWISE else []
    total = 0
    for c in range(1 << len(rays)):
        if all((c & b).bit_count() == 1 for b in masks) and not any(c & e == e for e in edges):
            total += 1
    return total
