"""Criticality tests and mining of minimal non-colourable subsets.

Non-colourability is monotone under adding rays, so a subset is
non-colourable exactly when it meets every correction set (a set of rays
whose removal leaves a colourable remainder). Minimal non-colourable
subsets are therefore the minimal hitting sets of all correction sets.
``MinimalSubsetMiner`` finds them lazily: it asks for a minimum hitting
set of the correction sets seen so far, adds a new correction set when
the candidate turns out colourable, and records and blocks the candidate
otherwise. Candidates arrive in nondecreasing size, which makes every
recorded one inclusion-minimal and gives the minimum size first.
"""

from __future__ import annotations

import logging
import time
from collections.abc import Iterator
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp

from .colouring import BudgetExceeded, Mode, Problem, SearchStats
from .ortho import bits, mask_of
from .rays import RaySet

log = logging.getLogger(__name__)

DEFAULT_NODE_BUDGET = 10**9


class NotAProof(ValueError):
    """The input set is colourable, so it has no non-colourable subsets."""


class ResourceBudgetExceeded(RuntimeError):
    def __init__(self, message: str, partial: CriticalReport):
        super().__init__(message)
        self.partial = partial


@dataclass
class CriticalReport:
    name: str
    size: int
    mode: Mode
    critical: bool | None = None
    removable: list[int] = field(default_factory=list)
    minimal_subsets: list[tuple[int, ...]] = field(default_factory=list)
    exhaustive: bool = True
    max_size: int | None = None
    interpretation: str = "all minimal non-colourable subsets, counted individually"

    @property
    def minimum_size(self) -> int | None:
        return min((len(s) for s in self.minimal_subsets), default=None)

    @property
    def count_at_minimum(self) -> int:
        k = self.minimum_size
        return sum(1 for s in self.minimal_subsets if len(s) == k)

    def sizes(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for s in self.minimal_subsets:
            out[len(s)] = out.get(len(s), 0) + 1
        return dict(sorted(out.items()))

    def to_json(self) -> dict:
        doc = {
            "critical": self.critical,
            "removable": list(self.removable),
            "minimal_subsets": [
                {"size": len(s), "indices": list(s)} for s in self.minimal_subsets
            ],
            "exhaustive": self.exhaustive,
        }
        return doc


class SubsetOracle:
    """Colourability of subsets of one ray set, with a cache of witnesses.

    A colouring found for some subset stays valid on every smaller subset,
    so cached witnesses settle most queries without searching.
    """

    def __init__(self, problem: Problem, node_budget: int = DEFAULT_NODE_BUDGET, cache_size: int = 256):
        self.problem = problem
        self.node_budget = node_budget
        self.cache_size = cache_size
        self.stats = SearchStats()
        self.queries = 0
        self.searches = 0
        self._witnesses: list[int] = []

    @property
    def full(self) -> int:
        return self.problem.full

    def closure(self, subset: int) -> int:
        """Rays of ``subset`` lying in at least one basis inside ``subset``."""
        covered = 0
        for b in self.problem.basis_masks:
            if b & subset == b:
                covered |= b
        return covered

    def _fits(self, colouring: int, bases: list[int], subset: int) -> bool:
        for b in bases:
            if (b & colouring).bit_count() != 1:
                return False
        if self.problem.mode is Mode.PAIRWISE:
            ones = colouring & subset
            adj = self.problem.adjacency
            return not any(adj[i] & ones for i in bits(ones))
        return True

    def colouring(self, subset: int) -> int | None:
        self.queries += 1
        bases = self.problem.active_bases(subset)
        for k, c in enumerate(self._witnesses):
            if self._fits(c, bases, subset):
                if k:
                    self._witnesses.insert(0, self._witnesses.pop(k))
                return c & subset
        self.searches += 1
        remaining = self.node_budget - self.stats.nodes
        found = self.problem.solve(subset, node_budget=remaining, stats=self.stats)
        if found is not None:
            self._witnesses.insert(0, found)
            del self._witnesses[self.cache_size:]
        return found

    def colourable(self, subset: int) -> bool:
        return self.colouring(subset) is not None

    def grow(self, subset: int) -> int:
        """Extend a colourable subset to a maximal colourable one (greedy, by index)."""
        for r in range(self.problem.size):
            bit = 1 << r
            if not subset & bit and self.colourable(subset | bit):
                subset |= bit
        return subset


class _HittingSets:
    """Minimum-cardinality 0/1 points subject to growing covering/packing rows."""

    def __init__(self, size: int):
        self.size = size
        self.rows: list[np.ndarray] = []
        self.lower: list[float] = []
        self.upper: list[float] = []

    def must_hit(self, mask: int) -> None:
        self._add(mask, 1, np.inf)

    def block_superset(self, mask: int) -> None:
        self._add(mask, -np.inf, mask.bit_count() - 1)

    def at_least(self, mask: int, k: int) -> None:
        self._add(mask, k, np.inf)

    def _add(self, mask: int, lo: float, hi: float) -> None:
        self.rows.append(np.array([mask >> i & 1 for i in range(self.size)], dtype=float))
        self.lower.append(lo)
        self.upper.append(hi)

    def minimum(self) -> int | None:
        constraints = []
        if self.rows:
            constraints.append(LinearConstraint(np.vstack(self.rows), self.lower, self.upper))
        res = milp(
            np.ones(self.size),
            constraints=constraints,
            integrality=np.ones(self.size),
            bounds=Bounds(0, 1),
        )
        if res.status == 2:  # infeasible
            return None
        if res.status != 0:
            raise RuntimeError(f"hitting-set solver failed: {res.message}")
        return mask_of([i for i in range(self.size) if res.x[i] > 0.5])


class MinimalSubsetMiner:
    """Yields minimal non-colourable subsets (as bitmasks) in nondecreasing size."""

    def __init__(
        self,
        problem: Problem,
        node_budget: int = DEFAULT_NODE_BUDGET,
        time_budget: float | None = None,
    ):
        self.oracle = SubsetOracle(problem, node_budget)
        self.time_budget = time_budget
        self.iterations = 0
        self._hs = _HittingSets(problem.size)
        self._seed()

    def _seed(self) -> None:
        # removing a whole basis's complement leaves one basis: always colourable,
        # so every non-colourable subset meets the complement of each basis
        full = self.oracle.full
        for b in self.oracle.problem.basis_masks:
            self._hs.must_hit(full & ~b)

    def __iter__(self) -> Iterator[int]:
        start = time.monotonic()
        oracle = self.oracle
        while True:
            if self.time_budget is not None and time.monotonic() - start > self.time_budget:
                raise TimeoutError(f"time budget of {self.time_budget}s exhausted")
            self.iterations += 1
            candidate = self._hs.minimum()
            if candidate is None:
                return
            if oracle.colourable(candidate):
                grown = oracle.grow(candidate)
                self._hs.must_hit(oracle.full & ~grown)
            else:
                self._hs.block_superset(candidate)
                yield candidate

    def bound_below(self, k: int) -> None:
        """Skip subsets smaller than ``k`` (caller knows none exist)."""
        self._hs.at_least(self.oracle.full, k)


def _problem(rays: RaySet | Problem, mode: Mode | str) -> Problem:
    if isinstance(rays, Problem):
        return rays
    return Problem.from_rays(rays, mode)


def _deletion_colourable(args: tuple[Problem, int]) -> bool:
    problem, r = args
    return problem.solve(problem.full & ~(1 << r)) is not None


def is_critical(
    rays: RaySet,
    mode: Mode | str = Mode.BASIS,
    name: str = "",
    threads: int = 1,
) -> CriticalReport:
    """Delete each ray in turn; the set is critical iff every deletion is colourable."""
    mode = Mode.parse(mode)
    problem = Problem.from_rays(rays, mode)
    if problem.solve() is not None:
        raise NotAProof(f"{name or 'input'} is colourable")
    jobs = [(problem, r) for r in range(len(rays))]
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            verdicts = list(pool.map(_deletion_colourable, jobs))
    else:
        verdicts = [_deletion_colourable(j) for j in jobs]
    removable = [r for r, ok in enumerate(verdicts) if not ok]
    return CriticalReport(
        name=name,
        size=len(rays),
        mode=mode,
        critical=not removable,
        removable=removable,
    )


def enumerate_minimal(
    rays: RaySet,
    mode: Mode | str = Mode.BASIS,
    max_size: int | None = None,
    *,
    minimum_only: bool = False,
    node_budget: int = DEFAULT_NODE_BUDGET,
    time_budget: float | None = None,
    name: str = "",
) -> CriticalReport:
    """Every inclusion-minimal non-colourable subset, optionally capped at ``max_size``.

    With ``minimum_only`` the search stops after the smallest cardinality
    layer. Running out of budget raises ``ResourceBudgetExceeded`` whose
    ``partial`` report holds what was found and is marked non-exhaustive.
    """
    mode = Mode.parse(mode)
    problem = Problem.from_rays(rays, mode)
    if problem.solve() is not None:
        raise NotAProof(f"{name or 'input'} is colourable")
    report = CriticalReport(name=name, size=len(rays), mode=mode, max_size=max_size)
    miner = MinimalSubsetMiner(problem, node_budget, time_budget)
    found: list[int] = []
    try:
        for subset in miner:
            k = subset.bit_count()
            if max_size is not None and k > max_size:
                break
            if minimum_only and found and k > found[0].bit_count():
                break
            found.append(subset)
            log.debug("minimal subset of size %d (#%d)", k, len(found))
    except (TimeoutError, BudgetExceeded) as exc:
        report.minimal_subsets = _normalise(found)
        report.exhaustive = False
        raise ResourceBudgetExceeded(str(exc), report) from exc
    report.minimal_subsets = _normalise(found)
    report.removable = _removable(problem)
    report.critical = not report.removable
    return report


def _removable(problem: Problem) -> list[int]:
    return [r for r in range(problem.size) if not _deletion_colourable((problem, r))]


def minimum_proof_size(
    rays: RaySet,
    mode: Mode | str = Mode.BASIS,
    *,
    node_budget: int = DEFAULT_NODE_BUDGET,
    time_budget: float | None = None,
) -> int:
    """Size of the smallest non-colourable subset."""
    mode = Mode.parse(mode)
    problem = Problem.from_rays(rays, mode)
    if problem.solve() is not None:
        raise NotAProof("input is colourable")
    miner = MinimalSubsetMiner(problem, node_budget, time_budget)
    try:
        first = next(iter(miner))
    except (TimeoutError, BudgetExceeded) as exc:
        partial = CriticalReport(name="", size=len(rays), mode=mode, exhaustive=False)
        raise ResourceBudgetExceeded(str(exc), partial) from exc
    return first.bit_count()


def recheck_minimal(rays: RaySet, indices: tuple[int, ...], mode: Mode | str = Mode.BASIS) -> bool:
    """Independent check from raw rays: the subset is non-colourable and each deletion is not."""
    sub = rays.subset(indices)
    problem = Problem.from_rays(sub, mode)
    if problem.solve() is not None:
        return False
    return all(problem.solve(problem.full & ~(1 << r)) is not None for r in range(len(sub)))


def _normalise(masks: list[int]) -> list[tuple[int, ...]]:
    return sorted((tuple(bits(m)) for m in masks), key=lambda s: (len(s), s))

