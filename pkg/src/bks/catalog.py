"""Named ray sets: S4 as listed verbatim, P-24, and S5..S8 built from S4."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .colouring import Colouring, parity_certificate, solve
from .construct import compose_zp
from .ortho import build_graph, enumerate_bases, incidence_stats
from .rays import Ray, RaySet

S4_ROWS = [
    (1, 0, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1), (1, 1, 0, 0), (0, 1, 1, 0),
    (0, 0, 1, 1), (1, -1, 0, 0), (0, 1, -1, 0), (1, 0, 1, 0), (0, 1, 0, 1),
    (0, 1, 0, -1), (1, 0, 0, 1), (1, -1, 1, -1), (1, 1, -1, -1), (1, -1, -1, 1),
    (1, 1, 1, -1), (1, 1, -1, 1), (-1, 1, 1, 1),
]


def _s4() -> RaySet:
    return RaySet.of(S4_ROWS)


def _p24() -> RaySet:
    rows: list[tuple[int, ...]] = []
    for k in range(4):
        rows.append(tuple(1 if i == k else 0 for i in range(4)))
    for i, j in itertools.combinations(range(4), 2):
        for s in (1, -1):
            v = [0, 0, 0, 0]
            v[i], v[j] = 1, s
            rows.append(tuple(v))
    for signs in itertools.product((1, -1), repeat=3):
        rows.append((1, *signs))
    return RaySet.of(rows)


def _doubled(base: RaySet, gap: int) -> list[Ray]:
    """{(a, 0^gap), (0^gap, a) : a in base}, in that order."""
    return [a.padded(right=gap) for a in base] + [a.padded(left=gap) for a in base]


def _s5() -> RaySet:
    rays = RaySet(5, tuple(_doubled(_s4(), 1)))
    return rays.without([(0, 1, 0, 0, 0), (0, 0, 1, 0, 0)])


def _s6() -> RaySet:
    added = [(0, 1, 0, 0, 0, 0), (1, 0, -1, 0, 0, 0), (1, 1, 1, 1, 0, 0)]
    removed = [
        (0, 0, 1, 0, 0, 0), (0, 0, 0, 1, 0, 0), (1, 1, 0, 0, 0, 0),
        (0, 0, 1, -1, 0, 0), (1, -1, -1, 1, 0, 0), (0, 1, 0, 1, 0, 0),
    ]
    rays = RaySet(6, tuple(_doubled(_s4(), 2)) + tuple(Ray(a) for a in added))
    return rays.without(removed)


def _s7() -> RaySet:
    return RaySet(7, tuple(_doubled(_s4(), 3))).without([(0, 0, 0, 1, 0, 0, 0)])


def _s8() -> RaySet:
    return compose_zp(_s4(), _s4())


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    rays: RaySet
    provenance: str
    # expected facts; None means "not asserted"
    size: int
    bases: int
    colourable: bool
    critical: bool | None
    minimum_proof_size: int | None = None
    parity: bool | None = None
    extra: dict = field(default_factory=dict)


_BUILDERS = {
    "S4": (_s4, "18 rays listed explicitly (dimension 4)", dict(size=18, bases=9, colourable=False, critical=True, minimum_proof_size=18, parity=True, extra={"degree": 7, "bases_per_ray": 2})),
    "S5": (_s5, "S4 padded right and left in dimension 5, minus two rays", dict(size=29, bases=16, colourable=False, critical=True)),
    "S6": (_s6, "S4 padded in dimension 6, three rays added, six removed", dict(size=31, bases=16, colourable=False, critical=True)),
    "S7": (_s7, "S4 padded in dimension 7, minus one ray", dict(size=34, bases=28, colourable=False, critical=True)),
    "S8": (_s8, "direct sum of two copies of S4", dict(size=36, bases=81, colourable=False, critical=True, parity=True, extra={"degree": 25, "bases_per_ray": 18})),
    "P24": (_p24, "Peres' 24 rays: unit vectors, permutations of (1,±1,0,0), (1,±1,±1,±1)", dict(size=24, bases=24, colourable=False, critical=False, minimum_proof_size=18, extra={"lift_sizes": {5: 39, 6: 44, 7: 47, 8: 48}})),
}

NAMES = tuple(_BUILDERS)
_cache: dict[str, CatalogEntry] = {}


class UnknownName(KeyError):
    pass


def get(name: str) -> CatalogEntry:
    key = name.upper().replace("-", "")
    if key not in _BUILDERS:
        raise UnknownName(f"unknown catalog set {name!r}; known: {', '.join(NAMES)}")
    if key not in _cache:
        build, note, facts = _BUILDERS[key]
        _cache[key] = CatalogEntry(name=key, rays=build(), provenance=note, **facts)
    return _cache[key]


def rays(name: str) -> RaySet:
    return get(name).rays


@dataclass(frozen=True)
class Check:
    name: str
    fact: str
    expected: object
    actual: object

    @property
    def ok(self) -> bool:
        return self.expected == self.actual


def verify_entry(entry: CatalogEntry, with_minimum: bool = True) -> list[Check]:
    """Recompute every stored fact of one entry."""
    from .critical import is_critical, minimum_proof_size

    found = []

    def record(fact, expected, actual):
        found.append(Check(entry.name, fact, expected, actual))

    rays = entry.rays
    graph = build_graph(rays)
    bases = enumerate_bases(rays, graph)
    record("size", entry.size, len(rays))
    record("bases", entry.bases, len(bases))
    colourable = isinstance(solve(rays), Colouring)
    record("colourable", entry.colourable, colourable)
    if not colourable and entry.critical is not None:
        record("critical", entry.critical, is_critical(rays).critical)
    if entry.parity is not None:
        record("parity certificate", entry.parity, parity_certificate(rays, bases) is not None)
    if "degree" in entry.extra:
        record("degree", {entry.extra["degree"]}, set(graph.degrees()))
    if "bases_per_ray" in entry.extra:
        record("bases per ray", {entry.extra["bases_per_ray"]}, set(incidence_stats(rays, bases)))
    if "lift_sizes" in entry.extra:
        from .construct import lift

        sizes = {n: len(lift(rays, n).D) for n in entry.extra["lift_sizes"]}
        record("lift sizes", entry.extra["lift_sizes"], sizes)
    if with_minimum and entry.minimum_proof_size is not None:
        record("minimum proof size", entry.minimum_proof_size, minimum_proof_size(rays))
    return found


def verify_catalog(with_minimum: bool = True) -> list[Check]:
    """Recompute the facts of every entry; mismatches show up as ``ok == False``."""
    return [c for name in NAMES for c in verify_entry(get(name), with_minimum)]
