"""Exact integer rays in canonical projective form, plus the ray-set text format."""

from __future__ import annotations

import logging
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from math import gcd

log = logging.getLogger(__name__)


class RayError(ValueError):
    """Base class for malformed ray input."""


class AllZero(RayError):
    pass


class DimensionMismatch(RayError):
    pass


class ParseError(RayError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def _canonical_coords(coords: Iterable[int]) -> tuple[int, ...]:
    values = tuple(int(c) for c in coords)
    if not values:
        raise AllZero("empty coordinate sequence")
    g = 0
    for v in values:
        g = gcd(g, v)
    if g == 0:
        raise AllZero(f"all coordinates are zero: {values}")
    lead = next(v for v in values if v)
    if lead < 0:
        g = -g
    return tuple(v // g for v in values)


@dataclass(frozen=True, order=True)
class Ray:
    """A projective ray: primitive integer vector whose first nonzero entry is positive.

    Python integers are unbounded, so no overflow can occur.
    """

    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        canon = _canonical_coords(self.coords)
        object.__setattr__(self, "coords", canon)

    @property
    def dim(self) -> int:
        return len(self.coords)

    def __iter__(self) -> Iterator[int]:
        return iter(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __str__(self) -> str:
        return " ".join(str(c) for c in self.coords)

    def __repr__(self) -> str:
        return f"Ray({self.coords})"

    def padded(self, left: int = 0, right: int = 0) -> Ray:
        return Ray((0,) * left + self.coords + (0,) * right)


def canonicalize(coords: Iterable[int]) -> Ray:
    """Return the canonical representative of the ray spanned by ``coords``."""
    return Ray(tuple(coords))


def unit(n: int, k: int) -> Ray:
    """Standard basis ray e_k in dimension n (1-based k)."""
    if not 1 <= k <= n:
        raise ValueError(f"unit index {k} outside 1..{n}")
    return Ray(tuple(1 if i == k - 1 else 0 for i in range(n)))


def dot(u: Ray | Sequence[int], v: Ray | Sequence[int]) -> int:
    a = u.coords if isinstance(u, Ray) else tuple(u)
    b = v.coords if isinstance(v, Ray) else tuple(v)
    if len(a) != len(b):
        raise DimensionMismatch(f"dimensions differ: {len(a)} vs {len(b)}")
    return sum(x * y for x, y in zip(a, b))


@dataclass(frozen=True)
class RaySet:
    """Ordered, duplicate-free rays of one dimension.

    Equality ignores order; iteration and indexing follow insertion order.
    """

    dimension: int
    rays: tuple[Ray, ...]
    duplicates: int = field(default=0, compare=False)
    _index: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.dimension < 1:
            raise ValueError("dimension must be positive")
        seen: dict[Ray, int] = {}
        unique: list[Ray] = []
        dups = self.duplicates
        for r in self.rays:
            r = r if isinstance(r, Ray) else Ray(tuple(r))
            if r.dim != self.dimension:
                raise DimensionMismatch(
                    f"ray {r} has dimension {r.dim}, set has {self.dimension}"
                )
            if r in seen:
                dups += 1
                continue
            seen[r] = len(unique)
            unique.append(r)
        object.__setattr__(self, "rays", tuple(unique))
        object.__setattr__(self, "duplicates", dups)
        object.__setattr__(self, "_index", seen)

    @classmethod
    def of(cls, rows: Iterable[Iterable[int]], dimension: int | None = None) -> RaySet:
        rays = [r if isinstance(r, Ray) else Ray(tuple(r)) for r in rows]
        if dimension is None:
            if not rays:
                raise ValueError("cannot infer the dimension of an empty set")
            dimension = rays[0].dim
        return cls(dimension, tuple(rays))

    def __len__(self) -> int:
        return len(self.rays)

    def __iter__(self) -> Iterator[Ray]:
        return iter(self.rays)

    def __getitem__(self, i: int) -> Ray:
        return self.rays[i]

    def __contains__(self, ray: object) -> bool:
        if not isinstance(ray, Ray):
            try:
                ray = Ray(tuple(ray))  # type: ignore[arg-type]
            except (TypeError, RayError):
                return False
        return ray in self._index

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RaySet):
            return NotImplemented
        return self.dimension == other.dimension and set(self.rays) == set(other.rays)

    def __hash__(self) -> int:
        return hash((self.dimension, frozenset(self.rays)))

    def index(self, ray: Ray | Sequence[int]) -> int:
        r = ray if isinstance(ray, Ray) else Ray(tuple(ray))
        return self._index[r]

    def subset(self, indices: Iterable[int]) -> RaySet:
        """Rays at ``indices``, kept in the original order."""
        keep = sorted(set(indices))
        return RaySet(self.dimension, tuple(self.rays[i] for i in keep))

    def without(self, rays: Iterable[Ray | Sequence[int]]) -> RaySet:
        drop = {r if isinstance(r, Ray) else Ray(tuple(r)) for r in rays}
        missing = [r for r in drop if r not in self._index]
        if missing:
            raise KeyError(f"rays not in set: {sorted(missing)}")
        return RaySet(self.dimension, tuple(r for r in self.rays if r not in drop))

    def union(self, other: RaySet) -> RaySet:
        if other.dimension != self.dimension:
            raise DimensionMismatch("cannot join sets of different dimension")
        return RaySet(self.dimension, self.rays + other.rays)

    def rows(self) -> list[list[int]]:
        return [list(r.coords) for r in self.rays]


def parse_set(text: str) -> RaySet:
    """Parse the ray-set text format.

    One ray per line, whitespace-separated integers, ``#`` comments, blank
    lines ignored. The first data line fixes the dimension. Projective
    duplicates collapse; their number is recorded in ``RaySet.duplicates``.
    """
    rays: list[Ray] = []
    dim = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            coords = tuple(int(tok) for tok in line.split())
        except ValueError:
            raise ParseError(lineno, f"expected integers, got {raw.strip()!r}") from None
        if dim is None:
            dim = len(coords)
        elif len(coords) != dim:
            raise ParseError(lineno, f"expected {dim} coordinates, got {len(coords)}")
        try:
            rays.append(Ray(coords))
        except AllZero:
            raise ParseError(lineno, "all-zero row") from None
    if dim is None:
        raise ParseError(0, "no rays found")
    result = RaySet(dim, tuple(rays))
    if result.duplicates:
        log.warning("collapsed %d duplicate ray(s)", result.duplicates)
    return result


def format_set(rays: RaySet, header: str | None = None) -> str:
    lines = []
    if header:
        lines.extend(f"# {h}" for h in header.splitlines())
    lines.extend(str(r) for r in rays)
    return "\n".join(lines) + "\n"
