"""Building proofs in higher dimension: zero-padding lifts and direct sums."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

from .rays import Ray, RaySet, unit


class DimensionOutOfRange(ValueError):
    pass


# origin tags for lifted rays
B_STAR, B_BAR, C_STAR, C_BAR = "B*", "B̄", "C*", "C̄"


@dataclass(frozen=True)
class LiftResult:
    source: RaySet
    n: int
    B: RaySet
    C: RaySet
    D: RaySet
    origins: tuple[tuple[str, ...], ...]  # aligned with D.rays

    @property
    def d(self) -> int:
        return self.source.dimension

    @property
    def m(self) -> int:
        return self.n - self.source.dimension

    @property
    def size_bound(self) -> int:
        return 2 * (len(self.source) + self.m)

    def sidecar(self) -> list[dict]:
        return [
            {"ray": list(r.coords), "origins": list(o)}
            for r, o in zip(self.D, self.origins)
        ]


def lift(source: RaySet, n: int) -> LiftResult:
    """Lift a dimension-d proof to dimension n, d < n <= 2d.

    B pads every ray with zeros on the right and adds e_{d+1}..e_n; C pads on
    the left and adds e_1..e_m. D is their union with projective duplicates
    merged, and ``origins`` lists every part each D-ray came from.
    """
    d = source.dimension
    if d < 3:
        raise DimensionOutOfRange(f"source dimension must be at least 3, got {d}")
    if not d < n <= 2 * d:
        raise DimensionOutOfRange(f"target dimension must satisfy {d} < n <= {2 * d}, got {n}")
    m = n - d
    b_star = [r.padded(right=m) for r in source]
    b_bar = [unit(n, k) for k in range(d + 1, n + 1)]
    c_star = [r.padded(left=m) for r in source]
    c_bar = [unit(n, k) for k in range(1, m + 1)]

    tagged: dict[Ray, list[str]] = {}
    for tag, part in ((B_STAR, b_star), (B_BAR, b_bar), (C_STAR, c_star), (C_BAR, c_bar)):
        for r in part:
            tags = tagged.setdefault(r, [])
            if tag not in tags:
                tags.append(tag)
    D = RaySet(n, tuple(tagged))
    return LiftResult(
        source=source,
        n=n,
        B=RaySet(n, tuple(b_star + b_bar)),
        C=RaySet(n, tuple(c_star + c_bar)),
        D=D,
        origins=tuple(tuple(tagged[r]) for r in D),
    )


def compose_zp(first: RaySet, second: RaySet) -> RaySet:
    """Direct sum: ``first`` padded on the right, ``second`` on the left."""
    d, m = first.dimension, second.dimension
    if d < 3 or m < 3:
        raise DimensionOutOfRange(f"both dimensions must be at least 3, got {d} and {m}")
    rays = [r.padded(right=m) for r in first] + [r.padded(left=d) for r in second]
    return RaySet(d + m, tuple(rays))


def iterate_lift(source: RaySet, plan: Sequence[int]) -> tuple[RaySet, list[int]]:
    """Apply ``lift`` once per target dimension, feeding D forward.

    Returns the final set and the size after each step.
    """
    current = source
    sizes = []
    for n in plan:
        current = lift(current, n).D
        sizes.append(len(current))
    return current, sizes


def iterated_bound(f: int, d: int, k: int) -> int:
    """Size bound 2^k (f + k d) for k doublings of a d-dimensional f-ray proof."""
    return 2**k * (f + k * d)
