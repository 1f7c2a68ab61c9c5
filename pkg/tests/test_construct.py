import random

import numpy as np
import pytest

from bks import catalog
from bks.colouring import NonColourable, solve
from bks.construct import (
    B_BAR, B_STAR, C_BAR, C_STAR, DimensionOutOfRange, compose_zp, iterate_lift,
    iterated_bound, lift,
)
from bks.ortho import enumerate_bases, mask_of
from bks.rays import RaySet, unit


@pytest.mark.parametrize(
    "seed, sizes",
    [("S4", {5: 31, 6: 35, 7: 37, 8: 38}), ("P24", {5: 39, 6: 44, 7: 47, 8: 48})],
)
def test_lift_sizes(seed, sizes):
    for n, size in sizes.items():
        assert len(lift(catalog.rays(seed), n).D) == size


def test_lift_s4_to_5_overlap_bookkeeping():
    result = lift(catalog.rays("S4"), 5)
    shared = [o for o in result.origins if B_STAR in o and C_STAR in o]
    assert len(shared) == 5
    assert result.origins[result.D.index(unit(5, 5))] == (B_BAR, C_STAR)
    assert result.origins[result.D.index(unit(5, 1))] == (B_STAR, C_BAR)
    assert len(result.B) == len(result.C) == 19
    assert 38 - 5 - 2 == len(result.D)


@pytest.mark.parametrize("n", [5, 6, 7, 8])
def test_lift_parts(n):
    s4 = catalog.rays("S4")
    result = lift(s4, n)
    m = n - 4
    assert set(result.B) == {a.padded(right=m) for a in s4} | {unit(n, k) for k in range(5, n + 1)}
    assert set(result.C) == {a.padded(left=m) for a in s4} | {unit(n, k) for k in range(1, m + 1)}
    assert result.D == result.B.union(result.C)
    assert result.D.dimension == n


@pytest.mark.parametrize("seed", ["S4", "P24"])
@pytest.mark.parametrize("n", [5, 6, 7, 8])
def test_size_bound(seed, n):
    result = lift(catalog.rays(seed), n)
    assert len(result.D) <= result.size_bound
    disjoint = not set(result.B) & set(result.C)
    assert (len(result.D) == result.size_bound) == disjoint


def test_disjoint_lift_reaches_bound():
    # a 3-dimensional set with no zero coordinates: pads can never collide
    rays = RaySet.of([(1, 1, 1), (1, -1, 2), (2, 1, -1)])
    result = lift(rays, 6)
    assert len(result.D) == result.size_bound == 2 * (3 + 3)


@pytest.mark.parametrize("n", [5, 6, 7, 8])
def test_source_bases_persist_in_b_and_c(n):
    s4 = catalog.rays("S4")
    m = n - 4
    result = lift(s4, n)
    b_bases = {frozenset(result.B[i] for i in b) for b in enumerate_bases(result.B)}
    c_bases = {frozenset(result.C[i] for i in b) for b in enumerate_bases(result.C)}
    b_bar = {unit(n, k) for k in range(5, n + 1)}
    c_bar = {unit(n, k) for k in range(1, m + 1)}
    for basis in enumerate_bases(s4):
        assert frozenset(s4[i].padded(right=m) for i in basis) | b_bar in b_bases
        assert frozenset(s4[i].padded(left=m) for i in basis) | c_bar in c_bases


def _valid_colourings(rays):
    masks = [mask_of(b) for b in enumerate_bases(rays)]
    c = np.arange(1 << len(rays), dtype=np.uint32)
    ok = np.ones(c.shape, dtype=bool)
    for m in masks:
        ok &= np.bitwise_count(c & np.uint32(m)) == 1
    return c[ok]


def test_padded_half_colourable_only_through_added_units():
    # every colouring of B puts exactly one 1 on the added unit rays, and
    # the all-black choice on the padded rays works
    result = lift(catalog.rays("S4"), 5)
    B = result.B
    bar = mask_of([B.index(unit(5, 5))])
    colourings = _valid_colourings(B)
    assert len(colourings) > 0
    assert all(bin(int(c) & bar).count("1") == 1 for c in colourings)
    assert bar in set(int(c) for c in colourings)


@pytest.mark.parametrize(
    "seed, n",
    [("S4", 5), ("S4", 6), ("S4", 7), ("S4", 8), ("P24", 5), ("P24", 6), ("P24", 7),
     ("P24", 8), ("S5", 6), ("S5", 9), ("S6", 7), ("S7", 8)],
)
def test_lifted_set_not_colourable(seed, n):
    assert isinstance(solve(lift(catalog.rays(seed), n).D), NonColourable)


@pytest.mark.parametrize("n", [4, 3, 9, 12])
def test_lift_range_checked(n):
    with pytest.raises(DimensionOutOfRange):
        lift(catalog.rays("S4"), n)


def test_lift_needs_dimension_three():
    with pytest.raises(DimensionOutOfRange):
        lift(RaySet.of([(1, 0), (0, 1)]), 3)


def test_sidecar():
    doc = lift(catalog.rays("S4"), 5).sidecar()
    assert len(doc) == 31
    assert {"ray": [1, 0, 0, 0, 0], "origins": [B_STAR, C_BAR]} in doc


def test_compose_s4_s4_is_s8():
    s4 = catalog.rays("S4")
    s8 = compose_zp(s4, s4)
    assert s8 == catalog.rays("S8") and len(s8) == 36


@pytest.mark.parametrize("seed", range(5))
def test_compose_size_is_sum(seed):
    rng = random.Random(seed)

    def rand_set(n):
        rows = [tuple(rng.randint(-3, 3) for _ in range(n)) for _ in range(rng.randint(1, 10))]
        return RaySet.of([r for r in rows if any(r)] or [(1,) * n], n)

    a, b = rand_set(rng.randint(3, 5)), rand_set(rng.randint(3, 5))
    assert len(compose_zp(a, b)) == len(a) + len(b)


@pytest.mark.parametrize("pair", [("S4", "S4"), ("S4", "S5"), ("S4", "P24")])
def test_compose_not_colourable(pair):
    a, b = (catalog.rays(p) for p in pair)
    assert isinstance(solve(compose_zp(a, b)), NonColourable)


def test_compose_rejects_small_dimension():
    with pytest.raises(DimensionOutOfRange):
        compose_zp(catalog.rays("S4"), RaySet.of([(1, 0), (0, 1)]))


def test_iterate_lift():
    s4 = catalog.rays("S4")
    final, sizes = iterate_lift(s4, [8, 16])
    assert sizes[0] == 38
    assert sizes[0] <= iterated_bound(18, 4, 1) == 44
    assert sizes[1] <= iterated_bound(18, 4, 2) == 104
    assert final.dimension == 16
    single, [size] = iterate_lift(s4, [5])
    assert single == lift(s4, 5).D and size == 31
    _, [p_size] = iterate_lift(catalog.rays("P24"), [8])
    assert p_size == 48


def test_iterate_lift_propagates_errors():
    with pytest.raises(DimensionOutOfRange):
        iterate_lift(catalog.rays("S4"), [8, 20])
