import json
import random

import pytest

from bks import catalog
from bks.colouring import Mode, Problem
from bks.construct import lift
from bks.critical import (
    MinimalSubsetMiner, NotAProof, ResourceBudgetExceeded, enumerate_minimal,
    is_critical, minimum_proof_size, recheck_minimal,
)
from bks.rays import RaySet
from oracles import minimal_noncolourable


def p24_around_s4(extra):
    p24, s4 = catalog.rays("P24"), catalog.rays("S4")
    others = [i for i, r in enumerate(p24) if r not in s4]
    return p24.subset([p24.index(r) for r in s4] + [others[i] for i in extra])


@pytest.mark.parametrize("name", ["S4", "S5", "S8"])
def test_catalog_sets_critical(name):
    report = is_critical(catalog.rays(name), name=name)
    assert report.critical and report.removable == []


def test_lift_of_p24_not_critical():
    report = is_critical(lift(catalog.rays("P24"), 5).D)
    assert not report.critical and report.removable


def test_is_critical_rejects_colourable():
    with pytest.raises(NotAProof):
        is_critical(RaySet.of([(1, 0, 0), (0, 1, 0), (0, 0, 1)]))


def test_is_critical_parallel_matches_serial():
    rays = catalog.rays("P24")
    assert is_critical(rays, threads=2).removable == is_critical(rays).removable


def test_s4_only_minimal_subset_is_itself():
    report = enumerate_minimal(catalog.rays("S4"))
    assert report.minimal_subsets == [tuple(range(18))]
    assert report.critical and report.exhaustive


@pytest.mark.parametrize("extra", [(0, 1), (0, 5), (2, 3), (4,), (1, 5)])
def test_enumeration_matches_brute_force(extra):
    rays = p24_around_s4(extra)
    problem = Problem.from_rays(rays)
    expected = minimal_noncolourable(len(rays), problem.bases)
    report = enumerate_minimal(rays)
    assert report.minimal_subsets == expected
    assert report.minimum_size == minimum_proof_size(rays) == 18


@pytest.mark.parametrize("seed", range(4))
def test_random_p24_subsets_match_brute_force(seed):
    rng = random.Random(seed)
    p24 = catalog.rays("P24")
    rays = p24.subset(sorted(rng.sample(range(24), 20)))
    problem = Problem.from_rays(rays)
    expected = minimal_noncolourable(len(rays), problem.bases)
    if not expected:
        with pytest.raises(NotAProof):
            enumerate_minimal(rays)
    else:
        assert enumerate_minimal(rays).minimal_subsets == expected


def test_p24_minimal_subsets():
    report = enumerate_minimal(catalog.rays("P24"))
    assert report.sizes() == {18: 16, 20: 96}
    assert not report.critical
    for subset in report.minimal_subsets[:20]:
        assert recheck_minimal(catalog.rays("P24"), subset)


def test_max_size_and_minimum_only():
    rays = catalog.rays("P24")
    capped = enumerate_minimal(rays, max_size=19)
    smallest = enumerate_minimal(rays, minimum_only=True)
    assert capped.minimal_subsets == smallest.minimal_subsets
    assert smallest.count_at_minimum == 16 and smallest.minimum_size == 18


@pytest.mark.parametrize("seed, n, size", [("S4", 5, 29), ("S4", 6, 32)])
def test_small_lift_minimum(seed, n, size):
    D = lift(catalog.rays(seed), n).D
    report = enumerate_minimal(D, minimum_only=True)
    assert report.minimum_size == size == minimum_proof_size(D)
    for subset in report.minimal_subsets:
        assert recheck_minimal(D, subset)


def test_lift_s4_5_smallest_is_s5():
    D = lift(catalog.rays("S4"), 5).D
    [subset] = enumerate_minimal(D, minimum_only=True).minimal_subsets
    assert D.subset(subset) == catalog.rays("S5")


def test_miner_yields_nondecreasing_sizes():
    sizes = [m.bit_count() for m in MinimalSubsetMiner(Problem.from_rays(p24_around_s4((0, 1))))]
    assert sizes == sorted(sizes)


def test_budget_exceeded_reports_partial():
    with pytest.raises(ResourceBudgetExceeded) as err:
        enumerate_minimal(catalog.rays("P24"), node_budget=40)
    partial = err.value.partial
    assert partial.exhaustive is False
    assert json.loads(json.dumps(partial.to_json()))["exhaustive"] is False


def test_time_budget():
    with pytest.raises(ResourceBudgetExceeded):
        minimum_proof_size(lift(catalog.rays("P24"), 6).D, time_budget=0.0)


def test_pairwise_mode_enumeration():
    report = enumerate_minimal(catalog.rays("S4"), Mode.PAIRWISE)
    assert report.minimal_subsets == [tuple(range(18))]


def test_report_json_schema():
    doc = enumerate_minimal(catalog.rays("S4")).to_json()
    assert set(doc) == {"critical", "removable", "minimal_subsets", "exhaustive"}
    assert doc["minimal_subsets"] == [{"size": 18, "indices": list(range(18))}]
