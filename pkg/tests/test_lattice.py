"""Subgroup lattice enumeration against the independent brute-force routes."""

from __future__ import annotations

import dataclasses
import itertools
import math

import pytest

from commgraph import (
    LatticeCapExceeded,
    NotFound,
    OracleScaleExceeded,
    abelian,
    build_group_from_permutations,
    construct,
    construct_detailed,
    cyclic,
    dihedral,
    direct,
    enumerate_subgroups,
    locate_subgroup,
    oracle_enumerate_subgroups,
    p2q,
    subgroup_closure,
    sym,
)
from commgraph.groups import perm_from_cycles


@pytest.mark.parametrize("spec,count", [
    (cyclic(1), 1),
    (cyclic(6), 4),
    (cyclic(8), 4),
    (sym(3), 6),
    (sym(4), 30),
    (abelian([2, 2]), 5),
    (abelian([2, 4]), 8),
    (abelian([3, 3]), 6),
    (dihedral(4), 10),
    (p2q(3), 16),
    (p2q(5), 78),
])
def test_subgroup_counts(spec, count):
    lat = enumerate_subgroups(construct(spec))
    assert len(lat.subgroups) == count


def test_lattice_canonical_order_and_endpoints():
    lat = enumerate_subgroups(construct(sym(4)))
    orders = [s.order for s in lat.subgroups]
    assert orders == sorted(orders)
    assert lat.subgroups[0].order == 1
    assert lat.subgroups[-1].order == 24
    assert len({s.members for s in lat.subgroups}) == len(lat.subgroups)


def test_lattice_closed_under_intersection():
    lat = enumerate_subgroups(construct(sym(4)))
    for a, b in itertools.combinations(lat.subgroups, 2):
        assert (a.members & b.members) in lat.index_of_members


def test_enumeration_deterministic_across_independent_tables():
    a = build_group_from_permutations(4, [[(1, 2)], [(1, 2, 3, 4)]])
    b = build_group_from_permutations(4, [[(1, 2)], [(1, 2, 3, 4)]])
    assert a is not b
    la, lb = enumerate_subgroups(a), enumerate_subgroups(b)
    assert [s.members for s in la.subgroups] == [s.members for s in lb.subgroups]
    assert [s.witnesses for s in la.subgroups] == [s.witnesses for s in lb.subgroups]


def brute_force_tuple_closures(table, max_gens):
    """Literal oracle: dedup closures over all generator tuples."""
    masks = {subgroup_closure(table, []).members}
    for size in range(1, max_gens + 1):
        for combo in itertools.combinations(range(1, table.order), size):
            masks.add(subgroup_closure(table, combo).members)
    return masks


@pytest.mark.parametrize("spec,max_gens", [
    (sym(3), 2),
    (cyclic(8), 3),
    (abelian([2, 2]), 2),
    (dihedral(4), 3),
])
def test_oracle_matches_literal_tuple_closures(spec, max_gens):
    table = construct(spec)
    oracle = oracle_enumerate_subgroups(table, max_gens)
    assert {s.members for s in oracle.subgroups} \
        == brute_force_tuple_closures(table, max_gens)


def test_oracle_examples():
    assert len(oracle_enumerate_subgroups(construct(cyclic(1)), 2).subgroups) == 1
    assert len(oracle_enumerate_subgroups(construct(sym(3)), 2).subgroups) == 6
    assert len(oracle_enumerate_subgroups(construct(cyclic(8)), 3).subgroups) == 4


def test_oracle_scale_guard():
    with pytest.raises(OracleScaleExceeded):
        oracle_enumerate_subgroups(construct(p2q(7)), 8)
    with pytest.raises(ValueError):
        oracle_enumerate_subgroups(construct(sym(3)), 1)


@pytest.mark.parametrize("spec", [
    sym(3), sym(4), cyclic(6), cyclic(12), abelian([2, 4]), dihedral(6),
    direct([sym(3), cyclic(2)]), p2q(3), p2q(5),
])
def test_enumeration_matches_oracle(spec):
    table = construct(spec)
    assert table.order <= 100
    lat = enumerate_subgroups(table)
    oracle = oracle_enumerate_subgroups(table, math.ceil(math.log2(table.order)))
    assert [s.members for s in lat.subgroups] \
        == [s.members for s in oracle.subgroups]


def test_subgroup_count_monotone_under_direct_factor():
    for spec in (cyclic(6), sym(3), abelian([2, 2])):
        base = len(enumerate_subgroups(construct(spec)).subgroups)
        grown = len(enumerate_subgroups(
            construct(direct([spec, cyclic(2)]))).subgroups)
        assert grown >= base


def test_lattice_cap():
    table = build_group_from_permutations(4, [[(1, 2)], [(1, 2, 3, 4)]])
    with pytest.raises(LatticeCapExceeded):
        enumerate_subgroups(table, lattice_cap=10)


def test_locate_subgroup():
    built = construct_detailed(sym(4))
    lat = enumerate_subgroups(built.table)

    def el(*cycles):
        return built.index[perm_from_cycles(4, cycles)]

    assert lat.subgroups[locate_subgroup(lat, [])].order == 1
    idx = locate_subgroup(lat, [el((1, 2))])
    assert lat.subgroups[idx].order == 2
    idx = locate_subgroup(lat, [el((1, 2)), el((3, 4)), el((1, 3), (2, 4))])
    assert lat.subgroups[idx].order == 8
    corrupt = dataclasses.replace(lat, index_of_members={1: 0})
    with pytest.raises(NotFound):
        locate_subgroup(corrupt, [el((1, 2))])
