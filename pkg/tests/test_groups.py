"""Group catalogue, subgroup lattices and the isomorphism search."""

import numpy as np
import pytest

from trusskit.errors import AxiomError
from trusskit.groups import (
    cyclic,
    dihedral4,
    element_order_profile,
    find_group_isomorphism,
    group_from_table,
    klein_four,
    quaternion8,
    small_group_catalogue,
    subgroups,
    symmetric3,
    units_group_mod,
)


def test_catalogue_has_all_fourteen_classes_up_to_eight():
    groups = small_group_catalogue(8)
    assert len(groups) == 14
    by_order = {}
    for g in groups:
        by_order.setdefault(g.order, []).append(g)
    assert {n: len(gs) for n, gs in by_order.items()} == {
        1: 1, 2: 1, 3: 1, 4: 2, 5: 1, 6: 2, 7: 1, 8: 5,
    }
    for gs in by_order.values():
        for i, a in enumerate(gs):
            for b in gs[i + 1:]:
                assert find_group_isomorphism(a, b) is None, (a.name, b.name)


def test_group_axiom_failure_raises_with_witness():
    bad = np.zeros((3, 3), dtype=int)
    with pytest.raises(AxiomError):
        group_from_table(["a", "b", "c"], bad)


def test_subgroups_of_z4():
    subs = subgroups(cyclic(4))
    assert subs == [frozenset({0}), frozenset({0, 2}), frozenset({0, 1, 2, 3})]


def test_subgroups_of_s3():
    subs = subgroups(symmetric3())
    assert sorted(len(s) for s in subs) == [1, 2, 2, 2, 3, 6]


def test_isomorphism_search_finds_and_refutes():
    assert find_group_isomorphism(klein_four(), cyclic(4)) is None
    iso = find_group_isomorphism(cyclic(6), symmetric3())
    assert iso is None
    d4, q8 = dihedral4(), quaternion8()
    assert find_group_isomorphism(d4, q8) is None
    g = units_group_mod(8)
    iso = find_group_isomorphism(g, klein_four())
    assert iso is not None
    v4 = klein_four()
    for a in range(4):
        for b in range(4):
            assert iso[g.mul(a, b)] == v4.mul(iso[a], iso[b])


def test_element_order_profiles():
    assert element_order_profile(cyclic(4)) == (1, 2, 4, 4)
    assert element_order_profile(quaternion8()) == (1, 2, 4, 4, 4, 4, 4, 4)
    assert element_order_profile(units_group_mod(16)) == (1, 2, 2, 2, 4, 4, 4, 4)
