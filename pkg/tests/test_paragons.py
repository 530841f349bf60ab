"""Closure properties, paragon recognition/enumeration, quotients and the
brace-type quotient criterion, validated against the congruence oracle."""

import numpy as np
import pytest

from conftest import (
    example_product_truss,
    ring_truss,
    s3_brace_truss,
    trivial_brace_truss,
)
from trusskit.errors import PreconditionError, SizeGuardError
from trusskit.groups import find_group_isomorphism, group_from_table
from trusskit.paragons import (
    brace_type_quotient_criterion,
    count_left_ideals,
    enumerate_congruences_bruteforce,
    enumerate_ideals,
    enumerate_left_ideals,
    enumerate_paragons,
    is_ideal,
    is_left_closed,
    is_left_ideal,
    is_maximal_paragon,
    is_paragon,
    is_right_closed,
    is_right_ideal,
    leftclosed_contains_ideal_implies_ideal_check,
    maximal_ideal_quotient_check,
    quotient,
    quotient_absorber_criterion,
)
from trusskit.trusses import classify, multiplication_group


def test_whole_carrier_is_closed(tz4):
    whole = frozenset(range(4))
    assert is_left_closed(tz4, whole) and is_right_closed(tz4, whole)


def test_closure_examples_in_tz4(tz4):
    assert is_left_closed(tz4, {0, 2}) and is_right_closed(tz4, {0, 2})
    assert is_left_closed(tz4, {1, 3}) and is_right_closed(tz4, {1, 3})
    with pytest.raises(PreconditionError):
        is_left_closed(tz4, {0, 1})     # not a sub-heap


def test_paragon_examples(tz4):
    # cosets of the ideal {0,2} are paragons; every singleton is a paragon
    for members in ({0}, {1}, {2}, {3}, {0, 2}, {1, 3}, {0, 1, 2, 3}):
        assert is_paragon(tz4, members)
    with pytest.raises(PreconditionError):
        is_paragon(tz4, {0, 1})


def test_every_ideal_coset_is_a_paragon(tz4, tz6):
    for t in (tz4, tz6):
        from trusskit.heaps import subheap_classes

        for ideal in enumerate_ideals(t):
            for cls in subheap_classes(t.heap, ideal).classes:
                assert is_paragon(t, cls)


def test_paragon_count_of_tz4(tz4):
    markers = enumerate_paragons(tz4)
    assert len(markers) == 7
    assert [sorted(m.members) for m in markers] == [
        [0], [1], [2], [3], [0, 2], [1, 3], [0, 1, 2, 3],
    ]


def test_one_element_truss_has_one_paragon():
    t = ring_truss(1)
    assert len(enumerate_paragons(t)) == 1
    assert len(enumerate_congruences_bruteforce(t)) == 1


def paragon_congruence_agreement(t):
    paragons = {m.members for m in enumerate_paragons(t)}
    classes = set()
    for part in enumerate_congruences_bruteforce(t):
        classes.update(part.classes)
    return paragons, classes


@pytest.mark.parametrize("name", ["T(Z4)", "T(Z6)", "brace-Z4", "brace-S3"])
def test_paragons_equal_congruence_classes(catalogue, name):
    paragons, classes = paragon_congruence_agreement(catalogue[name])
    assert paragons == classes


def test_congruence_count_of_tz4(tz4):
    assert len(enumerate_congruences_bruteforce(tz4)) == 3


def test_congruence_guard():
    with pytest.raises(SizeGuardError):
        enumerate_congruences_bruteforce(ring_truss(9))


def test_quotient_of_tz4_is_tz2(tz4):
    q = quotient(tz4, {0, 2})
    tz2 = ring_truss(2)
    assert q.size == 2
    assert classify(q.structure).kind == "truss"
    iso = find_group_isomorphism(
        group_from_table(q.structure.elements, q.structure.heap.table[:, 0, :]),
        group_from_table(tz2.elements, tz2.heap.table[:, 0, :]),
    )
    assert iso is not None
    assert np.array_equal(q.structure.mul, tz2.mul)


def test_quotient_by_whole_carrier(tz4):
    q = quotient(tz4, frozenset(range(4)))
    assert q.size == 1


def test_quotient_rejects_non_paragon(tz4):
    with pytest.raises(PreconditionError):
        quotient(tz4, {0, 1})


def test_quotient_projection_is_homomorphism(tz6):
    q = quotient(tz6, {0, 2, 4})
    cid = q.projection
    for a in range(6):
        for b in range(6):
            assert cid[tz6.product(a, b)] == q.structure.product(cid[a], cid[b])
            for c in range(6):
                assert cid[tz6.ternary(a, b, c)] == q.structure.ternary(
                    cid[a], cid[b], cid[c]
                )


def test_ideal_examples(tz4):
    assert is_ideal(tz4, {0, 2})
    assert not is_left_ideal(tz4, {1, 3})
    assert is_ideal(tz4, frozenset(range(4)))
    assert enumerate_left_ideals(tz4) == [
        frozenset({0}), frozenset({0, 2}), frozenset({0, 1, 2, 3}),
    ]


def test_leftclosed_contains_ideal_lemma(catalogue):
    for name in ("T(Z4)", "T(Z6)", "T(Z2)"):
        result = leftclosed_contains_ideal_implies_ideal_check(catalogue[name])
        assert result.holds, name
    assert leftclosed_contains_ideal_implies_ideal_check(ring_truss(1)).holds


def test_quotient_absorber_criterion(tz4):
    crit = quotient_absorber_criterion(tz4, {1, 3})
    assert crit.has_left_absorber
    assert crit.absorber_class == frozenset({0, 2})
    crit = quotient_absorber_criterion(tz4, frozenset(range(4)))
    assert crit.has_left_absorber
    # on a brace-type truss no translate of a proper paragon is a left ideal
    # (the whole carrier is degenerate: a one-element quotient absorbs itself)
    tb = s3_brace_truss()
    for marker in enumerate_paragons(tb):
        crit = quotient_absorber_criterion(tb, marker.members)
        assert crit.has_left_absorber == (len(marker.members) == tb.size)


def test_count_left_ideals_classification(catalogue):
    assert count_left_ideals(catalogue["brace-S3"]).classification == "brace-type"
    assert count_left_ideals(catalogue["T(Z2)"]).classification == "near-field"
    assert count_left_ideals(catalogue["T(Z3)"]).classification == "near-field"
    census = count_left_ideals(catalogue["T(Z4)"])
    assert census.classification == "neither"
    assert len(census.ideals) == 3


def test_maximality(tz4):
    assert is_maximal_paragon(tz4, {0, 2})
    assert is_maximal_paragon(tz4, {1, 3})
    assert not is_maximal_paragon(tz4, frozenset(range(4)))
    assert not is_maximal_paragon(tz4, {0})
    # translates of a maximal left-closed sub-heap stay maximal
    from trusskit.heaps import subheap_classes

    for cls in subheap_classes(tz4.heap, frozenset({0, 2})).classes:
        assert is_maximal_paragon(tz4, cls)


def test_brace_type_quotient_criterion(tz4):
    verdict = brace_type_quotient_criterion(tz4, {0, 2})
    assert not verdict.is_brace_type
    assert verdict.certificate[0] == "class-inside-ideal"

    tb = trivial_brace_truss(4)
    for marker in enumerate_paragons(tb):
        assert brace_type_quotient_criterion(tb, marker.members).is_brace_type

    verdict = brace_type_quotient_criterion(s3_brace_truss(), {0})
    assert verdict.is_brace_type


def test_product_paragon_fulfils_criterion():
    prod = example_product_truss()
    # P x T(R) with P = {0} in T(B): indices pair (i, j) -> 2 i + j
    members = frozenset({0, 1})
    assert is_paragon(prod, members)
    verdict = brace_type_quotient_criterion(prod, members)
    assert verdict.is_brace_type
    q = quotient(prod, members)
    assert q.size == 2
    assert multiplication_group(q.structure).order == 2


def test_maximal_ideal_quotient_check(tz4):
    result = maximal_ideal_quotient_check(tz4, {0, 2})
    assert result.holds
    t9 = ring_truss(9)
    result = maximal_ideal_quotient_check(t9, {0, 3, 6})
    assert result.holds
    # degenerate: quotient by the whole carrier has one element
    result = maximal_ideal_quotient_check(ring_truss(2), frozenset({0, 1}))
    assert result.holds


def test_paragon_translates_are_paragons_with_equal_quotients(catalogue):
    from trusskit.heaps import subheap_classes

    for name in ("T(Z4)", "brace-Z4", "nearring-Z4"):
        t = catalogue[name]
        for marker in enumerate_paragons(t):
            part = subheap_classes(t.heap, marker.members)
            for cls in part.classes:
                assert is_paragon(t, cls)
                assert subheap_classes(t.heap, cls).as_sets() == part.as_sets()


def test_absorber_criterion_consistency_across_catalogue(catalogue):
    for name, t in catalogue.items():
        for marker in enumerate_paragons(t):
            quotient_absorber_criterion(t, marker.members)   # raises on mismatch


def test_hom_images_and_preimages_of_paragons(tz4):
    from trusskit.trusses import PreTrussHom

    q = quotient(tz4, {0, 2})
    proj = PreTrussHom(tz4, q.structure, q.projection)
    proj.verify()
    # preimages of points are paragons
    for cls in q.classes.classes:
        assert is_paragon(tz4, cls)
    # images of paragons are paragons in the (surjective) image
    for marker in enumerate_paragons(tz4):
        image = frozenset(q.projection[a] for a in marker.members)
        assert is_paragon(q.structure, image)
    # preimages of paragons of the quotient are paragons upstairs
    for marker in enumerate_paragons(q.structure):
        pre = frozenset(a for a in range(4) if q.projection[a] in marker.members)
        assert is_paragon(tz4, pre)


def test_brace_paragons_translate_to_brace_ideals():
    # P is a paragon of T(B) exactly when its translate through 1 is an
    # ideal of the skew brace: a normal subgroup with aI = Ia and ab - a in I
    from trusskit.groups import symmetric3
    from trusskit.heaps import subheap_classes

    s3 = symmetric3()
    tb = s3_brace_truss()
    unit = tb.unit
    for marker in enumerate_paragons(tb):
        part = subheap_classes(tb.heap, marker.members)
        ideal = part.members(part.class_index(unit))
        assert unit in ideal
        for a in range(6):
            left = {s3.mul(a, b) for b in ideal}
            right = {s3.mul(b, a) for b in ideal}
            assert left == right
            for b in ideal:
                # ab - a in I, with + the (trivial-brace) group operation
                assert s3.mul(s3.mul(a, b), s3.inverse(a)) in ideal
        sub = {s3.mul(a, s3.inverse(b)) for a in ideal for b in ideal}
        assert sub <= ideal
