"""Regularity, domains, completely prime paragons and the polynomial paragon."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import ring_truss, s3_brace_truss, example_product_truss
from trusskit import polynomials as P
from trusskit.domains import (
    domain_iff_prime_check,
    gauss_paragon,
    is_completely_prime,
    is_domain,
    is_regular,
    is_regular_neartruss_shortcut,
    paragon_of_odd_polys,
    prime_preimage_check,
)
from trusskit.errors import PreconditionError
from trusskit.heaps import subheap_classes
from trusskit.instances import (
    OddInt,
    OddMatrix,
    OddPoly,
    gauss_model_of_poly_quotient,
    oddint_ops,
    oddmatrix_ops,
    oddpoly_ops,
)
from trusskit.paragons import enumerate_ideals, enumerate_paragons
from trusskit.trusses import PreTrussHom, find_absorbers


def test_regularity_in_tz4(tz4):
    r = is_regular(tz4, 2)
    assert not r.left_regular and not r.right_regular
    b, c = r.witness
    assert b != c and tz4.product(2, b) == tz4.product(2, c)
    assert is_regular(tz4, 3).regular
    assert is_regular(tz4, 1).regular
    with pytest.raises(PreconditionError):
        is_regular(tz4, 0)      # the absorber is excluded


def test_regularity_shortcut_agrees(tz4, tz6):
    for t in (tz4, tz6, s3_brace_truss()):
        absorber = find_absorbers(t).two_sided
        for a in range(t.size):
            if a == absorber:
                continue
            assert is_regular_neartruss_shortcut(t, a) == is_regular(t, a).regular


def test_ring_regularity_bridge(tz6):
    # a is regular in the ring iff regular in the associated truss
    for a in range(1, 6):
        ring_regular = all(
            (a * b) % 6 != (a * c) % 6 for b in range(6) for c in range(6) if b != c
        )
        assert is_regular(tz6, a).regular == ring_regular


def test_effective_regularity_uses_instance_proofs():
    ops = oddmatrix_ops(2)
    m = OddMatrix(((1, 2), (0, 1)))
    assert is_regular(ops, m).regular
    assert is_domain(ops)
    assert is_domain(oddint_ops())


def test_domain_examples(tz4):
    assert not is_domain(tz4)
    assert is_domain(ring_truss(2))
    assert is_domain(ring_truss(5))
    assert is_domain(s3_brace_truss())


def test_completely_prime_examples(tz4):
    assert is_completely_prime(tz4, {0, 2}).is_completely_prime
    assert is_completely_prime(tz4, {1, 3}).is_completely_prime
    cert = is_completely_prime(tz4, {0})
    assert not cert.is_completely_prime
    a, b, c, p = cert.witness
    # the witness violates the definition as stated
    tt, m = tz4.heap.table, tz4.mul
    assert tt[m[a, b], m[a, c], p] in cert.paragon or tt[m[b, a], m[c, a], p] in cert.paragon
    assert tt[b, c, p] not in cert.paragon


def test_brace_type_paragons_are_completely_prime():
    tb = s3_brace_truss()
    for marker in enumerate_paragons(tb):
        assert is_completely_prime(tb, marker.members).is_completely_prime


@pytest.mark.parametrize("name", [
    "T(Z2)", "T(Z3)", "T(Z4)", "T(Z5)", "T(Z6)",
    "brace-Z4", "brace-S3", "left-projection", "nearring-Z4", "product-BxR",
])
def test_domain_iff_completely_prime(catalogue, name):
    t = catalogue[name]
    for marker in enumerate_paragons(t):
        assert domain_iff_prime_check(t, marker.members).holds


def test_left_absorber_collapse(catalogue):
    # P properly contained and completely prime: all left-absorber translates agree
    for t in (catalogue["T(Z4)"], catalogue["nearring-Z4"]):
        absorbers = sorted(find_absorbers(t).left_absorbers)
        if len(absorbers) < 1:
            continue
        for marker in enumerate_paragons(t):
            if len(marker.members) == t.size:
                continue
            if not is_completely_prime(t, marker.members).is_completely_prime:
                continue
            part = subheap_classes(t.heap, marker.members)
            classes = {part.class_index(a) for a in absorbers}
            assert len(classes) == 1


def test_ring_bridge_completely_prime():
    for n in (4, 6, 12):
        t = ring_truss(n)
        for ideal in enumerate_ideals(t):
            ring_side = all(
                a in ideal or b in ideal
                for a in range(n) for b in range(n) if (a * b) % n in ideal
            )
            truss_side = is_completely_prime(t, ideal).is_completely_prime
            assert ring_side == truss_side, (n, sorted(ideal))


def test_prime_preimage_checks(tz4):
    tz2 = ring_truss(2)
    proj = PreTrussHom(tz4, tz2, (0, 1, 0, 1))
    result = prime_preimage_check(proj, {0})
    assert result.holds and result.preimage == frozenset({0, 2})

    ident = PreTrussHom(tz4, tz4, (0, 1, 2, 3))
    assert prime_preimage_check(ident, {0, 2}).holds

    prod = example_product_truss()
    from conftest import trivial_brace_truss

    tb2 = trivial_brace_truss(2)
    onto_b = PreTrussHom(prod, tb2, (0, 0, 1, 1))
    result = prime_preimage_check(onto_b, {0})
    assert result.holds and result.preimage == frozenset({0, 1})


# --- the polynomial paragon ---------------------------------------------------

def test_poly_paragon_membership_examples():
    pg = gauss_paragon()
    assert pg.modulus == (1, 0, 1)
    assert pg.contains(pg.t0)
    # (x^2+1) | (x^3+x^2+2x+1 - x) since x^3+x^2+x+1 = (x+1)(x^2+1)
    assert P.mul((1, 1), (1, 0, 1)) == (1, 1, 1, 1)
    assert pg.contains(OddPoly((1, 2, 1, 1)))
    assert not pg.contains(OddPoly((2, 1)))
    with pytest.raises(PreconditionError):
        paragon_of_odd_polys(OddPoly((1,)), OddPoly((1,)))


def test_poly_paragon_law_on_seeded_samples():
    pg = gauss_paragon()
    ops = oddpoly_ops()
    rng = random.Random(1729)
    hits = 0
    for _ in range(200):
        q = ops.sample(rng)
        r_deg = rng.randint(0, 4)
        r = tuple(rng.randint(-9, 9) for _ in range(r_deg + 1))
        member = OddPoly(P.add(pg.t0.coeffs, P.mul(pg.modulus, r)))
        assert pg.contains(member)
        assert pg.paragon_law_holds(q, member)
        hits += 1
    assert hits == 200


def test_poly_paragon_no_counterexample_to_primality():
    # sampled hunt: c | a(b - t0) forces c | (b - t0) or c | a, never both failing
    pg = gauss_paragon()
    ops = oddpoly_ops()
    rng = random.Random(99)
    for _ in range(300):
        a, b = ops.sample(rng), ops.sample(rng)
        if pg.same_class(ops.mul(a, b), ops.mul(a, pg.t0)):
            assert pg.same_class(b, pg.t0) or P.divides(pg.modulus, a.coeffs)


@given(
    d=st.lists(st.integers(-20, 20), min_size=1, max_size=5),
    q=st.lists(st.integers(-20, 20), min_size=1, max_size=5),
)
@settings(max_examples=200, deadline=None)
def test_poly_divisibility_roundtrip(d, q):
    d, q = P.normalize(d), P.normalize(q)
    if not d:
        return
    prod = P.mul(d, q)
    assert P.divides(d, prod)
    assert P.divmod_exact(prod, d) == q
    # a nonzero remainder of lower degree breaks divisibility
    if len(d) > 1:
        r = (1,)
        assert not P.divides(d, P.add(prod, r))


def test_gauss_class_equality_matches_evaluation():
    pg = gauss_paragon()
    model = gauss_model_of_poly_quotient()
    ops = oddpoly_ops()
    rng = random.Random(7)
    agree = related = 0
    for _ in range(300):
        p = ops.sample(rng)
        if rng.random() < 0.5:
            r = tuple(rng.randint(-9, 9) for _ in range(rng.randint(1, 4)))
            q = OddPoly(P.add(p.coeffs, P.mul(pg.modulus, r)))
        else:
            q = ops.sample(rng)
        same = pg.same_class(p, q)
        assert same == (model(p) == model(q))
        agree += 1
        related += same
    assert agree == 300 and related > 50


def test_gauss_model_examples():
    model = gauss_model_of_poly_quotient()
    from trusskit.instances import OddGauss

    assert model(OddPoly((0, 1))) == OddGauss(0, 1)
    assert model(OddPoly((1, 1, 1))) == OddGauss(0, 1)
    from trusskit.errors import StructureError

    with pytest.raises(StructureError):
        OddPoly((0, 1, 0, 1))      # x^3 + x has even coefficient sum
