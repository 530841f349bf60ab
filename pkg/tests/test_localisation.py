"""Ore witnesses, fraction arithmetic, Q(T) handles, embeddings, the
universal property and the skew-brace retract."""

import random
from fractions import Fraction as QQ
from math import prod

import pytest

from conftest import ring_truss, trivial_brace_truss
from trusskit.errors import NotLeftRegularError, PreconditionError, SizeGuardError
from trusskit.groups import find_group_isomorphism, group_from_table
from trusskit.instances import (
    OddGauss,
    OddInt,
    OddMatrix,
    matrix_fraction_normal_form,
    oddgauss_ops,
    oddint_ops,
    oddmatrix_ops,
    oddpoly_ops,
)
from trusskit.localisation import (
    Embedding,
    FiniteBraceTarget,
    LocalisedBraceTarget,
    brace_retract_of_fractions,
    check_left_regular,
    embed,
    frac_eq,
    frac_mul,
    frac_ternary,
    localise,
    universal_map,
)
from trusskit.trusses import classify


@pytest.fixture(scope="module")
def L_int():
    return localise(oddint_ops())


@pytest.fixture(scope="module")
def L_mat2():
    return localise(oddmatrix_ops(2))


def test_check_left_regular_verdicts(tz4):
    assert check_left_regular(oddint_ops()).ok
    assert check_left_regular(oddmatrix_ops(3)).ok
    report = check_left_regular(tz4)
    assert not report.ok and report.reason == "not-a-domain"
    assert check_left_regular(ring_truss(5)).ok
    assert check_left_regular(trivial_brace_truss(4)).ok


def test_localise_refuses_non_domains(tz4):
    with pytest.raises(NotLeftRegularError):
        localise(tz4)


def test_commutative_ore_witness(L_int):
    w = L_int.ore_witness(OddInt(3), OddInt(5))
    assert (w.r.value, w.s.value) == (5, 3)


def test_matrix_ore_witness_closed_form(L_mat2):
    x = OddMatrix(((1, 2), (0, 1)))
    y = OddMatrix(((3, 0), (2, 1)))
    w = L_mat2.ore_witness(x, y)
    ops = oddmatrix_ops(2)
    assert ops.eq(ops.mul(w.r, x), ops.mul(w.s, y))
    assert w.s.entries == ((1, 0), (0, 1))      # det(x) = 1
    assert w.r.entries == ((3, -6), (2, -3))


def test_finite_brace_witness_exists():
    handle = localise(trivial_brace_truss(4))
    w = handle.ore_witness(1, 3)
    t = trivial_brace_truss(4)
    assert t.product(w.r, 1) == t.product(w.s, 3)


def test_frac_eq_examples(L_int):
    f = L_int.frac(OddInt(5), OddInt(3))
    assert frac_eq(f, f)
    assert frac_eq(f, L_int.frac(OddInt(15), OddInt(9)))
    assert not frac_eq(f, L_int.frac(OddInt(5), OddInt(7)))


def test_frac_eq_is_an_equivalence(L_int):
    ops = oddint_ops()
    rng = random.Random(1729)
    for _ in range(100):
        f = L_int.sample_fraction(rng)
        w1, w2 = ops.sample(rng), ops.sample(rng)
        g = L_int.frac(ops.mul(w1, f.den), ops.mul(w1, f.num))
        h = L_int.frac(ops.mul(w2, g.den), ops.mul(w2, g.num))
        assert frac_eq(f, f)
        assert frac_eq(f, g) and frac_eq(g, f)
        assert frac_eq(g, h) and frac_eq(f, h)


def test_frac_mul_examples(L_int):
    a_b = L_int.frac(OddInt(5), OddInt(3))
    assert frac_eq(frac_mul(a_b, L_int.frac(OddInt(5), OddInt(5))), a_b)
    prod_ = frac_mul(a_b, L_int.frac(OddInt(3), OddInt(7)))
    assert frac_eq(prod_, L_int.frac(OddInt(5), OddInt(7)))
    inv = L_int.frac(OddInt(3), OddInt(5))
    assert frac_eq(frac_mul(a_b, inv), L_int.unit_fraction())
    assert frac_eq(frac_mul(inv, a_b), L_int.unit_fraction())


def test_frac_mul_witness_independence(L_int, L_mat2):
    rng = random.Random(3)
    ops = oddint_ops()
    for _ in range(50):
        f, g = L_int.sample_fraction(rng), L_int.sample_fraction(rng)
        default = frac_mul(f, g)
        w = L_int.ore_witness(g.den, f.num)
        scale = ops.sample(rng)
        scaled = frac_mul(f, g, witness=(ops.mul(scale, w.r), ops.mul(scale, w.s)))
        assert frac_eq(default, scaled)
    mops = oddmatrix_ops(2)
    for _ in range(20):
        f, g = L_mat2.sample_fraction(rng), L_mat2.sample_fraction(rng)
        default = frac_mul(f, g)
        w = L_mat2.ore_witness(g.den, f.num)
        scale = mops.sample(rng)
        scaled = frac_mul(f, g, witness=(mops.mul(scale, w.r), mops.mul(scale, w.s)))
        assert frac_eq(default, scaled)


def test_frac_ternary_worked_example(L_int):
    f = frac_ternary(
        L_int.frac(OddInt(3), OddInt(1)),
        L_int.frac(OddInt(5), OddInt(1)),
        L_int.frac(OddInt(7), OddInt(1)),
    )
    assert frac_eq(f, L_int.frac(OddInt(105), OddInt(29)))
    assert QQ(1, 3) - QQ(1, 5) + QQ(1, 7) == QQ(29, 105)


def test_frac_ternary_against_rational_oracle(L_int):
    rng = random.Random(11)
    for _ in range(100):
        f, g, h = (L_int.sample_fraction(rng) for _ in range(3))
        result = frac_ternary(f, g, h)
        expected = (
            QQ(f.num.value, f.den.value)
            - QQ(g.num.value, g.den.value)
            + QQ(h.num.value, h.den.value)
        )
        assert QQ(result.num.value, result.den.value) == expected


def test_frac_malcev_and_associativity(L_int):
    rng = random.Random(23)
    for _ in range(60):
        f, g = L_int.sample_fraction(rng), L_int.sample_fraction(rng)
        assert frac_eq(frac_ternary(f, f, g), g)
        assert frac_eq(frac_ternary(g, f, f), g)
    for _ in range(20):
        a, b, c, d, e = (L_int.sample_fraction(rng) for _ in range(5))
        lhs = frac_ternary(frac_ternary(a, b, c), d, e)
        assert frac_eq(lhs, frac_ternary(a, b, frac_ternary(c, d, e)))
        assert frac_eq(lhs, frac_ternary(a, frac_ternary(d, c, b), e))


def test_localise_instances_law_suites():
    for ops in (oddint_ops(), oddpoly_ops(), oddgauss_ops(), oddmatrix_ops(2)):
        handle = localise(ops)
        report = handle.verify_inherited_laws(rounds=25)
        assert report.ok, ops.name


def test_finite_localisation_of_field_is_itself():
    t3 = ring_truss(3)
    handle = localise(t3)
    q, reps = handle.materialise()
    assert q.size == 3
    assert classify(q).kind == "truss"
    iso = find_group_isomorphism(
        group_from_table(q.elements, q.heap.table[:, 0, :]),
        group_from_table(t3.elements, t3.heap.table[:, 0, :]),
    )
    assert iso is not None
    assert handle.verify_inherited_laws().ok


def test_finite_localisation_of_brace_type_is_itself():
    tb = trivial_brace_truss(4)
    handle = localise(tb)
    q, reps = handle.materialise()
    assert q.size == 4
    assert handle.verify_inherited_laws().ok


def test_saturation_guard():
    t = trivial_brace_truss(7)
    handle = localise(t)
    with pytest.raises(SizeGuardError):
        handle.enumerate_fractions()


def test_embeddings(L_int, L_mat2):
    iota = embed(L_int, OddInt(1))
    assert frac_eq(iota(OddInt(3)), L_int.frac(OddInt(1), OddInt(3)))
    prod_ = frac_mul(iota(OddInt(3)), iota(OddInt(5)))
    assert frac_eq(prod_, L_int.frac(OddInt(1), OddInt(15)))
    # iota_b is independent of the base point b
    rng = random.Random(9)
    ops = oddint_ops()
    for _ in range(30):
        a = ops.sample(rng)
        b, bp = ops.sample(rng), ops.sample(rng)
        assert frac_eq(Embedding(L_int, b)(a), Embedding(L_int, bp)(a))
    mops = oddmatrix_ops(2)
    iota_m = embed(L_mat2, mops.unit)
    x, y = mops.sample(rng), mops.sample(rng)
    assert frac_eq(iota_m(mops.mul(x, y)), frac_mul(iota_m(x), iota_m(y)))


def test_embedding_exhaustive_on_finite():
    handle = localise(ring_truss(3))
    embed(handle, 1)
    with pytest.raises(PreconditionError):
        embed(handle, 0)      # absorber base


def test_universal_map_identity_on_brace_type():
    tb = trivial_brace_truss(4)
    handle = localise(tb)
    target = FiniteBraceTarget(tb)
    fhat = universal_map(handle, lambda a: a, target)
    f = handle.frac(3, 2)     # 3^{-1} * 2 in the additive-as-mul group
    expected = target.mul(target.inv(3), 2)
    assert fhat(f) == expected
    assert fhat.assert_unique_on_finite()


def test_universal_map_oddint_to_model():
    from trusskit.instances import oddint_paragon, oddint_quotient_model

    handle = localise(oddint_ops())
    par = oddint_paragon(2)
    model = oddint_quotient_model(2)
    lut = {int(e): i for i, e in enumerate(model.elements)}

    def f(x: OddInt) -> int:
        return lut[par.residue(x)]

    fhat = universal_map(handle, f, FiniteBraceTarget(model))
    rng = random.Random(31)
    ops = oddint_ops()
    for _ in range(50):
        a, b = ops.sample(rng), ops.sample(rng)
        frac = handle.frac(b, a)
        grp = FiniteBraceTarget(model)
        assert fhat(frac) == grp.mul(grp.inv(f(b)), f(a))


def test_universal_map_into_own_fractions(L_int):
    iota = Embedding(L_int, OddInt(1))
    target = LocalisedBraceTarget(L_int)
    fhat = universal_map(L_int, iota, target)
    rng = random.Random(77)
    for _ in range(30):
        f = L_int.sample_fraction(rng)
        assert frac_eq(fhat(f), f)


def test_brace_retracts(L_int, L_mat2):
    fb = brace_retract_of_fractions(L_int, OddInt(1))
    assert not fb.near_field_case
    fb.verify_brace_law(rounds=40)
    fb.verify_no_absorber(rounds=8)
    fm = brace_retract_of_fractions(L_mat2, oddmatrix_ops(2).unit)
    fm.verify_brace_law(rounds=25)
    g = localise(oddgauss_ops())
    fg = brace_retract_of_fractions(g, OddGauss(1, 0))
    fg.verify_brace_law(rounds=25)


def test_brace_retract_addition_is_translated_rational_addition(L_int):
    # the retract at 1/1 adds by [x, 1, y], which is x - 1 + y over Q
    fb = brace_retract_of_fractions(L_int, OddInt(1))
    rng = random.Random(13)
    for _ in range(40):
        x, y = L_int.sample_fraction(rng), L_int.sample_fraction(rng)
        s = fb.add(x, y)
        assert QQ(s.num.value, s.den.value) == (
            QQ(x.num.value, x.den.value) - 1 + QQ(y.num.value, y.den.value)
        )


def test_near_field_flag_for_field_source():
    handle = localise(ring_truss(3))
    fb = brace_retract_of_fractions(handle, 1)
    assert fb.near_field_case
    with pytest.raises(PreconditionError):
        fb.verify_no_absorber()


def test_normal_form_consistency(L_int, L_mat2):
    rng = random.Random(37)
    for handle, ops in ((L_int, oddint_ops()), (L_mat2, oddmatrix_ops(2)),
                        (localise(oddgauss_ops()), oddgauss_ops())):
        for _ in range(40):
            f = handle.sample_fraction(rng)
            w = ops.sample(rng)
            g = handle.frac(ops.mul(w, f.den), ops.mul(w, f.num))
            h = handle.sample_fraction(rng)
            assert ops.normal_form(f.den, f.num) == ops.normal_form(g.den, g.num)
            assert frac_eq(f, h) == (
                ops.normal_form(f.den, f.num) == ops.normal_form(h.den, h.num)
            )


def test_matrix_fraction_identification_with_rational_matrices(L_mat2):
    """Q(T_2(Z)) sits inside T_2(Q): b^{-1}a as exact rationals, with the
    scalar-denominator representative mapping back to the same class."""
    rng = random.Random(41)
    ops = oddmatrix_ops(2)
    for _ in range(40):
        f = L_mat2.sample_fraction(rng)
        q = matrix_fraction_normal_form(f.den, f.num)
        qs = prod(entry.denominator for row in q.entries for entry in row)
        assert qs % 2 == 1
        scaled = tuple(
            tuple(int(entry * qs) for entry in row) for row in q.entries
        )
        back = L_mat2.frac(
            OddMatrix(((qs, 0), (0, qs))), OddMatrix(scaled)
        )
        assert frac_eq(back, f)


def test_fraction_product_matches_rational_matrix_product(L_mat2):
    rng = random.Random(43)
    for _ in range(25):
        f, g = L_mat2.sample_fraction(rng), L_mat2.sample_fraction(rng)
        h = frac_mul(f, g)
        qf = matrix_fraction_normal_form(f.den, f.num).entries
        qg = matrix_fraction_normal_form(g.den, g.num).entries
        qh = matrix_fraction_normal_form(h.den, h.num).entries
        n = 2
        expect = tuple(
            tuple(sum(qf[i][k] * qg[k][j] for k in range(n)) for j in range(n))
            for i in range(n)
        )
        assert qh == expect
