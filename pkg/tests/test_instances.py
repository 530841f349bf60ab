"""Value validation, parity closure, matrix arithmetic and quotient models."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trusskit.errors import SizeGuardError, StructureError
from trusskit.groups import (
    find_group_isomorphism,
    group_from_table,
    units_group_mod,
)
from trusskit.instances import (
    OddGauss,
    OddInt,
    OddMatrix,
    OddPoly,
    OddRationalMatrix,
    gauss_model_of_poly_quotient,
    matrix_cofactor,
    matrix_det,
    matrix_fraction_normal_form,
    oddgauss_ops,
    oddint_ops,
    oddint_paragon,
    oddint_quotient_model,
    oddmatrix_ops,
    oddpoly_ops,
)
from trusskit.trusses import classify, multiplication_group

odd_ints = st.integers(-10 ** 6, 10 ** 6).map(lambda v: v | 1)


def test_constructors_reject_broken_parity():
    with pytest.raises(StructureError):
        OddInt(4)
    with pytest.raises(StructureError):
        OddPoly((1, 1))            # sum 2
    with pytest.raises(StructureError):
        OddGauss(1, 1)
    with pytest.raises(StructureError):
        OddMatrix(((2, 0), (0, 1)))
    with pytest.raises(StructureError):
        OddMatrix(((1, 1), (0, 1)))
    with pytest.raises(StructureError):
        OddRationalMatrix(((Fraction(1, 2),),))


def test_trailing_zeros_are_trimmed():
    assert OddPoly((1, 2, 0, 0)).coeffs == (1, 2)


@given(a=odd_ints, b=odd_ints, c=odd_ints)
@settings(max_examples=200, deadline=None)
def test_oddint_closure(a, b, c):
    ops = oddint_ops()
    x, y, z = OddInt(a), OddInt(b), OddInt(c)
    assert ops.ternary(x, y, z).value == a - b + c
    assert ops.mul(x, y).value == a * b


@given(st.data())
@settings(max_examples=100, deadline=None)
def test_oddgauss_closure(data):
    re1 = data.draw(st.integers(-1000, 1000))
    im1 = data.draw(st.integers(-1000, 1000))
    if (re1 + im1) % 2 == 0:
        im1 += 1
    re2 = data.draw(st.integers(-1000, 1000))
    im2 = data.draw(st.integers(-1000, 1000))
    if (re2 + im2) % 2 == 0:
        im2 += 1
    ops = oddgauss_ops()
    x, y = OddGauss(re1, im1), OddGauss(re2, im2)
    prod = ops.mul(x, y)
    assert (prod.re + prod.im) % 2 == 1


def test_instance_law_self_checks():
    rng = random.Random(1729)
    for ops in (oddint_ops(), oddpoly_ops(), oddgauss_ops(),
                oddmatrix_ops(1), oddmatrix_ops(2), oddmatrix_ops(3)):
        ops.self_check(rng, rounds=40)


def test_poly_product_keeps_parity_via_evaluation_at_one():
    ops = oddpoly_ops()
    rng = random.Random(5)
    for _ in range(100):
        p, q = ops.sample(rng), ops.sample(rng)
        prod = ops.mul(p, q)
        # evaluation at 1 is multiplicative, and odd times odd stays odd
        assert sum(prod.coeffs) == sum(p.coeffs) * sum(q.coeffs)
        assert sum(prod.coeffs) % 2 == 1


def test_matrix_product_example():
    ops = oddmatrix_ops(2)
    prod = ops.mul(OddMatrix(((1, 2), (2, 3))), OddMatrix(((3, 0), (0, 1))))
    assert prod.entries == ((3, 2), (6, 3))


def test_matrix_det_and_cofactor_examples():
    ident = OddMatrix(((1, 0), (0, 1)))
    assert matrix_det(ident) == 1
    assert matrix_cofactor(ident).entries == ((1, 0), (0, 1))
    m = OddMatrix(((1, 2), (2, 3)))
    assert matrix_det(m) == -1
    assert matrix_cofactor(m).entries == ((3, -2), (-2, 1))


def test_matrix_det_parity_on_samples():
    rng = random.Random(1234)
    for n in (1, 2, 3):
        ops = oddmatrix_ops(n)
        for _ in range(50):
            m = ops.sample(rng)
            assert matrix_det(m) % 2 == 1
            matrix_cofactor(m)      # raises if the pattern or identity breaks


def test_matrix_normal_form():
    ident = OddMatrix(((1, 0), (0, 1)))
    num = OddMatrix(((3, 2), (0, 1)))
    nf = matrix_fraction_normal_form(ident, num)
    assert nf.entries == ((Fraction(3), Fraction(2)), (Fraction(0), Fraction(1)))
    scalar = OddMatrix(((3,),))
    nf = matrix_fraction_normal_form(scalar, OddMatrix(((7,),)))
    assert nf.entries == ((Fraction(7, 3),),)


def test_matrix_dimension_guard():
    with pytest.raises(SizeGuardError):
        oddmatrix_ops(9)


def test_oddint_paragon_membership():
    p1 = oddint_paragon(1)
    assert p1.contains(OddInt(3))
    p2 = oddint_paragon(2)
    assert p2.contains(OddInt(5))
    assert not p2.contains(OddInt(9))      # 9 = 4*2 + 1 with m even
    for n in (1, 2, 3, 5):
        assert not oddint_paragon(n).contains(OddInt(1))


def test_oddint_paragon_relation_matches_residues():
    p = oddint_paragon(3)
    rng = random.Random(42)
    ops = oddint_ops()
    for _ in range(200):
        a, b = ops.sample(rng), ops.sample(rng)
        assert p.related(a, b) == (p.residue(a) == p.residue(b))


def test_quotient_model_small_levels():
    m1 = oddint_quotient_model(1)
    assert m1.elements == ("1", "3")
    m2 = oddint_quotient_model(2)
    assert m2.size == 4
    assert classify(m2).kind == "truss" and classify(m2).unital
    # multiplicative group of the level-2 model is the Klein four group
    from trusskit.groups import klein_four

    assert find_group_isomorphism(multiplication_group(m2), klein_four()) is not None


def test_quotient_model_identifies_paragon_classes():
    for n in (1, 2, 3):
        par = oddint_paragon(n)
        model = oddint_quotient_model(n)
        lut = {int(e): i for i, e in enumerate(model.elements)}
        ops = oddint_ops()
        rng = random.Random(100 + n)
        for _ in range(100):
            a, b = ops.sample(rng), ops.sample(rng)
            fa, fb = lut[par.residue(a)], lut[par.residue(b)]
            prod = ops.mul(a, b)
            assert lut[par.residue(prod)] == model.product(fa, fb)
            tern = ops.ternary(a, b, ops.unit)
            assert lut[par.residue(tern)] == model.ternary(fa, fb, lut[1])


def test_quotient_model_guards():
    with pytest.raises(SizeGuardError):
        oddint_quotient_model(0)
    with pytest.raises(SizeGuardError):
        oddint_quotient_model(21)
    with pytest.raises(SizeGuardError):
        oddint_quotient_model(8)    # level is legal but the dense table is not


def test_samplers_are_deterministic():
    for ops in (oddint_ops(), oddpoly_ops(), oddgauss_ops(), oddmatrix_ops(2)):
        a = [ops.sample(random.Random(7)) for _ in range(10)]
        b = [ops.sample(random.Random(7)) for _ in range(10)]
        assert a == b


def test_matrix_cancellation_via_exact_rational_solve():
    # ab = ac forces b = c: multiply by the exact rational inverse of a
    rng = random.Random(777)
    for n in (2, 3):
        ops = oddmatrix_ops(n)
        for _ in range(50):
            a, b = ops.sample(rng), ops.sample(rng)
            ab = ops.mul(a, b)
            solved = matrix_fraction_normal_form(a, ab)
            assert solved.entries == tuple(
                tuple(Fraction(x) for x in row) for row in b.entries
            )


def test_gauss_model_kernel_class():
    model = gauss_model_of_poly_quotient()
    ops = oddpoly_ops()
    rng = random.Random(17)
    for _ in range(100):
        p = ops.sample(rng)
        q = ops.sample(rng)
        assert model.same_class(p, q) == (model(p) == model(q))
