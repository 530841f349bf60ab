"""The four exact-arithmetic trusses: odd integers, odd-sum polynomials,
odd Gaussian integers, and integer matrices with odd diagonal / even
off-diagonal entries.

All arithmetic is arbitrary precision; there is no floating point anywhere.
Every constructor validates its parity invariant, so closure of the heap and
product operations is re-asserted on each computed value.  Samplers are
deterministic given the supplied ``random.Random``; documented bounds:
integers |.| <= 10^6, polynomial degree <= 8 with coefficients |.| <= 99,
matrices n <= 4 with entries |.| <= 99.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import polynomials as P
from .errors import AxiomError, PreconditionError, SizeGuardError, StructureError
from .heaps import heap_from_table
from .trusses import EffectiveTruss, FinitePreTruss, multiplication_group, pretruss

INT_BOUND = 10 ** 6
POLY_DEGREE_BOUND = 8
POLY_COEFF_BOUND = 99
MATRIX_ENTRY_BOUND = 99
MATRIX_DIM_BOUND = 4


# ---------------------------------------------------------------------------
# value types

@dataclass(frozen=True)
class OddInt:
    value: int

    def __post_init__(self):
        if self.value % 2 == 0:
            raise StructureError(f"{self.value} is even; 2Z+1 admits odd integers only")

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True)
class OddPoly:
    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", P.normalize(self.coeffs))
        if P.coeff_sum(self.coeffs) % 2 == 0:
            raise StructureError(
                f"coefficient sum of {self.coeffs} is even; O(x) needs an odd sum"
            )

    def __str__(self):
        return P.to_str(self.coeffs)


@dataclass(frozen=True)
class OddGauss:
    re: int
    im: int

    def __post_init__(self):
        if (self.re + self.im) % 2 == 0:
            raise StructureError(
                f"{self.re}+{self.im}i has even coordinate sum; O(i) needs it odd"
            )

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        sign = "+" if self.im >= 0 else "-"
        mag = "" if abs(self.im) == 1 else str(abs(self.im))
        return f"{self.re}{sign}{mag}i"


@dataclass(frozen=True)
class OddMatrix:
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.entries)
        if n < 1 or any(len(row) != n for row in self.entries):
            raise StructureError("matrix must be square of dimension >= 1")
        object.__setattr__(
            self, "entries", tuple(tuple(int(x) for x in row) for row in self.entries)
        )
        for i in range(n):
            for j in range(n):
                v = self.entries[i][j]
                if i == j and v % 2 == 0:
                    raise StructureError(f"diagonal entry [{i}][{j}]={v} must be odd")
                if i != j and v % 2 != 0:
                    raise StructureError(f"off-diagonal entry [{i}][{j}]={v} must be even")

    @property
    def n(self) -> int:
        return len(self.entries)

    def __str__(self):
        return "[" + ",".join("[" + ",".join(map(str, r)) + "]" for r in self.entries) + "]"


@dataclass(frozen=True)
class OddRationalMatrix:
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        n = len(self.entries)
        if n < 1 or any(len(row) != n for row in self.entries):
            raise StructureError("matrix must be square of dimension >= 1")
        for i in range(n):
            for j in range(n):
                q = self.entries[i][j]
                if q.denominator % 2 == 0:
                    raise StructureError(f"entry [{i}][{j}]={q} has an even denominator")
                if i == j and q.numerator % 2 == 0:
                    raise StructureError(f"diagonal entry [{i}][{j}]={q} must be odd/odd")
                if i != j and q.numerator % 2 != 0:
                    raise StructureError(f"off-diagonal entry [{i}][{j}]={q} must be even/odd")

    @property
    def n(self) -> int:
        return len(self.entries)

    def __str__(self):
        return "[" + ",".join("[" + ",".join(map(str, r)) + "]" for r in self.entries) + "]"


# ---------------------------------------------------------------------------
# Gaussian integer arithmetic on raw (re, im) pairs

def _gmul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _gnorm(a) -> int:
    return a[0] * a[0] + a[1] * a[1]


def _gdivmod(a, b):
    # nearest-integer quotient; guarantees N(r) <= N(b)/2
    nb = _gnorm(b)
    num = _gmul(a, (b[0], -b[1]))
    q = ((2 * num[0] + nb) // (2 * nb), (2 * num[1] + nb) // (2 * nb))
    r = (a[0] - (q[0] * b[0] - q[1] * b[1]), a[1] - (q[0] * b[1] + q[1] * b[0]))
    return q, r


def _ggcd(a, b):
    while b != (0, 0):
        _, r = _gdivmod(a, b)
        a, b = b, r
    return a


def _gdivexact(a, b):
    nb = _gnorm(b)
    num = _gmul(a, (b[0], -b[1]))
    if num[0] % nb or num[1] % nb:
        raise AxiomError(f"{b} does not divide {a} in Z[i]")
    return (num[0] // nb, num[1] // nb)


def _gcanonical_unit(z):
    """Power k of i rotating z into the half-open quadrant re>0, im>=0."""
    w = z
    for k in range(4):
        if w[0] > 0 and w[1] >= 0:
            return k, w
        w = (-w[1], w[0])
    raise AxiomError(f"no canonical rotation for {z}; value must be zero")


# ---------------------------------------------------------------------------
# integer matrix arithmetic on tuple-of-tuples

def _mat_mul(a, b):
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )


def _mat_add_scaled(a, b, sb):
    n = len(a)
    return tuple(
        tuple(a[i][j] + sb * b[i][j] for j in range(n)) for i in range(n)
    )


def _mat_ternary(a, b, c):
    n = len(a)
    return tuple(
        tuple(a[i][j] - b[i][j] + c[i][j] for j in range(n)) for i in range(n)
    )


def _mat_identity(n, scale=1):
    return tuple(
        tuple(scale if i == j else 0 for j in range(n)) for i in range(n)
    )


def _mat_transpose(a):
    n = len(a)
    return tuple(tuple(a[j][i] for j in range(n)) for i in range(n))


def _minor(a, i, j):
    return tuple(
        tuple(v for jj, v in enumerate(row) if jj != j)
        for ii, row in enumerate(a) if ii != i
    )


def _det(a) -> int:
    n = len(a)
    if n == 1:
        return a[0][0]
    if n == 2:
        return a[0][0] * a[1][1] - a[0][1] * a[1][0]
    total = 0
    for j in range(n):
        if a[0][j]:
            total += (-1) ** j * a[0][j] * _det(_minor(a, 0, j))
    return total


def matrix_det(m: OddMatrix) -> int:
    """Exact determinant; always odd for the odd/even pattern."""
    d = _det(m.entries)
    if d % 2 == 0:
        raise AxiomError(f"determinant {d} of {m} is even; the parity pattern is broken")
    return d


def matrix_cofactor(m: OddMatrix) -> OddMatrix:
    """Matrix of cofactors; stays inside the odd/even pattern and satisfies
    cof(m)^T m = det(m) I exactly."""
    a = m.entries
    n = m.n
    if n == 1:
        cof = ((1,),)
    else:
        cof = tuple(
            tuple((-1) ** (i + j) * _det(_minor(a, i, j)) for j in range(n))
            for i in range(n)
        )
    result = OddMatrix(cof)            # constructor re-checks the parity pattern
    adj = _mat_transpose(cof)
    if _mat_mul(adj, a) != _mat_identity(n, _det(a)):
        raise AxiomError(f"adjugate identity fails for {m}")
    return result


def matrix_fraction_normal_form(den: OddMatrix, num: OddMatrix) -> OddRationalMatrix:
    """den^{-1} num as exact rationals in lowest terms; the result carries the
    odd/odd diagonal, even/odd off-diagonal pattern."""
    if den.n != num.n:
        raise PreconditionError("dimension mismatch")
    d = matrix_det(den)
    adj = _mat_transpose(matrix_cofactor(den).entries)
    m = _mat_mul(adj, num.entries)
    return OddRationalMatrix(
        tuple(tuple(Fraction(m[i][j], d) for j in range(den.n)) for i in range(den.n))
    )


# ---------------------------------------------------------------------------
# effective trusses

class OddIntTruss(EffectiveTruss):
    """2Z+1 under [x,y,z] = x-y+z and integer multiplication; a commutative
    domain (it embeds in Z) with the Ore witness (y, x)."""

    name = "odd-int"
    commutative = True

    def eq(self, x: OddInt, y: OddInt) -> bool:
        return x.value == y.value

    def ternary(self, x, y, z) -> OddInt:
        return OddInt(x.value - y.value + z.value)

    def mul(self, x, y) -> OddInt:
        return OddInt(x.value * y.value)

    def is_absorber(self, x) -> bool:
        # t*a = a for all t would force a = 0, which is not odd
        return False

    @property
    def unit(self) -> OddInt:
        return OddInt(1)

    def sample(self, rng) -> OddInt:
        return OddInt(rng.randrange(-INT_BOUND, INT_BOUND) | 1)

    def normal_form(self, den: OddInt, num: OddInt):
        return Fraction(num.value, den.value)

    def proves_domain(self) -> bool:
        return True


class OddPolyTruss(EffectiveTruss):
    """O(x): integer polynomials with odd coefficient sum; a commutative
    domain (it embeds in Z[x]).  Fraction equality uses cross multiplication,
    so no normal form is provided."""

    name = "odd-poly"
    commutative = True

    def eq(self, x: OddPoly, y: OddPoly) -> bool:
        return x.coeffs == y.coeffs

    def ternary(self, x, y, z) -> OddPoly:
        return OddPoly(P.add(P.sub(x.coeffs, y.coeffs), z.coeffs))

    def mul(self, x, y) -> OddPoly:
        return OddPoly(P.mul(x.coeffs, y.coeffs))

    def is_absorber(self, x) -> bool:
        return False

    @property
    def unit(self) -> OddPoly:
        return OddPoly((1,))

    def sample(self, rng) -> OddPoly:
        deg = rng.randint(0, POLY_DEGREE_BOUND)
        coeffs = [rng.randint(-POLY_COEFF_BOUND, POLY_COEFF_BOUND) for _ in range(deg + 1)]
        while coeffs[-1] == 0:
            coeffs[-1] = rng.randint(-POLY_COEFF_BOUND, POLY_COEFF_BOUND)
        if sum(coeffs) % 2 == 0:
            coeffs[0] += 1
        return OddPoly(tuple(coeffs))

    def proves_domain(self) -> bool:
        return True


class OddGaussTruss(EffectiveTruss):
    """O(i): Gaussian integers m+ni with m+n odd; a commutative domain
    (it embeds in Z[i]).  The normal form reduces by a Gaussian gcd and pins
    the unit by rotating the denominator into the quadrant re>0, im>=0."""

    name = "odd-gauss"
    commutative = True

    def eq(self, x: OddGauss, y: OddGauss) -> bool:
        return (x.re, x.im) == (y.re, y.im)

    def ternary(self, x, y, z) -> OddGauss:
        return OddGauss(x.re - y.re + z.re, x.im - y.im + z.im)

    def mul(self, x, y) -> OddGauss:
        re, im = _gmul((x.re, x.im), (y.re, y.im))
        return OddGauss(re, im)

    def is_absorber(self, x) -> bool:
        return False

    @property
    def unit(self) -> OddGauss:
        return OddGauss(1, 0)

    def sample(self, rng) -> OddGauss:
        re = rng.randrange(-INT_BOUND, INT_BOUND)
        im = rng.randrange(-INT_BOUND, INT_BOUND)
        if (re + im) % 2 == 0:
            im += 1
        return OddGauss(re, im)

    def normal_form(self, den: OddGauss, num: OddGauss):
        d, n = (den.re, den.im), (num.re, num.im)
        g = _ggcd(d, n)
        d, n = _gdivexact(d, g), _gdivexact(n, g)
        k, d = _gcanonical_unit(d)
        for _ in range(k):
            n = (-n[1], n[0])
        return (d, n)

    def proves_domain(self) -> bool:
        return True


class OddMatrixTruss(EffectiveTruss):
    """T_n(Z): odd diagonal, even off-diagonal integer matrices.

    A noncommutative domain for n >= 2: the determinant is odd, hence
    nonzero, and multiplying by the adjugate cancels.  The closed-form Ore
    witness for (x, y) is r = y cof(x)^T, s = det(x) I with r x = s y.
    """

    def __init__(self, n: int):
        if not (1 <= n <= 8):
            raise SizeGuardError(f"matrix dimension must be within 1..8, got {n}")
        self.n = n
        self.name = f"odd-matrix:{n}"
        self.commutative = n == 1

    def eq(self, x: OddMatrix, y: OddMatrix) -> bool:
        return x.entries == y.entries

    def ternary(self, x, y, z) -> OddMatrix:
        return OddMatrix(_mat_ternary(x.entries, y.entries, z.entries))

    def mul(self, x, y) -> OddMatrix:
        return OddMatrix(_mat_mul(x.entries, y.entries))

    def is_absorber(self, x) -> bool:
        # the only candidate would be the zero matrix, which breaks the pattern
        return False

    @property
    def unit(self) -> OddMatrix:
        return OddMatrix(_mat_identity(self.n))

    def sample(self, rng) -> OddMatrix:
        bound = MATRIX_ENTRY_BOUND
        entries = tuple(
            tuple(
                (2 * rng.randrange(-(bound // 2), bound // 2 + 1) + 1)
                if i == j
                else 2 * rng.randrange(-(bound // 2), bound // 2)
                for j in range(self.n)
            )
            for i in range(self.n)
        )
        return OddMatrix(entries)

    def ore_witness(self, x: OddMatrix, y: OddMatrix):
        r = OddMatrix(_mat_mul(y.entries, _mat_transpose(matrix_cofactor(x).entries)))
        s = OddMatrix(_mat_identity(self.n, matrix_det(x)))
        return (r, s)

    def normal_form(self, den: OddMatrix, num: OddMatrix):
        return matrix_fraction_normal_form(den, num)

    def proves_domain(self) -> bool:
        return True


@lru_cache(maxsize=None)
def oddint_ops() -> OddIntTruss:
    return OddIntTruss()


@lru_cache(maxsize=None)
def oddpoly_ops() -> OddPolyTruss:
    return OddPolyTruss()


@lru_cache(maxsize=None)
def oddgauss_ops() -> OddGaussTruss:
    return OddGaussTruss()


@lru_cache(maxsize=None)
def oddmatrix_ops(n: int) -> OddMatrixTruss:
    return OddMatrixTruss(n)


# ---------------------------------------------------------------------------
# the odd-integer paragon family and its modular quotient model

@dataclass(frozen=True)
class OddIntParagon:
    """P = {2^n m + 1 : m odd}; membership and the induced class relation.

    Two odd integers are related exactly when 2^(n+1) divides their
    difference, so classes are the odd residues mod 2^(n+1).
    """

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise PreconditionError("paragon level n must be >= 1")

    @property
    def modulus(self) -> int:
        return 1 << (self.n + 1)

    def contains(self, x: OddInt) -> bool:
        v = x.value - 1
        if v % (1 << self.n):
            return False
        return ((v >> self.n) % 2) != 0

    def related(self, a: OddInt, b: OddInt) -> bool:
        return (a.value - b.value) % self.modulus == 0

    def residue(self, a: OddInt) -> int:
        return a.value % self.modulus


def oddint_paragon(n: int) -> OddIntParagon:
    return OddIntParagon(n)


# Dense tables hold (2^n)^3 ternary entries, so the model is materialised
# only up to n = 7 even though the level itself is meaningful for any n <= 20.
_MODEL_LEVEL_GUARD = 20
_MODEL_DENSE_GUARD = 7


@lru_cache(maxsize=None)
def oddint_quotient_model(n: int) -> FinitePreTruss:
    """The quotient 2Z+1 / P realised on odd residues mod 2^(n+1).

    The carrier has exactly 2^n elements, the induced multiplication is a
    group (brace-type), and 2m+1 -> 2m+1 mod 2^(n+1) identifies the paragon
    classes.
    """
    if not (1 <= n <= _MODEL_LEVEL_GUARD):
        raise SizeGuardError(f"model level must be within 1..{_MODEL_LEVEL_GUARD}, got {n}")
    if n > _MODEL_DENSE_GUARD:
        raise SizeGuardError(
            f"dense quotient model is materialised only up to n = {_MODEL_DENSE_GUARD} "
            f"(2^{n} elements would need a (2^{n})^3 ternary table)"
        )
    m = 1 << (n + 1)
    vals = np.arange(1, m, 2, dtype=np.int64)
    tern = (((vals[:, None, None] - vals[None, :, None] + vals[None, None, :]) % m) - 1) // 2
    mul = (((vals[:, None] * vals[None, :]) % m) - 1) // 2
    heap = heap_from_table([str(int(v)) for v in vals], tern)
    model = pretruss(heap, mul)
    multiplication_group(model)   # brace-type: the induced product is a group
    return model


# ---------------------------------------------------------------------------
# the evaluation model O(x) -> O(i)

@dataclass(frozen=True)
class PolyGaussModel:
    """p(x) -> p(i), identifying O(x)/P(x, x^2+x+1) with O(i).

    Class equality in the source is divisibility of the difference by
    x^2 + 1, which holds exactly when the evaluations at i agree.
    """

    modulus: tuple[int, ...] = (1, 0, 1)   # x^2 + 1

    def __call__(self, p: OddPoly) -> OddGauss:
        re, im = P.eval_gauss(p.coeffs)
        return OddGauss(re, im)

    def same_class(self, p: OddPoly, q: OddPoly) -> bool:
        return P.divides(self.modulus, P.sub(p.coeffs, q.coeffs))


def gauss_model_of_poly_quotient() -> PolyGaussModel:
    return PolyGaussModel()
