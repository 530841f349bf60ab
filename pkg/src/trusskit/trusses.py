"""Pre-trusses: heaps with an associative multiplication.

The distributivity ladder is classified eagerly at construction and cached:
left distributivity over the ternary operation makes a near-truss, both laws
a skew truss, and a skew truss on an Abelian heap is a truss.  Absorbers,
the ring / near-ring / skew-brace constructions and the unit <-> absorber
correspondence live here too, together with the interface contract used by
the exact-arithmetic infinite instances.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Optional

import numpy as np

from . import _kernels
from .errors import AxiomError, PreconditionError, StructureError
from .groups import FiniteGroup, group_from_table
from .heaps import FiniteHeap, heap_from_group, heap_from_table


@dataclass(frozen=True, eq=False)
class TrussFlags:
    is_associative: bool
    is_near: bool
    is_skew: bool
    is_abelian_heap: bool
    assoc_witness: Optional[tuple[int, ...]] = None
    left_witness: Optional[tuple[int, ...]] = None
    right_witness: Optional[tuple[int, ...]] = None


@dataclass(frozen=True, eq=False)
class Classification:
    kind: str            # "not-a-pretruss" | "pre-truss" | "near-truss" | "skew-truss" | "truss"
    unital: bool
    flags: TrussFlags

    def __str__(self) -> str:
        return self.kind + (" (unital)" if self.unital else "")


@dataclass(frozen=True, eq=False)
class FinitePreTruss:
    """Heap plus multiplication table; classification flags cached eagerly."""

    heap: FiniteHeap
    mul: np.ndarray
    unit: Optional[int]
    flags: TrussFlags

    @property
    def size(self) -> int:
        return self.heap.size

    @property
    def elements(self) -> tuple[str, ...]:
        return self.heap.elements

    def ternary(self, a: int, b: int, c: int) -> int:
        return self.heap.ternary(a, b, c)

    def product(self, a: int, b: int) -> int:
        return int(self.mul[a, b])

    def require_pretruss(self) -> None:
        if not self.flags.is_associative:
            raise PreconditionError(
                f"multiplication is not associative (witness {self.flags.assoc_witness})"
            )

    def require_near(self) -> None:
        self.require_pretruss()
        if not self.flags.is_near:
            raise PreconditionError(
                f"not a near-truss: left distributivity fails at {self.flags.left_witness}"
            )

    def require_unital(self) -> None:
        if self.unit is None:
            raise PreconditionError("structure has no multiplicative identity")

    def __repr__(self) -> str:
        return f"FinitePreTruss(order={self.size}, {classify(self)})"


def pretruss(heap: FiniteHeap, mul, unit: Optional[int] = "auto") -> FinitePreTruss:
    """Bundle a verified heap with a multiplication table, computing all flags.

    A non-associative multiplication is recorded rather than rejected so that
    :func:`classify` can report it; every other operation refuses to run on
    such a structure.
    """
    if not heap.verified:
        raise PreconditionError("pretruss requires a verified heap")
    n = heap.size
    m = np.array(mul, dtype=np.int64)          # own copy: callers keep their arrays
    if m.shape != (n, n):
        raise StructureError(f"multiplication table must be {n}x{n}, got {m.shape}")
    if m.min() < 0 or m.max() >= n:
        raise StructureError(f"multiplication table has indices outside 0..{n - 1}")
    m.flags.writeable = False

    assoc_count, assoc_w = _kernels.mul_assoc(m)
    left_count, left_w = _kernels.left_distrib(heap.table, m)
    right_count, right_w = _kernels.right_distrib(heap.table, m)
    abelian_count, _ = _kernels.abelian(heap.table)
    flags = TrussFlags(
        is_associative=assoc_count == 0,
        is_near=left_count == 0,
        is_skew=left_count == 0 and right_count == 0,
        is_abelian_heap=abelian_count == 0,
        assoc_witness=assoc_w,
        left_witness=left_w,
        right_witness=right_w,
    )
    if unit == "auto":
        unit = None
        idx = np.arange(n)
        for e in range(n):
            if np.array_equal(m[e], idx) and np.array_equal(m[:, e], idx):
                unit = e
                break
    return FinitePreTruss(heap, m, unit, flags)


def classify(t: FinitePreTruss) -> Classification:
    f = t.flags
    if not f.is_associative:
        kind = "not-a-pretruss"
    elif f.is_skew and f.is_abelian_heap:
        kind = "truss"
    elif f.is_skew:
        kind = "skew-truss"
    elif f.is_near:
        kind = "near-truss"
    else:
        kind = "pre-truss"
    return Classification(kind, t.unit is not None, f)


@dataclass(frozen=True, eq=False)
class AbsorberReport:
    left_absorbers: frozenset[int]
    right_absorbers: frozenset[int]
    two_sided: Optional[int]


def find_absorbers(t: FinitePreTruss) -> AbsorberReport:
    """Left absorbers (t*a = a for all t), right absorbers (a*t = a), and
    the unique two-sided absorber when both kinds exist."""
    n = t.size
    idx = np.arange(n)
    left = frozenset(int(a) for a in idx if np.all(t.mul[:, a] == a))
    right = frozenset(int(a) for a in idx if np.all(t.mul[a, :] == a))
    both = left & right
    if left and right:
        if len(both) != 1:
            raise AxiomError(
                "left and right absorbers exist but do not meet in a single element; "
                "the multiplication table is inconsistent"
            )
        return AbsorberReport(left, right, next(iter(both)))
    return AbsorberReport(left, right, None)


def non_absorber_indices(t: FinitePreTruss) -> tuple[int, ...]:
    """Carrier minus the two-sided absorber; the whole carrier when none exists."""
    report = find_absorbers(t)
    if report.two_sided is None:
        return tuple(range(t.size))
    return tuple(a for a in range(t.size) if a != report.two_sided)


def _check_left_distributive_over_add(add: FiniteGroup, m: np.ndarray) -> Optional[tuple]:
    n = add.order
    for a in range(n):
        row = m[a]
        if not np.array_equal(row[add.op], add.op[np.ix_(row, row)]):
            bad = np.argwhere(row[add.op] != add.op[np.ix_(row, row)])[0]
            return (a, int(bad[0]), int(bad[1]))
    return None


def _check_right_distributive_over_add(add: FiniteGroup, m: np.ndarray) -> Optional[tuple]:
    n = add.order
    for a in range(n):
        col = m[:, a]
        if not np.array_equal(col[add.op], add.op[np.ix_(col, col)]):
            bad = np.argwhere(col[add.op] != add.op[np.ix_(col, col)])[0]
            return (int(bad[0]), int(bad[1]), a)
    return None


def truss_from_ring(add: FiniteGroup, mul) -> FinitePreTruss:
    """T(R): verify the ring axioms, then pair H(R,+) with the multiplication."""
    m = np.asarray(mul, dtype=np.int64)
    if not add.is_abelian:
        raise AxiomError("ring addition must be commutative")
    count, w = _kernels.mul_assoc(m)
    if count:
        raise AxiomError(f"ring multiplication not associative at {w}", witness=w)
    w = _check_left_distributive_over_add(add, m)
    if w is not None:
        raise AxiomError(f"left distributivity fails at {w}", witness=w)
    w = _check_right_distributive_over_add(add, m)
    if w is not None:
        raise AxiomError(f"right distributivity fails at {w}", witness=w)
    return pretruss(heap_from_group(add), m)


def truss_from_near_ring(add: FiniteGroup, mul) -> FinitePreTruss:
    """T(N) for a near-ring: group addition, associative multiplication and
    the left distributive law n(m + m') = nm + nm'."""
    m = np.asarray(mul, dtype=np.int64)
    count, w = _kernels.mul_assoc(m)
    if count:
        raise AxiomError(f"near-ring multiplication not associative at {w}", witness=w)
    w = _check_left_distributive_over_add(add, m)
    if w is not None:
        raise AxiomError(f"near-ring left distributivity fails at {w}", witness=w)
    return pretruss(heap_from_group(add), m)


def truss_from_brace(add: FiniteGroup, mul: FiniteGroup) -> FinitePreTruss:
    """T(B) for a skew brace: two group structures with
    a(b + c) = ab - a + ac."""
    if add.order != mul.order:
        raise StructureError("brace structures must share one carrier")
    n = add.order
    for a in range(n):
        lhs = mul.op[a, add.op]
        row = mul.op[a]
        rhs = add.op[np.ix_(add.op[row, add.inv[a]], row)]   # (ab - a) + ac
        if not np.array_equal(lhs, rhs):
            bad = np.argwhere(lhs != rhs)[0]
            raise AxiomError(
                f"skew brace law fails at (a,b,c)=({a},{int(bad[0])},{int(bad[1])})",
                witness=(a, int(bad[0]), int(bad[1])),
            )
    return pretruss(heap_from_group(add), mul.op)


def multiplication_group(t: FinitePreTruss) -> FiniteGroup:
    """The multiplicative monoid as a group, or raise if not brace-type."""
    t.require_pretruss()
    t.require_unital()
    try:
        return group_from_table(t.elements, t.mul, name="mul-group")
    except AxiomError as exc:
        raise AxiomError(f"not brace-type: {exc}") from exc


@dataclass(frozen=True, eq=False)
class BraceTables:
    elements: tuple[str, ...]
    add: np.ndarray
    mul: np.ndarray
    unit: int


def retract_brace(t: FinitePreTruss) -> BraceTables:
    """Recover the skew brace of a brace-type near-truss: addition is the
    heap retract at the multiplicative unit; the brace law is re-verified
    exhaustively."""
    t.require_near()
    t.require_unital()
    grp = multiplication_group(t)   # raises "not brace-type" when mul is not a group
    u = t.unit
    add = t.heap.table[:, u, :]
    n = t.size
    for a in range(n):
        lhs = t.mul[a, add]
        rhs = t.heap.table[np.ix_(t.mul[a], [a], t.mul[a])].reshape(n, n)
        if not np.array_equal(lhs, rhs):
            bad = np.argwhere(lhs != rhs)[0]
            raise AxiomError(
                f"brace law fails at (a,b,c)=({a},{int(bad[0])},{int(bad[1])})"
            )
    return BraceTables(t.elements, np.ascontiguousarray(add), t.mul, u)


def skew_ring_unit_correspondence(t: FinitePreTruss) -> tuple[tuple[int, int], ...]:
    """Pairs (left absorber e, unit u = [1,e,1]) of a unital near-truss.

    Units are elements u with a*u = a + u + a in the retract at 1; the
    correspondence is verified in both directions.
    """
    t.require_near()
    t.require_unital()
    one = t.unit
    tt = t.heap.table

    def is_unit(u: int) -> bool:
        return all(
            t.product(a, u) == tt[tt[a, one, u], one, a] for a in range(t.size)
        )

    absorbers = sorted(find_absorbers(t).left_absorbers)
    pairs = []
    for e in absorbers:
        u = int(tt[one, e, one])
        if not is_unit(u):
            raise AxiomError(f"[1,e,1] = {u} is not a unit for left absorber e = {e}")
        if int(tt[one, u, one]) != e:
            raise AxiomError(f"unit-absorber round trip broken at e = {e}")
        pairs.append((e, u))
    units = [u for u in range(t.size) if is_unit(u)]
    if sorted(int(tt[one, u, one]) for u in units) != absorbers:
        raise AxiomError("unit set does not match left-absorber set under [1,-,1]")
    return tuple(pairs)


def induced_product(t: FinitePreTruss, e: int) -> FinitePreTruss:
    """Conjugate the product by the translation through a left absorber e:

        a * b = tau_e^1( tau_1^e(a) . tau_1^e(b) )

    The result is unital with unit [1,e,1], isomorphic to the original via
    tau_1^e, and has 1 as a left absorber.
    """
    t.require_near()
    t.require_unital()
    if e not in find_absorbers(t).left_absorbers:
        raise PreconditionError(f"{e} is not a left absorber")
    one = t.unit
    tt = t.heap.table
    to_e = tt[:, one, e]      # tau_1^e
    back = tt[:, e, one]      # tau_e^1
    new_mul = back[t.mul[np.ix_(to_e, to_e)]]
    result = pretruss(t.heap, new_mul)
    expected_unit = int(tt[one, e, one])
    if result.unit != expected_unit:
        raise AxiomError(
            f"induced product has unit {result.unit}, expected [1,e,1] = {expected_unit}"
        )
    if not np.array_equal(to_e[new_mul], t.mul[np.ix_(to_e, to_e)]):
        raise AxiomError("tau_1^e is not an isomorphism onto the original product")
    if not np.all(new_mul[:, one] == one):
        raise AxiomError("1 is not a left absorber for the induced product")
    return result


def product_pretruss(a: FinitePreTruss, b: FinitePreTruss) -> FinitePreTruss:
    """Componentwise product on the product carrier."""
    a.require_pretruss()
    b.require_pretruss()
    na, nb = a.size, b.size
    labels = [f"({a.elements[i]},{b.elements[j]})" for i in range(na) for j in range(nb)]

    def code(i: int, j: int) -> int:
        return i * nb + j

    n = na * nb
    tern = np.empty((n, n, n), dtype=np.int64)
    mul = np.empty((n, n), dtype=np.int64)
    for i1 in range(na):
        for j1 in range(nb):
            x = code(i1, j1)
            for i2 in range(na):
                for j2 in range(nb):
                    y = code(i2, j2)
                    mul[x, y] = code(a.product(i1, i2), b.product(j1, j2))
                    for i3 in range(na):
                        for j3 in range(nb):
                            tern[x, y, code(i3, j3)] = code(
                                a.ternary(i1, i2, i3), b.ternary(j1, j2, j3)
                            )
    heap = heap_from_table(labels, tern)
    return pretruss(heap, mul)


@dataclass(frozen=True, eq=False)
class PreTrussHom:
    """A map between finite pre-trusses, exhaustively verifiable."""

    source: FinitePreTruss
    target: FinitePreTruss
    mapping: tuple[int, ...]

    def __call__(self, a: int) -> int:
        return self.mapping[a]

    def verify(self) -> None:
        f = np.asarray(self.mapping, dtype=np.int64)
        if len(f) != self.source.size:
            raise StructureError("mapping length does not match the source carrier")
        if f.min() < 0 or f.max() >= self.target.size:
            raise StructureError("mapping hits indices outside the target carrier")
        if not np.array_equal(f[self.source.heap.table],
                              self.target.heap.table[np.ix_(f, f, f)]):
            raise AxiomError("map does not preserve the ternary operation")
        if not np.array_equal(f[self.source.mul], self.target.mul[np.ix_(f, f)]):
            raise AxiomError("map does not preserve multiplication")
        # absorbers must land on absorbers of the image
        img = self.image()
        src_report = find_absorbers(self.source)
        for e in src_report.left_absorbers:
            fe = self.mapping[e]
            if any(self.target.product(x, fe) != fe for x in img):
                raise AxiomError("image of a left absorber is not a left absorber in the image")

    def image(self) -> frozenset[int]:
        return frozenset(self.mapping)


def sub_pretruss(t: FinitePreTruss, subset) -> tuple[FinitePreTruss, dict[int, int]]:
    """Restrict to a subset closed under both operations; returns the
    restriction and the parent-index -> local-index map."""
    members = sorted(frozenset(subset))
    local = {x: i for i, x in enumerate(members)}
    k = len(members)
    tern = np.empty((k, k, k), dtype=np.int64)
    mul = np.empty((k, k), dtype=np.int64)
    for i, x in enumerate(members):
        for j, y in enumerate(members):
            p = t.product(x, y)
            if p not in local:
                raise PreconditionError("subset is not closed under multiplication")
            mul[i, j] = local[p]
            for l, z in enumerate(members):
                w = t.ternary(x, y, z)
                if w not in local:
                    raise PreconditionError("subset is not closed under the ternary operation")
                tern[i, j, l] = local[w]
    heap = heap_from_table([t.elements[x] for x in members], tern)
    return pretruss(heap, mul), local


class EffectiveTruss(ABC):
    """Capability bundle describing a (possibly infinite) truss.

    Implementations provide exact equality, the heap and product operations,
    an absorber predicate and a deterministic seeded sampler; optionally a
    closed-form Ore witness, a fraction normal form, and proof hooks that
    justify positive regularity/domain verdicts (sampling alone never does).
    """

    name: str = "effective-truss"
    commutative: bool = False
    is_abelian_heap: bool = True
    is_near: bool = True
    is_skew: bool = True

    @abstractmethod
    def eq(self, x, y) -> bool: ...

    @abstractmethod
    def ternary(self, x, y, z): ...

    @abstractmethod
    def mul(self, x, y): ...

    @abstractmethod
    def is_absorber(self, x) -> bool: ...

    @abstractmethod
    def sample(self, rng): ...

    @property
    def unit(self):
        return None

    def sample_nonabsorber(self, rng):
        for _ in range(64):
            x = self.sample(rng)
            if not self.is_absorber(x):
                return x
        raise PreconditionError(f"{self.name}: could not sample a non-absorber")

    def ore_witness(self, x, y) -> Optional[tuple[Any, Any]]:
        """(r, s) with r*x = s*y, or None when no closed form is available."""
        if self.commutative:
            return (y, x)
        return None

    def normal_form(self, den, num):
        return None

    def proves_domain(self) -> bool:
        return False

    def proves_regular(self, x) -> bool:
        return self.proves_domain() and not self.is_absorber(x)

    def describe(self, x) -> str:
        return str(x)

    def self_check(self, rng, rounds: int = 50) -> None:
        """Spot-check the declared laws on sampled tuples, exactly."""
        for _ in range(rounds):
            a, b, c, d, e = (self.sample(rng) for _ in range(5))
            if not self.eq(self.ternary(a, a, b), b) or not self.eq(self.ternary(b, a, a), b):
                raise AxiomError(f"{self.name}: Mal'cev identity fails")
            lhs = self.ternary(self.ternary(a, b, c), d, e)
            if not self.eq(lhs, self.ternary(a, b, self.ternary(c, d, e))):
                raise AxiomError(f"{self.name}: ternary associativity fails")
            if not self.eq(lhs, self.ternary(a, self.ternary(d, c, b), e)):
                raise AxiomError(f"{self.name}: para-associativity fails")
            if not self.eq(self.mul(self.mul(a, b), c), self.mul(a, self.mul(b, c))):
                raise AxiomError(f"{self.name}: multiplication not associative")
            if self.is_near:
                if not self.eq(
                    self.mul(a, self.ternary(b, c, d)),
                    self.ternary(self.mul(a, b), self.mul(a, c), self.mul(a, d)),
                ):
                    raise AxiomError(f"{self.name}: left distributivity fails")
            if self.is_skew:
                if not self.eq(
                    self.mul(self.ternary(b, c, d), a),
                    self.ternary(self.mul(b, a), self.mul(c, a), self.mul(d, a)),
                ):
                    raise AxiomError(f"{self.name}: right distributivity fails")
            if self.is_abelian_heap and not self.eq(self.ternary(a, b, c), self.ternary(c, b, a)):
                raise AxiomError(f"{self.name}: heap is not Abelian")
