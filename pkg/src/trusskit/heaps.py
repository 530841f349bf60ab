"""Finite heaps as dense ternary tables.

A heap is a set with a ternary operation [-,-,-] that is associative,

    [[a,b,c],d,e] = [a,b,[c,d,e]],

and satisfies the Mal'cev identities [a,a,b] = b = [b,a,a].  Axiom checking
is an exhaustive O(n^5) scan (with an O(n^2) Mal'cev fast path), which is the
intended tier for n <= 16.  Element labels are opaque strings; all machinery
works on indices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from . import _kernels
from .errors import AxiomError, PreconditionError, StructureError
from .groups import FiniteGroup, group_from_table, subgroups


@dataclass(frozen=True)
class AxiomViolation:
    """One violated identity with its first witness and the cells it read."""

    identity: str                       # "malcev-left" | "malcev-right" | "associativity"
    witness: tuple[int, ...]
    cells: tuple[tuple[int, int, int], ...]


@dataclass(frozen=True, eq=False)
class AxiomReport:
    size: int
    violations: tuple[AxiomViolation, ...]
    counts: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def describe(self) -> str:
        if self.ok:
            return "all heap axioms hold"
        parts = [
            f"{v.identity} fails at {v.witness} ({self.counts[v.identity]} violations)"
            for v in self.violations
        ]
        return "; ".join(parts)


def _normalize_ternary(table, n: int) -> np.ndarray:
    arr = np.array(table, dtype=np.int64)      # own copy: callers keep their arrays
    if arr.ndim == 2:
        # row-per-(i,j) layout, as used by structure files
        if arr.shape != (n * n, n):
            raise StructureError(
                f"ternary table must have shape ({n},{n},{n}) or ({n * n},{n}), got {arr.shape}"
            )
        arr = arr.reshape(n, n, n)
    if arr.shape != (n, n, n):
        raise StructureError(f"ternary table must be total over elements^3, got shape {arr.shape}")
    if n and (arr.min() < 0 or arr.max() >= n):
        raise StructureError(f"ternary table contains indices outside 0..{n - 1}")
    arr = np.ascontiguousarray(arr)
    arr.flags.writeable = False
    return arr


def check_heap_axioms(table, n: Optional[int] = None) -> AxiomReport:
    """Exhaustively verify the heap axioms of a ternary table.

    Malformed tables raise :class:`StructureError`; axiom failures are
    reported, one entry per violated identity, each with the lexicographically
    first witness and total count.  An empty report means the table is a heap.
    """
    probe = np.asarray(table)
    if n is None:
        if probe.ndim != 3:
            raise StructureError("pass n explicitly for flattened tables")
        n = probe.shape[0]
    t = _normalize_ternary(table, n)
    violations: list[AxiomViolation] = []
    counts: dict[str, int] = {}

    count, w = _kernels.malcev_left(t)
    if count:
        a, b = w
        violations.append(AxiomViolation("malcev-left", w, ((a, a, b),)))
        counts["malcev-left"] = count
    count, w = _kernels.malcev_right(t)
    if count:
        a, b = w
        violations.append(AxiomViolation("malcev-right", w, ((b, a, a),)))
        counts["malcev-right"] = count
    count, w = _kernels.assoc(t)
    if count:
        a, b, c, d, e = w
        cells = (
            (a, b, c),
            (int(t[a, b, c]), d, e),
            (c, d, e),
            (a, b, int(t[c, d, e])),
        )
        violations.append(AxiomViolation("associativity", w, cells))
        counts["associativity"] = count
    return AxiomReport(size=n, violations=tuple(violations), counts=counts)


@dataclass(frozen=True, eq=False)
class FiniteHeap:
    """Verified finite heap: labels plus a dense (n,n,n) index table."""

    elements: tuple[str, ...]
    table: np.ndarray
    verified: bool = True

    @property
    def size(self) -> int:
        return len(self.elements)

    def ternary(self, a: int, b: int, c: int) -> int:
        return int(self.table[a, b, c])

    def index(self, label: str) -> int:
        try:
            return self.elements.index(label)
        except ValueError:
            raise KeyError(f"unknown element label {label!r}") from None

    @property
    def is_abelian(self) -> bool:
        count, _ = _kernels.abelian(self.table)
        return count == 0

    def __repr__(self) -> str:
        return f"FiniteHeap(order={self.size})"


def heap_from_table(elements: Sequence[str], table, verify: bool = True) -> FiniteHeap:
    elements = tuple(str(e) for e in elements)
    if len(set(elements)) != len(elements):
        raise StructureError("duplicate element labels")
    if not elements:
        raise StructureError("a heap needs at least one element")
    t = _normalize_ternary(table, len(elements))
    if verify:
        report = check_heap_axioms(t, len(elements))
        if not report.ok:
            raise AxiomError("not a heap: " + report.describe(), report=report)
    return FiniteHeap(elements, t, verified=verify)


def heap_from_group(g: FiniteGroup) -> FiniteHeap:
    """Heap associated to a group: [a,b,c] = a b^{-1} c."""
    t = g.op[g.op[:, g.inv], :]
    return heap_from_table(g.elements, t)


def retract(h: FiniteHeap, e: int) -> FiniteGroup:
    """Group on the heap's carrier with x*y = [x,e,y] and unit e."""
    if not (0 <= e < h.size):
        raise PreconditionError(f"base point {e} out of range")
    op = h.table[:, e, :]
    return group_from_table(h.elements, op, name=f"G(H;{h.elements[e]})")


def translation(h: FiniteHeap, a: int, b: int) -> np.ndarray:
    """The translation map z -> [z,a,b]; a heap isomorphism with inverse (b,a)."""
    perm = h.table[:, a, b].copy()
    perm.flags.writeable = False
    return perm


def para_associativity_check(h: FiniteHeap) -> tuple[int, Optional[tuple[int, ...]]]:
    """Count violations of [[a1,a2,a3],a4,a5] = [a1,[a4,a3,a2],a5]."""
    return _kernels.para_assoc(h.table)


def is_subheap(h: FiniteHeap, subset: Iterable[int]) -> bool:
    """Closure of a subset under the ternary operation (empty set passes)."""
    members = frozenset(subset)
    if not members:
        return True
    idx = np.fromiter(sorted(members), dtype=np.int64)
    sub = h.table[np.ix_(idx, idx, idx)]
    return members.issuperset(np.unique(sub).tolist())


def _is_normal_universal(h: FiniteHeap, members: frozenset[int]) -> bool:
    idx = sorted(members)
    t = h.table
    for a in range(h.size):
        for e in idx:
            row = t[t[a, e, idx], a, e]
            if not members.issuperset(row.tolist()):
                return False
    return True


def _is_normal_existential(h: FiniteHeap, members: frozenset[int]) -> bool:
    # there is e in S with: for all a in H, s in S, some u in S has [a,e,s] = [u,e,a]
    idx = sorted(members)
    t = h.table
    for e in idx:
        ok = True
        for a in range(h.size):
            reachable = {int(t[u, e, a]) for u in idx}
            if any(int(t[a, e, s]) not in reachable for s in idx):
                ok = False
                break
        if ok:
            return True
    return False


def is_normal_subheap(h: FiniteHeap, subset: Iterable[int]) -> bool:
    """Normality of a nonempty sub-heap: [[a,e,s],a,e] stays inside for all a.

    The universally quantified form is the definition of record; the
    existential form is evaluated as well and any disagreement is an internal
    error (it would falsify the equivalence the two forms are stated to have).
    """
    members = frozenset(subset)
    if not members:
        raise PreconditionError("normality requires a nonempty sub-heap")
    if not is_subheap(h, members):
        raise PreconditionError("normality is only defined for sub-heaps")
    universal = _is_normal_universal(h, members)
    existential = _is_normal_existential(h, members)
    if universal != existential:
        raise AxiomError(
            f"normality forms disagree on {sorted(members)}: "
            f"universal={universal} existential={existential}"
        )
    return universal


@dataclass(frozen=True, eq=False)
class SubHeapMarker:
    parent: FiniteHeap
    members: frozenset[int]
    is_subheap: bool
    is_normal: bool


def mark_subheap(h: FiniteHeap, subset: Iterable[int]) -> SubHeapMarker:
    members = frozenset(subset)
    sub = is_subheap(h, members)
    normal = bool(members) and sub and is_normal_subheap(h, members)
    return SubHeapMarker(h, members, sub, normal)


@dataclass(frozen=True, eq=False)
class Partition:
    """Partition of 0..n-1 into classes, ordered by smallest member."""

    classes: tuple[frozenset[int], ...]
    class_of: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.class_of)

    def class_index(self, a: int) -> int:
        return self.class_of[a]

    def members(self, i: int) -> frozenset[int]:
        return self.classes[i]

    def as_sets(self) -> frozenset[frozenset[int]]:
        return frozenset(self.classes)


def partition_from_classes(classes: Iterable[Iterable[int]], n: int) -> Partition:
    ordered = sorted((frozenset(c) for c in classes), key=min)
    class_of = [-1] * n
    for i, cls in enumerate(ordered):
        for a in cls:
            if class_of[a] != -1:
                raise StructureError("classes overlap")
            class_of[a] = i
    if any(c == -1 for c in class_of):
        raise StructureError("classes do not cover the carrier")
    return Partition(tuple(ordered), tuple(class_of))


def subheap_classes(h: FiniteHeap, subset: Iterable[int]) -> Partition:
    """Classes of the sub-heap relation ~_S, via the translate formula S_e^a.

    The class of a is {[s,e,a] : s in S} for any fixed e in S; the class of
    every member of S is S itself.
    """
    members = frozenset(subset)
    if not members:
        raise PreconditionError("class decomposition requires a nonempty sub-heap")
    if not is_subheap(h, members):
        raise PreconditionError(f"{sorted(members)} is not a sub-heap")
    e = min(members)
    idx = np.fromiter(sorted(members), dtype=np.int64)
    seen: dict[frozenset[int], None] = {}
    assigned = [False] * h.size
    for a in range(h.size):
        if assigned[a]:
            continue
        cls = frozenset(int(x) for x in h.table[idx, e, a])
        for x in cls:
            assigned[x] = True
        seen[cls] = None
    return partition_from_classes(seen.keys(), h.size)


def subheap_relation_classes(h: FiniteHeap, subset: Iterable[int]) -> Partition:
    """Classes computed straight from the relation a ~_S b iff [a,b,s] in S.

    Companion to :func:`subheap_classes` for dual-method comparisons.
    """
    members = frozenset(subset)
    if not members:
        raise PreconditionError("class decomposition requires a nonempty sub-heap")
    if not is_subheap(h, members):
        raise PreconditionError(f"{sorted(members)} is not a sub-heap")
    s0 = min(members)
    related = [
        [int(h.table[a, b, s0]) in members for b in range(h.size)] for a in range(h.size)
    ]
    classes = []
    done = [False] * h.size
    for a in range(h.size):
        if done[a]:
            continue
        cls = frozenset(b for b in range(h.size) if related[a][b])
        for b in cls:
            done[b] = True
        classes.append(cls)
    return partition_from_classes(classes, h.size)


def enumerate_subheaps(h: FiniteHeap, through: int) -> list[SubHeapMarker]:
    """All sub-heaps containing ``through``: subgroups of the retract there."""
    if not h.verified:
        raise PreconditionError("enumeration requires a verified heap")
    g = retract(h, through)
    markers = []
    for sub in subgroups(g):
        markers.append(mark_subheap(h, sub))
    return markers


def enumerate_all_subheaps(h: FiniteHeap) -> list[frozenset[int]]:
    """Every nonempty sub-heap, via subgroup lattices of all retracts."""
    found: set[frozenset[int]] = set()
    for e in range(h.size):
        for marker in enumerate_subheaps(h, e):
            found.add(marker.members)
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def is_heap_homomorphism(src: FiniteHeap, dst: FiniteHeap, mapping: Sequence[int]) -> bool:
    f = np.asarray(mapping, dtype=np.int64)
    return bool(np.array_equal(f[src.table], dst.table[np.ix_(f, f, f)]))


def find_heap_isomorphism(h1: FiniteHeap, h2: FiniteHeap) -> Optional[tuple[int, ...]]:
    """Exhaustive isomorphism search over bijections; intended for order <= 8."""
    from itertools import permutations

    if h1.size != h2.size:
        return None
    if h1.size > 8:
        raise PreconditionError("exhaustive heap isomorphism search is capped at order 8")
    for perm in permutations(range(h2.size)):
        if is_heap_homomorphism(h1, h2, perm):
            return perm
    return None
