"""Paragons, ideals, quotients and the brace-type quotient criterion.

A paragon is a normal sub-heap whose every equivalence class is a closed
sub-heap; paragons are exactly the congruence classes of pre-truss
congruences, which is what the brute-force congruence enumeration here
cross-validates.  Quotients are constructed with a full representative-
independence scan, so a successfully built quotient is a verified
homomorphic image.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Literal, Optional

import numpy as np

from .errors import AxiomError, PreconditionError, SizeGuardError
from .heaps import (
    Partition,
    enumerate_all_subheaps,
    heap_from_table,
    is_normal_subheap,
    is_subheap,
    subheap_classes,
)
from .trusses import (
    FinitePreTruss,
    find_absorbers,
    multiplication_group,
    pretruss,
)


@dataclass(frozen=True, eq=False)
class ParagonMarker:
    parent: FinitePreTruss
    members: frozenset[int]
    left_closed: bool
    right_closed: bool
    normal: bool
    paragon: bool


@dataclass(frozen=True, eq=False)
class IdealMarker:
    parent: FinitePreTruss
    members: frozenset[int]
    left_ideal: bool
    right_ideal: bool


@dataclass(frozen=True, eq=False)
class PropertyResult:
    holds: bool
    witnesses: tuple
    checked: int


def _require_subheap(t: FinitePreTruss, subset: Iterable[int]) -> frozenset[int]:
    members = frozenset(subset)
    if not members:
        raise PreconditionError("closure properties require a nonempty sub-heap")
    if not is_subheap(t.heap, members):
        raise PreconditionError(f"{sorted(members)} is not a sub-heap")
    return members


def _left_closed_universal(t: FinitePreTruss, members: frozenset[int]) -> bool:
    tt, m = t.heap.table, t.mul
    idx = sorted(members)
    for s in idx:
        for sp in idx:
            if not members.issuperset(tt[m[:, sp], m[:, s], s].tolist()):
                return False
    return True


def _left_closed_existential(t: FinitePreTruss, members: frozenset[int]) -> bool:
    tt, m = t.heap.table, t.mul
    idx = sorted(members)
    for q in idx:
        if all(
            members.issuperset(tt[m[:, sp], m[:, q], q].tolist()) for sp in idx
        ):
            return True
    return False


def is_left_closed(t: FinitePreTruss, subset: Iterable[int]) -> bool:
    """[t s', t s, s] stays in S for all s, s' in S and t in the carrier.

    The equivalent existential form (one witness s works for all) is
    evaluated alongside and must agree.
    """
    t.require_pretruss()
    members = _require_subheap(t, subset)
    universal = _left_closed_universal(t, members)
    existential = _left_closed_existential(t, members)
    if universal != existential:
        raise AxiomError(
            f"left-closure quantifier forms disagree on {sorted(members)}"
        )
    return universal


def _right_closed_universal(t: FinitePreTruss, members: frozenset[int]) -> bool:
    tt, m = t.heap.table, t.mul
    idx = sorted(members)
    for s in idx:
        for sp in idx:
            if not members.issuperset(tt[m[sp, :], m[s, :], s].tolist()):
                return False
    return True


def _right_closed_existential(t: FinitePreTruss, members: frozenset[int]) -> bool:
    tt, m = t.heap.table, t.mul
    idx = sorted(members)
    for q in idx:
        if all(
            members.issuperset(tt[m[sp, :], m[q, :], q].tolist()) for sp in idx
        ):
            return True
    return False


def is_right_closed(t: FinitePreTruss, subset: Iterable[int]) -> bool:
    """[s' t, s t, s] stays in S; same dual-quantifier check as the left side."""
    t.require_pretruss()
    members = _require_subheap(t, subset)
    universal = _right_closed_universal(t, members)
    existential = _right_closed_existential(t, members)
    if universal != existential:
        raise AxiomError(
            f"right-closure quantifier forms disagree on {sorted(members)}"
        )
    return universal


def _paragon_general(t: FinitePreTruss, members: frozenset[int]) -> bool:
    # for all a,b in T and p,e in P: [a[p,e,b], ab, e] in P and [[p,e,b]a, ba, e] in P
    tt, m = t.heap.table, t.mul
    idx = sorted(members)
    n = t.size
    for p in idx:
        for e in idx:
            peb = tt[p, e, :]                       # vector over b
            for a in range(n):
                left = tt[m[a, peb], m[a, :], e]
                if not members.issuperset(left.tolist()):
                    return False
                right = tt[m[peb, a], m[:, a], e]
                if not members.issuperset(right.tolist()):
                    return False
    return True


def is_paragon(t: FinitePreTruss, subset: Iterable[int]) -> bool:
    """Paragon test via the quantified closure criterion.

    Near-trusses additionally run the shortcut (P left-closed and every
    class right-closed) and skew trusses the closed-normal-sub-heap
    reduction; all applicable routes must agree.
    """
    t.require_pretruss()
    members = _require_subheap(t, subset)
    if not is_normal_subheap(t.heap, members):
        raise PreconditionError(f"{sorted(members)} is not a normal sub-heap")
    verdict = _paragon_general(t, members)
    if t.flags.is_near:
        classes = subheap_classes(t.heap, members).classes
        near = is_left_closed(t, members) and all(
            _right_closed_universal(t, cls) for cls in classes
        )
        if near != verdict:
            raise AxiomError(
                f"near-truss paragon shortcut disagrees with the general criterion "
                f"on {sorted(members)}"
            )
    if t.flags.is_skew:
        skew = _left_closed_universal(t, members) and _right_closed_universal(t, members)
        if skew != verdict:
            raise AxiomError(
                f"skew-truss paragon shortcut disagrees with the general criterion "
                f"on {sorted(members)}"
            )
    return verdict


def mark_paragon(t: FinitePreTruss, subset: Iterable[int]) -> ParagonMarker:
    members = _require_subheap(t, subset)
    normal = is_normal_subheap(t.heap, members)
    return ParagonMarker(
        t,
        members,
        left_closed=is_left_closed(t, members),
        right_closed=is_right_closed(t, members),
        normal=normal,
        paragon=normal and is_paragon(t, members),
    )


def enumerate_paragons(t: FinitePreTruss) -> list[ParagonMarker]:
    """All paragons, searched through the subgroup lattices of every retract."""
    t.require_pretruss()
    markers = []
    for members in enumerate_all_subheaps(t.heap):
        if not is_normal_subheap(t.heap, members):
            continue
        if is_paragon(t, members):
            markers.append(mark_paragon(t, members))
    return markers


@dataclass(frozen=True, eq=False)
class QuotientStructure:
    classes: Partition
    structure: FinitePreTruss
    projection: tuple[int, ...]

    @property
    def size(self) -> int:
        return self.structure.size


def _class_label(t: FinitePreTruss, members: frozenset[int]) -> str:
    return "{" + ",".join(t.elements[i] for i in sorted(members)) + "}"


def quotient(t: FinitePreTruss, subset: Iterable[int]) -> QuotientStructure:
    """Quotient by a paragon; induced tables are scanned for representative
    independence, making the projection a verified homomorphism."""
    t.require_pretruss()
    members = frozenset(subset)
    if not is_subheap(t.heap, members) or not members:
        raise PreconditionError(f"{sorted(members)} is not a nonempty sub-heap")
    if not is_normal_subheap(t.heap, members):
        raise PreconditionError(f"{sorted(members)} is not a normal sub-heap")
    if not is_paragon(t, members):
        raise PreconditionError(f"{sorted(members)} is not a paragon")
    part = subheap_classes(t.heap, members)
    cid = np.asarray(part.class_of, dtype=np.int64)
    reps = np.asarray([min(c) for c in part.classes], dtype=np.int64)
    k = len(part.classes)

    q_tern = cid[t.heap.table[np.ix_(reps, reps, reps)]]
    q_mul = cid[t.mul[np.ix_(reps, reps)]]
    if not np.array_equal(
        cid[t.heap.table],
        q_tern[cid[:, None, None], cid[None, :, None], cid[None, None, :]],
    ):
        raise AxiomError("induced ternary operation is not representative independent")
    if not np.array_equal(cid[t.mul], q_mul[cid[:, None], cid[None, :]]):
        raise AxiomError("induced multiplication is not representative independent")

    labels = [_class_label(t, part.classes[i]) for i in range(k)]
    q = pretruss(heap_from_table(labels, q_tern), q_mul)
    for e in find_absorbers(t).left_absorbers:
        if not np.all(q.mul[:, cid[e]] == cid[e]):
            raise AxiomError("projection did not send a left absorber to a left absorber")
    return QuotientStructure(part, q, tuple(int(x) for x in cid))


def _set_partitions(n: int):
    """All partitions of 0..n-1 as restricted-growth strings, lexicographically."""

    def rec(i: int, rgs: list[int], blocks: int):
        if i == n:
            yield tuple(rgs)
            return
        for b in range(blocks + 1):
            rgs.append(b)
            yield from rec(i + 1, rgs, blocks + (1 if b == blocks else 0))
            rgs.pop()

    yield from rec(0, [], 0)


def enumerate_congruences_bruteforce(t: FinitePreTruss) -> list[Partition]:
    """Oracle: every equivalence relation compatible with both operations.

    Exists to validate paragon enumeration; guarded to order <= 8.
    """
    t.require_pretruss()
    n = t.size
    if n > 8:
        raise SizeGuardError(f"congruence enumeration is guarded to order 8, got {n}")
    tt, m = t.heap.table, t.mul
    found = []
    for rgs in _set_partitions(n):
        cid = np.asarray(rgs, dtype=np.int64)
        ok = True
        for a in range(1, n):
            # compare against the smallest earlier member of the same block
            prev = next((b for b in range(a) if rgs[b] == rgs[a]), None)
            if prev is None:
                continue
            if not (
                np.array_equal(cid[tt[a]], cid[tt[prev]])
                and np.array_equal(cid[tt[:, a, :]], cid[tt[:, prev, :]])
                and np.array_equal(cid[tt[:, :, a]], cid[tt[:, :, prev]])
                and np.array_equal(cid[m[a]], cid[m[prev]])
                and np.array_equal(cid[m[:, a]], cid[m[:, prev]])
            ):
                ok = False
                break
        if ok:
            classes: dict[int, set[int]] = {}
            for x, b in enumerate(rgs):
                classes.setdefault(b, set()).add(x)
            found.append(
                Partition(
                    tuple(sorted((frozenset(c) for c in classes.values()), key=min)),
                    tuple(int(x) for x in cid),
                )
            )
    return found


def _require_normal(t: FinitePreTruss, subset: Iterable[int]) -> frozenset[int]:
    members = _require_subheap(t, subset)
    if not is_normal_subheap(t.heap, members):
        raise PreconditionError(f"{sorted(members)} is not a normal sub-heap")
    return members


def is_left_ideal(t: FinitePreTruss, subset: Iterable[int]) -> bool:
    t.require_pretruss()
    members = _require_normal(t, subset)
    idx = sorted(members)
    return members.issuperset(np.unique(t.mul[:, idx]).tolist())


def is_right_ideal(t: FinitePreTruss, subset: Iterable[int]) -> bool:
    t.require_pretruss()
    members = _require_normal(t, subset)
    idx = sorted(members)
    return members.issuperset(np.unique(t.mul[idx, :]).tolist())


def is_ideal(t: FinitePreTruss, subset: Iterable[int]) -> bool:
    return is_left_ideal(t, subset) and is_right_ideal(t, subset)


def mark_ideal(t: FinitePreTruss, subset: Iterable[int]) -> IdealMarker:
    members = _require_normal(t, subset)
    return IdealMarker(t, members, is_left_ideal(t, members), is_right_ideal(t, members))


def _normal_subheaps(t: FinitePreTruss) -> list[frozenset[int]]:
    return [
        s for s in enumerate_all_subheaps(t.heap) if is_normal_subheap(t.heap, s)
    ]


def enumerate_left_ideals(t: FinitePreTruss) -> list[frozenset[int]]:
    return [s for s in _normal_subheaps(t) if is_left_ideal(t, s)]


def enumerate_ideals(t: FinitePreTruss) -> list[frozenset[int]]:
    return [s for s in _normal_subheaps(t) if is_ideal(t, s)]


def leftclosed_contains_ideal_implies_ideal_check(t: FinitePreTruss) -> PropertyResult:
    """Scan every (left-closed normal sub-heap, contained left ideal) pair and
    confirm the containing sub-heap is itself a left ideal."""
    t.require_pretruss()
    closed = [s for s in _normal_subheaps(t) if is_left_closed(t, s)]
    ideals = enumerate_left_ideals(t)
    witnesses = []
    checked = 0
    for p in closed:
        for i in ideals:
            if i <= p:
                checked += 1
                if not is_left_ideal(t, p):
                    witnesses.append((sorted(p), sorted(i)))
    return PropertyResult(not witnesses, tuple(witnesses), checked)


@dataclass(frozen=True, eq=False)
class AbsorberCriterion:
    has_left_absorber: bool
    absorber_class: Optional[frozenset[int]]


def quotient_absorber_criterion(t: FinitePreTruss, subset: Iterable[int]) -> AbsorberCriterion:
    """T/P has a left absorber iff some translate P_a^t is a left ideal.

    Both sides are computed independently (quotient scan versus translate
    scan) and must agree.
    """
    members = frozenset(subset)
    q = quotient(t, members)
    k = q.size
    absorber_cls = None
    for c in range(k):
        if np.all(q.structure.mul[:, c] == c):
            absorber_cls = c
            break
    ideal_cls = None
    for cls in q.classes.classes:
        if is_left_ideal(t, cls):
            ideal_cls = cls
            break
    if (absorber_cls is None) != (ideal_cls is None):
        raise AxiomError(
            "quotient absorber scan and translate ideal scan disagree "
            f"for P = {sorted(members)}"
        )
    if absorber_cls is not None and ideal_cls is not None:
        if q.classes.classes[absorber_cls] != ideal_cls:
            raise AxiomError("absorber class and ideal translate differ")
    return AbsorberCriterion(absorber_cls is not None, ideal_cls)


@dataclass(frozen=True, eq=False)
class LeftIdealCensus:
    ideals: tuple[frozenset[int], ...]
    classification: str          # "brace-type" | "near-field" | "neither"
    cross_check: str


def count_left_ideals(t: FinitePreTruss) -> LeftIdealCensus:
    """Census of left ideals with the brace / near-field classification.

    A unital near-truss is brace-type iff it has exactly one left ideal, and
    near-field type iff it has a left absorber and exactly two; both verdicts
    are cross-checked against direct group tests.
    """
    t.require_near()
    t.require_unital()
    ideals = tuple(enumerate_left_ideals(t))
    absorbers = find_absorbers(t).left_absorbers
    if len(ideals) == 1:
        classification = "brace-type"
        multiplication_group(t)   # raises if the direct test disagrees
        cross = "multiplication is a group"
    elif absorbers and len(ideals) == 2:
        classification = "near-field"
        e = min(absorbers)
        others = [x for x in range(t.size) if x != e]
        unit = t.unit
        ok = unit in others and all(
            t.product(a, b) != e for a in others for b in others
        ) and all(
            any(t.product(a, b) == unit and t.product(b, a) == unit for b in others)
            for a in others
        )
        if not ok:
            raise AxiomError("near-field classification fails the direct unit-group test")
        cross = "nonzero elements form a multiplicative group"
    else:
        classification = "neither"
        cross = f"{len(ideals)} left ideals, absorbers {sorted(absorbers)}"
    return LeftIdealCensus(ideals, classification, cross)


Side = Literal["left", "right", "both"]


def _side_closed(t: FinitePreTruss, members: frozenset[int], side: Side) -> bool:
    if side == "left":
        return _left_closed_universal(t, members)
    if side == "right":
        return _right_closed_universal(t, members)
    return _left_closed_universal(t, members) and _right_closed_universal(t, members)


def is_maximal_paragon(t: FinitePreTruss, subset: Iterable[int], side: Side = "left") -> bool:
    """No strictly larger proper side-closed normal sub-heap exists.

    For near- and skew trusses the translate invariance of maximality is
    asserted along the way.
    """
    t.require_pretruss()
    members = _require_normal(t, subset)
    if not _side_closed(t, members, side):
        raise PreconditionError(f"{sorted(members)} is not {side}-closed")
    candidates = [
        s for s in _normal_subheaps(t)
        if len(s) < t.size and _side_closed(t, s, side)
    ]

    def maximal(p: frozenset[int]) -> bool:
        if len(p) == t.size:
            return False
        return not any(p < q for q in candidates)

    verdict = maximal(members)
    if t.flags.is_near:
        for cls in subheap_classes(t.heap, members).classes:
            if _side_closed(t, cls, side) and maximal(cls) != verdict:
                raise AxiomError(
                    "maximality is not translation invariant, contradicting the "
                    "translate lemma"
                )
    return verdict


@dataclass(frozen=True, eq=False)
class BraceTypeVerdict:
    is_brace_type: bool
    certificate: object


def brace_type_quotient_criterion(t: FinitePreTruss, subset: Iterable[int]) -> BraceTypeVerdict:
    """T/P is brace-type iff no class preimage sits inside a proper left ideal.

    The scan result must agree with the direct test 'quotient multiplication
    is a group'; the certificate is either the offending (ideal, class) pair
    or the quotient's multiplicative unit.
    """
    t.require_near()
    t.require_unital()
    members = frozenset(subset)
    q = quotient(t, members)
    offending = None
    for ideal in enumerate_left_ideals(t):
        if len(ideal) == t.size:
            continue
        for cls in q.classes.classes:
            if cls <= ideal:
                offending = (ideal, cls)
                break
        if offending:
            break
    criterion = offending is None
    try:
        grp = multiplication_group(q.structure)
        direct = True
        certificate: object = ("unit", grp.unit)
    except AxiomError as exc:
        direct = False
        certificate = ("not-a-group", str(exc))
    if criterion != direct:
        raise AxiomError(
            "ideal-scan criterion and direct group test disagree for "
            f"P = {sorted(members)}"
        )
    if offending is not None:
        certificate = ("class-inside-ideal", sorted(offending[0]), sorted(offending[1]))
    return BraceTypeVerdict(criterion, certificate)


def maximal_ideal_quotient_check(t: FinitePreTruss, subset: Iterable[int]) -> PropertyResult:
    """Quotient by a paragon that is a maximal left ideal has no ideals other
    than singletons and the whole carrier."""
    t.require_pretruss()
    members = _require_normal(t, subset)
    if not is_paragon(t, members):
        raise PreconditionError("subset must be a paragon")
    if not is_left_ideal(t, members):
        raise PreconditionError("subset must be a left ideal")
    proper = [
        s for s in enumerate_left_ideals(t) if members < s and len(s) < t.size
    ]
    if proper:
        raise PreconditionError("subset is not a maximal left ideal")
    q = quotient(t, members)
    witnesses = []
    checked = 0
    for ideal in enumerate_ideals(q.structure):
        checked += 1
        if len(ideal) not in (1, q.size):
            witnesses.append(sorted(ideal))
    return PropertyResult(not witnesses, tuple(witnesses), checked)
