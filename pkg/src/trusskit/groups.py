"""Finite groups as dense 0-based tables, plus a small-order catalogue.

Groups feed the heap layer: every group yields a heap via ``[a,b,c] = ab^{-1}c``
and every heap retract is a group.  The catalogue covers all isomorphism
classes up to order 8, which is the exhaustively tested tier.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence

import numpy as np

from . import _kernels
from .errors import AxiomError, StructureError


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """Finite group on elements 0..n-1 with a verified operation table."""

    name: str
    elements: tuple[str, ...]
    op: np.ndarray          # (n, n) int64
    unit: int
    inv: np.ndarray         # (n,) int64

    @property
    def order(self) -> int:
        return len(self.elements)

    def mul(self, a: int, b: int) -> int:
        return int(self.op[a, b])

    def inverse(self, a: int) -> int:
        return int(self.inv[a])

    @property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.op, self.op.T))

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name!r}, order={self.order})"


def _normalize_square(table, n: int, what: str) -> np.ndarray:
    arr = np.array(table, dtype=np.int64)      # own copy: callers keep their arrays
    if arr.shape != (n, n):
        raise StructureError(f"{what} must be {n}x{n}, got shape {arr.shape}")
    if arr.min(initial=0) < 0 or arr.max(initial=0) >= n:
        raise StructureError(f"{what} contains indices outside 0..{n - 1}")
    arr.flags.writeable = False
    return arr


def group_from_table(elements: Sequence[str], table, name: str = "group") -> FiniteGroup:
    """Build and exhaustively verify a group from its operation table."""
    elements = tuple(str(e) for e in elements)
    if len(set(elements)) != len(elements):
        raise StructureError("duplicate element labels")
    n = len(elements)
    if n == 0:
        raise StructureError("a group needs at least one element")
    op = _normalize_square(table, n, "group table")

    count, witness = _kernels.mul_assoc(op)
    if count:
        raise AxiomError(f"operation not associative at {witness}", witness=witness)
    unit = None
    for e in range(n):
        if np.array_equal(op[e], np.arange(n)) and np.array_equal(op[:, e], np.arange(n)):
            unit = e
            break
    if unit is None:
        raise AxiomError("no two-sided identity element")
    inv = np.full(n, -1, dtype=np.int64)
    for a in range(n):
        hits = np.flatnonzero(op[a] == unit)
        if len(hits) == 0 or op[int(hits[0]), a] != unit:
            raise AxiomError(f"element {a} has no two-sided inverse", witness=(a,))
        inv[a] = hits[0]
    inv.flags.writeable = False
    return FiniteGroup(name, elements, op, unit, inv)


def cyclic(n: int) -> FiniteGroup:
    if n <= 0:
        raise StructureError(f"cyclic group order must be positive, got {n}")
    idx = np.arange(n)
    op = (idx[:, None] + idx[None, :]) % n
    return group_from_table([str(i) for i in range(n)], op, name=f"Z{n}")


def direct_product(g1: FiniteGroup, g2: FiniteGroup, name: Optional[str] = None) -> FiniteGroup:
    n1, n2 = g1.order, g2.order
    labels = [f"({g1.elements[a]},{g2.elements[b]})" for a in range(n1) for b in range(n2)]
    op = np.empty((n1 * n2, n1 * n2), dtype=np.int64)
    for a1 in range(n1):
        for b1 in range(n2):
            for a2 in range(n1):
                for b2 in range(n2):
                    op[a1 * n2 + b1, a2 * n2 + b2] = g1.op[a1, a2] * n2 + g2.op[b1, b2]
    return group_from_table(labels, op, name=name or f"{g1.name}x{g2.name}")


def klein_four() -> FiniteGroup:
    g = direct_product(cyclic(2), cyclic(2), name="V4")
    return g


def symmetric3() -> FiniteGroup:
    perms = [(0, 1, 2), (1, 0, 2), (2, 1, 0), (0, 2, 1), (1, 2, 0), (2, 0, 1)]
    names = ["e", "(01)", "(02)", "(12)", "(012)", "(021)"]
    lut = {p: i for i, p in enumerate(perms)}
    op = np.empty((6, 6), dtype=np.int64)
    for i, p in enumerate(perms):
        for j, q in enumerate(perms):
            comp = tuple(p[q[k]] for k in range(3))
            op[i, j] = lut[comp]
    return group_from_table(names, op, name="S3")


def dihedral4() -> FiniteGroup:
    """Symmetries of the square: r^4 = s^2 = e, s r s = r^-1 (order 8)."""
    names = ["r0", "r1", "r2", "r3", "s0", "s1", "s2", "s3"]
    op = np.empty((8, 8), dtype=np.int64)
    for i in range(8):
        fi, ri = divmod(i, 4)
        for j in range(8):
            fj, rj = divmod(j, 4)
            if fi == 0:
                rot, flip = (ri + rj) % 4, fj
            else:
                rot, flip = (ri - rj) % 4, 1 - fj
            op[i, j] = flip * 4 + rot
    return group_from_table(names, op, name="D4")


def quaternion8() -> FiniteGroup:
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]

    # index encodes (axis, sign): axis = idx // 2 over (1, i, j, k), odd idx = negative
    def mul(a, b):
        sign_a = -1 if a % 2 else 1
        axis_a = a // 2
        sign_b = -1 if b % 2 else 1
        axis_b = b // 2
        table = {
            (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
            (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
            (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
            (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
        }
        s, axis = table[(axis_a, axis_b)]
        sign = sign_a * sign_b * s
        return axis * 2 + (0 if sign > 0 else 1)

    op = np.array([[mul(a, b) for b in range(8)] for a in range(8)], dtype=np.int64)
    return group_from_table(names, op, name="Q8")


@lru_cache(maxsize=None)
def small_group_catalogue(max_order: int = 8) -> tuple[FiniteGroup, ...]:
    """Every isomorphism class of groups of order <= max_order (max_order <= 8)."""
    if max_order > 8:
        raise StructureError("catalogue covers orders up to 8")
    groups: list[FiniteGroup] = []
    for n in range(1, max_order + 1):
        groups.append(cyclic(n))
    extras = []
    if max_order >= 4:
        extras.append(klein_four())
    if max_order >= 6:
        extras.append(symmetric3())
    if max_order >= 8:
        extras.append(direct_product(cyclic(2), cyclic(4), name="Z2xZ4"))
        extras.append(direct_product(cyclic(2), klein_four(), name="Z2xZ2xZ2"))
        extras.append(dihedral4())
        extras.append(quaternion8())
    groups.extend(e for e in extras if e.order <= max_order)
    return tuple(groups)


def subgroup_closure(g: FiniteGroup, seed: Iterable[int]) -> frozenset[int]:
    members = set(seed) | {g.unit}
    frontier = list(members)
    while frontier:
        x = frontier.pop()
        for y in tuple(members):
            for z in (g.mul(x, y), g.mul(y, x)):
                if z not in members:
                    members.add(z)
                    frontier.append(z)
    return frozenset(members)


def subgroups(g: FiniteGroup) -> list[frozenset[int]]:
    """All subgroups, found by closing generating sets; deterministic order."""
    found = {frozenset({g.unit})}
    frontier = [frozenset({g.unit})]
    while frontier:
        h = frontier.pop()
        for x in range(g.order):
            if x in h:
                continue
            h2 = subgroup_closure(g, h | {x})
            if h2 not in found:
                found.add(h2)
                frontier.append(h2)
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def element_order(g: FiniteGroup, a: int) -> int:
    k, x = 1, a
    while x != g.unit:
        x = g.mul(x, a)
        k += 1
    return k


def element_order_profile(g: FiniteGroup) -> tuple[int, ...]:
    return tuple(sorted(element_order(g, a) for a in range(g.order)))


def _generating_sequence(g: FiniteGroup) -> list[int]:
    gens: list[int] = []
    span = frozenset({g.unit})
    for x in range(g.order):
        if x not in span:
            gens.append(x)
            span = subgroup_closure(g, gens)
            if len(span) == g.order:
                break
    return gens


def find_group_isomorphism(g1: FiniteGroup, g2: FiniteGroup) -> Optional[tuple[int, ...]]:
    """Search for an isomorphism g1 -> g2; returns the image table or None.

    Backtracks over generator images, pruning by element order.
    """
    if g1.order != g2.order:
        return None
    if element_order_profile(g1) != element_order_profile(g2):
        return None
    n = g1.order
    gens = _generating_sequence(g1)
    orders2: dict[int, list[int]] = {}
    for x in range(n):
        orders2.setdefault(element_order(g2, x), []).append(x)

    def expand(images: dict[int, int]) -> Optional[dict[int, int]]:
        # close the partial map under multiplication; None on conflict
        images = dict(images)
        changed = True
        while changed:
            changed = False
            known = list(images.items())
            for a, fa in known:
                for b, fb in known:
                    ab, fab = g1.mul(a, b), g2.mul(fa, fb)
                    if ab in images:
                        if images[ab] != fab:
                            return None
                    else:
                        images[ab] = fab
                        changed = True
        return images

    def backtrack(i: int, images: dict[int, int]) -> Optional[dict[int, int]]:
        if i == len(gens):
            if len(images) == n and len(set(images.values())) == n:
                return images
            return None
        a = gens[i]
        if a in images:
            return backtrack(i + 1, images)
        for fa in orders2.get(element_order(g1, a), []):
            trial = expand({**images, a: fa})
            if trial is None or len(set(trial.values())) != len(trial):
                continue
            res = backtrack(i + 1, trial)
            if res is not None:
                return res
        return None

    result = backtrack(0, {g1.unit: g2.unit})
    if result is None:
        return None
    return tuple(result[a] for a in range(n))


def units_group_mod(modulus: int) -> FiniteGroup:
    """Multiplicative group of units of the ring of integers mod ``modulus``."""
    import math

    residues = [x for x in range(modulus) if math.gcd(x, modulus) == 1]
    lut = {x: i for i, x in enumerate(residues)}
    k = len(residues)
    op = np.array(
        [[lut[(a * b) % modulus] for b in residues] for a in residues], dtype=np.int64
    )
    return group_from_table([str(x) for x in residues], op, name=f"U(Z/{modulus})")
