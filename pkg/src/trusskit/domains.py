"""Regular elements, domains, and completely prime paragons.

A domain is a pre-truss whose non-absorber elements are all regular, which
is the same as two-sided cancellation.  Completely prime paragons are the
paragons whose quotient is a domain; both directions of that theorem are
exercised by :func:`domain_iff_prime_check`.  Positive verdicts for infinite
instances always come from instance-supplied proofs, never from sampling.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Union

import numpy as np

from . import polynomials as P
from .errors import AxiomError, PreconditionError
from .heaps import subheap_classes
from .instances import OddPoly
from .paragons import is_ideal, is_paragon, quotient
from .trusses import EffectiveTruss, FinitePreTruss, find_absorbers, non_absorber_indices


@dataclass(frozen=True, eq=False)
class RegularityReport:
    element: int
    left_regular: bool
    right_regular: bool
    left_witness: Optional[tuple[int, int]] = None
    right_witness: Optional[tuple[int, int]] = None
    absorber_free_carrier: bool = True   # no two-sided absorber: every element is a candidate

    @property
    def regular(self) -> bool:
        return self.left_regular and self.right_regular

    @property
    def witness(self) -> Optional[tuple[int, int]]:
        return self.left_witness if self.left_witness is not None else self.right_witness


def _injectivity_witness(values: np.ndarray) -> Optional[tuple[int, int]]:
    seen: dict[int, int] = {}
    for i, v in enumerate(values.tolist()):
        if v in seen:
            return (seen[v], i)
        seen[v] = i
    return None


def is_regular(t: Union[FinitePreTruss, EffectiveTruss], a) -> RegularityReport:
    """Left/right regularity of a non-absorber element.

    Finite structures are scanned exhaustively.  Effective instances must
    supply a proof hook; a sampled search can only ever refute regularity,
    so it is never consulted for a positive verdict.
    """
    if isinstance(t, EffectiveTruss):
        if t.is_absorber(a):
            raise PreconditionError("regularity is undefined for the absorber")
        if not t.proves_regular(a):
            raise PreconditionError(
                f"{t.name} supplies no regularity proof for {t.describe(a)}"
            )
        return RegularityReport(element=a, left_regular=True, right_regular=True)
    t.require_pretruss()
    report = find_absorbers(t)
    if report.two_sided is not None and a == report.two_sided:
        raise PreconditionError(f"element {a} is the absorber; regularity is undefined there")
    lw = _injectivity_witness(t.mul[a, :])
    rw = _injectivity_witness(t.mul[:, a])
    return RegularityReport(
        element=a,
        left_regular=lw is None,
        right_regular=rw is None,
        left_witness=lw,
        right_witness=rw,
        absorber_free_carrier=report.two_sided is None,
    )


def is_regular_neartruss_shortcut(t: FinitePreTruss, a: int) -> bool:
    """Existential form: some c has ab != ac for every b != c (and dually).

    Equivalent to full regularity in a near-truss; kept as an independent
    second route for cross-checks.
    """
    t.require_near()
    row = t.mul[a, :]
    left = any(int(np.count_nonzero(row == row[c])) == 1 for c in range(t.size))
    col = t.mul[:, a]
    right = any(int(np.count_nonzero(col == col[c])) == 1 for c in range(t.size))
    return left and right


def is_domain(t: Union[FinitePreTruss, EffectiveTruss]) -> bool:
    """Every non-absorber element is regular.

    For finite structures the per-element verdicts are cross-checked against
    a direct global cancellation scan; effective instances delegate to their
    domain proof.
    """
    if isinstance(t, EffectiveTruss):
        return t.proves_domain()
    t.require_pretruss()
    candidates = non_absorber_indices(t)
    by_regularity = all(is_regular(t, a).regular for a in candidates)
    by_cancellation = all(
        _injectivity_witness(t.mul[a, :]) is None
        and _injectivity_witness(t.mul[:, a]) is None
        for a in candidates
    )
    if by_regularity != by_cancellation:
        raise AxiomError("regularity and cancellation formulations disagree")
    return by_regularity


@dataclass(frozen=True, eq=False)
class PrimalityCertificate:
    paragon: frozenset[int]
    verdict: str        # "completely_prime" | "not_completely_prime"
    witness: Optional[tuple[int, int, int, int]] = None   # (a, b, c, p)

    @property
    def is_completely_prime(self) -> bool:
        return self.verdict == "completely_prime"


def _completely_prime_scan(
    t: FinitePreTruss,
    members: frozenset[int],
    class_of: tuple[int, ...],
    class_is_ideal: tuple[bool, ...],
) -> Optional[tuple[int, int, int, int]]:
    """First (a, b, c, p) violating the definition, or None; scan order is
    a, then p, then (b, c)."""
    tt, m = t.heap.table, t.mul
    n = t.size
    in_p = np.zeros(n, dtype=bool)
    in_p[list(members)] = True
    for a in range(n):
        if class_is_ideal[class_of[a]]:
            continue
        row, col = m[a, :], m[:, a]
        for p in sorted(members):
            same_class = in_p[tt[:, :, p]]          # [b,c] <-> [b,c,p] in P
            left_hyp = in_p[tt[row[:, None], row[None, :], p]]
            bad = left_hyp & ~same_class
            if bad.any():
                b, c = np.argwhere(bad)[0]
                return (a, int(b), int(c), p)
            right_hyp = in_p[tt[col[:, None], col[None, :], p]]
            bad = right_hyp & ~same_class
            if bad.any():
                b, c = np.argwhere(bad)[0]
                return (a, int(b), int(c), p)
    return None


def is_completely_prime(t: FinitePreTruss, subset: Iterable[int]) -> PrimalityCertificate:
    """Exhaustive completely-prime test with all documented cross-checks.

    Skew trusses additionally run the single-witness shortcut form, and
    every translate of the paragon must produce the same verdict; any
    disagreement is an internal error.
    """
    t.require_pretruss()
    members = frozenset(subset)
    if not is_paragon(t, members):
        raise PreconditionError(f"{sorted(members)} is not a paragon")
    part = subheap_classes(t.heap, members)
    class_is_ideal = tuple(is_ideal(t, cls) for cls in part.classes)
    witness = _completely_prime_scan(t, members, part.class_of, class_is_ideal)
    verdict = witness is None

    if t.flags.is_skew:
        shortcut = _skew_shortcut(t, members, part.class_of, class_is_ideal)
        if shortcut != verdict:
            raise AxiomError(
                f"skew shortcut disagrees with the definition on {sorted(members)}"
            )
    for cls in part.classes:
        translate = _completely_prime_scan(t, cls, part.class_of, class_is_ideal)
        if (translate is None) != verdict:
            raise AxiomError(
                f"translate {sorted(cls)} has a different verdict than {sorted(members)}"
            )
    return PrimalityCertificate(
        members,
        "completely_prime" if verdict else "not_completely_prime",
        witness,
    )


def _skew_shortcut(
    t: FinitePreTruss,
    members: frozenset[int],
    class_of: tuple[int, ...],
    class_is_ideal: tuple[bool, ...],
) -> bool:
    # one p in P works for all (a, d): [ad,ap,p] in P => class(a) ideal or d in P
    tt, m = t.heap.table, t.mul
    n = t.size
    in_p = np.zeros(n, dtype=bool)
    in_p[list(members)] = True
    for p in sorted(members):
        ok = True
        for a in range(n):
            if class_is_ideal[class_of[a]]:
                continue
            row, col = m[a, :], m[:, a]
            left_hyp = in_p[tt[row, row[p], p]]
            if (left_hyp & ~in_p).any():
                ok = False
                break
            right_hyp = in_p[tt[col, col[p], p]]
            if (right_hyp & ~in_p).any():
                ok = False
                break
        if ok:
            return True
    return False


@dataclass(frozen=True, eq=False)
class DomainPrimeEquivalence:
    prime: PrimalityCertificate
    quotient_is_domain: bool

    @property
    def holds(self) -> bool:
        return self.prime.is_completely_prime == self.quotient_is_domain


def domain_iff_prime_check(t: FinitePreTruss, subset: Iterable[int]) -> DomainPrimeEquivalence:
    """Both sides of 'P completely prime iff T/P is a domain', independently."""
    members = frozenset(subset)
    cert = is_completely_prime(t, members)
    q = quotient(t, members)
    dom = is_domain(q.structure)
    result = DomainPrimeEquivalence(cert, dom)
    if not result.holds:
        raise AxiomError(
            f"domain/prime equivalence fails for P = {sorted(members)}: "
            f"prime={cert.verdict}, quotient domain={dom}"
        )
    return result


@dataclass(frozen=True, eq=False)
class PreimageCheck:
    preimage: frozenset[int]
    holds: bool


def prime_preimage_check(f, target_paragon: Iterable[int]) -> PreimageCheck:
    """Pull a completely prime paragon of the image back along a verified
    homomorphism and confirm the preimage is completely prime."""
    from .trusses import sub_pretruss

    f.verify()
    members = frozenset(target_paragon)
    image = f.image()
    if not members <= image:
        raise PreconditionError("paragon must live inside the image")
    img_struct, local = sub_pretruss(f.target, image)
    local_members = frozenset(local[x] for x in members)
    cert = is_completely_prime(img_struct, local_members)
    if not cert.is_completely_prime:
        raise PreconditionError(
            f"{sorted(members)} is not completely prime in the image"
        )
    preimage = frozenset(a for a in range(f.source.size) if f(a) in members)
    pre_cert = is_completely_prime(f.source, preimage)
    if not pre_cert.is_completely_prime:
        raise AxiomError(
            f"preimage {sorted(preimage)} of a completely prime paragon is not "
            "completely prime"
        )
    return PreimageCheck(preimage, True)


@dataclass(frozen=True)
class PolyParagon:
    """P(t0, t1) in O(x): the polynomials p with (t1 - t0) | (p - t0).

    Completely prime whenever t1 - t0 is irreducible over the integers;
    irreducibility is a caller-asserted fact recorded in ``note``, there is
    no general irreducibility tester here.
    """

    t0: OddPoly
    t1: OddPoly
    irreducible_asserted: bool = False
    note: str = ""

    def __post_init__(self):
        if self.t0 == self.t1:
            raise PreconditionError("t0 = t1 would divide by the zero polynomial")

    @property
    def modulus(self) -> tuple[int, ...]:
        return P.sub(self.t1.coeffs, self.t0.coeffs)

    def contains(self, p: OddPoly) -> bool:
        return P.divides(self.modulus, P.sub(p.coeffs, self.t0.coeffs))

    def same_class(self, a: OddPoly, b: OddPoly) -> bool:
        return P.divides(self.modulus, P.sub(a.coeffs, b.coeffs))

    def paragon_law_holds(self, q: OddPoly, p: OddPoly) -> bool:
        """[q p, q t0, t0] lands back in P for every member p; exact check."""
        if not self.contains(p):
            raise PreconditionError(f"{p} is not a member")
        qp = P.mul(q.coeffs, p.coeffs)
        qt0 = P.mul(q.coeffs, self.t0.coeffs)
        value = OddPoly(P.add(P.sub(qp, qt0), self.t0.coeffs))
        return self.contains(value)


def paragon_of_odd_polys(
    t0: OddPoly,
    t1: OddPoly,
    irreducible: bool = False,
    note: str = "",
) -> PolyParagon:
    return PolyParagon(t0, t1, irreducible, note)


def gauss_paragon() -> PolyParagon:
    """The shipped example P(x, x^2+x+1): modulus x^2+1."""
    return paragon_of_odd_polys(
        OddPoly((0, 1)),
        OddPoly((1, 1, 1)),
        irreducible=True,
        note="x^2+1 has no integer roots, is primitive and of degree 2, "
             "hence irreducible over the integers",
    )
