"""Dense integer-coefficient polynomial arithmetic, exact throughout.

Polynomials are tuples of ints in ascending power order with no trailing
zeros; the empty tuple is the zero polynomial.  Divisibility is decided by
integer long division that insists on exact leading-coefficient division at
every step, which is complete for divisibility inside Z[x].
"""

from __future__ import annotations

from typing import Optional, Sequence


Poly = tuple[int, ...]


def normalize(coeffs: Sequence[int]) -> Poly:
    coeffs = [int(c) for c in coeffs]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def degree(p: Poly) -> int:
    """Degree, with the zero polynomial mapped to -1."""
    return len(p) - 1


def add(p: Poly, q: Poly) -> Poly:
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] += c
    return normalize(out)


def neg(p: Poly) -> Poly:
    return tuple(-c for c in p)


def sub(p: Poly, q: Poly) -> Poly:
    return add(p, neg(q))


def mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return normalize(out)


def coeff_sum(p: Poly) -> int:
    return sum(p)


def eval_int(p: Poly, x: int) -> int:
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def eval_gauss(p: Poly) -> tuple[int, int]:
    """Evaluate at the imaginary unit; powers of i cycle with period 4."""
    re = im = 0
    for k, c in enumerate(p):
        r = k % 4
        if r == 0:
            re += c
        elif r == 1:
            im += c
        elif r == 2:
            re -= c
        else:
            im -= c
    return re, im


def divmod_exact(p: Poly, d: Poly) -> Optional[Poly]:
    """Quotient q with p = d*q in Z[x], or None when d does not divide p."""
    if not d:
        raise ZeroDivisionError("division by the zero polynomial")
    if not p:
        return ()
    if len(p) < len(d):
        return None
    rem = list(p)
    q = [0] * (len(p) - len(d) + 1)
    lead = d[-1]
    for shift in range(len(q) - 1, -1, -1):
        c = rem[shift + len(d) - 1]
        if c % lead != 0:
            return None
        factor = c // lead
        q[shift] = factor
        if factor:
            for i, dc in enumerate(d):
                rem[shift + i] -= factor * dc
    if any(rem):
        return None
    return normalize(q)


def divides(d: Poly, p: Poly) -> bool:
    return divmod_exact(p, d) is not None


def to_str(p: Poly, var: str = "x") -> str:
    if not p:
        return "0"
    parts = []
    for k in range(len(p) - 1, -1, -1):
        c = p[k]
        if c == 0:
            continue
        if k == 0:
            term = str(c)
        else:
            mag = "" if abs(c) == 1 else str(abs(c))
            sign = "-" if c < 0 else ""
            power = var if k == 1 else f"{var}^{k}"
            term = f"{sign}{mag}{power}"
        parts.append(term)
    out = parts[0]
    for term in parts[1:]:
        out += ("+" + term) if not term.startswith("-") else term
    return out
