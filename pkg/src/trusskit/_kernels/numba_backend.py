"""Numba-jitted table scans; same contract as :mod:`numpy_backend`.

Loops run in lexicographic order so the recorded first witness matches the
pure-numpy path exactly.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def malcev_left(t):
    n = t.shape[0]
    out = np.full(3, -1, dtype=np.int64)
    count = 0
    for a in range(n):
        for b in range(n):
            if t[a, a, b] != b:
                if count == 0:
                    out[1], out[2] = a, b
                count += 1
    out[0] = count
    return out


@njit(cache=True)
def malcev_right(t):
    n = t.shape[0]
    out = np.full(3, -1, dtype=np.int64)
    count = 0
    for a in range(n):
        for b in range(n):
            if t[b, a, a] != b:
                if count == 0:
                    out[1], out[2] = a, b
                count += 1
    out[0] = count
    return out


@njit(cache=True)
def abelian(t):
    n = t.shape[0]
    out = np.full(4, -1, dtype=np.int64)
    count = 0
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if t[a, b, c] != t[c, b, a]:
                    if count == 0:
                        out[1], out[2], out[3] = a, b, c
                    count += 1
    out[0] = count
    return out


@njit(cache=True)
def mul_assoc(m):
    n = m.shape[0]
    out = np.full(4, -1, dtype=np.int64)
    count = 0
    for a in range(n):
        for b in range(n):
            ab = m[a, b]
            for c in range(n):
                if m[ab, c] != m[a, m[b, c]]:
                    if count == 0:
                        out[1], out[2], out[3] = a, b, c
                    count += 1
    out[0] = count
    return out


@njit(cache=True)
def assoc(t):
    n = t.shape[0]
    out = np.full(6, -1, dtype=np.int64)
    count = 0
    for a in range(n):
        for b in range(n):
            for c in range(n):
                abc = t[a, b, c]
                for d in range(n):
                    for e in range(n):
                        if t[abc, d, e] != t[a, b, t[c, d, e]]:
                            if count == 0:
                                out[1], out[2], out[3], out[4], out[5] = a, b, c, d, e
                            count += 1
    out[0] = count
    return out


@njit(cache=True)
def para_assoc(t):
    n = t.shape[0]
    out = np.full(6, -1, dtype=np.int64)
    count = 0
    for a in range(n):
        for b in range(n):
            for c in range(n):
                abc = t[a, b, c]
                for d in range(n):
                    dcb = t[d, c, b]
                    for e in range(n):
                        if t[abc, d, e] != t[a, dcb, e]:
                            if count == 0:
                                out[1], out[2], out[3], out[4], out[5] = a, b, c, d, e
                            count += 1
    out[0] = count
    return out


@njit(cache=True)
def left_distrib(t, m):
    n = t.shape[0]
    out = np.full(5, -1, dtype=np.int64)
    count = 0
    for a in range(n):
        for b in range(n):
            ab = m[a, b]
            for c in range(n):
                ac = m[a, c]
                for d in range(n):
                    if m[a, t[b, c, d]] != t[ab, ac, m[a, d]]:
                        if count == 0:
                            out[1], out[2], out[3], out[4] = a, b, c, d
                        count += 1
    out[0] = count
    return out


@njit(cache=True)
def right_distrib(t, m):
    n = t.shape[0]
    out = np.full(5, -1, dtype=np.int64)
    count = 0
    for a in range(n):
        for b in range(n):
            ba = m[b, a]
            for c in range(n):
                ca = m[c, a]
                for d in range(n):
                    if m[t[b, c, d], a] != t[ba, ca, m[d, a]]:
                        if count == 0:
                            out[1], out[2], out[3], out[4] = a, b, c, d
                        count += 1
    out[0] = count
    return out
