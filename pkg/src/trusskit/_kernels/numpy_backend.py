"""Pure-numpy table scans.

Every function takes dense int64 Cayley tables (``t`` ternary with shape
(n, n, n), ``m`` binary with shape (n, n)) and returns an int64 vector
``[count, w0, w1, ...]``: the number of violating tuples followed by the
lexicographically first witness (-1 slots when there is none).  The n^4/n^5
scans are chunked over leading indices to bound temporary memory.
"""

from __future__ import annotations

import numpy as np

# Largest temporary slab, in elements, before switching to finer chunking.
_CHUNK_BUDGET = 1 << 22


def _result(slots: int, count: int, first) -> np.ndarray:
    out = np.full(1 + slots, -1, dtype=np.int64)
    out[0] = count
    if first is not None:
        out[1:] = first
    return out


def _first_true(mask: np.ndarray):
    pos = np.argwhere(mask)
    return tuple(int(x) for x in pos[0]) if len(pos) else None


def malcev_left(t: np.ndarray) -> np.ndarray:
    n = t.shape[0]
    idx = np.arange(n)
    mism = t[idx, idx, :] != idx[None, :]
    return _result(2, int(mism.sum()), _first_true(mism))


def malcev_right(t: np.ndarray) -> np.ndarray:
    n = t.shape[0]
    idx = np.arange(n)
    mism = t[:, idx, idx].T != idx[None, :]
    return _result(2, int(mism.sum()), _first_true(mism))


def abelian(t: np.ndarray) -> np.ndarray:
    mism = t != t.transpose(2, 1, 0)
    return _result(3, int(mism.sum()), _first_true(mism))


def mul_assoc(m: np.ndarray) -> np.ndarray:
    mism = m[m] != m[:, m]
    return _result(3, int(mism.sum()), _first_true(mism))


def assoc(t: np.ndarray) -> np.ndarray:
    n = t.shape[0]
    count, first = 0, None
    if n ** 4 <= _CHUNK_BUDGET:
        for a in range(n):
            mism = t[t[a]] != t[a][:, t]
            c = int(mism.sum())
            if c and first is None:
                first = (a,) + _first_true(mism)
            count += c
    else:
        for a in range(n):
            for b in range(n):
                row = t[a, b]
                mism = t[row] != row[t]
                c = int(mism.sum())
                if c and first is None:
                    first = (a, b) + _first_true(mism)
                count += c
    return _result(5, count, first)


def para_assoc(t: np.ndarray) -> np.ndarray:
    n = t.shape[0]
    count, first = 0, None
    rev = t.transpose(2, 1, 0)
    if n ** 4 <= _CHUNK_BUDGET:
        for a in range(n):
            mism = t[t[a]] != t[a][rev]
            c = int(mism.sum())
            if c and first is None:
                first = (a,) + _first_true(mism)
            count += c
    else:
        for a in range(n):
            for b in range(n):
                mism = t[t[a, b]] != t[a][t[:, :, b].T]
                c = int(mism.sum())
                if c and first is None:
                    first = (a, b) + _first_true(mism)
                count += c
    return _result(5, count, first)


def left_distrib(t: np.ndarray, m: np.ndarray) -> np.ndarray:
    n = t.shape[0]
    count, first = 0, None
    for a in range(n):
        row = m[a]
        mism = row[t] != t[np.ix_(row, row, row)]
        c = int(mism.sum())
        if c and first is None:
            first = (a,) + _first_true(mism)
        count += c
    return _result(4, count, first)


def right_distrib(t: np.ndarray, m: np.ndarray) -> np.ndarray:
    n = t.shape[0]
    count, first = 0, None
    for a in range(n):
        col = m[:, a]
        mism = col[t] != t[np.ix_(col, col, col)]
        c = int(mism.sum())
        if c and first is None:
            first = (a,) + _first_true(mism)
        count += c
    return _result(4, count, first)
