"""Hot table-scan kernels with backend selection.

The jitted numba backend is the default; setting ``TRUSSKIT_PURE_NUMPY=1``
(or any non-empty value other than ``0``) in the environment selects the
pure-numpy fallback, as does an unavailable numba installation.  Both
backends return identical counts and identical (lexicographically first)
witnesses; ``benchmarks/bench_kernels.py`` compares their speed.

Public functions take int64 numpy tables and return ``(count, witness)``
where ``witness`` is a tuple of indices or ``None``.
"""

from __future__ import annotations

import os

import numpy as np

from . import numpy_backend

_flag = os.environ.get("TRUSSKIT_PURE_NUMPY", "").strip()
_want_numba = _flag in ("", "0")

if _want_numba:
    try:
        from . import numba_backend as _impl
        BACKEND = "numba"
    except ImportError:
        _impl = numpy_backend
        BACKEND = "numpy"
else:
    _impl = numpy_backend
    BACKEND = "numpy"


def backend_name() -> str:
    return BACKEND


def _as_table(arr) -> np.ndarray:
    return np.ascontiguousarray(arr, dtype=np.int64)


def _unpack(raw: np.ndarray):
    count = int(raw[0])
    if count == 0:
        return 0, None
    return count, tuple(int(x) for x in raw[1:])


def malcev_left(t):
    return _unpack(_impl.malcev_left(_as_table(t)))


def malcev_right(t):
    return _unpack(_impl.malcev_right(_as_table(t)))


def abelian(t):
    return _unpack(_impl.abelian(_as_table(t)))


def mul_assoc(m):
    return _unpack(_impl.mul_assoc(_as_table(m)))


def assoc(t):
    return _unpack(_impl.assoc(_as_table(t)))


def para_assoc(t):
    return _unpack(_impl.para_assoc(_as_table(t)))


def left_distrib(t, m):
    return _unpack(_impl.left_distrib(_as_table(t), _as_table(m)))


def right_distrib(t, m):
    return _unpack(_impl.right_distrib(_as_table(t), _as_table(m)))


def warm_up() -> None:
    """Trigger jit compilation on tiny tables so later scans pay no lag."""
    t = np.zeros((1, 1, 1), dtype=np.int64)
    m = np.zeros((1, 1), dtype=np.int64)
    malcev_left(t), malcev_right(t), abelian(t), assoc(t), para_assoc(t)
    mul_assoc(m), left_distrib(t, m), right_distrib(t, m)
