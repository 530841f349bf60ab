"""trusskit: heaps, pre-trusses, paragons, Ore localisation and skew braces.

Finite structures are dense 0-based index tables with exhaustive, exact
verification; the four infinite instances (odd integers, odd-sum
polynomials, odd Gaussian integers, odd/even-patterned integer matrices)
run on arbitrary-precision arithmetic.  Hot table scans are numba-jitted
with a pure-numpy fallback selected by ``TRUSSKIT_PURE_NUMPY=1``.
"""

from .errors import (
    AxiomError,
    NotLeftRegularError,
    OreConditionError,
    PreconditionError,
    SizeGuardError,
    StructureError,
    StructureFileError,
    TrussKitError,
)

__version__ = "0.1.0"

__all__ = [
    "AxiomError",
    "NotLeftRegularError",
    "OreConditionError",
    "PreconditionError",
    "SizeGuardError",
    "StructureError",
    "StructureFileError",
    "TrussKitError",
    "__version__",
]
