"""Exception hierarchy shared across the package."""


class TrussKitError(Exception):
    """Base class for all trusskit errors."""


class StructureError(TrussKitError):
    """Malformed input data: non-total tables, out-of-range indices, bad shapes."""


class StructureFileError(StructureError):
    """Parse failure in a structure file; carries position information."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + where)


class AxiomError(TrussKitError):
    """A structure failed its defining axioms; carries a witness or report."""

    def __init__(self, message: str, witness=None, report=None):
        self.witness = witness
        self.report = report
        super().__init__(message)


class PreconditionError(TrussKitError):
    """An operation was called on arguments that violate its contract."""


class SizeGuardError(TrussKitError):
    """Refused: the input exceeds the documented size bound for this operation."""


class OreConditionError(TrussKitError):
    """No Ore witness pair exists for the queried elements."""


class NotLeftRegularError(TrussKitError):
    """Localisation requested for a structure that is not a left regular domain."""

    def __init__(self, message: str, reason: str | None = None, witness=None):
        self.reason = reason
        self.witness = witness
        super().__init__(message)
