"""Exception hierarchy shared by every module."""


class ChuTensorError(Exception):
    """Base class for all errors raised by the package."""


class SchemaError(ChuTensorError, ValueError):
    """Malformed input document or literal."""


class StructureError(ChuTensorError, ValueError):
    """Input is well formed but is not a valid meet-semilattice (cycle, missing meet, bad star)."""


class PreconditionError(ChuTensorError, ValueError):
    """An operation was called on arguments violating its stated precondition."""


class CapExceeded(ChuTensorError):
    """An exhaustive procedure would exceed a configured size cap."""


class ConsistencyError(ChuTensorError, AssertionError):
    """Two independent computations that must agree did not."""
