"""Exception types raised by the library and mapped to exit code 2 by the CLI."""

from typing import Optional


class FockSplitterError(ValueError):
    """Base class for every input-validation failure in the library."""


class DomainError(FockSplitterError):
    """An operation was called outside its precondition."""


class InvalidSplitterError(FockSplitterError):
    """Fresnel coefficients violate a losslessness constraint."""

    def __init__(self, message: str, residual: Optional[float] = None):
        super().__init__(message)
        self.residual = residual


class PhotonLimitError(FockSplitterError):
    """Photon count exceeds the configured maximum for the requested path."""

    def __init__(self, total: int, limit: int, path: str):
        super().__init__(f"{total} photons exceed the {path} limit of {limit}")
        self.total = total
        self.limit = limit


class TruncationError(FockSplitterError):
    """A coherent amplitude is too large for the requested Fock truncation."""


class SchemaError(FockSplitterError):
    """A scenario produced an output key the CLI schema does not document."""
