"""Exception types shared across the package.

The HTTP layer maps these onto status codes (validation -> 400,
not-found -> 404); everything else surfaces as 500.
"""


class BdpError(Exception):
    """Base class for all package errors."""

    code = "error"


class ValidationError(BdpError):
    """Input rejected before any state change."""

    code = "validation_error"

    def __init__(self, message: str, code: str | None = None):
        super().__init__(message)
        if code is not None:
            self.code = code


class NotFoundError(BdpError):
    """A referenced entity does not exist."""

    code = "not_found"
