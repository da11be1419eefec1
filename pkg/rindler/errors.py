"""Exception hierarchy; `exit_code` is what the CLI returns for each."""

from typing import Optional


class RindlerError(Exception):
    """Base class for every error raised by the rindler package."""
    exit_code = 1


class ValidationError(RindlerError, ValueError):
    """Input outside the documented domain (bad alpha, theta, matrix, config)."""
    exit_code = 2


class ToleranceInfeasibleError(RindlerError):
    """The requested series tolerance cannot be met under the term cap."""
    exit_code = 3

    def __init__(self, message: str, requested: Optional[float] = None,
                 achievable: Optional[float] = None):
        super().__init__(message)
        self.requested = requested
        self.achievable = achievable


class OutputError(RindlerError):
    """Reading a config or writing results failed."""
    exit_code = 4


class BracketError(RindlerError):
    """Coarse scan found more than one local maximum; golden section is unsafe."""
    exit_code = 1
