"""Exception hierarchy shared by every module, plus the process exit codes."""

EXIT_OK = 0
EXIT_INPUT_ERROR = 2
EXIT_REFUSAL = 3
EXIT_VERIFICATION_FAILURE = 4


class CspError(Exception):
    """Base class for all errors raised by this package."""


class InputError(CspError):
    """A malformed file, argument, or domain object (exit code 2)."""


class Refusal(CspError):
    """An unmet precondition or exhausted resource budget (exit code 3).

    A refusal is always explicit: the package never silently approximates.
    """


class VerificationFailure(CspError):
    """Two routes that must agree exactly did not (exit code 4)."""


class InvariantViolation(CspError):
    """An internally guaranteed condition was violated; aborts loudly."""
