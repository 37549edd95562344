"""Exception hierarchy shared by every module.

Each error carries a stable ``code`` string and the process exit status the
CLI uses when it escapes to the top level.
"""


class GalentError(Exception):
    code = "error"
    exit_status = 1


class ValidationError(GalentError, ValueError):
    """Bad input: non-divisors, singular models, excluded parameters..."""

    code = "validation"
    exit_status = 3


class BudgetExceeded(GalentError, RuntimeError):
    """A configured resource bound (elements, primes, heights) was hit."""

    code = "budget"
    exit_status = 4


class StructuralError(GalentError, RuntimeError):
    """An internal consistency assertion failed.  Always a bug or bad data."""

    code = "structural"
    exit_status = 5
