"""Exception hierarchy shared across the library.

The CLI maps these onto exit codes: InputError -> 2, DomainError -> 3,
ConvergenceError -> 4.
"""


class ErrexpError(Exception):
    """Base class for all library errors."""


class InputError(ErrexpError, ValueError):
    """Malformed or inconsistent inputs (alphabet mismatch, bad PMF, ...)."""


class DomainError(ErrexpError, ValueError):
    """Arguments outside the mathematical domain of an operation."""


class BracketError(ErrexpError, ValueError):
    """Root bracketing failed (no sign change on the given interval)."""


class ConvergenceError(ErrexpError, RuntimeError):
    """An iterative solver did not reach its tolerance."""


class EstimationError(ErrexpError, RuntimeError):
    """Not enough usable data to produce an estimate."""
