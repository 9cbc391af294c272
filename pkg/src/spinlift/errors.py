"""
Exception hierarchy shared by all spinlift modules.
"""

from typing import Optional


class SpinliftError(Exception):
    """Base class for every error raised by spinlift."""


class SizeBoundExceeded(SpinliftError, ValueError):
    """A computation would exceed one of the configured size bounds."""

    def __init__(self, what: str, size: int, bound: int):
        self.what = what
        self.size = size
        self.bound = bound
        super().__init__(f"{what} = {size} exceeds bound {bound}")


class OrderBoundExceeded(SizeBoundExceeded):
    """Weyl group enumeration exceeded the configured order bound."""


class UnknownName(SpinliftError, ValueError):
    """A catalog lookup failed."""


class LeviNotGaloisStable(SpinliftError, ValueError):
    """The chosen Levi subset is not preserved by the Galois action."""


class InvalidAction(SpinliftError, ValueError):
    """A group action is not a homomorphism into the automorphism group."""


class NotAHomomorphism(SpinliftError, ValueError):
    """A map between groups does not respect multiplication."""


class NotASection(SpinliftError, ValueError):
    """A map G -> E is not a normalized set-theoretic section."""


class NotACocycle(SpinliftError, ValueError):
    """A 2-cochain violates the cocycle identity or normalization."""


class NotEquivariant(SpinliftError, ValueError):
    """A module map does not commute with the group actions."""


class NotCrossedHom(SpinliftError, ValueError):
    """A map W -> G violates the crossed-homomorphism identity."""


class PreconditionFailed(SpinliftError, ValueError):
    """A named precondition of a composite check does not hold."""

    def __init__(self, condition: str, detail: str = ""):
        self.condition = condition
        message = condition if not detail else f"{condition}: {detail}"
        super().__init__(message)


class SpaceMismatch(SpinliftError, ValueError):
    """Clifford elements from different quadratic spaces were combined."""


class NotScalarNorm(SpinliftError, ValueError):
    """x * alpha(x) is not a scalar."""


class NotOrthogonal(SpinliftError, ValueError):
    """A matrix does not preserve the quadratic form."""


class NonScalarDefect(SpinliftError, RuntimeError):
    """Pin lifts produced a non-scalar defect; this is an internal inconsistency."""


class ParseError(SpinliftError, ValueError):
    """An input file is not valid JSON."""

    def __init__(self, path: str, message: str, line: Optional[int] = None,
                 column: Optional[int] = None):
        self.path = path
        self.line = line
        self.column = column
        where = path if line is None else f"{path}:{line}:{column}"
        super().__init__(f"{where}: {message}")


class SchemaError(SpinliftError, ValueError):
    """A JSON document does not match the expected schema."""

    def __init__(self, location: str, message: str, path: Optional[str] = None):
        self.location = location
        self.detail = message
        self.path = path
        prefix = f"{path}: " if path else ""
        super().__init__(f"{prefix}{location}: {message}")


class UsageError(SpinliftError, ValueError):
    """A command was invoked without the arguments it needs."""


class InvalidGroup(SpinliftError, ValueError):
    """A multiplication table does not define a group."""


class NotPositiveDefinite(SpinliftError, ValueError):
    """A Gram matrix is not symmetric positive definite."""
