"""Exception hierarchy shared by every layer of the package."""

from typing import Any, List, Optional


class FrolicherError(Exception):
    """Base class for all errors raised by this package."""


class ScalarDivisionError(FrolicherError, ZeroDivisionError):
    """Division of a Gaussian rational by zero."""


class AmbientMismatchError(FrolicherError, ValueError):
    """Objects living in spaces of different sizes were combined."""


class NonHomogeneousFormError(FrolicherError, ValueError):
    """An operation that needs a single bidegree got a mixed form."""


class GeneratorLimitError(FrolicherError, ValueError):
    """Generator count outside the supported range."""


class UnknownExampleError(FrolicherError, ValueError):
    """Requested builtin example is not registered."""


class FamilyParameterError(FrolicherError, ValueError):
    """Invalid parameter for a parametrised family of examples."""


class StructureValidationError(FrolicherError):
    """Structure equations fail the Jacobi or integrability check."""

    def __init__(self, message: str, report: Any = None) -> None:
        super().__init__(message)
        self.report = report


class SubspaceContainmentError(FrolicherError, ValueError):
    """Quotient of subspaces requested with V not contained in U."""


class NotACocycleError(FrolicherError, ValueError):
    """Zig-zag start is not del-bar closed."""


class ZigZagExtensionError(FrolicherError):
    """A zig-zag could not be extended to the requested length.

    Attributes:
        lives_to: number of chain elements that could be constructed, i.e.
            the start element lives exactly to this page
        partial: the chain constructed so far
    """

    def __init__(
        self, message: str, lives_to: int, partial: Optional[List[Any]] = None
    ) -> None:
        super().__init__(message)
        self.lives_to = lives_to
        self.partial = partial or []


class InvariantViolationError(FrolicherError):
    """An internal mathematical invariant does not hold."""
