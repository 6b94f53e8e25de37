"""Exception hierarchy shared across the package.

Every error raised on bad input derives from :class:`EvencobError`, so the
command line front end can map "your data is wrong" uniformly to exit code 2
while still letting callers discriminate the failure kind.
"""


class EvencobError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatchError(EvencobError):
    """Operands live in spaces of incompatible dimensions."""


class NonSkewFormError(EvencobError):
    """A Gram matrix required to be skew-symmetric is not."""


class NotSymmetricError(EvencobError):
    """A Gram matrix required to be symmetric is not."""


class NotLagrangianError(EvencobError):
    """A subspace required to be Lagrangian is not."""


class InvalidTripleError(EvencobError):
    """A Lagrangian triple failed validation."""


class DecompositionError(EvencobError):
    """The vector lies outside the sum of the two given subspaces."""


class CompositionError(EvencobError):
    """Two morphisms cannot be composed."""


class GeneraMismatchError(CompositionError):
    """The middle surfaces disagree on their genera."""


class LagrangianMismatchError(CompositionError):
    """The middle surfaces agree on genera but carry different Lagrangians."""


class NotAPseudoCylinderError(EvencobError):
    """The morphism does not carry identity homological data."""


class NotSymplecticError(EvencobError):
    """A matrix required to preserve the symplectic form does not."""


class GeneratorSpecError(EvencobError):
    """A generator build plan is malformed or internally inconsistent."""


class ParseError(EvencobError):
    """Line-oriented input could not be parsed."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class FileSyntaxError(ParseError):
    """A statement does not match the file grammar."""


class UnknownNameError(ParseError):
    """A statement refers to a name that was never declared."""
