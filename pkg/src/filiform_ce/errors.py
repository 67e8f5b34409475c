"""Exception hierarchy.

Split along the CLI's exit-code contract: input documents that do not parse
or do not have the expected JSON structure raise :class:`InputFormatError`
(exit code 2), semantically invalid values raise :class:`DomainError` or a
subclass (exit code 3), and failed verification is reported through return
values, never exceptions.
"""

from __future__ import annotations


class FiliformError(Exception):
    """Base class for every error raised by this package."""


class InputFormatError(FiliformError):
    """An input document is malformed (bad JSON, missing/extra fields)."""


class DomainError(FiliformError, ValueError):
    """A value violates a documented precondition or invariant."""


class SingularMatrixError(DomainError):
    """A basis-change matrix is singular (|det| below tolerance)."""


class DegenerateTransformError(DomainError):
    """An adapted transform fails the nondegeneracy requirement.

    The product A0 * B1 * (A0 + A1*b) must stay away from zero; each factor
    is checked separately before any arithmetic is attempted.
    """


class TableShapeError(DomainError):
    """A tensor is not (within tolerance) an extension-family table.

    ``entries`` lists offending ``(i, j, k)`` index triples together with the
    observed and expected values.
    """

    def __init__(self, message: str, entries: list[tuple[tuple[int, int, int], complex, complex]]):
        super().__init__(message)
        self.entries = entries


class CanonicalizationError(FiliformError):
    """No adapted transform can reach the standard representative.

    Raised on the measure-zero parameter loci where a relatively invariant
    quantity vanishes while it is nonzero on the listed representative, so the
    normal form is genuinely unreachable (not a numerical failure).
    """
