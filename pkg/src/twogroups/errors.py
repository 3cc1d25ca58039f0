"""Exceptions shared across the toolkit.

Every error that reflects bad mathematical input (rather than a bug) derives
from ToolkitError, so callers and the CLI can distinguish domain failures
(exit code 1) from usage mistakes (exit code 2).
"""

from __future__ import annotations


class ToolkitError(Exception):
    """Base class for domain errors raised by this package."""


class GroupValidationError(ToolkitError):
    """A multiplication table failed to define a group."""


class NotAssociative(GroupValidationError):
    def __init__(self, a: int, b: int, c: int):
        self.witness = (a, b, c)
        super().__init__(f"table is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")


class NoIdentity(GroupValidationError):
    def __init__(self) -> None:
        super().__init__("table has no two-sided identity element")


class NoInverse(GroupValidationError):
    def __init__(self, element: int):
        self.element = element
        super().__init__(f"element {element} has no two-sided inverse")


class InvalidAction(GroupValidationError):
    """Matrices do not define a group action by automorphisms."""


class SizeBound(ToolkitError):
    def __init__(self, what: str, actual: int, limit: int):
        self.what = what
        self.actual = actual
        self.limit = limit
        super().__init__(f"{what}: size {actual} exceeds configured bound {limit}")


class NotACocycle(ToolkitError):
    def __init__(self, witness: tuple[int, ...]):
        self.witness = witness
        super().__init__(f"cochain is not a cocycle; coboundary is nonzero at {witness}")


class NotSymmetric(ToolkitError):
    def __init__(self, pair: tuple[int, int]):
        self.pair = pair
        super().__init__(f"2-cochain is not symmetric at argument pair {pair}")


class NonAbelianBase(ToolkitError):
    def __init__(self) -> None:
        super().__init__("operation requires an abelian base group")


class PentagonViolation(ToolkitError):
    def __init__(self, witness: tuple[int, int, int, int]):
        self.witness = witness
        super().__init__(f"pentagon identity fails at quadruple {witness}")


class MismatchedData(ToolkitError):
    """Operands carry different groups, modules, actions or degrees."""


class MismatchedPostnikovData(MismatchedData):
    def __init__(self, what: str):
        super().__init__(f"2-groups differ in their underlying data: {what}")


class ZeroComposite(ToolkitError):
    def __init__(self) -> None:
        super().__init__("the simple objects do not compose to a nonzero object")


class UnknownSimple(ToolkitError):
    def __init__(self, text: str):
        super().__init__(f"unknown simple object: {text!r}")


class OperationCancelled(ToolkitError):
    def __init__(self) -> None:
        super().__init__("operation cancelled by caller")


class SpecFileError(ToolkitError):
    """A 2-group specification file failed to parse or validate.

    ``path`` names the offending field, e.g. ``alpha[3].value``.
    """

    def __init__(self, path: str, message: str):
        self.path = path
        self.reason = message
        super().__init__(f"{path}: {message}" if path else message)
