"""Exception types raised by the library."""

from __future__ import annotations

from typing import Optional


class TrinityError(ValueError):
    """Base class for every library error."""


class NonPlanar(TrinityError):
    pass


class Disconnected(TrinityError):
    pass


class NotBalanced(TrinityError):
    pass


class NotBipartite(TrinityError):
    pass


class UnknownVertex(TrinityError, KeyError):
    def __str__(self) -> str:
        return ValueError.__str__(self)


class TooLarge(TrinityError):
    pass


class InvalidBase(TrinityError):
    pass


class NotAHypertree(TrinityError):
    pass


class NotFound(TrinityError):
    """A search that must succeed came back empty."""


class NoChip(TrinityError):
    pass


class RootRouting(TrinityError):
    pass


class InvalidArborescence(TrinityError):
    pass


class RootMismatch(TrinityError):
    pass


class DegreeNonzero(TrinityError):
    pass


class Infeasible(TrinityError):
    pass


class InvalidTrinity(TrinityError):
    def __init__(self, problems: list[str]):
        self.problems = list(problems)
        super().__init__("invalid trinity: " + "; ".join(self.problems))


class FormatError(TrinityError):
    """Syntax or semantic problem in a text file, with its location."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
