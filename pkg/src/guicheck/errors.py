"""Exception hierarchy shared by the parsers, resolver and solver."""

from __future__ import annotations


class GuicheckError(Exception):
    """Base class for every error raised by guicheck."""


class ParseError(GuicheckError):
    def __init__(self, message: str, line: int, column: int, path: str | None = None):
        self.message = message
        self.line = line
        self.column = column
        self.path = path
        where = f"{path}:" if path else ""
        super().__init__(f"{where}{line}:{column}: {message}")

    def with_path(self, path: str) -> "ParseError":
        return ParseError(self.message, self.line, self.column, path)


class DuplicateSpecName(GuicheckError):
    pass


class DuplicateVariable(GuicheckError):
    pass


class DuplicateName(GuicheckError):
    """Two library directories define the same spec name."""

    def __init__(self, name: str, first: str, second: str):
        self.name = name
        self.first = first
        self.second = second
        super().__init__(f"spec {name!r} defined in both {first} and {second}")


class ResolveError(GuicheckError):
    pass


class UnknownType(ResolveError):
    pass


class CyclicType(ResolveError):
    def __init__(self, chain: list[str]):
        self.chain = list(chain)
        super().__init__("cyclic type reference: " + " -> ".join(chain))


class UnknownVariable(ResolveError):
    pass


class UnknownPropertyOnType(ResolveError):
    pass


class UnknownProperty(GuicheckError):
    def __init__(self, name: str, kind: str):
        self.name = name
        self.kind = kind
        super().__init__(f"{kind} has no property {name!r}")


class TypeMismatch(GuicheckError):
    pass


class UnboundSlot(GuicheckError):
    pass


class BudgetExceeded(GuicheckError):
    def __init__(self, needed: int, budget: int):
        self.needed = needed
        self.budget = budget
        super().__init__(f"expansion needs {needed} tuples, budget is {budget}")
