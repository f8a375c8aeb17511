"""Exception hierarchy.

Every error carries a stable ``code`` used by the CLI's JSON error output.
"""

from __future__ import annotations


class HypersimpleError(Exception):
    exit_code = 4

    @property
    def code(self) -> str:
        return type(self).__name__


class ValidationError(HypersimpleError, ValueError):
    exit_code = 2


class StubMismatch(ValidationError):
    def __init__(self, vertex_stubs: int, edge_stubs: int, side: str = ""):
        self.vertex_stubs = vertex_stubs
        self.edge_stubs = edge_stubs
        label = f" ({side})" if side else ""
        super().__init__(f"vertex stubs {vertex_stubs} != edge slots {edge_stubs}{label}")


class StubMismatchOut(StubMismatch):
    def __init__(self, vertex_stubs: int, edge_stubs: int):
        super().__init__(vertex_stubs, edge_stubs, "out/tail")


class StubMismatchIn(StubMismatch):
    def __init__(self, vertex_stubs: int, edge_stubs: int):
        super().__init__(vertex_stubs, edge_stubs, "in/head")


class EmptyEdge(ValidationError):
    def __init__(self, index: int, what: str = "edge"):
        self.index = index
        super().__init__(f"{what} {index} has size 0")


class EmptyTail(EmptyEdge):
    def __init__(self, index: int):
        super().__init__(index, "tail of edge")


class EmptyHead(EmptyEdge):
    def __init__(self, index: int):
        super().__init__(index, "head of edge")


class NoVertices(ValidationError):
    def __init__(self):
        super().__init__("degree sequence has no vertices")


class NegativeDegree(ValidationError):
    def __init__(self, index: int, value: int):
        super().__init__(f"vertex {index} has negative degree {value}")


class LengthMismatch(ValidationError):
    pass


class ParseError(ValidationError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line else ""
        super().__init__(f"{message}{where}")


class PreconditionViolated(HypersimpleError, ValueError):
    exit_code = 2


class EdgeTooLarge(PreconditionViolated):
    pass


class NotRegular(PreconditionViolated):
    pass


class NotAGraph(PreconditionViolated):
    pass


class NotADigraph(PreconditionViolated):
    pass


class TailHeadMismatch(PreconditionViolated):
    pass


class ZeroMeanDegree(PreconditionViolated):
    pass


class DegenerateDenominator(PreconditionViolated):
    pass


class DivisibilityError(PreconditionViolated):
    pass


class InvalidParams(PreconditionViolated):
    pass


class CapExceeded(HypersimpleError, ValueError):
    exit_code = 3


class KTooLarge(HypersimpleError, ValueError):
    exit_code = 2
