"""Exception hierarchy shared by all judgments."""

from __future__ import annotations

from typing import Optional

from .syntax import Span


class IdxError(Exception):
    """Base class. ``rule`` names the judgment or rule site that failed."""

    kind = "error"

    def __init__(self, message: str, *, rule: Optional[str] = None, span: Optional[Span] = None):
        super().__init__(message)
        self.message = message
        self.rule = rule
        self.span = span

    def with_span(self, span: Optional[Span]) -> "IdxError":
        if self.span is None and span is not None:
            self.span = span
        return self

    def __str__(self) -> str:
        site = f" [{self.rule}]" if self.rule else ""
        return f"{self.kind}: {self.message}{site}"


class ParseError(IdxError):
    kind = "syntax error"

    def __init__(self, message: str, line: int, col: int, expected: frozenset[str] = frozenset()):
        super().__init__(message, span=Span(line, col, line, col))
        self.line = line
        self.col = col
        self.expected = expected

    def __str__(self) -> str:
        exp = f" (expected one of: {', '.join(sorted(self.expected))})" if self.expected else ""
        return f"{self.line}:{self.col}: syntax error: {self.message}{exp}"


class TypeCheckError(IdxError):
    """Any failure of an algorithmic judgment."""

    kind = "type error"


class ScopeError(TypeCheckError):
    kind = "scope error"


class SortError(TypeCheckError):
    kind = "sort error"


class IllFormedType(TypeCheckError):
    kind = "ill-formed type"


class ContextError(TypeCheckError):
    kind = "context error"


class NotEqual(TypeCheckError):
    kind = "not equal"


class OccursCheck(NotEqual):
    kind = "occurs check"


class InstantiationError(TypeCheckError):
    kind = "instantiation error"


class NotEquivalent(TypeCheckError):
    kind = "not equivalent"


class NotSubtype(TypeCheckError):
    kind = "not a subtype"


class TypeMismatch(TypeCheckError):
    kind = "type mismatch"


class CannotSynthesize(TypeCheckError):
    kind = "cannot synthesize"


class NotAFunction(TypeCheckError):
    kind = "not a function"


class NonPrincipalScrutinee(TypeCheckError):
    kind = "non-principal scrutinee"


class PatternMismatch(TypeCheckError):
    kind = "pattern mismatch"


class CoverageError(TypeCheckError):
    kind = "coverage failure"


class FuelExhausted(Exception):
    """The declarative oracle ran out of fuel; the answer is unknown."""
