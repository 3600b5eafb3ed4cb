"""Error types shared by the compiler and the runtime."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Span:
    """Half-open source region; line/col are 1-based."""

    line: int
    col: int
    end_line: int = 0
    end_col: int = 0

    def __str__(self) -> str:
        return f"{self.line}:{self.col}"


class OppexError(Exception):
    """Base class for all errors raised by this package."""


class SourceError(OppexError):
    """A compile-time error anchored to a source span."""

    def __init__(self, span: Span, message: str):
        super().__init__(f"{span}: {message}")
        self.span = span
        self.message = message


class SubsetSyntaxError(SourceError):
    """Malformed input text (lexical or grammatical)."""


class UnsupportedConstruct(SourceError):
    """Input is valid Python but outside the supported fragment."""

    def __init__(self, span: Span, construct: str):
        super().__init__(span, f"unsupported construct: {construct}")
        self.construct = construct


class ConflictingAnnotations(SourceError):
    """A function carries more than one role/reordering marker."""


class UnboundName(SourceError):
    """A name use that resolves to no scope at all."""


class InternalCompileError(OppexError):
    """Compiler invariant violation; indicates a bug, not bad input."""


class RuntimeFault(OppexError):
    """Aborts an execution: external-call failure, NameError, bad entry args."""

    def __init__(self, kind: str, message: str):
        super().__init__(f"{kind}: {message}")
        self.kind = kind
        self.fault_message = message


class UnknownExternal(RuntimeFault):
    """External call has no backend binding in the runtime config."""

    def __init__(self, name: str):
        super().__init__("UnknownExternal", f"no backend bound for external '{name}'")
        self.name = name


class DeadlockFault(OppexError):
    """Pending nodes remain with no outstanding externals (interpreter bug)."""


class IncompleteTrace(OppexError):
    """A trace passed to the equivalence checker has unresolved calls."""
