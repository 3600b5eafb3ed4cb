"""Surface AST for the supported source fragment.

Node equality ignores spans, so parse/print round-trips can be checked with
plain ``==``. The same node set is reused after desugaring: operator and
f-string forms disappear, and all remaining calls target names or ``OpName``
(compiler-generated references to built-in operator functions that cannot be
shadowed by user bindings).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from ..annotations import Annotation
from ..errors import Span

NO_SPAN = Span(0, 0)


def _span_field():
    return field(default=NO_SPAN, compare=False, repr=False)


# --------------------------------------------------------------------------
# expressions


@dataclass(frozen=True)
class Expr:
    pass


@dataclass(frozen=True)
class Name(Expr):
    id: str
    span: Span = _span_field()


@dataclass(frozen=True)
class OpName(Expr):
    """Reference to a built-in operator/helper, immune to user shadowing."""

    id: str
    span: Span = _span_field()


@dataclass(frozen=True)
class ScopedName(Expr):
    """A Name after scope elaboration: resolved to its declaring scope.

    kind is "local" (scope_id names a function scope), "global" (module
    scope), or "builtin" (shipped external; scope_id is -1).
    """

    id: str
    scope_id: int
    kind: str
    span: Span = _span_field()


@dataclass(frozen=True)
class Literal(Expr):
    value: object  # int | float | str | bool | None | Ellipsis
    span: Span = _span_field()


@dataclass(frozen=True)
class FString(Expr):
    parts: tuple  # str segments interleaved with Expr holes
    span: Span = _span_field()


@dataclass(frozen=True)
class TupleDisplay(Expr):
    items: tuple
    span: Span = _span_field()


@dataclass(frozen=True)
class SetDisplay(Expr):
    items: tuple
    span: Span = _span_field()


@dataclass(frozen=True)
class Call(Expr):
    func: Expr
    args: tuple
    span: Span = _span_field()


@dataclass(frozen=True)
class Attribute(Expr):
    value: Expr
    attr: str
    span: Span = _span_field()


@dataclass(frozen=True)
class Subscript(Expr):
    value: Expr
    index: Expr
    span: Span = _span_field()


@dataclass(frozen=True)
class Unary(Expr):
    op: str  # neg pos invert not_
    operand: Expr
    span: Span = _span_field()


@dataclass(frozen=True)
class Binary(Expr):
    op: str  # add sub mul truediv floordiv mod pow matmul lshift rshift bitand bitor bitxor
    left: Expr
    right: Expr
    span: Span = _span_field()


@dataclass(frozen=True)
class Compare(Expr):
    """Comparison chain: first (ops[0]) rest[0] (ops[1]) rest[1] ..."""

    first: Expr
    ops: tuple  # eq ne lt le gt ge is_ is_not contains not_contains
    rest: tuple
    span: Span = _span_field()


@dataclass(frozen=True)
class BoolOp(Expr):
    op: str  # "and" | "or"
    left: Expr
    right: Expr
    span: Span = _span_field()


# --------------------------------------------------------------------------
# statements


@dataclass(frozen=True)
class Stmt:
    pass


@dataclass(frozen=True)
class Assign(Stmt):
    target: Expr  # Name | Attribute | Subscript | TupleDisplay of Names
    value: Expr
    span: Span = _span_field()


@dataclass(frozen=True)
class AugAssign(Stmt):
    target: Expr
    op: str  # iadd isub ... (13 in-place operator names)
    value: Expr
    span: Span = _span_field()


@dataclass(frozen=True)
class ExprStmt(Stmt):
    value: Expr
    span: Span = _span_field()


@dataclass(frozen=True)
class Pass(Stmt):
    span: Span = _span_field()


@dataclass(frozen=True)
class If(Stmt):
    cond: Expr
    body: tuple
    orelse: tuple
    span: Span = _span_field()


@dataclass(frozen=True)
class For(Stmt):
    target: Expr  # Name or TupleDisplay of Names
    iterable: Expr
    body: tuple
    span: Span = _span_field()


@dataclass(frozen=True)
class While(Stmt):
    cond: Expr
    body: tuple
    span: Span = _span_field()


@dataclass(frozen=True)
class Return(Stmt):
    value: Optional[Expr]
    span: Span = _span_field()


@dataclass(frozen=True)
class NestedDef(Stmt):
    """A def statement inside an internal function body (always internal)."""

    function: "SurfaceFunction"
    span: Span = _span_field()


# --------------------------------------------------------------------------
# module structure


@dataclass(frozen=True)
class SurfaceFunction:
    name: str
    params: tuple
    decorators: tuple
    is_async: bool
    body: tuple
    span: Span = _span_field()

    @property
    def is_internal(self) -> bool:
        from ..annotations import INTERNAL_DECORATOR

        return INTERNAL_DECORATOR in self.decorators


@dataclass(frozen=True)
class SurfaceModule:
    functions: tuple  # top-level SurfaceFunction, source order
    module_level_statements: tuple
    # Source order of top-level items, as ("def", index) / ("stmt", index)
    # pairs; needed to rebuild the implicit main body faithfully.
    order: tuple = field(default=(), compare=False, repr=False)

    def internal_functions(self) -> list[SurfaceFunction]:
        return [f for f in self.functions if f.is_internal]

    def external_functions(self) -> list[SurfaceFunction]:
        return [f for f in self.functions if not f.is_internal]


UnaryOps = {"-": "neg", "+": "pos", "~": "invert", "not": "not_"}
BinaryOps = {
    "+": "add", "-": "sub", "*": "mul", "/": "truediv", "//": "floordiv",
    "%": "mod", "**": "pow", "@": "matmul", "<<": "lshift", ">>": "rshift",
    "&": "bitand", "|": "bitor", "^": "bitxor",
}
CompareOps = {
    "==": "eq", "!=": "ne", "<": "lt", "<=": "le", ">": "gt", ">=": "ge",
    "is": "is_", "is not": "is_not", "in": "contains", "not in": "not_contains",
}
AugOps = {
    "+=": "iadd", "-=": "isub", "*=": "imul", "/=": "itruediv",
    "//=": "ifloordiv", "%=": "imod", "**=": "ipow", "@=": "imatmul",
    "<<=": "ilshift", ">>=": "irshift", "&=": "iand", "|=": "ior", "^=": "ixor",
}
