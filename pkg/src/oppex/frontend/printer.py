"""Pretty-printer for surface ASTs (used by --emit surface and round-trip tests)."""

from __future__ import annotations

from . import ast as A

_BIN_SYMBOL = {v: k for k, v in A.BinaryOps.items()}
_CMP_SYMBOL = {v: k for k, v in A.CompareOps.items()}
_UNARY_SYMBOL = {"neg": "-", "pos": "+", "invert": "~", "not_": "not "}
_AUG_SYMBOL = {v: k for k, v in A.AugOps.items()}

# Precedence levels, loosest first; used to parenthesize only when needed.
_LEVEL = {
    "or": 1, "and": 2, "not": 3, "cmp": 4,
    "bitor": 5, "bitxor": 6, "bitand": 7, "shift": 8,
    "arith": 9, "term": 10, "unary": 11, "pow": 12, "postfix": 13, "atom": 14,
}
_BIN_LEVEL = {
    "bitor": "bitor", "bitxor": "bitxor", "bitand": "bitand",
    "lshift": "shift", "rshift": "shift",
    "add": "arith", "sub": "arith",
    "mul": "term", "truediv": "term", "floordiv": "term", "mod": "term", "matmul": "term",
    "pow": "pow",
}


def print_module(module: A.SurfaceModule) -> str:
    chunks: list[str] = []
    fns = module.functions
    stmts = module.module_level_statements
    order = module.order or [("def", i) for i in range(len(fns))] + [
        ("stmt", i) for i in range(len(stmts))
    ]
    for kind, idx in order:
        if kind == "def":
            chunks.append(_print_function(fns[idx], 0))
        else:
            chunks.append(_print_stmt(stmts[idx], 0))
    return "\n".join(chunks) + ("\n" if chunks else "")


def _print_function(fn: A.SurfaceFunction, indent: int) -> str:
    pad = "    " * indent
    lines = [f"{pad}@{d}" for d in fn.decorators]
    prefix = "async def" if fn.is_async else "def"
    lines.append(f"{pad}{prefix} {fn.name}({', '.join(fn.params)}):")
    for stmt in fn.body:
        lines.append(_print_stmt(stmt, indent + 1))
    return "\n".join(lines)


def _print_stmt(stmt: A.Stmt, indent: int) -> str:
    pad = "    " * indent
    if isinstance(stmt, A.Assign):
        return f"{pad}{_expr(stmt.target)} = {_expr(stmt.value)}"
    if isinstance(stmt, A.AugAssign):
        return f"{pad}{_expr(stmt.target)} {_AUG_SYMBOL[stmt.op]} {_expr(stmt.value)}"
    if isinstance(stmt, A.ExprStmt):
        return f"{pad}{_expr(stmt.value)}"
    if isinstance(stmt, A.Pass):
        return f"{pad}pass"
    if isinstance(stmt, A.Return):
        if stmt.value is None:
            return f"{pad}return"
        return f"{pad}return {_expr(stmt.value)}"
    if isinstance(stmt, A.If):
        lines = [f"{pad}if {_expr(stmt.cond)}:"]
        lines += [_print_stmt(s, indent + 1) for s in stmt.body]
        if stmt.orelse:
            lines.append(f"{pad}else:")
            lines += [_print_stmt(s, indent + 1) for s in stmt.orelse]
        return "\n".join(lines)
    if isinstance(stmt, A.For):
        if isinstance(stmt.target, A.TupleDisplay):
            target = ", ".join(_expr(n) for n in stmt.target.items)
        else:
            target = _expr(stmt.target)
        lines = [f"{pad}for {target} in {_expr(stmt.iterable)}:"]
        lines += [_print_stmt(s, indent + 1) for s in stmt.body]
        return "\n".join(lines)
    if isinstance(stmt, A.While):
        lines = [f"{pad}while {_expr(stmt.cond)}:"]
        lines += [_print_stmt(s, indent + 1) for s in stmt.body]
        return "\n".join(lines)
    if isinstance(stmt, A.NestedDef):
        return _print_function(stmt.function, indent)
    raise TypeError(f"unprintable statement {stmt!r}")


def _expr(e: A.Expr, parent_level: int = 0) -> str:
    text, level = _expr_level(e)
    if level < parent_level:
        return f"({text})"
    return text


def _expr_level(e: A.Expr) -> tuple[str, int]:
    if isinstance(e, (A.Name, A.OpName)):
        return e.id, _LEVEL["atom"]
    if isinstance(e, A.ScopedName):
        return e.id, _LEVEL["atom"]
    if isinstance(e, A.Literal):
        if e.value is Ellipsis:
            return "...", _LEVEL["atom"]
        return repr(e.value), _LEVEL["atom"]
    if isinstance(e, A.FString):
        inner = []
        for part in e.parts:
            if isinstance(part, str):
                inner.append(part.replace("{", "{{").replace("}", "}}"))
            else:
                inner.append("{" + _expr(part) + "}")
        body = "".join(inner).replace('"', '\\"')
        return f'f"{body}"', _LEVEL["atom"]
    if isinstance(e, A.TupleDisplay):
        if not e.items:
            return "()", _LEVEL["atom"]
        if len(e.items) == 1:
            return f"({_expr(e.items[0])},)", _LEVEL["atom"]
        return "(" + ", ".join(_expr(i) for i in e.items) + ")", _LEVEL["atom"]
    if isinstance(e, A.SetDisplay):
        return "{" + ", ".join(_expr(i) for i in e.items) + "}", _LEVEL["atom"]
    if isinstance(e, A.Call):
        func = _expr(e.func, _LEVEL["postfix"])
        return f"{func}(" + ", ".join(_expr(a) for a in e.args) + ")", _LEVEL["postfix"]
    if isinstance(e, A.Attribute):
        return f"{_expr(e.value, _LEVEL['postfix'])}.{e.attr}", _LEVEL["postfix"]
    if isinstance(e, A.Subscript):
        return f"{_expr(e.value, _LEVEL['postfix'])}[{_expr(e.index)}]", _LEVEL["postfix"]
    if isinstance(e, A.Unary):
        level = _LEVEL["not"] if e.op == "not_" else _LEVEL["unary"]
        return f"{_UNARY_SYMBOL[e.op]}{_expr(e.operand, level)}", level
    if isinstance(e, A.Binary):
        level = _LEVEL[_BIN_LEVEL[e.op]]
        sym = _BIN_SYMBOL[e.op]
        # Left associative: right operand needs a strictly higher level.
        return (
            f"{_expr(e.left, level)} {sym} {_expr(e.right, level + 1)}",
            level,
        )
    if isinstance(e, A.Compare):
        level = _LEVEL["cmp"]
        pieces = [_expr(e.first, level + 1)]
        for op, operand in zip(e.ops, e.rest):
            pieces.append(_CMP_SYMBOL[op])
            pieces.append(_expr(operand, level + 1))
        return " ".join(pieces), level
    if isinstance(e, A.BoolOp):
        level = _LEVEL[e.op]
        return (
            f"{_expr(e.left, level)} {e.op} {_expr(e.right, level + 1)}",
            level,
        )
    raise TypeError(f"unprintable expression {e!r}")
