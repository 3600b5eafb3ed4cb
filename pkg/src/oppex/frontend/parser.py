"""Recursive-descent parser for the source fragment.

Anything outside the fragment is rejected with UnsupportedConstruct naming
the offending construct; parsing never silently degrades.
"""

from __future__ import annotations

from ..annotations import (
    INTERNAL_DECORATOR,
    RECOGNIZED_DECORATORS,
    REORDER_DECORATORS,
    Annotation,
)
from ..errors import (
    ConflictingAnnotations,
    Span,
    SubsetSyntaxError,
    UnsupportedConstruct,
)
from . import ast as A
from .tokens import FORBIDDEN_KEYWORDS, Token, tokenize

_AUG_TOKENS = set(A.AugOps)
_COMPARE_TOKENS = {"==", "!=", "<", "<=", ">", ">="}


class Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    # -- cursor helpers ----------------------------------------------------

    def peek(self, offset: int = 0) -> Token:
        i = min(self.pos + offset, len(self.tokens) - 1)
        return self.tokens[i]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "EOF":
            self.pos += 1
        return tok

    def at(self, kind: str, value=None) -> bool:
        tok = self.peek()
        return tok.kind == kind and (value is None or tok.value == value)

    def accept(self, kind: str, value=None):
        if self.at(kind, value):
            return self.next()
        return None

    def expect(self, kind: str, value=None) -> Token:
        tok = self.peek()
        if not self.at(kind, value):
            want = value if value is not None else kind
            raise SubsetSyntaxError(tok.span, f"expected {want!r}, found {self._describe(tok)}")
        return self.next()

    @staticmethod
    def _describe(tok: Token) -> str:
        if tok.kind == "EOF":
            return "end of input"
        return repr(tok.value)

    def unsupported(self, span: Span, construct: str):
        raise UnsupportedConstruct(span, construct)

    # -- module ------------------------------------------------------------

    def parse_module(self) -> A.SurfaceModule:
        functions: list[A.SurfaceFunction] = []
        stmts: list[A.Stmt] = []
        order: list[tuple] = []
        while not self.at("EOF"):
            if self.at("NEWLINE"):
                self.next()
                continue
            if self._at_function_start():
                fn = self.parse_function(top_level=True)
                order.append(("def", len(functions)))
                functions.append(fn)
            else:
                stmt = self.parse_statement()
                order.append(("stmt", len(stmts)))
                stmts.append(stmt)
        return A.SurfaceModule(tuple(functions), tuple(stmts), tuple(order))

    def _at_function_start(self) -> bool:
        return (
            self.at("OP", "@")
            or self.at("KEYWORD", "def")
            or (self.at("KEYWORD", "async") and self.peek(1).value == "def")
        )

    # -- functions ----------------------------------------------------------

    def parse_function(self, top_level: bool) -> A.SurfaceFunction:
        decorators = []
        start = self.peek().span
        while self.at("OP", "@"):
            self.next()
            name_tok = self.expect("NAME")
            if name_tok.value not in RECOGNIZED_DECORATORS:
                self.unsupported(name_tok.span, f"decorator @{name_tok.value}")
            decorators.append(name_tok.value)
            self.expect("NEWLINE")
        is_async = bool(self.accept("KEYWORD", "async"))
        self.expect("KEYWORD", "def")
        name = self.expect("NAME").value
        self.expect("OP", "(")
        params = []
        while not self.at("OP", ")"):
            tok = self.peek()
            if tok.kind == "OP" and tok.value in ("*", "**"):
                self.unsupported(tok.span, "starred parameter")
            p = self.expect("NAME").value
            if self.at("OP", "="):
                self.unsupported(self.peek().span, "default parameter value")
            params.append(p)
            if not self.accept("OP", ","):
                break
        self.expect("OP", ")")
        self.expect("OP", ":")
        body = self.parse_block()
        fn = A.SurfaceFunction(
            name, tuple(params), tuple(decorators), is_async, tuple(body), start
        )
        self._validate_function(fn, top_level)
        return fn

    def _validate_function(self, fn: A.SurfaceFunction, top_level: bool):
        role_markers = [d for d in fn.decorators if d == INTERNAL_DECORATOR]
        reorder_markers = [d for d in fn.decorators if d in REORDER_DECORATORS]
        if len(reorder_markers) > 1 or (role_markers and reorder_markers):
            raise ConflictingAnnotations(
                fn.span, f"function '{fn.name}' carries conflicting markers: {fn.decorators}"
            )
        if not top_level:
            if fn.decorators:
                self.unsupported(fn.span, "decorator on nested function")
            if fn.is_async:
                self.unsupported(fn.span, "async nested function")
            self._check_return_position(fn)
            return
        is_internal = bool(role_markers)
        body_is_ellipsis = len(fn.body) == 1 and (
            isinstance(fn.body[0], A.ExprStmt)
            and isinstance(fn.body[0].value, A.Literal)
            and fn.body[0].value.value is Ellipsis
        )
        if is_internal:
            if fn.is_async:
                self.unsupported(fn.span, "async internal function")
            self._check_return_position(fn)
        else:
            # External (explicitly annotated, or unannotated => @sequential).
            if not body_is_ellipsis:
                if not fn.decorators:
                    self.unsupported(
                        fn.span,
                        f"undecorated function '{fn.name}' with a real body (missing @poppy?)",
                    )
                self.unsupported(
                    fn.span, f"external function '{fn.name}' body must be '...'"
                )

    def _check_return_position(self, fn: A.SurfaceFunction):
        """return may appear only as the final statement of the body."""

        def visit(block, is_function_body: bool):
            for i, stmt in enumerate(block):
                if isinstance(stmt, A.Return):
                    if not (is_function_body and i == len(block) - 1):
                        self.unsupported(stmt.span, "return (except at the end of a function)")
                elif isinstance(stmt, A.If):
                    visit(stmt.body, False)
                    visit(stmt.orelse, False)
                elif isinstance(stmt, (A.For, A.While)):
                    visit(stmt.body, False)
                elif isinstance(stmt, A.NestedDef):
                    visit(stmt.function.body, True)

        visit(fn.body, True)

    # -- statements ----------------------------------------------------------

    def parse_block(self) -> list[A.Stmt]:
        if not self.at("NEWLINE"):
            # Inline suite after the colon, e.g. `def f(): ...`
            stmt = self.parse_simple_statement()
            end = self.accept("NEWLINE")
            del end
            return [stmt]
        self.next()
        self.expect("INDENT")
        stmts = []
        while not self.at("DEDENT") and not self.at("EOF"):
            if self.at("NEWLINE"):
                self.next()
                continue
            stmts.append(self.parse_statement())
        self.expect("DEDENT")
        if not stmts:
            raise SubsetSyntaxError(self.peek().span, "empty block")
        return stmts

    def parse_statement(self) -> A.Stmt:
        tok = self.peek()
        if tok.kind == "KEYWORD":
            if tok.value in FORBIDDEN_KEYWORDS:
                self.unsupported(tok.span, tok.value)
            if tok.value == "if":
                return self.parse_if()
            if tok.value == "for":
                return self.parse_for()
            if tok.value == "while":
                return self.parse_while()
            if tok.value == "def" or (tok.value == "async" and self.peek(1).value == "def"):
                fn = self.parse_function(top_level=False)
                return A.NestedDef(fn, fn.span)
            if tok.value == "pass":
                self.next()
                self.expect("NEWLINE")
                return A.Pass(tok.span)
            if tok.value == "return":
                self.next()
                value = None
                if not self.at("NEWLINE"):
                    value = self.parse_expr_or_tuple()
                self.expect("NEWLINE")
                return A.Return(value, tok.span)
        stmt = self.parse_simple_statement()
        self.expect("NEWLINE")
        return stmt

    def parse_simple_statement(self) -> A.Stmt:
        tok = self.peek()
        if tok.kind == "KEYWORD" and tok.value in FORBIDDEN_KEYWORDS:
            self.unsupported(tok.span, tok.value)
        if tok.kind == "KEYWORD" and tok.value == "pass":
            self.next()
            return A.Pass(tok.span)
        expr = self.parse_expr_or_tuple()
        nxt = self.peek()
        if nxt.kind == "OP" and nxt.value == "=":
            self.next()
            if self.at("OP", "="):
                self.unsupported(nxt.span, "chained assignment")
            value = self.parse_expr_or_tuple()
            if self.at("OP", "="):
                self.unsupported(self.peek().span, "chained assignment")
            self._validate_target(expr)
            return A.Assign(expr, value, tok.span)
        if nxt.kind == "OP" and nxt.value in _AUG_TOKENS:
            self.next()
            value = self.parse_expr_or_tuple()
            self._validate_target(expr, augmented=True)
            return A.AugAssign(expr, A.AugOps[nxt.value], value, tok.span)
        return A.ExprStmt(expr, tok.span)

    def _validate_target(self, target: A.Expr, augmented: bool = False):
        if isinstance(target, A.Name):
            return
        if isinstance(target, (A.Attribute, A.Subscript)):
            return
        if isinstance(target, A.TupleDisplay) and not augmented:
            for item in target.items:
                if not isinstance(item, A.Name):
                    self.unsupported(
                        getattr(item, "span", target.span), "non-name in tuple assignment target"
                    )
            return
        span = getattr(target, "span", A.NO_SPAN)
        self.unsupported(span, "assignment target")

    def parse_if(self) -> A.If:
        start = self.expect("KEYWORD", "if").span
        cond = self.parse_expression()
        self.expect("OP", ":")
        body = self.parse_block()
        orelse: list[A.Stmt] = []
        if self.at("KEYWORD", "elif"):
            elif_tok = self.peek()
            # Rewrite elif as a nested if in the else block.
            self.tokens[self.pos] = Token("KEYWORD", "if", elif_tok.span)
            orelse = [self.parse_if()]
        elif self.accept("KEYWORD", "else"):
            self.expect("OP", ":")
            orelse = self.parse_block()
        return A.If(cond, tuple(body), tuple(orelse), start)

    def parse_for(self) -> A.For:
        start = self.expect("KEYWORD", "for").span
        target = self.parse_for_target()
        self.expect("KEYWORD", "in")
        iterable = self.parse_expression()
        self.expect("OP", ":")
        body = self.parse_block()
        return A.For(target, iterable, tuple(body), start)

    def parse_for_target(self) -> A.Expr:
        paren = self.accept("OP", "(")
        names = [self._for_target_name()]
        while self.accept("OP", ","):
            if self.at("KEYWORD", "in") or self.at("OP", ")"):
                break
            names.append(self._for_target_name())
        if paren:
            self.expect("OP", ")")
        if len(names) == 1 and not paren:
            return names[0]
        return A.TupleDisplay(tuple(names), names[0].span)

    def _for_target_name(self) -> A.Name:
        tok = self.expect("NAME")
        return A.Name(tok.value, tok.span)

    def parse_while(self) -> A.While:
        start = self.expect("KEYWORD", "while").span
        cond = self.parse_expression()
        self.expect("OP", ":")
        body = self.parse_block()
        return A.While(cond, tuple(body), start)

    # -- expressions ---------------------------------------------------------

    def parse_expr_or_tuple(self) -> A.Expr:
        first = self.parse_expression()
        if not self.at("OP", ","):
            return first
        items = [first]
        while self.accept("OP", ","):
            if self.at("NEWLINE") or self.at("OP", "=") or self.at("EOF"):
                break
            items.append(self.parse_expression())
        return A.TupleDisplay(tuple(items), first.span)

    def parse_expression(self) -> A.Expr:
        return self.parse_or()

    def parse_or(self) -> A.Expr:
        left = self.parse_and()
        while self.at("KEYWORD", "or"):
            span = self.next().span
            left = A.BoolOp("or", left, self.parse_and(), span)
        return left

    def parse_and(self) -> A.Expr:
        left = self.parse_not()
        while self.at("KEYWORD", "and"):
            span = self.next().span
            left = A.BoolOp("and", left, self.parse_not(), span)
        return left

    def parse_not(self) -> A.Expr:
        if self.at("KEYWORD", "not"):
            span = self.next().span
            return A.Unary("not_", self.parse_not(), span)
        return self.parse_comparison()

    def parse_comparison(self) -> A.Expr:
        first = self.parse_bitor()
        ops: list[str] = []
        rest: list[A.Expr] = []
        while True:
            tok = self.peek()
            op = None
            if tok.kind == "OP" and tok.value in _COMPARE_TOKENS:
                self.next()
                op = A.CompareOps[tok.value]
            elif tok.kind == "KEYWORD" and tok.value == "in":
                self.next()
                op = "contains"
            elif tok.kind == "KEYWORD" and tok.value == "is":
                self.next()
                op = "is_not" if self.accept("KEYWORD", "not") else "is_"
            elif (
                tok.kind == "KEYWORD"
                and tok.value == "not"
                and self.peek(1).kind == "KEYWORD"
                and self.peek(1).value == "in"
            ):
                self.next()
                self.next()
                op = "not_contains"
            if op is None:
                break
            ops.append(op)
            rest.append(self.parse_bitor())
        if not ops:
            return first
        return A.Compare(first, tuple(ops), tuple(rest), first.span)

    def _binary_level(self, sub, table: dict):
        def parse() -> A.Expr:
            left = sub()
            while True:
                tok = self.peek()
                if tok.kind == "OP" and tok.value in table:
                    self.next()
                    left = A.Binary(table[tok.value], left, sub(), tok.span)
                else:
                    return left

        return parse

    def parse_bitor(self) -> A.Expr:
        return self._binary_level(self.parse_bitxor, {"|": "bitor"})()

    def parse_bitxor(self) -> A.Expr:
        return self._binary_level(self.parse_bitand, {"^": "bitxor"})()

    def parse_bitand(self) -> A.Expr:
        return self._binary_level(self.parse_shift, {"&": "bitand"})()

    def parse_shift(self) -> A.Expr:
        return self._binary_level(
            self.parse_arith, {"<<": "lshift", ">>": "rshift"}
        )()

    def parse_arith(self) -> A.Expr:
        return self._binary_level(self.parse_term, {"+": "add", "-": "sub"})()

    def parse_term(self) -> A.Expr:
        return self._binary_level(
            self.parse_factor,
            {"*": "mul", "/": "truediv", "//": "floordiv", "%": "mod", "@": "matmul"},
        )()

    def parse_factor(self) -> A.Expr:
        tok = self.peek()
        if tok.kind == "OP" and tok.value in ("-", "+", "~"):
            self.next()
            return A.Unary(A.UnaryOps[tok.value], self.parse_factor(), tok.span)
        return self.parse_power()

    def parse_power(self) -> A.Expr:
        base = self.parse_postfix()
        if self.at("OP", "**"):
            span = self.next().span
            return A.Binary("pow", base, self.parse_factor(), span)
        return base

    def parse_postfix(self) -> A.Expr:
        expr = self.parse_atom()
        while True:
            tok = self.peek()
            if tok.kind == "OP" and tok.value == "(":
                self.next()
                args = []
                while not self.at("OP", ")"):
                    if self.peek().kind == "OP" and self.peek().value in ("*", "**"):
                        self.unsupported(self.peek().span, "starred call argument")
                    arg = self.parse_expression()
                    if self.at("OP", "="):
                        self.unsupported(self.peek().span, "keyword argument")
                    args.append(arg)
                    if not self.accept("OP", ","):
                        break
                self.expect("OP", ")")
                expr = A.Call(expr, tuple(args), tok.span)
            elif tok.kind == "OP" and tok.value == ".":
                self.next()
                attr = self.expect("NAME")
                expr = A.Attribute(expr, attr.value, tok.span)
            elif tok.kind == "OP" and tok.value == "[":
                self.next()
                if self.at("OP", ":"):
                    self.unsupported(tok.span, "slice")
                index = self.parse_expression()
                if self.at("OP", ":"):
                    self.unsupported(self.peek().span, "slice")
                self.expect("OP", "]")
                expr = A.Subscript(expr, index, tok.span)
            else:
                return expr

    def parse_atom(self) -> A.Expr:
        tok = self.peek()
        if tok.kind == "NAME":
            self.next()
            return A.Name(tok.value, tok.span)
        if tok.kind == "NUMBER":
            self.next()
            return A.Literal(tok.value, tok.span)
        if tok.kind == "STRING":
            self.next()
            return A.Literal(tok.value, tok.span)
        if tok.kind == "FSTRING":
            self.next()
            return self._parse_fstring(tok)
        if tok.kind == "KEYWORD" and tok.value in ("True", "False", "None"):
            self.next()
            value = {"True": True, "False": False, "None": None}[tok.value]
            return A.Literal(value, tok.span)
        if tok.kind == "KEYWORD" and tok.value in FORBIDDEN_KEYWORDS:
            self.unsupported(tok.span, tok.value)
        if tok.kind == "OP" and tok.value == "...":
            self.next()
            return A.Literal(Ellipsis, tok.span)
        if tok.kind == "OP" and tok.value == "(":
            self.next()
            if self.accept("OP", ")"):
                return A.TupleDisplay((), tok.span)
            first = self.parse_expression()
            if self.at("OP", ","):
                items = [first]
                while self.accept("OP", ","):
                    if self.at("OP", ")"):
                        break
                    items.append(self.parse_expression())
                self.expect("OP", ")")
                return A.TupleDisplay(tuple(items), tok.span)
            self.expect("OP", ")")
            return first
        if tok.kind == "OP" and tok.value == "{":
            self.next()
            if self.at("OP", "}"):
                self.unsupported(tok.span, "dict display")
            items = [self.parse_expression()]
            if self.at("OP", ":"):
                self.unsupported(self.peek().span, "dict display")
            while self.accept("OP", ","):
                if self.at("OP", "}"):
                    break
                items.append(self.parse_expression())
            self.expect("OP", "}")
            return A.SetDisplay(tuple(items), tok.span)
        raise SubsetSyntaxError(tok.span, f"unexpected {self._describe(tok)}")

    def _parse_fstring(self, tok: Token) -> A.FString:
        raw = tok.value
        parts: list = []
        buf: list[str] = []
        i = 0
        while i < len(raw):
            c = raw[i]
            if c == "{":
                if raw.startswith("{{", i):
                    buf.append("{")
                    i += 2
                    continue
                depth = 1
                j = i + 1
                while j < len(raw) and depth:
                    if raw[j] == "{":
                        depth += 1
                    elif raw[j] == "}":
                        depth -= 1
                    j += 1
                if depth:
                    raise SubsetSyntaxError(tok.span, "unterminated '{' in f-string")
                hole_src = raw[i + 1 : j - 1]
                if ":" in hole_src or "!" in hole_src:
                    self.unsupported(tok.span, "f-string format specifier")
                if buf:
                    parts.append(_apply_escapes("".join(buf)))
                    buf = []
                parts.append(_parse_embedded_expr(hole_src, tok.span))
                i = j
            elif c == "}":
                if raw.startswith("}}", i):
                    buf.append("}")
                    i += 2
                    continue
                raise SubsetSyntaxError(tok.span, "single '}' in f-string")
            elif c == "\\":
                buf.append(raw[i : i + 2])
                i += 2
            else:
                buf.append(c)
                i += 1
        if buf:
            parts.append(_apply_escapes("".join(buf)))
        return A.FString(tuple(parts), tok.span)


def _apply_escapes(text: str) -> str:
    out: list[str] = []
    i = 0
    from .tokens import _ESCAPES

    while i < len(text):
        if text[i] == "\\" and i + 1 < len(text):
            out.append(_ESCAPES.get(text[i + 1], text[i + 1]))
            i += 2
        else:
            out.append(text[i])
            i += 1
    return "".join(out)


def _parse_embedded_expr(source: str, span: Span) -> A.Expr:
    toks = tokenize(source)
    parser = Parser(toks)
    expr = parser.parse_expression()
    if not parser.at("NEWLINE") and not parser.at("EOF"):
        raise SubsetSyntaxError(span, "trailing tokens in f-string hole")
    return expr


def parse_module(source_text: str) -> A.SurfaceModule:
    """Parse orchestration source text into a SurfaceModule."""
    return Parser(tokenize(source_text)).parse_module()


def annotation_of(fn: A.SurfaceFunction) -> tuple[Annotation, bool]:
    """Reordering annotation of an external function, plus its async flag.

    Defaults to Sequential when no reordering decorator is present.
    """
    if fn.is_internal:
        raise ValueError(f"'{fn.name}' is internal, not external")
    markers = [REORDER_DECORATORS[d] for d in fn.decorators if d in REORDER_DECORATORS]
    if len(markers) > 1:
        raise ConflictingAnnotations(fn.span, f"'{fn.name}': {fn.decorators}")
    return (markers[0] if markers else Annotation.SEQUENTIAL), fn.is_async
