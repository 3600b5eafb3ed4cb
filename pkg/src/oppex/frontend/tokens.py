"""Indentation-aware tokenizer for the orchestration source fragment.

Emits an explicit INDENT/DEDENT token stream. Tabs in indentation are
rejected outright; inside brackets, newlines and indentation are ignored.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import Span, SubsetSyntaxError

KEYWORDS = {
    "def", "return", "if", "elif", "else", "for", "while", "in",
    "not", "and", "or", "is", "pass", "async",
    "True", "False", "None",
}

# Keywords we must recognize so the parser can reject them by name.
FORBIDDEN_KEYWORDS = {
    "break", "continue", "raise", "try", "except", "finally", "lambda",
    "class", "global", "nonlocal", "import", "from", "with", "del",
    "assert", "yield", "await", "match", "case",
}

# Longest-match-first operator table.
_OPERATORS = [
    "...",
    "**=", "//=", "<<=", ">>=",
    "==", "!=", "<=", ">=", "<<", ">>", "**", "//",
    "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "@=",
    "->",
    "+", "-", "*", "/", "%", "@", "&", "|", "^", "~",
    "<", ">", "=", "(", ")", "[", "]", "{", "}", ",", ":", ".", ";",
]

_OPENERS = {"(", "[", "{"}
_CLOSERS = {")": "(", "]": "[", "}": "{"}


@dataclass(frozen=True)
class Token:
    kind: str  # NAME KEYWORD NUMBER STRING FSTRING OP NEWLINE INDENT DEDENT EOF
    value: object
    span: Span

    def __repr__(self) -> str:
        return f"Token({self.kind}, {self.value!r}, {self.span})"


def _is_name_start(c: str) -> bool:
    return c.isalpha() or c == "_"


def _is_name_char(c: str) -> bool:
    return c.isalnum() or c == "_"


class Tokenizer:
    def __init__(self, source: str):
        self.source = source
        self.pos = 0
        self.line = 1
        self.col = 1
        self.tokens: list[Token] = []
        self.indents = [0]
        self.bracket_stack: list[str] = []
        self.at_line_start = True

    def error(self, message: str) -> SubsetSyntaxError:
        return SubsetSyntaxError(Span(self.line, self.col, self.line, self.col), message)

    def _peek(self, offset: int = 0) -> str:
        i = self.pos + offset
        return self.source[i] if i < len(self.source) else ""

    def _advance(self, n: int = 1) -> str:
        text = self.source[self.pos : self.pos + n]
        for c in text:
            if c == "\n":
                self.line += 1
                self.col = 1
            else:
                self.col += 1
        self.pos += n
        return text

    def _emit(self, kind: str, value, start_line: int, start_col: int):
        self.tokens.append(
            Token(kind, value, Span(start_line, start_col, self.line, self.col))
        )

    def tokenize(self) -> list[Token]:
        while self.pos < len(self.source):
            if self.at_line_start and not self.bracket_stack:
                if not self._handle_indentation():
                    continue  # blank or comment-only line consumed
                self.at_line_start = False
            self._scan_logical()
        # Close the final logical line and any open blocks.
        if self.tokens and self.tokens[-1].kind not in ("NEWLINE", "INDENT", "DEDENT"):
            self._emit("NEWLINE", None, self.line, self.col)
        while len(self.indents) > 1:
            self.indents.pop()
            self._emit("DEDENT", None, self.line, self.col)
        if self.bracket_stack:
            raise self.error(f"unclosed '{self.bracket_stack[-1]}'")
        self._emit("EOF", None, self.line, self.col)
        return self.tokens

    def _handle_indentation(self) -> bool:
        """Measure leading whitespace; returns False if the line is blank."""
        start = self.pos
        width = 0
        while True:
            c = self._peek()
            if c == " ":
                self._advance()
                width += 1
            elif c == "\t":
                raise self.error("tab in indentation (spaces only)")
            else:
                break
        c = self._peek()
        if c == "" or c == "\n" or c == "#":
            # Blank/comment line: consume through the newline, emit nothing.
            while self._peek() and self._peek() != "\n":
                self._advance()
            if self._peek() == "\n":
                self._advance()
            return False
        if width > self.indents[-1]:
            self.indents.append(width)
            self._emit("INDENT", None, self.line, self.col)
        else:
            while width < self.indents[-1]:
                self.indents.pop()
                self._emit("DEDENT", None, self.line, self.col)
            if width != self.indents[-1]:
                raise self.error("unindent does not match any outer indentation level")
        del start
        return True

    def _scan_logical(self):
        c = self._peek()
        if c == "":
            return
        if c == "\n":
            self._advance()
            if self.bracket_stack:
                return
            if self.tokens and self.tokens[-1].kind not in ("NEWLINE", "INDENT", "DEDENT"):
                self._emit("NEWLINE", None, self.line, self.col)
            self.at_line_start = True
            return
        if c in " \t":
            self._advance()
            return
        if c == "#":
            while self._peek() and self._peek() != "\n":
                self._advance()
            return
        if c == "\\" and self._peek(1) == "\n":
            self._advance(2)
            return
        line, col = self.line, self.col
        if _is_name_start(c):
            self._scan_name(line, col)
        elif c.isdigit() or (c == "." and self._peek(1).isdigit()):
            self._scan_number(line, col)
        elif c in "'\"":
            text = self._scan_string_body()
            self._emit("STRING", text, line, col)
        else:
            self._scan_operator(line, col)

    def _scan_name(self, line: int, col: int):
        start = self.pos
        while _is_name_char(self._peek()):
            self._advance()
        name = self.source[start : self.pos]
        if name == "f" and self._peek() in "'\"":
            raw = self._scan_string_body(raw_inner=True)
            self._emit("FSTRING", raw, line, col)
        elif name in KEYWORDS or name in FORBIDDEN_KEYWORDS:
            self._emit("KEYWORD", name, line, col)
        else:
            self._emit("NAME", name, line, col)

    def _scan_number(self, line: int, col: int):
        start = self.pos
        while self._peek().isdigit():
            self._advance()
        is_float = False
        if self._peek() == "." and self._peek(1) != ".":
            is_float = True
            self._advance()
            while self._peek().isdigit():
                self._advance()
        if self._peek() in "eE" and (
            self._peek(1).isdigit() or (self._peek(1) in "+-" and self._peek(2).isdigit())
        ):
            is_float = True
            self._advance()
            if self._peek() in "+-":
                self._advance()
            while self._peek().isdigit():
                self._advance()
        text = self.source[start : self.pos]
        self._emit("NUMBER", float(text) if is_float else int(text), line, col)

    def _scan_string_body(self, raw_inner: bool = False) -> str:
        quote = self._advance()
        if self._peek() == quote and self._peek(1) == quote:
            raise self.error("triple-quoted strings are not supported")
        parts: list[str] = []
        while True:
            c = self._peek()
            if c == "" or c == "\n":
                raise self.error("unterminated string literal")
            if c == quote:
                self._advance()
                break
            if c == "\\" and not raw_inner:
                self._advance()
                esc = self._advance()
                parts.append(_ESCAPES.get(esc, esc))
            elif c == "\\" and raw_inner:
                # Keep escapes verbatim; f-string hole parsing handles them.
                parts.append(self._advance())
                if self._peek():
                    parts.append(self._advance())
            else:
                parts.append(self._advance())
        return "".join(parts)

    def _scan_operator(self, line: int, col: int):
        for op in _OPERATORS:
            if self.source.startswith(op, self.pos):
                self._advance(len(op))
                if op in _OPENERS:
                    self.bracket_stack.append(op)
                elif op in _CLOSERS:
                    if not self.bracket_stack or self.bracket_stack[-1] != _CLOSERS[op]:
                        raise self.error(f"unmatched '{op}'")
                    self.bracket_stack.pop()
                self._emit("OP", op, line, col)
                return
        raise self.error(f"unexpected character {self._peek()!r}")


_ESCAPES = {"n": "\n", "t": "\t", "r": "\r", "\\": "\\", "'": "'", '"': '"', "0": "\0"}


def tokenize(source: str) -> list[Token]:
    return Tokenizer(source).tokenize()
