"""Frontend: tokenizer, parser, and surface AST for the source fragment."""

from . import ast
from .parser import annotation_of, parse_module
from .printer import print_module
from .tokens import tokenize

__all__ = ["ast", "parse_module", "annotation_of", "print_module", "tokenize"]
