"""oppex: out-of-order compiler and runtime for sequential orchestration programs.

Programs are written in a Python-syntax subset with annotated external calls.
The compiler lowers them through a sequential ANF IR (Bezoar) into a minimal
functional calculus, and the runtime evaluates that calculus opportunistically,
dispatching independent external calls in parallel while preserving the
sequential trace semantics modulo annotation-permitted reorderings.
"""

from .annotations import Annotation
from .errors import (
    ConflictingAnnotations,
    DeadlockFault,
    IncompleteTrace,
    InternalCompileError,
    OppexError,
    RuntimeFault,
    SubsetSyntaxError,
    UnboundName,
    UnknownExternal,
    UnsupportedConstruct,
)

__all__ = [
    "Annotation",
    "OppexError",
    "SubsetSyntaxError",
    "UnsupportedConstruct",
    "ConflictingAnnotations",
    "UnboundName",
    "InternalCompileError",
    "RuntimeFault",
    "UnknownExternal",
    "DeadlockFault",
    "IncompleteTrace",
]

__version__ = "0.1.0"
