"""Reordering annotations for external calls.

Shared between the frontend (which reads them off decorators) and the
concurrency controller (which enforces them at dispatch time).
"""

from __future__ import annotations

import enum


class Annotation(enum.Enum):
    SEQUENTIAL = "sequential"
    READONLY = "readonly"
    UNORDERED = "unordered"

    @property
    def rank(self) -> int:
        """Permissiveness: SEQUENTIAL < READONLY < UNORDERED."""
        return _RANK[self]

    def __lt__(self, other: "Annotation") -> bool:
        return self.rank < other.rank


_RANK = {
    Annotation.SEQUENTIAL: 0,
    Annotation.READONLY: 1,
    Annotation.UNORDERED: 2,
}

INTERNAL_DECORATOR = "poppy"
REORDER_DECORATORS = {
    "sequential": Annotation.SEQUENTIAL,
    "readonly": Annotation.READONLY,
    "unordered": Annotation.UNORDERED,
}
RECOGNIZED_DECORATORS = {INTERNAL_DECORATOR, *REORDER_DECORATORS}
