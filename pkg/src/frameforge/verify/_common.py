"""Diagnostic collection shared by the dialect parsers."""
from __future__ import annotations

import math

from ..errors import Diagnostic, FrameError


def to_float(tok: str) -> float | None:
    try:
        v = float(tok)
    except ValueError:
        return None
    return v if math.isfinite(v) else None


class Collector:
    """Accumulates parse diagnostics; a parser returns nothing if any exist."""

    def __init__(self):
        self.items: list[Diagnostic] = []

    def add(self, code: str, line: int, message: str):
        self.items.append(Diagnostic(code, message, line=line))

    def syntax(self, line: int, message: str):
        self.add("DIALECT_SYNTAX_ERROR", line, message)

    def duplicate(self, line: int, what: str):
        self.add("DUPLICATE_DEFINITION", line, f"{what} defined twice")

    def undefined(self, line: int, message: str):
        self.add("UNDEFINED_REFERENCE", line, message)

    def raise_if_any(self):
        if self.items:
            first = self.items[0]
            raise FrameError(first.code, first.message, line=first.line, diagnostics=self.items)
