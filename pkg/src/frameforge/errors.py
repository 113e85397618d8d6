"""Diagnostics and the exception type shared by every pipeline stage."""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Diagnostic:
    """One machine-readable finding.

    ``code`` is a stable upper-case identifier (``DANGLING_NODE_REF``,
    ``SYNTAX_ERROR``...), ``subject`` names the offending object when
    there is one (``"element 7"``), and ``line``/``column`` are 1-based
    positions for text inputs.
    """

    code: str
    message: str
    severity: str = "error"
    subject: str | None = None
    line: int | None = None
    column: int | None = None

    def __str__(self) -> str:
        where = ""
        if self.line is not None:
            where = f"line {self.line}"
            if self.column is not None:
                where += f", column {self.column}"
            where += ": "
        subj = f" [{self.subject}]" if self.subject else ""
        return f"{self.severity} {self.code}{subj}: {where}{self.message}"

    def to_dict(self) -> dict:
        return {k: v for k, v in self.__dict__.items() if v is not None}


class FrameError(Exception):
    """Raised when a stage cannot produce its output.

    Carries the primary ``code`` plus every diagnostic collected before
    giving up, so callers can print them all.
    """

    def __init__(self, code: str, message: str, *, line: int | None = None,
                 column: int | None = None, subject: str | None = None,
                 diagnostics: list[Diagnostic] | tuple[Diagnostic, ...] = ()):
        self.code = code
        self.line = line
        self.column = column
        self.subject = subject
        if not diagnostics:
            diagnostics = [Diagnostic(code, message, subject=subject, line=line, column=column)]
        self.diagnostics = list(diagnostics)
        super().__init__(str(self.diagnostics[0]) if len(self.diagnostics) == 1
                         else f"{code}: {message}")


class FrameWarning(UserWarning):
    """Non-fatal diagnostic surfaced through :mod:`warnings`."""

    def __init__(self, diagnostic: Diagnostic):
        self.diagnostic = diagnostic
        super().__init__(str(diagnostic))


def errors_only(diagnostics):
    return [d for d in diagnostics if d.severity == "error"]
