"""Pieces shared by the emitters (and the verifier's parsers)."""
from __future__ import annotations

import hashlib
from dataclasses import dataclass

from ..errors import FrameError
from ..model import FrameModel, to_canonical_json, validate_model

DIALECTS = ("opensees_tcl", "sap2000_s2k", "etabs_e2k")
EXTENSIONS = {"opensees_tcl": ".tcl", "sap2000_s2k": ".s2k", "etabs_e2k": ".e2k"}


@dataclass(frozen=True)
class EmittedScript:
    dialect: str
    text: str
    source_digest: str

    @property
    def extension(self) -> str:
        return EXTENSIONS[self.dialect]


def source_digest(model: FrameModel) -> str:
    """Content hash of the model's canonical JSON."""
    return "sha256:" + hashlib.sha256(to_canonical_json(model).encode("ascii")).hexdigest()


def num(v: float) -> str:
    """Shortest round-trip decimal, no negative zero, locale independent."""
    v = float(v)
    return repr(0.0 if v == 0 else v)


def neg(v: float) -> float:
    return 0.0 if v == 0 else -float(v)


# Unit labels as the commercial programs spell them.
FORCE_LABELS = {"kilonewton": "KN", "newton": "N", "kip": "Kip", "pound": "lb"}
LENGTH_LABELS = {"meter": "m", "millimeter": "mm", "foot": "ft", "inch": "in"}


def check_emittable(model: FrameModel) -> None:
    """UNSUPPORTED_FEATURE for anything outside the plane-frame subset."""
    errs = [d for d in validate_model(model) if d.severity == "error"]
    if errs:
        raise FrameError("UNSUPPORTED_FEATURE", "model is not a valid plane frame", diagnostics=errs)


def finish(lines: list[str]) -> str:
    text = "\n".join(lines) + "\n"
    text.encode("ascii")
    return text
