"""Parse emitted scripts back into models and compare them with the source IR."""
from __future__ import annotations

from ..model import FrameModel
from ..stories import from_story_model
from .equivalence import EquivalenceReport, models_equivalent
from .etabs import parse_etabs
from .opensees import parse_opensees
from .sap2000 import parse_sap2000

DIALECT_OF_EXTENSION = {".tcl": "opensees_tcl", ".s2k": "sap2000_s2k", ".e2k": "etabs_e2k"}


def parse_script(text: str, dialect: str) -> FrameModel:
    """Parse any dialect to a FrameModel (E2K goes through the story mapping)."""
    if dialect == "opensees_tcl":
        return parse_opensees(text)
    if dialect == "sap2000_s2k":
        return parse_sap2000(text)
    if dialect == "etabs_e2k":
        return from_story_model(parse_etabs(text))
    raise ValueError(f"unknown dialect {dialect!r}")


__all__ = ["DIALECT_OF_EXTENSION", "EquivalenceReport", "models_equivalent", "parse_etabs",
           "parse_opensees", "parse_sap2000", "parse_script"]
