"""Script emitters for OpenSees (Tcl), SAP2000 (S2K) and ETABS (E2K)."""
from __future__ import annotations

from ..model import FrameModel
from ..stories import to_story_model
from .base import DIALECTS, EXTENSIONS, EmittedScript, check_emittable, source_digest
from .etabs import emit_etabs
from .opensees import emit_opensees
from .sap2000 import emit_sap2000


def emit(model: FrameModel, dialect: str, *, name: str = "frame") -> EmittedScript:
    """Emit ``model`` in one of :data:`DIALECTS`; ``name`` only appears in header comments."""
    if dialect == "opensees_tcl":
        return emit_opensees(model, name=name)
    if dialect == "sap2000_s2k":
        return emit_sap2000(model, name=name)
    if dialect == "etabs_e2k":
        check_emittable(model)
        return emit_etabs(to_story_model(model), name=name, digest=source_digest(model))
    raise ValueError(f"unknown dialect {dialect!r}")


__all__ = ["DIALECTS", "EXTENSIONS", "EmittedScript", "emit", "emit_etabs", "emit_opensees",
           "emit_sap2000", "source_digest"]
