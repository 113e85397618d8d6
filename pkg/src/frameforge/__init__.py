"""Deterministic compiler from plane-frame problem templates to OpenSees, SAP2000 and ETABS scripts.

Pipeline: ``.frame`` template -> :class:`FrameModel` (canonical JSON IR)
-> dialect scripts, checked by parsing the scripts back and by an
independent direct-stiffness solver.
"""
from .bench import BenchReport, SuiteConfig, generate_suite, run_suite
from .codegen import DIALECTS, EmittedScript, emit, emit_etabs, emit_opensees, emit_sap2000
from .errors import Diagnostic, FrameError, FrameWarning
from .model import (COORD_TOL, DistributedLoad, ElementRecord, FrameModel, NodeRecord, PointLoad,
                    SectionProperties, SupportRecord, from_json, to_canonical_json, validate_model)
from .pipeline import build_model, compile_targets, compile_text
from .problem import ExtraPointLoad, FrameProblemSpec, format_problem, parse_problem
from .solver import SolutionState, internal_force_diagrams, solutions_equivalent, solve
from .stories import StoryModel, from_story_model, to_story_model
from .units import UnitSystem
from .verify import EquivalenceReport, models_equivalent, parse_etabs, parse_opensees, parse_sap2000, parse_script

__version__ = "0.1.0"

__all__ = [
    "COORD_TOL", "DIALECTS", "BenchReport", "Diagnostic", "DistributedLoad", "ElementRecord", "EmittedScript",
    "EquivalenceReport", "ExtraPointLoad", "FrameError", "FrameModel", "FrameProblemSpec", "FrameWarning",
    "NodeRecord", "PointLoad", "SectionProperties", "SolutionState", "StoryModel", "SuiteConfig",
    "SupportRecord", "UnitSystem", "build_model", "compile_targets", "compile_text", "emit", "emit_etabs",
    "emit_opensees", "emit_sap2000", "format_problem", "from_json", "from_story_model", "generate_suite",
    "internal_force_diagrams", "models_equivalent", "parse_etabs", "parse_opensees", "parse_problem",
    "parse_sap2000", "parse_script", "run_suite", "solutions_equivalent", "solve", "to_canonical_json",
    "to_story_model", "validate_model",
]
