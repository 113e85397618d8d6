"""SAP2000 ``.s2k`` emitter.

The plane frame is placed in the global X-Z plane: model x -> X, model
y -> Z, Y = 0.  Model rotation rz therefore maps to -R2 (rotation about
global Y) and a girder's transverse load to a Gravity-direction load of
opposite sign.  Only UX, UZ and RY are active degrees of freedom.

Table order and field names are fixed by :data:`S2K_TABLES`; the
verifier parses against the same list.  Joint coordinates use the
canonical ``XorR``/``Y``/``Z`` fields, connectivity precedes section
assignment, and the load-pattern table carries its exact canonical
header.
"""
from __future__ import annotations

from ..model import FrameModel
from .base import FORCE_LABELS, LENGTH_LABELS, EmittedScript, check_emittable, finish, neg, num, source_digest

LOAD_PATTERN = "LOAD"

# (table name, fields) in emission order.
S2K_TABLES: tuple[tuple[str, tuple[str, ...]], ...] = (
    ("PROGRAM CONTROL", ("ProgramName", "Version", "CurrUnits")),
    ("COORDINATE SYSTEMS", ("Name", "Type", "X", "Y", "Z", "AboutZ", "AboutY", "AboutX")),
    ("ACTIVE DEGREES OF FREEDOM", ("UX", "UY", "UZ", "RX", "RY", "RZ")),
    ("JOINT COORDINATES", ("Joint", "CoordSys", "CoordType", "XorR", "Y", "Z", "SpecialJt")),
    ("JOINT RESTRAINT ASSIGNMENTS", ("Joint", "U1", "U2", "U3", "R1", "R2", "R3")),
    ("MATERIAL PROPERTIES 01 - GENERAL", ("Material", "Type", "SymType")),
    ("MATERIAL PROPERTIES 02 - BASIC MECHANICAL PROPERTIES", ("Material", "UnitWeight", "UnitMass", "E1", "U12")),
    ("FRAME SECTION PROPERTIES 01 - GENERAL", ("SectionName", "Material", "Shape", "Area", "I33")),
    ("CONNECTIVITY - FRAME", ("Frame", "JointI", "JointJ", "IsCurved")),
    ("FRAME SECTION ASSIGNMENTS", ("Frame", "SectionType", "AutoSelect", "AnalSect", "MatProp")),
    ("LOAD PATTERN DEFINITIONS", ("LoadPat", "DesignType", "SelfWtMult")),
    ("JOINT LOADS - FORCE", ("Joint", "LoadPat", "CoordSys", "F1", "F2", "F3", "M1", "M2", "M3")),
    ("FRAME LOADS - DISTRIBUTED", ("Frame", "LoadPat", "CoordSys", "Type", "Dir", "DistType",
                                   "RelDistA", "RelDistB", "FOverLA", "FOverLB")),
    ("LOAD CASE DEFINITIONS", ("Case", "Type", "InitialCond", "DesignType")),
    ("CASE - STATIC 1 - LOAD ASSIGNMENTS", ("Case", "LoadType", "LoadName", "LoadSF")),
)
TABLE_FIELDS = dict(S2K_TABLES)
END_MARKER = "END TABLE DATA"

# Restrained (U1, U2, U3, R1, R2, R3) per support kind in the X-Z plane.
S2K_RESTRAINTS = {
    "fixed": ("Yes", "No", "Yes", "No", "Yes", "No"),
    "pinned": ("Yes", "No", "Yes", "No", "No", "No"),
    "roller_x": ("No", "No", "Yes", "No", "No", "No"),
    "roller_y": ("Yes", "No", "No", "No", "No", "No"),
}


def table_header(name: str) -> str:
    return f'TABLE:  "{name}"'


def _value(v) -> str:
    s = num(v) if isinstance(v, float) else str(v)
    return f'"{s}"' if (" " in s or "," in s) else s


def _row(table: str, *values) -> str:
    fields = TABLE_FIELDS[table]
    assert len(fields) == len(values), table
    return "   " + "   ".join(f"{k}={_value(v)}" for k, v in zip(fields, values))


def material_name(section: str) -> str:
    return f"MAT_{section}"


def emit_sap2000(model: FrameModel, *, name: str = "frame") -> EmittedScript:
    check_emittable(model)
    digest = source_digest(model)
    units = f"{FORCE_LABELS[model.units.force_unit]}, {LENGTH_LABELS[model.units.length_unit]}, C"
    rows: dict[str, list[str]] = {t: [] for t, _ in S2K_TABLES}

    def add(table, *values):
        rows[table].append(_row(table, *values))

    add("PROGRAM CONTROL", "SAP2000", "frameforge", units)
    add("COORDINATE SYSTEMS", "GLOBAL", "Cartesian", 0.0, 0.0, 0.0, 0.0, 0.0, 0.0)
    add("ACTIVE DEGREES OF FREEDOM", "Yes", "No", "Yes", "No", "Yes", "No")
    for n in model.nodes:
        add("JOINT COORDINATES", n.id, "GLOBAL", "Cartesian", float(n.x), 0.0, float(n.y), "No")
    for s in model.supports:
        add("JOINT RESTRAINT ASSIGNMENTS", s.node_id, *S2K_RESTRAINTS[s.kind])
    for s in model.sections:
        add("MATERIAL PROPERTIES 01 - GENERAL", material_name(s.name), "Other", "Isotropic")
    for s in model.sections:
        add("MATERIAL PROPERTIES 02 - BASIC MECHANICAL PROPERTIES", material_name(s.name), 0.0, 0.0,
            float(s.E), 0.3)
    for s in model.sections:
        add("FRAME SECTION PROPERTIES 01 - GENERAL", s.name, material_name(s.name), "General",
            float(s.A), float(s.I))
    for e in model.elements:
        add("CONNECTIVITY - FRAME", e.id, e.end_i, e.end_j, "No")
    for e in model.elements:
        add("FRAME SECTION ASSIGNMENTS", e.id, "General", "N.A.", e.section, "Default")
    add("LOAD PATTERN DEFINITIONS", LOAD_PATTERN, "Dead", 0.0)
    for p in model.point_loads:
        add("JOINT LOADS - FORCE", p.node_id, LOAD_PATTERN, "GLOBAL", float(p.fx), 0.0, float(p.fy),
            0.0, neg(p.mz), 0.0)
    for d in model.distributed_loads:
        w = neg(d.w_transverse)
        add("FRAME LOADS - DISTRIBUTED", d.element_id, LOAD_PATTERN, "GLOBAL", "Force", "Gravity", "RelDist",
            0.0, 1.0, w, w)
    add("LOAD CASE DEFINITIONS", LOAD_PATTERN, "LinStatic", "Zero", "Dead")
    add("CASE - STATIC 1 - LOAD ASSIGNMENTS", LOAD_PATTERN, "Load pattern", LOAD_PATTERN, 1.0)

    out = [f"File {name}.s2k was generated by frameforge", f"$ source-digest: {digest}", ""]
    for table, _ in S2K_TABLES:
        if not rows[table]:
            continue
        out.append(table_header(table))
        out += rows[table]
        out.append(" ")
    out.append(END_MARKER)
    return EmittedScript("sap2000_s2k", finish(out), digest)
