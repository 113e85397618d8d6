"""ETABS ``.e2k`` emitter, driven by a :class:`StoryModel`.

Plan points lie on the global X axis (plan Y = 0) and story elevations
supply Z.  Lines are defined once on plan points and then assigned to
the stories where they exist, so irregular frames simply have fewer
assignments in their upper stories.
"""
from __future__ import annotations

from ..stories import BASE, StoryModel, from_story_model
from .base import (FORCE_LABELS, LENGTH_LABELS, EmittedScript, check_emittable, finish, neg, num,
                   source_digest)

LOAD_PATTERN = "LOAD"

# Section headers in emission order.
E2K_SECTIONS = (
    "PROGRAM INFORMATION",
    "CONTROLS",
    "STORIES - IN SEQUENCE FROM TOP",
    "MATERIAL PROPERTIES",
    "FRAME SECTIONS",
    "POINT COORDINATES",
    "LINE CONNECTIVITIES",
    "POINT ASSIGNS",
    "LINE ASSIGNS",
    "LOAD PATTERNS",
    "POINT OBJECT LOADS",
    "FRAME OBJECT LOADS",
    "LOAD CASES",
)
END_MARKER = "$ END OF MODEL FILE"

# Restrained DOFs per support kind, X-Z plane (model rz -> RY).
E2K_RESTRAINTS = {
    "fixed": "UX UZ RY",
    "pinned": "UX UZ",
    "roller_x": "UZ",
    "roller_y": "UX",
}
LINE_KIND = {"column": "COLUMN", "girder": "BEAM"}


def material_name(section: str) -> str:
    return f"MAT_{section}"


def emit_etabs(sm: StoryModel, *, name: str = "frame", digest: str | None = None) -> EmittedScript:
    model = from_story_model(sm)
    check_emittable(model)
    if digest is None:
        digest = source_digest(model)
    u = sm.units
    out = [f"$ File {name}.e2k generated by frameforge", f"$ source-digest: {digest}", ""]

    def section(title, body):
        out.append(f"$ {title}")
        out.extend(body)
        out.append("")

    section("PROGRAM INFORMATION", ['  PROGRAM  "ETABS"  VERSION "frameforge"'])
    section("CONTROLS", [f'  UNITS  "{FORCE_LABELS[u.force_unit]}"  "{LENGTH_LABELS[u.length_unit]}"  "C"'])
    stories = []
    for s in sm.story_levels:
        if s.name == BASE:
            stories.append(f'  STORY "{s.name}"  ELEV {num(s.elevation)}')
        else:
            stories.append(f'  STORY "{s.name}"  HEIGHT {num(s.height)}')
    section("STORIES - IN SEQUENCE FROM TOP", stories)

    mats = []
    for s in sm.sections:
        mats.append(f'  MATERIAL  "{material_name(s.name)}"  TYPE "Other"')
        mats.append(f'  MATERIAL  "{material_name(s.name)}"  SYMTYPE "Isotropic"  E {num(s.E)}  U 0.3')
    section("MATERIAL PROPERTIES", mats)
    section("FRAME SECTIONS", [
        f'  FRAMESECTION  "{s.name}"  MATERIAL "{material_name(s.name)}"  SHAPE "General"  '
        f'AREA {num(s.A)}  I33 {num(s.I)}'
        for s in sm.sections
    ])
    section("POINT COORDINATES", [f'  POINT "{p}"  {num(x)}  0.0' for p, x in sm.base_points])
    section("LINE CONNECTIVITIES", [
        f'  LINE  "{t.name}"  {LINE_KIND[t.kind]}  "{t.point_i}"  "{t.point_j}"  '
        f'{1 if t.kind == "column" else 0}'
        for t in sm.line_templates
    ])

    restraint = {(s.point, s.story): s.kind for s in sm.supports}
    points = []
    for o in _by_story(sm, sm.point_objects):
        line = f'  POINTASSIGN  "{o.point}"  "{o.story}"'
        kind = restraint.get((o.point, o.story))
        if kind:
            line += f'  RESTRAINT "{E2K_RESTRAINTS[kind]}"'
        points.append(line)
    section("POINT ASSIGNS", points)
    section("LINE ASSIGNS", [f'  LINEASSIGN  "{o.template}"  "{o.story}"  SECTION "{o.section}"'
                             for o in _by_story(sm, sm.line_objects)])
    section("LOAD PATTERNS", [f'  LOADPATTERN "{LOAD_PATTERN}"  TYPE  "Dead"  SELFWEIGHT  0'])
    section("POINT OBJECT LOADS", [
        f'  POINTLOAD  "{p.point}"  "{p.story}"  TYPE "FORCE"  LC "{LOAD_PATTERN}"  '
        f'FX {num(p.fx)}  FZ {num(p.fy)}  MY {num(neg(p.mz))}'
        for p in sm.point_loads
    ])
    section("FRAME OBJECT LOADS", [
        f'  LINELOAD  "{l.template}"  "{l.story}"  TYPE "UNIFF"  DIR "GRAV"  LC "{LOAD_PATTERN}"  '
        f'FVAL {num(neg(l.w_transverse))}'
        for l in sm.line_loads
    ])
    section("LOAD CASES", [
        f'  LOADCASE "{LOAD_PATTERN}"  TYPE  "Linear Static"  INITCOND  "PROPERTIES"',
        f'  LOADCASE "{LOAD_PATTERN}"  LOADPAT  "{LOAD_PATTERN}"  SF  1.0',
    ])
    out.append(END_MARKER)
    return EmittedScript("etabs_e2k", finish(out), digest)


def _by_story(sm: StoryModel, objs):
    """Objects grouped top story first, in plan order within a story."""
    rank = {s.name: i for i, s in enumerate(sm.story_levels)}
    point_rank = {p: i for i, (p, _) in enumerate(sm.base_points)}
    tmpl_rank = {t.name: i for i, t in enumerate(sm.line_templates)}

    def key(o):
        inner = point_rank[o.point] if hasattr(o, "point") else tmpl_rank[o.template]
        return rank[o.story], inner

    return sorted(objs, key=key)
