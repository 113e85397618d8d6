"""Parse the E2K subset written by :func:`emit_etabs` into a StoryModel."""
from __future__ import annotations

import re
import shlex

from ..codegen.base import FORCE_LABELS, LENGTH_LABELS
from ..codegen.etabs import E2K_RESTRAINTS, E2K_SECTIONS, END_MARKER, LINE_KIND
from ..model import SectionProperties
from ..stories import (BASE, LineObject, LineTemplate, PointObject, StoryLevel, StoryLineLoad, StoryModel,
                       StoryPointLoad, StorySupport)
from ..units import UnitSystem
from ._common import Collector, to_float

_KIND_OF_RESTRAINT = {v: k for k, v in E2K_RESTRAINTS.items()}
_KIND_OF_LINE = {v: k for k, v in LINE_KIND.items()}
_FORCE_OF = {v: k for k, v in FORCE_LABELS.items()}
_LENGTH_OF = {v: k for k, v in LENGTH_LABELS.items()}
_SECTION_RE = re.compile(r"\$\s+(.+?)\s*$")


def _split(text: str, diag: Collector) -> dict[str, list[tuple[int, list[str]]]]:
    sections: dict[str, list[tuple[int, list[str]]]] = {}
    current = None
    ended = False
    lines = text.splitlines()
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        if ended:
            diag.syntax(lineno, f"content after {END_MARKER!r}")
            break
        if line == END_MARKER:
            ended = True
            continue
        if line.startswith("$"):
            m = _SECTION_RE.match(line)
            title = m.group(1) if m else ""
            if title in E2K_SECTIONS:
                if title in sections:
                    diag.duplicate(lineno, f"section {title!r}")
                    current = None
                else:
                    current = sections[title] = []
            continue  # any other $ line is a comment
        if current is None:
            diag.syntax(lineno, "data line outside of a recognised section")
            continue
        try:
            current.append((lineno, shlex.split(line)))
        except ValueError as exc:
            diag.syntax(lineno, f"cannot tokenize line: {exc}")
    if not ended:
        diag.syntax(len(lines), f"file ends without {END_MARKER!r}")
    for title in ("CONTROLS", "STORIES - IN SEQUENCE FROM TOP", "POINT COORDINATES"):
        if title not in sections:
            diag.syntax(len(lines), f"required section '$ {title}' is missing")
    return sections


def _keywords(tokens: list[str], start: int) -> dict[str, str] | None:
    """``KEY value KEY value ...`` pairs from ``tokens[start:]``."""
    rest = tokens[start:]
    if len(rest) % 2:
        return None
    return {rest[i]: rest[i + 1] for i in range(0, len(rest), 2)}


def parse_etabs(text: str) -> StoryModel:
    """Recover a StoryModel; object ids are left unset for :func:`from_story_model` to assign."""
    diag = Collector()
    sec = _split(text, diag)

    def number(lineno, tok):
        v = to_float(tok)
        if v is None:
            diag.syntax(lineno, f"expected a number, got {tok!r}")
        return v

    for lineno, t in sec.get("PROGRAM INFORMATION", []):
        if not t or t[0] != "PROGRAM":
            diag.syntax(lineno, "expected PROGRAM \"<name>\" ...")

    units = None
    for lineno, t in sec.get("CONTROLS", []):
        if len(t) == 4 and t[0] == "UNITS" and t[1] in _FORCE_OF and t[2] in _LENGTH_OF:
            units = UnitSystem(_LENGTH_OF[t[2]], _FORCE_OF[t[1]])
        else:
            diag.syntax(lineno, "expected UNITS \"<force>\" \"<length>\" \"C\"")

    # Stories are listed top down; elevations accumulate from the base up.
    raw_stories = []
    for lineno, t in sec.get("STORIES - IN SEQUENCE FROM TOP", []):
        if len(t) != 4 or t[0] != "STORY" or t[2] not in ("HEIGHT", "ELEV"):
            diag.syntax(lineno, 'expected STORY "<name>" HEIGHT|ELEV <num>')
            continue
        v = number(lineno, t[3])
        if v is None:
            continue
        if any(name == t[1] for _, name, _, _ in raw_stories):
            diag.duplicate(lineno, f"story {t[1]!r}")
            continue
        raw_stories.append((lineno, t[1], t[2], v))
    levels: list[StoryLevel] = []
    if raw_stories:
        base_line, base_name, kw, base_elev = raw_stories[-1]
        if kw != "ELEV" or base_name != BASE:
            diag.syntax(base_line, f'the last story must be "{BASE}" with ELEV')
        else:
            elev = base_elev
            levels.append(StoryLevel(BASE, elev, 0.0))
            for lineno, name, kw, h in reversed(raw_stories[:-1]):
                if kw != "HEIGHT" or not h > 0:
                    diag.syntax(lineno, f"story {name!r} needs a positive HEIGHT")
                    continue
                elev += h
                levels.append(StoryLevel(name, elev, h))
    story_names = {s.name for s in levels}

    materials: dict[str, float] = {}
    mat_declared: set[str] = set()
    for lineno, t in sec.get("MATERIAL PROPERTIES", []):
        if len(t) < 2 or t[0] != "MATERIAL":
            diag.syntax(lineno, 'expected MATERIAL "<name>" ...')
            continue
        kw = _keywords(t, 2)
        if kw is None:
            diag.syntax(lineno, "unpaired keyword")
        elif "TYPE" in kw:
            if t[1] in mat_declared:
                diag.duplicate(lineno, f"material {t[1]!r}")
            mat_declared.add(t[1])
        elif "E" in kw:
            if t[1] not in mat_declared:
                diag.undefined(lineno, f"material {t[1]!r} has no TYPE line")
            elif t[1] in materials:
                diag.duplicate(lineno, f"E of material {t[1]!r}")
            else:
                v = number(lineno, kw["E"])
                if v is not None:
                    materials[t[1]] = v
        else:
            diag.syntax(lineno, "expected TYPE or SYMTYPE ... E ...")

    sections: dict[str, SectionProperties] = {}
    for lineno, t in sec.get("FRAME SECTIONS", []):
        kw = _keywords(t, 2) if len(t) >= 2 and t[0] == "FRAMESECTION" else None
        if kw is None or not {"MATERIAL", "AREA", "I33"} <= kw.keys():
            diag.syntax(lineno, 'expected FRAMESECTION "<name>" MATERIAL "<mat>" ... AREA <num> I33 <num>')
            continue
        if t[1] in sections:
            diag.duplicate(lineno, f"frame section {t[1]!r}")
        elif kw["MATERIAL"] not in materials:
            diag.undefined(lineno, f"section {t[1]!r} uses undefined material {kw['MATERIAL']!r}")
        else:
            a, i = number(lineno, kw["AREA"]), number(lineno, kw["I33"])
            if a is not None and i is not None:
                sections[t[1]] = SectionProperties(t[1], materials[kw["MATERIAL"]], a, i)

    points: dict[str, float] = {}
    for lineno, t in sec.get("POINT COORDINATES", []):
        if len(t) != 4 or t[0] != "POINT":
            diag.syntax(lineno, 'expected POINT "<name>" <x> <y>')
            continue
        x, y = number(lineno, t[2]), number(lineno, t[3])
        if x is None or y is None:
            continue
        if y != 0:
            diag.syntax(lineno, f"point {t[1]!r} lies off the frame plane (plan y = {y})")
        if t[1] in points:
            diag.duplicate(lineno, f"point {t[1]!r}")
        else:
            points[t[1]] = x

    templates: dict[str, LineTemplate] = {}
    for lineno, t in sec.get("LINE CONNECTIVITIES", []):
        if len(t) != 6 or t[0] != "LINE" or t[2] not in _KIND_OF_LINE:
            diag.syntax(lineno, 'expected LINE "<name>" COLUMN|BEAM "<pi>" "<pj>" <n>')
            continue
        kind = _KIND_OF_LINE[t[2]]
        if t[1] in templates:
            diag.duplicate(lineno, f"line {t[1]!r}")
            continue
        for p in (t[3], t[4]):
            if p not in points:
                diag.undefined(lineno, f"line {t[1]!r} references undefined point {p!r}")
        if kind == "column" and (t[3] != t[4] or t[5] != "1"):
            diag.syntax(lineno, f"column {t[1]!r} must be defined on one point with 1 story")
        if kind == "girder" and (t[3] == t[4] or t[5] != "0"):
            diag.syntax(lineno, f"beam {t[1]!r} must join two points at 0 offset")
        templates[t[1]] = LineTemplate(t[1], kind, t[3], t[4])

    point_objects, supports = {}, []
    for lineno, t in sec.get("POINT ASSIGNS", []):
        kw = _keywords(t, 3) if len(t) >= 3 and t[0] == "POINTASSIGN" else None
        if kw is None or not kw.keys() <= {"RESTRAINT"}:
            diag.syntax(lineno, 'expected POINTASSIGN "<point>" "<story>" [RESTRAINT "<dofs>"]')
            continue
        p, story = t[1], t[2]
        if p not in points:
            diag.undefined(lineno, f"assignment to undefined point {p!r}")
        elif story not in story_names:
            diag.undefined(lineno, f"assignment to undefined story {story!r}")
        elif (p, story) in point_objects:
            diag.duplicate(lineno, f"point {p!r} at story {story!r}")
        else:
            point_objects[(p, story)] = PointObject(p, story)
            if "RESTRAINT" in kw:
                kind = _KIND_OF_RESTRAINT.get(kw["RESTRAINT"])
                if kind is None:
                    diag.syntax(lineno, f"unsupported restraint {kw['RESTRAINT']!r}")
                elif story != BASE:
                    diag.syntax(lineno, "restraints are only supported at the base")
                else:
                    supports.append(StorySupport(p, story, kind))

    line_objects = {}
    for lineno, t in sec.get("LINE ASSIGNS", []):
        kw = _keywords(t, 3) if len(t) >= 3 and t[0] == "LINEASSIGN" else None
        if kw is None or set(kw) != {"SECTION"}:
            diag.syntax(lineno, 'expected LINEASSIGN "<line>" "<story>" SECTION "<name>"')
            continue
        name, story = t[1], t[2]
        if name not in templates:
            diag.undefined(lineno, f"assignment of undefined line {name!r}")
        elif story not in story_names:
            diag.undefined(lineno, f"assignment to undefined story {story!r}")
        elif kw["SECTION"] not in sections:
            diag.undefined(lineno, f"line {name!r} uses undefined section {kw['SECTION']!r}")
        elif (name, story) in line_objects:
            diag.duplicate(lineno, f"line {name!r} at story {story!r}")
        else:
            line_objects[(name, story)] = LineObject(name, story, kw["SECTION"])

    patterns = set()
    for lineno, t in sec.get("LOAD PATTERNS", []):
        if len(t) < 2 or t[0] != "LOADPATTERN":
            diag.syntax(lineno, 'expected LOADPATTERN "<name>" ...')
        elif t[1] in patterns:
            diag.duplicate(lineno, f"load pattern {t[1]!r}")
        else:
            patterns.add(t[1])

    point_loads = []
    for lineno, t in sec.get("POINT OBJECT LOADS", []):
        kw = _keywords(t, 3) if len(t) >= 3 and t[0] == "POINTLOAD" else None
        if kw is None or set(kw) != {"TYPE", "LC", "FX", "FZ", "MY"} or kw["TYPE"] != "FORCE":
            diag.syntax(lineno, 'expected POINTLOAD "<point>" "<story>" TYPE "FORCE" LC "<pat>" FX <n> FZ <n> MY <n>')
            continue
        if kw["LC"] not in patterns:
            diag.undefined(lineno, f"load uses undefined pattern {kw['LC']!r}")
        elif (t[1], t[2]) not in point_objects:
            diag.undefined(lineno, f"load on undefined point object {t[1]!r} at {t[2]!r}")
        else:
            fx, fz, my = (number(lineno, kw[k]) for k in ("FX", "FZ", "MY"))
            if None not in (fx, fz, my):
                point_loads.append(StoryPointLoad(t[1], t[2], fx, fz, -my if my else 0.0))

    line_loads = []
    for lineno, t in sec.get("FRAME OBJECT LOADS", []):
        kw = _keywords(t, 3) if len(t) >= 3 and t[0] == "LINELOAD" else None
        if kw is None or set(kw) != {"TYPE", "DIR", "LC", "FVAL"} or (kw["TYPE"], kw["DIR"]) != ("UNIFF", "GRAV"):
            diag.syntax(lineno, 'expected LINELOAD "<line>" "<story>" TYPE "UNIFF" DIR "GRAV" LC "<pat>" FVAL <n>')
            continue
        if kw["LC"] not in patterns:
            diag.undefined(lineno, f"load uses undefined pattern {kw['LC']!r}")
        elif (t[1], t[2]) not in line_objects:
            diag.undefined(lineno, f"load on undefined line object {t[1]!r} at {t[2]!r}")
        else:
            w = number(lineno, kw["FVAL"])
            if w is not None:
                line_loads.append(StoryLineLoad(t[1], t[2], -w if w else 0.0))

    for lineno, t in sec.get("LOAD CASES", []):
        if len(t) < 2 or t[0] != "LOADCASE":
            diag.syntax(lineno, 'expected LOADCASE "<name>" ...')
        elif len(t) >= 4 and t[2] == "LOADPAT" and t[3] not in patterns:
            diag.undefined(lineno, f"load case uses undefined pattern {t[3]!r}")

    # Every line object needs its end points to exist as point objects.
    order = [s.name for s in levels]
    last = len(text.splitlines())
    for (name, story) in line_objects:
        tmpl = templates[name]
        if story not in order:
            continue
        if tmpl.kind == "column":
            idx = order.index(story)
            if idx == 0:
                diag.syntax(last, f"column {name!r} cannot be assigned to the base story")
                continue
            ends = [(tmpl.point_i, order[idx - 1]), (tmpl.point_i, story)]
        else:
            ends = [(tmpl.point_i, story), (tmpl.point_j, story)]
        for end in ends:
            if end not in point_objects:
                diag.undefined(last, f"line {name!r} at {story!r} needs point {end[0]!r} at {end[1]!r}")

    diag.raise_if_any()
    return StoryModel(
        units=units,
        story_levels=tuple(reversed(levels)),
        base_points=tuple(points.items()),
        line_templates=tuple(templates.values()),
        sections=tuple(sections.values()),
        point_objects=tuple(point_objects.values()),
        line_objects=tuple(line_objects.values()),
        supports=tuple(supports),
        point_loads=tuple(point_loads),
        line_loads=tuple(line_loads),
    )
