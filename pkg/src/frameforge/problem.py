"""The ``.frame`` problem template: parsing and canonical formatting.

The template is line oriented.  Bracketed headers open the sections
UNITS, GEOMETRY, SUPPORTS, MATERIALS, LOADS and the optional TARGET;
inside a section, statements are ``key = value`` (MATERIALS uses
``member: E = ..., A = ..., I = ...``) separated by newlines or ``;``.
``#`` starts a comment.  See ``docs/template_grammar.md``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import FrameError
from .model import SUPPORT_KINDS, SectionProperties
from .units import UnitSystem, convert, unit_token, LENGTH_SYMBOLS, FORCE_SYMBOLS

TARGETS = ("opensees", "sap2000", "etabs", "all")
REQUIRED_SECTIONS = ("UNITS", "GEOMETRY", "SUPPORTS", "MATERIALS", "LOADS")
SECTIONS = REQUIRED_SECTIONS + ("TARGET",)

LENGTH = (0, 1)
AREA = (0, 2)
INERTIA = (0, 4)
FORCE = (1, 0)
FORCE_PER_LENGTH = (1, -1)
STRESS = (1, -2)


@dataclass(frozen=True)
class ExtraPointLoad:
    x: float
    y: float
    fx: float = 0.0
    fy: float = 0.0
    mz: float = 0.0


@dataclass(frozen=True)
class FrameProblemSpec:
    units: UnitSystem
    n_bays: int
    stories_per_bay: tuple[int, ...]
    bay_widths: tuple[float, ...]
    story_heights: tuple[float, ...]
    support_kind: str
    column_section: SectionProperties
    girder_section: SectionProperties
    lateral_load_per_floor: float
    gravity_udl: float
    extra_point_loads: tuple[ExtraPointLoad, ...] = ()
    target_hint: str = "all"

    @property
    def max_stories(self) -> int:
        return max(self.stories_per_bay)


def validate_spec(spec: FrameProblemSpec) -> None:
    """Raise INCONSISTENT_LENGTHS / INVALID_VALUE if the problem is malformed."""
    if spec.n_bays < 1:
        raise FrameError("INVALID_VALUE", "bays must be at least 1")
    if len(spec.stories_per_bay) != spec.n_bays:
        raise FrameError("INCONSISTENT_LENGTHS",
                         f"{spec.n_bays} bays but {len(spec.stories_per_bay)} stories_per_bay entries")
    if len(spec.bay_widths) != spec.n_bays:
        raise FrameError("INCONSISTENT_LENGTHS",
                         f"{spec.n_bays} bays but {len(spec.bay_widths)} bay widths")
    if any(s < 1 for s in spec.stories_per_bay):
        raise FrameError("INVALID_VALUE", "every bay needs at least one story")
    if len(spec.story_heights) != spec.max_stories:
        raise FrameError("INCONSISTENT_LENGTHS",
                         f"{spec.max_stories} stories but {len(spec.story_heights)} story heights")
    if any(not w > 0 for w in spec.bay_widths + spec.story_heights):
        raise FrameError("INVALID_VALUE", "bay widths and story heights must be positive")
    if spec.support_kind not in SUPPORT_KINDS:
        raise FrameError("INVALID_VALUE", f"unknown support kind {spec.support_kind!r}")
    for name, sec in (("column", spec.column_section), ("girder", spec.girder_section)):
        if sec.name != name:
            raise FrameError("INVALID_VALUE", f"{name} section must be named {name!r}, not {sec.name!r}")
        if not (sec.E > 0 and sec.A > 0 and sec.I > 0):
            raise FrameError("INVALID_VALUE", f"{sec.name} section properties must be positive")
    if spec.target_hint not in TARGETS:
        raise FrameError("INVALID_VALUE", f"unknown target {spec.target_hint!r}")


# --------------------------------------------------------------------------- lexing

_NUM = r"[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?"
_NUM_RE = re.compile(_NUM)
_INT_RE = re.compile(r"[-+]?\d+")
_HEADER_RE = re.compile(r"\[([A-Za-z]+)\]")


@dataclass
class _Stmt:
    text: str
    line: int
    col: int


def _fail(stmt: _Stmt, msg: str, offset: int = 0, code: str = "SYNTAX_ERROR"):
    raise FrameError(code, msg, line=stmt.line, column=stmt.col + offset)


def _split_sections(text: str) -> dict[str, list[_Stmt]]:
    sections: dict[str, list[_Stmt]] = {}
    header_pos: dict[str, int] = {}
    current: list[_Stmt] | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        pos = 0
        m = _HEADER_RE.match(line.lstrip())
        if m:
            name = m.group(1).upper()
            col = len(line) - len(line.lstrip()) + 1
            if name not in SECTIONS:
                raise FrameError("SYNTAX_ERROR", f"unknown section [{m.group(1)}], expected one of "
                                 + ", ".join(f"[{s}]" for s in SECTIONS), line=lineno, column=col)
            if name in sections:
                raise FrameError("DUPLICATE_SECTION",
                                 f"section [{name}] repeated (first at line {header_pos[name]})",
                                 line=lineno, column=col)
            current = sections[name] = []
            header_pos[name] = lineno
            pos = col - 1 + m.end()
        start = pos
        for piece in line[pos:].split(";"):
            stripped = piece.strip()
            if stripped:
                col = start + (len(piece) - len(piece.lstrip())) + 1
                if current is None:
                    raise FrameError("SYNTAX_ERROR", "statement before the first section header",
                                     line=lineno, column=col)
                current.append(_Stmt(stripped, lineno, col))
            start += len(piece) + 1
    return sections


def _key_value(stmt: _Stmt) -> tuple[str, str, int]:
    if "=" not in stmt.text:
        _fail(stmt, f"expected 'key = value', got {stmt.text!r}")
    key, value = stmt.text.split("=", 1)
    return key.strip(), value.strip(), len(key) + 1 + (len(value) - len(value.lstrip()))


def _number(tok: str, stmt: _Stmt, offset: int) -> float:
    if not _NUM_RE.fullmatch(tok):
        _fail(stmt, f"expected a number, got {tok!r}", offset)
    return float(tok)


def _quantity_list(value: str, stmt: _Stmt, offset: int, units: UnitSystem, dims) -> list[float]:
    """``<num>{, <num>} <unit>``: a trailing unit applies to the whole list."""
    m = re.fullmatch(rf"((?:{_NUM})(?:\s*,\s*(?:{_NUM}))*)\s+(\S+)", value)
    if not m:
        _fail(stmt, f"expected '<num>{{, <num>}} <unit>', got {value!r}", offset)
    nums = [float(t) for t in re.split(r"\s*,\s*", m.group(1))]
    try:
        return [convert(v, m.group(2), units, dims) for v in nums]
    except FrameError as exc:
        _fail(stmt, exc.diagnostics[0].message, offset + m.start(2), "UNSUPPORTED_UNIT")


def _int_list(value: str, stmt: _Stmt, offset: int) -> list[int]:
    toks = [t.strip() for t in value.split(",")]
    if not all(_INT_RE.fullmatch(t) for t in toks):
        _fail(stmt, f"expected '<int>{{, <int>}}', got {value!r}", offset)
    return [int(t) for t in toks]


def _choice(value: str, options, stmt: _Stmt, offset: int) -> str:
    if value not in options:
        _fail(stmt, f"expected one of {' | '.join(options)}, got {value!r}", offset)
    return value


# --------------------------------------------------------------------------- sections

def _parse_units(stmts: list[_Stmt]) -> UnitSystem:
    vals = _assignments(stmts, {"length", "force"})
    length, lstmt, loff = vals["length"]
    force, fstmt, foff = vals["force"]
    if length not in LENGTH_SYMBOLS:
        _fail(lstmt, f"unsupported length unit {length!r}, expected m | mm | ft | in", loff, "UNSUPPORTED_UNIT")
    if force not in FORCE_SYMBOLS:
        _fail(fstmt, f"unsupported force unit {force!r}, expected kN | N | kip | lb", foff, "UNSUPPORTED_UNIT")
    return UnitSystem.from_symbols(length, force)


def _assignments(stmts: list[_Stmt], required: set[str], optional: set[str] = frozenset(),
                 repeatable: set[str] = frozenset(), section: str = ""):
    out: dict = {}
    allowed = required | optional | repeatable
    for stmt in stmts:
        key, value, off = _key_value(stmt)
        if key not in allowed:
            _fail(stmt, f"unexpected key {key!r}, expected one of {', '.join(sorted(allowed))}")
        if key in repeatable:
            out.setdefault(key, []).append((value, stmt, off))
            continue
        if key in out:
            _fail(stmt, f"key {key!r} given twice", code="DUPLICATE_KEY")
        out[key] = (value, stmt, off)
    missing = sorted(required - out.keys())
    if missing:
        anchor = stmts[0] if stmts else None
        raise FrameError("MISSING_KEY", f"missing {', '.join(missing)}" + (f" in [{section}]" if section else ""),
                         line=anchor.line if anchor else None)
    return out


_MATERIAL_RE = re.compile(
    rf"(column|girder)\s*:\s*E\s*=\s*({_NUM})\s+(\S+?)\s*,\s*A\s*=\s*({_NUM})\s+(\S+?)\s*,"
    rf"\s*I\s*=\s*({_NUM})\s+(\S+)"
)


def _parse_materials(stmts: list[_Stmt], units: UnitSystem) -> dict[str, SectionProperties]:
    out = {}
    for stmt in stmts:
        m = _MATERIAL_RE.fullmatch(stmt.text)
        if not m:
            _fail(stmt, "expected 'column|girder: E = <num> <unit>, A = <num> <unit>, I = <num> <unit>'")
        member = m.group(1)
        if member in out:
            _fail(stmt, f"{member} properties given twice", code="DUPLICATE_KEY")
        vals = []
        for grp, dims in ((2, STRESS), (4, AREA), (6, INERTIA)):
            try:
                vals.append(convert(float(m.group(grp)), m.group(grp + 1), units, dims))
            except FrameError as exc:
                _fail(stmt, exc.diagnostics[0].message, m.start(grp + 1), "UNSUPPORTED_UNIT")
        out[member] = SectionProperties(member, *vals)
    for member in ("column", "girder"):
        if member not in out:
            raise FrameError("MISSING_KEY", f"missing {member} properties in [MATERIALS]",
                             line=stmts[0].line if stmts else None)
    return out


_POINT_RE = re.compile(
    rf"x\s+({_NUM})\s*,\s*y\s+({_NUM})\s*,\s*fx\s+({_NUM})\s*,\s*fy\s+({_NUM})\s*,\s*mz\s+({_NUM})"
)


def _single_quantity(value, stmt, off, units, dims) -> float:
    vals = _quantity_list(value, stmt, off, units, dims)
    if len(vals) != 1:
        _fail(stmt, "expected a single value", off)
    return vals[0]


def parse_problem(text: str) -> FrameProblemSpec:
    """Parse template text into a validated :class:`FrameProblemSpec`.

    Raises FrameError with codes SYNTAX_ERROR, MISSING_SECTION,
    INCONSISTENT_LENGTHS or UNSUPPORTED_UNIT (plus DUPLICATE_SECTION,
    DUPLICATE_KEY, MISSING_KEY for structural slips).
    """
    sections = _split_sections(text)
    for name in REQUIRED_SECTIONS:
        if name not in sections:
            raise FrameError("MISSING_SECTION", f"section [{name}] is missing", subject=name)

    units = _parse_units(sections["UNITS"])

    geo = _assignments(sections["GEOMETRY"], {"bays", "stories_per_bay", "bay_widths", "story_heights"},
                       section="GEOMETRY")
    v, st, off = geo["bays"]
    if not _INT_RE.fullmatch(v):
        _fail(st, f"expected an integer, got {v!r}", off)
    n_bays = int(v)
    stories = _int_list(*geo["stories_per_bay"])
    widths = _quantity_list(*geo["bay_widths"], units, LENGTH)
    heights = _quantity_list(*geo["story_heights"], units, LENGTH)

    sup = _assignments(sections["SUPPORTS"], {"base"}, section="SUPPORTS")
    value, stmt, off = sup["base"]
    support_kind = _choice(value, SUPPORT_KINDS, stmt, off)

    mats = _parse_materials(sections["MATERIALS"], units)

    loads = _assignments(sections["LOADS"], {"lateral_per_floor", "gravity_udl"}, repeatable={"point"},
                         section="LOADS")
    lateral = _single_quantity(*loads["lateral_per_floor"], units, FORCE)
    gravity = _single_quantity(*loads["gravity_udl"], units, FORCE_PER_LENGTH)
    extras = []
    for value, stmt, off in loads.get("point", []):
        m = _POINT_RE.fullmatch(value)
        if not m:
            _fail(stmt, "expected 'point = x <num>, y <num>, fx <num>, fy <num>, mz <num>'", off)
        extras.append(ExtraPointLoad(*(float(g) for g in m.groups())))

    target = "all"
    if "TARGET" in sections:
        tgt = _assignments(sections["TARGET"], {"software"}, section="TARGET")
        value, stmt, off = tgt["software"]
        target = _choice(value, TARGETS, stmt, off)

    spec = FrameProblemSpec(
        units=units,
        n_bays=n_bays,
        stories_per_bay=tuple(stories),
        bay_widths=tuple(widths),
        story_heights=tuple(heights),
        support_kind=support_kind,
        column_section=mats["column"],
        girder_section=mats["girder"],
        lateral_load_per_floor=lateral,
        gravity_udl=gravity,
        extra_point_loads=tuple(extras),
        target_hint=target,
    )
    validate_spec(spec)
    return spec


# --------------------------------------------------------------------------- formatting

def _num(v: float) -> str:
    v = float(v)
    return repr(0.0 if v == 0 else v)


def _nums(vs) -> str:
    return ", ".join(_num(v) for v in vs)


def format_problem(spec: FrameProblemSpec) -> str:
    """Canonical template text; ``parse_problem(format_problem(s)) == s``."""
    u = spec.units
    tok = lambda dims: unit_token(u, dims)  # noqa: E731
    lines = [
        "[UNITS]",
        f"length = {u.length_symbol}; force = {u.force_symbol}",
        "",
        "[GEOMETRY]",
        f"bays = {spec.n_bays}",
        f"stories_per_bay = {', '.join(str(s) for s in spec.stories_per_bay)}",
        f"bay_widths = {_nums(spec.bay_widths)} {tok(LENGTH)}",
        f"story_heights = {_nums(spec.story_heights)} {tok(LENGTH)}",
        "",
        "[SUPPORTS]",
        f"base = {spec.support_kind}",
        "",
        "[MATERIALS]",
    ]
    for sec in (spec.column_section, spec.girder_section):
        lines.append(f"{sec.name}: E = {_num(sec.E)} {tok(STRESS)}, A = {_num(sec.A)} {tok(AREA)}, "
                     f"I = {_num(sec.I)} {tok(INERTIA)}")
    lines += [
        "",
        "[LOADS]",
        f"lateral_per_floor = {_num(spec.lateral_load_per_floor)} {tok(FORCE)}",
        f"gravity_udl = {_num(spec.gravity_udl)} {tok(FORCE_PER_LENGTH)}",
    ]
    for p in spec.extra_point_loads:
        lines.append(f"point = x {_num(p.x)}, y {_num(p.y)}, fx {_num(p.fx)}, fy {_num(p.fy)}, mz {_num(p.mz)}")
    lines += ["", "[TARGET]", f"software = {spec.target_hint}"]
    return "\n".join(lines) + "\n"
