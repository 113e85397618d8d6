"""Story-based re-expression of a FrameModel, as ETABS organizes models.

Plan points are the distinct column-line abscissae.  Line templates are
defined once on those points (a column on a single point, a girder on a
pair) and then instantiated per story.  A column object at story ``k``
spans from level ``k-1`` up to level ``k``; a girder object sits at its
story's elevation.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import FrameError
from .model import (COORD_TOL, DistributedLoad, ElementRecord, FrameModel, NodeRecord, PointLoad,
                    SectionProperties, SupportRecord)
from .units import UnitSystem

BASE = "BASE"


def story_name(k: int) -> str:
    return BASE if k == 0 else f"STORY{k}"


@dataclass(frozen=True)
class StoryLevel:
    name: str
    elevation: float
    height: float  # 0 for the base


@dataclass(frozen=True)
class LineTemplate:
    name: str
    kind: str   # "column" | "girder"
    point_i: str
    point_j: str


@dataclass(frozen=True)
class PointObject:
    point: str
    story: str
    node_id: int | None = None
    description: str = ""


@dataclass(frozen=True)
class LineObject:
    template: str
    story: str
    section: str
    element_id: int | None = None
    description: str = ""
    reversed: bool = False  # element runs against the template direction


@dataclass(frozen=True)
class StorySupport:
    point: str
    story: str
    kind: str


@dataclass(frozen=True)
class StoryPointLoad:
    point: str
    story: str
    fx: float
    fy: float
    mz: float


@dataclass(frozen=True)
class StoryLineLoad:
    template: str
    story: str
    w_transverse: float


@dataclass(frozen=True)
class StoryModel:
    units: UnitSystem
    story_levels: tuple[StoryLevel, ...]   # top first, base last
    base_points: tuple[tuple[str, float], ...]
    line_templates: tuple[LineTemplate, ...]
    sections: tuple[SectionProperties, ...]
    point_objects: tuple[PointObject, ...]
    line_objects: tuple[LineObject, ...]
    supports: tuple[StorySupport, ...] = ()
    point_loads: tuple[StoryPointLoad, ...] = ()
    line_loads: tuple[StoryLineLoad, ...] = ()
    provenance: str = ""

    def stories_bottom_up(self) -> list[StoryLevel]:
        return sorted(self.story_levels, key=lambda s: s.elevation)

    def lines_in(self, story: str) -> list[str]:
        return [o.template for o in self.line_objects if o.story == story]


def _cluster(values, tol):
    out: list[float] = []
    for v in sorted(values):
        if not out or v - out[-1] > tol:
            out.append(v)
    return out


def _index(levels: list[float], v: float, tol: float) -> int | None:
    for i, lv in enumerate(levels):
        if abs(lv - v) <= tol:
            return i
    return None


def to_story_model(model: FrameModel, tol: float = COORD_TOL) -> StoryModel:
    """Raises NON_STRATIFIED_MODEL when the model cannot be expressed story-wise."""
    nodes = model.node_map()
    if any(n.y < -tol for n in model.nodes):
        raise FrameError("NON_STRATIFIED_MODEL", "nodes below the base elevation")
    elevations = _cluster([0.0, *(n.y for n in model.nodes)], tol)
    elevations[0] = 0.0
    xs = _cluster([n.x for n in model.nodes], tol)
    point_names = [f"P{i + 1}" for i in range(len(xs))]

    levels = [StoryLevel(story_name(k), y, 0.0 if k == 0 else y - elevations[k - 1])
              for k, y in enumerate(elevations)]

    def locate(nid: int) -> tuple[int, int]:
        n = nodes[nid]
        return _index(xs, n.x, tol), _index(elevations, n.y, tol)

    point_objects = []
    for n in model.nodes:
        p, k = locate(n.id)
        point_objects.append(PointObject(point_names[p], story_name(k), n.id, n.description))

    templates: dict[tuple, LineTemplate] = {}
    line_objects, elem_slot = [], {}
    for e in model.elements:
        (pi, ki), (pj, kj) = locate(e.end_i), locate(e.end_j)
        if e.kind == "column":
            if abs(ki - kj) != 1:
                raise FrameError("NON_STRATIFIED_MODEL", f"column {e.id} does not span exactly one story",
                                 subject=f"element {e.id}")
            key, story, rev = ("column", pi), max(ki, kj), ki > kj
            name = f"C{pi + 1}"
            pts = (point_names[pi], point_names[pi])
        else:
            story, rev = ki, pi > pj
            a, b = sorted((pi, pj))
            key = ("girder", a, b)
            name = None
            pts = (point_names[a], point_names[b])
        if key not in templates:
            if name is None:
                name = f"B{sum(1 for t in templates.values() if t.kind == 'girder') + 1}"
            templates[key] = LineTemplate(name, e.kind, *pts)
        tmpl = templates[key]
        line_objects.append(LineObject(tmpl.name, story_name(story), e.section, e.id, e.description, rev))
        elem_slot[e.id] = (tmpl.name, story_name(story), rev)

    supports = []
    for s in model.supports:
        p, k = locate(s.node_id)
        if k != 0:
            raise FrameError("NON_STRATIFIED_MODEL", f"support at node {s.node_id} is above the base",
                             subject=f"node {s.node_id}")
        supports.append(StorySupport(point_names[p], BASE, s.kind))

    point_loads = []
    for pl in model.point_loads:
        p, k = locate(pl.node_id)
        point_loads.append(StoryPointLoad(point_names[p], story_name(k), pl.fx, pl.fy, pl.mz))
    # Line loads are stored in the template direction; a reversed element sees the opposite sign.
    line_loads = []
    for d in model.distributed_loads:
        tmpl_name, story, rev = elem_slot[d.element_id]
        line_loads.append(StoryLineLoad(tmpl_name, story, -d.w_transverse if rev else d.w_transverse))

    ordered_templates = sorted(templates.values(),
                               key=lambda t: (t.kind != "column", point_names.index(t.point_i),
                                              point_names.index(t.point_j)))
    return StoryModel(
        units=model.units,
        story_levels=tuple(reversed(levels)),
        base_points=tuple(zip(point_names, xs)),
        line_templates=tuple(ordered_templates),
        sections=model.sections,
        point_objects=tuple(point_objects),
        line_objects=tuple(line_objects),
        supports=tuple(supports),
        point_loads=tuple(point_loads),
        line_loads=tuple(line_loads),
        provenance=model.provenance,
    )


def from_story_model(sm: StoryModel) -> FrameModel:
    """Rebuild the object-based model.

    Ids stored on the story objects are reused; objects without ids (as
    parsed from a file) are numbered level by level, left to right, with
    elements in story order.  A reference to a point that has no point
    object at that story becomes a dangling node id for
    :func:`validate_model` to report.
    """
    x_of = dict(sm.base_points)
    point_order = {name: i for i, (name, _) in enumerate(sorted(sm.base_points, key=lambda p: p[1]))}
    bottom_up = sm.stories_bottom_up()
    elev = {s.name: s.elevation for s in bottom_up}
    story_idx = {s.name: i for i, s in enumerate(bottom_up)}
    templates = {t.name: t for t in sm.line_templates}

    objs = sorted(sm.point_objects, key=lambda o: (story_idx[o.story], point_order[o.point]))
    next_id = max((o.node_id or 0 for o in objs), default=0) + 1
    node_of: dict[tuple[str, str], int] = {}
    nodes = []
    for o in objs:
        nid = o.node_id
        if nid is None:
            nid, next_id = next_id, next_id + 1
        node_of[(o.point, o.story)] = nid
        nodes.append(NodeRecord(nid, x_of[o.point], elev[o.story], o.description))

    dangling = max(node_of.values(), default=0) + 1

    def node_ref(point: str, story: str) -> int:
        return node_of.get((point, story), dangling)

    lines = sorted(sm.line_objects, key=lambda o: (story_idx[o.story], templates[o.template].kind != "column",
                                                   point_order[templates[o.template].point_i]))
    next_eid = max((o.element_id or 0 for o in lines), default=0) + 1
    elements, elem_of = [], {}
    for o in lines:
        t = templates[o.template]
        if t.kind == "column":
            below = bottom_up[story_idx[o.story] - 1].name if story_idx[o.story] > 0 else o.story
            ends = (node_ref(t.point_i, below), node_ref(t.point_i, o.story))
        else:
            ends = (node_ref(t.point_i, o.story), node_ref(t.point_j, o.story))
        if o.reversed:
            ends = ends[::-1]
        eid = o.element_id
        if eid is None:
            eid, next_eid = next_eid, next_eid + 1
        elem_of[(o.template, o.story)] = (eid, o.reversed)
        elements.append(ElementRecord(eid, t.kind, ends[0], ends[1], o.section, o.description))

    supports = [SupportRecord(node_ref(s.point, s.story), s.kind) for s in sm.supports]
    point_loads = [PointLoad(node_ref(p.point, p.story), p.fx, p.fy, p.mz) for p in sm.point_loads]
    line_loads = []
    for l in sm.line_loads:
        eid, rev = elem_of.get((l.template, l.story), (0, False))
        line_loads.append(DistributedLoad(eid, -l.w_transverse if rev else l.w_transverse))
    return FrameModel(
        units=sm.units,
        nodes=tuple(nodes),
        supports=tuple(supports),
        sections=sm.sections,
        elements=tuple(elements),
        point_loads=tuple(point_loads),
        distributed_loads=tuple(line_loads),
        provenance=sm.provenance,
    )
