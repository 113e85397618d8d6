"""Platform-agnostic plane-frame model: types, validation and canonical JSON.

The :class:`FrameModel` is the hand-off point between problem
interpretation and script generation.  Everything in it is immutable;
collections are stored as tuples in a canonical order so two models with
the same content compare (and serialize) equal.
"""
from __future__ import annotations

import json
import re
from collections import Counter
from dataclasses import dataclass, fields, replace
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import Diagnostic, FrameError
from .units import UnitSystem

COORD_TOL = 1e-6

SUPPORT_KINDS = ("fixed", "pinned", "roller_x", "roller_y")
ELEMENT_KINDS = ("column", "girder")

# Restrained (ux, uy, rz) per support kind.
RESTRAINTS = {
    "fixed": (1, 1, 1),
    "pinned": (1, 1, 0),
    "roller_x": (0, 1, 0),
    "roller_y": (1, 0, 0),
}

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")

Coord = tuple[float, float]
EndRef = Union[int, Coord]


@dataclass(frozen=True)
class NodeRecord:
    id: int
    x: float
    y: float
    description: str = ""


@dataclass(frozen=True)
class SupportRecord:
    node_id: int
    kind: str


@dataclass(frozen=True)
class SectionProperties:
    name: str
    E: float
    A: float
    I: float


@dataclass(frozen=True)
class ElementRecord:
    """A column or girder.  Ends are node ids once resolved, ``(x, y)`` before."""

    id: int
    kind: str
    end_i: EndRef
    end_j: EndRef
    section: str
    description: str = ""

    @property
    def resolved(self) -> bool:
        return isinstance(self.end_i, int) and isinstance(self.end_j, int)


@dataclass(frozen=True)
class PointLoad:
    node_id: int
    fx: float = 0.0
    fy: float = 0.0
    mz: float = 0.0


@dataclass(frozen=True)
class DistributedLoad:
    """Uniform load along a girder, in its local transverse direction.

    Girders run left to right, so local +y is global +y and a gravity
    load is negative.
    """

    element_id: int
    w_transverse: float


def _load_key(p: PointLoad):
    return (p.node_id, p.fx, p.fy, p.mz)


@dataclass(frozen=True)
class FrameModel:
    units: UnitSystem
    nodes: tuple[NodeRecord, ...]
    supports: tuple[SupportRecord, ...] = ()
    sections: tuple[SectionProperties, ...] = ()
    elements: tuple[ElementRecord, ...] = ()
    point_loads: tuple[PointLoad, ...] = ()
    distributed_loads: tuple[DistributedLoad, ...] = ()
    provenance: str = ""

    def __post_init__(self):
        # Canonical ordering makes equality and serialization order-independent.
        s = object.__setattr__
        s(self, "nodes", tuple(sorted(self.nodes, key=lambda n: n.id)))
        s(self, "supports", tuple(sorted(self.supports, key=lambda r: (r.node_id, r.kind))))
        s(self, "sections", tuple(sorted(self.sections, key=lambda r: r.name)))
        s(self, "elements", tuple(sorted(self.elements, key=lambda e: e.id)))
        s(self, "point_loads", tuple(sorted(self.point_loads, key=_load_key)))
        s(self, "distributed_loads", tuple(sorted(self.distributed_loads,
                                                  key=lambda d: (d.element_id, d.w_transverse))))

    def node_map(self) -> dict[int, NodeRecord]:
        return {n.id: n for n in self.nodes}

    def element_map(self) -> dict[int, ElementRecord]:
        return {e.id: e for e in self.elements}

    def section_map(self) -> dict[str, SectionProperties]:
        return {s.name: s for s in self.sections}

    def support_map(self) -> dict[int, SupportRecord]:
        return {s.node_id: s for s in self.supports}

    def with_loads(self, point_loads=(), distributed_loads=()) -> "FrameModel":
        return replace(self, point_loads=tuple(point_loads), distributed_loads=tuple(distributed_loads))


# --------------------------------------------------------------------------- validation

def validate_model(model: FrameModel, *, analyzable: bool = False,
                   tol: float = COORD_TOL) -> list[Diagnostic]:
    """Check every model invariant and return the violations.

    Never raises; an empty list means the model is well formed.  With
    ``analyzable=True`` a model without any load is also reported.
    """
    out: list[Diagnostic] = []

    def err(code, msg, subject=None, severity="error"):
        out.append(Diagnostic(code, msg, severity=severity, subject=subject))

    node_ids = Counter(n.id for n in model.nodes)
    for nid, count in node_ids.items():
        if count > 1:
            err("DUPLICATE_ID", f"node id {nid} declared {count} times", f"node {nid}")
    for n in model.nodes:
        if not isinstance(n.id, int) or n.id < 1:
            err("INVALID_ID", f"node id {n.id!r} is not a positive integer", f"node {n.id}")
        if not (np.isfinite(n.x) and np.isfinite(n.y)):
            err("INVALID_COORDINATE", "non-finite coordinate", f"node {n.id}")

    if model.nodes:
        xy = np.array([(n.x, n.y) for n in model.nodes], dtype=float)
        for a in range(len(xy)):
            close = np.nonzero(np.max(np.abs(xy[a + 1:] - xy[a]), axis=1) <= tol)[0]
            for b in close:
                other = model.nodes[a + 1 + b]
                err("DUPLICATE_COORDINATE",
                    f"nodes {model.nodes[a].id} and {other.id} share ({other.x}, {other.y})",
                    f"node {other.id}")

    nodes = model.node_map()
    sections = model.section_map()

    sec_names = Counter(s.name for s in model.sections)
    for name, count in sec_names.items():
        if count > 1:
            err("DUPLICATE_ID", f"section {name!r} declared {count} times", f"section {name}")
    for s in model.sections:
        if not _IDENT.fullmatch(s.name):
            err("INVALID_SECTION_NAME", f"section name {s.name!r} is not an identifier", f"section {s.name}")
        for attr in ("E", "A", "I"):
            v = getattr(s, attr)
            if not (np.isfinite(v) and v > 0):
                err("INVALID_SECTION", f"{attr} = {v!r} must be positive", f"section {s.name}")

    seen_support = Counter(s.node_id for s in model.supports)
    for nid, count in seen_support.items():
        if count > 1:
            err("DUPLICATE_SUPPORT", f"node {nid} carries {count} supports", f"node {nid}")
    for s in model.supports:
        if s.node_id not in nodes:
            err("DANGLING_NODE_REF", f"support references missing node {s.node_id}", f"support {s.node_id}")
        if s.kind not in SUPPORT_KINDS:
            err("INVALID_SUPPORT_KIND", f"unknown support kind {s.kind!r}", f"support {s.node_id}")

    elem_ids = Counter(e.id for e in model.elements)
    for eid, count in elem_ids.items():
        if count > 1:
            err("DUPLICATE_ID", f"element id {eid} declared {count} times", f"element {eid}")
    for e in model.elements:
        subj = f"element {e.id}"
        if not isinstance(e.id, int) or e.id < 1:
            err("INVALID_ID", f"element id {e.id!r} is not a positive integer", subj)
        if e.kind not in ELEMENT_KINDS:
            err("INVALID_ELEMENT_KIND", f"unknown element kind {e.kind!r}", subj)
        if e.section not in sections:
            err("DANGLING_SECTION_REF", f"section {e.section!r} is not defined", subj)
        if not e.resolved:
            err("UNRESOLVED_END", "element ends must reference node ids", subj)
            continue
        if e.end_i == e.end_j:
            err("DEGENERATE_ELEMENT", "both ends reference the same node", subj)
            continue
        missing = [r for r in (e.end_i, e.end_j) if r not in nodes]
        for r in missing:
            err("DANGLING_NODE_REF", f"end references missing node {r}", subj)
        if missing:
            continue
        a, b = nodes[e.end_i], nodes[e.end_j]
        if e.kind == "column" and abs(a.x - b.x) > tol:
            err("COLUMN_NOT_VERTICAL", "column ends do not share x", subj)
        if e.kind == "girder" and abs(a.y - b.y) > tol:
            err("GIRDER_NOT_HORIZONTAL", "girder ends do not share y", subj)

    elements = model.element_map()
    for p in model.point_loads:
        if p.node_id not in nodes:
            err("DANGLING_NODE_REF", f"point load references missing node {p.node_id}", f"load @{p.node_id}")
        if p.fx == 0 and p.fy == 0 and p.mz == 0:
            err("ZERO_LOAD", "point load has no nonzero component", f"load @{p.node_id}")
    for d in model.distributed_loads:
        e = elements.get(d.element_id)
        if e is None:
            err("DANGLING_ELEMENT_REF", f"distributed load references missing element {d.element_id}",
                f"load @element {d.element_id}")
        elif e.kind != "girder":
            err("UDL_ON_NON_GIRDER", f"element {e.id} is a {e.kind}", f"load @element {d.element_id}")

    # Base supports and connectivity only make sense once references are sound.
    supported = set(seen_support)
    for n in model.nodes:
        if abs(n.y) <= tol and n.id not in supported:
            err("UNSUPPORTED_BASE_NODE", f"base node {n.id} has no support", f"node {n.id}")

    if model.nodes and not any(d.code in ("DANGLING_NODE_REF", "UNRESOLVED_END") for d in out):
        parent = {n.id: n.id for n in model.nodes}

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for e in model.elements:
            if e.resolved and e.end_i in parent and e.end_j in parent:
                parent[find(e.end_i)] = find(e.end_j)
        roots = {find(n.id) for n in model.nodes}
        if len(roots) > 1:
            err("DISCONNECTED_MODEL", f"element graph has {len(roots)} separate parts")

    if analyzable and not model.point_loads and not model.distributed_loads:
        err("NO_LOADS", "model has no loads")
    return out


# --------------------------------------------------------------------------- connectivity

def match_node(nodes: Sequence[NodeRecord], xy: Coord, tol: float = COORD_TOL) -> int:
    """Id of the unique node within ``tol`` of ``xy``."""
    hits = [n.id for n in nodes if abs(n.x - xy[0]) <= tol and abs(n.y - xy[1]) <= tol]
    if not hits:
        raise FrameError("NO_MATCHING_NODE", f"no node at ({xy[0]!r}, {xy[1]!r})")
    if len(hits) > 1:
        raise FrameError("AMBIGUOUS_MATCH", f"nodes {hits} all lie within {tol} of ({xy[0]!r}, {xy[1]!r})")
    return hits[0]


def resolve_connectivity(nodes: Sequence[NodeRecord], elements: Iterable[ElementRecord],
                         tol: float = COORD_TOL) -> list[ElementRecord]:
    """Replace coordinate ends with node ids, keeping element order."""
    out = []
    for e in elements:
        ends = []
        for end in (e.end_i, e.end_j):
            if isinstance(end, int):
                ends.append(end)
                continue
            try:
                ends.append(match_node(nodes, end, tol))
            except FrameError as exc:
                raise FrameError(exc.code, f"element {e.id}: {exc.diagnostics[0].message}",
                                 subject=f"element {e.id}") from None
        out.append(replace(e, end_i=ends[0], end_j=ends[1]))
    return out


# --------------------------------------------------------------------------- JSON

_SCHEMA = {
    "units": {"length_unit": str, "force_unit": str},
    "nodes": {"id": int, "x": float, "y": float, "description": str},
    "supports": {"node_id": int, "kind": str},
    "sections": {"name": str, "E": float, "A": float, "I": float},
    "elements": {"id": int, "kind": str, "end_i": int, "end_j": int, "section": str, "description": str},
    "point_loads": {"node_id": int, "fx": float, "fy": float, "mz": float},
    "distributed_loads": {"element_id": int, "w_transverse": float},
}
_RECORDS = {
    "nodes": NodeRecord,
    "supports": SupportRecord,
    "sections": SectionProperties,
    "elements": ElementRecord,
    "point_loads": PointLoad,
    "distributed_loads": DistributedLoad,
}
_TOP = ("units", *_RECORDS, "provenance")


def model_to_dict(model: FrameModel) -> dict:
    d = {"units": {"length_unit": model.units.length_unit, "force_unit": model.units.force_unit},
         "provenance": model.provenance}
    for key in _RECORDS:
        d[key] = [{f.name: _plain(getattr(rec, f.name)) for f in fields(rec)} for rec in getattr(model, key)]
    return d


def _plain(v):
    if isinstance(v, float):
        return 0.0 if v == 0 else v
    return v


def to_canonical_json(model: FrameModel) -> str:
    """Deterministic JSON: sorted keys, id-ordered arrays, shortest round-trip floats."""
    errs = [d for d in validate_model(model) if d.severity == "error"]
    if errs:
        raise FrameError("INVALID_MODEL", "refusing to serialize an invalid model", diagnostics=errs)
    return json.dumps(model_to_dict(model), sort_keys=True, indent=1, ensure_ascii=True,
                      allow_nan=False) + "\n"


def _coerce(value, kind, where):
    if kind is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise FrameError("SCHEMA_ERROR", f"{where}: expected a number, got {value!r}", subject=where)
        return float(value)
    if kind is int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise FrameError("SCHEMA_ERROR", f"{where}: expected an integer, got {value!r}", subject=where)
        return value
    if not isinstance(value, str):
        raise FrameError("SCHEMA_ERROR", f"{where}: expected a string, got {value!r}", subject=where)
    return value


def _check_keys(obj, allowed, where):
    if not isinstance(obj, dict):
        raise FrameError("SCHEMA_ERROR", f"{where}: expected an object", subject=where)
    for key in obj:
        if key not in allowed:
            raise FrameError("UNKNOWN_FIELD", f"{where}: unknown field {key!r}", subject=f"{where}.{key}")
    for key in allowed:
        if key not in obj:
            raise FrameError("SCHEMA_ERROR", f"{where}: missing field {key!r}", subject=f"{where}.{key}")


def model_from_dict(d: dict) -> FrameModel:
    _check_keys(d, _TOP, "model")
    _check_keys(d["units"], _SCHEMA["units"], "units")
    units = UnitSystem(**{k: _coerce(v, str, f"units.{k}") for k, v in d["units"].items()})
    kwargs = {}
    for key, cls in _RECORDS.items():
        rows = d[key]
        if not isinstance(rows, list):
            raise FrameError("SCHEMA_ERROR", f"{key}: expected an array", subject=key)
        recs = []
        for i, row in enumerate(rows):
            where = f"{key}[{i}]"
            _check_keys(row, _SCHEMA[key], where)
            recs.append(cls(**{k: _coerce(row[k], t, f"{where}.{k}") for k, t in _SCHEMA[key].items()}))
        kwargs[key] = tuple(recs)
    return FrameModel(units=units, provenance=_coerce(d["provenance"], str, "provenance"), **kwargs)


def from_json(text: str) -> FrameModel:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FrameError("PARSE_ERROR", exc.msg, line=exc.lineno, column=exc.colno) from None
    return model_from_dict(d)
