"""Parse the S2K table subset written by :func:`emit_sap2000`.

Unknown tables or fields are rejected, so a non-canonical header such as
``TABLE:  "LOAD PATTERNS"`` or ``GlobalX`` joint fields fail loudly, as
does a section assignment table placed before frame connectivity.
"""
from __future__ import annotations

import re

from ..codegen.base import FORCE_LABELS, LENGTH_LABELS
from ..codegen.sap2000 import END_MARKER, S2K_RESTRAINTS, S2K_TABLES, TABLE_FIELDS
from ..model import (COORD_TOL, DistributedLoad, ElementRecord, FrameModel, NodeRecord, PointLoad,
                     SectionProperties, SupportRecord)
from ..units import UnitSystem
from ._common import Collector, to_float

_HEADER_RE = re.compile(r'TABLE:\s+"([^"]*)"\s*$')
_FIELD_RE = re.compile(r'(\w+)=("[^"]*"|\S+)')
_KIND_OF_RESTRAINT = {v: k for k, v in S2K_RESTRAINTS.items()}
_ORDER = {name: i for i, (name, _) in enumerate(S2K_TABLES)}
_REQUIRED = ("PROGRAM CONTROL", "JOINT COORDINATES", "LOAD PATTERN DEFINITIONS")
_FORCE_OF = {v: k for k, v in FORCE_LABELS.items()}
_LENGTH_OF = {v: k for k, v in LENGTH_LABELS.items()}


def _tables(text: str, diag: Collector) -> dict[str, list[tuple[int, dict]]]:
    tables: dict[str, list[tuple[int, dict]]] = {}
    current = None
    ended = False
    lines = text.splitlines()
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if lineno == 1 or not line or line.startswith("$"):
            continue
        if ended:
            diag.syntax(lineno, f"content after {END_MARKER!r}")
            break
        if line == END_MARKER:
            ended = True
            continue
        if line.startswith("TABLE:"):
            m = _HEADER_RE.match(line)
            if not m:
                diag.syntax(lineno, 'expected TABLE:  "<name>"')
                current = None
                continue
            name = m.group(1)
            if name not in TABLE_FIELDS:
                diag.syntax(lineno, f"unknown table {name!r}")
                current = None
                continue
            if name in tables:
                diag.duplicate(lineno, f"table {name!r}")
                current = None
                continue
            if tables and _ORDER[name] < max(_ORDER[t] for t in tables):
                diag.syntax(lineno, f"table {name!r} is out of order")
            current = tables[name] = []
            continue
        if current is None:
            diag.syntax(lineno, "row outside of a table")
            continue
        fields = {}
        rest = _FIELD_RE.sub("", line).strip()
        if rest:
            diag.syntax(lineno, f"cannot read {rest!r} as Key=Value")
            continue
        for key, value in _FIELD_RE.findall(line):
            fields[key] = value[1:-1] if value.startswith('"') else value
        expected = TABLE_FIELDS[name]
        unknown = [k for k in fields if k not in expected]
        missing = [k for k in expected if k not in fields]
        if unknown or missing:
            diag.syntax(lineno, f"table {name!r}: unknown fields {unknown}, missing fields {missing}")
            continue
        current.append((lineno, fields))
    if not ended:
        diag.syntax(len(lines), f"file ends without {END_MARKER!r}")
    for name in _REQUIRED:
        if name not in tables:
            diag.syntax(len(lines), f"required table {name!r} is missing")
    return tables


def parse_sap2000(text: str) -> FrameModel:
    """Recover a FrameModel from S2K text; raises FrameError on any diagnostic."""
    diag = Collector()
    tables = _tables(text, diag)

    def rows(name):
        return tables.get(name, [])

    def number(lineno, fields, key):
        v = to_float(fields[key])
        if v is None:
            diag.syntax(lineno, f"{key}={fields[key]!r} is not a number")
        return v

    def integer(lineno, fields, key):
        try:
            return int(fields[key])
        except ValueError:
            diag.syntax(lineno, f"{key}={fields[key]!r} is not an integer")
            return None

    units = None
    for lineno, f in rows("PROGRAM CONTROL"):
        parts = [p.strip() for p in f["CurrUnits"].split(",")]
        if len(parts) != 3 or parts[0] not in _FORCE_OF or parts[1] not in _LENGTH_OF:
            diag.syntax(lineno, f"unsupported CurrUnits {f['CurrUnits']!r}")
        else:
            units = UnitSystem(_LENGTH_OF[parts[1]], _FORCE_OF[parts[0]])

    for lineno, f in rows("ACTIVE DEGREES OF FREEDOM"):
        if (f["UX"], f["UY"], f["UZ"], f["RX"], f["RY"], f["RZ"]) != ("Yes", "No", "Yes", "No", "Yes", "No"):
            diag.syntax(lineno, "only the X-Z plane frame (UX, UZ, RY active) is supported")

    nodes: dict[int, NodeRecord] = {}
    for lineno, f in rows("JOINT COORDINATES"):
        jid = integer(lineno, f, "Joint")
        x, y, z = (number(lineno, f, k) for k in ("XorR", "Y", "Z"))
        if jid is None or None in (x, y, z):
            continue
        if f["CoordSys"] != "GLOBAL" or f["CoordType"] != "Cartesian":
            diag.syntax(lineno, "joints must use the GLOBAL Cartesian system")
        if abs(y) > COORD_TOL:
            diag.syntax(lineno, f"joint {jid} lies off the X-Z plane (Y={y})")
        if jid in nodes:
            diag.duplicate(lineno, f"joint {jid}")
            continue
        nodes[jid] = NodeRecord(jid, x, z)

    supports: dict[int, SupportRecord] = {}
    for lineno, f in rows("JOINT RESTRAINT ASSIGNMENTS"):
        jid = integer(lineno, f, "Joint")
        kind = _KIND_OF_RESTRAINT.get(tuple(f[k] for k in ("U1", "U2", "U3", "R1", "R2", "R3")))
        if jid is None:
            continue
        if kind is None:
            diag.syntax(lineno, "restraint pattern is not a supported support kind")
        elif jid not in nodes:
            diag.undefined(lineno, f"restraint on undefined joint {jid}")
        elif jid in supports:
            diag.duplicate(lineno, f"restraint on joint {jid}")
        else:
            supports[jid] = SupportRecord(jid, kind)

    materials: dict[str, float] = {}
    declared: set[str] = set()
    for lineno, f in rows("MATERIAL PROPERTIES 01 - GENERAL"):
        if f["Material"] in declared:
            diag.duplicate(lineno, f"material {f['Material']!r}")
        declared.add(f["Material"])
    for lineno, f in rows("MATERIAL PROPERTIES 02 - BASIC MECHANICAL PROPERTIES"):
        name = f["Material"]
        if name not in declared:
            diag.undefined(lineno, f"mechanical properties for undeclared material {name!r}")
        elif name in materials:
            diag.duplicate(lineno, f"mechanical properties of {name!r}")
        else:
            e = number(lineno, f, "E1")
            if e is not None:
                materials[name] = e

    sections: dict[str, SectionProperties] = {}
    for lineno, f in rows("FRAME SECTION PROPERTIES 01 - GENERAL"):
        name = f["SectionName"]
        if name in sections:
            diag.duplicate(lineno, f"frame section {name!r}")
            continue
        if f["Material"] not in materials:
            diag.undefined(lineno, f"section {name!r} uses undefined material {f['Material']!r}")
            continue
        a, i = number(lineno, f, "Area"), number(lineno, f, "I33")
        if a is not None and i is not None:
            sections[name] = SectionProperties(name, materials[f["Material"]], a, i)

    connectivity: dict[int, tuple[int, int]] = {}
    for lineno, f in rows("CONNECTIVITY - FRAME"):
        fid, ji, jj = (integer(lineno, f, k) for k in ("Frame", "JointI", "JointJ"))
        if None in (fid, ji, jj):
            continue
        if fid in connectivity:
            diag.duplicate(lineno, f"frame {fid}")
            continue
        bad = [j for j in (ji, jj) if j not in nodes]
        for j in bad:
            diag.undefined(lineno, f"frame {fid} references undefined joint {j}")
        if not bad:
            connectivity[fid] = (ji, jj)

    assigned: dict[int, str] = {}
    for lineno, f in rows("FRAME SECTION ASSIGNMENTS"):
        fid = integer(lineno, f, "Frame")
        if fid is None:
            continue
        if fid not in connectivity:
            diag.undefined(lineno, f"section assigned to undefined frame {fid}")
        elif fid in assigned:
            diag.duplicate(lineno, f"section assignment of frame {fid}")
        elif f["AnalSect"] not in sections:
            diag.undefined(lineno, f"frame {fid} uses undefined section {f['AnalSect']!r}")
        else:
            assigned[fid] = f["AnalSect"]
    for fid in connectivity:
        if fid not in assigned:
            diag.undefined(len(text.splitlines()), f"frame {fid} has no section assignment")

    patterns = set()
    for lineno, f in rows("LOAD PATTERN DEFINITIONS"):
        if f["LoadPat"] in patterns:
            diag.duplicate(lineno, f"load pattern {f['LoadPat']!r}")
        patterns.add(f["LoadPat"])

    point_loads = []
    for lineno, f in rows("JOINT LOADS - FORCE"):
        jid = integer(lineno, f, "Joint")
        vals = [number(lineno, f, k) for k in ("F1", "F2", "F3", "M1", "M2", "M3")]
        if jid is None or None in vals:
            continue
        if f["LoadPat"] not in patterns:
            diag.undefined(lineno, f"joint load uses undefined pattern {f['LoadPat']!r}")
        elif jid not in nodes:
            diag.undefined(lineno, f"load on undefined joint {jid}")
        elif vals[1] or vals[3] or vals[5]:
            diag.syntax(lineno, "out-of-plane load components are not supported")
        else:
            point_loads.append(PointLoad(jid, vals[0], vals[2], -vals[4] if vals[4] else 0.0))

    distributed = []
    for lineno, f in rows("FRAME LOADS - DISTRIBUTED"):
        fid = integer(lineno, f, "Frame")
        vals = [number(lineno, f, k) for k in ("RelDistA", "RelDistB", "FOverLA", "FOverLB")]
        if fid is None or None in vals:
            continue
        if f["LoadPat"] not in patterns:
            diag.undefined(lineno, f"frame load uses undefined pattern {f['LoadPat']!r}")
        elif fid not in connectivity:
            diag.undefined(lineno, f"load on undefined frame {fid}")
        elif (f["Type"], f["Dir"], f["DistType"]) != ("Force", "Gravity", "RelDist") or vals[:2] != [0.0, 1.0] \
                or vals[2] != vals[3]:
            diag.syntax(lineno, "only full-length uniform Gravity force loads are supported")
        else:
            distributed.append(DistributedLoad(fid, -vals[2] if vals[2] else 0.0))

    diag.raise_if_any()
    elements = []
    for fid, (ji, jj) in connectivity.items():
        kind = "column" if abs(nodes[ji].x - nodes[jj].x) <= COORD_TOL else "girder"
        elements.append(ElementRecord(fid, kind, ji, jj, assigned[fid]))
    return FrameModel(units=units, nodes=tuple(nodes.values()), supports=tuple(supports.values()),
                      sections=tuple(sections.values()), elements=tuple(elements),
                      point_loads=tuple(point_loads), distributed_loads=tuple(distributed))
