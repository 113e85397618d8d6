"""Parse the OpenSees Tcl subset written by :func:`emit_opensees`."""
from __future__ import annotations

import re

from ..errors import FrameError
from ..model import (COORD_TOL, RESTRAINTS, DistributedLoad, ElementRecord, FrameModel, NodeRecord, PointLoad,
                     SectionProperties, SupportRecord)
from ..units import UnitSystem
from ._common import Collector, to_float

_KIND_OF_RESTRAINT = {v: k for k, v in RESTRAINTS.items()}
_UNITS_RE = re.compile(r"#\s*units:\s*length=(\w+)\s+force=(\w+)\s*$")
_ANALYSIS = ("system", "numberer", "constraints", "integrator", "algorithm", "analysis")


def parse_opensees(text: str) -> FrameModel:
    """Recover a FrameModel from a Tcl script.

    Element kind is inferred from geometry (vertical members are columns).
    Raises FrameError carrying every diagnostic found.
    """
    diag = Collector()
    units = None
    variables: dict[str, tuple[float, int]] = {}
    nodes: dict[int, NodeRecord] = {}
    supports: dict[int, SupportRecord] = {}
    raw_elements: list[tuple[int, int, int, list[str], int]] = []
    loads: list[tuple[int, PointLoad]] = []
    ele_loads: list[tuple[int, int, float]] = []
    transforms: set[int] = set()
    in_pattern = False
    seen_pattern = False
    analyzed = False
    lines = text.splitlines()

    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            m = _UNITS_RE.match(line)
            if m:
                try:
                    units = UnitSystem(*m.groups())
                except FrameError as exc:
                    diag.syntax(lineno, exc.diagnostics[0].message)
            continue
        tok = line.split()
        cmd, args = tok[0], tok[1:]
        if analyzed:
            diag.syntax(lineno, f"unexpected {cmd!r} after 'analyze'")
            continue

        def ints(values, what):
            try:
                return [int(v) for v in values]
            except ValueError:
                diag.syntax(lineno, f"{what}: expected integers, got {' '.join(values)!r}")
                return None

        def floats(values, what):
            out = []
            for v in values:
                f = to_float(v)
                if f is None:
                    diag.syntax(lineno, f"{what}: expected a number, got {v!r}")
                    return None
                out.append(f)
            return out

        if in_pattern:
            if cmd == "}" and not args:
                in_pattern = False
            elif cmd == "load" and len(args) == 4:
                tag = ints(args[:1], "load")
                vals = floats(args[1:], "load")
                if tag and vals:
                    loads.append((lineno, PointLoad(tag[0], *vals)))
            elif cmd == "eleLoad" and len(args) == 5 and args[0] == "-ele" and args[2:4] == ["-type", "-beamUniform"]:
                tag = ints(args[1:2], "eleLoad")
                vals = floats(args[4:], "eleLoad")
                if tag and vals:
                    ele_loads.append((lineno, tag[0], vals[0]))
            else:
                diag.syntax(lineno, "expected 'load <node> <fx> <fy> <mz>', "
                                    "'eleLoad -ele <tag> -type -beamUniform <w>' or '}'")
            continue

        if cmd == "wipe" and not args:
            pass
        elif cmd == "model":
            if args != ["BasicBuilder", "-ndm", "2", "-ndf", "3"]:
                diag.syntax(lineno, "only 'model BasicBuilder -ndm 2 -ndf 3' is supported")
        elif cmd == "node":
            if len(args) != 3:
                diag.syntax(lineno, "expected 'node <tag> <x> <y>'")
                continue
            tag, xy = ints(args[:1], "node"), floats(args[1:], "node")
            if tag and xy:
                if tag[0] in nodes:
                    diag.duplicate(lineno, f"node {tag[0]}")
                else:
                    nodes[tag[0]] = NodeRecord(tag[0], *xy)
        elif cmd == "fix":
            vals = ints(args, "fix") if len(args) == 4 else None
            if len(args) != 4:
                diag.syntax(lineno, "expected 'fix <node> <ux> <uy> <rz>'")
            if not vals:
                continue
            kind = _KIND_OF_RESTRAINT.get(tuple(vals[1:]))
            if kind is None:
                diag.syntax(lineno, f"restraint pattern {vals[1:]} is not a supported support kind")
            elif vals[0] not in nodes:
                diag.undefined(lineno, f"fix references undefined node {vals[0]}")
            elif vals[0] in supports:
                diag.duplicate(lineno, f"support on node {vals[0]}")
            else:
                supports[vals[0]] = SupportRecord(vals[0], kind)
        elif cmd == "set":
            if len(args) != 2 or not re.fullmatch(r"[A-Za-z_]\w*", args[0]):
                diag.syntax(lineno, "expected 'set <name> <number>'")
                continue
            val = floats(args[1:], "set")
            if val:
                if args[0] in variables:
                    diag.duplicate(lineno, f"variable {args[0]}")
                else:
                    variables[args[0]] = (val[0], lineno)
        elif cmd == "geomTransf":
            if len(args) != 2 or args[0] != "Linear":
                diag.syntax(lineno, "expected 'geomTransf Linear <tag>'")
                continue
            tag = ints(args[1:], "geomTransf")
            if tag:
                transforms.add(tag[0])
        elif cmd == "element":
            if len(args) != 8 or args[0] != "elasticBeamColumn":
                diag.syntax(lineno, "expected 'element elasticBeamColumn <tag> <i> <j> <A> <E> <Iz> <transf>'")
                continue
            tags = ints(args[1:4] + args[7:], "element")
            if tags:
                raw_elements.append((lineno, tags[0], tags[1], tags[2], args[4:7], tags[3]))
        elif cmd == "timeSeries":
            if args != ["Linear", "1"]:
                diag.syntax(lineno, "expected 'timeSeries Linear 1'")
        elif cmd == "pattern":
            if args != ["Plain", "1", "1", "{"] or seen_pattern:
                diag.syntax(lineno, "expected a single 'pattern Plain 1 1 {'")
            in_pattern = seen_pattern = True
        elif cmd == "recorder":
            if len(args) < 2 or args[0] != "Node":
                diag.syntax(lineno, "expected 'recorder Node ...'")
        elif cmd in _ANALYSIS:
            if not args:
                diag.syntax(lineno, f"{cmd} needs an argument")
        elif cmd == "analyze":
            if args != ["1"]:
                diag.syntax(lineno, "expected 'analyze 1'")
            analyzed = True
        else:
            diag.syntax(lineno, f"unknown command {cmd!r}")

    last = len(lines)
    if in_pattern:
        diag.syntax(last, "unterminated 'pattern' block (missing '}')")
    if not analyzed:
        diag.syntax(last, "script ends before 'analyze'")
    if units is None:
        diag.syntax(1, "missing '# units: length=<unit> force=<unit>' header")

    sections: dict[tuple[float, float, float], SectionProperties] = {}
    named: dict[str, SectionProperties] = {}
    for var in variables:
        if var.startswith("E_"):
            sec = var[2:]
            if f"A_{sec}" in variables and f"I_{sec}" in variables:
                named[sec] = SectionProperties(sec, variables[var][0], variables[f"A_{sec}"][0],
                                               variables[f"I_{sec}"][0])
    elements: dict[int, ElementRecord] = {}
    for lineno, tag, i, j, props, transf in raw_elements:
        if tag in elements:
            diag.duplicate(lineno, f"element {tag}")
            continue
        for n in (i, j):
            if n not in nodes:
                diag.undefined(lineno, f"element {tag} references undefined node {n}")
        if transf not in transforms:
            diag.undefined(lineno, f"element {tag} references undefined geomTransf {transf}")
        sec = _section(props, variables, sections, named, lineno, diag)
        if sec is None or i not in nodes or j not in nodes:
            continue
        kind = "column" if abs(nodes[i].x - nodes[j].x) <= COORD_TOL else "girder"
        elements[tag] = ElementRecord(tag, kind, i, j, sec.name)

    point_loads = []
    for lineno, p in loads:
        if p.node_id not in nodes:
            diag.undefined(lineno, f"load references undefined node {p.node_id}")
        else:
            point_loads.append(p)
    distributed = []
    for lineno, tag, w in ele_loads:
        if tag not in elements:
            diag.undefined(lineno, f"eleLoad references undefined element {tag}")
        else:
            distributed.append(DistributedLoad(tag, w))

    diag.raise_if_any()
    return FrameModel(units=units, nodes=tuple(nodes.values()), supports=tuple(supports.values()),
                      sections=tuple(named.values()), elements=tuple(elements.values()),
                      point_loads=tuple(point_loads), distributed_loads=tuple(distributed))


def _section(props, variables, anonymous, named, lineno, diag: Collector):
    """Resolve ``A E Iz`` tokens to a section.

    ``$A_<name> $E_<name> $I_<name>`` names the section; literal numbers get
    an anonymous section shared by equal values.
    """
    values, suffixes = [], set()
    for tok, prefix in zip(props, ("A", "E", "I")):
        if tok.startswith("$"):
            var = tok[1:]
            if var not in variables:
                diag.undefined(lineno, f"undefined variable ${var}")
                return None
            values.append(variables[var][0])
            suffixes.add(var[2:] if var.startswith(prefix + "_") else None)
        else:
            f = to_float(tok)
            if f is None:
                diag.syntax(lineno, f"expected a number or $variable, got {tok!r}")
                return None
            values.append(f)
            suffixes.add(None)
    A, E, I = values
    name = suffixes.pop() if len(suffixes) == 1 and None not in suffixes else None
    if name is not None:
        if name not in named:
            named[name] = SectionProperties(name, E, A, I)
        return named[name]
    if (E, A, I) not in anonymous:
        name = f"S{len(named) + 1}"
        while name in named:
            name += "_"
        anonymous[(E, A, I)] = named[name] = SectionProperties(name, E, A, I)
    return anonymous[(E, A, I)]
