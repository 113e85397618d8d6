"""OpenSees Tcl emitter (2D, 3 DOF per node, linear static).

Node and element tags equal the model ids.  Section constants are Tcl
variables ``E_<name>``, ``A_<name>``, ``I_<name>`` so each element line
names the section it uses.
"""
from __future__ import annotations

from ..model import RESTRAINTS, FrameModel
from .base import EmittedScript, check_emittable, finish, num, source_digest

TRANSF_TAG = 1
SERIES_TAG = 1
PATTERN_TAG = 1


def emit_opensees(model: FrameModel, *, name: str = "frame") -> EmittedScript:
    check_emittable(model)
    digest = source_digest(model)
    u = model.units
    out = [
        f"# {name}: plane frame generated by frameforge",
        f"# source-digest: {digest}",
        f"# units: length={u.length_unit} force={u.force_unit}",
        "wipe",
        "model BasicBuilder -ndm 2 -ndf 3",
        "",
        "# nodes: tag x y",
    ]
    out += [f"node {n.id} {num(n.x)} {num(n.y)}" for n in model.nodes]
    out += ["", "# restraints: tag ux uy rz"]
    out += [f"fix {s.node_id} {' '.join(map(str, RESTRAINTS[s.kind]))}" for s in model.supports]
    out += ["", "# sections"]
    for s in model.sections:
        out += [f"set E_{s.name} {num(s.E)}", f"set A_{s.name} {num(s.A)}", f"set I_{s.name} {num(s.I)}"]
    out += ["", f"geomTransf Linear {TRANSF_TAG}", "",
            "# elements: tag iNode jNode A E Iz transfTag"]
    for e in model.elements:
        s = e.section
        out.append(f"element elasticBeamColumn {e.id} {e.end_i} {e.end_j} $A_{s} $E_{s} $I_{s} {TRANSF_TAG}")
    out += ["", f"timeSeries Linear {SERIES_TAG}", f"pattern Plain {PATTERN_TAG} {SERIES_TAG} {{"]
    out += [f"    load {p.node_id} {num(p.fx)} {num(p.fy)} {num(p.mz)}" for p in model.point_loads]
    out += [f"    eleLoad -ele {d.element_id} -type -beamUniform {num(d.w_transverse)}"
            for d in model.distributed_loads]
    out += ["}", ""]
    all_nodes = " ".join(str(n.id) for n in model.nodes)
    out.append(f"recorder Node -file {name}_displacements.out -time -node {all_nodes} -dof 1 2 3 disp")
    if model.supports:
        sup_nodes = " ".join(str(s.node_id) for s in model.supports)
        out.append(f"recorder Node -file {name}_reactions.out -time -node {sup_nodes} -dof 1 2 3 reaction")
    out += [
        "",
        "system BandGeneral",
        "numberer RCM",
        "constraints Plain",
        "integrator LoadControl 1.0",
        "algorithm Linear",
        "analysis Static",
        "analyze 1",
    ]
    return EmittedScript("opensees_tcl", finish(out), digest)
