"""End-to-end compilation: template text -> FrameModel -> scripts."""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

from .codegen import DIALECTS, EmittedScript, emit
from .errors import FrameError, errors_only
from .loads import assign_loads
from .model import COORD_TOL, FrameModel, resolve_connectivity, validate_model
from .problem import FrameProblemSpec, parse_problem
from .topology import build_plan, generate_elements, generate_nodes

TARGET_DIALECTS = {
    "opensees": ("opensees_tcl",),
    "sap2000": ("sap2000_s2k",),
    "etabs": ("etabs_e2k",),
    "all": DIALECTS,
}


def build_model(spec: FrameProblemSpec, *, tol: float = COORD_TOL, provenance: str = "") -> FrameModel:
    """Run the Stage-1 passes and return a validated model."""
    plan = build_plan(spec)
    with ThreadPoolExecutor(max_workers=2) as pool:
        nodes_f = pool.submit(generate_nodes, spec, plan)
        elems_f = pool.submit(generate_elements, spec, plan)
        nodes, supports = nodes_f.result()
        raw_elements = elems_f.result()
    elements = resolve_connectivity(nodes, raw_elements, tol)
    point_loads, distributed = assign_loads(spec, nodes, elements, tol)
    model = FrameModel(
        units=spec.units,
        nodes=tuple(nodes),
        supports=tuple(supports),
        sections=(spec.column_section, spec.girder_section),
        elements=tuple(elements),
        point_loads=tuple(point_loads),
        distributed_loads=tuple(distributed),
        provenance=provenance,
    )
    errs = errors_only(validate_model(model, tol=tol))
    if errs:
        raise FrameError("INVALID_MODEL", "generated model failed validation", diagnostics=errs)
    return model


def compile_text(text: str, **kw) -> FrameModel:
    return build_model(parse_problem(text), **kw)


def compile_targets(model: FrameModel, dialects=DIALECTS, *, parallel: bool = True,
                    name: str = "frame") -> dict[str, EmittedScript]:
    """Emit every requested dialect; emitters share nothing but the model."""
    dialects = tuple(dialects)
    if parallel and len(dialects) > 1:
        with ThreadPoolExecutor(max_workers=len(dialects)) as pool:
            scripts = list(pool.map(lambda d: emit(model, d, name=name), dialects))
    else:
        scripts = [emit(model, d, name=name) for d in dialects]
    return dict(zip(dialects, scripts))
