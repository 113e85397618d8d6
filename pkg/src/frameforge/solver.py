"""Linear-elastic plane-frame analysis by the direct stiffness method.

Conventions
-----------
* Global axes: x to the right, y up, rotations counter-clockwise positive.
* Element local x runs from ``end_i`` to ``end_j``; local y is local x
  turned 90 degrees counter-clockwise.  ``w_transverse`` acts along local y.
* ``end_forces`` are the forces the nodes exert on the element, in local
  axes: ``(N_i, V_i, M_i, N_j, V_j, M_j)``.
* Diagrams: axial is tension positive, shear is the resultant transverse
  force on the segment left of the cut, and moment is positive when it
  bends the element concave towards local +y (sagging for a girder
  drawn left to right).

Euler-Bernoulli elements, so shear deformation is ignored.
"""
from __future__ import annotations

import json
import math
import warnings
from collections import defaultdict
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import Diagnostic, FrameError, FrameWarning
from .model import COORD_TOL, RESTRAINTS, FrameModel, validate_model

DOF_NAMES = ("ux", "uy", "rz")
ILL_CONDITIONED_LIMIT = 1e12
SINGULAR_LIMIT = 1e15
DEFAULT_SAMPLES = 11

Vec3 = tuple[float, float, float]


@dataclass(frozen=True, eq=False)
class SolutionState:
    """Result of :func:`solve`; every mapping is keyed by node or element id."""

    displacements: dict[int, Vec3]
    reactions: dict[int, Vec3]
    end_forces: dict[int, tuple[float, ...]]
    diagrams: dict[int, tuple[Vec3, ...]]
    node_coords: dict[int, tuple[float, float]]
    element_ends: dict[int, tuple[int, int]]
    diagnostics: tuple[Diagnostic, ...] = ()
    units: dict = field(default_factory=dict)


def local_stiffness(E: float, A: float, I: float, L: float) -> np.ndarray:
    a = E * A / L
    b = 12 * E * I / L**3
    c = 6 * E * I / L**2
    d = 4 * E * I / L
    e = 2 * E * I / L
    return np.array([
        [a, 0, 0, -a, 0, 0],
        [0, b, c, 0, -b, c],
        [0, c, d, 0, -c, e],
        [-a, 0, 0, a, 0, 0],
        [0, -b, -c, 0, b, -c],
        [0, c, e, 0, -c, d],
    ], dtype=float)


def rotation(c: float, s: float) -> np.ndarray:
    """Global-to-local transformation for one element."""
    r = np.array([[c, s, 0.0], [-s, c, 0.0], [0.0, 0.0, 1.0]])
    t = np.zeros((6, 6))
    t[:3, :3] = r
    t[3:, 3:] = r
    return t


def fixed_end_loads(w: float, L: float) -> np.ndarray:
    """Equivalent nodal loads (local axes) of a full-span uniform load ``w``."""
    return np.array([0.0, w * L / 2, w * L**2 / 12, 0.0, w * L / 2, -w * L**2 / 12])


@dataclass(frozen=True)
class _Element:
    id: int
    dofs: np.ndarray
    length: float
    k_local: np.ndarray
    T: np.ndarray
    w: float


def _prepare(model: FrameModel):
    nodes = model.node_map()
    sections = model.section_map()
    index = {nid: k for k, nid in enumerate(sorted(nodes))}
    udl = defaultdict(float)
    for d in model.distributed_loads:
        udl[d.element_id] += d.w_transverse
    elements = []
    for e in model.elements:
        ni, nj = nodes[e.end_i], nodes[e.end_j]
        dx, dy = nj.x - ni.x, nj.y - ni.y
        L = math.hypot(dx, dy)
        sec = sections[e.section]
        dofs = np.array([3 * index[e.end_i] + k for k in range(3)] + [3 * index[e.end_j] + k for k in range(3)])
        elements.append(_Element(e.id, dofs, L, local_stiffness(sec.E, sec.A, sec.I, L),
                                 rotation(dx / L, dy / L), udl[e.id]))
    return index, elements


def assemble(model: FrameModel) -> tuple[np.ndarray, np.ndarray]:
    """Global stiffness matrix and load vector (nodal loads plus fixed-end equivalents)."""
    index, elements = _prepare(model)
    n = 3 * len(index)
    K = np.zeros((n, n))
    F = np.zeros(n)
    for el in elements:
        K[np.ix_(el.dofs, el.dofs)] += el.T.T @ el.k_local @ el.T
        if el.w:
            F[el.dofs] += el.T.T @ fixed_end_loads(el.w, el.length)
    for p in model.point_loads:
        F[3 * index[p.node_id]:3 * index[p.node_id] + 3] += (p.fx, p.fy, p.mz)
    return K, F


def _restrained(model: FrameModel, index) -> np.ndarray:
    fixed = np.zeros(3 * len(index), dtype=bool)
    for s in model.supports:
        for k, flag in enumerate(RESTRAINTS[s.kind]):
            if flag:
                fixed[3 * index[s.node_id] + k] = True
    return fixed


def solve(model: FrameModel, *, n_samples: int = DEFAULT_SAMPLES, tol: float = COORD_TOL) -> SolutionState:
    """Displacements, reactions, end forces and diagrams of a validated model.

    Raises FrameError(SINGULAR_SYSTEM) for mechanisms and reports an
    ILL_CONDITIONED warning diagnostic when the scaled stiffness matrix is
    close to singular.
    """
    errs = [d for d in validate_model(model, analyzable=True, tol=tol) if d.severity == "error"]
    if errs:
        raise FrameError("INVALID_MODEL", "model cannot be analysed", diagnostics=errs)
    index, elements = _prepare(model)
    K, F = assemble(model)
    fixed = _restrained(model, index)
    free = np.flatnonzero(~fixed)
    order = sorted(index)
    diagnostics: list[Diagnostic] = []

    u = np.zeros(len(F))
    if len(free):
        Kff = K[np.ix_(free, free)]
        diag = np.diag(Kff)
        if np.any(diag <= 0):
            _singular(free[int(np.argmin(diag))], order)
        scale = 1.0 / np.sqrt(diag)
        Ks = Kff * np.outer(scale, scale)
        cond = np.linalg.cond(Ks)
        if not np.isfinite(cond) or cond > SINGULAR_LIMIT:
            _, vecs = np.linalg.eigh(Ks)
            _singular(free[int(np.argmax(np.abs(vecs[:, 0])))], order)
        if cond > ILL_CONDITIONED_LIMIT:
            d = Diagnostic("ILL_CONDITIONED", f"condition estimate {cond:.3e} exceeds {ILL_CONDITIONED_LIMIT:.0e}",
                           severity="warning")
            diagnostics.append(d)
            warnings.warn(FrameWarning(d), stacklevel=2)
        try:
            factor = scipy.linalg.cho_factor(Ks)
        except np.linalg.LinAlgError:
            _singular(free[0], order)
        u[free] = scale * scipy.linalg.cho_solve(factor, scale * F[free])

    r = K @ u - F
    nodes = model.node_map()
    displacements = {nid: tuple(float(v) for v in u[3 * k:3 * k + 3]) for nid, k in index.items()}
    reactions = {}
    for s in model.supports:
        k = index[s.node_id]
        reactions[s.node_id] = tuple(float(r[3 * k + j]) if fixed[3 * k + j] else 0.0 for j in range(3))

    end_forces = {}
    for el in elements:
        f = el.k_local @ el.T @ u[el.dofs]
        if el.w:
            f = f - fixed_end_loads(el.w, el.length)
        end_forces[el.id] = tuple(float(v) for v in f)

    partial = SolutionState(
        displacements=displacements,
        reactions=reactions,
        end_forces=end_forces,
        diagrams={},
        node_coords={nid: (n.x, n.y) for nid, n in nodes.items()},
        element_ends={e.id: (e.end_i, e.end_j) for e in model.elements},
        diagnostics=tuple(diagnostics),
        units={"length_unit": model.units.length_unit, "force_unit": model.units.force_unit},
    )
    return _with_diagrams(partial, internal_force_diagrams(model, partial, n_samples))


def _with_diagrams(state: SolutionState, diagrams) -> SolutionState:
    return SolutionState(state.displacements, state.reactions, state.end_forces, diagrams, state.node_coords,
                         state.element_ends, state.diagnostics, state.units)


def _singular(dof: int, order: list[int]):
    nid, k = order[dof // 3], dof % 3
    raise FrameError("SINGULAR_SYSTEM",
                     f"structure is a mechanism or unsupported: free {DOF_NAMES[k]} at node {nid}",
                     subject=f"node {nid}")


def internal_force_diagrams(model: FrameModel, solution: SolutionState,
                            n_samples: int = DEFAULT_SAMPLES) -> dict[int, tuple[Vec3, ...]]:
    """Sample (axial, shear, moment) at ``n_samples`` equally spaced stations per element.

    The first and last stations reproduce the end forces exactly.
    """
    if n_samples < 2:
        raise FrameError("INVALID_VALUE", f"n_samples must be at least 2, got {n_samples}")
    nodes = model.node_map()
    udl = defaultdict(float)
    for d in model.distributed_loads:
        udl[d.element_id] += d.w_transverse
    out = {}
    for e in model.elements:
        ni, nj = nodes[e.end_i], nodes[e.end_j]
        L = math.hypot(nj.x - ni.x, nj.y - ni.y)
        Ni, Vi, Mi, Nj, Vj, Mj = solution.end_forces[e.id]
        w = udl[e.id]
        samples = []
        for k in range(n_samples):
            x = L * k / (n_samples - 1)
            samples.append((-Ni, Vi + w * x, -Mi + Vi * x + w * x * x / 2))
        samples[0] = (-Ni, Vi, -Mi)
        samples[-1] = (Nj, -Vj, Mj)
        out[e.id] = tuple(samples)
    return out


def _match(a: SolutionState, b: SolutionState, tol: float):
    node_map = {}
    pool = dict(b.node_coords)
    for nid, (x, y) in sorted(a.node_coords.items()):
        hit = next((m for m, (u, v) in pool.items() if math.hypot(x - u, y - v) <= tol), None)
        if hit is None:
            raise FrameError("UNMATCHED_TOPOLOGY", f"node {nid} at ({x}, {y}) has no counterpart")
        node_map[nid] = hit
        del pool[hit]
    if pool:
        raise FrameError("UNMATCHED_TOPOLOGY", f"{len(pool)} nodes of the second solution have no counterpart")
    by_pair = {frozenset(ends): eid for eid, ends in b.element_ends.items()}
    if len(by_pair) != len(b.element_ends):
        raise FrameError("UNMATCHED_TOPOLOGY", "parallel elements cannot be matched by their end nodes")
    elem_map = {}
    for eid, (i, j) in sorted(a.element_ends.items()):
        other = by_pair.pop(frozenset((node_map[i], node_map[j])), None)
        if other is None:
            raise FrameError("UNMATCHED_TOPOLOGY", f"element {eid} has no counterpart")
        elem_map[eid] = (other, b.element_ends[other][0] == node_map[i])
    if by_pair:
        raise FrameError("UNMATCHED_TOPOLOGY", f"{len(by_pair)} elements of the second solution have no counterpart")
    return node_map, elem_map


def _flip_end_forces(f):
    Ni, Vi, Mi, Nj, Vj, Mj = f
    return (-Nj, -Vj, Mj, -Ni, -Vi, Mi)


def _flip_diagram(samples):
    return tuple((n, v, -m) for n, v, m in reversed(samples))


def solutions_equivalent(a: SolutionState, b: SolutionState, rel_tol: float = 1e-9,
                         tol: float = COORD_TOL) -> tuple[bool, list[str]]:
    """Compare two solutions after matching nodes by coordinate.

    Each quantity (ux, uy, rz, reaction components, end forces, axial,
    shear, moment) is compared relative to its largest magnitude in
    ``a``, which keeps near-zero entries from dominating.  Raises
    UNMATCHED_TOPOLOGY if the two models cannot be put in correspondence.
    """
    node_map, elem_map = _match(a, b, tol)
    problems: list[str] = []

    def compare(label, pairs, width):
        pairs = list(pairs)
        if not pairs:
            return
        xs = np.array([p[1] for p in pairs], dtype=float).reshape(len(pairs), -1)
        ys = np.array([p[2] for p in pairs], dtype=float).reshape(len(pairs), -1)
        scale = np.maximum(np.abs(xs).max(axis=0), np.finfo(float).tiny)
        bad = np.abs(xs - ys) > rel_tol * scale
        for row, col in zip(*np.nonzero(bad)):
            problems.append(f"{label} {pairs[row][0]} component {col % width}: {xs[row, col]!r} vs {ys[row, col]!r}")

    compare("displacement of node", ((n, a.displacements[n], b.displacements[m]) for n, m in node_map.items()), 3)

    for n in a.reactions:
        if node_map[n] not in b.reactions:
            problems.append(f"node {n} is supported only in the first solution")
    back = {m: n for n, m in node_map.items()}
    for m in b.reactions:
        if back[m] not in a.reactions:
            problems.append(f"node {back[m]} is supported only in the second solution")
    compare("reaction at node", ((n, r, b.reactions[node_map[n]]) for n, r in a.reactions.items()
                                 if node_map[n] in b.reactions), 3)

    def other_forces(eid):
        target, same = elem_map[eid]
        f = b.end_forces[target]
        return f if same else _flip_end_forces(f)

    def other_diagram(eid):
        target, same = elem_map[eid]
        d = b.diagrams[target]
        return d if same else _flip_diagram(d)

    compare("end forces of element", ((e, a.end_forces[e], other_forces(e)) for e in a.end_forces), 6)
    shapes_ok = True
    for e in a.diagrams:
        if len(a.diagrams[e]) != len(b.diagrams[elem_map[e][0]]):
            problems.append(f"element {e} is sampled at a different number of stations")
            shapes_ok = False
    if shapes_ok:
        rows = []
        for e in a.diagrams:
            for k, (sa, sb) in enumerate(zip(a.diagrams[e], other_diagram(e))):
                rows.append((f"{e} station {k}", sa, sb))
        compare("diagram of element", rows, 3)
    return not problems, problems


def equilibrium_residual(model: FrameModel, solution: SolutionState) -> tuple[np.ndarray, float]:
    """Global (Fx, Fy, Mz about the origin) imbalance of applied loads plus reactions.

    Returns the residual and the matching scale ``sum |applied| + 1``.
    """
    nodes = model.node_map()
    total = np.zeros(3)
    magnitude = 0.0

    def add(fx, fy, mz, x, y):
        nonlocal magnitude
        total[:] += (fx, fy, mz + x * fy - y * fx)
        return abs(fx) + abs(fy) + abs(mz)

    for p in model.point_loads:
        n = nodes[p.node_id]
        magnitude += add(p.fx, p.fy, p.mz, n.x, n.y)
    elements = model.element_map()
    for d in model.distributed_loads:
        e = elements[d.element_id]
        ni, nj = nodes[e.end_i], nodes[e.end_j]
        L = math.hypot(nj.x - ni.x, nj.y - ni.y)
        c, s = (nj.x - ni.x) / L, (nj.y - ni.y) / L
        resultant = d.w_transverse * L
        magnitude += add(-s * resultant, c * resultant, 0.0, (ni.x + nj.x) / 2, (ni.y + nj.y) / 2)
    for nid, (rx, ry, rm) in solution.reactions.items():
        n = nodes[nid]
        total[:] += (rx, ry, rm + n.x * ry - n.y * rx)
    return total, magnitude + 1.0


def solution_to_dict(solution: SolutionState) -> dict:
    def f(v):
        return 0.0 if v == 0 else float(v)

    n_stations = {eid: len(d) for eid, d in solution.diagrams.items()}
    elements = []
    for eid in sorted(solution.end_forces):
        i, j = solution.element_ends[eid]
        stations = []
        for k, (n, v, m) in enumerate(solution.diagrams.get(eid, ())):
            stations.append({"station": k, "fraction": f(k / (n_stations[eid] - 1)),
                             "axial": f(n), "shear": f(v), "moment": f(m)})
        elements.append({"id": eid, "end_i": i, "end_j": j,
                         "end_forces": dict(zip(("N_i", "V_i", "M_i", "N_j", "V_j", "M_j"),
                                                map(f, solution.end_forces[eid]))),
                         "diagram": stations})
    return {
        "units": dict(solution.units),
        "displacements": [{"node": nid, "x": f(solution.node_coords[nid][0]), "y": f(solution.node_coords[nid][1]),
                           **dict(zip(DOF_NAMES, map(f, d)))} for nid, d in sorted(solution.displacements.items())],
        "reactions": [{"node": nid, **dict(zip(("rx", "ry", "rm"), map(f, r)))}
                      for nid, r in sorted(solution.reactions.items())],
        "elements": elements,
        "diagnostics": [d.to_dict() for d in solution.diagnostics],
    }


def solution_to_json(solution: SolutionState) -> str:
    """Canonical JSON (sorted keys, shortest floats) for plotting elsewhere."""
    return json.dumps(solution_to_dict(solution), sort_keys=True, indent=1, ensure_ascii=True,
                      allow_nan=False) + "\n"
