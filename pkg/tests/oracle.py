"""Brute-force reference solver, written separately from frameforge.solver.

Element matrices are written out directly in global coordinates (no
local-to-global transformation product), assembled in model node order,
and solved with a dense ``numpy.linalg.solve`` after deleting restrained
rows and columns.
"""
from __future__ import annotations

import math

import numpy as np

FIXITY = {"fixed": (0, 1, 2), "pinned": (0, 1), "roller_x": (1,), "roller_y": (0,)}


def element_matrix(E, A, I, x1, y1, x2, y2):
    L = math.sqrt((x2 - x1) ** 2 + (y2 - y1) ** 2)
    c, s = (x2 - x1) / L, (y2 - y1) / L
    ea, b, g, d, e = E * A / L, 12 * E * I / L**3, 6 * E * I / L**2, 4 * E * I / L, 2 * E * I / L
    k11 = ea * c * c + b * s * s
    k12 = (ea - b) * c * s
    k22 = ea * s * s + b * c * c
    return np.array([
        [k11, k12, -g * s, -k11, -k12, -g * s],
        [k12, k22, g * c, -k12, -k22, g * c],
        [-g * s, g * c, d, g * s, -g * c, e],
        [-k11, -k12, g * s, k11, k12, g * s],
        [-k12, -k22, -g * c, k12, k22, -g * c],
        [-g * s, g * c, e, g * s, -g * c, d],
    ])


def oracle_solve(model):
    """Return (displacements, reactions) keyed by node id."""
    pos = {n.id: k for k, n in enumerate(model.nodes)}
    xy = {n.id: (n.x, n.y) for n in model.nodes}
    secs = {s.name: s for s in model.sections}
    ndof = 3 * len(model.nodes)
    K = np.zeros((ndof, ndof))
    P = np.zeros(ndof)
    for el in model.elements:
        (x1, y1), (x2, y2) = xy[el.end_i], xy[el.end_j]
        s = secs[el.section]
        idx = [3 * pos[el.end_i], 3 * pos[el.end_i] + 1, 3 * pos[el.end_i] + 2,
               3 * pos[el.end_j], 3 * pos[el.end_j] + 1, 3 * pos[el.end_j] + 2]
        k = element_matrix(s.E, s.A, s.I, x1, y1, x2, y2)
        for a in range(6):
            for b in range(6):
                K[idx[a], idx[b]] += k[a, b]
    for p in model.point_loads:
        base = 3 * pos[p.node_id]
        P[base] += p.fx
        P[base + 1] += p.fy
        P[base + 2] += p.mz
    elements = {e.id: e for e in model.elements}
    for dl in model.distributed_loads:
        el = elements[dl.element_id]
        (x1, y1), (x2, y2) = xy[el.end_i], xy[el.end_j]
        L = math.hypot(x2 - x1, y2 - y1)
        # Load per length in global axes, split half to each end; end moments wL^2/12.
        qx = -(y2 - y1) / L * dl.w_transverse
        qy = (x2 - x1) / L * dl.w_transverse
        for node, sign in ((el.end_i, 1.0), (el.end_j, -1.0)):
            base = 3 * pos[node]
            P[base] += qx * L / 2
            P[base + 1] += qy * L / 2
            P[base + 2] += sign * dl.w_transverse * L * L / 12
    restrained = sorted(3 * pos[s.node_id] + k for s in model.supports for k in FIXITY[s.kind])
    keep = [i for i in range(ndof) if i not in set(restrained)]
    u = np.zeros(ndof)
    u[keep] = np.linalg.solve(K[np.ix_(keep, keep)], P[keep])
    r = K @ u - P
    disp = {n.id: tuple(u[3 * pos[n.id]:3 * pos[n.id] + 3]) for n in model.nodes}
    reactions = {}
    for s in model.supports:
        base = 3 * pos[s.node_id]
        reactions[s.node_id] = tuple(r[base + k] if k in FIXITY[s.kind] else 0.0 for k in range(3))
    return disp, reactions
