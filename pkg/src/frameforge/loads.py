"""Map a spec's load pattern onto concrete nodes and girders."""
from __future__ import annotations

import warnings
from typing import Sequence

from .errors import Diagnostic, FrameError, FrameWarning
from .model import COORD_TOL, DistributedLoad, ElementRecord, NodeRecord, PointLoad, match_node
from .problem import FrameProblemSpec


def assign_loads(spec: FrameProblemSpec, nodes: Sequence[NodeRecord], elements: Sequence[ElementRecord],
                 tol: float = COORD_TOL) -> tuple[list[PointLoad], list[DistributedLoad]]:
    """Lateral +x loads up the leftmost column line, gravity on every girder,
    then the problem's extra point loads.

    Zero-magnitude loads are dropped with a ZERO_LOAD_DROPPED
    :class:`FrameWarning`; an extra load away from every node raises
    NO_NODE_AT_LOCATION.
    """
    point_loads: list[PointLoad] = []
    distributed: list[DistributedLoad] = []

    def dropped(what):
        warnings.warn(FrameWarning(Diagnostic("ZERO_LOAD_DROPPED", f"{what} has zero magnitude",
                                              severity="warning")), stacklevel=3)

    x0 = min(n.x for n in nodes)
    left_line = sorted((n for n in nodes if abs(n.x - x0) <= tol and n.y > tol), key=lambda n: n.y)
    if spec.lateral_load_per_floor == 0:
        dropped("lateral_per_floor")
    else:
        point_loads += [PointLoad(n.id, fx=spec.lateral_load_per_floor) for n in left_line]

    if spec.gravity_udl == 0:
        dropped("gravity_udl")
    else:
        distributed += [DistributedLoad(e.id, -spec.gravity_udl) for e in elements if e.kind == "girder"]

    for p in spec.extra_point_loads:
        if p.fx == 0 and p.fy == 0 and p.mz == 0:
            dropped(f"point load at ({p.x}, {p.y})")
            continue
        try:
            nid = match_node(nodes, (p.x, p.y), tol)
        except FrameError:
            raise FrameError("NO_NODE_AT_LOCATION", f"no node at ({p.x!r}, {p.y!r}) for point load") from None
        point_loads.append(PointLoad(nid, p.fx, p.fy, p.mz))
    return point_loads, distributed
