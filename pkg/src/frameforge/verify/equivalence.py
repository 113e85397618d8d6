"""Id-independent structural comparison of two frame models."""
from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field

from ..model import COORD_TOL, FrameModel

CATEGORIES = ("node", "support", "element", "section", "load", "count")
REL_TOL = 1e-9


@dataclass(frozen=True)
class EquivalenceReport:
    equivalent: bool
    mismatches: tuple[tuple[str, str], ...] = ()
    tolerances: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "equivalent": self.equivalent,
            "mismatches": [{"category": c, "detail": d} for c, d in self.mismatches],
            "tolerances": dict(self.tolerances),
        }

    def __str__(self) -> str:
        if self.equivalent:
            return "equivalent"
        lines = [f"not equivalent ({len(self.mismatches)} mismatches)"]
        lines += [f"  [{c}] {d}" for c, d in self.mismatches]
        return "\n".join(lines)


def _close(a: float, b: float, rel: float) -> bool:
    return math.isclose(a, b, rel_tol=rel, abs_tol=rel * 1e-3)


def _match_nodes(a: FrameModel, b: FrameModel, tol: float):
    """Map a-node ids to b-node ids by coordinate.

    Leftover nodes are paired in coordinate order, so a single moved node
    shows up as one mismatch while its elements still correspond.
    """
    free = sorted(b.nodes, key=lambda n: (n.x, n.y, n.id))
    mapping, unmatched_a = {}, []
    for na in sorted(a.nodes, key=lambda n: (n.x, n.y, n.id)):
        best = None
        for nb in free:
            d = math.hypot(na.x - nb.x, na.y - nb.y)
            if d <= tol and (best is None or d < best[0]):
                best = (d, nb)
        if best is None:
            unmatched_a.append(na)
        else:
            free.remove(best[1])
            mapping[na.id] = best[1].id
    return mapping, unmatched_a, free


def models_equivalent(a: FrameModel, b: FrameModel, tol: float = COORD_TOL,
                      rel_tol: float = REL_TOL) -> EquivalenceReport:
    """Compare ``a`` and ``b`` ignoring ids and element orientation."""
    out: list[tuple[str, str]] = []
    if a.units != b.units:
        out.append(("count", f"unit systems differ: {a.units} vs {b.units}"))

    mapping, lone_a, lone_b = _match_nodes(a, b, tol)
    for na, nb in zip(lone_a, lone_b):
        mapping[na.id] = nb.id
        out.append(("node", f"node at ({na.x}, {na.y}) corresponds to ({nb.x}, {nb.y})"))
    for na in lone_a[len(lone_b):]:
        out.append(("count", f"node at ({na.x}, {na.y}) is missing from the second model"))
    for nb in lone_b[len(lone_a):]:
        out.append(("count", f"extra node at ({nb.x}, {nb.y}) in the second model"))

    a_nodes = a.node_map()

    def where(nid):
        n = a_nodes.get(nid)
        return f"node at ({n.x}, {n.y})" if n else f"node {nid}"

    b_supports = b.support_map()
    seen = set()
    for s in a.supports:
        target = mapping.get(s.node_id)
        other = b_supports.get(target)
        seen.add(target)
        if other is None:
            out.append(("support", f"{where(s.node_id)}: {s.kind} support missing"))
        elif other.kind != s.kind:
            out.append(("support", f"{where(s.node_id)}: {s.kind} vs {other.kind}"))
    for s in b.supports:
        if s.node_id not in seen:
            out.append(("support", f"extra {s.kind} support on node {s.node_id} of the second model"))

    def values(sec):
        return (sec.E, sec.A, sec.I) if sec else None

    def same_values(x, y):
        return x is not None and y is not None and all(_close(p, q, rel_tol) for p, q in zip(x, y))

    pending = [values(s) for s in b.sections]
    for s in a.sections:
        hit = next((i for i, v in enumerate(pending) if same_values(values(s), v)), None)
        if hit is None:
            out.append(("section", f"section {s.name!r} (E={s.E}, A={s.A}, I={s.I}) has no counterpart"))
        else:
            pending.pop(hit)
    for v in pending:
        out.append(("section", f"extra section E={v[0]}, A={v[1]}, I={v[2]} in the second model"))

    a_secs, b_secs = a.section_map(), b.section_map()
    b_by_pair = defaultdict(list)
    for e in b.elements:
        b_by_pair[frozenset((e.end_i, e.end_j))].append(e)
    element_map = {}  # a element id -> (b element id, same orientation)
    for e in a.elements:
        ti, tj = mapping.get(e.end_i), mapping.get(e.end_j)
        label = f"element between {where(e.end_i)} and {where(e.end_j)}"
        candidates = b_by_pair.get(frozenset((ti, tj)), [])
        if not candidates:
            out.append(("element", f"{label} is missing"))
            continue
        other = candidates.pop(0)
        element_map[e.id] = (other.id, other.end_i == ti)
        if other.kind != e.kind:
            out.append(("element", f"{label}: kind {e.kind} vs {other.kind}"))
        if not same_values(values(a_secs.get(e.section)), values(b_secs.get(other.section))):
            out.append(("element", f"{label}: section {e.section!r} vs {other.section!r} differ in value"))
    for rest in b_by_pair.values():
        for e in rest:
            out.append(("element", f"extra element {e.id} ({e.end_i}-{e.end_j}) in the second model"))

    a_pl, b_pl = defaultdict(list), defaultdict(list)
    for p in a.point_loads:
        a_pl[mapping.get(p.node_id, ("a", p.node_id))].append((p.fx, p.fy, p.mz))
    for p in b.point_loads:
        b_pl[p.node_id].append((p.fx, p.fy, p.mz))
    for target in sorted(set(a_pl) | set(b_pl), key=str):
        xs, ys = sorted(a_pl.get(target, [])), sorted(b_pl.get(target, []))
        if len(xs) != len(ys) or not all(same_values(x, y) for x, y in zip(xs, ys)):
            out.append(("load", f"point loads on node {target} of the second model: {xs} vs {ys}"))

    a_dl, b_dl = defaultdict(list), defaultdict(list)
    for d in a.distributed_loads:
        target = element_map.get(d.element_id)
        if target is None:
            out.append(("load", f"distributed load on unmatched element {d.element_id}"))
            continue
        a_dl[target[0]].append(d.w_transverse if target[1] else -d.w_transverse)
    for d in b.distributed_loads:
        b_dl[d.element_id].append(d.w_transverse)
    for target in sorted(set(a_dl) | set(b_dl)):
        xs, ys = sorted(a_dl.get(target, [])), sorted(b_dl.get(target, []))
        if len(xs) != len(ys) or not all(_close(x, y, rel_tol) for x, y in zip(xs, ys)):
            out.append(("load", f"distributed loads on element {target} of the second model: {xs} vs {ys}"))

    return EquivalenceReport(not out, tuple(out), {"coordinate": tol, "relative": rel_tol})
