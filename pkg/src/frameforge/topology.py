"""Frame topology from a problem spec: assembly plan, nodes, elements.

Column line ``c`` (0-based) sits at the running sum of the bay widths to
its left and rises to ``H_c``, the larger story count of the bays on
either side of it.  Nodes are numbered level by level, left to right;
elements follow the assembly plan, columns before the girder of each
step, and a shared column is created only once.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import accumulate

from .model import ElementRecord, NodeRecord, SupportRecord
from .problem import FrameProblemSpec


@dataclass(frozen=True)
class CellStep:
    story: int  # k >= 1
    bay: int    # b >= 1


@dataclass(frozen=True)
class ConstructionPlan:
    steps: tuple[CellStep, ...]

    def __len__(self):
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)


def build_plan(spec: FrameProblemSpec) -> ConstructionPlan:
    """Bottom-to-top, left-to-right cells that exist in the frame."""
    steps = [CellStep(k, b + 1)
             for k in range(1, spec.max_stories + 1)
             for b, count in enumerate(spec.stories_per_bay) if count >= k]
    return ConstructionPlan(tuple(steps))


def line_x(spec: FrameProblemSpec) -> list[float]:
    return list(accumulate(spec.bay_widths, initial=0.0))


def level_y(spec: FrameProblemSpec) -> list[float]:
    return list(accumulate(spec.story_heights, initial=0.0))


def line_heights(spec: FrameProblemSpec) -> list[int]:
    """Story count ``H_c`` reached by each column line."""
    spb = spec.stories_per_bay
    return [max(spb[max(c - 1, 0)], spb[min(c, len(spb) - 1)]) for c in range(len(spb) + 1)]


def generate_nodes(spec: FrameProblemSpec, plan: ConstructionPlan) -> tuple[list[NodeRecord], list[SupportRecord]]:
    xs, ys, heights = line_x(spec), level_y(spec), line_heights(spec)
    # Levels actually reached by the plan; identical to range(max_stories + 1) for a valid spec.
    top = max((s.story for s in plan), default=0)
    nodes, supports = [], []
    for k in range(top + 1):
        for c, x in enumerate(xs):
            if heights[c] < k:
                continue
            nid = len(nodes) + 1
            nodes.append(NodeRecord(nid, x, ys[k], f"column line {c}, level {k}"))
            if k == 0:
                supports.append(SupportRecord(nid, spec.support_kind))
    return nodes, supports


def generate_elements(spec: FrameProblemSpec, plan: ConstructionPlan,
                      nodes: list[NodeRecord] | None = None) -> list[ElementRecord]:
    """Elements with coordinate ends, ready for :func:`resolve_connectivity`.

    ``nodes`` is accepted for symmetry with the node pass but not read:
    both passes derive from the problem and plan alone.
    """
    xs, ys = line_x(spec), level_y(spec)
    made_columns: set[tuple[int, int]] = set()
    elements: list[ElementRecord] = []

    def add(kind, a, b, section, desc):
        elements.append(ElementRecord(len(elements) + 1, kind, a, b, section, desc))

    for step in plan:
        k, b = step.story, step.bay
        for c in (b - 1, b):
            if (c, k) in made_columns:
                continue
            made_columns.add((c, k))
            add("column", (xs[c], ys[k - 1]), (xs[c], ys[k]), spec.column_section.name,
                f"column line {c}, story {k}")
        add("girder", (xs[b - 1], ys[k]), (xs[b], ys[k]), spec.girder_section.name,
            f"girder bay {b}, level {k}")
    return elements
