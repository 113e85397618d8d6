import warnings

import pytest
from hypothesis import given
from strategies import ALL_SUPPORTS, make_spec, specs

from frameforge import ExtraPointLoad, FrameError, FrameWarning, build_model
from frameforge.topology import CellStep, build_plan, line_heights


def counts(m):
    cols = sum(e.kind == "column" for e in m.elements)
    return len(m.nodes), cols, len(m.elements) - cols


def test_plan_order():
    assert list(build_plan(make_spec((2, 2)))) == [CellStep(1, 1), CellStep(1, 2), CellStep(2, 1), CellStep(2, 2)]
    assert list(build_plan(make_spec((1,)))) == [CellStep(1, 1)]
    plan = list(build_plan(make_spec((3, 2, 4))))
    assert len(plan) == 9
    assert [s for s in plan if s.story == 3] == [CellStep(3, 1), CellStep(3, 3)]
    assert [s for s in plan if s.story == 4] == [CellStep(4, 3)]


def test_324_counts(frame_324, spec_324):
    assert line_heights(spec_324) == [3, 3, 4, 4]
    assert counts(frame_324) == (18, 14, 9)
    assert len(frame_324.supports) == 4


def test_no_girder_crosses_bay_2_above_level_2(frame_324):
    nodes = frame_324.node_map()
    spans = {}
    for e in frame_324.elements:
        if e.kind == "girder":
            xs = tuple(sorted((nodes[e.end_i].x, nodes[e.end_j].x)))
            assert xs[1] - xs[0] == pytest.approx(6.0)
            spans.setdefault(nodes[e.end_i].y, []).append(xs)
    assert spans[9.0] == [(0.0, 6.0), (12.0, 18.0)]
    assert spans[12.0] == [(12.0, 18.0)]


def test_portal_geometry(portal):
    assert [(n.x, n.y) for n in portal.nodes] == [(0.0, 0.0), (6.0, 0.0), (0.0, 3.5), (6.0, 3.5)]
    assert counts(portal) == (4, 2, 1)
    assert [s.kind for s in portal.supports] == ["fixed", "fixed"]


def test_element_ids_follow_plan(frame_324):
    kinds = [e.kind for e in frame_324.elements]
    assert kinds[:4] == ["column", "column", "girder", "column"]


@pytest.mark.parametrize("bays", range(1, 5))
@pytest.mark.parametrize("stories", range(1, 7))
def test_regular_count_laws(bays, stories):
    m = build_model(make_spec((stories,) * bays))
    assert counts(m) == ((bays + 1) * (stories + 1), (bays + 1) * stories, bays * stories)


@given(specs(supports=ALL_SUPPORTS))
def test_irregular_count_laws_and_invariants(spec):
    m = build_model(spec)
    h = line_heights(spec)
    assert counts(m) == (sum(x + 1 for x in h), sum(h), sum(spec.stories_per_bay))
    nodes = m.node_map()
    for e in m.elements:
        assert not (nodes[e.end_i].y == 0 and nodes[e.end_j].y == 0)
    assert {s.node_id for s in m.supports} == {n.id for n in m.nodes if n.y == 0}
    assert build_model(spec) == m


@given(specs())
def test_load_totals(spec):
    m = build_model(spec)
    nodes, elements = m.node_map(), m.element_map()
    h0 = line_heights(spec)[0]
    lateral = [p for p in m.point_loads if p.fx == spec.lateral_load_per_floor and p.fy == 0 and p.mz == 0
               and nodes[p.node_id].x == 0]
    assert len(lateral) >= h0
    assert sum(p.fx for p in m.point_loads) == pytest.approx(
        spec.lateral_load_per_floor * h0 + sum(p.fx for p in spec.extra_point_loads))
    girders = [e for e in m.elements if e.kind == "girder"]
    assert len(m.distributed_loads) == len(girders)
    total = sum(d.w_transverse * abs(nodes[elements[d.element_id].end_j].x - nodes[elements[d.element_id].end_i].x)
                for d in m.distributed_loads)
    assert total == pytest.approx(-spec.gravity_udl * sum(spec.bay_widths[b] * s
                                                          for b, s in enumerate(spec.stories_per_bay)))


def test_lateral_loads_at_each_floor_of_line_0():
    m = build_model(make_spec((3, 3), heights=(3.0, 3.5, 4.0)))
    nodes = m.node_map()
    assert sorted((nodes[p.node_id].x, nodes[p.node_id].y) for p in m.point_loads) == \
        [(0.0, 3.0), (0.0, 6.5), (0.0, 10.5)]
    assert all(p.fx == 10.0 for p in m.point_loads)


def test_extra_point_load_off_grid():
    with pytest.raises(FrameError) as exc:
        build_model(make_spec((2, 2), extra=[ExtraPointLoad(1.23, 4.56, fx=1.0)]))
    assert exc.value.code == "NO_NODE_AT_LOCATION"


def test_zero_loads_dropped_with_warning():
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        m = build_model(make_spec((1,), lateral=0.0, extra=[ExtraPointLoad(6.0, 3.0)]))
    found = [w.message.diagnostic.code for w in caught if issubclass(w.category, FrameWarning)]
    assert found == ["ZERO_LOAD_DROPPED", "ZERO_LOAD_DROPPED"]
    assert m.point_loads == ()
