import random
from dataclasses import replace

import pytest
from hypothesis import given
from strategies import ALL_SUPPORTS, make_spec, specs

from frameforge import (DIALECTS, FrameError, NodeRecord, build_model, emit, models_equivalent, parse_etabs,
                        parse_opensees, parse_sap2000, parse_script)
from frameforge.model import DistributedLoad, ElementRecord, PointLoad


@pytest.mark.parametrize("dialect", DIALECTS)
def test_portal_round_trip(portal, dialect):
    back = parse_script(emit(portal, dialect).text, dialect)
    report = models_equivalent(back, portal)
    assert report.equivalent, report


@given(specs(supports=ALL_SUPPORTS))
def test_round_trip_law(spec):
    m = build_model(spec)
    for d in DIALECTS:
        assert models_equivalent(parse_script(emit(m, d).text, d), m).equivalent


def test_parse_etabs_returns_story_model(frame_324):
    sm = parse_etabs(emit(frame_324, "etabs_e2k").text)
    assert len(sm.story_levels) == 5
    assert all(o.node_id is None for o in sm.point_objects)


def test_opensees_duplicate_node(portal):
    text = emit(portal, "opensees_tcl").text.replace("node 4 ", "node 3 ", 1)
    with pytest.raises(FrameError) as exc:
        parse_opensees(text)
    assert "DUPLICATE_DEFINITION" in {d.code for d in exc.value.diagnostics}


def test_opensees_undefined_reference(portal):
    text = emit(portal, "opensees_tcl").text.replace("element elasticBeamColumn 3 3 4", "element elasticBeamColumn 3 3 7")
    with pytest.raises(FrameError) as exc:
        parse_opensees(text)
    assert exc.value.code == "UNDEFINED_REFERENCE"


def test_s2k_duplicate_and_undefined(portal):
    text = emit(portal, "sap2000_s2k").text
    dup = text.replace("Frame=2   JointI=2", "Frame=1   JointI=2", 1)
    with pytest.raises(FrameError) as exc:
        parse_sap2000(dup)
    assert "DUPLICATE_DEFINITION" in {d.code for d in exc.value.diagnostics}
    undef = text.replace("AnalSect=girder", "AnalSect=beam")
    with pytest.raises(FrameError) as exc:
        parse_sap2000(undef)
    assert exc.value.code == "UNDEFINED_REFERENCE"


def test_s2k_rejects_noncanonical_tables(portal):
    text = emit(portal, "sap2000_s2k").text
    for bad in (text.replace('"LOAD PATTERN DEFINITIONS"', '"LOAD PATTERNS"'),
                text.replace("XorR=", "GlobalX="),
                text.replace('TABLE:  "LOAD PATTERN DEFINITIONS"', 'TABLE: "LOAD PATTERN DEFINITION"')):
        with pytest.raises(FrameError) as exc:
            parse_sap2000(bad)
        assert exc.value.code == "DIALECT_SYNTAX_ERROR"


def test_s2k_section_assignment_must_follow_connectivity(portal):
    text = emit(portal, "sap2000_s2k").text
    blocks = text.split("TABLE:  ")
    conn = next(i for i, b in enumerate(blocks) if b.startswith('"CONNECTIVITY - FRAME"'))
    blocks[conn], blocks[conn + 1] = blocks[conn + 1], blocks[conn]
    with pytest.raises(FrameError) as exc:
        parse_sap2000("TABLE:  ".join(blocks))
    assert any("out of order" in d.message for d in exc.value.diagnostics)


def test_e2k_duplicate_and_undefined(frame_324):
    text = emit(frame_324, "etabs_e2k").text
    with pytest.raises(FrameError) as exc:
        parse_etabs(text.replace('POINT "P2"', 'POINT "P1"', 1))
    assert "DUPLICATE_DEFINITION" in {d.code for d in exc.value.diagnostics}
    with pytest.raises(FrameError) as exc:
        parse_etabs(text.replace('LINEASSIGN  "B3"  "STORY4"', 'LINEASSIGN  "B9"  "STORY4"'))
    assert exc.value.code == "UNDEFINED_REFERENCE"


@pytest.mark.parametrize("dialect", DIALECTS)
def test_truncated_files(frame_324, dialect):
    text = emit(frame_324, dialect).text
    cut = "\n".join(text.splitlines()[: len(text.splitlines()) // 2]) + "\n"
    with pytest.raises(FrameError) as exc:
        parse_script(cut, dialect)
    assert exc.value.code == "DIALECT_SYNTAX_ERROR" and exc.value.line is not None


@pytest.mark.parametrize("dialect", DIALECTS)
def test_garbage_line_reports_line_number(portal, dialect):
    text = emit(portal, dialect).text.splitlines()
    text.insert(5, "this is not valid")
    with pytest.raises(FrameError) as exc:
        parse_script("\n".join(text) + "\n", dialect)
    assert any(d.line == 6 for d in exc.value.diagnostics)


def test_equivalence_reflexive_and_id_independent(frame_324):
    assert models_equivalent(frame_324, frame_324).equivalent
    perm = list(range(1, len(frame_324.nodes) + 1))
    random.Random(3).shuffle(perm)
    new = dict(zip((n.id for n in frame_324.nodes), perm))
    permuted = replace(
        frame_324,
        nodes=tuple(replace(n, id=new[n.id]) for n in frame_324.nodes),
        supports=tuple(replace(s, node_id=new[s.node_id]) for s in frame_324.supports),
        elements=tuple(replace(e, end_i=new[e.end_i], end_j=new[e.end_j]) for e in frame_324.elements),
        point_loads=tuple(replace(p, node_id=new[p.node_id]) for p in frame_324.point_loads),
    )
    assert permuted != frame_324
    assert models_equivalent(frame_324, permuted).equivalent


def test_moved_node_is_one_mismatch(frame_324):
    tol = 1e-6
    moved = replace(frame_324, nodes=tuple(replace(n, x=n.x + 10 * tol) if n.id == 7 else n
                                           for n in frame_324.nodes))
    report = models_equivalent(frame_324, moved, tol)
    assert not report.equivalent
    assert [c for c, _ in report.mismatches] == ["node"]


def test_reversed_element_with_flipped_load_is_equivalent(portal):
    flipped = replace(portal,
                      elements=tuple(replace(e, end_i=e.end_j, end_j=e.end_i) if e.id == 3 else e
                                     for e in portal.elements),
                      distributed_loads=(DistributedLoad(3, 5.0),))
    assert models_equivalent(portal, flipped).equivalent
    same_sign = replace(flipped, distributed_loads=portal.distributed_loads)
    assert [c for c, _ in models_equivalent(portal, same_sign).mismatches] == ["load"]


def test_mismatch_categories(portal):
    def cats(other):
        return sorted({c for c, _ in models_equivalent(portal, other).mismatches})

    assert cats(replace(portal, supports=(replace(portal.supports[0], kind="pinned"), portal.supports[1]))) == \
        ["support"]
    assert cats(replace(portal, sections=(replace(portal.sections[0], A=0.05), portal.sections[1]))) == \
        ["element", "section"]
    assert cats(replace(portal, point_loads=(PointLoad(3, 11.0),))) == ["load"]
    assert cats(replace(portal, elements=portal.elements[:2], distributed_loads=())) == ["element", "load"]
    extra = replace(portal, nodes=portal.nodes + (NodeRecord(5, 12.0, 3.5),),
                    elements=portal.elements + (ElementRecord(4, "girder", 4, 5, "girder"),))
    assert "count" in cats(extra)


@given(specs(), specs())
def test_equivalence_symmetric(s1, s2):
    a, b = build_model(s1), build_model(s2)
    assert models_equivalent(a, b).equivalent == models_equivalent(b, a).equivalent


def test_equivalence_transitive_at_half_tolerance(frame_324):
    tol = 1e-6
    shift = tol / 2 * 0.9

    def shifted(k):
        return replace(frame_324, nodes=tuple(replace(n, x=n.x + k * shift) for n in frame_324.nodes))

    a, b, c = frame_324, shifted(1), shifted(2)
    assert models_equivalent(a, b, tol / 2).equivalent and models_equivalent(b, c, tol / 2).equivalent
    assert models_equivalent(a, c, tol).equivalent
