import pytest
from hypothesis import given
from strategies import literal_specs, make_spec, specs

from frameforge import FrameError, build_model, format_problem, parse_problem, validate_model
from frameforge.units import UnitSystem

BASIC = """
[UNITS]
length = m; force = kN
[GEOMETRY]
bays = 2; stories_per_bay = 3, 3; bay_widths = 6, 6 m; story_heights = 3, 3, 3 m
[SUPPORTS]
base = fixed
[MATERIALS]
column: E = 2e8 kN/m^2, A = 0.04 m^2, I = 2e-4 m^4
girder: E = 2e8 kN/m^2, A = 0.03 m^2, I = 1.5e-4 m^4
[LOADS]
lateral_per_floor = 10 kN
gravity_udl = 5 kN/m
"""


def test_basic_template():
    spec = parse_problem(BASIC)
    assert spec.n_bays == 2 and spec.stories_per_bay == (3, 3)
    assert spec.bay_widths == (6.0, 6.0) and spec.story_heights == (3.0, 3.0, 3.0)
    assert spec.target_hint == "all" and spec.extra_point_loads == ()


def test_irregular_324_accepted():
    spec = parse_problem(BASIC.replace("bays = 2; stories_per_bay = 3, 3; bay_widths = 6, 6 m",
                                       "bays = 3; stories_per_bay = 3, 2, 4; bay_widths = 6, 6, 6 m")
                         .replace("story_heights = 3, 3, 3 m", "story_heights = 3, 3, 3, 3 m"))
    assert spec.stories_per_bay == (3, 2, 4)


def test_missing_section():
    text = BASIC.replace("[SUPPORTS]\nbase = fixed\n", "")
    with pytest.raises(FrameError) as exc:
        parse_problem(text)
    assert exc.value.code == "MISSING_SECTION" and "SUPPORTS" in str(exc.value)


def test_inconsistent_lengths():
    with pytest.raises(FrameError) as exc:
        parse_problem(BASIC.replace("bay_widths = 6, 6 m", "bay_widths = 6 m"))
    assert exc.value.code == "INCONSISTENT_LENGTHS"


def test_syntax_error_position():
    with pytest.raises(FrameError) as exc:
        parse_problem(BASIC.replace("base = fixed", "base fixed"))
    assert exc.value.code == "SYNTAX_ERROR"
    assert exc.value.line == 7 and exc.value.column is not None


@pytest.mark.parametrize("old,new", [("length = m", "length = furlong"),
                                     ("bay_widths = 6, 6 m", "bay_widths = 6, 6 parsec")])
def test_unsupported_unit(old, new):
    with pytest.raises(FrameError) as exc:
        parse_problem(BASIC.replace(old, new))
    assert exc.value.code == "UNSUPPORTED_UNIT"


def test_units_converted_into_model_system():
    text = BASIC.replace("bay_widths = 6, 6 m", "bay_widths = 6000, 6000 mm") \
        .replace("E = 2e8 kN/m^2", "E = 200 GPa", 1)
    spec = parse_problem(text)
    assert spec.bay_widths == (6.0, 6.0)
    assert spec.column_section.E == pytest.approx(2e8, rel=1e-12)


def test_comments_and_section_order():
    parts = BASIC.strip().split("\n[")
    reordered = "[" + "\n[".join(reversed(parts[1:])) + "\n" + parts[0] + "  # trailing comment\n"
    assert parse_problem(reordered) == parse_problem(BASIC)


def test_duplicate_section():
    with pytest.raises(FrameError) as exc:
        parse_problem(BASIC + "\n[SUPPORTS]\nbase = pinned\n")
    assert exc.value.code == "DUPLICATE_SECTION"


@given(literal_specs())
def test_format_parse_round_trip(spec):
    text = format_problem(spec)
    assert parse_problem(text) == spec
    assert format_problem(parse_problem(text)) == text


def test_point_lines_counted():
    from frameforge import ExtraPointLoad
    spec = make_spec((2, 2), extra=[ExtraPointLoad(6.0, 3.0, fx=1.0), ExtraPointLoad(0.0, 6.0, fy=-2.0)])
    assert format_problem(spec).count("\npoint = ") == 2


@given(specs(random_units=True))
def test_pipeline_soundness(spec):
    m = build_model(parse_problem(format_problem(spec)))
    assert [d for d in validate_model(m, analyzable=True) if d.severity == "error"] == []


def test_unit_system_rejects_unknown():
    with pytest.raises(FrameError):
        UnitSystem("cubit", "kilonewton")
