"""Random frame specs for property tests, via hypothesis or a seeded RNG."""
from __future__ import annotations

import random

from hypothesis import strategies as st

from frameforge import ExtraPointLoad, FrameProblemSpec, SectionProperties, UnitSystem
from frameforge.topology import level_y, line_heights, line_x
from frameforge.units import FORCE_FACTORS, LENGTH_FACTORS

STABLE_SUPPORTS = ("fixed", "pinned")
ALL_SUPPORTS = ("fixed", "pinned", "roller_x", "roller_y")


def make_spec(stories, widths=None, heights=None, *, support="fixed", units=None, lateral=10.0, udl=5.0,
              extra=(), target="all", E=2.0e8, col=(0.04, 2.0e-4), gir=(0.03, 1.5e-4)) -> FrameProblemSpec:
    stories = tuple(stories)
    return FrameProblemSpec(
        units=units or UnitSystem(),
        n_bays=len(stories),
        stories_per_bay=stories,
        bay_widths=tuple(widths or (6.0,) * len(stories)),
        story_heights=tuple(heights or (3.0,) * max(stories)),
        support_kind=support,
        column_section=SectionProperties("column", E, *col),
        girder_section=SectionProperties("girder", E, *gir),
        lateral_load_per_floor=lateral,
        gravity_udl=udl,
        extra_point_loads=tuple(extra),
        target_hint=target,
    )


def node_positions(spec):
    xs, ys = line_x(spec), level_y(spec)
    return [(xs[c], ys[k]) for c, h in enumerate(line_heights(spec)) for k in range(1, h + 1)]


def random_spec(rng: random.Random, *, supports=STABLE_SUPPORTS, max_bays=4, max_stories=6,
                random_units=True) -> FrameProblemSpec:
    n = rng.randint(1, max_bays)
    stories = [rng.randint(1, max_stories) for _ in range(n)]
    units = UnitSystem(rng.choice(sorted(LENGTH_FACTORS)), rng.choice(sorted(FORCE_FACTORS))) \
        if random_units else UnitSystem()
    spec = make_spec(
        stories,
        [round(rng.uniform(2.0, 9.0), 3) for _ in range(n)],
        [round(rng.uniform(2.5, 5.0), 3) for _ in range(max(stories))],
        support=rng.choice(supports),
        units=units,
        lateral=round(rng.uniform(-50, 50), 2) or 1.0,
        udl=round(rng.uniform(-20, 20), 2) or 1.0,
        E=rng.choice((2.0e8, 3.0e7, 2.1e5, 29000.0)),
        col=(rng.uniform(0.01, 0.1), rng.uniform(1e-5, 1e-3)),
        gir=(rng.uniform(0.01, 0.1), rng.uniform(1e-5, 1e-3)),
    )
    extras = []
    for _ in range(rng.randint(0, 2)):
        x, y = rng.choice(node_positions(spec))
        extras.append(ExtraPointLoad(x, y, rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5)))
    return make_spec(stories, spec.bay_widths, spec.story_heights, support=spec.support_kind, units=units,
                     lateral=spec.lateral_load_per_floor, udl=spec.gravity_udl, extra=extras,
                     E=spec.column_section.E, col=(spec.column_section.A, spec.column_section.I),
                     gir=(spec.girder_section.A, spec.girder_section.I))


@st.composite
def specs(draw, supports=STABLE_SUPPORTS, max_bays=4, max_stories=6, random_units=True):
    """Hypothesis strategy: shrinks towards small frames via the seed."""
    seed = draw(st.integers(min_value=0, max_value=2**32 - 1))
    bays = draw(st.integers(min_value=1, max_value=max_bays))
    stories = draw(st.integers(min_value=1, max_value=max_stories))
    return random_spec(random.Random(seed), supports=supports, max_bays=bays, max_stories=stories,
                       random_units=random_units)


finite = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False, allow_infinity=False)
positive = st.floats(min_value=1e-3, max_value=1e3, allow_nan=False, allow_infinity=False)


@st.composite
def literal_specs(draw):
    """Specs with arbitrary float values, for text round trips."""
    n = draw(st.integers(1, 4))
    stories = draw(st.lists(st.integers(1, 6), min_size=n, max_size=n))
    units = UnitSystem(draw(st.sampled_from(sorted(LENGTH_FACTORS))), draw(st.sampled_from(sorted(FORCE_FACTORS))))
    extra = draw(st.lists(st.builds(ExtraPointLoad, positive, positive, finite, finite, finite), max_size=3))
    return make_spec(
        stories,
        draw(st.lists(positive, min_size=n, max_size=n)),
        draw(st.lists(positive, min_size=max(stories), max_size=max(stories))),
        support=draw(st.sampled_from(ALL_SUPPORTS)),
        units=units,
        lateral=draw(finite),
        udl=draw(finite),
        extra=extra,
        target=draw(st.sampled_from(("opensees", "sap2000", "etabs", "all"))),
        E=draw(positive),
        col=(draw(positive), draw(positive)),
        gir=(draw(positive), draw(positive)),
    )
