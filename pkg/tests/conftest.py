import sys
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

from strategies import make_spec  # noqa: E402

from frameforge import build_model  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

GALLERY_INPUTS = Path(__file__).resolve().parents[1] / "gallery" / "inputs"

# Filled by the acceptance module, printed after the run.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def portal_spec():
    return make_spec((1,), (6.0,), (3.5,))


@pytest.fixture
def portal(portal_spec):
    return build_model(portal_spec)


@pytest.fixture
def spec_324():
    return make_spec((3, 2, 4))


@pytest.fixture
def frame_324(spec_324):
    return build_model(spec_324)


@pytest.fixture
def gallery_inputs():
    return GALLERY_INPUTS
