"""Benchmark family generation and the compile/verify/solve harness.

Reports are deterministic: the canonical JSON and text table carry no
wall-clock data, so repeated runs are byte-identical.  Timings are kept
on the in-memory report and written separately by the CLI.
"""
from __future__ import annotations

import json
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, fields

from .codegen import DIALECTS, emit
from .errors import FrameError
from .model import SectionProperties
from .pipeline import build_model
from .problem import FrameProblemSpec, validate_spec
from .solver import solve, solutions_equivalent
from .units import UnitSystem
from .verify import models_equivalent, parse_script

SUITE_SIZE = 20
MIN_IRREGULAR = 5
MIN_DISTINCT = 3
FLAGS = ("emitted", "parsed_back", "model_equivalent", "solution_equivalent")


@dataclass(frozen=True)
class SuiteConfig:
    """Value pools and the shared load/material pattern of the benchmark family."""

    seed: int = 2024
    bays: tuple[int, ...] = (1, 2, 3, 4)
    stories: tuple[int, ...] = (1, 2, 3, 4, 5, 6)
    widths: tuple[float, ...] = (4.0, 5.0, 6.0, 7.5)
    heights: tuple[float, ...] = (3.0, 3.2, 3.5, 4.0)
    lateral_load_per_floor: float = 10.0
    gravity_udl: float = 5.0
    E: float = 2.0e8
    column_A: float = 0.04
    column_I: float = 2.0e-4
    girder_A: float = 0.03
    girder_I: float = 1.5e-4
    support_kind: str = "fixed"

    @classmethod
    def from_dict(cls, d: dict) -> "SuiteConfig":
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(d) - known)
        if unknown:
            raise FrameError("CONFIG_ERROR", f"unknown config keys: {', '.join(unknown)}")
        kw = {k: tuple(v) if isinstance(v, list) else v for k, v in d.items()}
        return cls(**kw)

    @classmethod
    def from_json(cls, text: str) -> "SuiteConfig":
        try:
            d = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FrameError("CONFIG_ERROR", f"config is not valid JSON: {exc.msg}",
                             line=exc.lineno, column=exc.colno) from None
        if not isinstance(d, dict):
            raise FrameError("CONFIG_ERROR", "config must be a JSON object")
        return cls.from_dict(d)


def _check_config(c: SuiteConfig) -> None:
    def fail(msg):
        raise FrameError("CONFIG_ERROR", msg)

    for name in ("bays", "stories", "widths", "heights"):
        if not getattr(c, name):
            fail(f"pool {name!r} is empty")
    if any(not (isinstance(b, int) and 1 <= b <= 4) for b in c.bays):
        fail("bay counts must be integers in 1..4")
    if any(not (isinstance(s, int) and 1 <= s <= 6) for s in c.stories):
        fail("story counts must be integers in 1..6")
    if any(not v > 0 for v in c.widths + c.heights):
        fail("widths and heights must be positive")
    if len(set(c.bays)) < MIN_DISTINCT or len(set(c.stories)) < MIN_DISTINCT:
        fail(f"pools must offer at least {MIN_DISTINCT} distinct bay and story counts")
    if max(c.bays) < 2:
        fail("irregular cases need a bay count of at least 2")


def _spec(c: SuiteConfig, stories: tuple[int, ...], widths, heights) -> FrameProblemSpec:
    spec = FrameProblemSpec(
        units=UnitSystem("meter", "kilonewton"),
        n_bays=len(stories),
        stories_per_bay=tuple(stories),
        bay_widths=tuple(float(w) for w in widths),
        story_heights=tuple(float(h) for h in heights),
        support_kind=c.support_kind,
        column_section=SectionProperties("column", float(c.E), float(c.column_A), float(c.column_I)),
        girder_section=SectionProperties("girder", float(c.E), float(c.girder_A), float(c.girder_I)),
        lateral_load_per_floor=float(c.lateral_load_per_floor),
        gravity_udl=float(c.gravity_udl),
    )
    try:
        validate_spec(spec)
    except FrameError as exc:
        raise FrameError("CONFIG_ERROR", f"generated spec is invalid: {exc}") from None
    return spec


def generate_suite(config: SuiteConfig | None = None) -> list[FrameProblemSpec]:
    """Twenty specs alternating regular and irregular frames, led by the 3-2-4 case."""
    c = config or SuiteConfig()
    _check_config(c)
    rng = random.Random(c.seed)
    bays = sorted(set(c.bays))
    stories = sorted(set(c.stories))
    multi_bay = [b for b in bays if b >= 2]

    def geometry(per_bay):
        return ([rng.choice(c.widths) for _ in per_bay], [rng.choice(c.heights) for _ in range(max(per_bay))])

    suite = [_spec(c, (3, 2, 4), *geometry((3, 2, 4)))]
    regular_k = irregular_k = 0
    while len(suite) < SUITE_SIZE:
        if len(suite) % 2 == 0:
            # Cycle the pools so every bay and story count shows up.
            b = bays[regular_k % len(bays)]
            s = stories[(regular_k * 5 + 1) % len(stories)]
            per_bay = (s,) * b
            regular_k += 1
        else:
            b = multi_bay[irregular_k % len(multi_bay)]
            irregular_k += 1
            while True:
                per_bay = tuple(rng.choice(stories) for _ in range(b))
                if len(set(per_bay)) > 1:
                    break
        suite.append(_spec(c, per_bay, *geometry(per_bay)))

    irregular = sum(len(set(s.stories_per_bay)) > 1 for s in suite)
    if irregular < MIN_IRREGULAR:
        raise FrameError("CONFIG_ERROR", f"only {irregular} irregular cases generated")
    if len({s.n_bays for s in suite}) < MIN_DISTINCT or len({s.max_stories for s in suite}) < MIN_DISTINCT:
        raise FrameError("CONFIG_ERROR", "suite lacks bay or story count diversity")
    return suite


def problem_label(spec: FrameProblemSpec) -> str:
    return "-".join(str(s) for s in spec.stories_per_bay)


@dataclass(frozen=True)
class CellResult:
    problem: int
    label: str
    dialect: str
    emitted: bool = False
    parsed_back: bool = False
    model_equivalent: bool = False
    solution_equivalent: bool = False
    error: str = ""
    elapsed: float = field(default=0.0, compare=False)

    @property
    def passed(self) -> bool:
        return all(getattr(self, f) for f in FLAGS)


@dataclass(frozen=True)
class BenchReport:
    cells: tuple[CellResult, ...]
    dialects: tuple[str, ...]

    def accuracy(self) -> dict[str, float]:
        out = {}
        for d in self.dialects:
            mine = [c for c in self.cells if c.dialect == d]
            out[d] = sum(c.passed for c in mine) / len(mine) if mine else 0.0
        return out

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.cells)

    def to_dict(self) -> dict:
        return {
            "dialects": list(self.dialects),
            "accuracy": self.accuracy(),
            "all_passed": self.all_passed,
            "cells": [{k: v for k, v in asdict(c).items() if k != "elapsed"} for c in self.cells],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=1, ensure_ascii=True) + "\n"

    def timings(self) -> dict:
        return {"total_seconds": sum(c.elapsed for c in self.cells),
                "cells": [{"problem": c.problem, "dialect": c.dialect, "seconds": c.elapsed} for c in self.cells]}

    def to_table(self) -> str:
        head = f"{'#':>3}  {'frame':<14}{'dialect':<14}{'emit':>6}{'parse':>7}{'model':>7}{'solve':>7}  error"
        lines = [head, "-" * len(head)]
        for c in self.cells:
            marks = ["ok" if getattr(c, f) else "FAIL" for f in FLAGS]
            lines.append(f"{c.problem:>3}  {c.label:<14}{c.dialect:<14}{marks[0]:>6}{marks[1]:>7}"
                         f"{marks[2]:>7}{marks[3]:>7}  {c.error}".rstrip())
        lines.append("-" * len(head))
        for d, acc in self.accuracy().items():
            lines.append(f"accuracy {d:<14}{acc * 100:6.1f}%")
        return "\n".join(lines) + "\n"


def run_cell(index: int, spec: FrameProblemSpec, dialect: str, model=None, reference=None) -> CellResult:
    """Compile, emit, parse back and compare one (problem, dialect) pair."""
    start = time.perf_counter()
    flags = dict.fromkeys(FLAGS, False)
    error = ""
    try:
        model = model or build_model(spec)
        script = emit(model, dialect)
        flags["emitted"] = True
        back = parse_script(script.text, dialect)
        flags["parsed_back"] = True
        report = models_equivalent(model, back)
        flags["model_equivalent"] = report.equivalent
        if not report.equivalent:
            error = f"{len(report.mismatches)} model mismatches"
        reference = reference or solve(model)
        same, problems = solutions_equivalent(reference, solve(back))
        flags["solution_equivalent"] = same
        if not same and not error:
            error = f"{len(problems)} solution mismatches"
    except FrameError as exc:
        error = exc.code
    return CellResult(index, problem_label(spec), dialect, **flags, error=error,
                      elapsed=time.perf_counter() - start)


def run_suite(suite: list[FrameProblemSpec], dialects=DIALECTS, *, parallel: bool = False) -> BenchReport:
    """Run every (problem, dialect) cell; results are merged in suite order.

    ``parallel`` spreads problems over threads.  The work is mostly
    GIL-bound Python, so the serial default is usually faster.
    """
    dialects = tuple(dialects)
    if not dialects:
        raise FrameError("CONFIG_ERROR", "at least one dialect is required")
    unknown = [d for d in dialects if d not in DIALECTS]
    if unknown:
        raise FrameError("CONFIG_ERROR", f"unknown dialects: {', '.join(unknown)}")

    def problem(args):
        i, spec = args
        try:
            model = build_model(spec)
            reference = solve(model)
        except FrameError:
            model = reference = None
        return [run_cell(i, spec, d, model, reference) for d in dialects]

    jobs = list(enumerate(suite, start=1))
    if parallel:
        with ThreadPoolExecutor() as pool:
            rows = list(pool.map(problem, jobs))
    else:
        rows = [problem(j) for j in jobs]
    return BenchReport(tuple(c for row in rows for c in row), dialects)


def run_repeated(suite, dialects=DIALECTS, repeat: int = 1, **kw) -> list[BenchReport]:
    if repeat < 1:
        raise FrameError("CONFIG_ERROR", f"repeat must be at least 1, got {repeat}")
    return [run_suite(suite, dialects, **kw) for _ in range(repeat)]
