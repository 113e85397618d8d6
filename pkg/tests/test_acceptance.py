"""Release acceptance criteria, one test per criterion.

Each test appends a PASS/FAIL line to ``conftest.ACCEPTANCE_LINES`` (printed
in the terminal summary) and prints it, then asserts.  Run alone with
``pytest tests/test_acceptance.py -s``.
"""
import random
import re
import time
import warnings
from collections import Counter

import conftest
import numpy as np
import pytest
from oracle import oracle_solve
from strategies import ALL_SUPPORTS, make_spec, random_spec

from frameforge import (DIALECTS, FrameError, build_model, emit, format_problem, models_equivalent, parse_problem,
                        parse_script, solve)
from frameforge.bench import generate_suite, run_suite
from frameforge.cli import main
from frameforge.model import (DistributedLoad, ElementRecord, FrameModel, NodeRecord, PointLoad, SectionProperties,
                              SupportRecord)
from frameforge.solver import equilibrium_residual, solutions_equivalent
from frameforge.units import UnitSystem


def record(number, title, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'}  [{number:>2}] {title}: {detail}"
    conftest.ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


@pytest.fixture(scope="module")
def suite():
    return generate_suite()


@pytest.fixture(scope="module")
def models(suite):
    return [build_model(s) for s in suite]


def test_01_round_trip_suite(models):
    start = time.perf_counter()
    passed = 0
    for m in models:
        for d in DIALECTS:
            try:
                passed += models_equivalent(m, parse_script(emit(m, d).text, d)).equivalent
            except FrameError:
                pass
    elapsed = time.perf_counter() - start
    total = len(models) * len(DIALECTS)
    record(1, "round-trip suite", passed == total and elapsed < 5.0,
           f"{passed}/{total} cells equivalent ({100 * passed / total:.0f}%) in {elapsed:.2f} s (limit 5 s)")


def test_02_solution_consistency(models):
    failures = []
    for k, m in enumerate(models):
        reference = solve(m)
        for d in DIALECTS:
            ok, problems = solutions_equivalent(reference, solve(parse_script(emit(m, d).text, d)), rel_tol=1e-9)
            if not ok:
                failures.append((k, d, problems[:2]))
    total = len(models) * len(DIALECTS)
    record(2, "solution consistency", not failures,
           f"{total - len(failures)}/{total} cells agree at relative 1e-9 "
           f"(displacements, reactions, diagram samples){'; first: ' + str(failures[0]) if failures else ''}")


def _rel(a, b):
    return abs(a - b) / abs(b)


def test_03_closed_forms():
    E, A, I, L, P, w = 2e8, 0.04, 2e-4, 4.0, 12.0, 5.0
    si = UnitSystem("meter", "kilonewton")
    sec = (SectionProperties("s", E, A, I),)
    cantilever = FrameModel(si, (NodeRecord(1, 0.0, 0.0), NodeRecord(2, 0.0, L)), (SupportRecord(1, "fixed"),), sec,
                            (ElementRecord(1, "column", 1, 2, "s"),), (PointLoad(2, fx=P),))
    tip = solve(cantilever).displacements[2][0]
    beam = FrameModel(si, (NodeRecord(1, 0.0, 3.0), NodeRecord(2, L, 3.0)),
                      (SupportRecord(1, "fixed"), SupportRecord(2, "fixed")), sec,
                      (ElementRecord(1, "girder", 1, 2, "s"),), (), (DistributedLoad(1, -w),))
    sol = solve(beam)
    m_i, m_j = sol.reactions[1][2], sol.reactions[2][2]
    errors = [_rel(tip, P * L**3 / (3 * E * I)), _rel(m_i, w * L**2 / 12), _rel(m_j, -w * L**2 / 12)]
    record(3, "closed-form solver checks", max(errors) <= 1e-9,
           f"PL^3/3EI rel err {errors[0]:.1e}; +-wL^2/12 rel err {max(errors[1:]):.1e} (limit 1e-9)")


def _oracle_error(m):
    sol = solve(m)
    disp, reactions = oracle_solve(m)
    ours = np.array([sol.displacements[n] for n in sorted(disp)] + [sol.reactions[n] for n in sorted(reactions)])
    ref = np.array([disp[n] for n in sorted(disp)] + [reactions[n] for n in sorted(reactions)])
    du = np.abs(ours[:len(disp)] - ref[:len(disp)]).max() / np.abs(ref[:len(disp)]).max()
    dr = np.abs(ours[len(disp):] - ref[len(disp):]).max() / np.abs(ref[len(disp):]).max()
    return max(du, dr)


def test_04_oracle_equivalence(models):
    frames = [m for m in models if 3 * len(m.nodes) <= 30]
    rng = random.Random(404)
    while len(frames) < 60:
        m = build_model(random_spec(rng, max_bays=3, max_stories=3))
        if 3 * len(m.nodes) <= 30:
            frames.append(m)
    worst = max(_oracle_error(m) for m in frames)
    record(4, "oracle equivalence", worst <= 1e-9,
           f"{len(frames)} frames with <= 30 DOF, worst relative difference {worst:.1e} (limit 1e-9)")


def test_05_equilibrium_property():
    rng = random.Random(5)
    failures, worst = 0, 0.0
    for _ in range(200):
        m = build_model(random_spec(rng))
        residual, scale = equilibrium_residual(m, solve(m))
        rel = float(np.abs(residual).max() / scale)
        worst = max(worst, rel)
        failures += rel > 1e-8
    record(5, "equilibrium property", failures == 0,
           f"200 random specs, {failures} failures, worst relative imbalance {worst:.1e} (limit 1e-8)")


def _counts(m):
    cols = sum(e.kind == "column" for e in m.elements)
    return len(m.nodes), cols, len(m.elements) - cols


def test_06_topology_counts():
    bad = [(b, s) for b in range(1, 5) for s in range(1, 7)
           if _counts(build_model(make_spec((s,) * b))) != ((b + 1) * (s + 1), (b + 1) * s, b * s)]
    irregular = _counts(build_model(make_spec((3, 2, 4))))
    record(6, "topology count laws", not bad and irregular == (18, 14, 9),
           f"24 regular frames, {len(bad)} violations; 3-2-4 gives nodes/columns/girders {irregular}")


def test_07_syntax_fidelity(models):
    problems = []
    for k, m in enumerate(models):
        s2k = emit(m, "sap2000_s2k").text
        if 'TABLE:  "LOAD PATTERN DEFINITIONS"' not in s2k:
            problems.append((k, "s2k header"))
        joints = s2k.split('TABLE:  "JOINT COORDINATES"')[1].split("TABLE:")[0]
        rows = [r for r in joints.splitlines()[1:] if r.strip()]
        if len(rows) != len(m.nodes) or not all(re.search(r"XorR=\S+ +Y=\S+ +Z=\S+", r) for r in rows):
            problems.append((k, "s2k joint fields"))
        if not s2k.index('"CONNECTIVITY - FRAME"') < s2k.index('"FRAME SECTION ASSIGNMENTS"'):
            problems.append((k, "s2k table order"))
        e2k = emit(m, "etabs_e2k").text
        if "$ STORIES - IN SEQUENCE FROM TOP" not in e2k or "LINEASSIGN" not in e2k:
            problems.append((k, "e2k stories"))
        if re.search(r"^\s*(element|JOINT|node)\b", e2k, flags=re.M | re.I):
            problems.append((k, "e2k global element list"))
    record(7, "syntax fidelity", not problems,
           f"{len(models)} benchmarks checked for S2K header/XorR-Y-Z/table order and E2K story structure"
           f"{'; problems: ' + str(problems[:3]) if problems else ''}")


def test_08_failure_class_impossibility():
    rng = random.Random(8)
    codes = Counter()
    failed_parses = 0
    for _ in range(500):
        spec = random_spec(rng, supports=ALL_SUPPORTS)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            m = build_model(parse_problem(format_problem(spec)))
        for d in DIALECTS:
            try:
                parse_script(emit(m, d).text, d)
            except FrameError as exc:
                failed_parses += 1
                codes.update(x.code for x in exc.diagnostics or [exc])
    bad = codes["DUPLICATE_DEFINITION"] + codes["UNDEFINED_REFERENCE"]
    record(8, "failure-class impossibility", bad == 0,
           f"500 fuzzed specs x 3 dialects: DUPLICATE_DEFINITION={codes['DUPLICATE_DEFINITION']}, "
           f"UNDEFINED_REFERENCE={codes['UNDEFINED_REFERENCE']}, other parse failures={failed_parses}")


def test_09_determinism(tmp_path, models, monkeypatch):
    monkeypatch.chdir(tmp_path)
    code = main(["bench", "--repeat", "10", "--out-dir", "rep"])
    files = [tmp_path / "rep" / "bench_report.json"] + \
        [tmp_path / "rep" / f"bench_report.run{k:02d}.json" for k in range(2, 11)]
    blobs = {f.read_bytes() for f in files if f.is_file()}
    present = sum(f.is_file() for f in files)
    unstable = [(k, d) for k, m in enumerate(models) for d in DIALECTS
                if len({emit(m, d).text for _ in range(3)}) != 1]
    record(9, "determinism", code == 0 and present == 10 and len(blobs) == 1 and not unstable,
           f"bench --repeat 10 exit {code}, {present} reports, {len(blobs)} distinct; "
           f"{len(unstable)} byte-unstable emitter outputs")


def test_10_end_to_end_runtime(suite):
    start = time.perf_counter()
    report = run_suite(suite)
    elapsed = time.perf_counter() - start
    record(10, "end-to-end runtime", report.all_passed and elapsed < 10.0,
           f"20x3 compile+verify+solve in {elapsed:.2f} s (limit 10 s), all cells passed: {report.all_passed}")
