import json
import subprocess
import sys
from pathlib import Path

import pytest
from strategies import make_spec

from frameforge import build_model, to_canonical_json
from frameforge.bench import generate_suite, run_suite
from frameforge.cli import main


@pytest.fixture
def work(tmp_path, monkeypatch, gallery_inputs):
    monkeypatch.chdir(tmp_path)
    for src in gallery_inputs.glob("*.frame"):
        (tmp_path / src.name).write_text(src.read_text())
    return tmp_path


def test_no_command_is_usage(work, capsys):
    assert main([]) == 64


def test_bad_option_is_usage(work):
    with pytest.raises(SystemExit) as exc:
        main(["bench", "--dialects", "none"])
    assert exc.value.code == 64
    with pytest.raises(SystemExit) as exc:
        main(["compile"])
    assert exc.value.code == 64


def test_compile_writes_all_targets(work):
    assert main(["compile", "portal.frame", "--emit-ir", "--target", "all"]) == 0
    for ext in (".tcl", ".s2k", ".e2k", ".frame.json"):
        assert (work / f"portal{ext}").is_file()


def test_compile_then_verify(work, capsys):
    assert main(["compile", "irregular_324.frame", "--target", "all", "--emit-ir", "--out-dir", "out"]) == 0
    for ext in (".tcl", ".s2k", ".e2k"):
        assert main(["verify", f"out/irregular_324{ext}", "--against", "out/irregular_324.frame.json"]) == 0
    assert "equivalent" in capsys.readouterr().out


def test_verify_detects_missing_column(work, capsys):
    main(["compile", "portal.frame", "--target", "opensees", "--emit-ir"])
    tcl = work / "portal.tcl"
    tcl.write_text("".join(ln for ln in tcl.read_text().splitlines(keepends=True)
                           if not ln.startswith("element elasticBeamColumn 2 ")))
    assert main(["verify", "portal.tcl", "--against", "portal.frame.json"]) == 4
    assert "[element]" in capsys.readouterr().out


def test_verify_truncated_file_is_invalid(work, capsys):
    main(["compile", "portal.frame", "--target", "sap2000", "--emit-ir"])
    s2k = work / "portal.s2k"
    s2k.write_text("\n".join(s2k.read_text().splitlines()[:12]) + "\n")
    assert main(["verify", "portal.s2k", "--against", "portal.frame.json"]) == 2
    assert "line" in capsys.readouterr().err


def test_verify_unknown_extension_is_usage(work):
    (work / "x.txt").write_text("")
    assert main(["verify", "x.txt", "--against", "portal.frame"]) == 64


def test_missing_file_is_io_error(work):
    assert main(["compile", "nothere.frame"]) == 3


def test_invalid_template(work):
    (work / "bad.frame").write_text("[UNITS]\nlength = m\n")
    assert main(["compile", "bad.frame"]) == 2


def test_solve_portal(work, capsys):
    assert main(["solve", "portal.frame", "--samples", "21"]) == 0
    data = json.loads((work / "portal.solution.json").read_text())
    assert len(data["displacements"]) == 4 and len(data["reactions"]) == 2
    assert all(len(e["diagram"]) == 21 for e in data["elements"])
    assert "reaction totals" in capsys.readouterr().out
    assert main(["solve", "portal.frame", "--samples", "1"]) == 64


def test_solve_mechanism_exits_5(work, capsys):
    (work / "rollers.frame.json").write_text(to_canonical_json(build_model(make_spec((1,), support="roller_x"))))
    assert main(["solve", "rollers.frame.json"]) == 5
    assert "SINGULAR_SYSTEM" in capsys.readouterr().err


def test_tolerance_env(work, monkeypatch):
    monkeypatch.setenv("FRAMEFORGE_TOL", "abc")
    assert main(["solve", "portal.frame"]) == 64
    monkeypatch.setenv("FRAMEFORGE_TOL", "1e-5")
    assert main(["solve", "portal.frame"]) == 0


def test_bench_matches_library(work):
    assert main(["bench", "--dialects", "opensees,etabs", "--out-dir", "b"]) == 0
    text = (work / "b" / "bench_report.json").read_text()
    assert text == run_suite(generate_suite(), ("opensees_tcl", "etabs_e2k")).to_json()
    assert (work / "b" / "bench_report.txt").read_text().startswith("  #")
    assert (work / "b" / "bench_timings.txt").is_file()


def test_bench_bad_config(work):
    (work / "cfg.json").write_text('{"bays": []}')
    assert main(["bench", "--config", "cfg.json"]) == 2


def test_bench_repeat(work):
    assert main(["bench", "--repeat", "2", "--dialects", "sap2000", "--out-dir", "r"]) == 0
    out = Path("r")
    assert (out / "bench_report.json").read_bytes() == (out / "bench_report.run02.json").read_bytes()


def test_module_entry_point(work):
    proc = subprocess.run([sys.executable, "-m", "frameforge", "compile", "portal.frame", "--target", "etabs"],
                          capture_output=True, text=True, cwd=work)
    assert proc.returncode == 0, proc.stderr
    assert (work / "portal.e2k").read_text().endswith("$ END OF MODEL FILE\n")


def test_solve_hand_written_unsupported_ir_exits_5(work, capsys):
    ir = {"units": {"length_unit": "meter", "force_unit": "kilonewton"},
          "nodes": [{"id": 1, "x": 0.0, "y": 1.0, "description": ""},
                    {"id": 2, "x": 0.0, "y": 4.0, "description": ""}],
          "supports": [], "sections": [{"name": "c", "E": 2e8, "A": 0.04, "I": 2e-4}],
          "elements": [{"id": 1, "kind": "column", "end_i": 1, "end_j": 2, "section": "c", "description": ""}],
          "point_loads": [{"node_id": 2, "fx": 1.0, "fy": 0.0, "mz": 0.0}], "distributed_loads": [],
          "provenance": ""}
    (work / "floating.frame.json").write_text(json.dumps(ir))
    assert main(["solve", "floating.frame.json"]) == 5
    assert "SINGULAR_SYSTEM" in capsys.readouterr().err
