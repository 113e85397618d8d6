"""``frameforge`` command line: compile, verify, solve and bench.

Exit codes
    0   success
    2   parse or validation failure
    3   file I/O failure
    4   script is not equivalent to the IR
    5   singular (unsupported or mechanism) structure
    6   at least one failing benchmark cell
    64  usage error

Results go to stdout and diagnostics to stderr.  ``FRAMEFORGE_TOL``
overrides the coordinate matching tolerance.
"""
from __future__ import annotations

import argparse
import os
import re
import sys
import warnings
from pathlib import Path

from . import bench
from .codegen import DIALECTS, EXTENSIONS
from .errors import FrameError, FrameWarning
from .model import COORD_TOL, FrameModel, from_json, to_canonical_json
from .pipeline import TARGET_DIALECTS, build_model, compile_targets
from .problem import parse_problem
from .solver import solve, solution_to_json
from .verify import DIALECT_OF_EXTENSION, models_equivalent, parse_script

EXIT_OK, EXIT_INVALID, EXIT_IO, EXIT_NOT_EQUIVALENT, EXIT_SINGULAR, EXIT_BENCH, EXIT_USAGE = 0, 2, 3, 4, 5, 6, 64
DIALECT_CHOICES = ("opensees", "sap2000", "etabs", "all")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _dialect_list(value: str) -> tuple[str, ...]:
    names = [v.strip() for v in value.split(",") if v.strip()]
    bad = [n for n in names if n not in DIALECT_CHOICES]
    if not names or bad:
        raise argparse.ArgumentTypeError(
            f"expected a comma separated subset of {', '.join(DIALECT_CHOICES)}, got {value!r}")
    out: list[str] = []
    for n in names:
        out += [d for d in TARGET_DIALECTS[n] if d not in out]
    return tuple(d for d in DIALECTS if d in out)


def _tolerance() -> float:
    raw = os.environ.get("FRAMEFORGE_TOL")
    if raw is None:
        return COORD_TOL
    try:
        tol = float(raw)
    except ValueError:
        tol = -1.0
    if not tol > 0:
        raise UsageError(f"FRAMEFORGE_TOL must be a positive number, got {raw!r}")
    return tol


def stem_of(path: Path) -> str:
    name = path.name
    for suffix in (".frame.json", ".frame", ".json"):
        if name.endswith(suffix) and len(name) > len(suffix):
            return name[: -len(suffix)]
    return path.stem


def _safe(name: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.-]", "_", name) or "frame"


def load_input(path: Path, tol: float) -> tuple[FrameModel, str | None]:
    """Read a ``.frame`` template or a ``.frame.json`` IR; returns the model and target hint."""
    text = path.read_text(encoding="utf-8")
    if path.name.endswith(".json"):
        return from_json(text), None
    spec = parse_problem(text)
    return build_model(spec, tol=tol, provenance=path.name), spec.target_hint


def _report(exc: FrameError) -> None:
    for d in exc.diagnostics:
        print(d, file=sys.stderr)


def cmd_compile(args, tol: float) -> int:
    model, hint = load_input(Path(args.input), tol)
    target = args.target or hint or "all"
    stem = stem_of(Path(args.input))
    scripts = compile_targets(model, TARGET_DIALECTS[target], name=_safe(stem))
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for dialect, script in scripts.items():
        path = out_dir / f"{stem}{EXTENSIONS[dialect]}"
        path.write_text(script.text, encoding="ascii", newline="\n")
        written.append(path)
    if args.emit_ir:
        path = out_dir / f"{stem}.frame.json"
        path.write_text(to_canonical_json(model), encoding="ascii", newline="\n")
        written.append(path)
    for path in written:
        print(path)
    return EXIT_OK


def cmd_verify(args, tol: float) -> int:
    script_path = Path(args.script)
    dialect = DIALECT_OF_EXTENSION.get(script_path.suffix)
    if dialect is None:
        raise UsageError(f"cannot infer the dialect of {script_path.name!r}; "
                         f"expected one of {', '.join(sorted(DIALECT_OF_EXTENSION))}")
    reference, _ = load_input(Path(args.against), tol)
    parsed = parse_script(script_path.read_text(encoding="utf-8"), dialect)
    report = models_equivalent(reference, parsed, tol)
    print(report)
    return EXIT_OK if report.equivalent else EXIT_NOT_EQUIVALENT


def cmd_solve(args, tol: float) -> int:
    if args.samples < 2:
        raise UsageError("--samples must be at least 2")
    path = Path(args.input)
    model, _ = load_input(path, tol)
    solution = solve(model, n_samples=args.samples, tol=tol)
    out = Path(args.out) if args.out else Path(f"{stem_of(path)}.solution.json")
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(solution_to_json(solution), encoding="ascii", newline="\n")
    nid, d = max(solution.displacements.items(), key=lambda kv: abs(kv[1][0]) + abs(kv[1][1]))
    print(f"wrote {out}")
    print(f"nodes {len(solution.displacements)}, elements {len(solution.end_forces)}, "
          f"supports {len(solution.reactions)}")
    print(f"max displacement at node {nid}: ux={d[0]:.6g} uy={d[1]:.6g} rz={d[2]:.6g}")
    totals = [sum(r[k] for r in solution.reactions.values()) for k in range(3)]
    print(f"reaction totals: rx={totals[0]:.6g} ry={totals[1]:.6g} rm={totals[2]:.6g}")
    for nid, r in sorted(solution.reactions.items()):
        print(f"  node {nid}: rx={r[0]:.6g} ry={r[1]:.6g} rm={r[2]:.6g}")
    return EXIT_OK


def cmd_bench(args, tol: float) -> int:
    if args.repeat < 1:
        raise UsageError("--repeat must be at least 1")
    config = bench.SuiteConfig()
    if args.config:
        config = bench.SuiteConfig.from_json(Path(args.config).read_text(encoding="utf-8"))
    suite = bench.generate_suite(config)
    reports = bench.run_repeated(suite, args.dialects, args.repeat)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    first = reports[0]
    (out_dir / "bench_report.json").write_text(first.to_json(), encoding="ascii", newline="\n")
    (out_dir / "bench_report.txt").write_text(first.to_table(), encoding="ascii", newline="\n")
    for k, rep in enumerate(reports[1:], start=2):
        (out_dir / f"bench_report.run{k:02d}.json").write_text(rep.to_json(), encoding="ascii", newline="\n")
    timings = "".join(f"run {k}: {rep.timings()['total_seconds']:.3f} s\n" for k, rep in enumerate(reports, 1))
    (out_dir / "bench_timings.txt").write_text(timings, encoding="ascii", newline="\n")
    print(first.to_table(), end="")
    identical = len({rep.to_json() for rep in reports}) == 1
    if args.repeat > 1:
        print(f"repeats: {args.repeat}, reports identical: {'yes' if identical else 'NO'}")
    print(f"total time: {sum(rep.timings()['total_seconds'] for rep in reports):.3f} s", file=sys.stderr)
    return EXIT_OK if identical and all(rep.all_passed for rep in reports) else EXIT_BENCH


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="frameforge", description="Compile plane-frame templates to FEA scripts, "
                                                    "verify them by parse-back and solve them.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)

    p = sub.add_parser("compile", help="template or IR -> OpenSees/SAP2000/ETABS scripts")
    p.add_argument("input", help=".frame template or .frame.json IR")
    p.add_argument("--target", choices=DIALECT_CHOICES, help="default: the template's [TARGET] software")
    p.add_argument("--out-dir", default=".", help="output directory (default: current directory)")
    p.add_argument("--emit-ir", action="store_true", help="also write <stem>.frame.json")
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("verify", help="parse a script back and compare it with an IR")
    p.add_argument("script", help=".tcl, .s2k or .e2k file")
    p.add_argument("--against", required=True, help=".frame.json IR (or .frame template)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("solve", help="linear static analysis with the built-in solver")
    p.add_argument("input", help=".frame template or .frame.json IR")
    p.add_argument("--out", help="solution JSON path (default: <stem>.solution.json)")
    p.add_argument("--samples", type=int, default=11, help="diagram stations per element (default 11)")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("bench", help="run the 20-problem round-trip benchmark")
    p.add_argument("--config", help="JSON suite configuration (default: built-in pools)")
    p.add_argument("--dialects", type=_dialect_list, default=DIALECTS,
                   help="comma separated subset of opensees,sap2000,etabs or 'all' (default all)")
    p.add_argument("--repeat", type=int, default=1, help="run the suite this many times")
    p.add_argument("--out-dir", default=".", help="where to write bench_report.* (default: current directory)")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not getattr(args, "func", None):
        parser.print_usage(sys.stderr)
        return EXIT_USAGE

    def show(message, category, filename, lineno, file=None, line=None):
        print(message.diagnostic if isinstance(message, FrameWarning) else message, file=sys.stderr)

    with warnings.catch_warnings():
        warnings.simplefilter("always", FrameWarning)
        warnings.showwarning = show
        try:
            return args.func(args, _tolerance())
        except UsageError as exc:
            print(f"frameforge: error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        except FrameError as exc:
            _report(exc)
            return EXIT_SINGULAR if exc.code == "SINGULAR_SYSTEM" else EXIT_INVALID
        except OSError as exc:
            print(f"frameforge: {exc}", file=sys.stderr)
            return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
