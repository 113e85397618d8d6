"""The 20-problem round-trip benchmark, run from the library.

Equivalent to ``frameforge bench``; the CLI also writes the report files.
"""
import time

from frameforge.bench import SuiteConfig, generate_suite, run_suite

suite = generate_suite(SuiteConfig())
start = time.perf_counter()
report = run_suite(suite)
elapsed = time.perf_counter() - start

print(report.to_table(), end="")
print(f"{len(report.cells)} cells in {elapsed:.2f} s; accuracy per dialect: "
      + ", ".join(f"{d} {acc:.0%}" for d, acc in report.accuracy().items()))
