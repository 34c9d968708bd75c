"""Benchmark harness: every instance under every profile, one CSV row each."""

from __future__ import annotations

import argparse
import csv
import io
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import astuple, dataclass, fields
from pathlib import Path
from typing import IO, Sequence

from .cnf import DimacsError, read_dimacs
from .config import StrategyConfig
from .profiles import parse_profile_spec
from .solver import Solver

CSV_HEADER = ("instance,profile,result,conflicts,decisions,propagations,restarts,"
              "reductions,learnt_added,learnt_removed,wall_time_s")


@dataclass
class BenchRow:
    instance: str
    profile: str
    result: str
    conflicts: int = 0
    decisions: int = 0
    propagations: int = 0
    restarts: int = 0
    reductions: int = 0
    learnt_added: int = 0
    learnt_removed: int = 0
    wall_time_s: float = 0.0


assert ",".join(f.name for f in fields(BenchRow)) == CSV_HEADER


def corpus_files(corpus: str | Path) -> list[Path]:
    root = Path(corpus)
    pats = ("*.cnf", "*.cnf.gz", "*.cnf.xz", "*.cnf.bz2")
    return sorted({p for pat in pats for p in root.rglob(pat)})


def run_one(path: Path, label: str, config: StrategyConfig, max_conflicts: int | None = None,
            timeout: float | None = None, root: Path | None = None) -> BenchRow:
    name = str(path.relative_to(root)) if root else str(path)
    start = time.perf_counter()
    try:
        formula = read_dimacs(str(path))
        deadline = time.monotonic() + timeout if timeout else None
        outcome = Solver(formula, config).solve((), max_conflicts, deadline)
    except (OSError, DimacsError):
        return BenchRow(name, label, "ERROR", wall_time_s=round(time.perf_counter() - start, 4))
    s = outcome.stats
    return BenchRow(name, label, outcome.status.value, s.conflicts, s.decisions, s.propagations,
                    s.restarts, s.reductions, s.learnt_added, s.learnt_removed,
                    round(time.perf_counter() - start, 4))


def run_bench(corpus: str | Path, profiles: Sequence[str], out: IO[str] | None = None,
              max_conflicts: int | None = None, timeout: float | None = None,
              jobs: int = 1) -> str:
    """Run the (instance x profile) matrix and return the CSV text.

    Rows are ordered by instance path, then by position in ``profiles``,
    regardless of ``jobs``.
    """
    root = Path(corpus)
    files = corpus_files(root)
    matrix = [parse_profile_spec(p) for p in profiles]
    tasks = [(f, label, cfg, max_conflicts, timeout, root) for f in files for label, cfg in matrix]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(jobs) as pool:
            rows = list(pool.map(_run_task, tasks))
    else:
        rows = [_run_task(t) for t in tasks]

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER.split(","))
    for row in rows:
        writer.writerow(astuple(row))
    text = buf.getvalue()
    if out is not None:
        out.write(text)
    return text


def _run_task(task) -> BenchRow:
    return run_one(*task)


def summarize(csv_text: str) -> dict[str, dict[str, int]]:
    """Per-profile totals of conflicts and result counts."""
    totals: dict[str, dict[str, int]] = {}
    for row in csv.DictReader(io.StringIO(csv_text)):
        t = totals.setdefault(row["profile"], {"conflicts": 0, "SAT": 0, "UNSAT": 0, "UNKNOWN": 0, "ERROR": 0})
        t["conflicts"] += int(row["conflicts"])
        t[row["result"]] += 1
    return totals


def main(argv: Sequence[str] | None = None) -> int:
    p = argparse.ArgumentParser(prog="alorusat-bench", description="Run a corpus under several profiles.")
    p.add_argument("corpus", help="directory searched recursively for .cnf files")
    p.add_argument("-p", "--profile", action="append", dest="profiles", metavar="SPEC",
                   help="profile name with optional overrides, e.g. drup or inc:aloru=off (repeatable)")
    p.add_argument("-o", "--output", help="CSV destination (default stdout)")
    p.add_argument("--max-conflicts", type=int)
    p.add_argument("--timeout", type=float, help="per-instance wall-clock limit in seconds")
    p.add_argument("-j", "--jobs", type=int, default=1)
    p.add_argument("--summary", action="store_true", help="print per-profile totals to stderr")
    args = p.parse_args(argv)
    profiles = args.profiles or ["drup"]
    try:
        for spec in profiles:
            parse_profile_spec(spec)
    except (KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.output:
        with open(args.output, "w", newline="") as fh:
            text = run_bench(args.corpus, profiles, fh, args.max_conflicts, args.timeout, args.jobs)
    else:
        text = run_bench(args.corpus, profiles, sys.stdout, args.max_conflicts, args.timeout, args.jobs)
    if args.summary:
        for label, t in summarize(text).items():
            print(f"{label}: " + " ".join(f"{k}={v}" for k, v in t.items()), file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
