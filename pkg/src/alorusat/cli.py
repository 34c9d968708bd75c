"""Command-line front end following SAT Competition output conventions.

``s``/``v``/``c`` lines on stdout; exit 10 (SAT), 20 (UNSAT), 0 (UNKNOWN),
1 on input errors and 3 when the proof file cannot be written.
"""

from __future__ import annotations

import argparse
import logging
import sys
import time
from typing import IO, Sequence

from .cnf import DimacsError, read_dimacs
from .profiles import DEFAULT_PROFILE, PROFILE_NAMES, get_profile
from .proof import ProofLog, ProofWriteError
from .solver import Solver, Status
from .split import SplitContext, split_solve

EXIT_CODES = {Status.SAT: 10, Status.UNSAT: 20, Status.UNKNOWN: 0}
EXIT_ERROR = 1
EXIT_PROOF_ERROR = 3


def _key_value(text: str) -> tuple[str, str]:
    key, sep, value = text.partition("=")
    if not sep or not key:
        raise argparse.ArgumentTypeError(f"expected key=value, got {text!r}")
    return key.strip(), value.strip()


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="alorusat", description="CDCL SAT solver with switchable "
                                "learnt-clause management (ALORU, approximate reduction, core/local tiers).")
    p.add_argument("cnf", help="DIMACS CNF file (.gz/.xz/.bz2 accepted)")
    p.add_argument("--profile", choices=PROFILE_NAMES, default=DEFAULT_PROFILE)
    p.add_argument("--aloru", choices=("on", "off"))
    p.add_argument("--reduce", choices=("exact", "approx"))
    p.add_argument("--tiers", choices=("glucose", "dynamic"))
    p.add_argument("--split", action="store_true", help="recursive splitting mode")
    p.add_argument("--proof", metavar="PATH", help="write a DRUP proof to PATH")
    p.add_argument("--max-conflicts", type=int, metavar="N")
    p.add_argument("--timeout", type=float, metavar="SECONDS", help="wall-clock limit; UNKNOWN when hit")
    p.add_argument("--seed", type=int)
    p.add_argument("--set", dest="overrides", action="append", type=_key_value, default=[],
                   metavar="KEY=VALUE", help="override any strategy constant, e.g. local_upper_trigger=180")
    p.add_argument("--no-model", action="store_true", help="omit v lines")
    return p


def config_from_args(args: argparse.Namespace):
    profile = get_profile(args.profile)
    pairs = {}
    if args.aloru:
        pairs["aloru"] = args.aloru
    if args.reduce:
        pairs["reduction"] = args.reduce
    if args.tiers:
        pairs["tiers"] = args.tiers
    pairs.update(dict(args.overrides))
    if args.seed is not None:
        pairs["seed"] = str(args.seed)
    return profile, profile.config.with_overrides(pairs)


def format_model(lits: Sequence[int], width: int = 10) -> list[str]:
    out = []
    lits = list(lits) + [0]
    for i in range(0, len(lits), width):
        out.append("v " + " ".join(map(str, lits[i:i + width])))
    return out


def stat_lines(stats) -> list[str]:
    return [f"c stat {k} {v}" for k, v in stats.as_dict().items()]


def run_cli(argv: Sequence[str] | None = None, out: IO[str] | None = None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)

    def emit(line: str) -> None:
        out.write(line + "\n")

    try:
        profile, config = config_from_args(args)
    except (KeyError, ValueError) as exc:
        emit(f"c ERROR {exc}")
        return EXIT_ERROR
    try:
        formula = read_dimacs(args.cnf)
    except (OSError, DimacsError) as exc:
        emit(f"c ERROR {exc}")
        return EXIT_ERROR

    emit(f"c alorusat profile={profile.name} aloru={'on' if config.aloru else 'off'} "
         f"reduce={config.reduction.value} tiers={config.tiers.value} split={'on' if args.split else 'off'}")
    emit(f"c formula vars={formula.num_vars} clauses={len(formula.clauses)}")

    proof_fh = None
    try:
        if args.proof:
            try:
                proof_fh = open(args.proof, "w", buffering=1 << 16)
            except OSError as exc:
                emit(f"c ERROR cannot open proof file: {exc}")
                return EXIT_PROOF_ERROR
        proof = ProofLog(proof_fh) if proof_fh else None
        deadline = time.monotonic() + args.timeout if args.timeout else None
        start = time.perf_counter()
        if args.split:
            if formula.num_literals > config.split_warn_literals:
                emit(f"c warning: split mode on a large formula ({formula.num_literals} literals)")
            if args.max_conflicts is not None:
                config = config.replace(split_leaf_conflicts=min(config.split_leaf_conflicts, args.max_conflicts))
            solver = Solver(formula, config, proof)
            if deadline is not None:
                emit("c warning: --timeout is not applied in split mode")
            result = split_solve(solver, SplitContext.from_config(config))
        else:
            solver = Solver(formula, config, proof)
            result = solver.solve((), args.max_conflicts, deadline)
        elapsed = time.perf_counter() - start
    except ProofWriteError as exc:
        emit(f"c ERROR {exc}")
        return EXIT_PROOF_ERROR
    finally:
        if proof_fh is not None:
            try:
                proof_fh.close()
            except OSError:
                pass

    for line in stat_lines(result.stats):
        emit(line)
    emit(f"c time {elapsed:.3f}")
    if result.status is Status.SAT:
        emit("s SATISFIABLE")
        if not args.no_model:
            for line in format_model(result.model_literals()):
                emit(line)
    elif result.status is Status.UNSAT:
        emit("s UNSATISFIABLE")
    else:
        emit("s UNKNOWN")
    return EXIT_CODES[result.status]


def main() -> None:
    logging.basicConfig(level=logging.WARNING, format="c %(levelname)s %(message)s", stream=sys.stdout)
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
