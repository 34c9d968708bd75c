#!/usr/bin/env python3
"""Regenerate the vendored random 3-SAT corpus in tests/data/rnd100-430.

Instances follow the uf100-430 / uuf100-430 recipe (100 variables, 430
uniform random 3-clauses).  Each candidate is classified by the solver; SAT
models are re-checked by direct evaluation and UNSAT answers by the DRUP
checker before the file is kept.
"""

import argparse
import io
from pathlib import Path

from alorusat.cnf import to_dimacs
from alorusat.proof import ProofLog, check_drup
from alorusat.solver import solve
from alorusat.testkit import RandomCnfSpec, evaluate, gen_random_cnf


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=str(Path(__file__).parent.parent / "tests/data/rnd100-430"))
    ap.add_argument("--per-class", type=int, default=12)
    ap.add_argument("--seed", type=int, default=430100)
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    kept = {"sat": 0, "unsat": 0}
    seed = args.seed
    while min(kept.values()) < args.per_class:
        f = gen_random_cnf(RandomCnfSpec(100, 430, 3, seed))
        buf = io.StringIO()
        res = solve(f, proof=ProofLog(buf))
        kind = "sat" if res.is_sat else "unsat"
        ok = evaluate(f, res.model) if res.is_sat else check_drup(f, buf.getvalue()).verified
        if ok and kept[kind] < args.per_class:
            kept[kind] += 1
            header = f"c random 3-SAT n=100 m=430 seed={seed} expected={kind.upper()}\n"
            (out / f"rnd100-430-{kind}-{kept[kind]:02d}.cnf").write_text(header + to_dimacs(f))
        seed += 1
    print(kept)


if __name__ == "__main__":
    main()
