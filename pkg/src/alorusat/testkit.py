"""Oracles and instance generators for the test-suite.

Nothing here imports the solver.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .cnf import Formula

ORACLE_VAR_CAP = 24
# variables enumerated inside one vectorised block
_BLOCK_BITS = 20


class OracleCapExceeded(ValueError):
    pass


@dataclass(frozen=True)
class RandomCnfSpec:
    num_vars: int
    num_clauses: int
    clause_len: int = 3
    seed: int = 0

    def __post_init__(self):
        if not 1 <= self.clause_len <= self.num_vars:
            raise ValueError("clause_len must lie in 1..num_vars")


def gen_random_cnf(spec: RandomCnfSpec) -> Formula:
    """Uniform random k-CNF: distinct variables per clause, fair polarity."""
    rng = random.Random(spec.seed)
    variables = range(1, spec.num_vars + 1)
    clauses = []
    for _ in range(spec.num_clauses):
        picked = rng.sample(variables, spec.clause_len)
        clauses.append(tuple(v if rng.random() < 0.5 else -v for v in picked))
    return Formula(spec.num_vars, tuple(clauses))


@lru_cache(maxsize=4)
def _block_columns(bits: int) -> np.ndarray:
    # row j holds variable j's value over all 2**bits assignments; j = 0 is the most significant bit
    idx = np.arange(1 << bits, dtype=np.uint32)
    shifts = np.arange(bits - 1, -1, -1, dtype=np.uint32)[:, None]
    return ((idx[None, :] >> shifts) & 1).astype(bool)


def brute_force_sat(formula: Formula) -> tuple[bool, list[bool] | None]:
    """Exhaustive search.  Returns ``(True, model)`` or ``(False, None)``.

    The model is the first satisfying assignment in lexicographic order of
    ``(x1, ..., xn)`` with False before True.
    """
    n = formula.num_vars
    if n > ORACLE_VAR_CAP:
        raise OracleCapExceeded(f"{n} variables exceeds the oracle cap of {ORACLE_VAR_CAP}")
    if any(len(c) == 0 for c in formula.clauses):
        return False, None
    low = min(n, _BLOCK_BITS)
    high = n - low
    cols = _block_columns(low) if low else None

    for prefix in range(1 << high):
        # variables 1..high are fixed by the prefix
        fixed = [(prefix >> (high - 1 - i)) & 1 == 1 for i in range(high)]
        mask = np.ones(1 << low, dtype=bool)
        dead = False
        for clause in formula.clauses:
            hit = None
            satisfied = False
            for lit in clause:
                v = abs(lit) - 1
                if v < high:
                    if fixed[v] == (lit > 0):
                        satisfied = True
                        break
                    continue
                col = cols[v - high]
                term = col if lit > 0 else ~col
                hit = term.copy() if hit is None else (hit | term)
            if satisfied:
                continue
            if hit is None:
                dead = True
                break
            mask &= hit
            if not mask.any():
                dead = True
                break
        if dead:
            continue
        first = int(np.argmax(mask))
        if mask[first]:
            tail = [bool(cols[j][first]) for j in range(low)] if low else []
            return True, fixed + tail
    return False, None


def evaluate(formula: Formula, model) -> bool:
    """Independent clause-by-clause model check."""
    for clause in formula.clauses:
        if not any((model[abs(l) - 1]) == (l > 0) for l in clause):
            return False
    return True


def acceptance_corpus(count: int = 500, sizes=(10, 15, 20), ratios=(3.5, 4.26, 5.0),
                      base_seed: int = 20161) -> list[tuple[str, Formula]]:
    """Fixed-seed random 3-SAT corpus spread evenly over ``sizes x ratios``."""
    cells = [(n, r) for n in sizes for r in ratios]
    out = []
    for i in range(count):
        n, r = cells[i % len(cells)]
        spec = RandomCnfSpec(n, round(r * n), 3, base_seed + i)
        out.append((f"rand-n{n}-r{r}-s{spec.seed}", gen_random_cnf(spec)))
    return out
