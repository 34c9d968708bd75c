"""CNF formulas and DIMACS input/output.

Externally literals are DIMACS integers (variables numbered from 1).  The
solver works on the internal encoding ``2 * (var - 1) + negative`` and the
helpers at the bottom of this module are the only place that conversion
happens.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import IO, Iterable, Sequence

log = logging.getLogger(__name__)


class DimacsError(ValueError):
    """Malformed DIMACS input.  ``line`` is 1-based."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class ParseStats:
    declared_clauses: int = 0
    duplicate_literals: int = 0
    tautologies: int = 0


@dataclass(frozen=True)
class Formula:
    num_vars: int
    clauses: tuple[tuple[int, ...], ...] = ()
    stats: ParseStats = field(default=ParseStats(), compare=False)

    def __post_init__(self):
        for clause in self.clauses:
            for lit in clause:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"literal {lit} outside variables 1..{self.num_vars}")

    @classmethod
    def from_clauses(cls, num_vars: int, clauses: Iterable[Iterable[int]]) -> "Formula":
        """Build a formula, normalizing each clause the way the parser does."""
        kept = []
        for clause in clauses:
            norm, _ = normalize_clause(clause)
            if norm is not None:
                kept.append(norm)
        return cls(num_vars, tuple(kept))

    @property
    def num_literals(self) -> int:
        return sum(len(c) for c in self.clauses)

    def evaluate(self, model: Sequence[bool]) -> bool:
        """True iff ``model`` (index 0 is variable 1) satisfies every clause."""
        return all(any(model[abs(l) - 1] == (l > 0) for l in c) for c in self.clauses)


def normalize_clause(lits: Iterable[int]) -> tuple[tuple[int, ...] | None, int]:
    """Drop duplicate literals, keeping first occurrences in order.

    Returns ``(None, dups)`` for a tautology.
    """
    seen: set[int] = set()
    out = []
    dups = 0
    for lit in lits:
        if lit in seen:
            dups += 1
            continue
        if -lit in seen:
            return None, dups
        seen.add(lit)
        out.append(lit)
    return tuple(out), dups


def parse_dimacs(text: str | bytes) -> Formula:
    if isinstance(text, bytes):
        text = text.decode("utf-8", errors="replace")

    num_vars = None
    declared = 0
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    current_start = 0
    dups = tautologies = 0

    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("c") or stripped.startswith("%"):
            # '%' terminates the body in SATLIB's uf/uuf files
            if stripped.startswith("%"):
                break
            continue
        if stripped.startswith("p"):
            if num_vars is not None:
                raise DimacsError(lineno, "duplicate problem header")
            parts = stripped.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsError(lineno, f"malformed header {stripped!r}")
            try:
                num_vars, declared = int(parts[2]), int(parts[3])
            except ValueError:
                raise DimacsError(lineno, f"malformed header {stripped!r}") from None
            if num_vars < 0 or declared < 0:
                raise DimacsError(lineno, "negative count in header")
            continue
        if num_vars is None:
            raise DimacsError(lineno, "clause before problem header")
        for tok in stripped.split():
            try:
                lit = int(tok)
            except ValueError:
                raise DimacsError(lineno, f"bad literal {tok!r}") from None
            if lit == 0:
                norm, d = normalize_clause(current)
                dups += d
                if norm is None:
                    tautologies += 1
                else:
                    clauses.append(norm)
                current = []
                continue
            if num_vars == 0:
                raise DimacsError(lineno, "clause body in a zero-variable formula")
            if abs(lit) > num_vars:
                raise DimacsError(lineno, f"literal {lit} exceeds declared {num_vars} variables")
            if not current:
                current_start = lineno
            current.append(lit)

    if current:
        raise DimacsError(current_start, "unterminated final clause")
    if num_vars is None:
        # empty input is the empty (satisfiable) formula
        return Formula(0, ())
    read = len(clauses) + tautologies
    if read != declared:
        log.warning("header declares %d clauses, read %d", declared, read)
    stats = ParseStats(declared, dups, tautologies)
    return Formula(num_vars, tuple(clauses), stats)


def read_dimacs(path: str) -> Formula:
    """Parse a DIMACS file; ``.gz``/``.xz``/``.bz2`` are decompressed transparently."""
    if path.endswith(".gz"):
        import gzip
        opener = gzip.open
    elif path.endswith(".xz"):
        import lzma
        opener = lzma.open
    elif path.endswith(".bz2"):
        import bz2
        opener = bz2.open
    else:
        opener = open
    with opener(path, "rb") as fh:
        return parse_dimacs(fh.read())


def to_dimacs(formula: Formula) -> str:
    lines = [f"p cnf {formula.num_vars} {len(formula.clauses)}"]
    for clause in formula.clauses:
        lines.append(" ".join(map(str, clause + (0,))))
    return "\n".join(lines) + "\n"


def write_dimacs(formula: Formula, fh: IO[str]) -> None:
    fh.write(to_dimacs(formula))


# internal literal encoding

def to_internal(lit: int) -> int:
    return 2 * (abs(lit) - 1) + (lit < 0)


def to_dimacs_lit(ilit: int) -> int:
    v = (ilit >> 1) + 1
    return -v if ilit & 1 else v
