"""DRUP proof emission and a forward RUP checker.

The checker shares no code with the solver: it is the oracle used to confirm
UNSAT answers, so it is written to be obviously correct rather than fast.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import IO, Iterable

from .cnf import Formula


class ProofWriteError(OSError):
    pass


class ProofLog:
    """Append-only DRUP text writer.

    Literals are DIMACS integers.  ``added``/``deleted`` count the lines
    written so callers can cross-check logging completeness.
    """

    def __init__(self, sink: IO[str]):
        self.sink = sink
        self.added = 0
        self.deleted = 0

    def _write(self, line: str) -> None:
        try:
            self.sink.write(line)
        except (OSError, ValueError) as exc:
            raise ProofWriteError(f"cannot write proof: {exc}") from exc

    def add(self, lits: Iterable[int]) -> None:
        self.added += 1
        self._write(" ".join([*map(str, lits), "0"]) + "\n")

    def delete(self, lits: Iterable[int]) -> None:
        self.deleted += 1
        self._write("d " + " ".join([*map(str, lits), "0"]) + "\n")

    @property
    def lines(self) -> int:
        return self.added + self.deleted

    def flush(self) -> None:
        try:
            self.sink.flush()
        except (OSError, ValueError) as exc:
            raise ProofWriteError(f"cannot write proof: {exc}") from exc


@dataclass(frozen=True)
class DrupResult:
    verified: bool
    line: int | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.verified


class _ClauseSet:
    """Clauses under a two-watched-literal scheme, propagated from scratch per query.

    Each stored clause is a list whose first two entries are its watches.
    """

    def __init__(self):
        self.clauses: list[list[int] | None] = []
        self.watch: dict[int, list[int]] = {}
        self.by_key: dict[tuple[int, ...], list[int]] = {}
        self.units: Counter[int] = Counter()
        self.empty = 0

    def add(self, lits: tuple[int, ...]) -> None:
        cid = len(self.clauses)
        work = list(dict.fromkeys(lits))
        self.clauses.append(work)
        self.by_key.setdefault(tuple(sorted(lits)), []).append(cid)
        if not work:
            self.empty += 1
        elif len(work) == 1:
            self.units[work[0]] += 1
        else:
            self.watch.setdefault(work[0], []).append(cid)
            self.watch.setdefault(work[1], []).append(cid)

    def delete(self, lits: tuple[int, ...]) -> bool:
        ids = self.by_key.get(tuple(sorted(lits)))
        if not ids:
            return False
        cid = ids.pop()
        clause = self.clauses[cid]
        self.clauses[cid] = None
        if not clause:
            self.empty -= 1
        elif len(clause) == 1:
            self.units[clause[0]] -= 1
            if not self.units[clause[0]]:
                del self.units[clause[0]]
        # longer clauses leave stale watch entries, dropped when next visited
        return True

    def implies_conflict(self, assumed: Iterable[int]) -> bool:
        """Does unit propagation from the units plus ``assumed`` reach a conflict?"""
        if self.empty:
            return True
        value: dict[int, bool] = {}
        queue: list[int] = []

        def assign(lit: int) -> bool:
            var = abs(lit)
            if var in value:
                return value[var] == (lit > 0)
            value[var] = lit > 0
            queue.append(lit)
            return True

        def is_false(lit: int) -> bool:
            v = value.get(abs(lit))
            return v is not None and v != (lit > 0)

        for lit in (*self.units, *assumed):
            if not assign(lit):
                return True

        head = 0
        while head < len(queue):
            false_lit = -queue[head]
            head += 1
            watchers = self.watch.get(false_lit)
            if not watchers:
                continue
            keep = []
            conflict = False
            for cid in watchers:
                clause = self.clauses[cid]
                if clause is None:
                    continue
                if conflict:
                    keep.append(cid)
                    continue
                if clause[0] == false_lit:
                    clause[0], clause[1] = clause[1], clause[0]
                other = clause[0]
                if value.get(abs(other)) == (other > 0):
                    keep.append(cid)
                    continue
                for i in range(2, len(clause)):
                    if not is_false(clause[i]):
                        clause[1], clause[i] = clause[i], false_lit
                        self.watch.setdefault(clause[1], []).append(cid)
                        break
                else:
                    keep.append(cid)
                    if not assign(other):
                        conflict = True
            self.watch[false_lit] = keep
            if conflict:
                return True
        return False


def _parse_proof_line(line: str) -> tuple[bool, tuple[int, ...]]:
    toks = line.split()
    deletion = toks[0] == "d"
    if deletion:
        toks = toks[1:]
    if not toks or toks[-1] != "0":
        raise ValueError("line not terminated by 0")
    lits = tuple(int(t) for t in toks[:-1])
    if 0 in lits:
        raise ValueError("0 inside clause")
    return deletion, lits


def check_drup(formula: Formula, proof_text: str) -> DrupResult:
    """Forward DRUP check of ``proof_text`` against ``formula``.

    Every added clause must be RUP with respect to the clauses present at
    that point; deletions must name a present clause.  The proof is
    verified once the empty clause has been added (or is already implied).
    """
    db = _ClauseSet()
    for clause in formula.clauses:
        db.add(tuple(clause))

    lineno = 0
    for lineno, line in enumerate(proof_text.splitlines(), 1):
        if not line.strip() or line.startswith("c"):
            continue
        try:
            deletion, lits = _parse_proof_line(line)
        except ValueError as exc:
            return DrupResult(False, lineno, f"malformed line: {exc}")
        if deletion:
            if not db.delete(lits):
                return DrupResult(False, lineno, "deleted clause not present")
            continue
        if not db.implies_conflict(-l for l in lits):
            return DrupResult(False, lineno, "lemma is not RUP")
        if not lits:
            return DrupResult(True, lineno)
        db.add(lits)
    return DrupResult(False, lineno + 1, "proof ends without the empty clause")
