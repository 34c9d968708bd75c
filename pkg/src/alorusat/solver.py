"""CDCL search engine.

Two-watched-literal propagation, first-UIP learning with recursive clause
minimization, VSIDS with phase saving, and Glucose-style LBD-driven
restarts.  Every decision about keeping or deleting learnt clauses is made
by :class:`~alorusat.clausedb.ClauseDatabase`.

Internally variable ``v`` (0-based) has literals ``2v`` (positive) and
``2v + 1`` (negative); ``val[lit]`` is 1 when true, -1 when false and 0 when
unassigned.
"""

from __future__ import annotations

import enum
import time
from collections import deque
from dataclasses import asdict, dataclass, field
from heapq import heapify, heappop, heappush
from typing import Iterable, Sequence

from .clausedb import Clause, ClauseDatabase, compute_lbd
from .cnf import Formula, normalize_clause, to_dimacs_lit, to_internal
from .config import StrategyConfig
from .monitor import SolverMonitor
from .proof import ProofLog


class Status(enum.Enum):
    SAT = "SAT"
    UNSAT = "UNSAT"
    UNKNOWN = "UNKNOWN"


@dataclass
class Stats:
    conflicts: int = 0
    decisions: int = 0
    propagations: int = 0
    restarts: int = 0
    reductions: int = 0
    learnt_added: int = 0
    learnt_removed: int = 0

    def as_dict(self) -> dict[str, int]:
        return asdict(self)


@dataclass(frozen=True)
class Budget:
    max_conflicts: int | None = None

    @property
    def unlimited(self) -> bool:
        return self.max_conflicts is None


@dataclass
class SolveOutcome:
    status: Status
    model: list[bool] | None = None
    residual: Formula | None = None
    failed_assumptions: list[int] | None = None
    stats: Stats = field(default_factory=Stats)

    @property
    def is_sat(self) -> bool:
        return self.status is Status.SAT

    @property
    def is_unsat(self) -> bool:
        return self.status is Status.UNSAT

    def model_literals(self) -> list[int]:
        assert self.model is not None
        return [v + 1 if b else -(v + 1) for v, b in enumerate(self.model)]


class Solver:
    """One CDCL instance over a fixed problem clause set.

    ``solve`` may be called repeatedly with different assumptions; learnt
    clauses, activities and statistics carry over between calls.
    """

    def __init__(self, formula: Formula, config: StrategyConfig | None = None,
                 proof: ProofLog | None = None, monitor: SolverMonitor | None = None):
        self.formula = formula
        self.config = config = config or StrategyConfig()
        self.proof = proof
        self.monitor = monitor
        n = self.num_vars = formula.num_vars

        self.val = [0] * (2 * n)
        self.level = [0] * n
        self.reason: list[Clause | None] = [None] * n
        self.trail: list[int] = []
        self.trail_lim: list[int] = []
        self.qhead = 0
        self.seen = [0] * n
        self.watches: list[list[Clause]] = [[] for _ in range(2 * n)]

        self.activity = [0.0] * n
        self.var_inc = 1.0
        self.var_decay = config.var_decay
        self.phase = [False] * n
        self.heap = [(-0.0, v) for v in range(n)]

        self.stats = Stats()
        self.db = ClauseDatabase(config, proof, monitor)
        self.lbd_queue: deque[int] = deque(maxlen=config.restart_window)
        self.sum_lbd = 0
        self.lbd_count = 0
        self.assumptions: list[int] = []
        self.branch_candidates: list[int] = []
        self.proof_extra = 0
        self._simp_trail = -1
        self.ok = True

        for clause in formula.clauses:
            self._add_problem(clause)
            if not self.ok:
                break

    # -- setup ---------------------------------------------------------------

    def _add_problem(self, dimacs_lits: Iterable[int]) -> None:
        norm, _ = normalize_clause(dimacs_lits)
        if norm is None:
            return
        lits = [to_internal(l) for l in norm]
        if not lits:
            self._mark_unsat()
            return
        if len(lits) == 1:
            lit = lits[0]
            if self.val[lit] == -1:
                self._mark_unsat()
            elif self.val[lit] == 0:
                self._enqueue(lit, None)
            return
        c = Clause(lits, False, self.db.new_uid())
        self.db.add_problem(c)
        self._attach(c)

    def _mark_unsat(self) -> None:
        if self.ok and self.proof is not None:
            self.proof.add(())
            self.proof_extra += 1
        self.ok = False

    def _attach(self, c: Clause) -> None:
        self.watches[c.lits[0]].append(c)
        self.watches[c.lits[1]].append(c)

    # -- small queries used by the clause database and tests -----------------

    def dimacs(self, lits: Iterable[int]) -> list[int]:
        return [to_dimacs_lit(l) for l in lits]

    def locked(self, c: Clause) -> bool:
        return self.reason[c.lits[0] >> 1] is c

    def root_satisfied(self, c: Clause) -> bool:
        val, level = self.val, self.level
        return any(val[l] == 1 and level[l >> 1] == 0 for l in c.lits)

    def decision_level(self) -> int:
        return len(self.trail_lim)

    def lit_value(self, dimacs_lit: int) -> bool | None:
        v = self.val[to_internal(dimacs_lit)]
        return None if v == 0 else v == 1

    def compute_lbd(self, c: Clause | Sequence[int]) -> int:
        lits = c.lits if isinstance(c, Clause) else c
        for l in lits:
            assert self.val[l] != 0, "compute_lbd on an unassigned literal"
        return compute_lbd(lits, self.level)

    # -- assignment ----------------------------------------------------------

    def _enqueue(self, lit: int, reason: Clause | None) -> None:
        v = lit >> 1
        self.val[lit] = 1
        self.val[lit ^ 1] = -1
        self.level[v] = len(self.trail_lim)
        self.reason[v] = reason
        self.trail.append(lit)

    def new_decision(self, lit: int) -> None:
        self.trail_lim.append(len(self.trail))
        self._enqueue(lit, None)

    def cancel_until(self, lvl: int) -> None:
        trail_lim = self.trail_lim
        if len(trail_lim) <= lvl:
            return
        trail, val, reason, phase = self.trail, self.val, self.reason, self.phase
        act, heap = self.activity, self.heap
        lim = trail_lim[lvl]
        for i in range(len(trail) - 1, lim - 1, -1):
            lit = trail[i]
            v = lit >> 1
            val[lit] = 0
            val[lit ^ 1] = 0
            reason[v] = None
            phase[v] = not lit & 1
            heappush(heap, (-act[v], v))
        del trail[lim:]
        del trail_lim[lvl:]
        self.qhead = lim
        if len(heap) > 8 * self.num_vars + 1024:
            self._rebuild_heap()

    # -- propagation ---------------------------------------------------------

    def propagate(self) -> Clause | None:
        """Unit-propagate the trail suffix; return a falsified clause or None."""
        val, watches, trail = self.val, self.watches, self.trail
        level, reason = self.level, self.reason
        dl = len(self.trail_lim)
        qhead = self.qhead
        conflict = None
        while qhead < len(trail):
            false_lit = trail[qhead] ^ 1
            qhead += 1
            ws = watches[false_lit]
            n = len(ws)
            i = j = 0
            while i < n:
                c = ws[i]
                i += 1
                if c.removed:
                    continue
                lits = c.lits
                if lits[0] == false_lit:
                    lits[0] = first = lits[1]
                    lits[1] = false_lit
                else:
                    first = lits[0]
                if val[first] == 1:
                    ws[j] = c
                    j += 1
                    continue
                for k in range(2, len(lits)):
                    other = lits[k]
                    if val[other] != -1:
                        lits[1] = other
                        lits[k] = false_lit
                        watches[other].append(c)
                        break
                else:
                    ws[j] = c
                    j += 1
                    if val[first] == -1:
                        conflict = c
                        while i < n:
                            ws[j] = ws[i]
                            j += 1
                            i += 1
                    else:
                        v = first >> 1
                        val[first] = 1
                        val[first ^ 1] = -1
                        level[v] = dl
                        reason[v] = c
                        trail.append(first)
            del ws[j:]
            if conflict is not None:
                break
        self.stats.propagations += qhead - self.qhead
        self.qhead = len(trail) if conflict is not None else qhead
        if self.monitor is not None:
            self.monitor.on_propagate_end(self)
        return conflict

    # -- VSIDS ---------------------------------------------------------------

    def _bump_var(self, v: int) -> None:
        act = self.activity
        act[v] += self.var_inc
        if act[v] > 1e100:
            for u in range(self.num_vars):
                act[u] *= 1e-100
            self.var_inc *= 1e-100
            self._rebuild_heap()
        elif self.val[2 * v] == 0:
            heappush(self.heap, (-act[v], v))

    def _rebuild_heap(self) -> None:
        val, act = self.val, self.activity
        self.heap = [(-act[v], v) for v in range(self.num_vars) if val[2 * v] == 0]
        heapify(self.heap)

    def pick_branch(self) -> int:
        """Unassigned variable of highest activity (lowest index on ties), saved phase.

        Returns -1 when every variable is assigned.
        """
        heap, val, act = self.heap, self.val, self.activity
        while heap:
            a, v = heappop(heap)
            if val[2 * v] != 0 or -a != act[v]:
                continue
            return 2 * v + (0 if self.phase[v] else 1)
        return -1

    # -- conflict analysis ---------------------------------------------------

    def analyze(self, confl: Clause) -> tuple[list[int], int, int]:
        """First-UIP learning.  Returns ``(learnt, backjump_level, lbd)``.

        ``learnt[0]`` is the asserting literal and ``learnt[1]`` (if any) the
        literal of highest remaining level.  The LBD is measured before
        backjumping, while every literal is still assigned.
        """
        seen, level, reason, trail = self.seen, self.level, self.reason, self.trail
        db = self.db
        dl = len(self.trail_lim)
        learnt = [-1]
        path = 0
        p = -1
        idx = len(trail) - 1
        c = confl
        while True:
            if c.learnt:
                db.bump_activity(c)
                db.on_used_in_conflict(c, level)
            lits = c.lits
            for j in range(0 if p < 0 else 1, len(lits)):
                q = lits[j]
                v = q >> 1
                if not seen[v] and level[v] > 0:
                    self._bump_var(v)
                    seen[v] = 1
                    if level[v] >= dl:
                        path += 1
                    else:
                        learnt.append(q)
            while not seen[trail[idx] >> 1]:
                idx -= 1
            p = trail[idx]
            idx -= 1
            v = p >> 1
            c = reason[v]
            seen[v] = 0
            path -= 1
            if path == 0:
                break
        learnt[0] = p ^ 1

        to_clear = learnt[:]
        abstract = 0
        for q in learnt[1:]:
            abstract |= 1 << (level[q >> 1] & 31)
        kept = [learnt[0]]
        for q in learnt[1:]:
            if reason[q >> 1] is None or not self._lit_redundant(q, abstract, to_clear):
                kept.append(q)
        learnt = kept
        for q in to_clear:
            seen[q >> 1] = 0

        if len(learnt) == 1:
            bt = 0
        else:
            best = 1
            for k in range(2, len(learnt)):
                if level[learnt[k] >> 1] > level[learnt[best] >> 1]:
                    best = k
            learnt[1], learnt[best] = learnt[best], learnt[1]
            bt = level[learnt[1] >> 1]
        lbd = compute_lbd(learnt, level)
        return learnt, bt, lbd

    def _lit_redundant(self, p: int, abstract: int, to_clear: list[int]) -> bool:
        seen, level, reason = self.seen, self.level, self.reason
        stack = [p]
        top = len(to_clear)
        while stack:
            q = stack.pop()
            lits = reason[q >> 1].lits
            for k in range(1, len(lits)):
                l = lits[k]
                v = l >> 1
                if not seen[v] and level[v] > 0:
                    if reason[v] is not None and (abstract >> (level[v] & 31)) & 1:
                        seen[v] = 1
                        stack.append(l)
                        to_clear.append(l)
                    else:
                        for l2 in to_clear[top:]:
                            seen[l2 >> 1] = 0
                        del to_clear[top:]
                        return False
        return True

    def _analyze_final(self, p: int) -> list[int]:
        """Negated assumptions that force assumption ``p`` false, plus ``not p``."""
        seen, level, reason, trail = self.seen, self.level, self.reason, self.trail
        out = [p ^ 1]
        if level[p >> 1] == 0 or not self.trail_lim:
            return out
        seen[p >> 1] = 1
        for i in range(len(trail) - 1, self.trail_lim[0] - 1, -1):
            x = trail[i]
            v = x >> 1
            if not seen[v]:
                continue
            r = reason[v]
            if r is None:
                out.append(x ^ 1)
            else:
                for l in r.lits[1:]:
                    if level[l >> 1] > 0:
                        seen[l >> 1] = 1
            seen[v] = 0
        seen[p >> 1] = 0
        return out

    # -- restarts ------------------------------------------------------------

    def should_restart(self) -> bool:
        q = self.lbd_queue
        if len(q) < q.maxlen or not self.lbd_count:
            return False
        return sum(q) / len(q) * self.config.restart_k > self.sum_lbd / self.lbd_count

    # -- search --------------------------------------------------------------

    def solve(self, assumptions: Sequence[int] = (), max_conflicts: int | None = None,
              deadline: float | None = None) -> SolveOutcome:
        """Search under DIMACS ``assumptions`` for at most ``max_conflicts`` conflicts.

        UNKNOWN is returned only when the conflict budget (or wall-clock
        ``deadline``, a ``time.monotonic`` value) runs out.
        """
        for a in assumptions:
            if a == 0 or abs(a) > self.num_vars:
                raise ValueError(f"assumption {a} outside variables 1..{self.num_vars}")
        self.assumptions = [to_internal(a) for a in assumptions]
        self.branch_candidates = []
        if not self.ok:
            return SolveOutcome(Status.UNSAT, stats=self.stats)
        status, failed = self._search(max_conflicts, deadline)
        outcome = SolveOutcome(status, stats=self.stats)
        if status is Status.SAT:
            model = [self.val[2 * v] == 1 for v in range(self.num_vars)]
            if not self.formula.evaluate(model):
                raise AssertionError("internal error: model does not satisfy the formula")
            outcome.model = model
        elif status is Status.UNSAT and failed is not None:
            outcome.failed_assumptions = self.dimacs(failed)
        elif status is Status.UNKNOWN:
            self.cancel_until(len(self.assumptions))
            val = self.val
            self.branch_candidates = [v for v in range(self.num_vars) if val[2 * v] == 0]
            self.cancel_until(0)
            outcome.residual = self.residual()
        self.cancel_until(0)
        if self.proof is not None:
            self.proof.flush()
        return outcome

    def _search(self, max_conflicts: int | None, deadline: float | None):
        stats, db = self.stats, self.db
        monitor = self.monitor
        proof = self.proof
        val, trail, trail_lim = self.val, self.trail, self.trail_lim
        assumptions = self.assumptions
        budget_end = None if max_conflicts is None else stats.conflicts + max_conflicts
        lbd_queue = self.lbd_queue
        var_decay = self.var_decay
        ticks = 0

        while True:
            confl = self.propagate()
            if confl is not None:
                stats.conflicts += 1
                if not trail_lim:
                    self._mark_unsat()
                    return Status.UNSAT, None
                learnt, bt, lbd = self.analyze(confl)
                self.cancel_until(bt)
                stats.learnt_added += 1
                if proof is not None:
                    proof.add(self.dimacs(learnt))
                if len(learnt) == 1:
                    self._enqueue(learnt[0], None)
                else:
                    c = Clause(learnt, True, db.new_uid())
                    db.add_learnt(c, lbd)
                    self._attach(c)
                    self._enqueue(learnt[0], c)
                lbd_queue.append(lbd)
                self.sum_lbd += lbd
                self.lbd_count += 1
                self.var_inc /= var_decay
                db.decay_activity()
                db.after_conflict(self)
                if monitor is not None:
                    monitor.on_conflict_end(self)
                if budget_end is not None and stats.conflicts >= budget_end:
                    return Status.UNKNOWN, None
                continue

            if budget_end is not None and stats.conflicts >= budget_end:
                return Status.UNKNOWN, None
            if deadline is not None:
                ticks += 1
                if ticks & 63 == 0 and time.monotonic() > deadline:
                    return Status.UNKNOWN, None
            if self.should_restart():
                lbd_queue.clear()
                stats.restarts += 1
                self.cancel_until(0)
            if not trail_lim and len(trail) != self._simp_trail:
                db.remove_satisfied(self)
                self._simp_trail = len(trail)
            if db.reduce_due(stats.conflicts):
                db.maybe_reduce(self)

            nxt = -1
            while len(trail_lim) < len(assumptions):
                p = assumptions[len(trail_lim)]
                if val[p] == 1:
                    trail_lim.append(len(trail))
                elif val[p] == -1:
                    failed = self._analyze_final(p)
                    # contradictory assumptions give a tautology, which proves nothing
                    if proof is not None and p not in failed:
                        proof.add(self.dimacs(failed))
                        self.proof_extra += 1
                    return Status.UNSAT, failed
                else:
                    nxt = p
                    break
            if nxt < 0:
                nxt = self.pick_branch()
                if nxt < 0:
                    return Status.SAT, None
                stats.decisions += 1
            self.new_decision(nxt)

    # -- residual ------------------------------------------------------------

    def residual(self) -> Formula:
        """Problem clauses simplified by the root-level assignment.

        Root-level literals are kept as unit clauses so the residual has
        exactly the models of the original formula.
        """
        val, level = self.val, self.level
        units = [l for l in self.trail if level[l >> 1] == 0]
        clauses = [(to_dimacs_lit(l),) for l in units]
        for clause in self.formula.clauses:
            lits = [to_internal(l) for l in clause]
            if any(val[l] == 1 for l in lits):
                continue
            clauses.append(tuple(to_dimacs_lit(l) for l in lits if val[l] == 0))
        return Formula(self.num_vars, tuple(clauses))


def solve(formula: Formula, budget: Budget | int | None = None, config: StrategyConfig | None = None,
          assumptions: Sequence[int] = (), proof: ProofLog | None = None,
          monitor: SolverMonitor | None = None) -> SolveOutcome:
    """One-shot solve of ``formula``."""
    if isinstance(budget, Budget):
        budget = budget.max_conflicts
    return Solver(formula, config, proof, monitor).solve(assumptions, budget)
