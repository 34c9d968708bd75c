"""Recursive splitting on top of budgeted solves.

Each node first spends a short conflict budget on its subproblem.  An
undecided node splits on one variable and recurses on both polarities; at
the depth cap the node gets the long leaf budget instead.  Subproblems are
assumption sets on one shared :class:`~alorusat.solver.Solver`, so the
problem clauses are never copied and learnt clauses carry across branches.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cnf import Formula
from .config import StrategyConfig
from .proof import ProofLog
from .solver import SolveOutcome, Solver, Status


@dataclass
class SplitContext:
    level: int = 0
    assumption_path: list[int] = field(default_factory=list)
    budget_probe: int = 500
    budget_leaf: int = 2_000_000
    depth_cap: int = 10
    # instrumentation, shared by every node of one tree
    trace: "SplitTrace" = field(default_factory=lambda: SplitTrace())

    @classmethod
    def from_config(cls, config: StrategyConfig) -> "SplitContext":
        return cls(budget_probe=config.split_probe_conflicts,
                   budget_leaf=config.split_leaf_conflicts,
                   depth_cap=config.split_depth_cap)

    def child(self, lit: int) -> "SplitContext":
        return SplitContext(self.level + 1, self.assumption_path + [lit], self.budget_probe,
                            self.budget_leaf, self.depth_cap, self.trace)


@dataclass
class SplitTrace:
    nodes: int = 0
    leaves: int = 0
    max_level: int = 0
    branches: list[tuple[int, ...]] = field(default_factory=list)
    problem_clause_counts: set[int] = field(default_factory=set)


def get_branch_variable(solver: Solver) -> int:
    """Highest-activity variable left unassigned at the end of the probe (DIMACS index).

    Ties go to the lowest index.  Returns 0 when nothing is left to branch on.
    """
    act = solver.activity
    best = -1
    for v in solver.branch_candidates:
        if best < 0 or act[v] > act[best] or (act[v] == act[best] and v < best):
            best = v
    return best + 1


def split_solve(formula: Formula | Solver, ctx: SplitContext | None = None,
                config: StrategyConfig | None = None, proof: ProofLog | None = None,
                monitor=None) -> SolveOutcome:
    if isinstance(formula, Solver):
        solver = formula
    else:
        solver = Solver(formula, config, proof, monitor)
    if ctx is None:
        ctx = SplitContext.from_config(solver.config)
    outcome = _split(solver, ctx)
    if solver.proof is not None:
        solver.proof.flush()
    return outcome


def _split(solver: Solver, ctx: SplitContext) -> SolveOutcome:
    trace = ctx.trace
    trace.nodes += 1
    trace.max_level = max(trace.max_level, ctx.level)
    trace.problem_clause_counts.add(len(solver.db.problem))
    if ctx.level > ctx.depth_cap or len(ctx.assumption_path) != ctx.level:
        raise AssertionError(f"split depth invariant broken at level {ctx.level}")

    if ctx.level >= ctx.depth_cap:
        trace.leaves += 1
        return solver.solve(ctx.assumption_path, ctx.budget_leaf)

    probe = solver.solve(ctx.assumption_path, ctx.budget_probe)
    if probe.status is not Status.UNKNOWN:
        return probe
    var = get_branch_variable(solver)
    if var == 0:
        trace.leaves += 1
        return solver.solve(ctx.assumption_path, ctx.budget_leaf)

    trace.branches.append((var, -var))
    unknown = False
    for lit in (var, -var):
        sub = _split(solver, ctx.child(lit))
        if sub.status is Status.SAT:
            return sub
        if sub.status is Status.UNSAT and not solver.ok:
            # refuted outright, not just under this branch's assumptions
            return sub
        if sub.status is Status.UNKNOWN:
            unknown = True
    if unknown:
        return SolveOutcome(Status.UNKNOWN, residual=solver.residual(), stats=solver.stats)

    # both polarities refuted: the negated path follows by unit propagation from the two children
    negated = [-l for l in ctx.assumption_path]
    if solver.proof is not None:
        solver.proof.add(negated)
        solver.proof_extra += 1
    if not negated:
        solver.ok = False
    return SolveOutcome(Status.UNSAT, failed_assumptions=negated, stats=solver.stats)
