"""Learnt-clause storage and retention policies.

Four policies live here and are switched independently by
:class:`~alorusat.config.StrategyConfig`:

* ALORU: a fresh learnt clause is stored with the sentinel LBD
  ``0x3fffffff`` and only gets a real LBD once conflict analysis uses it,
  so clauses never used since they were learnt are the first to go.
* exact reduction: sort the removable learnt clauses worst-first and drop
  the worst half (Glucose schedule).
* approximation reduction: find the k-th smallest retention score with
  quickselect and drop k clauses scoring at most that pivot, no sorting.
* dynamic core/local tiers: low-LBD clauses go to a core pool whose LBD cap
  rises from 2 to 5 at the stage switch; the local pool is halved by
  activity whenever it reaches its trigger size, after up to
  ``demote_batch`` core clauses with LBD >= 3 are moved down (stage two).

The database never touches the trail.  It asks its owning solver
(``state``) whether a clause is locked and for variable levels.
"""

from __future__ import annotations

import enum
import random
from typing import TYPE_CHECKING, Callable, Sequence

from .config import LBD_SENTINEL, Reduction, StrategyConfig, Tiers
from .selection import select_kth

if TYPE_CHECKING:
    from .proof import ProofLog


class Tier(enum.Enum):
    PROBLEM = "problem"
    CORE = "core"
    LOCAL = "local"


class Clause:
    __slots__ = ("lits", "learnt", "lbd", "activity", "tier", "removed", "uid", "used")

    def __init__(self, lits: list[int], learnt: bool = False, uid: int = 0):
        self.lits = lits
        self.learnt = learnt
        self.lbd = 0
        self.activity = 0.0
        self.tier = Tier.LOCAL if learnt else Tier.PROBLEM
        self.removed = False
        self.uid = uid
        # set by on_used_in_conflict; instrumentation only
        self.used = False

    def __len__(self) -> int:
        return len(self.lits)

    def __repr__(self) -> str:
        kind = self.tier.value
        return f"Clause({self.lits!r}, {kind}, lbd={self.lbd}, act={self.activity:.3g})"


class Stage(enum.IntEnum):
    ONE = 1
    TWO = 2


def compute_lbd(lits: Sequence[int], level: Sequence[int]) -> int:
    """Number of distinct decision levels among internal literals ``lits``."""
    return len({level[l >> 1] for l in lits})


class ClauseDatabase:
    def __init__(self, config: StrategyConfig, proof: "ProofLog | None" = None, monitor=None):
        self.config = config
        self.proof = proof
        self.monitor = monitor
        self.problem: list[Clause] = []
        self.core: list[Clause] = []
        self.local: list[Clause] = []
        self.stage = Stage.ONE
        self.next_reduce_at = config.first_reduce_at
        self.rng = random.Random(config.seed)
        self.cla_inc = 1.0
        self.cla_decay = config.clause_decay
        self.approx_shortfall = 0
        self._uid = 0

    # -- storage -----------------------------------------------------------

    def new_uid(self) -> int:
        self._uid += 1
        return self._uid

    def add_problem(self, clause: Clause) -> None:
        clause.tier = Tier.PROBLEM
        self.problem.append(clause)

    def stage_cap(self) -> int:
        if self.stage is Stage.ONE:
            return self.config.core_lbd_cap_stage1
        return self.config.core_lbd_cap_stage2

    def update_stage(self, conflicts: int) -> Stage:
        # one-way: TWO is never left within a solver's lifetime
        if self.stage is Stage.ONE and conflicts >= self.config.stage_switch_conflicts:
            self.stage = Stage.TWO
        return self.stage

    def add_learnt(self, clause: Clause, actual_lbd: int) -> Clause:
        cfg = self.config
        clause.learnt = True
        clause.lbd = cfg.lbd_sentinel if cfg.aloru else actual_lbd
        if cfg.tiers is Tiers.DYNAMIC and actual_lbd <= self.stage_cap():
            clause.tier = Tier.CORE
            self.core.append(clause)
        else:
            clause.tier = Tier.LOCAL
            self.local.append(clause)
        self.bump_activity(clause)
        if self.monitor is not None:
            self.monitor.on_learnt(clause, actual_lbd)
        return clause

    def on_used_in_conflict(self, clause: Clause, level: Sequence[int]) -> int:
        clause.lbd = compute_lbd(clause.lits, level)
        clause.used = True
        if self.monitor is not None:
            self.monitor.on_lbd_update(clause, level)
        return clause.lbd

    def bump_activity(self, clause: Clause) -> None:
        clause.activity += self.cla_inc
        if clause.activity > 1e20:
            for c in self.core:
                c.activity *= 1e-20
            for c in self.local:
                c.activity *= 1e-20
            self.cla_inc *= 1e-20

    def decay_activity(self) -> None:
        self.cla_inc /= self.cla_decay

    @property
    def num_learnts(self) -> int:
        return len(self.core) + len(self.local)

    def learnts(self) -> list[Clause]:
        return self.core + self.local

    def _remove(self, clauses: Sequence[Clause], state) -> None:
        proof = self.proof
        for c in clauses:
            c.removed = True
            if proof is not None:
                proof.delete(state.dimacs(c.lits))
        state.stats.learnt_removed += len(clauses)

    def _drop_from_pools(self) -> None:
        self.core = [c for c in self.core if not c.removed]
        self.local = [c for c in self.local if not c.removed]

    def removable(self, pool: Sequence[Clause], state) -> list[Clause]:
        """Learnt clauses of ``pool`` that may be deleted: longer than two, not a reason."""
        locked = state.locked
        return [c for c in pool if len(c.lits) > 2 and not locked(c)]

    # -- reductions --------------------------------------------------------

    def glucose_score(self, clause: Clause) -> int:
        """Retention score for the single Glucose pool: lower is deleted first.

        Sentinel clauses score 0, so never-used clauses go before any used one.
        """
        return LBD_SENTINEL - clause.lbd

    @staticmethod
    def activity_score(clause: Clause) -> float:
        return clause.activity

    def reduce_approx(self, candidates: Sequence[Clause], k: int, state,
                      score: Callable[[Clause], float] | None = None) -> int:
        """Delete ``k`` clauses whose score is at most the k-th smallest score.

        No sorting is done.  Clauses tied with the pivot are taken in
        candidate order until ``k`` are gone, so a clause tied with the pivot
        can survive while an equal one is deleted.
        """
        if score is None:
            score = self.glucose_score
        if k > len(candidates):
            self.approx_shortfall += k - len(candidates)
            k = len(candidates)
        if k <= 0:
            return 0
        scores = [score(c) for c in candidates]
        pivot = select_kth(scores[:], k, self.rng)
        doomed = [c for c, s in zip(candidates, scores) if s < pivot]
        for c, s in zip(candidates, scores):
            if len(doomed) == k:
                break
            if s == pivot:
                doomed.append(c)
        self._remove(doomed, state)
        self._drop_from_pools()
        if self.monitor is not None:
            self.monitor.on_reduction("approx", candidates, doomed, pivot=pivot, k=k)
        return len(doomed)

    @staticmethod
    def exact_order_key(clause: Clause) -> tuple:
        # worst first: high lbd (sentinel highest), then low activity
        return (-clause.lbd, clause.activity, clause.uid)

    def reduce_exact(self, state) -> int:
        candidates = self.removable(self.local, state)
        ranked = sorted(candidates, key=self.exact_order_key)
        doomed = ranked[: len(ranked) // 2]
        self._remove(doomed, state)
        self._drop_from_pools()
        if self.monitor is not None:
            self.monitor.on_reduction("exact", candidates, doomed)
        return len(doomed)

    def reduce_due(self, conflicts: int) -> bool:
        return self.config.tiers is Tiers.GLUCOSE and conflicts >= self.next_reduce_at

    def maybe_reduce(self, state) -> int:
        """Glucose-schedule reduction of the single learnt pool, if one is due."""
        stats = state.stats
        if not self.reduce_due(stats.conflicts):
            return 0
        cfg = self.config
        if cfg.reduction is Reduction.APPROX and stats.conflicts > cfg.approx_gate_conflicts:
            candidates = self.removable(self.local, state)
            removed = self.reduce_approx(candidates, len(candidates) // 2, state)
        else:
            removed = self.reduce_exact(state)
        stats.reductions += 1
        self.next_reduce_at += cfg.first_reduce_at + stats.reductions * cfg.reduce_interval_increment
        return removed

    def manage_tiers(self, state) -> int:
        """Move up to ``demote_batch`` core clauses with LBD >= 3 to local (stage two only)."""
        cfg = self.config
        if self.update_stage(state.stats.conflicts) is Stage.ONE:
            return 0
        eligible = [c for c in self.core if c.lbd >= cfg.demote_min_lbd]
        if not eligible:
            return 0
        eligible.sort(key=lambda c: (c.activity, c.uid))
        moved = eligible[: cfg.demote_batch]
        for c in moved:
            c.tier = Tier.LOCAL
        moved_ids = {id(c) for c in moved}
        self.core = [c for c in self.core if id(c) not in moved_ids]
        self.local.extend(moved)
        if self.monitor is not None:
            self.monitor.on_demote(moved)
        return len(moved)

    @staticmethod
    def local_order_key(clause: Clause) -> tuple:
        # smallest activity first, then higher lbd, then oldest
        return (clause.activity, -clause.lbd, clause.uid)

    def reduce_local(self, state) -> int:
        """Halve the local pool once it reaches ``local_upper_trigger``."""
        cfg = self.config
        size = len(self.local)
        if size < cfg.local_upper_trigger:
            return 0
        target = size // 2
        candidates = self.removable(self.local, state)
        if cfg.reduction is Reduction.APPROX and state.stats.conflicts > cfg.approx_gate_conflicts:
            removed = self.reduce_approx(candidates, target, state, self.activity_score)
        else:
            ranked = sorted(candidates, key=self.local_order_key)
            doomed = ranked[:target]
            self._remove(doomed, state)
            self._drop_from_pools()
            removed = len(doomed)
            if self.monitor is not None:
                self.monitor.on_reduction("local", candidates, doomed)
        state.stats.reductions += 1
        if self.monitor is not None:
            self.monitor.on_halving(size, target, removed)
        return removed

    def after_conflict(self, state) -> int:
        """Tier bookkeeping run once per conflict under the dynamic policy."""
        if self.config.tiers is not Tiers.DYNAMIC:
            return 0
        self.update_stage(state.stats.conflicts)
        if len(self.local) < self.config.local_upper_trigger:
            return 0
        self.manage_tiers(state)
        return self.reduce_local(state)

    def remove_satisfied(self, state) -> int:
        """Root-level cleanup: drop learnt clauses satisfied at level 0."""
        satisfied = state.root_satisfied
        locked = state.locked
        doomed = [c for c in self.core + self.local if satisfied(c) and not locked(c)]
        if doomed:
            self._remove(doomed, state)
            self._drop_from_pools()
        return len(doomed)
