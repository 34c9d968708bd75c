"""Instrumentation hooks.

Subclass :class:`SolverMonitor` and pass it to the solver to observe internal
events.  The base class does nothing, so subclasses override only what they
need.  Hooks must not mutate solver state.
"""


class SolverMonitor:
    def on_learnt(self, clause, actual_lbd: int) -> None:
        pass

    def on_lbd_update(self, clause, level) -> None:
        pass

    def on_reduction(self, kind: str, candidates, removed, **info) -> None:
        pass

    def on_demote(self, moved) -> None:
        pass

    def on_halving(self, size_before: int, target: int, removed: int) -> None:
        pass

    def on_conflict_end(self, solver) -> None:
        pass

    def on_propagate_end(self, solver) -> None:
        pass
