import io
import itertools

import pytest

from alorusat.clausedb import Clause
from alorusat.cnf import Formula, to_internal
from alorusat.config import LBD_SENTINEL, Reduction, StrategyConfig, Tiers
from alorusat.monitor import SolverMonitor
from alorusat.proof import ProofLog, check_drup
from alorusat.solver import Budget, Solver, Status, solve
from alorusat.testkit import RandomCnfSpec, acceptance_corpus, brute_force_sat, evaluate, gen_random_cnf

TINY = dict(first_reduce_at=4, reduce_interval_increment=2, approx_gate_conflicts=10,
            stage_switch_conflicts=20, local_lower=3, local_upper_trigger=6, local_upper_hard=8,
            demote_batch=2)
SCALED = dict(first_reduce_at=30, reduce_interval_increment=5, approx_gate_conflicts=60,
              stage_switch_conflicts=150, local_lower=9, local_upper_trigger=18, local_upper_hard=24,
              demote_batch=5)


def F(n, *clauses):
    return Formula.from_clauses(n, clauses)


def lit(x):
    return to_internal(x)


def test_contradictory_units_unsat():
    assert solve(F(1, [1], [-1]), Budget()).status is Status.UNSAT


def test_resolution_forces_variable_two():
    out = solve(F(2, [1, 2], [-1, 2]))
    assert out.status is Status.SAT and out.model[1] is True


def test_empty_formula_sat():
    out = solve(Formula(0, ()))
    assert out.is_sat and out.model == []


def test_empty_clause_unsat():
    assert solve(Formula(2, ((1, 2), ()))).is_unsat


def test_random_20_var_instance_matches_oracle():
    f = gen_random_cnf(RandomCnfSpec(20, 91, 3, seed=4))
    assert solve(f).is_sat == brute_force_sat(f)[0]


def test_budget_500_gives_unknown_on_hard_instance():
    f = gen_random_cnf(RandomCnfSpec(250, 1065, 3, seed=7))
    out = solve(f, Budget(500))
    assert out.status is Status.UNKNOWN
    assert out.stats.conflicts == 500
    assert out.residual is not None and out.residual.num_vars == 250


def test_unknown_residual_is_equivalent():
    f = gen_random_cnf(RandomCnfSpec(18, 90, 3, seed=12))
    out = solve(f, Budget(3))
    assert out.status is Status.UNKNOWN
    sat, _ = brute_force_sat(out.residual)
    assert sat == brute_force_sat(f)[0]
    for bits in itertools.islice(itertools.product([False, True], repeat=18), 0, 1 << 18, 997):
        assert evaluate(out.residual, bits) == evaluate(f, bits)


# -- propagate ------------------------------------------------------------------

def test_propagate_unit_chain():
    s = Solver(F(3, [-1, 2], [-2, 3]))
    assert s.propagate() is None
    s.new_decision(lit(1))
    assert s.propagate() is None
    assert [s.lit_value(x) for x in (1, 2, 3)] == [True, True, True]
    assert s.trail == [lit(1), lit(2), lit(3)]


def test_propagate_immediate_conflict():
    s = Solver(F(2, [-1, 2], [-1, -2]))
    s.new_decision(lit(1))
    confl = s.propagate()
    assert confl is not None
    assert sorted(s.dimacs(confl.lits)) in ([-1, 2], [-2, -1])


def test_propagate_nothing():
    s = Solver(Formula(3, ()))
    assert s.propagate() is None
    assert s.stats.propagations == 0


# -- analyze ------------------------------------------------------------------

def test_analyze_learns_unit():
    s = Solver(F(3, [-1, 2], [-1, 3], [-2, -3]))
    s.new_decision(lit(1))
    confl = s.propagate()
    learnt, bt, lbd = s.analyze(confl)
    assert s.dimacs(learnt) == [-1]
    assert bt == 0 and lbd == 1


def test_analyze_refreshes_sentinel_reason():
    s = Solver(F(3, [-1, 3], [-2, -3]))
    learnt = Clause([lit(2), lit(-1)], True, s.db.new_uid())
    s.db.add_learnt(learnt, 1)
    s._attach(learnt)
    assert learnt.lbd == LBD_SENTINEL
    s.new_decision(lit(1))
    confl = s.propagate()
    assert s.reason[1] is learnt
    s.analyze(confl)
    assert learnt.lbd == 1 and learnt.used


def test_backjump_to_second_highest_level():
    s = Solver(F(4, [-1, -2, 3], [-1, -2, -3], [4, 1]))
    s.new_decision(lit(1))
    assert s.propagate() is None
    s.new_decision(lit(4))
    assert s.propagate() is None
    s.new_decision(lit(2))
    confl = s.propagate()
    learnt, bt, lbd = s.analyze(confl)
    assert sorted(s.dimacs(learnt)) == [-2, -1]
    assert s.dimacs(learnt)[0] == -2
    assert bt == 1 and lbd == 2


def test_compute_lbd_requires_assignment():
    s = Solver(F(2, [1, 2]))
    with pytest.raises(AssertionError):
        s.compute_lbd([lit(1), lit(2)])


# -- pick_branch / restarts -----------------------------------------------------

def test_pick_branch_fresh_solver():
    s = Solver(F(5, [1, 2, 3]))
    assert s.pick_branch() == lit(-1)


def test_pick_branch_prefers_bumped():
    s = Solver(F(8, [1, 2, 3]))
    s._bump_var(6)
    assert s.dimacs([s.pick_branch()]) == [-7]


def test_pick_branch_when_all_assigned():
    s = Solver(F(2, [1], [2]))
    s.propagate()
    assert s.pick_branch() == -1


def test_phase_saving():
    s = Solver(F(3, [1, 2, 3]))
    s.new_decision(lit(2))
    s.cancel_until(0)
    s._bump_var(1)
    assert s.dimacs([s.pick_branch()]) == [2]


def restart_solver(recent, global_avg, window=50, count=1000):
    s = Solver(Formula(1, ()))
    s.lbd_queue.extend(recent)
    s.sum_lbd, s.lbd_count = global_avg * count, count
    return s


def test_no_restart_before_window_full():
    assert not restart_solver([10] * 49, 2).should_restart()


def test_restart_when_recent_lbd_high():
    assert restart_solver([10] * 50, 2).should_restart()


def test_no_restart_when_recent_lbd_low():
    assert not restart_solver([1] * 50, 2).should_restart()


# -- invariants ------------------------------------------------------------------

class InvariantMonitor(SolverMonitor):
    def __init__(self):
        self.checks = 0
        self.last_stats = None

    def on_propagate_end(self, s):
        val, level, reason = s.val, s.level, s.reason
        seen_vars = set()
        for l in s.trail:
            assert l >> 1 not in seen_vars
            seen_vars.add(l >> 1)
            r = reason[l >> 1]
            if r is not None and level[l >> 1] > 0:
                assert r.lits[0] == l
                assert all(val[o] == -1 and level[o >> 1] <= level[l >> 1] for o in r.lits[1:])
        assert all(level[l >> 1] <= s.decision_level() for l in s.trail)
        if s.qhead == len(s.trail):
            conflicting = any(all(val[l] == -1 for l in c.lits) for c in s.db.problem + s.db.learnts())
            if not conflicting:
                for c in s.db.problem + s.db.learnts():
                    if not c.removed:
                        assert not (val[c.lits[0]] == -1 and val[c.lits[1]] == -1), c
        self.checks += 1

    def on_conflict_end(self, s):
        now = s.stats.as_dict()
        if self.last_stats:
            assert all(now[k] >= v for k, v in self.last_stats.items())
        self.last_stats = now
        lim = s.trail_lim
        assert all(s.level[l >> 1] <= len(lim) for l in s.trail)
        core, local = set(map(id, s.db.core)), set(map(id, s.db.local))
        assert not core & local


@pytest.mark.parametrize("tiers", [Tiers.GLUCOSE, Tiers.DYNAMIC])
def test_invariants_hold_during_search(tiers):
    cfg = StrategyConfig(tiers=tiers, **SCALED)
    for seed in range(6):
        f = gen_random_cnf(RandomCnfSpec(40, 175, 3, seed=seed))
        mon = InvariantMonitor()
        out = Solver(f, cfg, monitor=mon).solve()
        assert mon.checks > 0
        if out.is_sat:
            assert evaluate(f, out.model)


def test_determinism():
    f = gen_random_cnf(RandomCnfSpec(60, 260, 3, seed=21))
    cfg = StrategyConfig(**SCALED)
    runs = []
    for _ in range(2):
        buf = io.StringIO()
        out = solve(f, config=cfg, proof=ProofLog(buf))
        runs.append((out.stats.as_dict(), buf.getvalue(), out.status))
    assert runs[0] == runs[1]


def test_assumptions_and_reuse():
    s = Solver(F(3, [1, 2], [-1, 3]))
    out = s.solve([-2, -3])
    assert out.is_unsat
    assert set(out.failed_assumptions) <= {2, 3, 1, -1}
    again = s.solve()
    assert again.is_sat and again.model[0] is False or again.model[2] is True
    assert s.solve([1]).model[2] is True


def test_assumption_out_of_range():
    with pytest.raises(ValueError):
        Solver(F(2, [1, 2])).solve([3])


@pytest.fixture(scope="module")
def matrix_corpus():
    corpus = acceptance_corpus(48, sizes=(20, 22), ratios=(4.26, 5.0), base_seed=77)
    return [(name, f, brute_force_sat(f)[0]) for name, f in corpus]


@pytest.mark.parametrize("aloru", [True, False])
@pytest.mark.parametrize("reduction", list(Reduction))
@pytest.mark.parametrize("tiers", list(Tiers))
def test_strategy_matrix_against_oracle_with_proofs(matrix_corpus, aloru, reduction, tiers):
    cfg = StrategyConfig(aloru=aloru, reduction=reduction, tiers=tiers, **TINY)
    reductions = 0
    for name, f, expected in matrix_corpus:
        buf = io.StringIO()
        proof = ProofLog(buf)
        s = Solver(f, cfg, proof)
        out = s.solve()
        reductions += out.stats.reductions
        assert out.is_sat == expected, name
        # every learnt clause and every deletion is on the log
        assert proof.added == out.stats.learnt_added + s.proof_extra
        assert proof.deleted == out.stats.learnt_removed
        if out.is_unsat:
            assert check_drup(f, buf.getvalue()).verified, name
        else:
            assert evaluate(f, out.model)
    assert reductions > 0


def test_aloru_sentinel_until_first_use():
    class Watch(SolverMonitor):
        def on_reduction(self, kind, candidates, removed, **info):
            for c in candidates:
                assert c.used or c.lbd == LBD_SENTINEL

    f = gen_random_cnf(RandomCnfSpec(50, 215, 3, seed=5))
    Solver(f, StrategyConfig(aloru=True, **SCALED), monitor=Watch()).solve()
