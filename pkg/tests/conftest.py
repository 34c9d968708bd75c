import io

import pytest

from alorusat.clausedb import Clause, ClauseDatabase
from alorusat.config import StrategyConfig
from alorusat.proof import ProofLog
from alorusat.solver import Stats


class FakeState:
    """Minimal stand-in for the solver as seen by the clause database."""

    def __init__(self, conflicts=0, locked=()):
        self.stats = Stats(conflicts=conflicts)
        self.locked_ids = {id(c) for c in locked}
        self.satisfied_ids = set()

    def locked(self, c):
        return id(c) in self.locked_ids

    def root_satisfied(self, c):
        return id(c) in self.satisfied_ids

    def dimacs(self, lits):
        return [(l >> 1) + 1 if not l & 1 else -((l >> 1) + 1) for l in lits]


def make_learnts(db, lbds, activities=None, length=3):
    """Put learnt clauses with the given stored LBDs straight into the local pool."""
    out = []
    for i, lbd in enumerate(lbds):
        c = Clause([2 * j for j in range(length)], True, db.new_uid())
        c.lbd = lbd
        c.activity = activities[i] if activities else float(i)
        db.local.append(c)
        out.append(c)
    return out


@pytest.fixture
def fake_state():
    return FakeState()


@pytest.fixture
def proof_buffer():
    buf = io.StringIO()
    return buf, ProofLog(buf)


@pytest.fixture
def new_db():
    def make(**changes):
        return ClauseDatabase(StrategyConfig(**changes))
    return make


# one line per acceptance criterion, printed after the run
ACCEPTANCE_RESULTS: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_RESULTS:
            terminalreporter.write_line(line)
