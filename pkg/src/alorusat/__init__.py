"""CDCL SAT solver with switchable learnt-clause retention strategies."""

from .cnf import DimacsError, Formula, parse_dimacs, read_dimacs, to_dimacs
from .config import LBD_SENTINEL, Reduction, StrategyConfig, Tiers
from .proof import DrupResult, ProofLog, check_drup
from .solver import Budget, SolveOutcome, Solver, Stats, Status, solve

__all__ = [
    "Budget", "DimacsError", "DrupResult", "Formula", "LBD_SENTINEL", "ProofLog",
    "Reduction", "SolveOutcome", "Solver", "Stats", "Status", "StrategyConfig", "Tiers",
    "check_drup", "parse_dimacs", "read_dimacs", "solve", "to_dimacs",
]
