import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from alorusat.cnf import DimacsError, Formula, parse_dimacs, to_dimacs
from alorusat.testkit import brute_force_sat


def test_parse_basic():
    f = parse_dimacs("p cnf 2 2\n1 2 0\n-1 0\n")
    assert f == Formula(2, ((1, 2), (-1,)))


def test_tautology_dropped():
    f = parse_dimacs("p cnf 1 1\n1 -1 0\n")
    assert f.clauses == ()
    assert f.stats.tautologies == 1


def test_duplicate_literal_removed():
    f = parse_dimacs("p cnf 3 1\n2 2 3 0\n")
    assert f.clauses == ((2, 3),)
    assert f.stats.duplicate_literals == 1


def test_comments_multiline_clauses_and_bytes():
    text = b"c hello\nc world\np cnf 3 2\n1 -2\n 3 0 -1\n0\n"
    assert parse_dimacs(text).clauses == ((1, -2, 3), (-1,))


def test_satlib_percent_trailer():
    assert parse_dimacs("p cnf 2 1\n1 2 0\n%\n0\n\n").clauses == ((1, 2),)


def test_empty_input_is_empty_formula():
    assert parse_dimacs("") == Formula(0, ())
    assert parse_dimacs("c only comments\n") == Formula(0, ())


def test_header_count_is_advisory(caplog):
    f = parse_dimacs("p cnf 2 5\n1 2 0\n")
    assert f.clauses == ((1, 2),)
    assert "declares 5" in caplog.text


@pytest.mark.parametrize("text, line", [
    ("p cnf x 1\n1 0\n", 1),
    ("p dnf 1 1\n1 0\n", 1),
    ("p cnf 2 1\n1 3 0\n", 2),
    ("p cnf 2 1\n1 2 0\n-1\n", 3),
    ("p cnf 0 1\n1 0\n", 2),
    ("1 2 0\n", 1),
    ("p cnf 2 1\n1 a 0\n", 2),
    ("p cnf 2 1\np cnf 2 1\n", 2),
])
def test_errors_carry_line_numbers(text, line):
    with pytest.raises(DimacsError) as info:
        parse_dimacs(text)
    assert info.value.line == line


def test_dimacs_output_is_exact():
    f = Formula(3, ((1, -2), (3,)))
    assert to_dimacs(f) == "p cnf 3 2\n1 -2 0\n3 0\n"


clause_st = st.lists(st.integers(1, 6).flatmap(lambda v: st.sampled_from([v, -v])), min_size=1, max_size=5)


@given(st.lists(clause_st, max_size=12))
@settings(max_examples=200, deadline=None)
def test_round_trip(raw):
    f = Formula.from_clauses(6, raw)
    assert parse_dimacs(to_dimacs(f)) == f


def test_normalization_preserves_satisfiability():
    rng = random.Random(5)
    for _ in range(200):
        n = rng.randint(1, 8)
        raw = [[rng.choice([1, -1]) * rng.randint(1, n) for _ in range(rng.randint(1, 4))]
               for _ in range(rng.randint(0, 3 * n))]
        text = f"p cnf {n} {len(raw)}\n" + "".join(" ".join(map(str, c)) + " 0\n" for c in raw)
        parsed = parse_dimacs(text)
        # evaluate the raw clause list directly over every assignment
        raw_sat = any(all(any(bits[abs(l) - 1] == (l > 0) for l in c) for c in raw)
                      for bits in itertools.product([False, True], repeat=n))
        assert brute_force_sat(parsed)[0] == raw_sat
