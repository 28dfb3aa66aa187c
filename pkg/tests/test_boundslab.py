"""Exhaustive searches, pumping agreement, and disjointness scanning."""

from fractions import Fraction

import pytest

from promata import (
    EPSILON,
    FAILS,
    SOLVES,
    OneWayDfa,
    OneWayNfa,
    PromiseProblem,
    ResourceCapError,
    SearchSpec,
    disjointness_check,
    dfa_to_nfa,
    evenodd_dfa,
    evenodd_problem,
    min_dfa_size,
    min_unary_dfa_size,
    min_unary_nfa_size,
    parity_problem,
    promise_check,
    pumping_check,
    trios_problem,
    up_problem,
)
from promata.machines import machine_accepts


def test_search_spec_validation():
    problem = evenodd_problem(1)
    with pytest.raises(ValueError):
        SearchSpec("moore", 4, problem, 10)
    with pytest.raises(ValueError):
        SearchSpec("unary-dfa", 40, problem, 10)
    with pytest.raises(ValueError):
        SearchSpec("dfa", 8, problem, 10)
    with pytest.raises(ValueError):
        SearchSpec("unary-nfa", 4, trios_problem(1, 1), 10)


def test_unary_dfa_search_finds_the_counter():
    spec = SearchSpec("unary-dfa", 18, evenodd_problem(1), 32)
    result = min_unary_dfa_size(spec)
    assert result.found
    assert result.size == 4
    assert promise_check(result.witness, evenodd_problem(1), 32).verdict == SOLVES


def test_unary_dfa_search_witness_is_minimal():
    spec = SearchSpec("unary-dfa", 18, evenodd_problem(2), 64)
    result = min_unary_dfa_size(spec)
    assert result.size == 8
    # No smaller machine exists: rebuilding with a tighter cap exhausts.
    tight = SearchSpec("unary-dfa", 7, evenodd_problem(2), 64)
    assert min_unary_dfa_size(tight).size is None


def test_unary_dfa_search_two_point_problem():
    p = Fraction(1, 2)
    spec = SearchSpec("unary-dfa", 18, up_problem(p), 8)
    result = min_unary_dfa_size(spec)
    # Accept a^0, reject a^2: one accepting state with no loop suffices.
    assert result.size == 1


def test_unary_dfa_search_parity():
    spec = SearchSpec("unary-dfa", 18, parity_problem(lambda n: True), 12)
    result = min_unary_dfa_size(spec)
    assert result.size == 2


def test_unary_nfa_search_needs_full_period():
    spec = SearchSpec("unary-nfa", 4, evenodd_problem(1), 24)
    result = min_unary_nfa_size(spec)
    assert result.found
    assert result.size == 4
    nfa = result.witness
    assert isinstance(nfa, OneWayNfa)
    for n in range(25):
        promise = n % 2 == 0
        if promise:
            assert machine_accepts(nfa, "a" * n) == (n % 4 == 0), n
    # Nondeterminism buys nothing on this problem.
    dfa_spec = SearchSpec("unary-dfa", 18, evenodd_problem(1), 24)
    assert min_unary_dfa_size(dfa_spec).size == result.size


def test_searches_are_deterministic():
    """Two identical searches return the same size and the same witness."""
    spec = SearchSpec("unary-nfa", 4, evenodd_problem(1), 24)
    first = min_unary_nfa_size(spec)
    second = min_unary_nfa_size(spec)
    assert first.size == second.size
    assert first.witness == second.witness
    assert first.candidates_checked == second.candidates_checked
    dspec = SearchSpec("dfa", 2, trios_problem(1, 1), 4)
    assert min_dfa_size(dspec).witness == min_dfa_size(dspec).witness


def test_unary_nfa_search_parity_needs_two():
    spec = SearchSpec("unary-nfa", 4, parity_problem(lambda n: True), 12)
    result = min_unary_nfa_size(spec)
    assert result.size == 2


def test_dfa_search_exhausts_cleanly():
    spec = SearchSpec("dfa", 3, trios_problem(2, 1), 7)
    result = min_dfa_size(spec)
    assert result.size is None
    assert not result.found
    assert result.witness is None
    assert result.candidates_checked > 0


def test_dfa_search_finds_trivial_machines():
    spec = SearchSpec("dfa", 2, trios_problem(1, 1), 4)
    result = min_dfa_size(spec)
    # Accept #001, reject #101: the second letter decides, two states are
    # enough with partial transitions.
    assert result.size == 2
    assert promise_check(result.witness, trios_problem(1, 1), 4).verdict == SOLVES


def test_dfa_search_work_cap():
    spec = SearchSpec("dfa", 4, trios_problem(1, 1), 4)
    with pytest.raises(ResourceCapError):
        min_dfa_size(spec, work_cap=1000)


def test_yes_only_empty_word_problem():
    problem = PromiseProblem(
        alphabet=("a",),
        yes_member=lambda w: w == "",
        no_member=lambda w: len(w) == 1,
    )
    spec = SearchSpec("unary-dfa", 18, problem, 4)
    result = min_unary_dfa_size(spec)
    assert result.size == 1


# --- pumping ---


def test_pumping_accepts_the_counter():
    report = pumping_check(evenodd_dfa(1), 4, (1, 2))
    assert report.verdict == SOLVES
    assert report.measured["pump"] == 24


def test_pumping_rejects_m_below_state_count():
    with pytest.raises(ValueError):
        pumping_check(evenodd_dfa(1), 3, (1,))


def test_pumping_m_cap():
    with pytest.raises(ResourceCapError):
        pumping_check(evenodd_dfa(1), 13, (1,))


def test_pumping_needs_unary_machine():
    dfa = OneWayDfa(
        state_count=1,
        alphabet=("a", "b"),
        initial=0,
        transitions={(0, "a"): 0, (0, "b"): 0},
        accepting=frozenset({0}),
    )
    with pytest.raises(ValueError):
        pumping_check(dfa, 1, (1,))


def test_pumping_on_partial_machines():
    # A 3-state chain that sticks after two letters: the pumped run sticks
    # at the same depth, so outcomes agree.
    chain = OneWayDfa(
        state_count=3,
        alphabet=("a",),
        initial=0,
        transitions={(0, "a"): 1, (1, "a"): 2},
        accepting=frozenset({2}),
    )
    report = pumping_check(chain, 3, (1, 2))
    assert report.verdict == SOLVES


def test_pumping_nfa_subsets_agree():
    nfa = dfa_to_nfa(evenodd_dfa(1))
    report = pumping_check(nfa, 4, (1,))
    assert report.verdict == SOLVES


def test_pumping_nfa_subset_comparison_is_strict():
    """The nondeterministic check compares reachable subsets, which is
    stricter than acceptance agreement. With 0 -> {1}, 1 -> {2},
    2 -> {0, 2} the subsets from {0} are {0}, {1}, {2}, {0,2}, then
    {0,1,2} forever: at m = 3 the pumped subset has grown, so the check
    reports the mismatch, while from m = 4 the orbit has stabilized."""
    nfa = OneWayNfa(
        state_count=3,
        alphabet=("a",),
        initial=0,
        transitions=frozenset(
            {(0, "a", 1), (1, "a", 2), (2, "a", 0), (2, "a", 2)}
        ),
        accepting=frozenset({0}),
    )
    report = pumping_check(nfa, 3, (1, 2))
    assert report.verdict == FAILS
    assert report.counterexample is not None
    report = pumping_check(nfa, 4, (1, 2))
    assert report.verdict == SOLVES


def test_pumping_nfa_state_cap():
    big = OneWayNfa(
        state_count=25,
        alphabet=("a",),
        initial=0,
        transitions=frozenset((q, "a", (q + 1) % 25) for q in range(25)),
        accepting=frozenset({0}),
    )
    with pytest.raises(ResourceCapError):
        pumping_check(big, 25, (1,))


# --- disjointness ---


def test_disjointness_passes_on_real_problems():
    assert disjointness_check(evenodd_problem(2), 64).verdict == SOLVES
    assert disjointness_check(trios_problem(1, 2), 8).verdict == SOLVES


def test_disjointness_catches_overlap():
    overlapping = PromiseProblem(
        alphabet=("a",),
        yes_member=lambda w: w == "",
        no_member=lambda w: w == "",
    )
    report = disjointness_check(overlapping, 3)
    assert report.verdict == FAILS
    assert report.counterexample[0] == ""


def test_disjointness_work_cap():
    with pytest.raises(ResourceCapError):
        disjointness_check(trios_problem(1, 1), 30, work_cap=100)
