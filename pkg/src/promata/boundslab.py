"""Exhaustive minimality searches and empirical structure checks.

The searches here are oracles: they find the true minimum state count for a
promise problem over a bounded instance set by enumerating machines in a
documented normal form, smallest first. Minimality is always relative to
the (max_length, machine-kind cap) pair in the search spec; every witness is
re-validated with the ordinary simulator before being returned.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .errors import ResourceCapError
from .machines import (
    EPSILON,
    FAILS,
    SOLVES,
    OneWayDfa,
    OneWayNfa,
    PromiseProblem,
    VerificationReport,
    promise_check,
)

KIND_UNARY_DFA = "unary-dfa"
KIND_DFA = "dfa"
KIND_UNARY_NFA = "unary-nfa"

_KIND_CAPS = {KIND_UNARY_DFA: 18, KIND_DFA: 4, KIND_UNARY_NFA: 4}


@dataclass(frozen=True)
class SearchSpec:
    """Parameters of one exhaustive search: what kind of machine, how many
    states at most, which problem, and how long the probed instances are."""

    machine_kind: str
    max_states: int
    problem: PromiseProblem
    max_length: int

    def __post_init__(self) -> None:
        cap = _KIND_CAPS.get(self.machine_kind)
        if cap is None:
            raise ValueError(f"unknown machine kind {self.machine_kind!r}")
        if not 1 <= self.max_states <= cap:
            raise ValueError(f"max_states for {self.machine_kind} must be in 1..{cap}")
        if self.machine_kind != KIND_DFA and len(self.problem.alphabet) != 1:
            raise ValueError(f"{self.machine_kind} search needs a one-symbol alphabet")
        if self.machine_kind == KIND_DFA and len(self.problem.alphabet) > 3:
            raise ValueError("general table search is capped at 3 alphabet symbols")
        if self.max_length < 0:
            raise ValueError("max_length must be nonnegative")


@dataclass(frozen=True)
class SearchResult:
    """Outcome of an exhaustive search. size None means the whole space up
    to max_states was enumerated and no machine solves the problem."""

    size: int | None
    witness: object
    candidates_checked: int

    @property
    def found(self) -> bool:
        return self.size is not None


def _lasso_dfa(size: int, loop_target: int | None, mask: int, sym: str) -> OneWayDfa:
    transitions = {(i, sym): i + 1 for i in range(size - 1)}
    if loop_target is not None:
        transitions[(size - 1, sym)] = loop_target
    accepting = frozenset(q for q in range(size) if mask >> q & 1)
    return OneWayDfa(
        state_count=size,
        alphabet=(sym,),
        initial=0,
        transitions=transitions,
        accepting=accepting,
    )


def _revalidated(spec: SearchSpec, witness, checked: int) -> SearchResult:
    report = promise_check(witness, spec.problem, spec.max_length)
    if report.verdict != SOLVES:
        raise AssertionError("search invariant broken: witness failed revalidation")
    return SearchResult(size=witness.state_count, witness=witness, candidates_checked=checked)


def min_unary_dfa_size(spec: SearchSpec) -> SearchResult:
    """Smallest deterministic one-way machine solving a unary promise problem.

    Normal form: renaming states by first visit turns any all-reachable
    partial unary machine into a chain 0 -> 1 -> ... -> s-1 whose last state
    either has no outgoing transition or loops back to some earlier state, so
    enumerating (chain length, loop target) families in ascending size covers
    every candidate. Within one family the accepting set is not looped over:
    each instance pins the bit of its final state (set for yes, clear for
    no), which decides all 2^s accepting sets at once and is equivalent to
    enumerating them. candidates_checked counts the families examined.
    """
    if spec.machine_kind != KIND_UNARY_DFA:
        raise ValueError("spec.machine_kind must be 'unary-dfa'")
    sym = spec.problem.alphabet[0]
    lengths = [
        (len(word), cls) for word, cls in spec.problem.enumerate_instances(spec.max_length)
    ]
    checked = 0
    for size in range(1, spec.max_states + 1):
        for loop_target in (None, *range(size)):
            checked += 1
            need_one = 0
            need_zero = 0
            dead = False
            for length, cls in lengths:
                if length < size:
                    state = length
                elif loop_target is None:
                    if cls == "yes":
                        dead = True
                        break
                    continue
                else:
                    state = loop_target + (length - size) % (size - loop_target)
                if cls == "yes":
                    need_one |= 1 << state
                else:
                    need_zero |= 1 << state
            if dead or need_one & need_zero:
                continue
            return _revalidated(spec, _lasso_dfa(size, loop_target, need_one, sym), checked)
    return SearchResult(size=None, witness=None, candidates_checked=checked)


def min_dfa_size(spec: SearchSpec, work_cap: int = 10**8) -> SearchResult:
    """Smallest deterministic one-way machine over an arbitrary alphabet.

    Enumerates full transition tables with state 0 initial (fixing the
    initial state loses nothing up to isomorphism); table entry s is the
    undefined sentinel. Accepting sets are resolved by constraint
    propagation per table, equivalent to enumerating them all. Sizes are
    tried in ascending order, so tables with unreachable states merely
    duplicate smaller candidates and cannot distort the minimum.
    """
    if spec.machine_kind != KIND_DFA:
        raise ValueError("spec.machine_kind must be 'dfa'")
    symbols = tuple(spec.problem.alphabet)
    nsym = len(symbols)
    index = {sym: i for i, sym in enumerate(symbols)}
    words = [
        (tuple(index[ch] for ch in word), cls)
        for word, cls in spec.problem.enumerate_instances(spec.max_length)
    ]
    checked = 0
    for size in range(1, spec.max_states + 1):
        tables = (size + 1) ** (size * nsym)
        if tables * max(1, len(words)) > work_cap:
            raise ResourceCapError(
                f"table enumeration at {size} states needs {tables} candidates, "
                f"above the work cap"
            )
        for table in itertools.product(range(size + 1), repeat=size * nsym):
            checked += 1
            need_one = 0
            need_zero = 0
            alive = True
            for encoded, cls in words:
                state = 0
                for ix in encoded:
                    state = table[state * nsym + ix]
                    if state == size:
                        break
                if state == size:
                    if cls == "yes":
                        alive = False
                        break
                    continue
                if cls == "yes":
                    need_one |= 1 << state
                else:
                    need_zero |= 1 << state
            if not alive or need_one & need_zero:
                continue
            transitions = {
                (q, symbols[ix]): table[q * nsym + ix]
                for q in range(size)
                for ix in range(nsym)
                if table[q * nsym + ix] != size
            }
            witness = OneWayDfa(
                state_count=size,
                alphabet=symbols,
                initial=0,
                transitions=transitions,
                accepting=frozenset(q for q in range(size) if need_one >> q & 1),
            )
            return _revalidated(spec, witness, checked)
    return SearchResult(size=None, witness=None, candidates_checked=checked)


def min_unary_nfa_size(spec: SearchSpec, work_cap: int = 10**8) -> SearchResult:
    """Smallest nondeterministic one-way machine for a unary promise problem.

    Enumerates target-set relations without silent transitions: removing
    silent transitions never changes the state count, so the minimum over
    plain relations is the overall minimum. For each relation the reachable
    subset after every instance length is computed once; a no instance
    forbids its whole final subset from accepting, and the relation works
    exactly when every yes instance's final subset still meets the allowed
    set."""
    if spec.machine_kind != KIND_UNARY_NFA:
        raise ValueError("spec.machine_kind must be 'unary-nfa'")
    sym = spec.problem.alphabet[0]
    lengths = [
        (len(word), cls) for word, cls in spec.problem.enumerate_instances(spec.max_length)
    ]
    horizon = max((length for length, _ in lengths), default=0)
    checked = 0
    for size in range(1, spec.max_states + 1):
        full = (1 << size) - 1
        relations = (1 << size) ** size
        if relations * max(1, horizon) > work_cap:
            raise ResourceCapError(
                f"relation enumeration at {size} states needs {relations} candidates, "
                f"above the work cap"
            )
        for relation in itertools.product(range(1 << size), repeat=size):
            checked += 1
            step = [0] * (1 << size)
            for subset in range(1, 1 << size):
                low = subset & -subset
                step[subset] = step[subset ^ low] | relation[low.bit_length() - 1]
            trace = [1]
            for _ in range(horizon):
                trace.append(step[trace[-1]])
            forbidden = 0
            finals_yes = []
            alive = True
            for length, cls in lengths:
                subset = trace[length]
                if cls == "yes":
                    if subset == 0:
                        alive = False
                        break
                    finals_yes.append(subset)
                else:
                    forbidden |= subset
            if not alive:
                continue
            allowed = full & ~forbidden
            if any(subset & allowed == 0 for subset in finals_yes):
                continue
            witness = OneWayNfa(
                state_count=size,
                alphabet=(sym,),
                initial=0,
                transitions=frozenset(
                    (q, sym, p)
                    for q in range(size)
                    for p in range(size)
                    if relation[q] >> p & 1
                ),
                accepting=frozenset(q for q in range(size) if allowed >> q & 1),
            )
            return _revalidated(spec, witness, checked)
    return SearchResult(size=None, witness=None, candidates_checked=checked)


def _dfa_block_outcome(
    dfa: OneWayDfa, start: int, sym: str, length: int
) -> tuple[str, int]:
    """Outcome of running sym^length from start: ('state', q) or ('stuck', d).

    The orbit from any state enters a cycle or dies within state_count
    steps, so arbitrary lengths are resolved by index arithmetic instead of
    stepping."""
    path = [start]
    seen = {start: 0}
    while True:
        nxt = dfa.transitions.get((path[-1], sym))
        if nxt is None:
            depth = len(path) - 1
            if length <= depth:
                return ("state", path[length])
            return ("stuck", depth)
        if nxt in seen:
            entry = seen[nxt]
            period = len(path) - entry
            if length < len(path):
                return ("state", path[length])
            return ("state", path[entry + (length - entry) % period])
        seen[nxt] = len(path)
        path.append(nxt)


def _subset_orbit_at(step: dict[int, int], start: int, length: int) -> int:
    """Reachable subset after length steps, via orbit index arithmetic."""
    trace = [start]
    seen = {start: 0}
    while True:
        nxt = step[trace[-1]]
        if nxt in seen:
            entry = seen[nxt]
            period = len(trace) - entry
            if length < len(trace):
                return trace[length]
            return trace[entry + (length - entry) % period]
        seen[nxt] = len(trace)
        trace.append(nxt)


def pumping_check(
    machine: OneWayDfa | OneWayNfa,
    m: int,
    h_values: tuple[int, ...] = (1, 2),
) -> VerificationReport:
    """Check that reading a^m and a^(m + h * m!) leaves the machine in the
    same place, for every h requested.

    Requires a unary machine and m at least the state count; m is capped at
    12 as a factorial overflow guard. For a deterministic machine the run
    from the initial state is compared (state reached, or position stuck
    at); the single run enters its cycle within state_count steps and the
    cycle length divides m!, so this always holds. For a nondeterministic
    machine the reachable subset from the initial state is compared; the
    pumped word can only gain runs, so a strict subset on the shorter word
    makes this fail, and the report says so rather than papering over it.
    """
    if len(machine.alphabet) != 1:
        raise ValueError("pumping_check needs a unary machine")
    if m < machine.state_count:
        raise ValueError("m must be at least the machine's state count")
    if m > 12:
        raise ResourceCapError("m is capped at 12 (factorial overflow guard)")
    if any(h < 1 for h in h_values):
        raise ValueError("h values must be positive")
    sym = machine.alphabet[0]
    pump = math.factorial(m)
    measured = {"m": m, "pump": pump, "h_values": tuple(h_values)}
    if isinstance(machine, OneWayDfa):
        base = _dfa_block_outcome(machine, machine.initial, sym, m)
        for h in h_values:
            pumped = _dfa_block_outcome(machine, machine.initial, sym, m + h * pump)
            if pumped != base:
                return VerificationReport(
                    FAILS,
                    counterexample=(
                        f"{sym}^{m + h * pump}",
                        f"same outcome as {sym}^{m}",
                        f"{base} vs {pumped}",
                    ),
                    measured=measured,
                )
        return VerificationReport(SOLVES, measured=measured)
    if isinstance(machine, OneWayNfa):
        tables, closures = _nfa_step_tables(machine)
        start = closures[machine.initial]
        step = tables[sym]
        base = _subset_orbit_at(step, start, m)
        for h in h_values:
            pumped = _subset_orbit_at(step, start, m + h * pump)
            if pumped != base:
                return VerificationReport(
                    FAILS,
                    counterexample=(
                        f"{sym}^{m + h * pump}",
                        f"same reachable set as {sym}^{m}",
                        f"{base:b} vs {pumped:b}",
                    ),
                    measured=measured,
                )
        return VerificationReport(SOLVES, measured=measured)
    raise TypeError(
        "pumping_check handles one-way deterministic and nondeterministic machines"
    )


def _nfa_step_tables(nfa: OneWayNfa) -> tuple[dict[str, dict[int, int]], list[int]]:
    """Per-symbol subset-step tables over bitmask subsets, silent moves folded in."""
    if nfa.state_count > 20:
        raise ResourceCapError("subset tables above 20 states are too large")
    eps: dict[int, int] = {q: 0 for q in range(nfa.state_count)}
    by_symbol: dict[str, dict[int, int]] = {
        sym: {q: 0 for q in range(nfa.state_count)} for sym in nfa.alphabet
    }
    for src, sym, dst in nfa.transitions:
        if sym is EPSILON:
            eps[src] |= 1 << dst
        else:
            by_symbol[sym][src] |= 1 << dst
    closure = [1 << q for q in range(nfa.state_count)]
    changed = True
    while changed:
        changed = False
        for q in range(nfa.state_count):
            mask = closure[q]
            grow = mask
            probe = mask
            while probe:
                low = probe & -probe
                bit = low.bit_length() - 1
                grow |= closure[bit] | eps[bit]
                probe ^= low
            if grow != mask:
                closure[q] = grow
                changed = True
    full = 1 << nfa.state_count
    tables: dict[str, dict[int, int]] = {}
    for sym in nfa.alphabet:
        single = []
        for q in range(nfa.state_count):
            mask = 0
            probe = by_symbol[sym][q]
            while probe:
                low = probe & -probe
                mask |= closure[low.bit_length() - 1]
                probe ^= low
            single.append(mask)
        table: dict[int, int] = {0: 0}
        for subset in range(1, full):
            low = subset & -subset
            table[subset] = table[subset ^ low] | single[low.bit_length() - 1]
        tables[sym] = table
    return tables, closure


def disjointness_check(
    problem: PromiseProblem, max_length: int, work_cap: int = 10**7
) -> VerificationReport:
    """Walk every word up to max_length and confirm no word is classified
    both yes and no. Independent of any enumerator the problem carries."""
    base = len(problem.alphabet)
    total = sum(base**length for length in range(max_length + 1))
    if total > work_cap:
        raise ResourceCapError(f"{total} words above the {work_cap} cap")
    yes_count = 0
    no_count = 0
    for length in range(max_length + 1):
        for letters in itertools.product(problem.alphabet, repeat=length):
            word = "".join(letters)
            in_yes = problem.yes_member(word)
            in_no = problem.no_member(word)
            if in_yes and in_no:
                return VerificationReport(
                    FAILS,
                    counterexample=(word, "at most one class", "yes and no overlap"),
                    measured={"words": total},
                )
            yes_count += in_yes
            no_count += in_no
    return VerificationReport(
        SOLVES, measured={"words": total, "yes": yes_count, "no": no_count}
    )
