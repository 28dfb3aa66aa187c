"""Finite acceptor types and their execution semantics.

States are integers 0..state_count-1 with an optional label table for
readability. Transition structures are partial: a configuration with no
applicable transition halts on the spot, which for one-way machines mid-word
amounts to premature rejection. All machine values are immutable after
construction and safe to share between threads.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Mapping
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import AlphabetMismatchError, InputDomainError

EPSILON = None  # transition label for moves that consume no input

LEFT_MARKER = "⊢"
RIGHT_MARKER = "⊣"
LEFT, STAY, RIGHT = -1, 0, 1

ACCEPT = "accept"
REJECT = "reject"
STUCK = "stuck"

ROLE_ACCEPTING = "accepting"
ROLE_REJECTING = "rejecting"
ROLE_NEUTRAL = "neutral"
_ROLES = (ROLE_ACCEPTING, ROLE_REJECTING, ROLE_NEUTRAL)

SOLVES = "solves"
FAILS = "fails"
INCONCLUSIVE = "inconclusive"


def _check_alphabet(alphabet: tuple[str, ...]) -> None:
    if not alphabet:
        raise ValueError("alphabet must be non-empty")
    if len(set(alphabet)) != len(alphabet):
        raise ValueError("alphabet symbols must be distinct")
    for sym in alphabet:
        if not isinstance(sym, str) or not sym:
            raise ValueError(f"alphabet symbol {sym!r} must be a non-empty string")
        if sym in (LEFT_MARKER, RIGHT_MARKER):
            raise ValueError(f"alphabet may not contain the endmarker {sym!r}")


def _check_state(state: int, count: int, what: str) -> None:
    if not isinstance(state, int) or not 0 <= state < count:
        raise ValueError(f"{what} {state!r} outside 0..{count - 1}")


def _check_labels(labels: Mapping[int, str], count: int) -> None:
    for state, name in labels.items():
        _check_state(state, count, "labeled state")
        if not isinstance(name, str):
            raise ValueError(f"label for state {state} must be a string")


@dataclass(frozen=True)
class OneWayDfa:
    """Deterministic one-way acceptor with a partial transition function.

    ``transitions`` maps (state, symbol) to the successor state; a missing
    entry makes the run halt where it stands.
    """

    state_count: int
    alphabet: tuple[str, ...]
    initial: int
    transitions: Mapping[tuple[int, str], int]
    accepting: frozenset[int]
    labels: Mapping[int, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "transitions", dict(self.transitions))
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        object.__setattr__(self, "labels", dict(self.labels))
        if self.state_count < 1:
            raise ValueError("state_count must be at least 1")
        _check_alphabet(self.alphabet)
        symbols = frozenset(self.alphabet)
        _check_state(self.initial, self.state_count, "initial state")
        for state in self.accepting:
            _check_state(state, self.state_count, "accepting state")
        for (src, sym), dst in self.transitions.items():
            _check_state(src, self.state_count, "transition source")
            _check_state(dst, self.state_count, "transition target")
            if sym not in symbols:
                raise ValueError(f"transition symbol {sym!r} not in alphabet")
        _check_labels(self.labels, self.state_count)
        object.__setattr__(self, "_symbols", symbols)

    @property
    def symbols(self) -> frozenset[str]:
        return self._symbols  # type: ignore[attr-defined]


@dataclass(frozen=True)
class OneWayNfa:
    """Nondeterministic one-way acceptor; EPSILON labels consume no input."""

    state_count: int
    alphabet: tuple[str, ...]
    initial: int
    transitions: frozenset[tuple[int, str | None, int]]
    accepting: frozenset[int]
    labels: Mapping[int, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "transitions", frozenset(self.transitions))
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        object.__setattr__(self, "labels", dict(self.labels))
        if self.state_count < 1:
            raise ValueError("state_count must be at least 1")
        _check_alphabet(self.alphabet)
        symbols = frozenset(self.alphabet)
        _check_state(self.initial, self.state_count, "initial state")
        for state in self.accepting:
            _check_state(state, self.state_count, "accepting state")
        for src, sym, dst in self.transitions:
            _check_state(src, self.state_count, "transition source")
            _check_state(dst, self.state_count, "transition target")
            if sym is not EPSILON and sym not in symbols:
                raise ValueError(f"transition symbol {sym!r} not in alphabet")
        _check_labels(self.labels, self.state_count)
        object.__setattr__(self, "_symbols", symbols)

    @property
    def symbols(self) -> frozenset[str]:
        return self._symbols  # type: ignore[attr-defined]


@dataclass(frozen=True)
class TwoWayMachine:
    """Two-way acceptor over an input taped between two endmarkers.

    The tape for word w is LEFT_MARKER + w + RIGHT_MARKER, the head starts on
    the left endmarker, and each transition (state, tape symbol, state, move)
    moves the head by LEFT, STAY, or RIGHT. The machine accepts by halting in
    an accepting state at any head position. Transitions that would walk off
    an endmarker are rejected at construction time.
    """

    state_count: int
    alphabet: tuple[str, ...]
    initial: int
    transitions: frozenset[tuple[int, str, int, int]]
    accepting: frozenset[int]
    deterministic: bool = False
    labels: Mapping[int, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "transitions", frozenset(self.transitions))
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        object.__setattr__(self, "labels", dict(self.labels))
        if self.state_count < 1:
            raise ValueError("state_count must be at least 1")
        _check_alphabet(self.alphabet)
        tape_symbols = frozenset(self.alphabet) | {LEFT_MARKER, RIGHT_MARKER}
        _check_state(self.initial, self.state_count, "initial state")
        for state in self.accepting:
            _check_state(state, self.state_count, "accepting state")
        seen: set[tuple[int, str]] = set()
        for src, sym, dst, move in self.transitions:
            _check_state(src, self.state_count, "transition source")
            _check_state(dst, self.state_count, "transition target")
            if sym not in tape_symbols:
                raise ValueError(f"tape symbol {sym!r} not in alphabet or endmarkers")
            if move not in (LEFT, STAY, RIGHT):
                raise ValueError(f"move {move!r} must be LEFT, STAY, or RIGHT")
            if sym == LEFT_MARKER and move == LEFT:
                raise ValueError("transition moves left off the left endmarker")
            if sym == RIGHT_MARKER and move == RIGHT:
                raise ValueError("transition moves right off the right endmarker")
            if self.deterministic:
                if (src, sym) in seen:
                    raise ValueError(
                        f"deterministic machine has two transitions on {(src, sym)!r}"
                    )
                seen.add((src, sym))
        _check_labels(self.labels, self.state_count)
        object.__setattr__(self, "_symbols", frozenset(self.alphabet))

    @property
    def symbols(self) -> frozenset[str]:
        return self._symbols  # type: ignore[attr-defined]


@dataclass(frozen=True)
class OneWayAfa:
    """Alternating one-way acceptor with existential and universal states.

    Every state is existential or universal: ``existential`` lists the
    existential ones, the rest are universal. A state's outgoing transitions
    are either all EPSILON-labeled or all symbol-labeled, never mixed. The
    EPSILON subgraph must be acyclic and its longest path may not exceed
    ``max_eps_chain``, so evaluation always terminates.
    """

    state_count: int
    alphabet: tuple[str, ...]
    initial: int
    transitions: frozenset[tuple[int, str | None, int]]
    accepting: frozenset[int]
    existential: frozenset[int]
    max_eps_chain: int = 3
    labels: Mapping[int, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "transitions", frozenset(self.transitions))
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        object.__setattr__(self, "existential", frozenset(self.existential))
        object.__setattr__(self, "labels", dict(self.labels))
        if self.state_count < 1:
            raise ValueError("state_count must be at least 1")
        _check_alphabet(self.alphabet)
        symbols = frozenset(self.alphabet)
        _check_state(self.initial, self.state_count, "initial state")
        for state in self.accepting:
            _check_state(state, self.state_count, "accepting state")
        for state in self.existential:
            _check_state(state, self.state_count, "existential state")
        eps_out: dict[int, list[int]] = {}
        sym_out: set[int] = set()
        for src, sym, dst in self.transitions:
            _check_state(src, self.state_count, "transition source")
            _check_state(dst, self.state_count, "transition target")
            if sym is EPSILON:
                eps_out.setdefault(src, []).append(dst)
            else:
                if sym not in symbols:
                    raise ValueError(f"transition symbol {sym!r} not in alphabet")
                sym_out.add(src)
        mixed = sym_out & eps_out.keys()
        if mixed:
            raise ValueError(
                f"states {sorted(mixed)} mix EPSILON and symbol transitions"
            )
        if self.max_eps_chain < 0:
            raise ValueError("max_eps_chain must be non-negative")
        depth = _eps_chain_depths(self.state_count, eps_out)
        longest = max(depth) if depth else 0
        if longest > self.max_eps_chain:
            raise ValueError(
                f"longest EPSILON chain has {longest} edges, above the declared "
                f"bound {self.max_eps_chain}"
            )
        _check_labels(self.labels, self.state_count)
        object.__setattr__(self, "_symbols", symbols)
        object.__setattr__(self, "_eps_order", _eps_topo_order(self.state_count, eps_out))

    @property
    def symbols(self) -> frozenset[str]:
        return self._symbols  # type: ignore[attr-defined]

    @property
    def eps_order(self) -> tuple[int, ...]:
        """States ordered so every EPSILON target precedes its sources."""
        return self._eps_order  # type: ignore[attr-defined]

    def universal(self) -> frozenset[int]:
        return frozenset(range(self.state_count)) - self.existential


def _eps_chain_depths(count: int, eps_out: Mapping[int, list[int]]) -> list[int]:
    """Longest EPSILON path (in edges) from each state; raises on a cycle."""
    depth = [-1] * count
    on_stack = [False] * count

    def walk(state: int) -> int:
        if depth[state] >= 0:
            return depth[state]
        if on_stack[state]:
            raise ValueError("EPSILON transitions form a cycle")
        on_stack[state] = True
        best = 0
        for target in eps_out.get(state, ()):
            best = max(best, 1 + walk(target))
        on_stack[state] = False
        depth[state] = best
        return best

    for state in range(count):
        walk(state)
    return depth


def _eps_topo_order(count: int, eps_out: Mapping[int, list[int]]) -> tuple[int, ...]:
    depths = _eps_chain_depths(count, eps_out)
    return tuple(sorted(range(count), key=lambda q: depths[q]))


def _check_stochastic_row(
    row: tuple[tuple[int, Fraction], ...], count: int, key: tuple[int, str]
) -> None:
    total = Fraction(0)
    for dst, prob in row:
        _check_state(dst, count, "transition target")
        if not isinstance(prob, Fraction):
            raise ValueError(f"probability {prob!r} on {key!r} must be a Fraction")
        if prob < 0 or prob > 1:
            raise ValueError(f"probability {prob} on {key!r} outside [0, 1]")
        total += prob
    if total != 1:
        raise ValueError(f"probabilities on {key!r} sum to {total}, not 1")


@dataclass(frozen=True)
class OneWayPfa:
    """Probabilistic one-way acceptor with exact rational transitions.

    ``transitions`` maps (state, symbol) to a row of (target, probability)
    pairs summing to exactly 1; a missing row halts that probability mass
    before the end of the input. ``roles`` assigns every state one of
    ROLE_ACCEPTING, ROLE_REJECTING, ROLE_NEUTRAL. No EPSILON moves exist.
    """

    state_count: int
    alphabet: tuple[str, ...]
    initial: int
    transitions: Mapping[tuple[int, str], tuple[tuple[int, Fraction], ...]]
    roles: Mapping[int, str]
    labels: Mapping[int, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        # Rows are kept sorted by target state so that equality is semantic:
        # two machines with the same distributions compare equal regardless of
        # the order their rows were written in.
        object.__setattr__(
            self,
            "transitions",
            {
                key: tuple(sorted(row, key=lambda item: item[0]))
                for key, row in dict(self.transitions).items()
            },
        )
        object.__setattr__(self, "roles", dict(self.roles))
        object.__setattr__(self, "labels", dict(self.labels))
        if self.state_count < 1:
            raise ValueError("state_count must be at least 1")
        _check_alphabet(self.alphabet)
        symbols = frozenset(self.alphabet)
        _check_state(self.initial, self.state_count, "initial state")
        if set(self.roles) != set(range(self.state_count)):
            raise ValueError("roles must cover every state exactly")
        for state, role in self.roles.items():
            if role not in _ROLES:
                raise ValueError(f"state {state} has unknown role {role!r}")
        for (src, sym), row in self.transitions.items():
            _check_state(src, self.state_count, "transition source")
            if sym not in symbols:
                raise ValueError(f"transition symbol {sym!r} not in alphabet")
            _check_stochastic_row(row, self.state_count, (src, sym))
        _check_labels(self.labels, self.state_count)
        object.__setattr__(self, "_symbols", symbols)

    @property
    def symbols(self) -> frozenset[str]:
        return self._symbols  # type: ignore[attr-defined]

    def states_with_role(self, role: str) -> frozenset[int]:
        return frozenset(s for s, r in self.roles.items() if r == role)


class LasVegasPfa(OneWayPfa):
    """Probabilistic acceptor meant to run with zero error.

    Structurally identical to OneWayPfa; the class marks machines whose
    correctness contract is "never announce the wrong answer": on instances it
    solves, all non-neutral mass agrees with the classification.
    """


@dataclass(frozen=True)
class RunResult:
    """Outcome of one deterministic run: accept, reject, or stuck(position)."""

    outcome: str
    position: int | None = None

    def __post_init__(self) -> None:
        if self.outcome not in (ACCEPT, REJECT, STUCK):
            raise ValueError(f"unknown outcome {self.outcome!r}")
        if (self.outcome == STUCK) != (self.position is not None):
            raise ValueError("position is set exactly when the run got stuck")

    @property
    def accepted(self) -> bool:
        return self.outcome == ACCEPT


@dataclass(frozen=True)
class PromiseProblem:
    """A pair of disjoint predicates over words of a shared alphabet.

    ``yes_member`` and ``no_member`` decide the two promise classes. The
    optional ``enumerator`` maps a maximum length to the classified instances
    up to that length, for problems whose instance set is too structured to
    find by scanning all words; without it, enumeration brute-forces every
    word up to the requested length.
    """

    alphabet: tuple[str, ...]
    yes_member: Callable[[str], bool]
    no_member: Callable[[str], bool]
    enumerator: Callable[[int], Iterable[tuple[str, str]]] | None = None
    name: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        _check_alphabet(self.alphabet)

    def enumerate_instances(self, max_length: int) -> list[tuple[str, str]]:
        """All (word, "yes" | "no") instances of length at most max_length."""
        if max_length < 0:
            raise ValueError("max_length must be non-negative")
        if self.enumerator is not None:
            out = []
            for word, cls in self.enumerator(max_length):
                if len(word) > max_length:
                    raise ValueError(
                        f"enumerator produced {word!r} beyond length {max_length}"
                    )
                if cls not in ("yes", "no"):
                    raise ValueError(f"enumerator produced class {cls!r}")
                out.append((word, cls))
            return out
        out = []
        frontier = [""]
        for _ in range(max_length + 1):
            next_frontier = []
            for word in frontier:
                yes = self.yes_member(word)
                no = self.no_member(word)
                if yes and no:
                    raise ValueError(f"promise classes overlap on {word!r}")
                if yes:
                    out.append((word, "yes"))
                elif no:
                    out.append((word, "no"))
                if len(word) < max_length:
                    next_frontier.extend(word + sym for sym in self.alphabet)
            frontier = next_frontier
        return out


@dataclass(frozen=True)
class VerificationReport:
    """Result of checking a machine or property against a problem."""

    verdict: str
    counterexample: tuple[str, str, str] | None = None
    measured: Mapping[str, object] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "measured", dict(self.measured))
        if self.verdict not in (SOLVES, FAILS, INCONCLUSIVE):
            raise ValueError(f"unknown verdict {self.verdict!r}")
        if (self.verdict == FAILS) != (self.counterexample is not None):
            raise ValueError("counterexample is present exactly when verdict is fails")

    @property
    def ok(self) -> bool:
        return self.verdict == SOLVES


def _require_symbols(word: str, symbols: frozenset[str]) -> None:
    for sym in word:
        if sym not in symbols:
            raise InputDomainError(f"symbol {sym!r} not in alphabet")


def dfa_run(dfa: OneWayDfa, word: str) -> RunResult:
    """Run the deterministic machine over the whole word.

    Returns accept or reject for completed runs, or stuck(i) when no
    transition applies at position i (0-based index of the unread symbol).
    """
    _require_symbols(word, dfa.symbols)
    state = dfa.initial
    for i, sym in enumerate(word):
        nxt = dfa.transitions.get((state, sym))
        if nxt is None:
            return RunResult(STUCK, i)
        state = nxt
    return RunResult(ACCEPT if state in dfa.accepting else REJECT)


def _nfa_maps(
    nfa: OneWayNfa,
) -> tuple[dict[int, set[int]], dict[tuple[int, str], set[int]]]:
    eps: dict[int, set[int]] = {}
    by_symbol: dict[tuple[int, str], set[int]] = {}
    for src, sym, dst in nfa.transitions:
        if sym is EPSILON:
            eps.setdefault(src, set()).add(dst)
        else:
            by_symbol.setdefault((src, sym), set()).add(dst)
    return eps, by_symbol


def _eps_closure(states: Iterable[int], eps: Mapping[int, set[int]]) -> frozenset[int]:
    seen = set(states)
    stack = list(seen)
    while stack:
        for dst in eps.get(stack.pop(), ()):
            if dst not in seen:
                seen.add(dst)
                stack.append(dst)
    return frozenset(seen)


def nfa_accepts(nfa: OneWayNfa, word: str) -> bool:
    """Subset simulation: does any run consume the word into acceptance."""
    _require_symbols(word, nfa.symbols)
    eps, by_symbol = _nfa_maps(nfa)
    current = _eps_closure({nfa.initial}, eps)
    for sym in word:
        moved: set[int] = set()
        for state in current:
            moved |= by_symbol.get((state, sym), set())
        current = _eps_closure(moved, eps)
        if not current:
            return False
    return bool(current & nfa.accepting)


def twoway_accepts(machine: TwoWayMachine, word: str) -> bool:
    """Reachability over the configuration graph of the two-way machine.

    Configurations are (state, head position) on the endmarked tape, so the
    graph is finite and infinite loops are handled for free: the machine
    accepts iff some halting configuration with an accepting state is
    reachable from (initial, leftmost position).
    """
    _require_symbols(word, machine.symbols)
    tape = LEFT_MARKER + word + RIGHT_MARKER
    step: dict[tuple[int, str], list[tuple[int, int]]] = {}
    for src, sym, dst, move in machine.transitions:
        step.setdefault((src, sym), []).append((dst, move))
    start = (machine.initial, 0)
    seen = {start}
    stack = [start]
    while stack:
        state, pos = stack.pop()
        moves = step.get((state, tape[pos]))
        if not moves:
            if state in machine.accepting:
                return True
            continue
        for dst, move in moves:
            nxt = (dst, pos + move)
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return False


def afa_accepts(afa: OneWayAfa, word: str) -> bool:
    """Evaluate the alternating machine's run tree over the word.

    The value of (state, position) is the OR (existential) or AND (universal)
    of the applicable moves' values; a configuration with no applicable move
    halts and is accepting iff the input is exhausted and the state accepts.
    Values are filled position by position from the end of the word, with
    states in EPSILON-depth order so silent targets are always ready first.
    """
    _require_symbols(word, afa.symbols)
    eps: dict[int, list[int]] = {}
    by_symbol: dict[tuple[int, str], list[int]] = {}
    for src, sym, dst in afa.transitions:
        if sym is EPSILON:
            eps.setdefault(src, []).append(dst)
        else:
            by_symbol.setdefault((src, sym), []).append(dst)
    order = _eps_topo_order(afa.state_count, eps)
    next_row: list[bool] = []
    for pos in range(len(word), -1, -1):
        row = [False] * afa.state_count
        for state in order:
            combine = any if state in afa.existential else all
            if state in eps:
                row[state] = combine(row[t] for t in eps[state])
            elif pos < len(word) and (state, word[pos]) in by_symbol:
                row[state] = combine(next_row[t] for t in by_symbol[(state, word[pos])])
            else:
                # No applicable move: halt here, accept only at end of input.
                row[state] = pos == len(word) and state in afa.accepting
        next_row = row
    return next_row[afa.initial]


Acceptor = OneWayDfa | OneWayNfa | TwoWayMachine | OneWayAfa


def machine_accepts(machine: Acceptor, word: str) -> bool:
    """Uniform acceptance test across the four nonprobabilistic types."""
    if isinstance(machine, OneWayDfa):
        return dfa_run(machine, word).accepted
    if isinstance(machine, OneWayNfa):
        return nfa_accepts(machine, word)
    if isinstance(machine, TwoWayMachine):
        return twoway_accepts(machine, word)
    if isinstance(machine, OneWayAfa):
        return afa_accepts(machine, word)
    raise TypeError(f"unsupported machine type {type(machine).__name__}")


def promise_check(
    machine: Acceptor, problem: PromiseProblem, max_length: int
) -> VerificationReport:
    """Check the machine against every instance up to max_length.

    The machine solves the problem on the checked range iff it accepts every
    yes instance and rejects (or gets stuck on) every no instance; behavior
    outside the promise is not examined. An empty instance range solves
    vacuously.
    """
    if not isinstance(machine, (OneWayDfa, OneWayNfa, TwoWayMachine, OneWayAfa)):
        raise TypeError(f"unsupported machine type {type(machine).__name__}")
    if machine.symbols != frozenset(problem.alphabet):
        raise AlphabetMismatchError(
            f"machine alphabet {sorted(machine.symbols)} differs from problem "
            f"alphabet {sorted(problem.alphabet)}"
        )
    instances = problem.enumerate_instances(max_length)
    for word, cls in instances:
        accepted = machine_accepts(machine, word)
        if accepted != (cls == "yes"):
            return VerificationReport(
                FAILS,
                counterexample=(word, cls, ACCEPT if accepted else REJECT),
                measured={"instances": len(instances), "max_length": max_length},
            )
    return VerificationReport(
        SOLVES, measured={"instances": len(instances), "max_length": max_length}
    )
