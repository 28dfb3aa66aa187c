"""Conversions between machine types and closed-form size bounds."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import AlphabetMismatchError, ResourceCapError
from .machines import (
    EPSILON,
    OneWayAfa,
    OneWayDfa,
    OneWayNfa,
    _eps_closure,
    _nfa_maps,
)

DEFAULT_SUBSET_CAP = 1 << 16
DEFAULT_VECTOR_CAP = 1 << 20


def dfa_to_nfa(dfa: OneWayDfa) -> OneWayNfa:
    """View a deterministic machine as a nondeterministic one."""
    return OneWayNfa(
        state_count=dfa.state_count,
        alphabet=dfa.alphabet,
        initial=dfa.initial,
        transitions=frozenset(
            (src, sym, dst) for (src, sym), dst in dfa.transitions.items()
        ),
        accepting=dfa.accepting,
        labels=dfa.labels,
    )


def dfa_complete(dfa: OneWayDfa) -> OneWayDfa:
    """Total version of a partial machine: undefined moves go to a dead state.

    A machine that is already total is returned unchanged; otherwise one
    non-accepting sink state absorbs every missing transition.
    """
    missing = [
        (state, sym)
        for state in range(dfa.state_count)
        for sym in dfa.alphabet
        if (state, sym) not in dfa.transitions
    ]
    if not missing:
        return dfa
    dead = dfa.state_count
    transitions = dict(dfa.transitions)
    for key in missing:
        transitions[key] = dead
    for sym in dfa.alphabet:
        transitions[(dead, sym)] = dead
    return OneWayDfa(
        state_count=dfa.state_count + 1,
        alphabet=dfa.alphabet,
        initial=dfa.initial,
        transitions=transitions,
        accepting=dfa.accepting,
        labels=dfa.labels,
    )


def nfa_to_dfa(nfa: OneWayNfa, subset_cap: int = DEFAULT_SUBSET_CAP) -> OneWayDfa:
    """Subset construction over reachable EPSILON-closed state sets.

    Transitions into the empty set are left undefined, so the result is a
    partial machine and never carries a dead state of its own.
    """
    eps, by_symbol = _nfa_maps(nfa)
    start = _eps_closure({nfa.initial}, eps)
    index: dict[frozenset[int], int] = {start: 0}
    order = [start]
    transitions: dict[tuple[int, str], int] = {}
    head = 0
    while head < len(order):
        subset = order[head]
        head += 1
        for sym in nfa.alphabet:
            moved: set[int] = set()
            for state in subset:
                moved |= by_symbol.get((state, sym), set())
            target = _eps_closure(moved, eps)
            if not target:
                continue
            if target not in index:
                if len(index) >= subset_cap:
                    raise ResourceCapError(
                        f"subset construction exceeds {subset_cap} states"
                    )
                index[target] = len(order)
                order.append(target)
            transitions[(index[subset], sym)] = index[target]
    return OneWayDfa(
        state_count=len(order),
        alphabet=nfa.alphabet,
        initial=0,
        transitions=transitions,
        accepting=frozenset(
            index[s] for s in order if s & nfa.accepting
        ),
        labels={
            idx: "{" + ",".join(map(str, sorted(subset))) + "}"
            for subset, idx in index.items()
        },
    )


def remove_epsilon(nfa: OneWayNfa) -> OneWayNfa:
    """Equivalent EPSILON-free machine on the same states.

    Symbol moves are composed through closures on both sides, and a state
    becomes accepting when its closure meets an accepting state.
    """
    eps, by_symbol = _nfa_maps(nfa)
    transitions: set[tuple[int, str | None, int]] = set()
    accepting: set[int] = set()
    for state in range(nfa.state_count):
        closure = _eps_closure({state}, eps)
        if closure & nfa.accepting:
            accepting.add(state)
        for sym in nfa.alphabet:
            moved: set[int] = set()
            for mid in closure:
                moved |= by_symbol.get((mid, sym), set())
            for target in _eps_closure(moved, eps):
                transitions.add((state, sym, target))
    return OneWayNfa(
        state_count=nfa.state_count,
        alphabet=nfa.alphabet,
        initial=nfa.initial,
        transitions=frozenset(transitions),
        accepting=frozenset(accepting),
        labels=nfa.labels,
    )


def _afa_unary_tables(
    afa: OneWayAfa,
) -> tuple[list[list[int]], list[list[int]], list[int]]:
    """Per-state EPSILON targets and single-symbol targets, plus eval order."""
    sym = afa.alphabet[0]
    eps_targets: list[list[int]] = [[] for _ in range(afa.state_count)]
    sym_targets: list[list[int]] = [[] for _ in range(afa.state_count)]
    for src, label, dst in afa.transitions:
        if label is EPSILON:
            eps_targets[src].append(dst)
        elif label == sym:
            sym_targets[src].append(dst)
    return eps_targets, sym_targets, list(afa.eps_order)


def unary_afa_to_dfa(
    afa: OneWayAfa, vector_cap: int = DEFAULT_VECTOR_CAP
) -> OneWayDfa:
    """Exact determinization of a unary alternating machine.

    Tracks the backward valuation vector v_j, where v_j[q] says whether the
    machine accepts a^j when started in q: v_0 comes from the accepting set
    filtered through the EPSILON layer, and one backward step per symbol
    rebuilds the vector for j+1 from the one for j. Distinct vectors become
    the states of the resulting (lasso-shaped) deterministic machine, so at
    most 2^state_count states can ever appear.
    """
    if len(afa.alphabet) != 1:
        raise ValueError("unary determinization needs a one-symbol alphabet")
    eps_targets, sym_targets, order = _afa_unary_tables(afa)
    existential = afa.existential
    accepting = afa.accepting

    def initial_vector() -> tuple[bool, ...]:
        value = [False] * afa.state_count
        for q in order:
            if eps_targets[q]:
                branch = (value[t] for t in eps_targets[q])
                value[q] = any(branch) if q in existential else all(branch)
            else:
                value[q] = q in accepting
        return tuple(value)

    def backward_step(prev: tuple[bool, ...]) -> tuple[bool, ...]:
        value = [False] * afa.state_count
        for q in order:
            if eps_targets[q]:
                branch = (value[t] for t in eps_targets[q])
                value[q] = any(branch) if q in existential else all(branch)
            elif sym_targets[q]:
                branch = (prev[t] for t in sym_targets[q])
                value[q] = any(branch) if q in existential else all(branch)
            # else: mid-word halt, value stays False
        return tuple(value)

    sym = afa.alphabet[0]
    vector = initial_vector()
    index: dict[tuple[bool, ...], int] = {vector: 0}
    vectors = [vector]
    transitions: dict[tuple[int, str], int] = {}
    current = 0
    while True:
        nxt = backward_step(vectors[current])
        if nxt in index:
            transitions[(current, sym)] = index[nxt]
            break
        if len(vectors) >= vector_cap:
            raise ResourceCapError(f"valuation orbit exceeds {vector_cap} vectors")
        index[nxt] = len(vectors)
        vectors.append(nxt)
        transitions[(current, sym)] = index[nxt]
        current = index[nxt]
    return OneWayDfa(
        state_count=len(vectors),
        alphabet=afa.alphabet,
        initial=0,
        transitions=transitions,
        accepting=frozenset(
            idx for idx, vec in enumerate(vectors) if vec[afa.initial]
        ),
        labels={
            idx: "".join("1" if bit else "0" for bit in vec)
            for idx, vec in enumerate(vectors)
        },
    )


def _reachable_states(dfa: OneWayDfa) -> list[int]:
    seen = {dfa.initial}
    queue = [dfa.initial]
    head = 0
    while head < len(queue):
        state = queue[head]
        head += 1
        for sym in dfa.alphabet:
            target = dfa.transitions.get((state, sym))
            if target is not None and target not in seen:
                seen.add(target)
                queue.append(target)
    return queue


def dfa_minimize(dfa: OneWayDfa) -> OneWayDfa:
    """Language-minimal machine for the same partial-run semantics.

    Works on the completed reachable machine (a temporary dead state absorbs
    undefined moves), refines state classes until stable, and then drops the
    dead class again unless it is the initial one, so the reported size
    follows the convention that a plain rejecting sink does not count.
    """
    reachable = _reachable_states(dfa)
    position = {state: i for i, state in enumerate(reachable)}
    dead = len(reachable)  # completion sink, possibly merged with real states
    count = dead + 1
    symbols = list(dfa.alphabet)
    table: list[list[int]] = []
    for state in reachable:
        row = []
        for sym in symbols:
            target = dfa.transitions.get((state, sym))
            row.append(position[target] if target is not None else dead)
        table.append(row)
    table.append([dead] * len(symbols))
    is_accepting = [state in dfa.accepting for state in reachable] + [False]

    # Moore refinement to a fixed point.
    block = [0 if acc else 1 for acc in is_accepting]
    while True:
        signature = {}
        new_block = [0] * count
        for state in range(count):
            key = (block[state], tuple(block[t] for t in table[state]))
            if key not in signature:
                signature[key] = len(signature)
            new_block[state] = signature[key]
        if new_block == block:
            break
        block = new_block

    # Renumber classes in breadth-first order from the initial class.
    initial_class = block[position[dfa.initial]]
    rep: dict[int, int] = {}
    for state in range(count):
        rep.setdefault(block[state], state)
    numbering = {initial_class: 0}
    order = [initial_class]
    head = 0
    while head < len(order):
        cls = order[head]
        head += 1
        for target in table[rep[cls]]:
            cls_t = block[target]
            if cls_t not in numbering:
                numbering[cls_t] = len(numbering)
                order.append(cls_t)
    dead_class = block[dead]
    drop_dead = dead_class in numbering and numbering[dead_class] != 0
    final_ids: dict[int, int] = {}
    for cls in order:
        if drop_dead and cls == dead_class:
            continue
        final_ids[cls] = len(final_ids)

    transitions: dict[tuple[int, str], int] = {}
    accepting: set[int] = set()
    for cls, ident in final_ids.items():
        if is_accepting[rep[cls]]:
            accepting.add(ident)
        for sym_idx, sym in enumerate(symbols):
            target_class = block[table[rep[cls]][sym_idx]]
            if drop_dead and target_class == dead_class:
                continue
            transitions[(ident, sym)] = final_ids[target_class]
    return OneWayDfa(
        state_count=len(final_ids),
        alphabet=dfa.alphabet,
        initial=0,
        transitions=transitions,
        accepting=frozenset(accepting),
    )


def dfa_equivalent(left: OneWayDfa, right: OneWayDfa) -> bool:
    """Exact language equality via product reachability, stuck means reject."""
    if left.symbols != right.symbols:
        raise AlphabetMismatchError(
            f"alphabets differ: {sorted(left.symbols)} vs {sorted(right.symbols)}"
        )
    start = (left.initial, right.initial)
    seen = {start}
    queue = [start]
    head = 0
    while head < len(queue):
        a, b = queue[head]
        head += 1
        a_acc = a is not None and a in left.accepting
        b_acc = b is not None and b in right.accepting
        if a_acc != b_acc:
            return False
        for sym in left.alphabet:
            a_next = left.transitions.get((a, sym)) if a is not None else None
            b_next = right.transitions.get((b, sym)) if b is not None else None
            if a_next is None and b_next is None:
                continue
            pair = (a_next, b_next)
            if pair not in seen:
                seen.add(pair)
                queue.append(pair)
    return True


@dataclass(frozen=True)
class BoundValue:
    """A closed-form size bound evaluated at one argument.

    ``value`` is the exact integer when ``is_exact``, otherwise the ceiling
    of the (irrational) real value, which ``real_value`` approximates.
    """

    formula: str
    argument: int
    value: int
    is_exact: bool = True
    real_value: float | None = None


def bound_afa_to_dfa(n: int, max_bits: int = 10**7) -> BoundValue:
    """Worst-case deterministic blowup for an n-state alternating machine."""
    if n < 1:
        raise ValueError("n must be at least 1")
    exponent = n * (1 << n)
    if exponent > max_bits:
        raise ResourceCapError(f"2^{exponent} exceeds the {max_bits}-bit cap")
    return BoundValue("afa_to_dfa", n, 1 << exponent)


def bound_2nfa_to_dfa(n: int, max_bits: int = 10**7) -> BoundValue:
    """Worst-case one-way deterministic blowup for an n-state two-way machine.

    The double sum counts the reachable transition behaviors; the 0^0 = 1
    convention applies at i = j = 0.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if n * n + n > max_bits:
        raise ResourceCapError(f"bound at n={n} exceeds the {max_bits}-bit cap")
    total = 0
    for i in range(n):
        for j in range(n):
            base = (1 << i) - 1
            power = 1 if j == 0 else base**j
            total += math.comb(n, i) * math.comb(n, j) * power
    return BoundValue("2nfa_to_dfa", n, total)


def _ceil_cbrt(m: int) -> int:
    """Smallest k with k^3 >= m, exact for any non-negative integer."""
    if m <= 0:
        return 0
    k = round(m ** (1 / 3))
    while k**3 >= m:
        k -= 1
    while k**3 < m:
        k += 1
    return k


def bound_svfa_to_dfa(n: int) -> BoundValue:
    """Deterministic size bound 1 + 3^((n-1)/3) for n-state zero-error machines.

    Exact when n - 1 is divisible by 3; otherwise the value field carries the
    ceiling and real_value the floating-point evaluation.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    real = 1 + 3.0 ** ((n - 1) / 3)
    if (n - 1) % 3 == 0:
        exact = 1 + 3 ** ((n - 1) // 3)
        return BoundValue("svfa_to_dfa", n, exact, is_exact=True, real_value=real)
    value = 1 + _ceil_cbrt(3 ** (n - 1))
    return BoundValue("svfa_to_dfa", n, value, is_exact=False, real_value=real)
