"""Problem families and the machines built for them, with exact state budgets.

Each builder assembles its machine from named states so the structure stays
auditable; the advertised state counts are enforced at construction time.
"""

from __future__ import annotations

import re
from collections.abc import Callable
from fractions import Fraction
from itertools import product

from .errors import ResourceCapError
from .machines import (
    EPSILON,
    LEFT,
    LEFT_MARKER,
    RIGHT,
    RIGHT_MARKER,
    ROLE_ACCEPTING,
    ROLE_NEUTRAL,
    ROLE_REJECTING,
    STAY,
    LasVegasPfa,
    OneWayAfa,
    OneWayDfa,
    OneWayPfa,
    PromiseProblem,
    TwoWayMachine,
)

DEFAULT_STATE_CAP = 1 << 20
DEFAULT_ITERATION_CAP = 10**6


class _StateMap:
    """Allocates consecutive indices for named states."""

    def __init__(self) -> None:
        self.index: dict[str, int] = {}

    def add(self, name: str) -> int:
        if name in self.index:
            raise ValueError(f"state {name!r} created twice")
        self.index[name] = len(self.index)
        return self.index[name]

    def __getitem__(self, name: str) -> int:
        return self.index[name]

    def __len__(self) -> int:
        return len(self.index)

    def labels(self) -> dict[int, str]:
        return {idx: name for name, idx in self.index.items()}


def _check_cap(states: int, cap: int, what: str) -> None:
    if states > cap:
        raise ResourceCapError(f"{what} needs {states} states, above the cap {cap}")


# ---------------------------------------------------------------------------
# EvenOdd(k): unary words of length m * 2^k, even m versus odd m.


def evenodd_problem(k: int) -> PromiseProblem:
    """Unary promise problem: is the multiplier of 2^k even (yes) or odd (no)?

    A length n belongs to the promise iff 2^k divides n; it is a yes instance
    iff 2^(k+1) divides n.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    block = 1 << k
    period = 1 << (k + 1)

    def enumerator(max_length: int):
        for n in range(0, max_length + 1, block):
            yield "a" * n, ("yes" if n % period == 0 else "no")

    return PromiseProblem(
        alphabet=("a",),
        yes_member=lambda w: len(w) % period == 0,
        no_member=lambda w: len(w) % period == block,
        enumerator=enumerator,
        name=f"evenodd({k})",
    )


def evenodd_dfa(k: int, state_cap: int = DEFAULT_STATE_CAP) -> OneWayDfa:
    """Cyclic counter modulo 2^(k+1); exactly 2^(k+1) states."""
    if k < 1:
        raise ValueError("k must be at least 1")
    period = 1 << (k + 1)
    _check_cap(period, state_cap, "evenodd_dfa")
    return OneWayDfa(
        state_count=period,
        alphabet=("a",),
        initial=0,
        transitions={(i, "a"): (i + 1) % period for i in range(period)},
        accepting=frozenset({0}),
    )


def evenodd_afa_rt(k: int) -> OneWayAfa:
    """Alternating acceptor for EvenOdd(k) with exactly 7k+2 states.

    The machine checks that the k+1 low bits of (length - 1) are all ones,
    which is equivalent to 2^(k+1) dividing the length, by running a bitwise
    countdown backwards: state "i_x" claims bit i of the remaining length's
    predecessor pattern is x, "i_x,allone" additionally claims all lower bits
    are one (the borrow case), "i_x,exzero" claims some lower bit is zero,
    and "i_exzero" locates such a zero bit. Reading one symbol decrements the
    counter; the EPSILON layer (chains of length at most 2) re-establishes
    the bit claims after the decrement.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    sm = _StateMap()
    sm.add("s_ini")
    for i in range(k, -1, -1):
        for x in (0, 1):
            sm.add(f"{i}_{x}")
    for i in range(k, 0, -1):
        for x in (0, 1):
            sm.add(f"{i}_{x},allone")
    for i in range(k, 0, -1):
        for x in (0, 1):
            sm.add(f"{i}_{x},exzero")
    for i in range(k, 1, -1):
        sm.add(f"{i}_exzero")
    assert len(sm) == 7 * k + 2

    moves: set[tuple[int, str | None, int]] = set()
    for i in range(1, k + 1):
        for x in (0, 1):
            # Reading a symbol: either some lower bit was zero (no borrow
            # reaches bit i) or all lower bits were one (bit i flips).
            moves.add((sm[f"{i}_{x}"], "a", sm[f"{i}_{x},exzero"]))
            moves.add((sm[f"{i}_{x}"], "a", sm[f"{i}_{1 - x},allone"]))
    for x in (0, 1):
        moves.add((sm[f"0_{x}"], "a", sm[f"0_{1 - x}"]))
    for i in range(1, k + 1):
        for x in (0, 1):
            moves.add((sm[f"{i}_{x},allone"], EPSILON, sm[f"{i}_{x}"]))
            for j in range(i):
                moves.add((sm[f"{i}_{x},allone"], EPSILON, sm[f"{j}_1"]))
    for i in range(2, k + 1):
        for x in (0, 1):
            moves.add((sm[f"{i}_{x},exzero"], EPSILON, sm[f"{i}_{x}"]))
            moves.add((sm[f"{i}_{x},exzero"], EPSILON, sm[f"{i}_exzero"]))
    for x in (0, 1):
        moves.add((sm[f"1_{x},exzero"], EPSILON, sm[f"1_{x}"]))
        moves.add((sm[f"1_{x},exzero"], EPSILON, sm["0_0"]))
    for i in range(2, k + 1):
        for j in range(i):
            moves.add((sm[f"{i}_exzero"], EPSILON, sm[f"{j}_0"]))
    moves.add((sm["s_ini"], "a", sm[f"{k}_1,allone"]))

    existential = {sm[f"{i}_{x}"] for i in range(k + 1) for x in (0, 1)}
    existential |= {sm[f"{i}_exzero"] for i in range(2, k + 1)}
    accepting = {sm[f"{i}_0"] for i in range(k + 1)} | {sm["s_ini"]}

    return OneWayAfa(
        state_count=len(sm),
        alphabet=("a",),
        initial=sm["s_ini"],
        transitions=frozenset(moves),
        accepting=frozenset(accepting),
        existential=frozenset(existential),
        max_eps_chain=2,
        labels=sm.labels(),
    )


_BASE_STATE = re.compile(r"^(\d+)_([01])$")


def evenodd_afa_epsfree(k: int) -> OneWayAfa:
    """EPSILON-free alternating acceptor for EvenOdd(k), 11k-14 states (k >= 3).

    Built from evenodd_afa_rt(k-2) by padding every post-read EPSILON path to
    length exactly 3 with delay states ("i'_x", "i''_x", "0'''_x") and then
    relabeling every EPSILON move to read a symbol. Each original step thus
    consumes four symbols, so the result accepts a^(4m) iff the source
    machine accepts a^m and never accepts lengths that are not multiples of
    four; on the EvenOdd(k) promise this is the right acceptance pattern.
    """
    if k < 3:
        raise ValueError("k must be at least 3")
    source = evenodd_afa_rt(k - 2)
    names = source.labels
    sm = _StateMap()
    for idx in range(source.state_count):
        sm.add(names[idx])
    for i in range(k - 2, -1, -1):
        for x in (0, 1):
            sm.add(f"{i}''_{x}")
            sm.add(f"{i}'_{x}")
    for x in (0, 1):
        sm.add(f"0'''_{x}")
    assert len(sm) == 11 * k - 14

    moves: set[tuple[int, str | None, int]] = set()
    for src, sym, dst in source.transitions:
        src_name, dst_name = names[src], names[dst]
        if sym is not EPSILON:
            if _BASE_STATE.match(src_name) and src_name.startswith("0_"):
                # Lowest-bit flip gains a three-state delay chain.
                dst_name = "0'''_" + dst_name.split("_")[1]
            moves.add((sm[src_name], "a", sm[dst_name]))
            continue
        match = _BASE_STATE.match(dst_name)
        if match:
            i, x = match.groups()
            if src_name.endswith(",allone") or src_name.endswith(",exzero"):
                dst_name = f"{i}''_{x}"  # path so far has 1 edge, pad to 3
            else:
                dst_name = f"{i}'_{x}"  # via i_exzero: 2 edges, pad to 3
        moves.add((sm[src_name], "a", sm[dst_name]))
    for i in range(k - 1):
        for x in (0, 1):
            moves.add((sm[f"{i}''_{x}"], "a", sm[f"{i}'_{x}"]))
            moves.add((sm[f"{i}'_{x}"], "a", sm[f"{i}_{x}"]))
    for x in (0, 1):
        moves.add((sm[f"0'''_{x}"], "a", sm[f"0''_{x}"]))

    delay_states = frozenset(range(source.state_count, len(sm)))
    return OneWayAfa(
        state_count=len(sm),
        alphabet=("a",),
        initial=source.initial,
        transitions=frozenset(moves),
        accepting=source.accepting,
        existential=source.existential | delay_states,
        max_eps_chain=0,
        labels=sm.labels(),
    )


# ---------------------------------------------------------------------------
# TRIOS(n, r): r segments #b1 b2 b3 of n-bit blocks; yes when b2 = b1 with a
# strictly dominated bit against b3, no when b3 = b1 with a strictly
# dominating bit against b2.


def _trios_pairs(n: int, cls: str) -> list[tuple[str, str]]:
    pairs = []
    for x_bits in product("01", repeat=n):
        for y_bits in product("01", repeat=n):
            x, y = "".join(x_bits), "".join(y_bits)
            if cls == "yes" and any(a == "0" and b == "1" for a, b in zip(x, y)):
                pairs.append((x, y))
            if cls == "no" and any(a == "1" and b == "0" for a, b in zip(x, y)):
                pairs.append((x, y))
    return pairs


def trios_problem(n: int, r: int) -> PromiseProblem:
    """Promise problem over {0,1,#} with r segments of three n-bit blocks."""
    if n < 1 or r < 1:
        raise ValueError("n and r must be at least 1")
    seg_len = 3 * n + 1
    total = r * seg_len

    def segments(word: str) -> list[tuple[str, str, str]] | None:
        if len(word) != total:
            return None
        parts = []
        for i in range(r):
            seg = word[i * seg_len : (i + 1) * seg_len]
            if seg[0] != "#" or any(c not in "01" for c in seg[1:]):
                return None
            parts.append((seg[1 : n + 1], seg[n + 1 : 2 * n + 1], seg[2 * n + 1 :]))
        return parts

    def yes_member(word: str) -> bool:
        parts = segments(word)
        return parts is not None and all(
            b2 == b1 and any(p == "0" and q == "1" for p, q in zip(b1, b3))
            for b1, b2, b3 in parts
        )

    def no_member(word: str) -> bool:
        parts = segments(word)
        return parts is not None and all(
            b3 == b1 and any(p == "1" and q == "0" for p, q in zip(b1, b2))
            for b1, b2, b3 in parts
        )

    def enumerator(max_length: int):
        if total > max_length:
            return
        for cls in ("yes", "no"):
            pairs = _trios_pairs(n, cls)
            for combo in product(pairs, repeat=r):
                if cls == "yes":
                    word = "".join(f"#{x}{x}{y}" for x, y in combo)
                else:
                    word = "".join(f"#{x}{y}{x}" for x, y in combo)
                yield word, cls

    return PromiseProblem(
        alphabet=("0", "1", "#"),
        yes_member=yes_member,
        no_member=no_member,
        enumerator=enumerator,
        name=f"trios({n},{r})",
    )


def trios_ladder(n: int) -> tuple[Fraction, ...]:
    """Branch probabilities making each bit position equally likely.

    p_j is chosen as 1/n divided by the probability of still being in the
    ladder at step j, so p_n always ends at exactly 1.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    probs = []
    still_here = Fraction(1)
    for _ in range(n):
        p = Fraction(1, n) / still_here
        probs.append(p)
        still_here *= 1 - p
    assert probs[-1] == 1
    return tuple(probs)


def trios_lasvegas_pfa(n: int, r: int) -> LasVegasPfa:
    """Zero-error probabilistic acceptor for TRIOS(n, r); exactly 4n+3 states.

    Per segment it picks a uniformly random bit position j via the ladder
    states "s_j", then rides a counting chain to compare that bit against the
    block 2n symbols later (third block, hunting for evidence of a yes) or n
    symbols later (second block, hunting for evidence of a no). Inconclusive
    probes return to "q_ini" to try the next segment. The machine does not
    depend on r; r segments simply pass through it.
    """
    if n < 1 or r < 1:
        raise ValueError("n and r must be at least 1")
    ladder = trios_ladder(n)
    sm = _StateMap()
    sm.add("q_ini")
    sm.add("q_acc")
    sm.add("q_rej")
    for j in range(1, n + 1):
        sm.add(f"s_{j}")
    for j in range(1, 2 * n + 1):
        sm.add(f"t_{j},0")
    for j in range(1, n + 1):
        sm.add(f"t_{j},1")
    assert len(sm) == 4 * n + 3

    one = Fraction(1)
    transitions: dict[tuple[int, str], tuple[tuple[int, Fraction], ...]] = {}
    transitions[(sm["q_ini"], "0")] = ((sm["q_ini"], one),)
    transitions[(sm["q_ini"], "1")] = ((sm["q_ini"], one),)
    transitions[(sm["q_ini"], "#")] = ((sm["s_1"], one),)
    for j in range(1, n + 1):
        p = ladder[j - 1]
        for bit in "01":
            row: list[tuple[int, Fraction]] = [(sm[f"t_1,{bit}"], p)]
            if p != 1:
                row.append((sm[f"s_{j + 1}"], 1 - p))
            transitions[(sm[f"s_{j}"], bit)] = tuple(row)
    for j in range(1, 2 * n):
        for bit in "01":
            transitions[(sm[f"t_{j},0"], bit)] = ((sm[f"t_{j + 1},0"], one),)
    transitions[(sm[f"t_{2 * n},0"], "1")] = ((sm["q_acc"], one),)
    transitions[(sm[f"t_{2 * n},0"], "0")] = ((sm["q_ini"], one),)
    for j in range(1, n):
        for bit in "01":
            transitions[(sm[f"t_{j},1"], bit)] = ((sm[f"t_{j + 1},1"], one),)
    transitions[(sm[f"t_{n},1"], "0")] = ((sm["q_rej"], one),)
    transitions[(sm[f"t_{n},1"], "1")] = ((sm["q_ini"], one),)
    for sym in "01#":
        transitions[(sm["q_acc"], sym)] = ((sm["q_acc"], one),)
        transitions[(sm["q_rej"], sym)] = ((sm["q_rej"], one),)

    roles = {idx: ROLE_NEUTRAL for idx in range(len(sm))}
    roles[sm["q_acc"]] = ROLE_ACCEPTING
    roles[sm["q_rej"]] = ROLE_REJECTING
    return LasVegasPfa(
        state_count=len(sm),
        alphabet=("0", "1", "#"),
        initial=sm["q_ini"],
        transitions=transitions,
        roles=roles,
        labels=sm.labels(),
    )


def trios_dfa(n: int, r: int, state_cap: int = DEFAULT_STATE_CAP) -> OneWayDfa:
    """Deterministic acceptor for TRIOS(n, r) with 3 * 2^n + n - 2 states.

    It memorizes the first block of each segment and compares the second
    block against it: on the promise, a matching second block can only occur
    in a yes instance, so the third block is skipped, and the first mismatch
    halts the run (rejecting). The state count is independent of r and below
    4 * 2^n for every n.
    """
    if n < 1 or r < 1:
        raise ValueError("n and r must be at least 1")
    count = 3 * (1 << n) + n - 2
    _check_cap(count, state_cap, "trios_dfa")
    sm = _StateMap()
    sm.add("seg")
    prefixes = [""]
    for length in range(1, n):
        prefixes += ["".join(bits) for bits in product("01", repeat=length)]
    for prefix in prefixes:
        sm.add(f"x:{prefix}")
    for length in range(n, 0, -1):
        for bits in product("01", repeat=length):
            sm.add("u:" + "".join(bits))
    for i in range(n, 0, -1):
        sm.add(f"v:{i}")
    assert len(sm) == count

    transitions: dict[tuple[int, str], int] = {}
    transitions[(sm["seg"], "#")] = sm["x:"]
    for prefix in prefixes:
        for bit in "01":
            word = prefix + bit
            target = f"x:{word}" if len(word) < n else f"u:{word}"
            transitions[(sm[f"x:{prefix}"], bit)] = sm[target]
    for length in range(n, 0, -1):
        for bits in product("01", repeat=length):
            suffix = "".join(bits)
            target = f"u:{suffix[1:]}" if length > 1 else f"v:{n}"
            transitions[(sm[f"u:{suffix}"], suffix[0])] = sm[target]
    for i in range(n, 1, -1):
        for bit in "01":
            transitions[(sm[f"v:{i}"], bit)] = sm[f"v:{i - 1}"]
    for bit in "01":
        transitions[(sm["v:1"], bit)] = sm["seg"]

    return OneWayDfa(
        state_count=len(sm),
        alphabet=("0", "1", "#"),
        initial=sm["seg"],
        transitions=transitions,
        accepting=frozenset({sm["seg"]}),
        labels=sm.labels(),
    )


def trios_twoway_dfa(n: int, r: int) -> TwoWayMachine:
    """Two-way deterministic acceptor for TRIOS(n, r) with at most 12n+8 states.

    Instead of memorizing blocks it shuttles: each bit of the second block is
    compared with the bit n positions to its left (first block), walking the
    positions from last to first; landing on '#' after the n-step left walk
    signals that all bits matched. A second ascending sweep then compares
    each third-block bit with the bit n positions to its left (second block)
    until it finds the strict increase a yes segment promises, after which it
    scans right to the next segment, accepting if the scan meets the right
    endmarker. Any comparison failure halts in a non-accepting state.
    """
    if n < 1 or r < 1:
        raise ValueError("n and r must be at least 1")
    sm = _StateMap()
    sm.add("seek#")
    for d in range(2 * n - 1, 0, -1):
        sm.add(f"goU:{d}")
    sm.add("readU")
    for d in range(n - 1, 0, -1):
        for b in "01":
            sm.add(f"cmpL:{d}:{b}")
    for b in "01":
        sm.add(f"atX:{b}")
    for d in range(n - 2, 0, -1):
        sm.add(f"goU2:{d}")
    sm.add("phase2")
    for d in range(2 * n, 0, -1):
        sm.add(f"goV:{d}")
    sm.add("readV")
    for d in range(n - 1, 0, -1):
        for c in "01":
            sm.add(f"vL:{d}:{c}")
    for c in "01":
        sm.add(f"atU:{c}")
    assert len(sm) <= 12 * n + 8

    moves: set[tuple[int, str, int, int]] = set()
    moves.add((sm["seek#"], LEFT_MARKER, sm["seek#"], RIGHT))
    for bit in "01":
        moves.add((sm["seek#"], bit, sm["seek#"], RIGHT))
    first_goal = f"goU:{2 * n - 1}" if 2 * n - 1 >= 1 else "readU"
    moves.add((sm["seek#"], "#", sm[first_goal], RIGHT))
    for d in range(2 * n - 1, 0, -1):
        target = f"goU:{d - 1}" if d > 1 else "readU"
        for bit in "01":
            moves.add((sm[f"goU:{d}"], bit, sm[target], RIGHT))
    for b in "01":
        target = f"cmpL:{n - 1}:{b}" if n > 1 else f"atX:{b}"
        moves.add((sm["readU"], b, sm[target], LEFT))
    for d in range(n - 1, 0, -1):
        for b in "01":
            target = f"cmpL:{d - 1}:{b}" if d > 1 else f"atX:{b}"
            for bit in "01":
                moves.add((sm[f"cmpL:{d}:{b}"], bit, sm[target], LEFT))
    for b in "01":
        # Match: step over to the previous second-block bit; the head travel
        # is n-1 cells, folded into the reading move.
        if n == 1:
            moves.add((sm[f"atX:{b}"], b, sm["readU"], STAY))
        elif n == 2:
            moves.add((sm[f"atX:{b}"], b, sm["readU"], RIGHT))
        else:
            moves.add((sm[f"atX:{b}"], b, sm[f"goU2:{n - 2}"], RIGHT))
        moves.add((sm[f"atX:{b}"], "#", sm["phase2"], STAY))
    for d in range(n - 2, 0, -1):
        target = f"goU2:{d - 1}" if d > 1 else "readU"
        for bit in "01":
            moves.add((sm[f"goU2:{d}"], bit, sm[target], RIGHT))
    moves.add((sm["phase2"], "#", sm[f"goV:{2 * n}"], RIGHT))
    for d in range(2 * n, 0, -1):
        target = f"goV:{d - 1}" if d > 1 else "readV"
        for bit in "01":
            moves.add((sm[f"goV:{d}"], bit, sm[target], RIGHT))
    for c in "01":
        target = f"vL:{n - 1}:{c}" if n > 1 else f"atU:{c}"
        moves.add((sm["readV"], c, sm[target], LEFT))
    for d in range(n - 1, 0, -1):
        for c in "01":
            target = f"vL:{d - 1}:{c}" if d > 1 else f"atU:{c}"
            for bit in "01":
                moves.add((sm[f"vL:{d}:{c}"], bit, sm[target], LEFT))
    moves.add((sm["atU:1"], "0", sm["seek#"], RIGHT))
    moves.add((sm["atU:1"], "1", sm[f"goV:{n}"], RIGHT))
    for bit in "01":
        moves.add((sm["atU:0"], bit, sm[f"goV:{n}"], RIGHT))

    return TwoWayMachine(
        state_count=len(sm),
        alphabet=("0", "1", "#"),
        initial=sm["seek#"],
        transitions=frozenset(moves),
        accepting=frozenset({sm["seek#"]}),
        deterministic=True,
        labels=sm.labels(),
    )


# ---------------------------------------------------------------------------
# UP(p): unary words a^j, yes when p^j >= 3/4, no when p^j <= 1/4.


def up_problem(p: Fraction) -> PromiseProblem:
    """Unary promise problem splitting lengths by the survival power p^j."""
    p = Fraction(p)
    if not 0 < p < 1:
        raise ValueError("p must be strictly between 0 and 1")
    return PromiseProblem(
        alphabet=("a",),
        yes_member=lambda w: p ** len(w) >= Fraction(3, 4),
        no_member=lambda w: p ** len(w) <= Fraction(1, 4),
        name=f"up({p})",
    )


def up_pfa(p: Fraction) -> OneWayPfa:
    """Two-state probabilistic acceptor whose acceptance weight is p^j."""
    p = Fraction(p)
    if not 0 < p < 1:
        raise ValueError("p must be strictly between 0 and 1")
    return OneWayPfa(
        state_count=2,
        alphabet=("a",),
        initial=0,
        transitions={
            (0, "a"): ((0, p), (1, 1 - p)),
            (1, "a"): ((1, Fraction(1)),),
        },
        roles={0: ROLE_ACCEPTING, 1: ROLE_REJECTING},
        labels={0: "s_ini", 1: "s_rej"},
    )


def critical_lengths(
    p: Fraction, iteration_cap: int = DEFAULT_ITERATION_CAP
) -> tuple[int, int]:
    """(A, R): the last length with p^j >= 3/4 and first with p^j <= 1/4.

    Computed by exact rational iteration of the powers, never by logarithms,
    so boundary cases land on the right side. Raises ResourceCapError when R
    would exceed the iteration cap.
    """
    p = Fraction(p)
    if not 0 < p < 1:
        raise ValueError("p must be strictly between 0 and 1")
    lo, hi = Fraction(1, 4), Fraction(3, 4)
    power = Fraction(1)
    last_high = 0
    for j in range(iteration_cap + 1):
        if power >= hi:
            last_high = j
        if power <= lo:
            return last_high, j
        power *= p
    raise ResourceCapError(f"critical lengths exceed the iteration cap {iteration_cap}")


def up_dfa(
    p: Fraction, iteration_cap: int = DEFAULT_ITERATION_CAP
) -> OneWayDfa:
    """Chain acceptor for UP(p) with exactly A+1 states, all accepting.

    The last chain state has no outgoing transition, so every longer word
    gets stuck, which rejects all no instances for free.
    """
    accept_until, _ = critical_lengths(p, iteration_cap)
    count = accept_until + 1
    return OneWayDfa(
        state_count=count,
        alphabet=("a",),
        initial=0,
        transitions={(i, "a"): i + 1 for i in range(count - 1)},
        accepting=frozenset(range(count)),
    )


# ---------------------------------------------------------------------------
# Parity-framed problems: a^(2m) yes versus a^(2m+1) no, m drawn from a set.


def parity_problem(member: Callable[[int], bool]) -> PromiseProblem:
    """Unary promise problem: even lengths 2m are yes, odd 2m+1 no, m in L."""

    def enumerator(max_length: int):
        for length in range(max_length + 1):
            if member(length // 2):
                yield "a" * length, ("yes" if length % 2 == 0 else "no")

    return PromiseProblem(
        alphabet=("a",),
        yes_member=lambda w: len(w) % 2 == 0 and member(len(w) // 2),
        no_member=lambda w: len(w) % 2 == 1 and member(len(w) // 2),
        enumerator=enumerator,
        name="parity",
    )


def parity_dfa() -> OneWayDfa:
    """Two-state parity counter; solves parity_problem for every member set."""
    return OneWayDfa(
        state_count=2,
        alphabet=("a",),
        initial=0,
        transitions={(0, "a"): 1, (1, "a"): 0},
        accepting=frozenset({0}),
    )
