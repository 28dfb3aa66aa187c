"""Exact probabilistic semantics, sampling cross-checks, and round models."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import ResourceCapError
from .exactmath import ceil_ln, pow_less_than
from .machines import (
    FAILS,
    ROLE_ACCEPTING,
    ROLE_REJECTING,
    SOLVES,
    OneWayPfa,
    PromiseProblem,
    VerificationReport,
)


@dataclass(frozen=True)
class OutcomeDistribution:
    """Exact probability split of one run: accept, reject, and neither."""

    accept: Fraction
    reject: Fraction
    neutral: Fraction

    def __post_init__(self) -> None:
        for name in ("accept", "reject", "neutral"):
            value = getattr(self, name)
            if not isinstance(value, Fraction):
                object.__setattr__(self, name, Fraction(value))
            value = getattr(self, name)
            if value < 0 or value > 1:
                raise ValueError(f"{name} probability {value} outside [0, 1]")
        if self.accept + self.reject + self.neutral != 1:
            raise ValueError("outcome probabilities must sum to exactly 1")


def _final_distribution(
    pfa: OneWayPfa, word: str
) -> tuple[dict[int, Fraction], Fraction]:
    """Mass per state after reading the whole word, plus prematurely
    halted mass (rows missing for a reached (state, symbol))."""
    for sym in word:
        if sym not in pfa.symbols:
            raise ValueError(f"symbol {sym!r} not in alphabet")
    dist: dict[int, Fraction] = {pfa.initial: Fraction(1)}
    halted = Fraction(0)
    for sym in word:
        nxt: dict[int, Fraction] = {}
        for state, mass in dist.items():
            row = pfa.transitions.get((state, sym))
            if row is None:
                halted += mass
                continue
            for target, prob in row:
                if prob:
                    nxt[target] = nxt.get(target, Fraction(0)) + mass * prob
        dist = nxt
    return dist, halted


def outcome_dist(pfa: OneWayPfa, word: str) -> OutcomeDistribution:
    """Exact forward propagation of the state distribution.

    A decision requires reading the entire input: mass that halts early, for
    lack of a transition row, counts as neutral no matter which state it
    stopped in, alongside mass ending in neutral-role states.
    """
    dist, _halted = _final_distribution(pfa, word)
    accept = Fraction(0)
    reject = Fraction(0)
    for state, mass in dist.items():
        role = pfa.roles[state]
        if role == ROLE_ACCEPTING:
            accept += mass
        elif role == ROLE_REJECTING:
            reject += mass
    return OutcomeDistribution(accept, reject, 1 - accept - reject)


def accept_prob(pfa: OneWayPfa, word: str) -> Fraction:
    """Probability that a run reads the whole word into an accepting state."""
    return outcome_dist(pfa, word).accept


def monte_carlo(
    pfa: OneWayPfa, word: str, trials: int, seed: int
) -> OutcomeDistribution:
    """Sampled outcome frequencies over independent trials.

    Each trial draws from its own sub-seeded generator, so the result is a
    pure function of (word, trials, seed) and does not depend on how trials
    would be sheared across workers. Frequencies come back as exact counts
    over trials.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    for sym in word:
        if sym not in pfa.symbols:
            raise ValueError(f"symbol {sym!r} not in alphabet")
    rows: dict[tuple[int, str], tuple[list[float], list[int]]] = {}
    for key, row in pfa.transitions.items():
        cumulative: list[float] = []
        targets: list[int] = []
        running = 0.0
        for target, prob in row:
            if prob == 0:
                continue  # keep the float fallback bucket off impossible targets
            running += float(prob)
            cumulative.append(running)
            targets.append(target)
        rows[key] = (cumulative, targets)
    accept = reject = neutral = 0
    accepting = pfa.states_with_role(ROLE_ACCEPTING)
    rejecting = pfa.states_with_role(ROLE_REJECTING)
    for trial in range(trials):
        rng = random.Random((seed << 32) + trial)
        state = pfa.initial
        completed = True
        for sym in word:
            entry = rows.get((state, sym))
            if entry is None:
                completed = False
                break
            cumulative, targets = entry
            draw = rng.random()
            state = targets[-1]  # fallback absorbs float rounding in the last bucket
            for idx, threshold in enumerate(cumulative):
                if draw < threshold:
                    state = targets[idx]
                    break
        if not completed:
            neutral += 1
        elif state in accepting:
            accept += 1
        elif state in rejecting:
            reject += 1
        else:
            neutral += 1
    return OutcomeDistribution(
        Fraction(accept, trials), Fraction(reject, trials), Fraction(neutral, trials)
    )


def trios_success_bound(n: int, r: int) -> Fraction:
    """Guaranteed per-word decision probability 1 - ((n-1)/n)^r."""
    if n < 1 or r < 1:
        raise ValueError("n and r must be at least 1")
    return 1 - Fraction(n - 1, n) ** r


def lasvegas_success(
    pfa: OneWayPfa,
    problem: PromiseProblem,
    max_length: int,
    threshold: Fraction = Fraction(0),
) -> VerificationReport:
    """Check zero-error behavior with decision probability >= threshold.

    On every yes instance the machine must have reject probability exactly 0
    and accept probability at least the threshold (and above zero even when
    the threshold is 0, so a machine that never answers does not pass);
    symmetrically for no instances. measured carries the smallest decisive
    probability seen.
    """
    threshold = Fraction(threshold)
    if frozenset(problem.alphabet) != pfa.symbols:
        raise ValueError("machine and problem alphabets differ")
    instances = problem.enumerate_instances(max_length)
    min_success: Fraction | None = None
    for word, cls in instances:
        dist = outcome_dist(pfa, word)
        good, bad = (
            (dist.accept, dist.reject) if cls == "yes" else (dist.reject, dist.accept)
        )
        if bad != 0 or good < threshold or good == 0:
            return VerificationReport(
                FAILS,
                counterexample=(
                    word,
                    cls,
                    f"accept={dist.accept} reject={dist.reject}",
                ),
                measured={"instances": len(instances), "threshold": threshold},
            )
        min_success = good if min_success is None else min(min_success, good)
    measured: dict[str, object] = {
        "instances": len(instances),
        "threshold": threshold,
    }
    if min_success is not None:
        measured["min_success"] = min_success
    return VerificationReport(SOLVES, measured=measured)


def expected_rounds(success: Fraction) -> Fraction:
    """Mean number of reruns until a zero-error machine answers: 1/success."""
    success = Fraction(success)
    if not 0 < success <= 1:
        raise ValueError("success probability must be in (0, 1]")
    return 1 / success


def restart_bound(n: int) -> float:
    """Closed-form ceiling (1 + 1/(e^n - 1))^2 on expected restart rounds."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return (1 + 1 / (math.exp(n) - 1)) ** 2


@dataclass(frozen=True)
class RoundModel:
    """One round of a repeated three-way experiment.

    A single round accepts with probability a, rejects with probability r,
    and stays undecided otherwise; t rounds run back to back. r is left
    free until instantiated, since the analysis constrains it relative to a
    rather than fixing it.
    """

    c: int
    m: int
    n: int
    a: Fraction
    t: int
    r: Fraction | None = None

    def __post_init__(self) -> None:
        if self.c < 3:
            raise ValueError("c must be at least 3")
        if self.m < 1 or self.n < 1:
            raise ValueError("m and n must be at least 1")
        if self.t < 1:
            raise ValueError("t must be at least 1")
        if not 0 <= self.a <= 1:
            raise ValueError("a must lie in [0, 1]")
        if self.r is not None:
            object.__setattr__(self, "r", Fraction(self.r))
            if self.r < 0 or self.a + self.r > 1:
                raise ValueError("need r >= 0 and a + r <= 1")

    def with_reject(self, r: Fraction) -> "RoundModel":
        return RoundModel(self.c, self.m, self.n, self.a, self.t, Fraction(r))


def expeq_params(
    c: int, m: int, n: int, r: Fraction | None = None, max_bits: int = 10**6
) -> RoundModel:
    """Round acceptance weight and round count for block exponents m, n.

    a = 1/(3 * (2c^2)^(m+n)) and t = 3 * (2c^2)^(m+n) * ceil(ln c), with the
    log ceiling decided exactly. The power's size is capped by max_bits.
    """
    if c < 3:
        raise ValueError("c must be at least 3")
    if m < 1 or n < 1:
        raise ValueError("m and n must be at least 1")
    base = 2 * c * c
    if (m + n) * base.bit_length() > max_bits:
        raise ResourceCapError(f"(2c^2)^(m+n) exceeds the {max_bits}-bit cap")
    scale = 3 * base ** (m + n)
    return RoundModel(c=c, m=m, n=n, a=Fraction(1, scale), t=scale * ceil_ln(c), r=r)


def _tail_probability_digits(model: RoundModel) -> int:
    q = 1 - model.a - (model.r or 0)
    return model.t * len(str(q.denominator))


def expeq_compose(model: RoundModel, digit_cap: int = 500_000) -> OutcomeDistribution:
    """Exact outcome split of t composed rounds.

    Undecided mass is (1 - a - r)^t; the decided mass splits between accept
    and reject in the ratio a : r. Rational arithmetic throughout; models
    whose tail power would exceed digit_cap digits raise ResourceCapError
    (the certified comparators remain usable at any size).
    """
    if model.r is None:
        raise ValueError("instantiate r before composing rounds")
    a, r, t = model.a, model.r, model.t
    if a + r == 0:
        return OutcomeDistribution(Fraction(0), Fraction(0), Fraction(1))
    if _tail_probability_digits(model) > digit_cap:
        raise ResourceCapError(
            f"composition needs about {_tail_probability_digits(model)} digits, "
            f"above the {digit_cap}-digit cap"
        )
    undecided = (1 - a - r) ** t
    decided = 1 - undecided
    accept = a * decided / (a + r)
    reject = r * decided / (a + r)
    return OutcomeDistribution(accept, reject, undecided)


def expeq_tail_below(model: RoundModel, bound: Fraction) -> bool:
    """Certified check that the undecided mass (1 - a - r)^t < bound."""
    if model.r is None:
        raise ValueError("instantiate r before checking the tail")
    q = 1 - model.a - model.r
    if q == 0:
        return 0 < bound
    return pow_less_than(q, model.t, Fraction(bound))


def expeq_decisive_above(model: RoundModel, which: str, bound: Fraction) -> bool:
    """Certified check that the composed accept (or reject) mass exceeds bound.

    With side weight w (a for accept, r for reject), the composed mass is
    w * (1 - tail) / (a + r), so the comparison reduces to a certified tail
    bound.
    """
    if model.r is None:
        raise ValueError("instantiate r before checking decisive mass")
    if which not in ("accept", "reject"):
        raise ValueError("which must be 'accept' or 'reject'")
    bound = Fraction(bound)
    weight = model.a if which == "accept" else model.r
    total = model.a + model.r
    if weight == 0:
        return 0 > bound
    # w (1 - tail) / total > bound  <=>  tail < 1 - bound * total / w
    return expeq_tail_below(model, 1 - bound * total / weight)


def expeq_problem(c: int) -> PromiseProblem:
    """Promise problem over {a, b}: t(m, n) repetitions of the block a^m b^n,
    yes when m = n and no otherwise, with t tied to m + n as in expeq_params.
    """
    if c < 3:
        raise ValueError("c must be at least 3")
    log_ceiling = ceil_ln(c)
    base = 2 * c * c

    def round_count(total: int) -> int:
        return 3 * base**total * log_ceiling

    def parse(word: str) -> tuple[int, int] | None:
        """(m, n) when the word is exactly (a^m b^n)^t(m, n), else None."""
        if not word or word[0] != "a":
            return None
        m = len(word) - len(word.lstrip("a"))
        rest = word[m:]
        n = len(rest) - len(rest.lstrip("b"))
        if n == 0:
            return None
        period = m + n
        count, remainder = divmod(len(word), period)
        if remainder or word != word[:period] * count:
            return None
        if count != round_count(period):
            return None
        return m, n

    def yes_member(word: str) -> bool:
        parsed = parse(word)
        return parsed is not None and parsed[0] == parsed[1]

    def no_member(word: str) -> bool:
        parsed = parse(word)
        return parsed is not None and parsed[0] != parsed[1]

    def enumerator(max_length: int):
        total = 2
        while True:
            length = total * round_count(total)
            if length > max_length:
                return
            for m in range(1, total):
                n = total - m
                word = ("a" * m + "b" * n) * round_count(total)
                yield word, ("yes" if m == n else "no")
            total += 1

    return PromiseProblem(
        alphabet=("a", "b"),
        yes_member=yes_member,
        no_member=no_member,
        enumerator=enumerator,
        name=f"expeq({c})",
    )
