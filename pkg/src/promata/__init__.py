"""Finite-automata workbench for promise problems.

The package builds deterministic, nondeterministic, alternating, two-way, and
probabilistic finite-state machines, simulates them exactly, converts between
the models, and verifies size and success-probability trade-offs by
exhaustive or certified computation.
"""

from .boundslab import (
    SearchResult,
    SearchSpec,
    disjointness_check,
    min_dfa_size,
    min_unary_dfa_size,
    min_unary_nfa_size,
    pumping_check,
)
from .constructions import (
    critical_lengths,
    evenodd_afa_epsfree,
    evenodd_afa_rt,
    evenodd_dfa,
    evenodd_problem,
    parity_dfa,
    parity_problem,
    trios_dfa,
    trios_ladder,
    trios_lasvegas_pfa,
    trios_problem,
    trios_twoway_dfa,
    up_dfa,
    up_pfa,
    up_problem,
)
from .conversions import (
    BoundValue,
    bound_2nfa_to_dfa,
    bound_afa_to_dfa,
    bound_svfa_to_dfa,
    dfa_complete,
    dfa_equivalent,
    dfa_minimize,
    dfa_to_nfa,
    nfa_to_dfa,
    remove_epsilon,
    unary_afa_to_dfa,
)
from .errors import (
    AlphabetMismatchError,
    InputDomainError,
    MachineFormatError,
    PromataError,
    ResourceCapError,
)
from .machines import (
    EPSILON,
    FAILS,
    INCONCLUSIVE,
    ROLE_ACCEPTING,
    ROLE_NEUTRAL,
    ROLE_REJECTING,
    SOLVES,
    LasVegasPfa,
    OneWayAfa,
    OneWayDfa,
    OneWayNfa,
    OneWayPfa,
    PromiseProblem,
    TwoWayMachine,
    VerificationReport,
    afa_accepts,
    dfa_run,
    machine_accepts,
    nfa_accepts,
    promise_check,
    twoway_accepts,
)
from .probabilistic import (
    OutcomeDistribution,
    RoundModel,
    accept_prob,
    expected_rounds,
    expeq_compose,
    expeq_decisive_above,
    expeq_params,
    expeq_problem,
    expeq_tail_below,
    lasvegas_success,
    monte_carlo,
    outcome_dist,
    restart_bound,
    trios_success_bound,
)
from .serialize import dumps, load, loads, machine_from_dict, machine_to_dict, save

__version__ = "0.1.0"

__all__ = [
    "AlphabetMismatchError",
    "BoundValue",
    "EPSILON",
    "FAILS",
    "INCONCLUSIVE",
    "InputDomainError",
    "LasVegasPfa",
    "MachineFormatError",
    "OneWayAfa",
    "OneWayDfa",
    "OneWayNfa",
    "OneWayPfa",
    "OutcomeDistribution",
    "PromataError",
    "PromiseProblem",
    "ROLE_ACCEPTING",
    "ROLE_NEUTRAL",
    "ROLE_REJECTING",
    "ResourceCapError",
    "RoundModel",
    "SOLVES",
    "SearchResult",
    "SearchSpec",
    "TwoWayMachine",
    "VerificationReport",
    "accept_prob",
    "afa_accepts",
    "bound_2nfa_to_dfa",
    "bound_afa_to_dfa",
    "bound_svfa_to_dfa",
    "critical_lengths",
    "dfa_complete",
    "dfa_equivalent",
    "dfa_minimize",
    "dfa_run",
    "dfa_to_nfa",
    "disjointness_check",
    "dumps",
    "evenodd_afa_epsfree",
    "evenodd_afa_rt",
    "evenodd_dfa",
    "evenodd_problem",
    "expected_rounds",
    "expeq_compose",
    "expeq_decisive_above",
    "expeq_params",
    "expeq_problem",
    "expeq_tail_below",
    "lasvegas_success",
    "load",
    "loads",
    "machine_accepts",
    "machine_from_dict",
    "machine_to_dict",
    "min_dfa_size",
    "min_unary_dfa_size",
    "min_unary_nfa_size",
    "monte_carlo",
    "nfa_accepts",
    "nfa_to_dfa",
    "outcome_dist",
    "parity_dfa",
    "parity_problem",
    "promise_check",
    "pumping_check",
    "remove_epsilon",
    "restart_bound",
    "save",
    "trios_dfa",
    "trios_ladder",
    "trios_lasvegas_pfa",
    "trios_problem",
    "trios_success_bound",
    "trios_twoway_dfa",
    "up_dfa",
    "up_pfa",
    "up_problem",
]
