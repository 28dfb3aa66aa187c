"""JSON interchange format: round-trips, stability, and malformed input."""

import json
from fractions import Fraction

import pytest

from promata import (
    EPSILON,
    LasVegasPfa,
    afa_accepts,
    MachineFormatError,
    OneWayAfa,
    OneWayDfa,
    OneWayNfa,
    TwoWayMachine,
    dfa_to_nfa,
    dumps,
    evenodd_afa_epsfree,
    evenodd_afa_rt,
    evenodd_dfa,
    load,
    loads,
    machine_from_dict,
    machine_to_dict,
    save,
    trios_lasvegas_pfa,
    trios_twoway_dfa,
    up_pfa,
)


def _sample_machines():
    return [
        evenodd_dfa(1),
        evenodd_dfa(3),
        dfa_to_nfa(evenodd_dfa(2)),
        evenodd_afa_rt(1),
        evenodd_afa_rt(3),
        evenodd_afa_epsfree(4),
        trios_twoway_dfa(1, 2),
        trios_twoway_dfa(2, 1),
        trios_lasvegas_pfa(1, 1),
        trios_lasvegas_pfa(3, 2),
        up_pfa(Fraction(1, 2)),
        up_pfa(Fraction(9, 10)),
    ]


@pytest.mark.parametrize("machine", _sample_machines(), ids=lambda m: type(m).__name__)
def test_round_trip_identity(machine):
    text = dumps(machine)
    back = loads(text)
    assert back == machine
    assert type(back) is type(machine)
    assert dumps(back) == text


def test_dumps_is_deterministic():
    machine = trios_lasvegas_pfa(2, 2)
    assert dumps(machine) == dumps(machine)
    rebuilt = loads(dumps(machine))
    assert dumps(rebuilt) == dumps(machine)


def test_states_key_holds_the_count():
    data = json.loads(dumps(evenodd_dfa(2)))
    assert data["states"] == 8
    assert data["type"] == "dfa"
    assert data["initial"] == 0


def test_epsilon_serialized_as_empty_string():
    nfa = OneWayNfa(
        state_count=2,
        alphabet=("a",),
        initial=0,
        transitions=frozenset({(0, EPSILON, 1), (1, "a", 1)}),
        accepting=frozenset({1}),
    )
    data = json.loads(dumps(nfa))
    assert [0, "", 1] in data["transitions"]
    back = loads(dumps(nfa))
    assert (0, EPSILON, 1) in back.transitions


def test_twoway_moves_serialized_as_letters():
    data = json.loads(dumps(trios_twoway_dfa(1, 1)))
    moves = {row[3] for row in data["transitions"]}
    assert moves <= {"L", "S", "R"}


def test_pfa_probabilities_are_fraction_strings():
    data = json.loads(dumps(up_pfa(Fraction(9, 10))))
    probs = {row[3] for row in data["transitions"]}
    assert probs == {"9/10", "1/10", "1/1"}
    assert data["type"] == "pfa"


def test_lasvegas_flag_round_trips():
    machine = trios_lasvegas_pfa(2, 1)
    data = json.loads(dumps(machine))
    assert data["lasvegas"] is True
    assert isinstance(loads(dumps(machine)), LasVegasPfa)


def test_save_and_load_files(tmp_path):
    path = tmp_path / "machine.json"
    machine = evenodd_afa_rt(2)
    save(machine, str(path))
    assert load(str(path)) == machine


def test_labels_round_trip():
    dfa = OneWayDfa(
        state_count=2,
        alphabet=("a",),
        initial=0,
        transitions={(0, "a"): 1, (1, "a"): 0},
        accepting=frozenset({0}),
        labels={0: "even", 1: "odd"},
    )
    back = loads(dumps(dfa))
    assert back.labels == {0: "even", 1: "odd"}


def test_unknown_type_rejected():
    with pytest.raises(MachineFormatError):
        machine_from_dict({"type": "mealy", "states": 1, "alphabet": ["a"], "initial": 0})


def test_missing_fields_rejected():
    data = machine_to_dict(evenodd_dfa(1))
    del data["transitions"]
    with pytest.raises(MachineFormatError):
        machine_from_dict(data)


def test_malformed_numbers_rejected():
    data = machine_to_dict(evenodd_dfa(1))
    data["initial"] = "zero"
    with pytest.raises(MachineFormatError):
        machine_from_dict(data)


def test_bad_move_letter_rejected():
    data = machine_to_dict(trios_twoway_dfa(1, 1))
    data["transitions"][0][3] = "X"
    with pytest.raises(MachineFormatError):
        machine_from_dict(data)


def test_invalid_json_rejected():
    with pytest.raises(MachineFormatError):
        loads("this is not json")


def test_non_object_json_rejected():
    with pytest.raises(MachineFormatError):
        loads("[1, 2, 3]")


def test_semantics_preserved_through_round_trip():
    machine = evenodd_afa_rt(2)
    back = loads(dumps(machine))
    for n in range(0, 17, 4):
        assert afa_accepts(back, "a" * n) == afa_accepts(machine, "a" * n)
