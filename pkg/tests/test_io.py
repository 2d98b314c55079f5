import json

import pytest

from magmakit import io
from magmakit.actions import semidirect
from magmakit.core import ZeroMap, identity
from magmakit.errors import EquationViolation, UnitLawViolation
from magmakit.morphisms import identity_morphism


def test_kind_detection():
    assert io.detect_kind({"order": 1, "table": [[0]]}) == "magma"
    assert io.detect_kind({"name": "m", "order": 1, "table": [[0]]}) == "magma"
    assert io.detect_kind({"dom": "Z2", "cod": "Z2", "values": [0, 1]}) == "map"
    assert io.detect_kind({"B": "Z2", "X": "Z2", "table": []}) == "action"
    assert io.detect_kind({"outer": {}, "inner": {}}) == "pair"
    assert io.detect_kind({"A": 1, "B": 1, "alpha": 1}) == "split_epi"
    with pytest.raises(io.MalformedInput):
        io.detect_kind({"order": 1, "table": [[0]], "extra": 1})
    with pytest.raises(io.MalformedInput):
        io.detect_kind([1, 2])


def test_magma_round_trip(m3):
    doc = io.magma_to_json(m3)
    text = io.dumps(doc)
    kind, back = io.load_any(io.loads(text))
    assert kind == "magma" and back == m3
    assert io.dumps(io.to_json(back)) == text


def test_canonical_text(z2):
    assert io.dumps(io.magma_to_json(z2)) == '{"name":"Z2","order":2,"table":[[0,1],[1,0]]}\n'


def test_name_references(twist):
    doc = {"B": "Z2", "X": {"name": "mine", "order": 2, "table": [[0, 1], [1, 0]]}, "table": [[0, 1], [0, 0]]}
    kind, h = io.load_any(doc)
    assert kind == "action" and h == twist
    doc = {"dom": "mine", "cod": {"name": "mine", "order": 2, "table": [[0, 1], [1, 1]]}, "values": [0, 1]}
    kind, m = io.load_any(doc)
    assert m.dom == m.cod
    with pytest.raises(io.MalformedInput):
        io.load_any({"dom": "nowhere", "cod": "Z2", "values": [0, 1]})


def test_extension_and_morphism_round_trip(twist):
    e = semidirect(twist).extension
    text = io.dumps(io.to_json(e))
    kind, back = io.load_any(io.loads(text))
    assert kind == "splitext" and back == e
    assert io.dumps(io.to_json(back)) == text
    m = identity_morphism(e)
    text = io.dumps(io.to_json(m))
    kind, back = io.load_any(io.loads(text))
    assert kind == "morphism" and back == m
    assert io.dumps(io.to_json(back)) == text


def test_map_round_trip(z2):
    m = ZeroMap(z2, z2, [0, 1])
    kind, back = io.load_any(io.to_json(m))
    assert kind == "map" and back == identity(z2)


def test_validation_errors_pass_through(twist):
    with pytest.raises(UnitLawViolation):
        io.load_any({"order": 2, "table": [[0, 1], [0, 0]]})
    doc = io.to_json(semidirect(twist).extension)
    doc["lambda"] = [0, 0, 0, 0]
    with pytest.raises(EquationViolation):
        io.load_any(doc)


@pytest.mark.parametrize(
    "doc",
    [
        {"order": 2, "table": [[0, 1], [1, 0.5]]},
        {"order": 2, "table": [[0, 1], [1, True]]},
        {"order": "2", "table": [[0, 1], [1, 0]]},
        {"order": 2, "table": "Z2"},
        {"dom": "Z2", "cod": "Z2", "values": [0, "1"]},
    ],
)
def test_non_integer_payloads_are_malformed(doc):
    with pytest.raises(io.MalformedInput):
        io.load_any(doc)


def test_loads_rejects_bad_json():
    with pytest.raises(io.MalformedInput):
        io.loads("{")


def test_subcommand_inputs_are_not_standalone():
    with pytest.raises(io.MalformedInput):
        io.load_any({"outer": {}, "inner": {}})
    assert json.loads(io.dumps({"b": 1, "a": 2})) == {"a": 2, "b": 1}
