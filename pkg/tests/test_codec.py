import json
from fractions import Fraction

import pytest

from uniserial_tools import codec, constructions, exceptions
from uniserial_tools.constructions import AALabel, KXLabel, ParameterSlot
from uniserial_tools.lie import JordanSpec
from uniserial_tools.linalg import Matrix


def test_dumps_is_deterministic():
    rep = constructions.construct_R(KXLabel(Fraction(1, 2), 3, 4, 2, Matrix([[1, Fraction(-2, 3)]])))
    first = codec.dumps(rep)
    assert first == codec.dumps(rep.to_dict())
    assert first.endswith("\n")
    data = json.loads(first)
    assert list(data) == sorted(data)
    assert data["A"]["entries"][0][0] == "1/2"
    assert data["generators"][0]["entries"][0][4] == "-2/3"


def test_dumps_integral_rationals():
    assert codec.dumps({"value": Fraction(4, 2)}) == '{\n  "value": "2"\n}\n'


def test_dumps_rejects_unknown_objects():
    with pytest.raises(TypeError):
        codec.dumps({"value": object()})


def test_representation_survives_encoding():
    rep = constructions.construct_R(AALabel(1, 2, 3, (1, 0, Fraction(5, 7))))
    decoded = codec.decode_representation(codec.loads(codec.dumps(rep)))
    assert decoded == rep


def test_decode_spec_forms():
    expected = JordanSpec.from_pairs([(Fraction(1, 2), 3), (1, 1)])
    assert codec.decode_spec([["1/2", 3], [1, 1]]) == expected
    assert codec.decode_spec({"spec": [{"eigenvalue": "1/2", "size": 3}, {"eigenvalue": "1", "size": "1"}]}) == expected


def test_decode_label_wrapped():
    data = {"label": {"variant": "TOP", "alpha": "0", "lambda": "1", "n": 3}}
    assert codec.decode_label(data) == constructions.TopLabel(0, 1, 3)


def test_decode_parameters():
    data = {"params": [{"block": 1, "generator": 1, "power": 0, "value": "3/2"}]}
    assert codec.decode_parameters(data) == {ParameterSlot(1, 1, 0): Fraction(3, 2)}


def test_encode_parameters_drops_zeros():
    values = {ParameterSlot(2, 2, 0): Fraction(1), ParameterSlot(1, 0, 3): Fraction(0)}
    assert codec.encode_parameters(values) == {
        "params": [{"block": 2, "generator": 2, "power": 0, "value": Fraction(1)}]
    }


@pytest.mark.parametrize("decoder, data, where", [
    (codec.decode_rational, 0.5, "$"),
    (codec.decode_rational, "1/0", "$"),
    (codec.decode_matrix, {"rows": 1, "cols": 2, "entries": [["1"]]}, "$.entries[0]"),
    (codec.decode_matrix, {"rows": 1, "entries": []}, "'cols'"),
    (codec.decode_spec, [["1", 2], ["1", 3]], "$"),
    (codec.decode_spec, [["1", True]], "$[0].size"),
    (codec.decode_spec, "J3", "$"),
    (codec.decode_label, {"variant": "XX", "alpha": "0", "lambda": "1"}, "$.variant"),
    (codec.decode_label, {"variant": "AA", "alpha": "0", "lambda": "1", "n": 3, "a": ["1", "1", "0"]}, "$"),
    (codec.decode_label, {"variant": "KX", "alpha": "0", "lambda": "1", "n": 3, "k": 2}, "'X'"),
    (codec.decode_parameters, {"params": [{"block": 1}]}, "$.params[0]"),
])
def test_decode_errors_are_parse_errors(decoder, data, where):
    with pytest.raises(exceptions.ParseException) as info:
        decoder(data)
    assert where in str(info.value)


def test_decode_representation_wrong_shape():
    data = codec.loads(codec.dumps(constructions.construct_R(constructions.TopLabel(0, 1, 2))))
    data["d"] = 4
    with pytest.raises(exceptions.ParseException):
        codec.decode_representation(data)


def test_read_json_errors(tmp_path):
    with pytest.raises(exceptions.ParseException):
        codec.read_json(tmp_path / "missing.json")
    broken = tmp_path / "broken.json"
    broken.write_text("{", encoding="utf-8")
    with pytest.raises(exceptions.ParseException) as info:
        codec.read_json(broken)
    assert "broken.json" in str(info.value)


def test_parse_errors_are_input_errors():
    assert issubclass(exceptions.ParseException, exceptions.InputException)
