import json
from fractions import Fraction

import pytest

from uniserial_tools import __version__, cli, codec, constructions, lie
from uniserial_tools.constructions import KXLabel, TopLabel
from uniserial_tools.linalg import Matrix


@pytest.fixture
def write(tmp_path):
    def _write(name, data):
        path = tmp_path / name
        path.write_text(codec.dumps(data), encoding="utf-8")
        return str(path)

    return _write


@pytest.fixture
def output(tmp_path):
    return tmp_path / "out" / "report.json"


def read(path):
    return json.loads(path.read_text(encoding="utf-8"))


def test_version(capsys):
    with pytest.raises(SystemExit) as info:
        cli.main(["--version"])
    assert info.value.code == 0
    assert __version__ in capsys.readouterr().out


def test_unknown_subcommand_is_usage_error():
    with pytest.raises(SystemExit) as info:
        cli.main(["frobnicate"])
    assert info.value.code == 2


def test_cg(output):
    assert cli.main(["cg", "-p", "3", "-q", "5", "-o", str(output)]) == 0
    report = read(output)
    assert report["exponents"] == [7, 5, 3]
    assert [g["order"] for g in report["generators"]] == [7, 5, 3]
    assert report["generators"][2]["coefficients"] == ["1", "3", "6"]


def test_cg_to_stdout(capsys):
    assert cli.main(["cg", "-p", "1", "-q", "1"]) == 0
    assert json.loads(capsys.readouterr().out)["exponents"] == [1]


def test_cg_rejects_empty_shape():
    assert cli.main(["cg", "-p", "0", "-q", "2"]) == 2


def test_exists_with_witness(write, output):
    spec = write("spec.json", [["1", 7], ["1", 5], ["1", 3]])
    assert cli.main(["exists", spec, "--witness", "--alpha", "1/2", "-o", str(output)]) == 0
    report = read(output)
    assert report["exists"] is True
    assert report["reason"]["case"] == "single-eigenvalue"
    witness = codec.decode_representation(report["witness"])
    assert witness.d == 8
    assert lie.is_uniserial(witness)


def test_exists_refusal_is_a_report(write, output):
    spec = write("spec.json", {"spec": [{"eigenvalue": "1", "size": 3}, {"eigenvalue": "1", "size": 3}]})
    assert cli.main(["exists", spec, "-o", str(output)]) == 0
    report = read(output)
    assert report["exists"] is False
    assert report["reason"]["condition"] == "spacing"


def test_exists_out_of_scope(write, output):
    spec = write("spec.json", [["1", 1], ["2", 1]])
    assert cli.main(["exists", spec, "-o", str(output)]) == 3
    assert not output.exists()


def test_construct_then_verify(write, tmp_path, output):
    label = write("label.json", {"label": KXLabel(0, 1, 5, 3, Matrix([[1, 2], [0, 3]])).to_dict()})
    rep_path = tmp_path / "rep.json"
    assert cli.main(["construct", "--label", label, "-o", str(rep_path)]) == 0
    assert read(rep_path)["d"] == 6

    assert cli.main(["verify", str(rep_path), "-o", str(output)]) == 0
    report = read(output)
    assert report["verdict"]["ok"] is True
    assert report["faithful"] is True
    assert report["uniserial"] is True
    assert report["socle_factor_dims"] == [1] * 6


def test_verify_failure_still_succeeds(write, output):
    N = Matrix([[0] * 5, [0] * 5, [1, 0, 0, 0, 0]])
    rep = constructions.construct_R_pqN(1, 1, 6, 3, 5, N)
    assert cli.main(["verify", write("rep.json", rep), "-o", str(output)]) == 0
    report = read(output)
    assert report["verdict"]["ok"] is False
    assert report["verdict"]["violations"][0]["relation"] == "nilpotent"
    assert report["faithful"] is None


def test_classify_after_base_change(write, output):
    label = KXLabel(Fraction(1, 3), 2, 4, 2, Matrix([[Fraction(1, 2), 0]]))
    T = Matrix([[1, 1, 0, 0, 0], [0, 1, 2, 0, 0], [0, 0, 1, 0, 0], [3, 0, 0, 1, 0], [0, 0, 0, 1, 1]])
    rep = lie.conjugate(constructions.construct_R(label), T)
    assert cli.main(["classify", write("rep.json", rep), "--seed", "5", "-o", str(output)]) == 0
    report = read(output)
    assert report["label"] == json.loads(codec.dumps(label))
    conjugator = codec.decode_matrix(report["conjugator"])
    assert lie.conjugate(rep, conjugator) == constructions.construct_R(label)


def test_classify_multi_block_reports_restriction(write, output):
    rep = constructions.build_extension_type3(0, 1, 3, (1, 0, 2), 5)
    assert cli.main(["classify", write("rep.json", rep), "-o", str(output)]) == 0
    restriction = read(output)["restriction"]
    assert restriction["case"] == "n+2"
    assert restriction["label"]["variant"] == "AA"
    assert restriction["label"]["a"] == ["1", "0", "2"]


def test_classify_non_uniserial_is_domain_error(write, output):
    top = constructions.construct_R(TopLabel(1, 1, 3))
    assert cli.main(["classify", write("rep.json", lie.direct_sum(top, top)), "-o", str(output)]) == 3


def test_extensions_witness(write, output):
    spec = write("spec.json", [["1", 7], ["1", 5], ["1", 3]])
    assert cli.main(["extensions", spec, "--k", "3", "--witness", "-o", str(output)]) == 0
    report = read(output)
    assert report["space"]["block_counts"] == {"1": 13, "2": 9}
    assert report["build"]["injective"] is True
    assert report["params"]["params"] == [
        {"block": 1, "generator": 1, "power": 0, "value": "1"},
        {"block": 2, "generator": 2, "power": 0, "value": "1"},
    ]


def test_extensions_with_parameter_file(write, output):
    spec = write("spec.json", [["1", 5], ["1", 3]])
    params = write("params.json", {"params": [{"block": 1, "generator": 0, "power": 4, "value": "2"}]})
    assert cli.main(["extensions", spec, "--k", "3", "--params", params, "-o", str(output)]) == 0
    assert read(output)["build"]["injective"] is False


def test_extensions_unknown_slot_is_input_error(write, output):
    spec = write("spec.json", [["1", 5], ["1", 3]])
    params = write("params.json", {"params": [{"block": 1, "generator": 0, "power": 0, "value": "2"}]})
    assert cli.main(["extensions", spec, "--k", "3", "--params", params, "-o", str(output)]) == 2


def test_extensions_refusal_writes_condition(write, output):
    spec = write("spec.json", [["1", 3], ["1", 3]])
    assert cli.main(["extensions", spec, "--k", "2", "-o", str(output)]) == 3
    assert read(output) == {
        "refused": True,
        "condition": "spacing",
        "message": "Block 1 has size 3 > n - 2 = 1",
    }


def test_malformed_input_is_input_error(tmp_path, output):
    broken = tmp_path / "spec.json"
    broken.write_text("[[1, 3]", encoding="utf-8")
    assert cli.main(["exists", str(broken), "-o", str(output)]) == 2
    assert cli.main(["exists", str(tmp_path / "missing.json")]) == 2


def test_invalid_configuration(monkeypatch):
    monkeypatch.setenv("UNISERIAL_TOOLS_SEED", "seventeen")
    assert cli.main(["cg", "-p", "2", "-q", "2"]) == 2


def test_make_request_collects_inputs():
    parser = cli.build_parser()
    args = parser.parse_args(["classify", "rep.json", "--seed", "3", "-o", "out.json"])
    request = cli.make_request(args)
    assert request.subcommand == "classify"
    assert [p.name for p in request.inputs] == ["rep.json"]
    assert request.seed == 3
    assert request.output.name == "out.json"
    assert request.options == {}


@pytest.fixture
def request_args(write):
    label = KXLabel(0, 1, 5, 3, Matrix([[1, 2], [0, 3]]))
    rep = constructions.build_extension_type3(0, 1, 3, (1, 0, 2), 5)
    top = constructions.construct_R(TopLabel(1, 2, 4))
    return {
        "construct": ["construct", "--label", write("label.json", {"label": label})],
        "verify": ["verify", write("rep.json", rep)],
        "classify": ["classify", write("single.json", top), "--seed", "7"],
        "exists": ["exists", write("spec.json", [["1", 7], ["1", 4], ["1", 2]]), "--witness"],
        "cg": ["cg", "-p", "3", "-q", "5"],
        "extensions": ["extensions", write("ext.json", [["1", 7], ["1", 1]]), "--k", "3", "--witness"],
    }


def _decode(subcommand, report):
    match subcommand:
        case "construct":
            assert lie.verify_representation(codec.decode_representation(report)).ok
        case "verify":
            assert report["verdict"]["ok"] is True
            assert report["socle_factor_dims"] == [1] * 5
        case "classify":
            assert codec.decode_label(report) == TopLabel(1, 2, 4)
            assert codec.decode_matrix(report["conjugator"]).det() != 0
        case "exists":
            assert codec.decode_representation(report["witness"]).d == 8
        case "cg":
            assert [codec.decode_matrix(g["matrix"]).shape for g in report["generators"]] == [(3, 5)] * 3
        case "extensions":
            assert codec.decode_representation(report["build"]["representation"]).d == 8
            assert len(codec.decode_parameters(report["params"])) == len(report["space"]["slots"])


@pytest.mark.parametrize("subcommand", ["construct", "verify", "classify", "exists", "cg", "extensions"])
def test_repeated_request_is_byte_identical(request_args, tmp_path, subcommand):
    first, second = tmp_path / "first.json", tmp_path / "second.json"
    assert cli.main([*request_args[subcommand], "-o", str(first)]) == 0
    assert cli.main([*request_args[subcommand], "-o", str(second)]) == 0
    assert first.read_bytes() == second.read_bytes()

    text = first.read_text(encoding="utf-8")
    report = json.loads(text)
    assert codec.dumps(report) == text
    _decode(subcommand, report)


def test_stdout_matches_output_file(request_args, output, capsys):
    assert cli.main([*request_args["exists"], "-o", str(output)]) == 0
    capsys.readouterr()
    assert cli.main(request_args["exists"]) == 0
    assert capsys.readouterr().out == output.read_text(encoding="utf-8")
