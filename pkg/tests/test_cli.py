import json

import pytest
from click.testing import CliRunner

from restrix.cli import main
from restrix.jsonio import algebra_to_json, dumps
from restrix.registry import cyclic_group, example_fr_model

runner = CliRunner()


@pytest.fixture
def z2_file(tmp_path):
    path = tmp_path / "z2.json"
    path.write_text(json.dumps({"mul": [[0, 1], [1, 0]], "one": 0}))
    return str(path)


@pytest.fixture
def idem_file(tmp_path):
    path = tmp_path / "idem.json"
    path.write_text(json.dumps({"mul": [[0, 1], [1, 1]], "one": 0}))
    return str(path)


@pytest.fixture
def model_file(tmp_path):
    path = tmp_path / "model.json"
    path.write_text(dumps(algebra_to_json(example_fr_model())))
    return str(path)


def test_munn_wagner_identity():
    a = runner.invoke(main, ["munn", "--expr", "a a' a"])
    b = runner.invoke(main, ["munn", "--expr", "a"])
    assert a.exit_code == 0 and b.exit_code == 0
    assert a.output == b.output


def test_munn_output_is_byte_stable():
    args = ["munn", "--expr", "a b a'", "--alphabet", "ab"]
    assert runner.invoke(main, args).output == runner.invoke(main, args).output


def test_du_word():
    result = runner.invoke(main, ["du", "--word", "a b'", "--alphabet", "ab"])
    assert result.exit_code == 0
    body = json.loads(result.output)
    assert body["m"] == ""
    assert body["E"]["vertices"] == ["", "b", "ba'"]


def test_check_command(model_file):
    result = runner.invoke(main, ["check", model_file])
    assert result.exit_code == 0
    assert json.loads(result.output) == {"ok": True, "report": []}


def test_check_failing_algebra(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(
        json.dumps({"mul": [[0, 1], [1, 1]], "one": 0, "star": [1, 1], "plus": [1, 1]})
    )
    result = runner.invoke(main, ["check", str(bad)])
    assert result.exit_code == 1
    assert json.loads(result.output)["ok"] is False


def test_bad_input_exits_2(tmp_path):
    garbage = tmp_path / "garbage.json"
    garbage.write_text("not json")
    result = runner.invoke(main, ["check", str(garbage)])
    assert result.exit_code == 2
    malformed = tmp_path / "malformed.json"
    malformed.write_text(json.dumps({"mul": [[0, 1], [0, 0]], "one": 0, "star": [0, 0], "plus": [0, 0]}))
    result = runner.invoke(main, ["check", str(malformed)])
    assert result.exit_code == 2


def test_analyze_command(model_file):
    result = runner.invoke(main, ["analyze", model_file])
    assert result.exit_code == 0
    body = json.loads(result.output)
    assert body["predicates"]["f_restriction"] is True


def test_enumerate_command(idem_file):
    result = runner.invoke(
        main, ["enumerate", idem_file, "--relations", "hom", "--bound", "6"]
    )
    assert result.exit_code == 0
    body = json.loads(result.output)
    assert body["status"] == "closed" and body["count"] == 3


def test_prefix_expand_command(z2_file):
    result = runner.invoke(
        main, ["prefix-expand", "--group", z2_file, "--names", "0,1"]
    )
    assert result.exit_code == 0
    body = json.loads(result.output)
    assert body["count"] == 3


def test_product_command(tmp_path):
    bundle = tmp_path / "bundle.json"
    bundle.write_text(
        json.dumps(
            {
                "source": {"mul": [[0]], "one": 0},
                "Y": {"meet": [[0, 1], [1, 1]], "top": 0},
                "map": [{"dom": [0, 1], "val": [0, 1]}],
            }
        )
    )
    result = runner.invoke(main, ["product", str(bundle)])
    assert result.exit_code == 0
    assert json.loads(result.output)["algebra"]["size"] == 2


def test_export_dot_command(model_file):
    result = runner.invoke(main, ["export-dot", model_file, "--what", "order"])
    assert result.exit_code == 0
    assert result.output.startswith("digraph natural_order")
    again = runner.invoke(main, ["export-dot", model_file, "--what", "order"])
    assert result.output == again.output


def test_verify_quick_suite_exits_zero():
    result = runner.invoke(main, ["verify", "--suite", "quick", "--seed", "0"])
    assert result.exit_code == 0
    lines = [l for l in result.output.splitlines() if l.strip()]
    assert len(lines) == 2
    for line in lines:
        body = json.loads(line)
        assert body["status"] == "pass"


def test_verify_default_suite_exits_zero():
    result = runner.invoke(main, ["verify", "--suite", "default", "--seed", "0"])
    assert result.exit_code == 0
    lines = [l for l in result.output.splitlines() if l.strip()]
    assert len(lines) > 50
    statuses = {json.loads(l)["status"] for l in lines}
    assert "fail" not in statuses
