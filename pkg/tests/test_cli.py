import csv
import io
import json
from importlib import resources

import jsonschema
import pytest

from normlab.cli import main
from normlab.catalog import space_from_dict

SQUARE = '{"type":"lp","p":"inf","dim":2}'
OCTAGON = '{"type":"regular_polygon","n":4}'


def schema(name):
    return json.loads(resources.files("normlab").joinpath("schemas", name).read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    doc = json.loads(out)
    jsonschema.validate(doc, schema("report.schema.json"))
    return doc


def test_constants_octagon(capsys):
    doc = run_json(capsys, "constants", "--space", OCTAGON)
    assert doc["report"]["E"] == pytest.approx(0.82842712, abs=1e-8)
    assert "generated_at" in doc


def test_smoothness_apex(capsys):
    doc = run_json(capsys, "smoothness", "--space", '{"type":"example_3_1","delta":1}', "--x", "[0,2]")
    assert doc["report"]["eps"] == pytest.approx(1.0, abs=1e-12)
    assert doc["report"]["is_approx_smooth"] is True


def test_derivative_check_columns(capsys):
    doc = run_json(capsys, "derivative", "--space", SQUARE, "--x", "[1,1]", "--y", "[1,0]", "--check")
    rep = doc["report"]
    assert (rep["rho_plus"], rep["rho_minus"]) == (1.0, 0.0)
    assert rep["abs_err_plus"] < 1e-9 and rep["abs_err_minus"] < 1e-9


def test_ortho_and_additivity(capsys):
    doc = run_json(capsys, "ortho", "--space", SQUARE, "--x", "[1,1]", "--y", "[1,0.25]")
    assert doc["report"]["eps_min"] == pytest.approx(0.25)
    doc = run_json(capsys, "additivity", "--space", SQUARE, "--x", "[1,1]",
                   "--y1", "[1,-0.25]", "--y2", "[-0.25,1]")
    assert doc["report"]["verdicts"]["4.3"] == "vacuous"


def test_sweep_regular_polygons(capsys):
    code, out, _ = run(capsys, "sweep", "--space-family", "regular_polygon", "--param", "n",
                       "--range", "2:12", "--no-header")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [int(r["n"]) for r in rows] == list(range(2, 13))
    assert list(rows[0]) == ["n", "E_computed", "E_closed_form", "abs_diff"]
    assert max(float(r["abs_diff"]) for r in rows) <= 1e-9
    # repr round-trips exactly
    assert all(repr(float(r["E_computed"])) == r["E_computed"] for r in rows)


def test_sweep_example_family_json(capsys):
    doc = run_json(capsys, "sweep", "--space-family", "example_3_1", "--param", "delta",
                   "--values", "10,0.01,1", "--format", "json")
    assert [r["delta"] for r in doc["report"]] == [0.01, 1.0, 10.0]
    assert all(r["abs_diff"] <= 1e-12 for r in doc["report"])


def test_csv_header_line(capsys):
    code, out, _ = run(capsys, "constants", "--space", OCTAGON, "--format", "csv")
    assert code == 0
    assert out.startswith("# generated_at=")
    assert out.splitlines()[1] == "E,S,R"


def test_verify_small(capsys):
    doc = run_json(capsys, "verify", "--suite", "inequality", "--suite", "constants", "--trials", "5", "--seed", "9")
    assert doc["report"]["passed"]
    assert [s["name"] for s in doc["report"]["suites"]] == ["inequality", "constants"]
    assert all(s["seed"] == 9 for s in doc["report"]["suites"])


def test_verify_failure_exit_code(capsys, monkeypatch):
    from normlab import cli
    from normlab.suites import SuiteResult

    def broken(seed, trials=1, tol=None):
        r = SuiteResult("broken", seed, trials=1)
        r.fail(trial=0)
        return r

    monkeypatch.setitem(cli.SUITES, "inequality", broken)
    code, out, _ = run(capsys, "verify", "--suite", "inequality")
    assert code == 3
    assert json.loads(out)["report"]["suites"][0]["failures"] == [{"seed": 0, "trial": 0}]


def test_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("NORMLAB_SEED", "77")
    doc = run_json(capsys, "verify", "--suite", "constants", "--trials", "2")
    assert doc["report"]["suites"][0]["seed"] == 77


def test_determinism_without_header(capsys):
    argv = ["verify", "--suite", "additivity_bj", "--trials", "30", "--seed", "5", "--no-header"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b and "generated_at" not in a


def test_out_file(capsys, tmp_path):
    target = tmp_path / "r.json"
    code, out, _ = run(capsys, "constants", "--space", OCTAGON, "--out", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["command"] == "constants"


def test_space_file(capsys, tmp_path):
    f = tmp_path / "s.json"
    f.write_text(OCTAGON)
    doc = run_json(capsys, "constants", "--space", str(f))
    assert doc["report"]["S"] == doc["report"]["R"]


@pytest.mark.parametrize(
    "argv, needle",
    [
        (["smoothness", "--space", SQUARE, "--x", "[1,"], "--x"),
        (["smoothness", "--space", SQUARE, "--x", "[1,2,3]"], "--x"),
        (["smoothness", "--space", SQUARE, "--x", "[0,0]"], "--x"),
        (["smoothness", "--space", SQUARE], "--x"),
        (["ortho", "--space", SQUARE, "--x", "[1,1]", "--y", '["a",1]'], "--y"),
        (["constants", "--space", '{"type":"lp","p":0.3,"dim":2}'], "space.p"),
        (["constants", "--space", '{"type":"direct_sum","p":1,"left":{"type":"lp","p":1,"dim":1}}'], "space.right"),
        (["constants"], "--space"),
        (["constants", "--space", OCTAGON, "--tol", "0.5"], "--tol"),
        (["sweep", "--space-family", "regular_polygon", "--param", "n", "--range", "1:4"], "--range"),
        (["sweep", "--space-family", "regular_polygon", "--param", "delta", "--range", "2:4"], "--param"),
        (["nonsense"], "invalid choice"),
    ],
)
def test_input_errors_exit_2(capsys, argv, needle):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert needle in err


def test_capability_error_exit_1(capsys):
    code, _, err = run(capsys, "constants", "--space", '{"type":"lp","p":2,"dim":2}')
    assert code == 1 and "unsupported" in err


SPACES = [
    {"type": "polyhedral", "vertices": [[1, 0], [0, 1], [-1, 0], [0, -1]]},
    {"type": "lp", "p": 2.0, "dim": 3},
    {"type": "lp", "p": "inf", "dim": 2},
    {"type": "direct_sum", "p": "inf", "left": {"type": "regular_polygon", "n": 3},
     "right": {"type": "lp", "p": 1, "dim": 1}},
    {"type": "example_3_1", "delta": 0.25},
]


@pytest.mark.parametrize("obj", SPACES)
def test_space_schema_accepts_what_the_parser_accepts(obj):
    jsonschema.validate(obj, schema("space.schema.json"))
    space_from_dict(obj)


@pytest.mark.parametrize("obj", [{"type": "lp", "p": 0.5, "dim": 2}, {"type": "regular_polygon", "n": 1},
                                 {"type": "direct_sum", "p": 2, "left": {"type": "lp", "p": 2, "dim": 1}}])
def test_space_schema_rejects_bad_specs(obj):
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate(obj, schema("space.schema.json"))
