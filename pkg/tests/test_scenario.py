import json
from fractions import Fraction
from pathlib import Path

import pytest

from crchern.kahler import (
    DEFAULT_TOLERANCES,
    SasakiCorrespondence,
    ScenarioError,
    build_patch,
    parse_scenario,
    run_batch,
)

SCHEMA_DIR = Path(__file__).resolve().parent.parent / "docs" / "schemas"


def test_parse_minimal_scenario():
    factors, samples, seed, tol = parse_scenario(
        {"factors": [{"dim": 1, "hsc": "1"}, {"dim": 1, "hsc": "-1"}]}
    )
    assert factors == [(1, Fraction(1)), (1, Fraction(-1))]
    assert samples == 10 and seed == 0
    assert tol == DEFAULT_TOLERANCES


def test_parse_full_scenario():
    doc = {
        "factors": [{"dim": 2, "hsc": "-3/2"}],
        "samples": 4,
        "seed": 17,
        "tolerances": {"s_max": 1e-5},
    }
    factors, samples, seed, tol = parse_scenario(doc)
    assert factors == [(2, Fraction(-3, 2))]
    assert (samples, seed) == (4, 17)
    assert tol["s_max"] == 1e-5
    assert tol["p_trace"] == DEFAULT_TOLERANCES["p_trace"]


@pytest.mark.parametrize(
    "doc",
    [
        {"factors": []},
        {"factors": [{"dim": 0, "hsc": "1"}]},
        {"factors": [{"dim": 1, "hsc": "0"}]},
        {"factors": [{"dim": 1, "hsc": "a/b"}]},
        {"factors": [{"dim": 1}]},
        {"factors": [{"dim": 1, "hsc": "1", "extra": 2}]},
        {"factors": [{"dim": 1, "hsc": "1"}], "samples": 0},
        {"factors": [{"dim": 1, "hsc": "1"}], "tolerances": {"bogus": 1}},
        {"factors": [{"dim": 1, "hsc": "1"}], "tolerances": {"s_max": -1}},
        {"factors": [{"dim": 1, "hsc": "1"}], "unknown_key": 1},
        [],
    ],
)
def test_invalid_scenarios_rejected(doc):
    with pytest.raises(ScenarioError):
        parse_scenario(doc)


def test_flat_batch_passes():
    report = run_batch([(1, Fraction(1)), (1, Fraction(-1))], samples=6, seed=0)
    assert report.passed
    maxima = report.witnesses[0]["maxima"]
    assert maxima["s_inf"] < 1e-6
    assert maxima["divergence_sides"] < 1e-3


def test_control_batch_fails_flatness_and_passes_as_control():
    factors = [(1, Fraction(1)), (1, Fraction(1))]
    flat_view = run_batch(factors, samples=6, seed=0)
    assert not flat_view.passed  # |S| is recorded and breaks the bound
    assert flat_view.witnesses[0]["maxima"]["s_inf"] > 1e-2
    control_view = run_batch(
        factors, samples=6, seed=0, expect_flat=False, control_floor=1e-2
    )
    assert control_view.passed


def test_batch_determinism():
    a = run_batch([(1, Fraction(1)), (1, Fraction(-1))], samples=5, seed=9)
    b = run_batch([(1, Fraction(1)), (1, Fraction(-1))], samples=5, seed=9)
    assert a.to_json_dict() == b.to_json_dict()
    c = run_batch([(1, Fraction(1)), (1, Fraction(-1))], samples=5, seed=10)
    assert c.residuals != a.residuals


def test_correspondence_record():
    patch = build_patch([(1, Fraction(1)), (1, Fraction(-1))])
    record = SasakiCorrespondence(patch).to_json_dict()
    assert record["torsion"].startswith("identically zero")
    assert record["factors"] == [
        {"dim": 1, "hsc": "1"},
        {"dim": 1, "hsc": "-1"},
    ]


def test_shipped_example_scenarios():
    from crchern.cli import main

    examples = SCHEMA_DIR.parent / "examples"
    flat = examples / "bochner_flat_pair.json"
    control = examples / "equal_sign_control.json"
    for path in (flat, control):
        parse_scenario(json.loads(path.read_text()))
    assert main(["scenario", str(flat), "--no-timestamp", "--out", "/dev/null"]) == 0
    assert (
        main(["scenario", str(control), "--no-timestamp", "--out", "/dev/null"]) == 1
    )


def test_emitted_reports_validate_against_shipped_schemas():
    jsonschema = pytest.importorskip("jsonschema")
    scenario_schema = json.loads((SCHEMA_DIR / "scenario.schema.json").read_text())
    good = {
        "factors": [{"dim": 1, "hsc": "1"}, {"dim": 1, "hsc": "-1"}],
        "samples": 3,
        "seed": 0,
        "tolerances": {"s_max": 1e-6},
    }
    jsonschema.validate(good, scenario_schema)
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate({"factors": []}, scenario_schema)
    # the hand validator accepts exactly what the schema describes here
    parse_scenario(good)
