import json

import pytest

from hypernil import catalog
from hypernil.errors import InvalidField, MissingStructure, ParseError, ProblemValidationError
from hypernil.field import QQ
from hypernil.problem import load_problem, parse_problem, problem_to_json, require_valid, validate_problem
from hypernil.structures import HypercomplexTriple

from tests.strategies import SQRT2

NON_NILPOTENT = {
    "name": "sl2-like",
    "algebra": {"dim": 3, "brackets": [{"i": 0, "j": 1, "coeffs": {"2": "1"}}, {"i": 1, "j": 2, "coeffs": {"0": "1"}}]},
}


def test_catalog_names():
    names = catalog.names()
    assert "kodaira" in names and "quaternionic_heisenberg8" in names
    assert names == sorted(names)
    assert len(names) >= 10


@pytest.mark.parametrize("name", catalog.names())
def test_catalog_entries_validate(name):
    problem = catalog.load(name)
    assert problem.name == name
    assert problem.provenance
    assert len(problem.source_sha256) == 64
    assert validate_problem(problem).ok


@pytest.mark.parametrize("name", catalog.names())
def test_canonical_round_trip(name):
    text = problem_to_json(catalog.load(name))
    again = parse_problem(text)
    assert problem_to_json(again) == text


def test_unknown_entry():
    with pytest.raises(ParseError):
        catalog.load("no-such-algebra")


def test_resolve_prefers_files(tmp_path):
    path = tmp_path / "kodaira.json"
    path.write_text(json.dumps(NON_NILPOTENT))
    assert catalog.resolve(str(path)) == path
    assert catalog.resolve("kodaira") == catalog.CATALOG_DIR / "kodaira.json"


@pytest.mark.parametrize("argument", ["x/kodaira.json", "kodaira.json"])
def test_missing_path_is_not_a_catalog_name(tmp_path, argument):
    missing = tmp_path / argument
    with pytest.raises(ParseError) as exc:
        catalog.resolve(str(missing))
    assert exc.value.location == str(missing)
    with pytest.raises(ParseError):
        catalog.resolve("kodaira.json")


def test_field_and_structures_are_read():
    problem = catalog.load("kodaira_sqrt2")
    assert problem.field == SQRT2
    assert problem.structure().field == SQRT2
    assert catalog.load("kodaira").field == QQ


def test_structure_selection():
    kodaira = catalog.load("kodaira")
    assert kodaira.structure().label == "I"
    assert kodaira.selected().label == "I"
    with pytest.raises(MissingStructure):
        kodaira.triple()
    with pytest.raises(MissingStructure):
        kodaira.structure("J")

    abelian4 = catalog.load("abelian4")
    assert isinstance(abelian4.selected(), HypercomplexTriple)
    assert abelian4.selected("K").label == "K"
    assert abelian4.structure() is abelian4.triple().I

    with pytest.raises(MissingStructure):
        catalog.load("heisenberg3").structure()


@pytest.mark.parametrize("text", [
    "{",
    '{"algebra": {"dim": -1}}',
    '{"algebra": {"dim": 2, "brackets": [{"i": 0, "j": 1, "coeffs": {"1": "1/0"}}]}}',
    '{"algebra": {"dim": 2, "brackets": [{"i": 0, "j": 2, "coeffs": {"1": "1"}}]}}',
    '{"algebra": {"dim": 2, "brackets": [{"i": 0, "j": 1, "coeffs": {"1": 0.5}}]}}',
    '{"algebra": {"dim": 2, "brackets": [{"i": 0, "j": 1, "coeffs": {"1": "0.5"}}]}}',
    '{"algebra": {"dim": 2, "names": ["x"]}}',
    '{"algebra": {"dim": 2}, "complex_structures": [{"label": "L", "matrix": [[0, -1, 0], [1, 0, 0], [0, 0, 1]]}]}',
    '{"algebra": {"dim": 2}, "complex_structures": [{"label": "L", "matrix": [[0, -1], [1]]}]}',
])
def test_malformed_problems(text):
    with pytest.raises(ParseError):
        parse_problem(text)


def test_parse_error_location():
    with pytest.raises(ParseError) as exc:
        parse_problem('{\n  "algebra": \n}', source="broken.json")
    assert exc.value.location.startswith("broken.json: line 3")


def test_duplicates_rejected():
    bracket = {"i": 0, "j": 1, "coeffs": {"2": "1"}}
    reversed_bracket = {"i": 1, "j": 0, "coeffs": {"2": "-1"}}
    with pytest.raises(ParseError):
        parse_problem(json.dumps({"algebra": {"dim": 3, "brackets": [bracket, reversed_bracket]}}))
    rotation = {"label": "L", "matrix": [[0, -1], [1, 0]]}
    with pytest.raises(ParseError):
        parse_problem(json.dumps({"algebra": {"dim": 2}, "complex_structures": [rotation, rotation]}))


def test_validation_failures(tmp_path):
    problem = parse_problem(json.dumps(NON_NILPOTENT))
    report = validate_problem(problem)
    assert not report.ok
    assert [c.name for c in report.checks if not c.passed] == ["nilpotent"]
    with pytest.raises(ProblemValidationError):
        require_valid(problem)
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(NON_NILPOTENT))
    with pytest.raises(ProblemValidationError):
        load_problem(path)
    assert load_problem(path, validate=False).algebra.dim == 3


def test_non_integrable_structure_fails_validation():
    data = json.loads(catalog.path("kodaira").read_text())
    data["complex_structures"][0]["matrix"] = [[0, 0, -1, 0], [0, 0, 0, -1], [1, 0, 0, 0], [0, 1, 0, 0]]
    report = validate_problem(parse_problem(json.dumps(data)))
    failed = {c.name: c.witness for c in report.checks if not c.passed}
    assert failed["I: integrable"] == "(x, y)"
    assert "I: abelian" in failed
    assert not report.ok


def test_non_abelian_structure_is_informational():
    report = validate_problem(catalog.load("complex_heisenberg6"))
    assert report.ok
    abelian = next(c for c in report.checks if c.name == "J: abelian")
    assert not abelian.passed and not abelian.required


def test_missing_file(tmp_path):
    with pytest.raises(ParseError):
        load_problem(tmp_path / "missing.json")


def test_reducible_field_rejected():
    with pytest.raises(InvalidField):
        parse_problem('{"algebra": {"dim": 2}, "field": {"minpoly": ["-4", "0", "1"]}}')
