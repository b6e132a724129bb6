import json

import pytest

from focalkit.cli import AnalysisRequest, dumps, main, run
from focalkit.errors import InputError
from focalkit.families import fixture
from focalkit.parser import serialize_family


def _run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out) if out else None


def test_analyze_f4(capsys):
    code, rep = _run(["analyze", "--fixture", "F4", "--seed", "7"], capsys)
    assert code == 0
    assert rep["union_dimension"] == 3
    for r in rep["results"]:
        assert r["focal_divisor"] == "x0*x1"
        assert r["envelope"]["projective_dim"] == 3
        assert r["fixed_tangent_dim"] == 3


def test_analyze_explicit_base(capsys):
    code, rep = _run(["analyze", "--fixture", "F1", "--base", "1/2"], capsys)
    assert code == 0 and [r["base"] for r in rep["results"]] == [["1/2"]]
    assert rep["results"][0]["foci"] == [{"point": ["1", "0"], "multiplicity": 1}]


def test_base_arity_is_input_error(capsys):
    code, rep = _run(["analyze", "--fixture", "F4", "--base", "1"], capsys)
    assert code == 1 and rep["error"]["kind"] == "input"


def test_classify_f8(capsys):
    code, rep = _run(["classify", "--fixture", "F8"], capsys)
    assert code == 0 and rep["classification"] == "c2h-cone-over-surface"
    assert rep["features"]["multiplicities"] == [2]


def test_verify_theoremC_f1(capsys):
    code, rep = _run(["verify", "theoremC", "--fixture", "F1", "--trials", "5"], capsys)
    assert code == 0 and rep["verification"]["passed"]
    assert len([c for c in rep["verification"]["checks"] if c["name"] == "degree_vs_envelope"]) == 5


@pytest.mark.parametrize("suite", ["theoremC", "theoremA", "theoremB", "bijection", "multiplicity", "phi",
                                   "counterexample"])
def test_every_suite_passes_on_its_default_target(suite, capsys):
    code, rep = _run(["verify", suite, "--trials", "2"], capsys)
    assert code == 0 and rep["verification"]["passed"]


def test_inapplicable_exit_code(capsys):
    code, rep = _run(["verify", "theoremB", "--fixture", "F10"], capsys)
    assert code == 2 and not rep["verification"]["applicable"]
    code, rep = _run(["classify", "--fixture", "F12"], capsys)
    assert code == 2 and rep["error"]["kind"] == "inapplicable"


def test_input_errors(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"N": 3, "k": 1, "params": ["t"], "points": [["1", "t", "t^"]]}')
    code, rep = _run(["analyze", "--input", str(bad)], capsys)
    assert code == 1 and "coordinates" in rep["error"]["message"]
    code, rep = _run(["analyze", "--input", str(tmp_path / "missing.json")], capsys)
    assert code == 1
    code, rep = _run(["analyze", "--fixture", "nope"], capsys)
    assert code == 1 and "unknown fixture" in rep["error"]["message"]


def test_input_file_round_trip(tmp_path, capsys):
    path = tmp_path / "f6.json"
    path.write_text(serialize_family(fixture("F6")))
    code, rep = _run(["classify", "--input", str(path)], capsys)
    assert code == 0 and rep["classification"] == "c2e-join"


def test_determinism_and_out(tmp_path, capsys):
    out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
    main(["analyze", "--fixture", "F6", "--seed", "3", "--out", str(out1)])
    main(["analyze", "--fixture", "F6", "--seed", "3", "--out", str(out2)])
    assert out1.read_bytes() == out2.read_bytes()
    main(["analyze", "--fixture", "F6", "--seed", "4", "--out", str(out2)])
    assert out1.read_bytes() != out2.read_bytes()


def test_seed_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("FOCALKIT_SEED", "42")
    _, rep = _run(["analyze", "--fixture", "F1", "--trials", "1"], capsys)
    assert rep["request"]["seed"] == 42
    _, rep = _run(["analyze", "--fixture", "F1", "--trials", "1", "--seed", "5"], capsys)
    assert rep["request"]["seed"] == 5


def test_seed_range(monkeypatch, capsys):
    assert main(["analyze", "--fixture", "F1", "--seed", str(2 ** 64)]) == 1
    monkeypatch.setenv("FOCALKIT_SEED", "abc")
    assert main(["analyze", "--fixture", "F1"]) == 1


def test_request_validation():
    with pytest.raises(InputError):
        AnalysisRequest("analyze", fixture="F1", trials=0)
    with pytest.raises(InputError):
        AnalysisRequest("analyze", fixture="F1", input="x.json")


def test_fixtures_listing(capsys):
    code, rep = _run(["fixtures"], capsys)
    ids = [f["id"] for f in rep["fixtures"]]
    assert code == 0 and "F12" in ids and "scroll" in [p["id"] for p in rep["patches"]]


def test_run_is_byte_stable():
    req = AnalysisRequest("classify", fixture="F4", seed=1)
    assert dumps(run(req)[0]) == dumps(run(req)[0])


def test_phi_suite_rejects_families(capsys):
    code, rep = _run(["verify", "phi", "--fixture", "F4"], capsys)
    assert code == 1
