from __future__ import annotations

import io
import json
from importlib import resources

import jsonschema
import pytest

from pencilkit import cli


@pytest.fixture(scope="module")
def validator():
    text = resources.files("pencilkit").joinpath("schemas/pencil_report.v1.schema.json").read_text()
    return jsonschema.Draft202012Validator(json.loads(text))


def invoke(*argv, env=None):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), stdout=out, stderr=err, env=env or {})
    return code, out.getvalue(), err.getvalue()


def test_analyze_conic_pencil(validator):
    code, out, err = invoke("analyze", "--f", "X*Y", "--g", "X+Y", "--field", "q", "--mode", "dense", "--seed", "7")
    assert code == 0
    rep = json.loads(out)
    assert rep["rho"] == 2 and rep["seed"] == 7
    assert "rho=2" in err
    validator.validate(rep)


def test_irreducible_cubic(validator):
    code, out, err = invoke("irreducible", "--f", "Y^2 - X^3 - X", "--field", "q")
    assert code == 0
    rep = json.loads(out)
    assert rep["kernel_dim"] == 0 and rep["irreducible"] is True
    assert "irreducible: true" in err
    validator.validate(rep)


def test_irreducible_reports_factor_count():
    code, out, _ = invoke("irreducible", "--f", "(X - Y)^2*(X*Y + 1)", "--quiet")
    rep = json.loads(out)
    assert code == 0 and rep["irreducible"] is False and rep["factor_count"] == 3


def test_spectrum_bf_parabola(validator):
    code, out, _ = invoke("spectrum-bf", "--f", "Y - X^2", "--g", "1", "--prime", "101")
    assert code == 0
    rep = json.loads(out)
    assert [(p["point"], p["kernel_dim"]) for p in rep["spectral_points"]] == [(["0", "1"], 2)]
    validator.validate(rep)


def test_newton_writes_svg(tmp_path, validator):
    svg = tmp_path / "n.svg"
    code, out, _ = invoke("newton", "--f", "1 + X*Y + X^2*Y^2 + X^3*Y^2 + X^2*Y^3", "--polygon", "newton",
                          "--svg", str(svg))
    assert code == 0
    rep = json.loads(out)
    assert (rep["N"], rep["good_edge"]["N_E"]) == (5, 2)
    assert svg.read_text().startswith("<svg")
    validator.validate(rep)


def test_bertini_and_paper_examples_validate(validator):
    code, out, _ = invoke("bertini", "--vars", "3", "--poly", "X1*X2*X3", "--seed", "4")
    assert code == 0
    rep = json.loads(out)
    assert rep["kernel_dim"] == 2
    validator.validate(rep)
    code, out, _ = invoke("paper-examples", "--quiet")
    assert code == 0
    validator.validate(json.loads(out))


def test_sparse_analyze_validates(validator):
    code, out, _ = invoke("analyze", "--f", "X^2*Y + X*Y + X", "--g", "1", "--mode", "sparse", "--quiet")
    assert code == 0
    validator.validate(json.loads(out))


def test_report_file_and_byte_identical_reruns(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    args = ["analyze", "--f", "X^2*Y + X", "--g", "Y^3 + 1", "--seed", "11", "--quiet"]
    assert invoke(*args, "--report", str(a))[0] == 0
    assert invoke(*args, "--report", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_seed_from_environment():
    _, out, _ = invoke("analyze", "--f", "X*Y", "--g", "X+Y", "--quiet", env={"PENCIL_SEED": "42"})
    assert json.loads(out)["seed"] == 42
    _, out, _ = invoke("analyze", "--f", "X*Y", "--g", "X+Y", "--quiet", "--seed", "5", env={"PENCIL_SEED": "42"})
    assert json.loads(out)["seed"] == 5
    assert cli.resolve_seed(None, {}) == 0


@pytest.mark.parametrize(
    "argv,prefix",
    [
        (["analyze", "--f", "X*Y"], "cli.UsageError"),
        (["analyze", "--f", "X*Y", "--g", "X*Y"], "spectrum.CompositeOrNonReduced"),
        (["analyze", "--f", "X*Y +", "--g", "1"], None),
        (["irreducible", "--f", "Y^2 - X^3", "--field", "fp:4"], None),
        (["analyze", "--f", "X*Y", "--g", "X+Y", "--report", "/nonexistent/dir/r.json"], "cli.IOError"),
        (["bertini", "--vars", "3", "--poly", "X1 + X2"], None),
    ],
)
def test_errors_exit_one_with_single_diagnostic(argv, prefix):
    code, out, err = invoke(*argv)
    assert code == 1 and out == ""
    assert len(err.strip().splitlines()) == 1
    if prefix:
        assert err.startswith(prefix)


def test_bad_seed_environment():
    code, _, err = invoke("analyze", "--f", "X*Y", "--g", "X+Y", env={"PENCIL_SEED": "-3"})
    assert code == 1 and err.startswith("cli.UsageError")


def test_failed_verdict_maps_to_exit_two(monkeypatch):
    monkeypatch.setitem(cli._COMMANDS, "irreducible", lambda args, seed: ({"x": 1}, False, "forced"))
    code, out, err = invoke("irreducible", "--f", "X")
    assert code == 2 and json.loads(out) == {"x": 1}
    assert "FAILED" in err
