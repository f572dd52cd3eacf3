import json
from importlib import resources

import jsonschema
import pytest

from defectlab.cli import main, run

SCHEMA = json.loads(resources.files("defectlab").joinpath("data/report.schema.json").read_text())


def invoke(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def as_json(capsys, *argv):
    code, out, _ = invoke(capsys, *argv, "--format", "json")
    report = json.loads(out)
    jsonschema.validate(report, SCHEMA)
    return code, report


def test_defect_periodic(capsys):
    code, rep = as_json(capsys, "defect", "--periodic", "abcabcacbacb", "--length", "4096")
    assert code == 0
    assert rep["results"]["defect"] == 4 and rep["results"]["oddities"] == 3


def test_defect_default_schedule(capsys):
    code, rep = as_json(capsys, "defect", "--fixed-point", "0=01,1=0", "--image", "0=cabcbac,1=d")
    assert rep["request"]["schedule"] == [256, 1024, 4096]
    assert rep["request"]["window_source"] == "default-schedule"
    assert rep["results"]["growth"] == [1, 1, 1] and rep["results"]["stabilized"]
    assert rep["results"]["K"] == 2 and rep["results"]["H"] == 5


def test_morphism_class(capsys):
    code, rep = as_json(capsys, "morphism-class", "--rules", "0=0100,1=01011,2=010111")
    assert code == 0
    assert rep["results"]["P_ret"]["p"] == "010"
    assert "P_ret" in rep["results"]["classes"]
    code, rep = as_json(capsys, "morphism-class", "--fixture", "standard-special-example")
    assert rep["results"]["standard_special_P"]["p"] == "a"
    assert rep["results"]["P_ret"] is None


def test_demo(capsys):
    code, out, _ = invoke(capsys, "demo")
    assert code == 0
    assert "FAIL" not in out and out.rstrip().endswith("checks passed")
    code, rep = as_json(capsys, "demo", "--fixture", "sigma-fib")
    assert rep["results"]["passed"] == rep["results"]["total"] > 0


@pytest.mark.parametrize("argv", [
    ["complexity", "--fixture", "fibonacci", "--n-max", "10"],
    ["eq1", "--fixture", "sigma-fib", "--length", "1024"],
    ["oddities", "--periodic", "abcabcacbacb", "--length", "256", "--p-max", "12"],
    ["returns", "--fixture", "sigma-fib", "--factor", "c", "--n-max", "4"],
    ["sidegraph", "--fixed-point", "0=01,1=0", "--length", "500", "--n", "1"],
    ["derive", "--fixture", "sigma-fib", "--length", "4096"],
    ["closure", "--literal", "011022"],
    ["closure", "--closure-level", "2"],
    ["defect", "--closure-level", "--image", "0=0100,1=01011,2=010111", "--schedule", "120,1330,14640"],
])
def test_every_subcommand_validates(capsys, argv):
    code, rep = as_json(capsys, *argv)
    assert code == 0 and rep["errors"] == []


@pytest.mark.parametrize("fmt", ["tsv", "pretty"])
def test_other_formats(capsys, fmt):
    code, out, _ = invoke(capsys, "defect", "--periodic", "abcabcacbacb", "--length", "256", "--format", fmt)
    assert code == 0
    if fmt == "tsv":
        lines = out.splitlines()
        assert lines[0] == "key\tvalue"
        assert "results.defect\t4" in lines
    else:
        assert "results.defect" in out


def test_demo_tsv_columns(capsys):
    code, out, _ = invoke(capsys, "demo", "--fixture", "periodic-12", "--format", "tsv")
    assert out.splitlines()[0] == "fixture\tanalysis\tsource\texpected\tobserved\tstatus"


def test_round_trip(tmp_path, capsys):
    first = tmp_path / "a.json"
    main(["defect", "--fixed-point", "0=01,1=0", "--image", "0=cabcbac,1=d",
          "--schedule", "64,256", "--format", "json", "--out", str(first)])
    second = tmp_path / "b.json"
    main(["defect", "--spec", str(first), "--format", "json", "--out", str(second)])
    assert first.read_bytes() == second.read_bytes()


def test_spec_file(tmp_path, capsys):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"type": "periodic", "period": "abcabcacbacb", "length": 128}))
    code, rep = as_json(capsys, "defect", "--spec", str(spec))
    assert rep["results"]["defect"] == 4 and rep["request"]["schedule"] == [128]


def test_deterministic_output(capsys):
    argv = ["oddities", "--fixture", "sigma-prime-fib", "--format", "json"]
    _, a, _ = invoke(capsys, *argv)
    _, b, _ = invoke(capsys, *argv)
    assert a == b


def test_dot_export(tmp_path, capsys):
    dot = tmp_path / "g.dot"
    code, _, _ = invoke(capsys, "sidegraph", "--fixture", "fibonacci", "--n", "1", "--dot", str(dot))
    assert code == 0 and dot.read_text().startswith("graph G1")


@pytest.mark.parametrize("argv", [
    [],
    ["defect"],
    ["defect", "--periodic", "ab", "--literal", "ab"],
    ["defect", "--periodic", "ab", "--length", "0"],
    ["defect", "--periodic", "ab", "--schedule", "64,32"],
    ["defect", "--periodic", "ab", "--length", "4", "--schedule", "4,8"],
    ["defect", "--fixture", "nope"],
    ["morphism-class", "--rules", "0=01,1"],
    ["morphism-class"],
    ["frobnicate"],
])
def test_usage_errors_exit_1(capsys, argv):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == 1


def test_precondition_errors_exit_2(capsys):
    code, rep = as_json(capsys, "derive", "--closure-level", "--image", "0=0100,1=01011,2=010111",
                        "--length", "1330")
    assert code == 2
    assert rep["errors"][0]["type"] == "InsufficientWindowError"
    code, rep = as_json(capsys, "defect", "--fixed-point", "a=ba,b=b")
    assert code == 2 and rep["errors"][0]["type"] == "NotProlongableError"


def test_budget_env(monkeypatch, capsys):
    monkeypatch.setenv("DEFECTLAB_BUDGET", "100")
    code, rep = as_json(capsys, "defect", "--periodic", "ab", "--length", "1000")
    assert code == 2 and rep["errors"][0]["type"] == "SizeBudgetError"


def test_run_returns_report():
    report, code = run(["closure", "--literal", "abab"])
    assert code == 0 and report["results"]["closure"] == "ababa"
