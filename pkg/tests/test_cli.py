import json

import jsonschema
import pytest

from theta_forge.cli import main, run_batch, run_hyper, run_newton, run_siegel
from theta_forge.report import REPORT_KEYS, SCHEMA_VERSION, load_schema

SCHEMA = load_schema()


def validate(rep):
    jsonschema.validate(rep, SCHEMA)
    assert list(rep) == list(REPORT_KEYS)
    assert rep["schema_version"] == SCHEMA_VERSION


@pytest.mark.parametrize(
    "form, op, expected",
    [
        ("theta", "t^2*D^2", "T^2 - T"),
        ("d", "T^2", "(t^2)*D^2 + t*D"),
        ("theta", "T", "T"),
        ("theta", "D^2 - t", "T^2 - T - t^3"),
    ],
)
def test_convert(capsys, form, op, expected):
    assert main(["convert", "--form", form, "--op", op]) == 0
    assert capsys.readouterr().out.strip() == expected


def test_convert_parse_error(capsys):
    assert main(["convert", "--form", "theta", "--op", "T^2 +"]) == 2
    assert "error" in capsys.readouterr().err


def test_siegel_nonzero(tmp_path, capsys):
    out = tmp_path / "r.json"
    code = main(["siegel", "--op", "T^2 - t", "--form0", "[1,0]", "--kmax", "1", "--json", str(out)])
    assert code == 0
    raw = out.read_text("utf-8")
    assert raw.endswith("\n")
    rep = json.loads(raw)
    validate(rep)
    wins = rep["siegel"]["windows"]
    assert [w["det"]["text"] for w in wins] == ["t", "-t^2"]
    assert [w["det_degree"] for w in wins] == [w["predicted_degree"] for w in wins] == [1, 2]
    assert rep["conditions"] == {"t1": True, "t2_280": None, "t2_290": None}
    assert wins[1]["det"]["coeffs"] == [["0", "1"], ["0", "1"], ["-1", "1"]]


def test_siegel_zero_determinant():
    rep, code = run_siegel("T^2", "[1,0]", 0)
    validate(rep)
    assert code == 1
    assert rep["conditions"]["t1"] is False
    assert rep["siegel"]["windows"][0]["nonzero"] is False


def test_siegel_zero_form(capsys):
    assert main(["siegel", "--op", "T^2 - t", "--form0", "[0,0]"]) == 2
    assert "ZeroInitialForm" in capsys.readouterr().err


def test_siegel_order_mismatch():
    assert main(["siegel", "--op", "T^2 - t", "--form0", "[1,0,0]"]) == 2


def test_siegel_default_kmax():
    rep, code = run_siegel("T^3 - t", "[1,0,0]")
    assert rep["siegel"]["k_max"] == 4 and len(rep["siegel"]["windows"]) == 5
    assert code == 0


def test_siegel_d_basis():
    rep, code = run_siegel("D^2 - t", "[1,0]", 0)
    validate(rep)
    assert code == 0
    assert rep["siegel"]["windows"][0]["det"]["text"] == "t"
    assert rep["conditions"] == {"t1": None, "t2_280": True, "t2_290": False}


@pytest.mark.parametrize(
    "op, slope",
    [("T^2 - t", "1/2"), ("D^2 - t", "3/2"), ("t*D^2 - 1", "1/2")],
)
def test_newton(op, slope):
    rep, code = run_newton(op)
    validate(rep)
    assert code == 0
    assert rep["newton"]["slopes"] == [{"value": slope, "multiplicity": 2}]
    assert rep["newton"]["verdict"] == "Irreducible"
    assert rep["newton"]["witness"] == {"slope": slope, "denominator": 2}


def test_svg_is_deterministic(tmp_path):
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    assert main(["newton", "--op", "T^3 - t*T - t", "--svg", str(a)]) == 0
    assert main(["newton", "--op", "T^3 - t*T - t", "--svg", str(b)]) == 0
    data = a.read_bytes()
    assert data == b.read_bytes()
    text = data.decode()
    assert 'viewBox="0 0 640 480"' in text and "href" not in text
    assert "slope 1/2" in text and "<polyline" in text


def test_hyper_factorial():
    rep, code = run_hyper(poly="(x+1)^2")
    validate(rep)
    assert code == 0
    assert rep["operator"] == "T^2 - t"
    assert rep["hyper"]["annihilation"] is True
    assert rep["conditions"]["t1"] is True
    assert rep["newton"]["verdict"] == "Irreducible"


def test_hyper_pfq_matches_factorial():
    rep, code = run_hyper(a="", b="1", terms=20)
    validate(rep)
    assert code == 0 and rep["operator"] == "T^2 - t"
    assert rep["conditions"]["t1"] is True and rep["newton"]["verdict"] == "Irreducible"


def test_hyper_1f2():
    rep, code = run_hyper(a="1/2", b="1,1")
    validate(rep)
    assert rep["order"] == 3
    assert rep["conditions"]["t1"] is False
    assert rep["operator"] == "T^3 - t*T - 1/2*t"
    assert [s["value"] for s in rep["newton"]["slopes"]] == ["0", "1/2"]
    assert rep["newton"]["verdict"] == "Unknown"
    assert code == 0


def test_hyper_bad_base(capsys):
    assert main(["hyper", "--poly", "(x+2)^2"]) == 2
    assert "P(-1) = 0" in capsys.readouterr().err


def test_hyper_needs_one_family():
    assert main(["hyper"]) == 2
    assert main(["hyper", "--poly", "(x+1)^2", "--a", "1"]) == 2


def _write_jobs(path, jobs):
    path.write_text("".join(json.dumps(j) + "\n" for j in jobs), encoding="utf-8")


def test_batch(tmp_path, capsys):
    jobs = tmp_path / "jobs.jsonl"
    out = tmp_path / "out.jsonl"
    _write_jobs(
        jobs,
        [
            {"cmd": "siegel", "args": {"op": "T^2 - t", "form0": "[1,0]", "kmax": 1}},
            {"cmd": "newton", "args": {"op": "D^2 - t"}},
            {"cmd": "hyper", "args": {"poly": "(x+1)^3"}},
        ],
    )
    assert main(["batch", "--jobs", str(jobs), "--out", str(out), "--workers", "3"]) == 0
    assert capsys.readouterr().out.strip() == "3 ok / 0 failed"
    reps = [json.loads(line) for line in out.read_text().splitlines()]
    assert [r["command"] for r in reps] == ["siegel", "newton", "hyper"]
    for r in reps:
        validate(r)


def test_batch_error_isolated(tmp_path):
    jobs = tmp_path / "jobs.jsonl"
    out = tmp_path / "out.jsonl"
    _write_jobs(
        jobs,
        [
            {"cmd": "newton", "args": {"op": "T^2 - t"}},
            {"cmd": "newton", "args": {"op": "T^2 +* t"}},
            {"cmd": "siegel", "args": {"op": "T^2 - t", "form0": "[1,0]", "kmax": 0}},
        ],
    )
    ok, failed = run_batch(str(jobs), str(out))
    assert (ok, failed) == (2, 1)
    reps = [json.loads(line) for line in out.read_text().splitlines()]
    assert reps[1]["error"].startswith("OperatorSyntaxError") and reps[1]["exit_code"] == 2
    assert reps[0]["error"] is None and reps[2]["error"] is None
    for r in reps:
        validate(r)


def test_batch_empty(tmp_path, capsys):
    jobs = tmp_path / "jobs.jsonl"
    jobs.write_text("")
    out = tmp_path / "out.jsonl"
    assert main(["batch", "--jobs", str(jobs), "--out", str(out)]) == 0
    assert capsys.readouterr().out.strip() == "0 ok / 0 failed"
    assert out.read_text() == ""


def test_batch_order_independent_of_workers(tmp_path):
    jobs = tmp_path / "jobs.jsonl"
    specs = [{"cmd": "siegel", "args": {"op": f"T^{m} - t", "form0": "[" + ",".join(["1"] + ["0"] * (m - 1)) + "]"}}
             for m in (4, 2, 3, 2, 4, 3)]
    _write_jobs(jobs, specs)
    outs = []
    for workers in (1, 6):
        out = tmp_path / f"out{workers}.jsonl"
        run_batch(str(jobs), str(out), workers)
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_selftest_seed(monkeypatch, capsys):
    monkeypatch.setenv("THETA_FORGE_SEED", "5")
    assert main(["selftest", "--count", "10"]) == 0
    assert capsys.readouterr().out.strip() == "seed 5: 10 passed / 0 failed"
