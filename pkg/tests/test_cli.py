import json
import subprocess
import sys

import pytest

from drinfeld_structure.cli import RunConfig, config_from_args, main, run

WORKED = ["--p", "2", "--n", "2", "--a1", "[0,0]", "--a2", "[0,0]", "--a3", "[1,0]"]


def _run(argv, capsys):
    status = main(argv + ["--no-timestamp"])
    out = capsys.readouterr().out
    return status, out


def test_analyze_worked_example(capsys):
    status, out = _run(["analyze"] + WORKED, capsys)
    assert status == 0
    doc = json.loads(out)
    assert doc["schema"] == 1
    r = doc["result"]
    assert (r["P"], r["d"], r["m"], r["c"], r["mu"]) == ([0, 1], 1, 2, [], 1)
    assert r["supersingular"] is True
    assert r["i1"] == r["i2"] == [1, 1] and r["chi"] == [1, 0, 1]
    assert all(r["predicates"].values())


def test_analyze_with_rho(capsys):
    status, out = _run(["analyze"] + WORKED + ["--rho", "[1,1]"], capsys)
    doc = json.loads(out)
    assert status == 0 and doc["rho"]["order_in_end"] is True
    assert doc["rho"]["lemma21_quotient"] is not None


def test_enumerate_reports_48_records(capsys):
    status, out = _run(["enumerate", "--p", "2", "--n", "2"], capsys)
    doc = json.loads(out)
    assert status == 0 and doc["count"] == 48 and doc["failures"] == 0
    assert len(doc["records"]) == 48


def test_enumerate_csv(capsys):
    status, out = _run(["enumerate", "--p", "2", "--n", "2", "--format", "csv"], capsys)
    lines = out.splitlines()
    assert status == 0 and len(lines) == 49 and lines[0].startswith("index,a1,a2,a3")


def test_realize_witness(capsys):
    status, out = _run(["realize", "--p", "2", "--i1", "[1,1]", "--i2", "[1,1]"], capsys)
    doc = json.loads(out)
    assert status == 0 and doc["status"] == "realized"
    w = doc["witness"]
    assert w["ordinary"] is True and w["i1"] == w["i2"] == [1, 1]
    assert w["a1"] == [0, 1]


def test_frobmatrix(capsys):
    argv = ["frobmatrix", "--p", "2", "--n", "2", "--a1", "[0,1]", "--a2", "[0,0]",
            "--a3", "[1,1]", "--a", "[1,1]"]
    status, out = _run(argv, capsys)
    doc = json.loads(out)
    assert status == 0 and doc["trace_congruent_c"] and doc["det_congruent_mu_Pm"]
    assert doc["fixed_submodule"] == doc["expected_fixed_submodule"]


def test_conjecture_and_census(capsys):
    status, out = _run(["conjecture", "--p", "2", "--n", "2"], capsys)
    assert status == 0 and json.loads(out)["discrepancies"]
    status, out = _run(["census", "--p", "2", "--n", "2", "--format", "csv"], capsys)
    assert status == 0 and out.splitlines()[0] == "i1,i2,ordinary,count"


def test_output_is_deterministic(capsys, tmp_path):
    outs = []
    for workers in ("1", "2"):
        path = tmp_path / f"out{workers}.json"
        assert main(["enumerate", "--p", "2", "--n", "2", "--workers", workers,
                     "--no-timestamp", "--out", str(path)]) == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_timestamp_present_by_default(capsys):
    main(["analyze"] + WORKED)
    assert "generated_at" in json.loads(capsys.readouterr().out)


def test_config_file_matches_flags(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"command": "analyze", "p": 2, "n": 2, "a1": [0, 0],
                               "a2": [0, 0], "a3": [1, 0], "no_timestamp": True}))
    assert main(["--config", str(cfg)]) == 0
    from_file = capsys.readouterr().out
    _, from_flags = _run(["analyze"] + WORKED, capsys)
    assert from_file == from_flags
    # explicit flags override the file
    assert main(["analyze", "--config", str(cfg), "--a3", "[0,1]"]) == 0
    assert json.loads(capsys.readouterr().out)["result"]["a3"] == [0, 1]


@pytest.mark.parametrize("argv", [
    ["analyze", "--p", "2", "--n", "2", "--a1", "[0,0]", "--a2", "[0,0]", "--a3", "[0,0]"],
    ["analyze", "--p", "2", "--n", "2", "--a1", "[0,0]", "--a2", "[0,0]", "--a3", "[7]"],
    ["analyze", "--p", "2", "--n", "2", "--a1", "oops", "--a2", "[0]", "--a3", "[1]"],
    ["analyze", "--p", "2", "--n", "2"],
    ["realize", "--p", "2", "--i1", "[1,1]", "--i2", "[0,1]"],
    ["frobmatrix"] + WORKED + ["--a", "[0,1]"],
    ["bogus"],
    [],
])
def test_usage_errors_exit_2(argv, capsys):
    assert main(argv) == 2


def test_cap_exceeded_exit_3(capsys):
    status, out = _run(["enumerate", "--p", "2", "--n", "2", "--cap", "10"], capsys)
    assert status == 3 and json.loads(out)["error"]["kind"] == "cap_exceeded"
    status, _ = _run(["frobmatrix"] + WORKED + ["--a", "[1,1,1]", "--kmax", "1"], capsys)
    assert status == 3


def test_run_does_not_leak_caps():
    from drinfeld_structure import config
    before = config.ENUM_CAP
    run(RunConfig(command="enumerate", p=2, n=2, cap=10, no_timestamp=True))
    assert config.ENUM_CAP == before


def test_predicate_failure_exit_1(monkeypatch):
    import drinfeld_structure.cli as cli
    from drinfeld_structure.structure import verify_paper_predicates

    def broken(D):
        rec = verify_paper_predicates(D)
        rec.predicates["prop21"] = False
        return rec

    monkeypatch.setattr(cli, "verify_paper_predicates", broken)
    status, text = run(config_from_args(["analyze"] + WORKED + ["--no-timestamp"]))
    assert status == 1
    doc = json.loads(text)
    assert doc["result"]["passed"] is False and doc["result"]["a3"] == [1, 0]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "drinfeld_structure", "analyze", *WORKED,
                           "--no-timestamp"], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["schema"] == 1
