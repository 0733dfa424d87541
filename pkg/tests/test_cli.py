"""End-to-end command line checks; every handler stays a thin adapter."""

import argparse
import csv
import hashlib
import io
import json

import numpy as np
import pytest

from cubewalk.bitspace import ConnectionSet
from cubewalk.cli import _emit_survey, main
from cubewalk.dynamics import HALF_PI, all_fidelities
from cubewalk.scanner import ScanReport


def _run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def _json_of(out):
    doc = json.loads(out)
    payload = {k: v for k, v in doc.items() if k != "manifest"}
    return doc, payload


def test_pst_check_with_transfer(capsys):
    code, out, _ = _run(capsys,
                        ["pst-check", "--n", "3", "--omega", "010,001,111"])
    assert code == 0
    doc, _ = _json_of(out)
    assert doc["u"] == "100"
    assert doc["pst"] is True
    assert doc["time"] == "pi/2"
    assert doc["delta"] == "100"
    assert doc["phase"] == {"re": 0, "im": 1}
    assert doc["method"] == "closed-form"


def test_pst_check_revival(capsys):
    code, out, _ = _run(capsys, ["pst-check", "--n", "3",
                                 "--omega", "100,010,001,111"])
    assert code == 0
    doc, _ = _json_of(out)
    assert doc["u"] == "000"
    assert doc["pst"] is False
    assert doc["note"] == "revival at pi/2"


def test_spectrum_csv(capsys):
    code, out, err = _run(capsys, ["spectrum", "--n", "3",
                                   "--omega", "100,010,001", "--csv"])
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["v_binary", "lambda", "k", "congruence_class"]
    assert len(rows) == 9
    lams = sorted(int(r[1]) for r in rows[1:])
    assert lams == [-3, -1, -1, -1, 1, 1, 1, 3]
    manifest = json.loads(err)["manifest"]
    assert manifest["tool"] == "cubewalk"
    assert "payload_sha256" in manifest


def test_spectrum_json_matches_library(capsys):
    code, out, _ = _run(capsys, ["spectrum", "--n", "3",
                                 "--omega", "001,010,111"])
    assert code == 0
    doc, payload = _json_of(out)
    assert doc["all_pass"] is True
    assert doc["case"] == "xor-sum outside set"
    digest = hashlib.sha256(json.dumps(
        payload, sort_keys=True, separators=(",", ":")).encode()).hexdigest()
    assert doc["manifest"]["payload_sha256"] == digest


def test_evolve_exact_mode(capsys):
    code, out, _ = _run(capsys, ["evolve", "--n", "2", "--omega", "01,10",
                                 "--t-pi", "1/2"])
    assert code == 0
    doc, _ = _json_of(out)
    assert doc["mode"] == "exact"
    by_delta = {e["delta"]: e for e in doc["fidelities"]}
    assert by_delta["11"]["fidelity"] == 1.0
    assert by_delta["00"]["fidelity"] == 0.0
    assert by_delta["11"]["amplitude_exact"] == {"re": -4, "im": 0}
    fid = all_fidelities(ConnectionSet.parse("01,10", 2), HALF_PI)
    for entry in doc["fidelities"]:
        assert entry["fidelity"] == fid[int(entry["delta"], 2)]


def test_evolve_float_mode_csv(capsys):
    code, out, err = _run(capsys, ["evolve", "--n", "2", "--omega", "01,10",
                                   "--t-real", "0.7", "--csv"])
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["delta_binary", "fidelity", "re", "im"]
    assert len(rows) == 5
    total = sum(float(r[1]) ** 2 for r in rows[1:])
    assert abs(total - 1.0) <= 1e-9
    json.loads(err)  # manifest line must parse


def test_fidelity_subcommand(capsys):
    code, out, _ = _run(capsys, ["fidelity", "--n", "3",
                                 "--omega", "010,001,111",
                                 "--delta", "100", "--t-pi", "1/2"])
    assert code == 0
    doc, _ = _json_of(out)
    assert doc["fidelity"] == 1.0
    assert doc["mode"] == "exact"
    assert doc["amplitude_exact"] == {"re": 0, "im": 8}


def test_measure_notes(capsys):
    code, out, _ = _run(capsys, ["measure", "--n", "2", "--omega", "01,10,11",
                                 "--t-pi", "1/2"])
    assert code == 0
    doc, _ = _json_of(out)
    assert "back at its start" in doc["note"]
    probs = {e["vertex"]: e["p"] for e in doc["distribution"]}
    assert probs["00"] == 1.0
    code, out, _ = _run(capsys, ["measure", "--n", "2", "--omega", "01",
                                 "--t-pi", "3/2", "--a", "10"])
    doc, _ = _json_of(out)
    assert "a xor u" in doc["note"]
    probs = {e["vertex"]: e["p"] for e in doc["distribution"]}
    assert probs["11"] == 1.0


def test_measure_no_note_off_grid(capsys):
    code, out, _ = _run(capsys, ["measure", "--n", "2", "--omega", "01",
                                 "--t-real", "0.3"])
    assert code == 0
    doc, _ = _json_of(out)
    assert "note" not in doc


def test_graph_subcommand(capsys):
    code, out, _ = _run(capsys, ["graph", "--n", "3",
                                 "--omega", "001,010,100,111"])
    assert code == 0
    doc, _ = _json_of(out)
    assert doc["connected"] is True
    assert doc["diameter"] == 2
    assert doc["shells"] == [1, 4, 3]
    assert doc["bipartite"] is True
    assert doc["complete_bipartite"] == [4, 4]
    code, out, _ = _run(capsys, ["graph", "--n", "2", "--omega", "01,10"])
    doc, _ = _json_of(out)
    assert doc["complete_bipartite"] == [2, 2]
    assert doc["antipodal"] == ["11"]


def test_graph_disconnected(capsys):
    code, out, _ = _run(capsys, ["graph", "--n", "2", "--omega", "11"])
    assert code == 0
    doc, _ = _json_of(out)
    assert doc["connected"] is False
    assert doc["antipodal"] is None
    dist = {e["v"]: e["dist"] for e in doc["distances"]}
    assert dist["01"] is None and dist["11"] == 1


def test_pst_search(capsys):
    code, out, _ = _run(capsys, ["pst-search", "--n", "3",
                                 "--omega", "010,001,111", "--delta", "100"])
    assert code == 0
    doc, _ = _json_of(out)
    assert doc["pst"] is True and doc["time"] == "pi/2"
    code, out, _ = _run(capsys, ["pst-search", "--n", "3",
                                 "--omega", "010,001,111", "--delta", "001"])
    doc, _ = _json_of(out)
    assert doc["pst"] is False and "time" not in doc


def test_route_subcommand(capsys):
    code, out, _ = _run(capsys, ["route", "--n", "4", "--target", "1011"])
    assert code == 0
    doc, _ = _json_of(out)
    assert doc["total_time"] == "3*pi/2"
    hops = [s["hop"] for s in doc["stages"]]
    assert hops == ["0001", "0010", "1000"]
    acc = 0
    for stage in doc["stages"]:
        acc ^= int(stage["hop"], 2)
        assert stage["time"] == "pi/2"
    assert acc == 0b1011


def test_scan_and_audit_exit_codes(capsys):
    code, out, err = _run(capsys, ["scan", "--n", "3", "--u-zero"])
    assert code == 0
    doc, _ = _json_of(out)
    assert doc["report"]["summary"]["counterexamples"] == 0
    assert "conjecture-scan" in err
    code, out, err = _run(capsys, ["audit-antipodal", "--n", "2"])
    assert code == 0
    doc, _ = _json_of(out)
    assert doc["report"]["violations"] == 0
    assert "digest" in err


def test_survey_violation_exit_code(capsys):
    # wiring check only: a nonzero violation count must map to exit 3
    report = ScanReport(kind="conjecture-scan", n=2, filters={}, universe=1,
                        findings=[{"omega": ["11"]}],
                        summary={"counterexamples": 1}, violations=1,
                        wall_time_s=0.01)
    args = argparse.Namespace(command="scan", raw_argv=["scan"],
                              started_at="now", out=None)
    assert _emit_survey(args, report, {"n": 2}) == 3
    capsys.readouterr()


def test_scan_manifest_records_wall_time_not_payload(capsys):
    code, out, _ = _run(capsys, ["scan", "--n", "2"])
    assert code == 0
    doc, payload = _json_of(out)
    assert "wall_time_s" in doc["manifest"]
    assert "wall_time_s" not in json.dumps(payload)
    digest = hashlib.sha256(json.dumps(
        payload, sort_keys=True, separators=(",", ":")).encode()).hexdigest()
    assert doc["manifest"]["payload_sha256"] == digest


def test_out_flag_writes_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out, _ = _run(capsys, ["spectrum", "--n", "2", "--omega", "01,10",
                                 "--out", str(target)])
    assert code == 0
    assert out == ""
    doc = json.loads(target.read_text())
    assert doc["command"] == "spectrum"


def test_json_round_trip_idempotent(capsys):
    code, out, _ = _run(capsys, ["graph", "--n", "3", "--omega", "001,010"])
    doc = json.loads(out)
    assert json.loads(json.dumps(doc)) == doc


def test_oracle_verify_subcommand(capsys):
    code, out, _ = _run(capsys, ["oracle-verify", "--trials", "5",
                                 "--pairs", "2", "--n-max", "4"])
    assert code == 0
    doc, _ = _json_of(out)
    assert doc["ok"] is True
    assert doc["commutator_max"] == 0


def test_invalid_inputs_exit_2(capsys):
    assert _run(capsys, ["spectrum", "--n", "3", "--omega", "000"])[0] == 2
    assert _run(capsys, ["spectrum", "--n", "3", "--omega", "01"])[0] == 2
    assert _run(capsys, ["pst-search", "--n", "3", "--omega", "001",
                         "--delta", "000"])[0] == 2
    assert _run(capsys, ["evolve", "--n", "2", "--omega", "01",
                         "--t-pi", "nonsense"])[0] == 2
    assert _run(capsys, ["route", "--n", "3", "--target", "000"])[0] == 2


def test_unknown_subcommand_exits_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2
    capsys.readouterr()


def test_jobs_environment_default(capsys, monkeypatch):
    monkeypatch.setenv("CUBEWALK_JOBS", "2")
    code, out, _ = _run(capsys, ["audit-antipodal", "--n", "2"])
    assert code == 0
    monkeypatch.setenv("CUBEWALK_JOBS", "0")
    assert _run(capsys, ["audit-antipodal", "--n", "2"])[0] == 2


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as info:
        main(["--version"])
    assert info.value.code == 0
    assert "cubewalk" in capsys.readouterr().out
