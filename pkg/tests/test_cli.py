"""Driver behavior: exit codes, formats, determinism, atomic output."""

import io
import json

import pytest

from hyperlap import load_matrix, read_hypergraph, write_hypergraph, complete
from hyperlap.cli import ExperimentConfig, main, run, trial_seed


def test_run_spectrum_complete_pinned():
    cfg = ExperimentConfig(
        subcommand="spectrum", n=10, r=4, s=2, use_complete=True, deterministic=True
    )
    rep = run(cfg)
    assert rep.passed
    assert rep.timestamp is None
    got = [(rec["value"], rec["multiplicity"]) for rec in rep.records]
    assert got[0] == (0.0, 1)
    assert got[1][1] == 35
    assert got[2] == (1.25, 9)
    assert got[1][0] == pytest.approx(27 / 28)
    assert rep.summary["max_abs_error"] <= 1e-9


def test_trial_seed_stable():
    assert trial_seed(7, 0) == trial_seed(7, 0)
    assert trial_seed(7, 0) != trial_seed(7, 1)
    assert trial_seed(7, 1) != trial_seed(8, 1)


def test_exit_zero_on_pass(capsys):
    code = main(
        ["walk-count", "--n", "5", "--r", "2", "--s", "1", "--t", "2",
         "--deterministic"]
    )
    out = capsys.readouterr().out
    assert code == 0
    doc = json.loads(out)
    assert doc["pass"] is True
    assert doc["records"][0]["count"] == 20
    assert "timestamp" not in doc


def test_timestamp_unless_deterministic(capsys):
    main(["ekr", "--n", "8"])
    doc = json.loads(capsys.readouterr().out)
    assert "timestamp" in doc


def test_exit_one_on_tolerance_failure(capsys):
    code = main(
        ["radius", "--n", "8", "--r", "3", "--s", "1", "--p", "0.5",
         "--trials", "2", "--slack", "0.0", "--deterministic"]
    )
    doc = json.loads(capsys.readouterr().out)
    assert code == 1
    assert doc["pass"] is False
    assert doc["summary"]["within"] < 2


def test_exit_one_on_trial_error(capsys):
    # an (almost surely) empty hypergraph leaves no spectrum to report
    code = main(
        ["radius", "--n", "6", "--r", "3", "--s", "1", "--p", "1e-09",
         "--trials", "1", "--deterministic"]
    )
    doc = json.loads(capsys.readouterr().out)
    assert code == 1
    assert doc["records"][0]["error"] == "Disconnected"
    assert doc["summary"]["errors"] == 1


def test_exit_two_on_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["spectrum", "--n", "10", "--r", "4", "--s", "2"])  # no source
    assert exc.value.code == 2


def test_exit_two_on_bad_stop_size(capsys):
    code = main(
        ["spectrum", "--n", "10", "--r", "4", "--s", "3", "--complete",
         "--deterministic"]
    )
    doc = json.loads(capsys.readouterr().out)
    assert code == 2
    assert doc["summary"]["error"] == "NotLoose"
    assert doc["pass"] is False


def test_byte_identical_reruns(tmp_path):
    args = ["semicircle", "--n", "12", "--r", "3", "--s", "1", "--p", "0.5",
            "--trials", "3", "--seed", "9", "--bins", "10", "--deterministic"]
    out1 = tmp_path / "a.json"
    out2 = tmp_path / "b.json"
    assert main(args + ["--output", str(out1)]) == main(args + ["--output", str(out2)])
    assert out1.read_bytes() == out2.read_bytes()


def test_jobs_do_not_change_output(tmp_path):
    base = ["diameter", "--n", "10", "--r", "3", "--s", "1", "--p", "0.5",
            "--trials", "6", "--seed", "4", "--deterministic", "--format", "csv"]
    out1 = tmp_path / "serial.csv"
    out2 = tmp_path / "parallel.csv"
    main(base + ["--output", str(out1)])
    main(base + ["--output", str(out2), "--jobs", "4"])
    assert out1.read_bytes() == out2.read_bytes()


def test_csv_walk_count_row(capsys):
    main(["walk-count", "--n", "5", "--r", "2", "--s", "1", "--t", "2",
          "--format", "csv", "--deterministic"])
    lines = capsys.readouterr().out.splitlines()
    header = next(l for l in lines if not l.startswith("#"))
    assert header == "n,r,s,t,i,j,count,bound"
    assert "5,2,1,2,1,2,20,25.0" in lines


def test_json_roundtrips(capsys):
    main(["mixing", "--n", "9", "--r", "3", "--s", "1", "--p", "0.6",
          "--trials", "2", "--deterministic"])
    doc = json.loads(capsys.readouterr().out)
    assert set(doc) == {"config", "records", "summary", "pass"}
    assert len(doc["records"]) == doc["config"]["trials"] == 2
    assert json.loads(json.dumps(doc)) == doc


def test_output_written_even_on_setup_error(tmp_path):
    out = tmp_path / "err.json"
    code = main(
        ["spectrum", "--n", "10", "--r", "4", "--s", "3", "--complete",
         "--deterministic", "--output", str(out)]
    )
    assert code == 2
    doc = json.loads(out.read_text())
    assert doc["summary"]["error"] == "NotLoose"


def test_dump_matrix_flag(tmp_path):
    dump = tmp_path / "lap.txt"
    main(["spectrum", "--n", "8", "--r", "4", "--s", "2", "--complete",
          "--deterministic", "--dump-matrix", str(dump),
          "--output", str(tmp_path / "out.json")])
    with open(dump) as fh:
        m = load_matrix(fh)
    assert m.dim == 28
    assert m.entries[0, 0] == 1.0


def test_input_fixture(tmp_path, capsys):
    path = tmp_path / "h.txt"
    with open(path, "w") as fh:
        write_hypergraph(complete(7, 3), fh)
    code = main(["spectrum", "--n", "7", "--r", "3", "--s", "1",
                 "--input", str(path), "--deterministic"])
    doc = json.loads(capsys.readouterr().out)
    assert code == 0
    assert doc["summary"]["dim"] == 7
    assert doc["summary"]["lambda_bar"] == pytest.approx(1 / 6)


def test_trials_rejected_for_complete(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["mixing", "--n", "8", "--r", "4", "--s", "2", "--complete",
              "--trials", "3"])
    assert exc.value.code == 2
