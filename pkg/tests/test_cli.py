import csv
import io
import os

import pytest

from qglue.cli import HEADERS, GridError, SweepRequest, main, parse_grid, read_config, run_sweep


def _rows(path):
    with open(path) as fh:
        return list(csv.reader(fh))


def test_parse_grid_forms():
    assert parse_grid("0:0.5:0.1") == (0.0, 0.1, 0.2, 0.3, 0.4, 0.5)
    assert parse_grid("0.3,0.1,0.3") == (0.1, 0.3)
    assert parse_grid("0.25") == (0.25,)
    assert parse_grid("0.05:0.45:0.05")[-1] == 0.45


@pytest.mark.parametrize("bad", ["", "0:1", "0:1:0", "0:1:-0.1", "0.5:0.1:0.1", "a,b", "0:1.5:0.5", "-0.1"])
def test_parse_grid_rejects(bad):
    with pytest.raises(GridError):
        parse_grid(bad)


def test_request_validation():
    with pytest.raises(GridError):
        SweepRequest("amplitude", "q1B", (0.1,))
    with pytest.raises(GridError):
        SweepRequest("dephrasure", "delta2", (0.1,), lambda_grid=(0.1,))
    with pytest.raises(GridError):
        SweepRequest("amplitude", "q1B", (0.1,), lambda_grid=(0.1,), along_j=True)
    with pytest.raises(GridError):
        SweepRequest("amplitude", "asym_compare", (0.1,))


def test_q1B_erasure_limit(tmp_path):
    out = tmp_path / "q.csv"
    assert main(["sweep", "--p", "0", "--lambda", "0:0.5:0.1", "-o", str(out), "-j", "1"]) == 0
    rows = _rows(out)
    assert tuple(rows[0]) == HEADERS["q1"]
    q1 = [float(r[2]) for r in rows[1:]]
    assert q1 == pytest.approx([1.0, 0.8, 0.6, 0.4, 0.2, 0.0], abs=1e-12)
    assert all(r[-1] == "ok" for r in rows[1:])


def test_seventeen_digit_format(tmp_path):
    out = tmp_path / "q.csv"
    main(["sweep", "--p", "0.1", "--lambda", "0.1", "-o", str(out), "-j", "1"])
    assert _rows(out)[1][0] == "0.10000000000000001"


def test_usage_errors_exit_2(capsys):
    for argv in (
        ["sweep", "--p", "0:2:0.5", "--lambda", "0.1"],
        ["sweep", "--p", "0.1"],
        ["sweep", "--model", "dephrasure", "--quantity", "delta2", "--p", "0.1", "--lambda", "0.1"],
        ["sweep", "--quantity", "bogus", "--p", "0.1", "--lambda", "0.1"],
        ["verify", "nosuchsuite"],
    ):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 2


def test_failed_point_exit_1(tmp_path):
    out = tmp_path / "f.csv"
    # dephrasure only accepts p <= 1/2
    rc = main(["sweep", "--model", "dephrasure", "--p", "0.2,0.7", "--lambda", "0.1", "-o", str(out), "-j", "1"])
    assert rc == 1
    rows = _rows(out)
    assert [r[-1] for r in rows[1:]] == ["ok", "failed"]


def test_determinism_across_worker_counts(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["sweep", "--model", "dephrasure", "--quantity", "q1C", "--p", "0.1,0.3", "--lambda", "0.1,0.2"]
    assert main(args + ["-o", str(a), "-j", "1"]) == 0
    assert main(args + ["-o", str(b), "-j", "2"]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_rows_sorted_by_p_then_lambda(tmp_path):
    out = tmp_path / "s.csv"
    main(["sweep", "--p", "0.3,0.1", "--delta-lambda", "0.01,0.05", "-o", str(out), "-j", "1"])
    keys = [(float(r[0]), float(r[1])) for r in _rows(out)[1:]]
    assert keys == sorted(keys)


def test_delta2_columns(tmp_path):
    out = tmp_path / "d.csv"
    assert main(["sweep", "--quantity", "delta2", "--p", "0.25", "--delta-lambda", "0.025,0.06", "-o", str(out), "-j", "1"]) == 0
    rows = _rows(out)
    assert tuple(rows[0]) == HEADERS["delta2"]
    by_dl = {round(float(r[2]), 6): float(r[3]) for r in rows[1:]}
    assert by_dl[0.025] == pytest.approx(5.27e-3, rel=0.05)
    assert by_dl[0.06] < 0


def test_delta2star_along_j(tmp_path):
    out = tmp_path / "j.csv"
    rc = main(["sweep", "--model", "dephrasure", "--quantity", "delta2star", "--along-j",
               "--p", "0.1,0.3", "-o", str(out), "-j", "1"])
    assert rc == 0
    assert all(float(r[3]) > 0 for r in _rows(out)[1:])


def test_boundaries_subcommand(tmp_path):
    out = tmp_path / "b.csv"
    assert main(["boundaries", "--p", "0.25", "-o", str(out), "-j", "1"]) == 0
    rows = _rows(out)
    assert tuple(rows[0]) == HEADERS["boundaries"]
    l0, l1 = float(rows[1][1]), float(rows[1][2])
    assert l1 < l0
    assert l0 - l1 == pytest.approx(0.046691, abs=1e-4)


def test_asym_compare_subcommand(tmp_path):
    out = tmp_path / "a.csv"
    assert main(["asym-compare", "--p", "0.25", "--delta-lambda", "0.005,0.05", "-o", str(out), "-j", "1"]) == 0
    rows = _rows(out)
    assert tuple(rows[0]) == HEADERS["asym_compare"]
    assert abs(float(rows[1][4])) < abs(float(rows[2][4])) < 0.69


def test_config_file_and_precedence(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# sweep settings\nquantity = q1C\nlambda = 0.3\np = 0.1\nworkers = 1\n")
    assert read_config(cfg)["quantity"] == "q1C"
    out = tmp_path / "c.csv"
    assert main(["sweep", "--config", str(cfg), "--p", "0.2", "-o", str(out)]) == 0
    rows = _rows(out)
    assert len(rows) == 2 and float(rows[1][0]) == pytest.approx(0.2)
    assert float(rows[1][1]) == pytest.approx(0.3)


def test_bad_config_key_is_usage_error(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("colour = blue\n")
    with pytest.raises(SystemExit) as exc:
        main(["sweep", "--config", str(cfg), "--p", "0.1", "--lambda", "0.1"])
    assert exc.value.code == 2


def test_atomic_write_leaves_no_temp_files(tmp_path):
    out = tmp_path / "x.csv"
    run_sweep(SweepRequest("amplitude", "q1B", (0.1,), lambda_grid=(0.2,), output_path=str(out), workers=1))
    assert os.listdir(tmp_path) == ["x.csv"]


def test_verify_subcommand(capsys):
    assert main(["verify", "numkernel", "asymptotics"]) == 0
    out = capsys.readouterr().out
    assert "PASS" in out and "residual=" in out and "0 failed" in out


def test_stdout_output(capsys):
    assert main(["sweep", "--p", "0", "--lambda", "0.25", "-j", "1"]) == 0
    rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
    assert float(rows[1][2]) == pytest.approx(0.5, abs=1e-12)
