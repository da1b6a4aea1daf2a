import csv

import pytest

from guardzone.cli import EXIT_INPUT, EXIT_NOCONVERGE, EXIT_OK, run
from guardzone.errors import DomainError
from guardzone.output import emit_csv, format_value


def test_emit_csv_two_rows(tmp_path):
    p = emit_csv([(1.0, 32.5)], ["d_miles", "power_dbm"], tmp_path / "a.csv")
    raw = p.read_bytes()
    assert raw == b"d_miles,power_dbm\n1.0,32.5\n"


def test_emit_csv_round_trip(tmp_path):
    rows = [(0.1, 1 / 3, True), (2.0, -1e-300, False)]
    p = emit_csv(rows, ["a", "b", "ok"], tmp_path / "r.csv")
    with p.open(newline="") as fh:
        back = list(csv.reader(fh))
    assert back[0] == ["a", "b", "ok"]
    assert [float(x) for x in back[1][:2]] == [0.1, 1 / 3]
    assert float(back[2][1]) == -1e-300
    assert back[1][2] == "true" and back[2][2] == "false"


def test_emit_csv_empty_raises(tmp_path):
    with pytest.raises(DomainError):
        emit_csv([], ["a"], tmp_path / "e.csv")
    assert list(tmp_path.iterdir()) == []


def test_format_value():
    assert format_value(0.1) == "0.1"
    assert format_value(3) == "3"


def test_budget_command(tmp_path, capsys):
    assert run(["budget", "--out", str(tmp_path)]) == EXIT_OK
    out = capsys.readouterr().out
    assert "33.4 dBm" in out and "6.3%" in out
    assert (tmp_path / "report.txt").exists()
    rows = list(csv.DictReader((tmp_path / "budget.csv").open()))
    assert float(rows[1]["watts"]) == pytest.approx(4.0)


def test_forward_guardzone_scan(tmp_path):
    assert run(["forward-guardzone", "--out", str(tmp_path)]) == EXIT_OK
    rows = list(csv.DictReader((tmp_path / "forward_guardzone.csv").open()))
    assert len(rows) == 6 * 3
    for row in rows:
        assert row["converged"] == "true"
        if float(row["fm_radius_ratio"]) == 2.0:
            assert float(row["guard_distance_mi"]) == 0.0


def test_validate_eqa3_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for d in (a, b):
        assert run(["validate-eqa3", "--seed", "7", "--samples", "20000", "--out", str(d)]) == EXIT_OK
    assert (a / "eqa3_validation.csv").read_bytes() == (b / "eqa3_validation.csv").read_bytes()


def test_validate_eqa3_without_seed_is_input_error(tmp_path, capsys):
    assert run(["validate-eqa3", "--out", str(tmp_path)]) == EXIT_INPUT
    err = capsys.readouterr().err
    assert err.startswith("guardzone: error:") and err.count("\n") == 1


def test_bad_config_exit_code(tmp_path, capsys):
    cfg = tmp_path / "bad.ini"
    cfg.write_text("[budget]\ntotal_transmit_power_w = -5\n")
    assert run(["budget", "--config", str(cfg), "--out", str(tmp_path / "o")]) == EXIT_INPUT
    assert "total_transmit_power" in capsys.readouterr().err


def test_nonconvergence_writes_trace(tmp_path):
    # an FM transmitter far louder than the ring can shed within the bracket
    cfg = tmp_path / "loud.ini"
    cfg.write_text("[forward]\nfm_erp_per_channel_w = 1e12\n")
    status = run(["forward-curve", "--config", str(cfg), "--out", str(tmp_path)])
    assert status == EXIT_NOCONVERGE
    assert (tmp_path / "forward_trace.csv").exists()
    assert "NOT CONVERGED" in (tmp_path / "report.txt").read_text()


def test_ring_dump_and_explain(tmp_path, capsys):
    assert run(["budget", "--explain", "--ring-at", "7", "--out", str(tmp_path)]) == EXIT_OK
    assert "budget.total_transmit_power_w = 25" in capsys.readouterr().out
    rows = list(csv.DictReader((tmp_path / "ring.csv").open()))
    assert float(rows[0]["site_weight"]) == 1.0
