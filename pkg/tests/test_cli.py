import csv
import io
import json
from pathlib import Path

import pytest

from giant_atom.cli import main

CONFIGS = Path(__file__).resolve().parent.parent / "configs"

ZERO = """\
[coupling]
gamma_l1 = 0
gamma_r1 = 0
gamma_l2 = 0
gamma_r2 = 0
[atom]
omega_e = 1
omega_drive = 2
[geometry]
tau = 0.5
theta = 1
[grid]
delta_min = -5
delta_max = 5
steps = 51
"""


def _read_csv(path):
    lines = [ln for ln in Path(path).read_text().splitlines() if not ln.startswith("#")]
    return list(csv.DictReader(io.StringIO("\n".join(lines))))


def _notes(path):
    return dict(ln[2:].split("=", 1) for ln in Path(path).read_text().splitlines()
                if ln.startswith("# "))


@pytest.fixture
def zero_cfg(tmp_path):
    p = tmp_path / "zero.cfg"
    p.write_text(ZERO)
    return p


def test_verify_seed_42(tmp_path, capsys):
    out = tmp_path / "verify.csv"
    assert main(["verify", "--seed", "42", "--out", str(out)]) == 0
    rows = {r["metric"]: float(r["value"]) for r in _read_csv(out)}
    assert rows["max_t_deviation"] < 1e-9
    assert rows["max_abs_r_deviation"] < 1e-9
    assert _notes(out)["draws"] == "10000"
    assert "max_t_deviation" in capsys.readouterr().err


def test_spectrum_zero_coupling(zero_cfg, tmp_path):
    out = tmp_path / "s.csv"
    assert main(["spectrum", "--config", str(zero_cfg), "--out", str(out)]) == 0
    rows = _read_csv(out)
    assert len(rows) == 51
    assert list(rows[0]) == ["delta", "t_re", "t_im", "r_re", "r_im", "T", "R"]
    assert all(float(r["T"]) == 1.0 and float(r["R"]) == 0.0 for r in rows)


def test_special_tau_window_output(tmp_path):
    out = tmp_path / "tau.csv"
    assert main(["special-tau", "--config", str(CONFIGS / "special_tau.cfg"),
                 "--out", str(out)]) == 0
    taus = {(r["sign"], int(r["order"])): float(r["tau"]) for r in _read_csv(out)}
    assert taus[("plus", 5577)] == pytest.approx(13 / 7, rel=1e-15)
    assert taus[("minus", 4329)] == pytest.approx(13 / 9, rel=1e-15)
    assert taus[("plus", 5005)] == pytest.approx(5 / 3, rel=1e-15)
    assert taus[("minus", 4995)] == pytest.approx(5 / 3, rel=1e-15)


def test_special_points_big_we(tmp_path):
    out = tmp_path / "sp.json"
    assert main(["special-points", "--config", str(CONFIGS / "special_tau.cfg"),
                 "--out", str(out), "--format", "json"]) == 0
    doc = json.loads(out.read_text())
    deltas = sorted(float(row[0]) for row in doc["rows"])
    assert deltas == pytest.approx([-3 * 3.141592653589793, 3 * 3.141592653589793], abs=1e-9)


def test_heatmap_and_classify(tmp_path):
    cfg = str(CONFIGS / "buec_driven_markov.cfg")
    hm = tmp_path / "hm.csv"
    assert main(["heatmap", "--config", cfg, "--out", str(hm)]) == 0
    assert len(_read_csv(hm)) == 1001 * 81
    assert "order" in _notes(hm)
    cl = tmp_path / "cl.json"
    assert main(["classify", "--config", cfg, "--out", str(cl), "--format", "json"]) == 0
    doc = json.loads(cl.read_text())
    assert doc["rows"][0][0] == "BUEC"


@pytest.mark.parametrize("sub", ["spectrum", "special-tau", "verify", "classify"])
def test_byte_identical_output(sub, tmp_path):
    cfg = str(CONFIGS / "special_tau.cfg")
    outs = []
    for i in range(2):
        out = tmp_path / f"{sub}{i}.csv"
        args = [sub, "--out", str(out), "--seed", "7"]
        if sub != "verify":
            args += ["--config", cfg]
        assert main(args) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_csv_roundtrip_full_precision(tmp_path):
    from giant_atom import AtomParams, ChiralCoupling, GeometryPhase, SweepGrid, sweep_spectrum

    out = tmp_path / "s.csv"
    assert main(["spectrum", "--config", str(CONFIGS / "buec_driven_markov.cfg"), "--out", str(out)]) == 0
    rows = _read_csv(out)
    spec = sweep_spectrum(ChiralCoupling(1, 3, 3, 1), AtomParams(0.0, omega_drive=2 * 3.141592653589793),
                          GeometryPhase.markovian(3.141592653589793),
                          SweepGrid(-4 * 3.141592653589793, 4 * 3.141592653589793, 1001))
    for row, d, t, big_t in zip(rows, spec.delta, spec.t, spec.T):
        assert float(row["delta"]) == d
        assert complex(float(row["t_re"]), float(row["t_im"])) == t
        assert float(row["T"]) == big_t
    # 17 significant digits, scientific notation
    mantissa = rows[1]["delta"].split("e")[0].lstrip("-").replace(".", "")
    assert len(mantissa) == 17


def test_json_is_versioned(zero_cfg, tmp_path):
    out = tmp_path / "s.json"
    assert main(["spectrum", "--config", str(zero_cfg), "--out", str(out), "--format", "json"]) == 0
    doc = json.loads(out.read_text())
    assert doc["schema_version"] == 1
    assert doc["columns"][0] == "delta"


def test_stdout_when_no_path(zero_cfg, capsys):
    assert main(["classify", "--config", str(zero_cfg)]) == 0
    assert capsys.readouterr().out.startswith("regime,symmetric")


@pytest.mark.parametrize("args", [
    ["spectrum"],
    ["spectrum", "--config", "/nonexistent.cfg"],
    ["bogus"],
    ["verify", "--seed", "-1"],
    ["verify", "--format", "xml"],
    ["special-tau", "--config", "ZERO"],
])
def test_input_errors_exit_1(args, zero_cfg, capsys):
    args = [str(zero_cfg) if a == "ZERO" else a for a in args]
    try:
        code = main(args)
    except SystemExit as exc:  # argparse rejections
        code = exc.code
    assert code == 1
    assert capsys.readouterr().err


def test_bad_config_reports_line(tmp_path, capsys):
    p = tmp_path / "bad.cfg"
    p.write_text(ZERO.replace("gamma_l1 = 0", "gamma_l1 = -1"))
    assert main(["spectrum", "--config", str(p)]) == 1
    err = capsys.readouterr().err
    assert "rate must be >= 0" in err and "line 2" in err


def test_failed_verification_exits_2(monkeypatch, capsys):
    import giant_atom.cli as cli

    real = cli._verify

    def failing(config, seed):
        table, _ = real(config, seed)
        return table, False

    monkeypatch.setattr(cli, "_verify", failing)
    assert cli.run("verify", cli.parse_config(ZERO), stdout=io.StringIO()) == 2
    assert "disagree" in capsys.readouterr().err
