import csv
import io

import numpy as np
import pytest

from photonic import cli
from photonic.textio import read_superposition


def read_csv(path):
    lines = [ln for ln in path.read_text().splitlines() if not ln.startswith("#")]
    return list(csv.DictReader(io.StringIO("\n".join(lines))))


def test_clock_csv(tmp_path):
    out = tmp_path / "clock.csv"
    assert cli.main(["clock", "--speeds", "0,0.6,0.9", "-o", str(out)]) == 0
    text = out.read_text()
    assert text.startswith("# photonic ")
    assert "# command: photonic clock --speeds 0,0.6,0.9" in text
    rows = read_csv(out)
    assert list(rows[0]) == ["speed", "gamma", "v_z", "residual"]
    vz = [float(r["v_z"]) for r in rows]
    np.testing.assert_allclose(vz, [1.0, 0.8, 0.43588989435406735], atol=1e-12)


def test_ellipsoid_csv(tmp_path):
    out = tmp_path / "ell.csv"
    assert cli.main(["ellipsoid", "--v", "0.6", "--pairs", "10000", "--bins", "32", "--seed", "7", "-o", str(out)]) == 0
    rows = read_csv(out)
    assert list(rows[0]) == ["v", "theta", "r_empirical", "r_closed_form", "r_em"]
    assert len(rows) == 32
    for r in rows:
        emp, closed = float(r["r_empirical"]), float(r["r_closed_form"])
        assert abs(emp - closed) / emp <= 0.01


def test_boost_bundled_pair(tmp_path, capsys):
    out = tmp_path / "boosted.txt"
    assert cli.main(["boost", "--v", "0.6", "-o", str(out)]) == 0
    text = out.read_text()
    drift = float(next(ln for ln in text.splitlines() if "rest_mass_drift" in ln).split(":")[1])
    assert drift <= 1e-8
    np.testing.assert_allclose(read_superposition(out).magnitudes, [2.0, 0.5], rtol=1e-12)
    assert "boost:" in capsys.readouterr().out


def test_boost_from_file_with_vector(tmp_path):
    src = tmp_path / "in.txt"
    src.write_text("0 1 0\n0 -1 0\n")
    out = tmp_path / "out.txt"
    assert cli.main(["boost", "-i", str(src), "--v", "0.6,0,0", "-o", str(out)]) == 0
    np.testing.assert_allclose(read_superposition(out).momenta, [[0.75, 1, 0], [0.75, -1, 0]], atol=1e-12)


def test_pair_table(tmp_path):
    out = tmp_path / "pair.csv"
    assert cli.main(["pair", "--v", "0.6", "--thetas", "0,pi/2", "-o", str(out)]) == 0
    rows = read_csv(out)
    assert list(rows[0]) == ["v", "theta", "a", "b", "r"]
    np.testing.assert_allclose([float(rows[0][k]) for k in "abr"], [2.0, 0.5, 1.25], rtol=1e-12)
    np.testing.assert_allclose([float(rows[1][k]) for k in "abr"], [1.25, 1.25, 1.0], rtol=1e-12)


def test_mbr_find_report(tmp_path):
    out = tmp_path / "frame.txt"
    sky = tmp_path / "sky.csv"
    assert cli.main(["mbr-find", "--speed-km-s", "350", "--direction", "0,0,1", "--sky-output", str(sky),
                     "-o", str(out)]) == 0
    report = dict(ln.split(": ", 1) for ln in out.read_text().splitlines() if not ln.startswith("#"))
    assert float(report["speed_km_s"]) == pytest.approx(350.0, rel=1e-3)
    assert int(report["iterations"]) >= 1
    assert float(report["final_dipole_ratio"]) < 1e-9
    rows = read_csv(sky)
    assert list(rows[0]) == ["nx", "ny", "nz", "temperature_k"]
    assert len(rows) == 10_000


def test_check_passes(tmp_path, capsys):
    out = tmp_path / "check.txt"
    assert cli.main(["check", "-o", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines and all(ln.startswith("PASS") for ln in lines)


def test_check_flags_zero_magnitude_line(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("# broken\n1 0 0\n0 0 0\n")
    assert cli.main(["check", "-i", str(bad)]) == 1
    assert "line 3" in capsys.readouterr().out


def test_malformed_input_exit_1(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("1 0 0\n1 2\n")
    assert cli.main(["boost", "-i", str(bad), "--v", "0.1"]) == 1
    assert "line 2" in capsys.readouterr().err


def test_missing_file_exit_1(tmp_path):
    assert cli.main(["clock", "-i", str(tmp_path / "nope.txt")]) == 1


def test_bad_speed_exit_1():
    assert cli.main(["clock", "--speeds", "0.5,1.0"]) == 1


def test_bad_flag_exit_1():
    assert cli.main(["clock", "--no-such-flag"]) == 1


def test_non_convergence_exit_2(tmp_path, capsys):
    src = tmp_path / "massless.txt"
    src.write_text("1 0 0\n2 0 0\n")
    assert cli.main(["boost", "-i", str(src), "--v", "0.1"]) == 1  # massless is a validation error
    assert cli.main(["mbr-find", "--samples", "100", "--noise", "1e-3", "--tol", "1e-14"]) == 2


def test_config_file_and_precedence(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# sweep\nspeeds = 0.6\nseed = 3\n")
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert cli.main(["clock", "--config", str(cfg), "-o", str(a)]) == 0
    assert [float(r["speed"]) for r in read_csv(a)] == [0.6]
    assert "# seed: 3" in a.read_text()
    assert cli.main(["clock", "--config", str(cfg), "--speeds", "0.3,0.9", "-o", str(b)]) == 0
    assert [float(r["speed"]) for r in read_csv(b)] == [0.3, 0.9]


def test_config_file_unknown_key(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("colour = red\n")
    assert cli.main(["clock", "--config", str(cfg)]) == 1


def test_help_documents_flags(capsys):
    with pytest.raises(SystemExit) as info:
        cli.main(["ellipsoid", "--help"])
    assert info.value.code == 0
    text = capsys.readouterr().out
    for flag in ("--v", "--pairs", "--bins", "--seed", "--output", "--config", "--tolerance"):
        assert flag in text


def test_run_config_validation():
    assert cli.run(cli.RunConfig(command="clock", speeds=[0.5], tolerance=0.0)) == 1
    assert cli.check_all() == 0
