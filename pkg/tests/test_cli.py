import csv
import json
import math
import subprocess
import sys

import pytest

from qwalk2d import __version__, limitdist
from qwalk2d.cli import main, parse_qudit


def read_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    return rows[0], [[float(x) for x in r] for r in rows[1:]]


def test_parse_qudit():
    q = parse_qudit("0.5:0,-0.5:0,0.5,0:0.5")
    assert q.amps == (0.5, -0.5, 0.5, 0.5j)
    with pytest.raises(ValueError):
        parse_qudit("1,0,0")


def test_version(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert __version__ in capsys.readouterr().out


def test_help_runs_as_module():
    res = subprocess.run([sys.executable, "-m", "qwalk2d", "--help"], capture_output=True, text=True)
    assert res.returncode == 0
    assert "simulate" in res.stdout


def test_simulate_t1(tmp_path):
    assert main(["simulate", "--p", "0.25", "--qudit", "1,0,0,0", "--t", "1", "--out", str(tmp_path)]) == 0
    header, rows = read_csv(tmp_path / "dist.csv")
    assert header == ["x", "y", "prob"]
    assert len(rows) == 4
    assert sorted(r[2] for r in rows) == pytest.approx(sorted([1 / 16, 9 / 16, 3 / 16, 3 / 16]), abs=1e-15)
    moments = json.loads((tmp_path / "moments.json").read_text())
    assert [m["t"] for m in moments["times"]] == [1]
    assert moments["times"][0]["moments"]["0,0"] == pytest.approx(1, abs=1e-14)
    header, rows = read_csv(tmp_path / "pseudovel.csv")
    assert header == ["vx_center", "vy_center", "mass"]
    assert sum(r[2] for r in rows) == pytest.approx(1, abs=1e-14)


def test_simulate_t_list(tmp_path):
    assert main(["simulate", "--p", "0.25", "--qudit-preset", "fig3", "--t-list", "5,10", "--out", str(tmp_path)]) == 0
    times = json.loads((tmp_path / "moments.json").read_text())["times"]
    assert [m["t"] for m in times] == [5, 10]
    assert list(times[0]["moments"]) == ["0,0", "1,0", "0,1", "2,0", "1,1", "0,2"]


def test_simulate_deterministic(tmp_path):
    args = ["simulate", "--p", "0.3", "--qudit", "0.5:0,0:0.5,0.5,-0.5", "--t", "12"]
    main(args + ["--out", str(tmp_path / "a")])
    main(args + ["--out", str(tmp_path / "b")])
    for name in ("dist.csv", "moments.json", "pseudovel.csv"):
        a = (tmp_path / "a" / name).read_bytes()
        assert a == (tmp_path / "b" / name).read_bytes()
        assert b"\r\n" not in a


@pytest.mark.parametrize(
    "argv, field",
    [
        (["simulate", "--qudit-preset", "fig3", "--t", "3"], "p"),
        (["simulate", "--p", "1.5", "--qudit-preset", "fig3", "--t", "3"], "p"),
        (["simulate", "--p", "0.5", "--t", "3"], "qudit"),
        (["simulate", "--p", "0.5", "--qudit", "1,1,0,0", "--t", "3"], "qudit"),
        (["simulate", "--p", "0.5", "--qudit-preset", "fig3", "--t", "0"], "t"),
        (["limit", "--p", "0.5", "--qudit-preset", "fig3", "--grid", "10"], "grid"),
        (["compare", "--p", "0.5", "--qudit-preset", "fig3", "--t-list", "10,5"], "t_list"),
        (["delta-scan", "--qudit-preset", "fig3", "--p-min", "0.6", "--p-max", "0.4"], "p_min"),
    ],
)
def test_config_errors(argv, field, tmp_path, capsys):
    assert main(argv + ["--out", str(tmp_path)]) == 2
    assert field in capsys.readouterr().err


def test_config_file_and_precedence(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"p": 0.9, "qudit_preset": "fig3", "t": 2}))
    assert main(["simulate", "--config", str(cfg), "--p", "0.25", "--out", str(tmp_path)]) == 0
    assert json.loads((tmp_path / "moments.json").read_text())["p"] == 0.25
    cfg.write_text("[1, 2]")
    assert main(["simulate", "--config", str(cfg), "--out", str(tmp_path)]) == 2


def test_limit_fig5(tmp_path):
    assert main(["limit", "--p", "0.25", "--qudit-preset", "fig5", "--grid", "41", "--out", str(tmp_path)]) == 0
    s = json.loads((tmp_path / "summary.json").read_text())
    assert s["symmetry"] == "reflect_both"
    assert abs(s["M2"]) < 1e-14 and abs(s["M3"]) < 1e-14 and abs(s["M6"]) < 1e-14
    assert abs(s["mass_check"] - 1) < 2e-4
    assert list(s)[:3] == ["p", "qudit", "M1"]
    header, rows = read_csv(tmp_path / "nu.csv")
    assert header == ["vx", "vy", "density"]
    assert len(rows) == 41 * 41
    assert all(-1 <= r[0] <= 1 and -1 <= r[1] <= 1 for r in rows)


def test_limit_grover_delta(tmp_path):
    main(["limit", "--p", "0.5", "--qudit-preset", "grover-sym", "--grid", "32", "--out", str(tmp_path)])
    s = json.loads((tmp_path / "summary.json").read_text())
    assert s["delta"] == pytest.approx(0.726, abs=1e-3)
    assert s["delta"] == pytest.approx(2 * (math.pi - 2) / math.pi, abs=1e-12)
    assert abs(s["mass_check"] - 1) < 2e-4


@pytest.mark.parametrize("preset", ["fig3", "fig6", "grover-antisym"])
def test_limit_mass_check(preset, tmp_path):
    main(["limit", "--p", "0.25", "--qudit-preset", preset, "--grid", "32", "--out", str(tmp_path)])
    assert abs(json.loads((tmp_path / "summary.json").read_text())["mass_check"] - 1) < 2e-4


@pytest.mark.slow
def test_compare_fig6(tmp_path):
    assert main(["compare", "--p", "0.25", "--qudit-preset", "fig6", "--t-list", "100,400", "--out", str(tmp_path)]) == 0
    header, rows = read_csv(tmp_path / "compare.csv")
    assert header == ["t", "alpha", "beta", "simulated", "limit", "abs_error"]
    by_t = {}
    for t, a, b, sim, lim, err in rows:
        by_t[(int(a), int(b), int(t))] = err
        if (a, b) == (0, 0):
            assert sim == pytest.approx(1, abs=1e-12)
            assert lim == pytest.approx(1, abs=2e-4)
    for a, b in [(1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]:
        e100, e400 = by_t[(a, b, 100)], by_t[(a, b, 400)]
        assert e400 < e100 or max(e100, e400) < 1e-8


def test_compare_special_no_point_mass(tmp_path):
    assert main(["compare", "--p", "0.25", "--qudit-preset", "special", "--t-list", "200", "--out", str(tmp_path)]) == 0
    header, rows = read_csv(tmp_path / "origin.csv")
    assert header == ["t", "origin_cell_mass", "delta"]
    assert rows[0][1] < 0.1
    assert abs(rows[0][2]) < 1e-12


def test_delta_scan_antisym(tmp_path):
    main(["delta-scan", "--qudit-preset", "grover-antisym", "--out", str(tmp_path)])
    header, rows = read_csv(tmp_path / "delta.csv")
    assert header == ["p", "delta"]
    assert len(rows) == 99
    mid = min(rows, key=lambda r: r[1])
    assert mid[0] == pytest.approx(0.5) and abs(mid[1]) < 1e-12


def test_delta_scan_sym(tmp_path):
    main(["delta-scan", "--qudit-preset", "grover-sym", "--steps", "99", "--out", str(tmp_path)])
    _, rows = read_csv(tmp_path / "delta.csv")
    top = max(rows, key=lambda r: r[1])
    assert top[0] == pytest.approx(0.5)
    assert top[1] == pytest.approx(2 * (math.pi - 2) / math.pi, abs=1e-12)


def test_delta_scan_special(tmp_path):
    main(["delta-scan", "--qudit-preset", "special", "--steps", "25", "--out", str(tmp_path)])
    _, rows = read_csv(tmp_path / "delta.csv")
    assert max(abs(r[1]) for r in rows) < 1e-12


def test_verify_passes(capsys):
    assert main(["verify"]) == 0
    out = capsys.readouterr().out
    assert "I = pi^2/2" in out
    assert "FAIL" not in out


def test_verify_detects_wrong_sign(monkeypatch, capsys):
    good = limitdist.kxy_constants

    def bad(params):
        kx, ky = good(params)
        return kx, -ky

    monkeypatch.setattr(limitdist, "kxy_constants", bad)
    assert main(["verify"]) == 1
    assert "FAIL" in capsys.readouterr().out
