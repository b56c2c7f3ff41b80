import csv
import io
import json
import math

import pytest

from energylines.cli import SweepSpec, main, scan_csv_text, UsageError

LOSSY = json.dumps({"kind": "lossy", "eta": 0.5, "N": 0})
GAMMA = json.dumps({"kind": "compose", "channels": [{"kind": "squeezer", "zeta": 2}, {"kind": "lossy", "eta": 0.5}]})


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_functionals_lossy(capsys):
    code, out, _ = run(capsys, "functionals", "--state", '{"kind": "coherent", "energy": 1}', "--channel", LOSSY)
    assert code == 0
    assert json.loads(out)["output"]["ergotropy"] == pytest.approx(0.5)


def test_functionals_thermal_identity(capsys):
    code, out, _ = run(capsys, "functionals", "--state", '{"kind": "thermal", "N": 1}')
    assert code == 0
    assert json.loads(out)["output"]["ergotropy"] == pytest.approx(0.0, abs=1e-15)


def test_functionals_additive_free_energy(capsys):
    N, E = 2.0, 1.0
    code, out, _ = run(capsys, "functionals", "--state", '{"kind": "coherent", "energy": 1}',
                       "--channel", '{"kind": "additive", "N": 2}', "--beta", "1")
    expected = E + N - ((N + 1) * math.log(N + 1) - N * math.log(N))
    assert code == 0
    assert json.loads(out)["output"]["free_energy"]["1.0"] == pytest.approx(expected, abs=1e-12)


def test_functionals_reads_files(capsys, tmp_path):
    f = tmp_path / "ch.json"
    f.write_text(LOSSY)
    code, out, _ = run(capsys, "functionals", "--state", '{"kind": "coherent", "energy": 2}', "--channel", str(f))
    assert code == 0 and json.loads(out)["output"]["ergotropy"] == pytest.approx(1.0)


@pytest.mark.parametrize("argv", [
    ["functionals", "--state", "{not json"],
    ["functionals", "--state", '{"kind": "coherent", "energy": 1}', "--channel", '{"kind": "lossy", "eta": 2}'],
    ["scan", "--channel", LOSSY, "--energy-range", "1:2:x"],
    ["scan", "--channel", LOSSY, "--energy", "-1"],
    ["scan", "--channel", LOSSY],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith("error:")


def test_unknown_suite_is_usage_error(capsys):
    with pytest.raises(SystemExit) as info:
        main(["verify", "--suite", "nope"])
    assert info.value.code == 2


def test_unwritable_output(capsys, tmp_path):
    code, _, _ = run(capsys, "scan", "--channel", LOSSY, "--energy", "1", "--out", str(tmp_path / "missing" / "x.csv"))
    assert code == 2


def _rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_scan_pi_constant_ratio(capsys):
    code, out, _ = run(capsys, "scan", "--channel", LOSSY, "--energy-range", "0.1:100:4:log")
    assert code == 0
    rows = _rows(out)
    assert [float(r["E"]) for r in rows] == pytest.approx([0.1, 1, 10, 100])
    assert all(float(r["ratio"]) == pytest.approx(0.5, abs=1e-10) for r in rows)


def test_scan_format(capsys):
    _, out, _ = run(capsys, "scan", "--channel", GAMMA, "--energy", "0", "--energy", "1")
    lines = out.split("\n")
    assert lines[0] == "E,value,ratio,z_star,theta_star,clamped"
    assert "\r" not in out and out.endswith("\n")
    rows = _rows(out)
    assert rows[0]["ratio"] == "nan"
    assert rows[1]["clamped"] in ("0", "1")


def test_scan_zero_energy_pi(capsys):
    _, out, _ = run(capsys, "scan", "--channel", LOSSY, "--energy", "0")
    assert float(_rows(out)[0]["value"]) == 0.0


def test_scan_output_normalization(capsys):
    _, out, _ = run(capsys, "scan", "--channel", LOSSY, "--energy", "4", "--normalization", "output")
    # coherent input: output energy equals output ergotropy for a quantum-limited attenuator
    assert float(_rows(out)[0]["ratio"]) == pytest.approx(1.0)


def test_scan_deterministic(tmp_path, capsys):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for p in paths:
        assert main(["scan", "--channel", GAMMA, "--energy-range", "0.01:1000:6:log", "--out", str(p)]) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()
    spec = SweepSpec(json.loads(GAMMA), [0.01, 1.0])
    assert scan_csv_text(spec) == scan_csv_text(spec)


def test_sweep_spec_validation():
    with pytest.raises(UsageError):
        SweepSpec({"kind": "lossy", "eta": 0.5}, [])
    with pytest.raises(UsageError):
        SweepSpec({"kind": "lossy", "eta": 0.5}, [1.0], normalization="bogus")


def test_maximize_command(capsys):
    code, out, _ = run(capsys, "maximize", "--channel", GAMMA, "--energy", "5")
    res = json.loads(out)[0]
    assert code == 0
    assert res["value"] > 0.5 * 5
    assert len(res["input_state"]["cov"]) == 4


def test_verify_counterexample(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "counterexample")
    assert code == 0
    assert "energy gap 0.28125" in out
    assert "all checks passed" in out


def test_verify_failure_exit_code(capsys, monkeypatch):
    from energylines import cli, verify
    monkeypatch.setitem(verify.SUITES, "counterexample", lambda seed=0: [verify.Check("forced", 1.0, 0.0)])
    code, out, _ = run(capsys, "verify", "--suite", "counterexample")
    assert code == 1
    assert "[FAIL] forced" in out
