import csv
import io
import json
import math
import subprocess
import sys

import pytest

from pseudoharmonic import cli


def run(args, capsys):
    code = cli.main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def parse_csv(text):
    body = [line for line in text.splitlines() if not line.startswith("#")]
    return list(csv.DictReader(io.StringIO("\n".join(body))))


def test_spectrum_hho(capsys):
    code, out, _ = run(["spectrum", "--a", "0", "--n", "0,1,2,3"], capsys)
    assert code == 0
    assert [float(r["E"]) for r in parse_csv(out)] == [1.5, 3.5, 5.5, 7.5]
    assert out.startswith("# schema: pho-spectrum/")
    assert "# config:" in out and "# units:" in out


def test_spectrum_closed_form_value(capsys):
    _, out, _ = run(["spectrum", "--a", "6", "--n", "0"], capsys)
    assert float(parse_csv(out)[0]["E"]) == pytest.approx(3.5 - math.sqrt(6), rel=1e-15)


def test_seventeen_digit_round_trip(capsys):
    _, out, _ = run(["classical", "--a", "1", "--energy", "1"], capsys)
    row = parse_csv(out)[0]
    assert float(row["x_minus"]) == (math.sqrt(5) - 1) / 2 or float(row["x_minus"]) == pytest.approx(
        (math.sqrt(5) - 1) / 2, rel=2e-16)
    assert float(row["T"]) == math.pi


@pytest.mark.parametrize("args", [
    ["spectrum", "--a", "0", "--n", ""],
    ["measures", "--a", "-1", "--n", "0"],
    ["spectrum", "--a", "zero"],
    ["renyi", "--alpha-range", "1:2"],
    ["spectrum", "--a-log-range", "1:0:3"],
])
def test_usage_errors(args, capsys):
    code, _, err = run(args, capsys)
    assert code == 2
    assert err


def test_classical_rows(capsys):
    _, out, _ = run(["classical", "--a", "0,1,100", "--energy", "1,2,3"], capsys)
    rows = parse_csv(out)
    assert len(rows) == 9
    hho = rows[0]
    assert float(hho["x_minus"]) == 0 and float(hho["x_plus"]) == pytest.approx(1.0)
    assert all(float(r["T"]) == pytest.approx(math.pi) for r in rows)


def test_measures_hho_anchor_row(capsys):
    _, out, _ = run(["measures", "--a", "0", "--n", "0", "--format", "json"], capsys)
    doc = json.loads(out)
    assert doc["meta"]["schema"].startswith("pho-measures/")
    row = doc["rows"][0]
    anchors = {"sigma_x": 0.6734, "sigma_k": 0.8660, "heisenberg_product": 0.5832, "shannon_x": 0.9961,
               "fisher_x": 3.0, "fisher_k": 1.518, "onicescu_x": 0.4231, "onicescu_k": 0.3524,
               "ng_x": 0.02742, "ng_k": 0.04095, "ng_q": 0.2934}
    for key, val in anchors.items():
        assert row[key] == pytest.approx(val, abs=1e-3), key


def test_measures_huge_a(capsys):
    _, out, _ = run(["measures", "--a", "1e9", "--n", "0"], capsys)
    row = parse_csv(out)[0]
    a = 1e9
    assert float(row["heisenberg_product"]) == pytest.approx(0.5 * (1 + 1 / (16 * math.sqrt(a))), abs=1e-6)
    assert float(row["shannon_sum"]) == pytest.approx(1 + math.log(math.pi), abs=1e-4)
    assert float(row["fisher_x"]) == pytest.approx(2.0, abs=1e-4)
    assert float(row["onicescu_k"]) == pytest.approx(1 / math.sqrt(2 * math.pi), abs=1e-4)


def test_excited_rows_have_null_nongaussianity(capsys):
    _, out, _ = run(["measures", "--a", "1", "--n", "1", "--format", "json"], capsys)
    assert json.loads(out)["rows"][0]["ng_x"] is None


def test_renyi_rows(capsys):
    _, out, _ = run(["renyi", "--a", "0", "--alpha", "0.2,0.5,2"], capsys)
    rows = parse_csv(out)
    low, half, two = rows
    assert "divergent-momentum" in low["flags"].split(";")
    assert low["R_k"] == "nan"
    assert float(half["R_x"]) + float(half["R_k_beta"]) == pytest.approx(math.log(2 * math.pi), abs=1e-4)
    assert abs(float(half["delta_R"])) < 1e-8
    assert float(two["delta_T"]) < 0 < float(two["delta_R"])


def test_renyi_gap_shrinks_with_a(capsys):
    _, out, _ = run(["renyi", "--a", "0,1,100,10000", "--alpha", "2"], capsys)
    gaps = [float(r["delta_R"]) for r in parse_csv(out)]
    assert all(y < x for x, y in zip(gaps, gaps[1:]))


def test_log_and_alpha_ranges(capsys):
    _, out, _ = run(["renyi", "--a-log-range", "0.1:10:3", "--alpha-range", "1:2:3"], capsys)
    rows = parse_csv(out)
    assert len(rows) == 9
    assert sorted({float(r["a"]) for r in rows}) == pytest.approx([0.1, 1.0, 10.0])
    assert sorted({float(r["alpha"]) for r in rows}) == pytest.approx([1.0, 1.5, 2.0])


def test_config_file_and_override(tmp_path, capsys):
    cfg = tmp_path / "sweep.cfg"
    cfg.write_text("# sweep\na = 0, 1\nn = 0\nformat = json\n")
    _, out, _ = run(["spectrum", "--config", str(cfg)], capsys)
    assert len(json.loads(out)["rows"]) == 2
    _, out, _ = run(["spectrum", "--config", str(cfg), "--a", "5", "--format", "csv"], capsys)
    assert [r["a"] for r in parse_csv(out)] == ["5"]
    bad = tmp_path / "bad.cfg"
    bad.write_text("colour = blue\n")
    assert run(["spectrum", "--config", str(bad)], capsys)[0] == 2


def test_deterministic_output_and_workers(tmp_path, capsys):
    args = ["measures", "--a", "0,1,3", "--n", "0,1"]
    paths = []
    for i, workers in enumerate(("1", "1", "2")):
        path = tmp_path / f"out{i}.csv"
        assert cli.main(args + ["--out", str(path), "--workers", workers]) == 0
        paths.append(path.read_bytes())
    capsys.readouterr()
    assert paths[0] == paths[1] == paths[2]


def test_verify_quick_passes(capsys):
    code, out, _ = run(["verify", "--quick"], capsys)
    assert code == 0
    assert "FAIL" not in out


def test_verify_over_tight_tolerance_fails(capsys):
    code, out, err = run(["verify", "--quick", "--tol", "1e-15"], capsys)
    assert code == 1
    assert "FAIL" in out + err


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "pseudoharmonic.cli", "spectrum", "--a", "0", "--n", "0"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.strip().splitlines()[-1] == "0,0,1.5"
