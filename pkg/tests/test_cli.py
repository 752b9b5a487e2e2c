import csv
import io
import json
import subprocess
import sys
import xml.etree.ElementTree as ET
from fractions import Fraction

import mpmath
import pytest

from koebe.cli import RADIUS_COLUMNS, RunConfig, UsageError, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_coeffs_pnew4(capsys):
    code, out, _ = run(capsys, "coeffs", "--family", "pnew", "--n", "4")
    assert code == 0
    rows = json.loads(out)
    assert [r["k"] for r in rows] == [1, 2, 3, 4]
    vals = [float(r["midpoint"]) for r in rows]
    assert vals == pytest.approx([1, 7 / 6, 2 / 3, 1 / 6], abs=1e-16)
    assert all(len(r["midpoint"].replace(".", "").replace("-", "").lstrip("0")) >= 17 for r in rows)


def test_coeffs_fejer_exact_note(capsys):
    code, out, _ = run(capsys, "coeffs", "--family", "fejer", "--n", "2")
    rows = json.loads(out)
    assert code == 0
    assert [r["exact"] for r in rows] == ["1", "1/2"]
    assert float(rows[1]["midpoint"]) == 0.5


def test_coeffs_suffridge_trivial(capsys):
    code, out, _ = run(capsys, "coeffs", "--family", "suffridge", "--j", "1", "--n", "1")
    assert code == 0 and [float(r["midpoint"]) for r in json.loads(out)] == [1.0]


@pytest.mark.parametrize("argv", [
    ["coeffs", "--family", "pnew", "--n", "0"],
    ["coeffs", "--family", "suffridge", "--n", "3", "--j", "5"],
    ["coeffs", "--family", "nope", "--n", "3"],
    ["coeffs", "--n", "3", "--precision", "32"],
    ["certify"],
    ["scan", "--from", "5", "--to", "2"],
    ["boundary", "--n", "3", "--format", "json"],
    ["boundary", "--n", "3", "--count", "4"],
    ["scan", "--to", "3", "--resume"],
])
def test_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert out == ""
    assert "error" in err


def test_certify(capsys):
    code, out, _ = run(capsys, "certify", "--n", "6")
    rec = json.loads(out)
    assert code == 0
    assert rec["verdict"] == "CertifiedMonotoneDecreasing"
    assert set(rec) == {"n", "root_count", "interior_sign", "verdict", "precision_used", "wall_time"}
    code, out, _ = run(capsys, "certify", "--n", "1")
    assert code == 0 and json.loads(out)["root_count"] == 0
    code, out, _ = run(capsys, "certify", "--n", "51")
    assert code == 0 and json.loads(out)["root_count"] == 0


def test_certify_undecided_exit_code(capsys):
    code, out, _ = run(capsys, "certify", "--n", "51", "--precision", "64", "--precision-cap", "64")
    assert code == 3
    assert json.loads(out)["verdict"] == "NotCertified"


def test_radius_table_csv(capsys, tmp_path):
    path = tmp_path / "r.csv"
    code, out, _ = run(capsys, "radius-table", "--to", "3", "--output", str(path))
    assert code == 0 and out == ""
    text = path.read_bytes()
    assert b"\r" not in text
    rows = list(csv.DictReader(io.StringIO(text.decode())))
    assert tuple(rows[0]) == RADIUS_COLUMNS
    assert float(rows[0]["upper_pn"]) == 1.0
    assert float(rows[1]["upper_pn"]) == 0.5
    assert abs(float(rows[2]["upper_pn"]) - 0.381966011250105) < 1e-14
    assert abs(float(rows[2]["suffridge_boundary_min"]) - 0.3849) < 5e-5
    assert all(r["certified"] == "true" for r in rows)


def test_radius_table_json(capsys):
    code, out, _ = run(capsys, "radius-table", "--from", "4", "--to", "4", "--format", "json")
    rows = json.loads(out)
    assert code == 0 and rows[0]["N"] == 4
    assert float(rows[0]["pn_boundary_min"]) == pytest.approx(1 / 3, abs=1e-16)


def test_boundary_csv(capsys):
    code, out, _ = run(capsys, "boundary", "--family", "pnew", "--n", "4", "--count", "64")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 64 and list(rows[0]) == ["t", "re", "im", "abs"]
    assert min(float(r["abs"]) for r in rows) == pytest.approx(1 / 3, abs=1e-15)
    code, out, _ = run(capsys, "boundary", "--family", "pnew", "--n", "1", "--count", "16")
    assert all(abs(float(r["abs"]) - 1) < 1e-16 for r in csv.DictReader(io.StringIO(out)))


def test_boundary_svg(capsys):
    code, out, _ = run(capsys, "boundary", "--family", "suffridge", "--n", "3", "--format", "svg", "--count", "512")
    assert code == 0
    root = ET.fromstring(out)
    ns = "{http://www.w3.org/2000/svg}"
    polys = root.findall(f"{ns}polygon")
    circles = root.findall(f"{ns}circle")
    assert len(polys) == 1 and len(circles) == 2
    radii = sorted(float(c.get("r")) for c in circles)
    assert abs(radii[1] - 0.3849) < 5e-5
    pts = [tuple(map(float, p.split(","))) for p in polys[0].get("points").split()]
    assert len(pts) == 512
    x0, y0, w, h = map(float, root.get("viewBox").split())
    xs, ys = [p[0] for p in pts], [p[1] for p in pts]
    assert x0 < min(xs) and x0 + w > max(xs) and y0 < min(ys) and y0 + h > max(ys)
    assert abs((min(xs) - x0) / w - 0.05 / 1.1) < 1e-3


def test_scan_and_resume(capsys, tmp_path):
    path = tmp_path / "scan.jsonl"
    code, out, err = run(capsys, "scan", "--from", "2", "--to", "2")
    assert code == 0
    assert [json.loads(x)["n"] for x in out.splitlines()] == [2]
    assert json.loads(err.splitlines()[-1])["largest_certified_n"] == 2

    code, _, _ = run(capsys, "scan", "--to", "6", "--output", str(path))
    full = path.read_text()
    assert code == 0 and len(full.splitlines()) == 6
    recs = [json.loads(x) for x in full.splitlines()]
    assert [r["n"] for r in recs] == list(range(1, 7))
    assert "wall_time" not in recs[0]

    # torn write: keep a prefix plus half a line, then resume
    lines = full.splitlines(keepends=True)
    path.write_text("".join(lines[:3]) + lines[3][:10])
    code, _, err = run(capsys, "scan", "--to", "8", "--output", str(path), "--resume")
    resumed = path.read_text().splitlines()
    assert code == 0
    assert [json.loads(x)["n"] for x in resumed] == list(range(1, 9))
    assert resumed[:6] == full.splitlines()
    summary = json.loads(err.splitlines()[-1])
    assert summary["largest_certified_n"] == 8 and summary["not_certified"] == []


def test_scan_parallel_is_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    run(capsys, "scan", "--to", "12", "--output", str(a))
    run(capsys, "scan", "--to", "12", "--output", str(b), "--workers", "3")
    assert a.read_bytes() == b.read_bytes()


def test_determinism_coeffs_and_table(capsys):
    outs = [run(capsys, "radius-table", "--to", "4")[1] for _ in range(2)]
    assert outs[0] == outs[1]
    outs = [run(capsys, "coeffs", "--family", "suffridge", "--n", "7", "--j", "3")[1] for _ in range(2)]
    assert outs[0] == outs[1]


def test_roundtrip_coeffs_to_upper_bound(capsys):
    _, table, _ = run(capsys, "radius-table", "--to", "8")
    rows = list(csv.DictReader(io.StringIO(table)))
    with mpmath.workdps(40):
        for r in rows:
            N = int(r["N"])
            _, out, _ = run(capsys, "coeffs", "--family", "pnew", "--n", str(N))
            cs = [mpmath.mpf(c["midpoint"]) for c in json.loads(out)]
            val = abs(mpmath.fsum(c * (-1) ** (k + 1) for k, c in enumerate(cs)))
            assert abs(val - mpmath.mpf(r["upper_pn"])) < 1e-12


def test_io_error(capsys, tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    code, _, err = run(capsys, "certify", "--n", "2", "--output", str(blocker / "sub" / "out.json"))
    assert code == 4 and "I/O" in err


def test_run_config_validation():
    with pytest.raises(UsageError):
        RunConfig("coeffs", 1, 1, precision=10)
    with pytest.raises(UsageError):
        RunConfig("scan", 3, 2)
    with pytest.raises(UsageError):
        RunConfig("frobnicate", 1, 1)
    assert RunConfig("scan", 1, 51).precision == 128


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "koebe", "coeffs", "--family", "alexander", "--n", "3"],
                       capture_output=True, text=True, check=True)
    assert [x["exact"] for x in json.loads(r.stdout)] == ["1", "1/2", "1/3"]
    assert Fraction(json.loads(r.stdout)[2]["exact"]) == Fraction(1, 3)
