import numpy as np
import pytest

from twistcode.cli import main


def run(capsys, *argv):
    status = main(list(argv))
    captured = capsys.readouterr()
    return status, captured.out, captured.err


def report_dict(out):
    vals = {}
    for line in out.splitlines():
        if "=" in line and not line.startswith("#"):
            k, v = line.split("=", 1)
            vals[k] = v
    return vals


def test_affine_fast(capsys):
    status, out, _ = run(capsys, "affine", "--p", "3", "--k", "2")
    assert status == 0
    vals = report_dict(out)
    assert vals["delta_tw"] == "24" and vals["delta_rep"] == "18" and vals["gap"] == "6"
    assert all(v == "PASS" for k, v in vals.items() if k.startswith("check."))


def test_affine_check_all_with_export(capsys, tmp_path):
    out_file = tmp_path / "aff.tw"
    rep_file = tmp_path / "aff.report"
    status, out, _ = run(
        capsys,
        "affine", "--p", "3", "--k", "2", "--check", "all",
        "--out", str(out_file), "--report", str(rep_file),
    )
    assert status == 0
    assert "check.pairwise_delta_agrees=PASS" in out
    header = out_file.read_text().splitlines()
    assert header[0] == "# twistcode v1"
    assert header[1] == "# family=affine p=3 k=2 r=3 q=9 length=27 size=27"
    assert rep_file.read_text().startswith("family=affine\n")


def test_affine_bad_parameters(capsys):
    status, _, err = run(capsys, "affine", "--p", "4", "--k", "2")
    assert status == 2 and "odd prime" in err
    status, _, err = run(capsys, "affine", "--p", "3", "--k", "3")
    assert status == 2 and "p > k" in err
    status, _, err = run(capsys, "affine", "--p", "11", "--k", "7")
    assert status == 2 and "guard" in err


def test_symplectic_n1(capsys):
    status, out, _ = run(capsys, "symplectic", "--n", "1")
    assert status == 0
    vals = report_dict(out)
    assert vals["delta_tw"] == "20" and vals["delta_rep"] == "16" and vals["gap"] == "4"


def test_symplectic_size_guard(capsys):
    status, _, err = run(capsys, "symplectic", "--n", "3")
    assert status == 2 and "allow-large" in err


def test_symplectic_bad_poly(capsys):
    status, _, err = run(capsys, "symplectic", "--n", "2", "--poly", "5")
    assert status == 2 and "reducible" in err


def test_dist_roundtrip(capsys, tmp_path):
    out_file = tmp_path / "aff.tw"
    status, _, _ = run(capsys, "affine", "--p", "3", "--k", "2", "--out", str(out_file))
    assert status == 0
    status, out, _ = run(capsys, "dist", str(out_file))
    assert status == 0 and out.strip() == "delta=24"


def test_dist_single_codeword(capsys, tmp_path):
    path = tmp_path / "one.tw"
    path.write_text("# twistcode v1\n# family=custom q=3 length=3 size=1\n1 2 3\n")
    status, out, _ = run(capsys, "dist", str(path))
    assert status == 0 and out.strip() == "delta=0"


def test_dist_malformed(capsys, tmp_path):
    path = tmp_path / "bad.tw"
    path.write_text("# twistcode v1\n# family=custom q=3 length=3 size=2\n1 2 3\n1 2\n")
    status, _, err = run(capsys, "dist", str(path))
    assert status == 2 and "line 4" in err
    status, _, err = run(capsys, "dist", str(tmp_path / "missing.tw"))
    assert status == 2


def test_table1(capsys):
    status, out, _ = run(capsys, "table1", "--max-p", "5", "--max-n", "1")
    assert status == 0
    lines = out.splitlines()
    assert any(l.startswith("affine(p=3,k=2)") and " 24 " in l for l in lines)
    assert any(l.startswith("affine(p=5,k=2)") and " 120 " in l for l in lines)
    assert any(l.startswith("affine(p=5,k=3)") and " 620 " in l for l in lines)
    assert any(l.startswith("Sp(4,2^1)") and " 20 " in l for l in lines)
    assert all(l.endswith("ok") for l in lines[1:] if l and not l.startswith("#"))


def test_report_determinism(capsys, tmp_path):
    r1, r2 = tmp_path / "r1", tmp_path / "r2"
    run(capsys, "affine", "--p", "5", "--k", "2", "--report", str(r1))
    run(capsys, "affine", "--p", "5", "--k", "2", "--report", str(r2))
    strip = lambda p: [l for l in p.read_text().splitlines() if not l.startswith("#")]
    assert strip(r1) == strip(r2)

    c1, c2 = tmp_path / "c1.tw", tmp_path / "c2.tw"
    run(capsys, "affine", "--p", "5", "--k", "2", "--out", str(c1))
    run(capsys, "affine", "--p", "5", "--k", "2", "--out", str(c2))
    assert c1.read_bytes() == c2.read_bytes()
