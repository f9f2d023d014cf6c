import subprocess
import sys

import numpy as np
import pytest

from dynamolab.cli import main
from oracles import K_L1


def read_lines(path):
    return path.read_text().splitlines()


class TestSpectrum:
    def test_constant_alpha_golden_first_row(self, tmp_path):
        out = tmp_path / "spec.csv"
        rc = main(["spectrum", "--alpha", "const:1.0", "--l", "1", "--n", "500", "--out", str(out)])
        assert rc == 0
        lines = read_lines(out)
        assert lines[0] == "re_lambda,im_lambda,class,pair_index"
        first = lines[1].split(",")
        k1 = K_L1[0]
        assert float(first[0]) == pytest.approx(-(k1**2) + k1, rel=1e-3)
        assert float(first[1]) == 0.0
        assert first[2] == "Real"
        assert first[3] == "-1"
        assert len(lines) == 1 + 2 * 500

    def test_determinism_byte_identical(self, tmp_path):
        a = tmp_path / "a.csv"
        b = tmp_path / "b.csv"
        for out in (a, b):
            assert main(["spectrum", "--alpha", "poly:1,0,0.5", "--l", "2", "--n", "60", "--out", str(out)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_determinism_across_processes(self, tmp_path):
        outs = []
        for name in ("p1.csv", "p2.csv"):
            out = tmp_path / name
            proc = subprocess.run(
                [
                    sys.executable, "-m", "dynamolab.cli",
                    "spectrum", "--alpha", "poly:1,0,0.5", "--l", "1", "--n", "60",
                    "--out", str(out),
                ],
                capture_output=True,
            )
            assert proc.returncode == 0, proc.stderr.decode()
            outs.append(out.read_bytes())
        assert outs[0] == outs[1]


class TestSweep:
    def test_constant_alpha_sweep(self, tmp_path):
        out = tmp_path / "sweep.csv"
        svg = tmp_path / "sweep.svg"
        rc = main(
            [
                "sweep", "--alpha", "const:1", "--l", "1",
                "--scale", "0,6,13", "--n", "80", "--track", "4",
                "--out", str(out), "--svg", str(svg),
            ]
        )
        assert rc == 0
        lines = read_lines(out)
        assert lines[0] == "C,branch_id,re_lambda,im_lambda"
        body = [ln for ln in lines[1:] if not ln.startswith("#") and not ln.startswith("C_lo")]
        marker = lines.index("# events")
        assert lines[marker + 1] == "C_lo,C_hi,kind"
        assert len(lines) == marker + 2  # no events for constant alpha
        assert marker - 1 == 13 * 4
        assert svg.exists() and svg.read_text().startswith("<svg")

    def test_sweep_determinism(self, tmp_path):
        outs = []
        for name in ("s1.csv", "s2.csv"):
            out = tmp_path / name
            main(["sweep", "--alpha", "const:1", "--scale", "0,3,7", "--n", "60", "--out", str(out)])
            outs.append(out.read_bytes())
        assert outs[0] == outs[1]


class TestPencilCheck:
    def test_residual_columns_small(self, tmp_path):
        out = tmp_path / "pencil.csv"
        rc = main(["pencil-check", "--alpha", "const:1.0", "--l", "1", "--n", "120", "--modes", "6", "--out", str(out)])
        assert rc == 0
        lines = read_lines(out)
        header = lines[0].split(",")
        assert header == [
            "index", "re_lambda", "im_lambda", "a0", "a1", "a2",
            "discriminant", "pencil_residual", "psi2_residual",
        ]
        assert len(lines) == 7
        for ln in lines[1:]:
            cols = ln.split(",")
            assert float(cols[7]) <= 1e-6
            assert float(cols[8]) <= 1e-6


class TestDarboux:
    def test_box_levels(self, tmp_path):
        out = tmp_path / "darboux.csv"
        rc = main(["darboux", "--v0", "const:0.0", "--n", "1000", "--levels", "4", "--out", str(out)])
        assert rc == 0
        lines = read_lines(out)
        assert lines[0] == "level,E0,E1,abs_rel_err"
        for m, ln in enumerate(lines[1:], start=2):
            cols = ln.split(",")
            assert float(cols[2]) == pytest.approx((m * np.pi) ** 2, rel=1e-3)
            assert float(cols[3]) <= 1e-3


class TestNogo:
    def test_quadratic_pair(self, tmp_path):
        out = tmp_path / "nogo.csv"
        rc = main(
            [
                "nogo", "--alpha0", "poly:1,0,0.5", "--alpha1", "const:1",
                "--l1", "2", "--window", "0.1,1", "--samples", "64",
                "--out", str(out),
            ]
        )
        assert rc == 0
        lines = read_lines(out)
        assert lines[0] == "r,q,b1,b2,rho"
        summary = [ln for ln in lines if ln.startswith("min_abs_rho_inf=")]
        assert len(summary) == 1
        assert float(summary[0].split("=")[1]) > 0

    def test_proportional_pair_is_numerical_failure(self, tmp_path):
        out = tmp_path / "nogo.csv"
        rc = main(
            ["nogo", "--alpha0", "const:1", "--alpha1", "const:2", "--out", str(out)]
        )
        assert rc == 3


class TestMreCheck:
    def test_residual_csv(self, tmp_path):
        out = tmp_path / "mre.csv"
        rc = main(
            [
                "mre-check", "--alpha0", "poly:1,0.2,0.3", "--alpha1", "poly:1,0,0.5",
                "--step", "1e-3", "--stride", "50", "--out", str(out),
            ]
        )
        assert rc == 0
        lines = read_lines(out)
        assert lines[0] == "r,riccati_residual,cond_log"
        vals = [float(ln.split(",")[1]) for ln in lines[2:]]
        assert max(v for v in vals if np.isfinite(v)) <= 1e-5


class TestCertificateCommand:
    def test_summary(self, tmp_path):
        out = tmp_path / "cert.csv"
        rc = main(["certificate", "--defect-n", "120", "--out", str(out)])
        assert rc == 0
        text = out.read_text()
        assert "min_abs_rho_inf=" in text
        assert "asymptotic_l1=2" in text
        assert "degenerate_impossible=True" in text


class TestExitCodes:
    def test_unknown_flag_usage_error(self, tmp_path, capsys):
        rc = main(["spectrum", "--alpha", "const:1", "--frobnicate", "--out", str(tmp_path / "x.csv")])
        assert rc == 2

    def test_unknown_subcommand(self):
        assert main(["transmogrify"]) == 2

    def test_bad_profile_literal(self, tmp_path):
        rc = main(["spectrum", "--alpha", "gauss:1", "--out", str(tmp_path / "x.csv")])
        assert rc == 2

    def test_l_zero_rejected(self, tmp_path):
        rc = main(["spectrum", "--alpha", "const:1", "--l", "0", "--n", "60", "--out", str(tmp_path / "x.csv")])
        assert rc == 2

    def test_grid_too_small(self, tmp_path):
        rc = main(["spectrum", "--alpha", "const:1", "--n", "4", "--out", str(tmp_path / "x.csv")])
        assert rc == 2

    def test_negative_pair_tol(self, tmp_path):
        rc = main(["spectrum", "--alpha", "const:1", "--n", "60", "--pair-tol", "-1", "--out", str(tmp_path / "x.csv")])
        assert rc == 2

    def test_exact_conjugation_of_real_matrices(self, tmp_path):
        # LAPACK returns bit-exact conjugate pairs for real input, so even a
        # pair tolerance at the underflow limit classifies cleanly
        rc = main(
            [
                "spectrum", "--alpha", "poly:10,-30", "--l", "1", "--n", "100",
                "--pair-tol", "1e-300", "--out", str(tmp_path / "x.csv"),
            ]
        )
        assert rc == 0
        assert any("Pair" in ln for ln in read_lines(tmp_path / "x.csv"))
