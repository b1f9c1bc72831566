import csv
import io
import json
import math
import subprocess
import sys

import numpy as np
import pytest

from wlab.cli import main
from wlab.compare import curves
from wlab.concentrate import enumerate_branches
from wlab.tables import FIG1_COLUMNS, FIG2_COLUMNS, branches_csv, curves_csv, read_branches_csv, read_curves_csv


def run_cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestReports:
    def test_teleport(self, capsys):
        code, out, _ = run_cli(capsys, "teleport", "--n", "4", "--k", "1", "--alpha", "0.6")
        assert code == 0
        rep = json.loads(out)
        assert len(rep["outcomes"]) == 4
        for o in rep["outcomes"]:
            assert o["probability"] == pytest.approx(0.25, abs=1e-10)
            assert o["fidelity_after"] == pytest.approx(1, abs=1e-10)
        assert rep["deterministic"] is True
        assert "paper_refs" in rep

    def test_teleport_random_phases_seeded(self, capsys):
        _, a, _ = run_cli(capsys, "teleport", "--n", "6", "--phases", "random", "--seed", "4")
        _, b, _ = run_cli(capsys, "teleport", "--n", "6", "--phases", "random", "--seed", "4")
        _, c, _ = run_cli(capsys, "teleport", "--n", "6", "--phases", "random", "--seed", "5")
        assert a == b != c
        assert json.loads(a)["deterministic"] is True

    def test_audit_as_printed(self, capsys):
        code, out, _ = run_cli(capsys, "audit", "--n", "4", "--k", "1", "--variant", "as-printed")
        assert code == 0
        rep = json.loads(out)
        g = np.array(rep["gram"]["real"])
        assert g[0, 1] == pytest.approx(-0.5, abs=1e-12)
        assert rep["orthonormal"] is False
        assert rep["decomposition_residual"] > 0.1

    def test_concentrate_case(self, capsys):
        code, out, _ = run_cli(capsys, "concentrate", "--case", "3", "--k", "2", "--alpha", str(1 / math.sqrt(3)))
        assert code == 0
        assert json.loads(out)["concurrence"] == pytest.approx(1, abs=1e-10)

    def test_concentrate_pairing(self, capsys):
        code, out, _ = run_cli(
            capsys, "concentrate", "--pairing", "(a,1)+(b,2)|keep 3", "--outcomes", "phi+,phi+", "--alpha", "0.3"
        )
        assert code == 0
        assert json.loads(out)["concurrence"] == pytest.approx(2 * math.sqrt(2) / 3, abs=1e-10)

    def test_compare_json(self, capsys):
        code, out, _ = run_cli(capsys, "compare", "--k", "3")
        rep = json.loads(out)
        assert code == 0
        assert rep["rejected_printed"][0]["note"].startswith("invalid")
        assert rep["intervals"][0]["lo"] == 0 and rep["intervals"][-1]["hi"] == 1

    def test_densecode(self, capsys):
        code, out, _ = run_cli(capsys, "densecode", "--n", "5", "--k", "3")
        rep = json.loads(out)
        assert code == 0 and rep["bits_per_transmitted_qubit"] == 2.0

    def test_enumerate_json_has_families(self, capsys):
        code, out, _ = run_cli(capsys, "enumerate", "--n", "3", "--format", "json")
        rep = json.loads(out)
        assert code == 0
        assert {b["family"] for b in rep["branches"]} - {"null", "product"}
        assert "other" not in {b["family"] for b in rep["branches"]}


class TestErrors:
    @pytest.mark.parametrize(
        "argv",
        [
            ["teleport", "--n", "2"],
            ["teleport", "--k", "-1"],
            ["teleport", "--phases", "x,y"],
            ["concentrate"],
            ["concentrate", "--pairing", "(b,1)+(2,4)|keep a"],
            ["concentrate", "--pairing", "(b,1)+(2,3)|keep a", "--outcomes", "phi+,nope"],
            ["enumerate", "--n", "9"],
            ["figures", "--ks", "1,abc"],
            ["nosuchcommand"],
        ],
    )
    def test_exit_two(self, capsys, argv):
        code, out, err = run_cli(capsys, *argv)
        assert code == 2
        assert out == ""
        assert err.strip()

    def test_one_line_diagnostic(self, capsys):
        code, _, err = run_cli(capsys, "teleport", "--n", "2")
        assert code == 2 and err.count("\n") == 1 and err.startswith("wlab: error:")

    def test_bad_tolerance_env(self, capsys, monkeypatch):
        monkeypatch.setenv("WLAB_TOL", "-1")
        assert run_cli(capsys, "teleport")[0] == 2

    def test_tolerance_env_is_reported(self, capsys, monkeypatch):
        monkeypatch.setenv("WLAB_TOL", "1e-6")
        assert json.loads(run_cli(capsys, "teleport")[1])["tolerance"] == 1e-6


class TestFiles:
    def test_figures(self, tmp_path):
        assert main(["figures", "--out", str(tmp_path / "fig"), "--grid", "50"]) == 0
        fig1 = (tmp_path / "fig" / "fig1.csv").read_text()
        fig2 = (tmp_path / "fig" / "fig2.csv").read_text()
        rows1 = list(csv.reader(io.StringIO(fig1)))
        rows2 = list(csv.reader(io.StringIO(fig2)))
        assert tuple(rows1[0]) == FIG1_COLUMNS and tuple(rows2[0]) == FIG2_COLUMNS
        assert len(rows1) == 1 + 4 * 50
        assert {r[1] for r in rows1[1:]} == {"0.5", "1", "2", "10"}
        assert not list(tmp_path.glob("fig/.*"))  # no temp files left behind

    def test_byte_identical(self, tmp_path):
        for d in ("x", "y"):
            assert main(["figures", "--out", str(tmp_path / d), "--grid", "40"]) == 0
            assert main(["enumerate", "--n", "4", "--out", str(tmp_path / d / "b.csv")]) == 0
        for name in ("fig1.csv", "fig2.csv", "b.csv"):
            assert (tmp_path / "x" / name).read_bytes() == (tmp_path / "y" / name).read_bytes()

    def test_subprocess_entry_point(self, tmp_path):
        out = tmp_path / "t.json"
        subprocess.run([sys.executable, "-m", "wlab", "teleport", "--out", str(out)], check=True)
        assert json.loads(out.read_text())["command"] == "teleport"
        bad = subprocess.run([sys.executable, "-m", "wlab", "teleport", "--n", "1"], capture_output=True, text=True)
        assert bad.returncode == 2 and "wlab: error:" in bad.stderr


class TestRoundTrip:
    @pytest.mark.parametrize("k", [0.5, 1, 10])
    def test_curves(self, k):
        table = curves(k, 30)
        text = curves_csv([table], FIG2_COLUMNS)
        (back,) = read_curves_csv(text)
        assert back.k == table.k
        assert np.max(np.abs(back.grid - table.grid)) <= 1e-12
        for name, col in table.columns.items():
            assert np.max(np.abs(back.columns[name] - col)) <= 1e-11
        assert curves_csv([back], FIG2_COLUMNS) == text

    @pytest.mark.parametrize("n", [3, 4])
    def test_branches(self, n):
        brs = enumerate_branches(n, 1.5, 0.4)
        text = branches_csv(brs)
        back = read_branches_csv(text, str(n))
        assert len(back) == len(brs)
        for a, b in zip(brs, back):
            assert a.pairing == b.pairing and a.outcomes == b.outcomes and a.z_bits == b.z_bits
            assert abs(a.probability - b.probability) <= 1e-12
            assert (a.residual is None) == (b.residual is None)
            if a.residual is not None:
                assert np.max(np.abs(a.residual.amplitudes - b.residual.amplitudes)) <= 1e-11
                assert abs(a.concurrence - b.concurrence) <= 1e-11
        assert branches_csv(back) == text

    def test_empty(self):
        assert read_curves_csv(curves_csv([])) == []
