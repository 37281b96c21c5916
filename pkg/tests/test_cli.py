import csv
import io
import json
import math
import os
import subprocess
import sys

import pytest

from sqbf import cli
from sqbf.asymptotics import mg_point
from sqbf.optimizer import approx_opt_ttr, exact_opt_ttr

from conftest import ref_cfg

SYS = ["--M", "8", "--T", "500", "--P-dB", "15", "--f", "0.1", "--alpha", "0.3"]


def run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, text, name="spec.ini"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


SPEC = """\
[system]
M = 8
P_dB = 15
f = 0.1
alpha = 0.3
[sweep]
parameter = T
grid = 500, 1000
outputs = ttr_exact_hf_op, ttr_approx_sqbf_cl, se_genie
"""


class TestSweep:
    def test_values_match_library(self, tmp_path, capsys):
        code, out, _ = run(["sweep", write(tmp_path, SPEC)], capsys)
        assert code == 0
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0] == ["T", "ttr_exact_hf_op", "ttr_approx_sqbf_cl", "se_genie"]
        for row, T in zip(rows[1:], (500, 1000)):
            assert float(row[0]) == T
            assert float(row[1]) == exact_opt_ttr(ref_cfg(T=T, training="open"), "hf").T_tr_opt
            assert float(row[2]) == approx_opt_ttr(ref_cfg(T=T), "sqbf").T_tr_opt

    def test_csv_round_trip(self, tmp_path, capsys):
        _, out, _ = run(["sweep", "--preset", "fig5"], capsys)
        rows = list(csv.reader(io.StringIO(out)))
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(rows)
        assert buf.getvalue() == out
        assert "\r" not in out
        # 17 significant digits round-trip every float exactly
        again = cli.to_csv(rows[0], [[float(v) for v in r] for r in rows[1:]])
        assert again == out

    def test_fig3_preset_columns(self, capsys):
        code, out, _ = run(["sweep", "--preset", "fig3"], capsys)
        assert code == 0
        rows = list(csv.reader(io.StringIO(out)))
        expected = ["T"] + [f"ttr_frac_{m}_{s}_{t}" for m in ("exact", "approx")
                            for t in ("cl", "op") for s in ("sqbf", "hf")]
        assert rows[0] == expected
        assert [float(r[0]) for r in rows[1:]][0] == 200 and float(rows[-1][0]) == 5000
        assert all(0 <= float(v) <= 1 for r in rows[1:] for v in r[1:])

    def test_fig6_preset(self, capsys):
        code, out, _ = run(["sweep", "--preset", "fig6"], capsys)
        assert code == 0
        rows = list(csv.reader(io.StringIO(out)))
        assert len(rows) == 1 + 61
        header = rows[0]
        for r in rows[1:]:
            z = float(r[0])
            for name, v in zip(header[1:], r[1:]):
                key, theta = name[3:].split("@")
                assert float(v) == mg_point(key, z, float(theta)).r

    def test_json_mirrors_csv(self, tmp_path, capsys):
        path = write(tmp_path, SPEC)
        _, out_csv, _ = run(["sweep", path], capsys)
        _, out_json, _ = run(["sweep", path, "--json"], capsys)
        rows = list(csv.reader(io.StringIO(out_csv)))
        records = json.loads(out_json)
        assert [list(r.keys()) for r in records] == [rows[0]] * 2
        assert [[float(v) for v in r] for r in rows[1:]] == [list(r.values()) for r in records]

    def test_out_file(self, tmp_path, capsys):
        dest = tmp_path / "fig5.csv"
        code, out, _ = run(["sweep", "--preset", "fig5", "--out", str(dest)], capsys)
        assert code == 0 and out == ""
        assert dest.read_text().startswith("T,improvement_exact_cl")
        assert [p.name for p in tmp_path.iterdir()] == ["fig5.csv"]

    def test_no_partial_output_on_failure(self, tmp_path, capsys):
        spec = SPEC.replace("outputs = ttr_exact_hf_op, ttr_approx_sqbf_cl, se_genie",
                            "outputs = se_genie, se_bound_hf_cl")
        dest = tmp_path / "x.csv"
        code, out, err = run(["sweep", write(tmp_path, spec), "--out", str(dest)], capsys)
        assert code == 3 and "T_tr" in err
        assert not dest.exists() and list(tmp_path.iterdir()) == [tmp_path / "spec.ini"]

    def test_ttr_sweep_and_range_grid(self, tmp_path, capsys):
        spec = SPEC.replace("parameter = T", "parameter = T_tr").replace(
            "grid = 500, 1000", "grid = 0:100:50").replace(
            "outputs = ttr_exact_hf_op, ttr_approx_sqbf_cl, se_genie", "outputs = se_bound_sqbf_cl")
        spec = spec.replace("[system]\n", "[system]\nT = 500\n")
        code, out, _ = run(["sweep", write(tmp_path, spec)], capsys)
        assert code == 0
        assert [r.split(",")[0] for r in out.splitlines()] == ["T_tr", "0", "50", "100"]

    def test_montecarlo_outputs_and_overrides(self, tmp_path, capsys):
        spec = SPEC.replace("grid = 500, 1000", "grid = 500").replace(
            "outputs = ttr_exact_hf_op, ttr_approx_sqbf_cl, se_genie",
            "outputs = mc_se_hf_cl, mc_ci_hf_cl") + "[montecarlo]\niters = 10\nseed = 3\n"
        path = write(tmp_path, spec)
        _, a, _ = run(["sweep", path], capsys)
        _, b, _ = run(["sweep", path, "--seed", "3", "--iters", "10"], capsys)
        _, c, _ = run(["sweep", path, "--seed", "4"], capsys)
        assert a == b and a != c


class TestSweepErrors:
    @pytest.mark.parametrize("spec,code", [
        (SPEC.replace("grid = 500, 1000", "grid = "), 3),
        (SPEC.replace("grid = 500, 1000", "grid = 1000, 500"), 3),
        (SPEC.replace("parameter = T", "parameter = M"), 3),
        (SPEC.replace("se_genie", "se_oracle"), 3),
        (SPEC.replace("f = 0.1", "f = 1.5"), 3),
        (SPEC.replace("grid = 500, 1000", "grid = 2, 500"), 3),
        (SPEC.replace("alpha = 0.3", "alpha = 0.3\nbeta = 2"), 2),
        (SPEC + "[plot]\ncolor = red\n", 2),
        (SPEC.replace("f = 0.1", "f = tenth"), 2),
        ("no sections at all", 2),
        (SPEC.replace("outputs = ttr_exact_hf_op, ttr_approx_sqbf_cl, se_genie", "outputs = mc_se_hf_cl"), 3),
    ])
    def test_exit_codes(self, tmp_path, capsys, spec, code):
        rc, out, err = run(["sweep", write(tmp_path, spec)], capsys)
        assert rc == code and out == "" and err

    def test_empty_grid_message(self, tmp_path, capsys):
        _, _, err = run(["sweep", write(tmp_path, SPEC.replace("grid = 500, 1000", "grid = "))], capsys)
        assert "grid is empty" in err

    def test_missing_file(self, tmp_path, capsys):
        assert run(["sweep", str(tmp_path / "nope.ini")], capsys)[0] == 2

    def test_unknown_preset(self, capsys):
        assert run(["sweep", "--preset", "fig9"], capsys)[0] == 3

    def test_numeric_failure(self, tmp_path, capsys):
        spec = SPEC.replace("grid = 500, 1000", "grid = 500").replace(
            "outputs = ttr_exact_hf_op, ttr_approx_sqbf_cl, se_genie", "outputs = mc_se_sqbf_cl"
        ).replace("[system]\n", "[system]\nT_tr = 80\n") + "[montecarlo]\niters = 2\nfeedback = fixed_point\n"
        assert run(["sweep", write(tmp_path, spec)], capsys)[0] == 4


class TestSubcommands:
    def test_optimize_prints_both_methods(self, capsys):
        code, out, _ = run(["optimize", *SYS, "--training", "open", "--strategy", "hf"], capsys)
        assert code == 0
        cfg = ref_cfg(training="open")
        assert f"{approx_opt_ttr(cfg, 'hf').T_tr_opt:.4f}" in out
        assert f"{exact_opt_ttr(cfg, 'hf').T_tr_opt:.4f}" in out
        assert "closed form" in out and "grid search" in out

    def test_optimize_json(self, capsys):
        code, out, _ = run(["optimize", *SYS, "--json"], capsys)
        recs = json.loads(out)
        assert [r["strategy"] for r in recs] == ["sqbf", "hf"]
        assert recs[0]["ttr_exact"] == exact_opt_ttr(ref_cfg(), "sqbf").T_tr_opt

    def test_optimize_config_file(self, tmp_path, capsys):
        path = write(tmp_path, "[system]\nM = 8\nT = 500\nP_dB = 15\nf = 0.1\nalpha = 0.3\n")
        _, a, _ = run(["optimize", "--config", path, "--json"], capsys)
        _, b, _ = run(["optimize", *SYS, "--json"], capsys)
        assert a == b

    def test_optimize_missing_flag(self, capsys):
        code, _, err = run(["optimize", "--M", "8"], capsys)
        assert code == 2 and "usage" in err

    def test_optimize_invalid(self, capsys):
        assert run(["optimize", *SYS, "--P-SI", "-1"], capsys)[0] == 3

    def test_mg(self, capsys):
        code, out, _ = run(["mg", "--theta", "0.1", "--zeta", "0.1"], capsys)
        assert code == 0
        lines = out.splitlines()
        assert len(lines) == 4 and all("regime" in ln for ln in lines)
        _, out, _ = run(["mg", "--theta", "0.1", "--zeta", "0.1", "--json"], capsys)
        recs = json.loads(out)
        assert [r["r"] for r in recs] == [0.5, 0.25, mg_point("sqbf_cl", 0.1, 0.1).r, 0.1]

    def test_mg_missing_flag_exits_2(self, capsys):
        with pytest.raises(SystemExit) as e:
            cli.main(["mg", "--theta", "0.1"])
        assert e.value.code == 2
        assert "usage" in capsys.readouterr().err

    def test_mg_invalid(self, capsys):
        assert run(["mg", "--theta", "0", "--zeta", "0.1"], capsys)[0] == 3

    def test_montecarlo(self, capsys):
        code, out, _ = run(["montecarlo", *SYS, "--T-tr", "160", "--iters", "20", "--seed", "1",
                            "--json"], capsys)
        assert code == 0
        rec = json.loads(out)
        assert rec["n_iter"] == 20 and rec["T_tr"] == 160 and rec["se_ci95"] >= 0
        assert len(rec["per_cycle_rates"]) == 8
        code, out, _ = run(["montecarlo", *SYS, "--T-tr", "160", "--iters", "20", "--seed", "1"], capsys)
        assert "+/-" in out and "95% CI" in out

    def test_montecarlo_opt_and_errors(self, capsys):
        code, out, _ = run(["montecarlo", *SYS, "--T-tr", "opt", "--iters", "5", "--json"], capsys)
        assert json.loads(out)["T_tr"] % 8 == 0
        assert run(["montecarlo", *SYS, "--T-tr", "x", "--iters", "5"], capsys)[0] == 2
        assert run(["montecarlo", *SYS, "--T-tr", "600", "--iters", "5"], capsys)[0] == 3
        assert run(["montecarlo", *SYS, "--T-tr", "80", "--iters", "0"], capsys)[0] == 3

    def test_presets(self, capsys):
        code, out, _ = run(["presets"], capsys)
        names = [ln.split()[0] for ln in out.splitlines()]
        assert {"fig3", "fig4", "fig5", "fig6"} <= set(names)
        _, out, _ = run(["presets", "--show", "fig3"], capsys)
        assert cli.parse_spec(out).parameter == "T"

    @pytest.mark.parametrize("name", sorted(cli.PRESETS))
    def test_presets_parse(self, name):
        spec = cli.parse_spec(cli.PRESETS[name])
        assert spec.grid and spec.outputs

    def test_module_entry_point(self):
        res = subprocess.run([sys.executable, "-m", "sqbf", "mg", "--theta", "0.1", "--zeta", "0.5"],
                             capture_output=True, text=True)
        assert res.returncode == 0 and "sqbf_cl" in res.stdout
        res = subprocess.run([sys.executable, "-m", "sqbf"], capture_output=True, text=True)
        assert res.returncode == 2
