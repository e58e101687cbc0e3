import json
import os

import pytest

from dworkzeta.cli import main
from dworkzeta.report import (predictions_to_csv, predictions_to_markdown,
                              zeta_to_markdown)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_predict_md_known_rows_n5(capsys):
    code, out, _ = run(capsys, "predict", "--n", "5", "--format", "md")
    assert code == 0
    assert "| [0,0,0,1,4] | 2   | 4     | 20       | Q(sqrt(5)) | 1" in out
    assert "total dimension: 204" in out


def test_predict_requires_n(capsys):
    code, _, err = run(capsys, "predict")
    assert code == 4
    assert "invalid-input" in err


def test_bad_subcommand_exit_code(capsys):
    assert main(["frobnicate"]) == 4


def test_count_rejects_composite_q(capsys):
    code, _, err = run(capsys, "count", "--n", "3", "--q", "10", "--psi", "2")
    assert code == 4
    assert json.loads(err.strip())["error"]["type"] == "invalid-input"


def test_count_identity_twist(capsys):
    code, out, _ = run(capsys, "count", "--n", "3", "--q", "7", "--psi", "3",
                       "--r", "1")
    assert code == 0
    payload = json.loads(out)
    assert payload["fixed_points"] == 9
    assert payload["trace"] == -1


def test_count_with_sigma_cycles(capsys):
    code, out, _ = run(capsys, "count", "--n", "4", "--q", "13", "--psi", "2",
                       "--sigma", "(1,3)(2,4)")
    assert code == 0
    payload = json.loads(out)
    assert payload["sigma"] == [2, 3, 0, 1]
    assert payload["fixed_points"] >= 0


def test_cost_cap_exit_code(capsys):
    from dworkzeta.counting import clear_cache
    clear_cache()
    code, _, err = run(capsys, "count", "--n", "4", "--q", "13", "--psi", "2",
                       "--cost-cap", "5")
    assert code == 3
    assert json.loads(err.strip())["error"]["type"] == "cost-cap"


def test_zeta_check_mode_and_byte_identity(tmp_path, capsys):
    out1 = tmp_path / "a.json"
    out2 = tmp_path / "b.json"
    for path in (out1, out2):
        code, _, _ = run(capsys, "zeta", "--n", "3", "--q", "7", "--psi", "3",
                         "--mode", "check", "--output", str(path))
        assert code == 0
    a, b = out1.read_text(), out2.read_text()
    # identical configs modulo the output path itself -> identical payloads
    assert a.replace(str(out1), "X") == b.replace(str(out2), "X")
    payload = json.loads(a)
    assert payload["factors"][0]["poly"] == [1, 1, 7]
    assert payload["config"]["command"] == "zeta"


def test_zeta_orbit_filter_and_md(capsys):
    code, out, _ = run(capsys, "zeta", "--n", "4", "--q", "13", "--psi", "2",
                       "--orbit", "0,0,2,2", "--format", "md")
    assert code == 0
    assert "(1 - 169t^2)^3" in out.replace("169t", "169t")
    assert "omega piece" in out


def test_zeta_figures_written(tmp_path, capsys):
    out = tmp_path / "rep.json"
    code, _, _ = run(capsys, "zeta", "--n", "3", "--q", "7", "--psi", "3",
                     "--mode", "extract", "--output", str(out), "--figures")
    assert code == 0
    assert (tmp_path / "rep.roots.png").exists()
    assert (tmp_path / "rep.predictions.png").exists()
    assert (tmp_path / "rep.roots.png").stat().st_size > 1000


def test_predict_figures_written(tmp_path, capsys):
    out = tmp_path / "pred.csv"
    code, _, _ = run(capsys, "predict", "--n", "5", "--format", "csv",
                     "--output", str(out), "--figures")
    assert code == 0
    assert (tmp_path / "pred.png").exists()


def test_config_file_with_flag_override(tmp_path, capsys):
    cfgfile = tmp_path / "cfg.json"
    cfgfile.write_text(json.dumps({"n": 4, "format": "csv"}))
    code, out, _ = run(capsys, "--config", str(cfgfile), "predict")
    assert code == 0
    assert "total_dimension,21" in out
    # flags override the file
    code, out, _ = run(capsys, "--config", str(cfgfile), "predict",
                       "--n", "3")
    assert "total_dimension,2" in out


def test_verify_rep_json(capsys):
    code, out, _ = run(capsys, "verify-rep", "--n", "3")
    assert code == 0
    payload = json.loads(out)
    assert all(c["ok"] for c in payload["checks"])
    names = {c["name"] for c in payload["checks"]}
    assert "fourier-multiplicities" in names and "mu-multiplicativity" in names


def test_check_single_criterion(capsys):
    code, out, _ = run(capsys, "check", "--suite", "acceptance",
                       "--only", "criterion-02-dimension-bookkeeping")
    assert code == 0
    assert out.startswith("PASS criterion-02")


def test_prediction_n7_smoke(capsys):
    code, out, _ = run(capsys, "zeta", "--n", "7", "--q", "29", "--psi", "2",
                       "--mode", "predict")
    assert code == 0
    payload = json.loads(out)
    rows = [r for r in payload["predictions"]["rows"] if not r["excluded"]]
    assert len(rows) == 11
    assert payload["predictions"]["total_dimension"] == 39990


def test_report_renderers_shape():
    from dworkzeta.chars import predict_report
    rep = predict_report(4)
    csv_text = predictions_to_csv(rep)
    assert csv_text.splitlines()[0].startswith("class,m_a,deg_Q,exponent,D_a,omega")
    md = predictions_to_markdown(rep)
    assert md.count("|") > 10

    from dworkzeta.counting import DworkInstance
    from dworkzeta.zeta import zeta_report
    z = zeta_report(DworkInstance(3, 7, 3), mode="extract")
    md = zeta_to_markdown(z)
    assert "power-sum consistency" in md and "ok" in md
