import csv
import io
import json
import math

import pytest

from hemifield.cli import fmt, main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_probe_hemisphere(capsys):
    code, out = run(capsys, "probe", "--a-deg", "0", "--b-deg", "60")
    r, = rows(out)
    assert code == 0
    assert float(r["prob_plus"]) == pytest.approx(0.75, abs=1e-12)
    assert float(r["prob_minus"]) == pytest.approx(0.25, abs=1e-12)
    assert float(r["quadrature_residual"]) <= 1e-9
    _, out = run(capsys, "probe", "--a-deg", "0", "--b-deg", "0")
    r, = rows(out)
    assert float(r["prob_plus"]) == 1.0
    assert float(r["prob_minus"]) == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize("kind", ["alpha_plus", "alpha_minus"])
def test_probe_alpha(capsys, kind):
    _, out = run(capsys, "probe", "--a-deg", "0", "--b-deg", "137", "--field", kind)
    r, = rows(out)
    assert float(r["prob_plus"]) == pytest.approx(0.5, abs=1e-12)


def test_joint(capsys):
    _, out = run(capsys, "joint", "--a-deg", "0", "--b-deg", "60")
    r, = rows(out)
    assert float(r["p_pp"]) == pytest.approx(0.125, abs=1e-12)
    _, out = run(capsys, "joint", "--a-deg", "30", "--b-deg", "30")
    r, = rows(out)
    assert float(r["p_pm"]) == pytest.approx(0.5) and float(r["p_mp"]) == pytest.approx(0.5)


def test_joint_all_routes(capsys):
    _, out = run(capsys, "joint", "--a-deg", "12", "--b-deg", "101", "--u-deg", "33",
                 "--route", "all")
    rs = rows(out)
    assert [r["route"] for r in rs] == ["aleph", "cond1", "cond2"]
    assert float(rs[0]["max_route_discrepancy"]) <= 1e-12


def test_sweep(capsys):
    _, out = run(capsys, "sweep", "--delta-min", "0", "--delta-max", "180", "--steps", "5")
    rs = rows(out)
    assert list(rs[0]) == ["delta", "p_pp", "p_pm", "E_model", "E_naive", "E_quantum"]
    assert float(rs[0]["E_model"]) == pytest.approx(-1.0)
    mid = next(r for r in rs if float(r["delta"]) == 90.0)
    assert float(mid["p_pp"]) == pytest.approx(0.25) and float(mid["p_pm"]) == pytest.approx(0.25)
    for r in rs:
        assert r["E_model"] == r["E_quantum"] or abs(float(r["E_model"]) - float(r["E_quantum"])) <= 1e-12
        assert float(r["E_naive"]) == pytest.approx(-0.5 * math.cos(math.radians(float(r["delta"]))))


@pytest.mark.parametrize("argv", [
    ["sweep", "--delta-min", "10", "--delta-max", "10"],
    ["sweep", "--steps", "1"],
    ["probe", "--a-deg", "x", "--b-deg", "0"],
    ["probe", "--a-deg", "nan", "--b-deg", "0"],
    ["probe", "--a-deg", "0", "--b-deg", "0", "--field", "cube"],
    ["joint", "--a-deg", "0", "--b-deg", "0", "--route", "magic"],
    ["chsh", "--mode", "montecarlo", "--n", "0"],
    ["sample", "--a-deg", "0", "--b-deg", "0", "--format", "xml"],
    [],
])
def test_usage_errors_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_chsh_analytic(capsys):
    _, out = run(capsys, "chsh", "--angles", "0", "90", "45", "135")
    r, = rows(out)
    assert r["S"] == "2.82842712475"
    assert float(r["bell_bound"]) == 2.0
    assert float(r["tsirelson"]) == pytest.approx(2 * math.sqrt(2))


def test_chsh_baseline_analytic(capsys):
    _, out = run(capsys, "chsh", "--baseline")
    r, = rows(out)
    # 12 significant digits on output
    assert float(r["S"]) == pytest.approx(math.sqrt(2), abs=1e-11)


def test_chsh_montecarlo(capsys):
    _, out = run(capsys, "chsh", "--mode", "montecarlo", "--n", "1000000")
    r, = rows(out)
    assert abs(float(r["S"]) - 2 * math.sqrt(2)) <= 0.01
    assert float(r["S_se"]) > 0


def test_sample_stats_and_records(capsys):
    _, out = run(capsys, "sample", "--a-deg", "0", "--b-deg", "0", "--n", "2000")
    r, = rows(out)
    assert int(r["count_pp"]) == 0 and int(r["count_mm"]) == 0
    assert int(r["n"]) == 2000
    _, out = run(capsys, "sample", "--a-deg", "0", "--b-deg", "0", "--n", "50", "--records")
    rs = rows(out)
    assert len(rs) == 50
    assert all(int(x["eps1"]) == -int(x["eps2"]) for x in rs)
    assert {x["anchor"] for x in rs} <= {"1", "2"}


def test_check_passes_and_literal_fails(capsys):
    code, out = run(capsys, "check")
    assert code == 0
    assert all(r["status"] == "pass" for r in rows(out))
    code, out = run(capsys, "check", "--eq42-literal")
    assert code == 1
    failed = {r["check"] for r in rows(out) if r["status"] == "fail"}
    assert "eq42_consistency" in failed


def test_check_ignores_seed(capsys):
    _, a = run(capsys, "check", "--seed", "1")
    _, b = run(capsys, "check", "--seed", "999")
    assert a == b


@pytest.mark.parametrize("argv", [
    ["chsh", "--mode", "montecarlo", "--n", "20000"],
    ["chsh", "--mode", "montecarlo", "--n", "20000", "--baseline", "--format", "json"],
    ["sample", "--a-deg", "10", "--b-deg", "80", "--n", "3000", "--records"],
    ["sample", "--a-deg", "10", "--b-deg", "80", "--n", "300000", "--chunks", "3"],
])
def test_montecarlo_reproducible(capsys, argv):
    _, a = run(capsys, *argv)
    _, b = run(capsys, *argv)
    assert a == b


def test_csv_roundtrip(tmp_path, capsys):
    path = tmp_path / "sweep.csv"
    assert main(["sweep", "--steps", "13", "--out", str(path)]) == 0
    text = path.read_text()
    for r in rows(text):
        for cell in r.values():
            assert fmt(float(cell)) == cell


def test_json_roundtrip_matches_csv(tmp_path, capsys):
    main(["joint", "--a-deg", "17", "--b-deg", "71", "--route", "all",
          "--format", "json", "--out", str(tmp_path / "j.json")])
    main(["joint", "--a-deg", "17", "--b-deg", "71", "--route", "all",
          "--out", str(tmp_path / "j.csv")])
    doc = json.loads((tmp_path / "j.json").read_text())
    assert set(doc) == {"params", "results"}
    csv_rows = rows((tmp_path / "j.csv").read_text())
    for jr, cr in zip(doc["results"], csv_rows):
        for k, v in jr.items():
            assert fmt(v) == cr[k]
