import csv
import io
import json
import math

import pytest

from bethe_asym.cli import main, parse_m_list


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def _csv(text):
    scalars = {}
    body = []
    for line in text.splitlines():
        if line.startswith("# "):
            k, v = line[2:].split("=", 1)
            scalars[k] = v
        else:
            body.append(line)
    return scalars, list(csv.DictReader(io.StringIO("\n".join(body))))


def test_m_list():
    assert parse_m_list("1:5") == [1, 2, 3, 4, 5]
    assert parse_m_list("10:40:10") == [10, 20, 30, 40]
    assert parse_m_list("7,3") == [7, 3]


def test_thermo_free_fermion(capsys):
    code, out, _ = run(capsys, "thermo", "--model", "xxz", "--zeta", "1.5707963", "--field", "2.0")
    assert code == 0
    sc, rows = _csv(out)
    assert abs(float(sc["q"]) - 0.658479) < 1e-6
    assert abs(float(sc["p_F"]) - 1.047198) < 1e-6
    assert abs(float(sc["D"]) - 0.333333) < 1e-6
    assert list(rows[0].keys()) == ["lambda", "rho", "Z", "eps"]
    assert len(rows) == 128


def test_thermo_ll(capsys):
    code, out, _ = run(capsys, "thermo", "--model", "ll", "--c", "4", "--field", "1")
    sc, _ = _csv(out)
    assert code == 0 and abs(float(sc["D_minus_pF_over_pi"])) < 1e-10


def test_delta_flag(capsys):
    _, a, _ = run(capsys, "thermo", "--model", "xxz", "--delta", "0.5", "--field", "1")
    _, b, _ = run(capsys, "thermo", "--model", "xxz", "--zeta", repr(math.acos(0.5)), "--field", "1")
    assert a == b


def test_usage_errors(capsys):
    assert run(capsys, "thermo", "--model", "xxz", "--zeta", "1")[0] == 1
    assert run(capsys, "thermo", "--model", "xxz", "--zeta", "1", "--delta", "0.2", "--field", "1")[0] == 1
    assert run(capsys, "bogus")[0] == 1
    assert run(capsys, "szsz", "--model", "xxz", "--zeta", "1", "--field", "1", "--m", "0:3")[0] == 1
    assert run(capsys, "thermo", "--config", "/nonexistent/file")[0] == 1


def test_numeric_failure(capsys):
    code, _, err = run(capsys, "thermo", "--model", "xxz", "--zeta", "1.5707963", "--field", "9")
    assert code == 2 and "Fermi sea" in err


def test_szsz_free_fermion(capsys):
    code, out, _ = run(capsys, "szsz", "--model", "xxz", "--zeta", repr(math.pi / 2), "--field", "2",
                       "--m", "1:100")
    assert code == 0
    sc, rows = _csv(out)
    D, pF = float(sc["D"]), float(sc["p_F"])
    for r in rows:
        m = int(r["m"])
        closed = (2 * D - 1) ** 2 - 2 / (math.pi ** 2 * m * m) * (1 - math.cos(2 * m * pF))
        assert abs(float(r["total"]) - closed) < 1e-10


def test_jj_large_c(capsys):
    code, out, _ = run(capsys, "jj", "--model", "ll", "--c", "1e6", "--field", "1", "--m", "5,10,20")
    _, rows = _csv(out)
    assert code == 0
    assert len({r["exponent"] for r in rows}) == 1 and abs(float(rows[0]["exponent"]) - 2) < 1e-5


def test_json_round_trip(capsys, tmp_path):
    path = tmp_path / "o.json"
    code, _, _ = run(capsys, "szsz", "--model", "xxz", "--zeta", "1.0", "--field", "1", "--m", "5,9",
                     "--format", "json", "--output", str(path))
    doc = json.loads(path.read_text())
    assert code == 0
    assert json.loads(json.dumps(doc)) == doc
    assert [r["m"] for r in doc["rows"]] == [5, 9]
    assert set(doc["scalars"]) >= {"Z_q", "p_F", "D", "C0", "C1", "A_tilde", "F_sigma_sq"}


def test_csv_lossless(capsys):
    _, out, _ = run(capsys, "szsz", "--model", "xxz", "--zeta", "1.0", "--field", "1", "--m", "7")
    _, rows = _csv(out)
    v = rows[0]["total"]
    assert format(float(v), ".17g") == v


def test_deterministic_output(capsys):
    args = ("verify", "--only", "fredholm", "--seed", "5")
    assert run(capsys, *args)[1] == run(capsys, *args)[1]


def test_config_precedence(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# defaults\nmodel = xxz\nzeta = 1.5707963\nfield = 3.0\n")
    _, a, _ = run(capsys, "thermo", "--config", str(cfg))
    _, b, _ = run(capsys, "thermo", "--config", str(cfg), "--field", "2.0")
    assert abs(float(_csv(a)[0]["q"]) - 0.5 * math.acosh(4 / 3)) < 1e-6
    assert abs(float(_csv(b)[0]["q"]) - 0.658479) < 1e-6
    bad = tmp_path / "bad.cfg"
    bad.write_text("nonsense = 1\n")
    assert run(capsys, "thermo", "--config", str(bad))[0] == 1


def test_generating(capsys):
    code, out, _ = run(capsys, "generating", "--model", "xxz", "--zeta", repr(math.pi / 2), "--field", "2",
                       "--m", "20,40")
    _, rows = _csv(out)
    assert code == 0 and len(rows) == 2 and abs(float(rows[0]["G_im"])) < 1e-10


def test_gsk_check_decreasing(capsys):
    code, out, _ = run(capsys, "gsk-check", "--gamma", "0.1", "--m", "100,200,400")
    _, rows = _csv(out)
    res = [float(r["residual_w0"]) for r in rows]
    assert code == 0 and res[0] > res[1] > res[2]


def test_verify_only_cycle(capsys):
    code, out, _ = run(capsys, "verify", "--only", "cycle")
    _, rows = _csv(out)
    assert code == 0 and {r["group"] for r in rows} == {"cycle"}


def test_verify_all(capsys):
    code, out, _ = run(capsys, "verify", "--all")
    _, rows = _csv(out)
    failed = [r["check"] for r in rows if r["passed"] != "true"]
    assert code == 0, failed
