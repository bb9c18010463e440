import csv
import io
import json
import subprocess
import sys
from fractions import Fraction as F
from math import gcd

import pytest

from artifact.cli import main, read_pbm
from artifact.commutator import d_coefficient


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def frac(obj):
    return F(int(obj["num"]), int(obj["den"]))


def walk_numbers(node):
    """Yield every serialized exact number in a JSON tree."""
    if isinstance(node, dict):
        if set(node) == {"num", "den", "decimal"}:
            yield node
            return
        for v in node.values():
            yield from walk_numbers(v)
    elif isinstance(node, list):
        for v in node:
            yield from walk_numbers(v)


# -- seq -----------------------------------------------------------------------


def test_seq_csv_symmetric(capsys):
    code, out, _ = run(capsys, "seq", "--n", "1", "--m", "1", "--s", "1", "--t", "1", "--kmax", "4", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 5
    assert all(F(r["delta"]) == 0 for r in rows)
    assert F(rows[0]["sigma"]) == F(2, 9)


def test_seq_json_matches_csv(capsys):
    args = ["seq", "--n", "2", "--m", "3", "--s", "1/2", "--t", "5", "--kmax", "6"]
    _, out_csv, _ = run(capsys, *args, "--format", "csv")
    _, out_json, _ = run(capsys, *args, "--format", "json")
    env = json.loads(out_json)
    assert env["mode"] == "exact"
    rows = list(csv.DictReader(io.StringIO(out_csv)))
    for r, j in zip(rows, env["results"]["rows"]):
        for kind in ("sigma", "omega", "delta"):
            assert F(r[kind]) == frac(j[kind])


def test_seq_decimal_inputs_switch_to_float(capsys):
    _, out, _ = run(capsys, "seq", "--n", "1", "--m", "1", "--s", "0.5", "--kmax", "2")
    env = json.loads(out)
    assert env["mode"] == "float"
    assert isinstance(env["results"]["rows"][0]["sigma"], str)


# -- hypo ----------------------------------------------------------------------


def test_hypo_check_refuted(capsys):
    code, out, _ = run(capsys, "hypo", "check", "--n", "1", "--m", "1", "--s", "1", "--t", "1", "--a", "2")
    assert code == 1
    res = json.loads(out)["results"]
    assert res["status"] == "CertifiedNotHyponormal"
    assert res["witness"]["kind"] == "basis"
    assert frac(res["witness"]["form_value"]) < 0


def test_hypo_check_a_zero(capsys):
    code, out, _ = run(capsys, "hypo", "check", "--n", "1", "--m", "1", "--s", "1", "--t", "1", "--a", "0")
    assert code == 0
    assert json.loads(out)["results"]["status"] == "CertifiedHyponormal"


def test_hypo_check_degenerate(capsys):
    code, out, _ = run(capsys, "hypo", "check", "--n", "1", "--m", "1", "--s", "1", "--t", "1", "--a", "1", "--K", "32")
    assert code == 2


def test_hypo_check_c_rule(capsys):
    code, out, _ = run(capsys, "hypo", "check", "--n", "1", "--m", "1", "--s", "1", "--t", "100", "--c", "1")
    assert code == 0
    assert frac(json.loads(out)["results"]["a_used"]) == F(1, 100)


def test_hypo_window(capsys):
    code, out, _ = run(capsys, "hypo", "window", "--n", "1", "--s", "1", "--m", "1", "--c", "2.0")
    assert code == 1
    env = json.loads(out)
    assert env["mode"] == "float"
    w = env["results"]["window"]
    assert {"t", "k1", "k2"} <= set(w)


def test_hypo_window_below_threshold_is_usage_error(capsys):
    code, _, err = run(capsys, "hypo", "window", "--n", "1", "--s", "1", "--m", "1", "--c", "1.0")
    assert code == 3
    assert "eta" in err


def test_hypo_sweep(capsys):
    code, out, _ = run(capsys, "hypo", "sweep", "--n", "1", "--m", "1", "--s", "1", "--t", "1", "--tol", "1/50")
    assert code == 0
    res = json.loads(out)["results"]
    assert frac(res["a_lo"]) <= 1 <= frac(res["a_hi"])


# -- comm ----------------------------------------------------------------------


def test_comm_norm(capsys):
    code, out, _ = run(capsys, "comm", "norm", "--m", "8", "--n", "7")
    assert code == 0
    res = json.loads(out)["results"]
    assert res["argmax_k"] == 3
    assert frac(res["norm"]) == F(692, 17424)


def test_comm_classify(capsys):
    _, out, _ = run(capsys, "comm", "classify", "--m", "2", "--n", "1")
    assert json.loads(out)["results"]["classification"] == "MonotoneDecreasing"


def test_comm_halfbound(capsys):
    code, out, _ = run(capsys, "comm", "halfbound", "--m", "5", "--n", "4")
    assert code == 0
    res = json.loads(out)["results"]
    assert res["holds"] and res["coefficients_positive"]
    assert all(v > 0 for v in res["quartic"].values())


@pytest.mark.parametrize("m,n", [("3", "5"), ("4", "4")])
def test_comm_bad_order(capsys, m, n):
    code, _, _ = run(capsys, "comm", "norm", "--m", m, "--n", n)
    assert code == 3


# -- region --------------------------------------------------------------------


def test_region_outputs(capsys, tmp_path):
    pbm, csv_path = tmp_path / "r.pbm", tmp_path / "r.csv"
    code, out, _ = run(capsys, "region", "--mmax", "100", "--out-bitmap", str(pbm), "--out-csv", str(csv_path))
    assert code == 0
    B = read_pbm(str(pbm))
    assert B.shape == (99, 100)
    assert B[7 - 1, 8 - 1] and not B[1 - 1, 2 - 1]
    assert pbm.read_text().splitlines()[1].startswith("#")
    rows = list(csv.DictReader(csv_path.open()))
    shaded = {(int(r["m"]), int(r["n"])) for r in rows if r["d_sign"] == "1"}
    assert shaded == {(m, n) for m in range(2, 101) for n in range(1, m) if d_coefficient(m, n) > 0}
    res = json.loads(out)["results"]
    assert "fitted_slope" in res and "ratio_deviation" in res


def test_region_tiny(capsys, tmp_path):
    pbm = tmp_path / "r.pbm"
    run(capsys, "region", "--mmax", "3", "--out-bitmap", str(pbm))
    assert read_pbm(str(pbm)).shape == (2, 3)


def test_region_unwritable(capsys):
    code, _, _ = run(capsys, "region", "--mmax", "5", "--out-bitmap", "/nonexistent/dir/x.pbm")
    assert code != 0


def test_region_deterministic_across_threads(capsys, tmp_path):
    outs = []
    for th in ("1", "3"):
        p = tmp_path / f"r{th}.pbm"
        c = tmp_path / f"r{th}.csv"
        _, out, _ = run(capsys, "region", "--mmax", "250", "--threads", th, "--out-bitmap", str(p), "--out-csv", str(c))
        outs.append((out, p.read_bytes(), c.read_bytes()))
    assert outs[0][1:] == outs[1][1:]
    res = [json.loads(o[0])["results"] for o in outs]
    for r in res:
        del r["bitmap"], r["csv"]
    assert res[0] == res[1]


# -- bounds --------------------------------------------------------------------


def test_bounds_tzero(capsys):
    _, out, _ = run(capsys, "bounds", "--n", "1", "--m", "1", "--s", "1", "--t", "0")
    res = json.loads(out)["results"]
    assert frac(res["basis_bound_abs_a_squared"]) == F(4, 9)
    assert frac(res["two_term_bound"]) == F(4, 9)


def test_bounds_kl(capsys):
    code, out, _ = run(capsys, "bounds", "--kl", "--m", "3", "--q", "1")
    assert code == 0
    res = json.loads(out)["results"]
    assert frac(res["bound_abs_a_squared"]) == F(9, 16)
    assert res["min_attained_by_first_term"] is True


def test_bounds_kl_invalid(capsys):
    code, _, _ = run(capsys, "bounds", "--kl", "--m", "2", "--q", "2")
    assert code == 3


def test_bounds_s_zero(capsys):
    # s = t = 0: the k = 0 term (m+1)(n+1)/(n+1)^2 and the limit n^2/m^2
    _, out, _ = run(capsys, "bounds", "--n", "2", "--m", "3", "--s", "0", "--t", "0")
    res = json.loads(out)["results"]
    assert frac(res["k0_term"]) == F(4, 3)
    assert frac(res["limit"]) == F(4, 9)
    assert frac(res["two_term_bound"]) == F(4, 9)


# -- envelope and contract -----------------------------------------------------


def test_exact_numbers_carry_rationals(capsys):
    _, out, _ = run(capsys, "hypo", "check", "--n", "1", "--m", "2", "--s", "1", "--t", "2", "--a", "1/10")
    env = json.loads(out)
    assert list(env) == ["command", "inputs", "mode", "results"]
    nums = list(walk_numbers(env))
    assert nums
    for x in nums:
        num, den = int(x["num"]), int(x["den"])
        assert den > 0 and gcd(num, den) == 1
        assert float(x["decimal"]) == pytest.approx(int(x["num"]) / int(x["den"]))


def test_json_deterministic(capsys):
    args = ["comm", "norm", "--m", "31", "--n", "20"]
    assert run(capsys, *args)[1] == run(capsys, *args)[1]


def test_timing_flag(capsys):
    _, out, _ = run(capsys, "comm", "classify", "--m", "5", "--n", "4", "--timing")
    assert "timing_ms" in json.loads(out)


def test_out_file(capsys, tmp_path):
    target = tmp_path / "o.json"
    run(capsys, "comm", "norm", "--m", "8", "--n", "7", "--out", str(target))
    assert json.loads(target.read_text())["results"]["argmax_k"] == 3


def test_usage_errors_exit_3():
    for argv in (["bogus"], ["seq"], ["seq", "--n", "x", "--m", "1"], ["hypo", "check", "--n", "1", "--m", "1"]):
        proc = subprocess.run([sys.executable, "-m", "artifact", *argv], capture_output=True)
        assert proc.returncode == 3, argv
