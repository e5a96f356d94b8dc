import json
import math

import pytest

from logsphere import __version__, log_energy, read_configuration
from logsphere.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    assert code == 0
    return json.loads(out)


def test_generate_energy_classify_pipeline(tmp_path, capsys):
    path = tmp_path / "w33.json"
    code, _, _ = run(capsys, "generate", "ortho", "3", "3", "--d", "4", "--out", str(path))
    assert code == 0
    doc = json.loads(path.read_text())
    assert doc["meta"]["version"] == __version__ and doc["n"] == 6
    e = run_json(capsys, "energy", str(path))["energy"]
    assert e["log_product"] == pytest.approx(math.log(373248), rel=1e-13)
    # file round trip is bit-exact against the in-memory report
    assert e["log_product"] == log_energy(read_configuration(path)).log_product
    v = run_json(capsys, "classify", str(path))["verdict"]
    assert v["case_labels"] == ["c"]
    assert sorted(len(c) for c in v["partition"]["classes"]) == [3, 3]


@pytest.mark.parametrize(
    "argv, n",
    [
        (["generate", "simplex", "4", "--d", "3"], 4),
        (["generate", "three", "2", "2", "3"], 7),
        (["generate", "apex", "square", "--d", "3"], 5),
        (["generate", "named", "icosahedron"], 12),
    ],
)
def test_generate_kinds(argv, n, capsys):
    doc = run_json(capsys, *argv)
    assert doc["configuration"]["n"] == n and len(doc["configuration"]["points"]) == n


def test_meta_header(capsys):
    doc = run_json(capsys, "optimize", "--n", "4", "--d", "3", "--seeds", "2", "--rng-seed", "5")
    meta = doc["meta"]
    assert meta["tool"] == "logsphere"
    assert meta["rng_seed"] == 5
    assert meta["command"][:2] == ["logsphere", "optimize"]
    assert meta["params"]["seeds"] == 2
    assert doc["result"]["best_log_product"] == pytest.approx(6 * math.log(8 / 3), abs=1e-8)


def test_optimize_out_file(tmp_path, capsys):
    path = tmp_path / "best.json"
    code, _, _ = run(capsys, "optimize", "--n", "5", "--d", "3", "--seeds", "3", "--out", str(path))
    assert code == 0
    assert read_configuration(path).n == 5


def test_energy_riesz_flags(capsys):
    e = run_json(capsys, "energy", "triangle", "--s", "2", "--s", "-1")["energy"]
    assert e["riesz"]["2.0"] == pytest.approx(2.0)
    assert e["riesz"]["-1.0"] == pytest.approx(6 * math.sqrt(3))


def test_check_stationary_and_matrix_rank(capsys):
    s = run_json(capsys, "check-stationary", "omega_3_4", "--tol", "1e-10")["stationarity"]
    assert s["is_stationary"]
    poles = run_json(capsys, "matrix-rank", "omega_3_3")["poles"]
    assert len(poles) == 6
    one = run_json(capsys, "matrix-rank", "omega_3_3", "--pole", "2")["poles"]
    assert len(one) == 1


def test_formula_with_oracle(capsys):
    doc = run_json(capsys, "formula", "conjecture", "5")
    assert doc["log_value"] == pytest.approx(math.log(2**30 / 27))
    doc = run_json(capsys, "formula", "three_simplex", "2", "2", "3")
    assert doc["difference"] == pytest.approx(0, abs=1e-9)


def test_compare(capsys):
    doc = run_json(capsys, "compare", "omega_3_3", "omega_3_3")
    assert doc["rotation_distance"] < 1e-12
    assert doc["a"]["log_product"] == doc["b"]["log_product"]


def test_verify_commands(capsys):
    c = run_json(capsys, "verify-conjecture", "--d", "3", "--seeds", "10", "--rng-seed", "1")["conjecture"]
    assert c["verdict"] == "SUPPORTED"
    m = run_json(capsys, "verify-monotonicity", "--n", "4", "--d-max", "4", "--seeds", "5")["monotonicity"]
    assert m["strictly_increasing"] and m["plateau_holds"]


def test_text_output_is_table(capsys):
    code, out, _ = run(capsys, "energy", "square")
    assert code == 0
    assert "log_product" in out and not out.lstrip().startswith("{")


def test_module_error_exit_1(capsys):
    code, _, err = run(capsys, "generate", "simplex", "5", "--d", "3")
    assert code == 1
    doc = json.loads(err)
    assert doc["error"] == "DoesNotFit"


def test_missing_file_exit_1(capsys, tmp_path):
    code, _, err = run(capsys, "energy", str(tmp_path / "nope.json"))
    assert code == 1
    assert "error" in json.loads(err)


def test_non_unit_file_needs_renormalize(tmp_path, capsys):
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"d": 2, "n": 2, "points": [[1.0, 1e-4], [-1.0, 0.0]]}))
    assert run(capsys, "energy", str(path))[0] == 1
    assert run(capsys, "energy", str(path), "--renormalize")[0] == 0


def test_usage_error_exit_2(capsys):
    with pytest.raises(SystemExit) as e:
        main(["bogus"])
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        main(["optimize", "--n", "x"])
    assert e.value.code == 2
