import csv
import io
import json
import random
import subprocess
import sys


from floerlab import ainfty, deform
from floerlab.cli import main
from floerlab.pipeline import a2_zigzag_category


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_trees_counts():
    code, out, _ = run("trees", "--k", "5")
    d = json.loads(out)
    assert code == 0 and d["total"] == 45 and d["schema"] == "floer-lab/1"
    assert d["by_codim"] == {"0": 1, "1": 9, "2": 21, "3": 14}


def test_trees_list_and_text():
    code, out, _ = run("--emit", "text", "trees", "--k", "1", "--q", "1", "--emit", "list")
    assert code == 0 and "total: 3" in out and "P(1;r1)" in out


def test_semistable_needs_bound():
    assert run("trees", "--k", "2", "--stability", "semistable")[0] == 2
    assert run("trees", "--k", "2", "--stability", "semistable", "--max-edges", "1")[0] == 0


def test_ainfty_check_pass_and_fail(tmp_path):
    C = a2_zigzag_category()
    good, bad = tmp_path / "good.json", tmp_path / "bad.json"
    ainfty.dump(C, str(good))
    ainfty.dump(C.with_entry(("eS", "x"), "x", -1), str(bad))
    code, out, _ = run("ainfty-check", "--in", str(good))
    d = json.loads(out)
    assert code == 0 and d["report"]["passed"] and d["unital"]
    code, out, _ = run("ainfty-check", "--in", str(bad))
    assert code == 1 and not json.loads(out)["report"]["passed"]


def test_input_errors(tmp_path):
    assert run("ainfty-check", "--in", str(tmp_path / "missing.json"))[0] == 2
    junk = tmp_path / "junk.json"
    junk.write_text("{not json")
    assert run("ainfty-check", "--in", str(junk))[0] == 2
    assert run("sections", "--eps", "0.9")[0] == 2
    assert run("sections", "--n", "3")[0] == 2
    assert run("theorem12", "--l", "5")[0] == 2
    assert run("picard", "--twist", "Q")[0] == 2
    assert run("no-such-command")[0] == 2


def test_fseries(tmp_path):
    FS = deform.random_fseries_instance(random.Random(0), rank=3, top=6)
    path = tmp_path / "ops.json"
    path.write_text(json.dumps(FS.to_json()))
    code, out, _ = run("fseries", "--ops", str(path), "--truncate", "6")
    d = json.loads(out)
    assert code == 0 and all(d["checks"].values()) and not d["warnings"]
    code, out, _ = run("fseries", "--ops", str(path), "--truncate", "1")
    assert code == 0 and json.loads(out)["warnings"]


def test_sections_json_and_csv():
    code, out, _ = run("sections", "--eps", "0.1", "--seeds", "30")
    d = json.loads(out)
    assert code == 0 and d["ok"]
    assert abs(d["solution"]["R"] - 0.8190024875775821) < 1e-10
    assert d["solution"]["counts"] == [0, 1]
    code, out, _ = run("sections", "--eps", "0.1", "--seeds", "30", "--emit", "csv")
    rows = dict(list(csv.reader(io.StringIO(out)))[1:])
    assert code == 0 and abs(float(rows["R"]) - 0.8190024875775821) < 1e-10
    assert rows["count_C1"] == "1"


def test_picard(tmp_path):
    code, out, _ = run("picard", "--twist", "S", "--power", "2")
    d = json.loads(out)
    assert code == 0 and d["power_is_identity"] and d["images"]["L"] == [1, 0]
    lat = tmp_path / "odd.json"
    lat.write_text(json.dumps({"labels": ["L", "S"], "pairing": [[0, 1], [-1, 0]], "parity": "odd"}))
    code, out, _ = run("picard", "--lattice", str(lat), "--twist", "S", "--power", "3")
    assert code == 0 and json.loads(out)["images"]["L"] == [1, 3]


def test_theorems():
    code, out, _ = run("theorem11", "--eps", "0.2", "--seeds", "20")
    d = json.loads(out)
    assert code == 0 and d["passed"] and d["verdicts"]["twisted"] == "quasi-isomorphic"
    code, out, _ = run("--seed", "4", "theorem12", "--l", "6")
    d = json.loads(out)
    assert code == 0 and d["passed"] and d["seeds"]["rng_seed"] == 4


def test_verification_failure_exit_code():
    # no constrained strips: the bulk verdict is not the expected one
    code, out, _ = run("theorem12", "--l", "4", "--count", "0")
    assert code == 1 and not json.loads(out)["passed"]


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "floerlab", "trees", "--k", "4"],
                       capture_output=True, text=True, timeout=120)
    assert p.returncode == 0 and json.loads(p.stdout)["total"] == 11
