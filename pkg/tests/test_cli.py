import csv
import io
import json
import subprocess
import sys

import pytest
from jacwalk.cli import main

CONFIG = {"primes": [7, 11], "curves_per_prime": 2, "tags": ["u0", "v1"], "n_max": 300, "c_num": 1, "c_den": 1296, "seed": 17}


@pytest.fixture
def cfg_path(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(CONFIG))
    return path


def run(args, capsys):
    code = main([str(a) for a in args])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_experiment_csv_and_json(cfg_path, tmp_path, capsys):
    code, out, err = run(["experiment", "--config", cfg_path], capsys)
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 8 and rows[0]["tag"] == "u0"
    assert json.loads(err)["bound_violations"] == 0
    target = tmp_path / "r.json"
    code, _, _ = run(["experiment", "--config", cfg_path, "--format", "json", "--out", target], capsys)
    assert code == 0
    assert len(json.loads(target.read_text())) == 8


def test_seed_override(cfg_path, capsys):
    _, a, _ = run(["curve-search", "--config", cfg_path], capsys)
    _, b, _ = run(["curve-search", "--config", cfg_path, "--seed", "18"], capsys)
    _, c, _ = run(["curve-search", "--config", cfg_path, "--seed", "17"], capsys)
    assert a == c != b
    assert a.splitlines()[0] == "p,b1,b2,b3,b4,b5,n1,n2,group_order,t,D"


def test_walk_and_profile(cfg_path, capsys):
    code, out, _ = run(["walk", "--config", cfg_path, "--tag", "z222", "--length", "30"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "n,w_n,is_pole" and len(lines) == 31
    code, out, _ = run(["walk", "--config", cfg_path, "--format", "json"], capsys)
    obj = json.loads(out)
    assert len(obj["values"]) == obj["t"]
    code, out, _ = run(["profile", "--config", cfg_path, "--prime", "11", "--curve-index", "1"], capsys)
    assert out.splitlines()[0] == "N,L"
    Ls = [int(r.split(",")[1]) for r in out.splitlines()[1:]]
    assert Ls == sorted(Ls)


def test_verify_lemmas(cfg_path, capsys):
    code, out, _ = run(["verify-lemmas", "--config", cfg_path, "--format", "json"], capsys)
    assert code == 0
    reps = json.loads(out)
    assert len(reps) == 4
    assert all(r["max_theta_intersection"] <= 2 and r["max_common_zeros"] <= 20 for r in reps)


def test_errors(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"primes": [9]}))
    code, _, err = run(["experiment", "--config", bad], capsys)
    assert code == 2 and "odd prime" in err
    with pytest.raises(SystemExit):
        main(["experiment", "--config", str(tmp_path / "nope.json")])
    with pytest.raises(SystemExit):
        main(["experiment", "--config", str(bad), "--seed", str(1 << 64)])


def test_console_entry(cfg_path, tmp_path):
    out = tmp_path / "o.csv"
    subprocess.run(
        [sys.executable, "-m", "jacwalk.cli", "experiment", "--config", str(cfg_path), "--out", str(out)],
        check=True,
        capture_output=True,
    )
    assert out.read_text().startswith("p,b1,")
