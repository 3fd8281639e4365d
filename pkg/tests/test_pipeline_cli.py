import csv
import io
import json
import os

import pytest

from pasystole.cli import main
from pasystole.pipeline import (
    SCHEMA,
    Checkpoint,
    CheckpointMismatch,
    CorruptCheckpoint,
    run_pipeline,
    seed_bound,
)
from pasystole.search import RootBound, make_shards, run_shard


@pytest.fixture(scope="module")
def report3():
    return run_pipeline(3)


def test_genus3_report(report3):
    d = report3.data
    assert d["schema"] == SCHEMA
    assert d["minimum"]["coefficients"] == [1, 0, -1, -1, -1, 0, 1]
    assert d["minimum"]["root"] == pytest.approx(1.40127, abs=1e-5)
    roots = [c["root"] for c in d["candidates"] if c["survives"]]
    assert all(d["minimum"]["root"] <= r for r in roots)
    json.loads(report3.to_json())


def test_timing_excluded_from_hash(report3):
    again = run_pipeline(3)
    assert again.content_hash() == report3.content_hash()
    assert again.to_json(with_timing=False) == report3.to_json(with_timing=False)


def test_pipeline_genus_guard(tmp_path):
    with pytest.raises(ValueError):
        run_pipeline(1)
    with pytest.raises(ValueError):
        run_pipeline(6)
    with pytest.raises(ValueError):
        run_pipeline(6, extended=True)


def test_seed_bounds():
    assert seed_bound(3).value == pytest.approx(1.46557, abs=1e-5)
    assert seed_bound(5).value == pytest.approx(1.2724767, abs=1e-6)
    assert seed_bound(7).defining_poly[0] == 1


def test_no_survivor_reports_bound():
    rep = run_pipeline(3, RootBound(1.3))
    assert rep.minimum["source"] == "bound"
    assert rep.minimum["root"] == 1.3


# --- checkpoints --------------------------------------------------------

def test_checkpoint_roundtrip(tmp_path):
    b = seed_bound(3)
    config = {"genus": 3, "bound": b.describe(), "horizon": 15}
    ck = Checkpoint(str(tmp_path), config)
    shard = make_shards(3, b)[0]
    ck.record(shard, run_shard(3, b.value, shard))
    loaded = Checkpoint.load(str(tmp_path), config)
    assert loaded.state_hash() == ck.state_hash()
    assert not os.path.exists(ck.file + ".tmp")
    with pytest.raises(CheckpointMismatch):
        Checkpoint.load(str(tmp_path), dict(config, horizon=12))


def test_corrupt_checkpoint(tmp_path):
    (tmp_path / "checkpoint.json").write_text("{not json", encoding="utf-8")
    with pytest.raises(CorruptCheckpoint):
        Checkpoint.load(str(tmp_path), {"genus": 3})


def test_resume_is_byte_identical(tmp_path):
    clean = run_pipeline(4)
    with pytest.raises(KeyboardInterrupt):
        run_pipeline(4, checkpoint_dir=str(tmp_path), stop_after=4)
    saved = json.loads((tmp_path / "checkpoint.json").read_text(encoding="utf-8"))
    assert len(saved["shards"]) == 4
    resumed = run_pipeline(4, checkpoint_dir=str(tmp_path))
    assert resumed.to_json(with_timing=False) == clean.to_json(with_timing=False)
    with pytest.raises(CheckpointMismatch):
        run_pipeline(4, checkpoint_dir=str(tmp_path), N=10)


def test_shard_count_does_not_matter():
    a = run_pipeline(4)
    b = run_pipeline(4, shards=100)
    c = run_pipeline(4, workers=3)
    assert b.timing["shards"] > a.timing["shards"]
    assert a.to_json(False) == b.to_json(False) == c.to_json(False)


# --- command line -------------------------------------------------------

def _run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_cli_enumerate(capsys):
    code, out, _ = _run(capsys, "enumerate", "--genus", "3", "--bound", "x^3-x^2-1", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert [c["coefficients"] for c in doc["candidates"]] == [[1, 1, -1, -3, -1, 1, 1], [1, 0, -1, -1, -1, 0, 1]]


def test_cli_enumerate_empty(capsys):
    code, _, _ = _run(capsys, "enumerate", "--genus", "3", "--bound-value", "1.1")
    assert code == 2


def test_cli_csv_and_out(tmp_path, capsys):
    out = tmp_path / "c.csv"
    code, _, _ = _run(capsys, "enumerate", "--genus", "3", "--bound", "[1,-1,0,-1]",
                      "--format", "csv", "--out", str(out))
    assert code == 0
    rows = list(csv.reader(io.StringIO(out.read_text(encoding="utf-8"))))
    assert rows[0] == ["root", "polynomial"] and len(rows) == 3


def test_cli_filter(capsys):
    code, out, _ = _run(capsys, "filter", "x^6-x^4-x^3-x^2+1", "--format", "json")
    assert code == 0
    feas = {(v["sign"], tuple(v["stratum"])) for v in json.loads(out)["verdicts"] if v["feasible"]}
    assert feas == {(-1, (8,)), (-1, (2, 6)), (-1, (2, 2, 2, 2))}
    code, _, _ = _run(capsys, "filter", "x^6+x^5-x^4-3x^3-x^2+x+1")
    assert code == 2


def test_cli_filter_table(capsys):
    code, out, _ = _run(capsys, "filter", "x^8-x^5-x^4-x^3+1", "--stratum", "2,10", "--sign", "-1",
                        "--table", "--max-iter", "15")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].split("|")[1].split() == [str(n) for n in range(1, 16)]
    assert lines[-1].startswith("L_ro")


def test_cli_pipeline_and_report(tmp_path, capsys):
    out = tmp_path / "r.json"
    code, _, err = _run(capsys, "pipeline", "--genus", "3", "--format", "json", "--out", str(out))
    assert code == 0 and "1.401268" in err
    code, table, _ = _run(capsys, "report", str(out))
    assert code == 0 and "X^6 - X^4 - X^3 - X^2 + 1" in table


def test_cli_extended_guard(capsys):
    code, _, err = _run(capsys, "pipeline", "--genus", "6")
    assert code == 1 and "--extended" in err


def test_cli_errors(capsys):
    code, _, err = _run(capsys, "filter", "x^4+x^3")
    assert code == 1 and "position" in err
    code, _, _ = _run(capsys, "rauzy", "verify", "--perm", "5,3,9,8,6,2,7,1,4", "--path", "0")
    assert code == 1


def test_cli_rauzy(capsys):
    code, out, err = _run(capsys, "rauzy", "verify", "--perm", "5,3,9,8,6,2,7,1,4",
                          "--path", "0,1,0,0,1,1,1,0,1,0,0,1,0,0", "--format", "json")
    assert code == 0 and "(2,10)" in err
    assert json.loads(out)["certificate"]["matrix"][0] == [1, 1, 0, 0, 0, 0, 0, 0, 0]
    code, out, _ = _run(capsys, "rauzy", "search", "--perm", "6,3,8,2,7,4,10,9,5,1",
                        "--target", "x^6-x^4-x^3-x^2+1", "--max-len", "10")
    assert code == 0 and "1,1,1,0,0,1,0,1,0,0" in out


def test_cli_twist(capsys):
    code, out, err = _run(capsys, "twist", "act", "a1^2.c1.b2.A2.b1", "--genus", "2", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["charpoly"] == [1, -1, -1, -1, 1] and doc["verdict"] == "PA-CANDIDATE"
    code, out, _ = _run(capsys, "twist", "search", "--target", "x^4-x^3-x^2-x+1", "--max-len", "4")
    assert code == 2
    code, out, _ = _run(capsys, "twist", "search", "--target", "x^4-x^3-x^2-x+1", "--max-len", "6")
    assert code == 0 and "a1.a1.c1.b2.A2.b1" in out


def test_minimizers_listed(report3):
    m = report3.minimum
    assert m["minimizers"][0]["coefficients"] == m["coefficients"]
    strata = [s for w in m["minimizers"] for s in w["feasible_strata"]]
    assert all(s in m["feasible_strata"] for s in strata)


def test_extension_pass():
    from pasystole.pipeline import filter_polynomial
    # the genus-7 minimum times (X-1)^2 passes up to n = 15 only
    p = (1, -1, -1, 1, 0, -1, 1, 0, 0, 0, 1, -1, 0, 1, -1, -1, 1)
    short = [v for v in filter_polynomial(p, 8, 15) if v["feasible"]]
    assert [v["stratum"] for v in short] == [[2, 2, 2, 2, 2, 18]]
    long = filter_polynomial(p, 8, 15, extend=50)
    assert not any(v["feasible"] for v in long)
    ext = [v["extension"] for v in long if v["extension"]]
    assert ext == [{"horizon": 50, "feasible": False, "witnesses": 0}]
