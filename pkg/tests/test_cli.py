import json
import os

import pytest
from click.testing import CliRunner

from gsemi.cli import main


@pytest.fixture()
def runner():
    return CliRunner()


def _write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return str(p)


NODE_DOC = {"branches": 2, "conductor": [1, 1], "small": [[0, 0], [1, 1]],
            "name": "node"}
CUSP_CURVE = {"branches": 1, "field": "Q",
              "generators": [[[[2, "1"]]], [[[3, "1"]]]], "name": "cusp"}


# -- validate ------------------------------------------------------------------


def test_validate_ok(runner, tmp_path):
    path = _write(tmp_path, "node.json", NODE_DOC)
    res = runner.invoke(main, ["validate", path])
    assert res.exit_code == 0, res.output
    assert json.loads(res.output)["valid"] is True


def test_validate_violation_exits_1(runner, tmp_path):
    doc = {"branches": 2, "conductor": [2, 2], "small": [[0, 0], [1, 0], [2, 2]]}
    path = _write(tmp_path, "bad.json", doc)
    res = runner.invoke(main, ["validate", path])
    assert res.exit_code == 1
    body = json.loads(res.output)
    assert body["valid"] is False
    assert any(v["witness"] == [1, 0] for v in body["violations"])


def test_validate_malformed_exits_2(runner, tmp_path):
    p = tmp_path / "broken.json"
    p.write_text("{oops")
    res = runner.invoke(main, ["validate", str(p)])
    assert res.exit_code == 2


def test_validate_missing_file_exits_2(runner, tmp_path):
    res = runner.invoke(main, ["validate", str(tmp_path / "absent.json")])
    assert res.exit_code == 2


def test_validate_both_forms_exits_2(runner, tmp_path):
    doc = {"generators": [2, 3], "conductor": [2], "small": [[0], [2]]}
    path = _write(tmp_path, "both.json", doc)
    res = runner.invoke(main, ["validate", path])
    assert res.exit_code == 2


# -- invariants / noether --------------------------------------------------------


def test_invariants_kunz(runner, tmp_path):
    path = _write(tmp_path, "s.json", {"generators": [3, 4, 5]})
    res = runner.invoke(main, ["invariants", path])
    assert res.exit_code == 0
    body = json.loads(res.output)
    assert body["classification"]["kunz"] is True
    assert body["indices"]["gamma"] == [2]


def test_noether_chain_and_exit_zero(runner, tmp_path):
    path = _write(tmp_path, "s.json", {"generators": [3, 5, 7]})
    res = runner.invoke(main, ["noether", path])
    assert res.exit_code == 0
    body = json.loads(res.output)
    assert body["found"] is True
    assert body["full_chain"]["points"] == [[5], [6]]


def test_noether_failure_exits_1(runner, tmp_path):
    doc = {"branches": 2, "conductor": [2, 2],
           "small": [[0, 0], [1, 1], [2, 2]], "name": "tacnode"}
    path = _write(tmp_path, "tac.json", doc)
    res = runner.invoke(main, ["noether", path])
    assert res.exit_code == 1
    assert json.loads(res.output)["found"] is False


def test_order_mode_flag(runner, tmp_path):
    path = _write(tmp_path, "s.json", {"generators": [3, 5, 7]})
    res = runner.invoke(main, ["noether", path, "--order-mode", "lt-all"])
    assert res.exit_code == 0
    assert json.loads(res.output)["order_mode"] == "lt-all"


def test_output_file_flag(runner, tmp_path):
    path = _write(tmp_path, "s.json", {"generators": [2, 3]})
    out = str(tmp_path / "report.json")
    res = runner.invoke(main, ["invariants", path, "-o", out])
    assert res.exit_code == 0
    assert res.output == ""
    assert json.load(open(out))["classification"]["gorenstein"] is True


# -- ingest -------------------------------------------------------------------------


def test_ingest_roundtrip(runner, tmp_path):
    curve = _write(tmp_path, "cusp.json", CUSP_CURVE)
    out = str(tmp_path / "sg.json")
    res = runner.invoke(main, ["ingest", curve, "-o", out])
    assert res.exit_code == 0
    assert "delta=1" in res.output
    doc = json.load(open(out))
    assert doc["conductor"] == [2]
    # the emitted document feeds straight back into the other commands
    res2 = runner.invoke(main, ["validate", out])
    assert res2.exit_code == 0


def test_ingest_json_stdout(runner, tmp_path):
    curve = _write(tmp_path, "cusp.json", CUSP_CURVE)
    res = runner.invoke(main, ["ingest", curve])
    assert res.exit_code == 0
    body = json.loads(res.output)
    assert body["provenance"]["stabilized"] is True
    assert body["delta"] == 1


def test_ingest_trunc_cap_exits_1(runner, tmp_path):
    curve = _write(tmp_path, "cusp.json", CUSP_CURVE)
    res = runner.invoke(main, ["ingest", curve, "--max-trunc", "4"])
    assert res.exit_code == 1
    assert "GSL_MAX_TRUNC" in res.output


def test_ingest_env_ceiling(runner, tmp_path, monkeypatch):
    monkeypatch.setenv("GSL_MAX_TRUNC", "4")
    curve = _write(tmp_path, "cusp.json", CUSP_CURVE)
    res = runner.invoke(main, ["ingest", curve])
    assert res.exit_code == 1


def test_ingest_rejects_unit_generator(runner, tmp_path):
    bad = {"branches": 1, "field": "Q", "generators": [[[[0, "1"]]]]}
    curve = _write(tmp_path, "bad.json", bad)
    res = runner.invoke(main, ["ingest", curve])
    assert res.exit_code == 1
    assert "maximal ideal" in res.output


# -- corpus -------------------------------------------------------------------------


def test_corpus_happy_path(runner, corpus_dir):
    res = runner.invoke(main, ["corpus", corpus_dir, "--strict"])
    assert res.exit_code == 0, res.output
    assert "14 items: 14 ok" in res.output
    assert "full chain on 14" in res.output


def test_corpus_json_deterministic(runner, corpus_dir):
    a = runner.invoke(main, ["corpus", corpus_dir, "--json"])
    b = runner.invoke(main, ["corpus", corpus_dir, "--json"])
    assert a.exit_code == 0 and b.exit_code == 0
    assert a.output == b.output
    body = json.loads(a.output)
    assert body["counts"]["dp_success"] == 14
    assert all("runtime_ms" not in row for row in body["rows"])


def test_corpus_rows_sorted_by_filename(runner, corpus_dir):
    res = runner.invoke(main, ["corpus", corpus_dir, "--json"])
    rows = json.loads(res.output)["rows"]
    names = [r["name"] for r in rows]
    assert names == sorted(names)


def test_corpus_invalid_file_strict(runner, tmp_path, corpus_dir):
    import shutil

    shutil.copy(os.path.join(corpus_dir, "01-cusp.json"), tmp_path / "a.json")
    (tmp_path / "b.json").write_text("{nope")
    res = runner.invoke(main, ["corpus", str(tmp_path), "--strict"])
    assert res.exit_code == 1
    assert "invalid" in res.output
    res2 = runner.invoke(main, ["corpus", str(tmp_path)])
    assert res2.exit_code == 0


def test_corpus_empty_dir(runner, tmp_path):
    res = runner.invoke(main, ["corpus", str(tmp_path)])
    assert res.exit_code == 0
    assert "0 items" in res.output


def test_corpus_output_file(runner, tmp_path, corpus_dir):
    out = str(tmp_path / "summary.json")
    res = runner.invoke(main, ["corpus", corpus_dir, "-o", out])
    assert res.exit_code == 0
    body = json.load(open(out))
    assert body["counts"]["items"] == 14
    # the table still lands on stdout
    assert "status" in res.output


def test_version(runner):
    res = runner.invoke(main, ["--version"])
    assert res.exit_code == 0
