import json
import subprocess
import sys

import pytest

from braceforge import fileformat
from braceforge.brace import trivial_from_group
from braceforge.cli import main
from braceforge.corpus import corpus
from braceforge.groups import make_cyclic


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, "--json", *argv)
    return code, json.loads(out)


@pytest.fixture(scope="module")
def f1_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("files") / "f1.json"
    assert main(["family1", "3", "2", "2", "1", "1", "--out", str(path)]) == 0
    return path


@pytest.fixture(scope="module")
def ex1_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("files") / "ex1.json"
    assert main(["family2", "--p", "3", "--m", "2", "--P", "01;11", "--n", "2", "--eps", "+-", "--out", str(path)]) == 0
    return path


def test_family1_file(f1_file):
    bf = fileformat.read(f1_file)
    assert bf.order == 81 and len(bf.dot_table) == 81 * 81
    assert bf.provenance["params"] == {"p": 3, "m": 2, "n": 2, "k": 1, "l": 1}


def test_family1_parameter_error(capsys):
    code, doc = run_json(capsys, "family1", "3", "1", "1", "1", "1")
    assert code == 1
    assert doc["checks"][0]["witness"] == ["k <= n-l"]


def test_family2_ragged_spec_is_parse_error(capsys):
    assert run(capsys, "family2", "3", "2", "0110;11")[0] == 2


def test_validate_ok(capsys, f1_file):
    code, doc = run_json(capsys, "validate", str(f1_file))
    assert code == 0 and all(c["status"] == "pass" for c in doc["checks"])
    assert doc["schema_version"] == 1 and isinstance(doc["elapsed_ms"], int)


def test_validate_corrupted_entry(capsys, tmp_path, ex1_file):
    doc = json.loads(ex1_file.read_text())
    # move one non-identity entry to another non-identity value
    t = doc["circle_table"]
    cell = next(i for i in range(36, len(t)) if i % 36 and t[i] not in (0, 35))
    t[cell] = 35 if t[cell] != 34 else 33
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    code, rep = run_json(capsys, "validate", str(bad))
    assert code == 1
    failed = [c for c in rep["checks"] if c["status"] == "fail"]
    assert failed and "witness" in failed[0]
    witness = failed[0]["witness"]
    assert witness["axiom"] == "associativity"
    a, b, c = witness["at"]
    t = doc["circle_table"]
    assert t[t[a * 36 + b] * 36 + c] != t[a * 36 + t[b * 36 + c]]


@pytest.mark.parametrize("cut", [10, 200, -3])
def test_validate_truncated(capsys, tmp_path, f1_file, cut):
    text = f1_file.read_text()
    bad = tmp_path / "cut.json"
    bad.write_text(text[:cut])
    assert run(capsys, "validate", str(bad))[0] == 2


def test_validate_length_mismatch(capsys, tmp_path, f1_file):
    doc = json.loads(f1_file.read_text())
    doc["dot_table"].pop()
    bad = tmp_path / "short.json"
    bad.write_text(json.dumps(doc))
    assert run(capsys, "validate", str(bad))[0] == 2


def test_missing_file(capsys, tmp_path):
    assert run(capsys, "validate", str(tmp_path / "nope.json"))[0] == 2


def test_analyze_trivial(capsys, tmp_path):
    path = tmp_path / "triv.json"
    fileformat.BraceFile.from_brace(trivial_from_group(make_cyclic(7))).write(path)
    code, doc = run_json(capsys, "analyze", str(path))
    a = doc["analysis"]
    assert code == 0 and a["is_trivial"]
    assert a["sizes"] == {"derived": 1, "left3": 1, "right3": 1}


def test_analyze_families(capsys, f1_file, ex1_file):
    assert run_json(capsys, "analyze", str(ex1_file))[1]["analysis"]["is_meta_trivial"] is False
    doc = run_json(capsys, "analyze", str(f1_file))[1]
    assert doc["analysis"]["is_meta_trivial"] is True
    assert set(doc["analysis"]["ideal_facts"]) == {"B", "C"}


def test_enum_outputs(capsys):
    code, out = run(capsys, "enum-quadruples", "--max", "10")
    assert code == 0 and out.splitlines()[0] == "1025"
    out = run(capsys, "enum-quadruples", "--max", "3", "--nontrivial")[1].splitlines()
    assert out[0] == "7" and len(out) == 8 and out[1] == "2 2 1 1"
    assert run(capsys, "enum-quadruples", "--max", "1", "--nontrivial")[1].strip() == "0"
    assert run(capsys, "enum-quadruples", "--max", "10", "--include-boundary")[1].splitlines()[0] == "1120"


def test_verify_lemmas(capsys, ex1_file):
    assert run(capsys, "verify", "--suite", "lemmas", str(ex1_file))[0] == 0


def test_verify_theorems_sharpness(capsys, ex1_file):
    code, doc = run_json(capsys, "verify", "--suite", "theorems", str(ex1_file))
    assert code == 0
    ito = next(t for t in doc["theorems"] if t["theorem"] == "thm_ito")
    assert ito["applicable"] is False and ito["conclusion"]["status"] == "fail" and not ito["red_alert"]


def test_verify_builtin(capsys):
    assert run(capsys, "verify", "--suite", "lemmas", "--builtin", "triv(Z/6)")[0] == 0
    assert run(capsys, "verify", "--suite", "lemmas", "--builtin", "no-such")[0] == 2


def test_verify_unknown_suite(capsys):
    with pytest.raises(SystemExit) as err:
        sys.exit(main(["verify", "--suite", "everything"]))
    assert err.value.code == 2


def test_search(capsys):
    code, doc = run_json(capsys, "search-P", "--m", "2", "--p", "3")
    assert code == 0
    assert all(m["order"] == 3 and m["v"] is not None for m in doc["matrices"])
    assert "01;11" in [m["rows"] for m in doc["matrices"]]
    code, doc = run_json(capsys, "search-P", "--m", "2", "--p", "5")
    assert code == 1 and doc["checks"][0]["status"] == "fail"
    code, doc = run_json(capsys, "search-P", "--m", "3", "--p", "7")
    assert code == 0 and any(m["v"] == 1 for m in doc["matrices"])


def test_console_script_runs():
    proc = subprocess.run([sys.executable, "-m", "braceforge.cli", "enum-quadruples", "--max", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.splitlines()[0] == "1"


def test_round_trip_every_corpus_brace(tmp_path):
    for i, e in enumerate(x for x in corpus() if x.order <= 1000):
        bf = fileformat.BraceFile.from_brace(e.brace, {"subsets": {"B": sorted(e.b_set), "C": sorted(e.c_set)}})
        first = bf.dumps()
        path = tmp_path / f"{i}.json"
        bf.write(path)
        again = fileformat.read(path)
        assert again.dumps() == first
        assert again.to_brace().same_tables(e.brace)
