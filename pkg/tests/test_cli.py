import json
import subprocess
import sys

import pytest

from extriples.cli import EXIT_DECIDED, EXIT_ERROR, EXIT_UNKNOWN, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_classify_json(capsys, corpus_dir):
    code, out, _ = run(capsys, "classify", str(corpus_dir / "f5.triple"), "--verify")
    d = json.loads(out)
    assert code == EXIT_DECIDED
    assert d["verdict"] == "yes" and d["nu"] == 3 and d["matched"]["id"] == "F5"
    assert d["oracle"]["codim"] == 3
    assert set(d) >= {"verdict", "nu", "matched", "route", "oracle", "warnings"}


def test_classify_text(capsys, corpus_dir):
    code, out, _ = run(capsys, "classify", str(corpus_dir / "t8.triple"), "--text")
    assert code == EXIT_DECIDED
    assert "exceptional: yes" in out and "matched: T8" in out and "nu: 10" in out
    assert out.startswith("H:")


def test_classify_unknown_exit_code(capsys, corpus_dir):
    code, out, _ = run(capsys, "classify", str(corpus_dir / "neg_sp4_sl4.triple"))
    assert code == EXIT_UNKNOWN
    assert json.loads(out)["verdict"] == "unknown"
    code, out, _ = run(capsys, "classify", str(corpus_dir / "neg_sp4_sl4.triple"), "--verify")
    d = json.loads(out)
    assert code == EXIT_DECIDED and d["verdict"] == "no"
    assert (d["oracle"]["g_orbit_dim"], d["oracle"]["h_orbit_dim"]) == (8, 7)


def test_oracle_command(capsys, corpus_dir):
    code, out, _ = run(capsys, "oracle", str(corpus_dir / "t7.triple"), "--seed", "3")
    d = json.loads(out)
    assert code == EXIT_DECIDED and d["verdict"] == "yes" and d["nu"] == 7 and d["oracle"]["seed"] == 3


def test_castle_command(capsys, corpus_dir, tmp_path):
    p = tmp_path / "x.triple"
    p.write_text("G = sl(3) * sl(2)\nV = phi(1)@1 (x) phi(1)@2\n")
    code, out, _ = run(capsys, "castle", str(p))
    d = json.loads(out)
    assert code == EXIT_DECIDED
    assert "G = sl(3)\n" in d["reduced"] and "phi(2)@1" in d["reduced"]
    assert {"summand": 1, "factor": 2, "dim_U": 3, "dim_W": 2, "dim_W_new": 1} in d["moves"]


def test_factorize(capsys):
    code, out, _ = run(capsys, "factorize", "so(8)", "so(7)[spin]", "so(7)[std]", "--numeric")
    d = json.loads(out)
    assert code == EXIT_DECIDED and d["structural"] is True and d["numeric"] is True
    code, out, _ = run(capsys, "factorize", "so(8)", "so(7)[spin]", "so(7)[spin]")
    d = json.loads(out)
    assert d["structural"] is None and d["numeric"] is False


def test_factorize_table_o(capsys):
    code, out, _ = run(capsys, "factorize", "--table-o")
    d = json.loads(out)
    assert code == EXIT_DECIDED and d["all_ok"] and len(d["rows"]) == 12


def test_tree_check(capsys, corpus_dir):
    code, out, _ = run(capsys, "tree-check", str(corpus_dir / "tree_yak.triple"))
    assert json.loads(out) == {"yak": True, "sgp_projection_full": True, "agree": True}


def test_tables(capsys, tmp_path):
    code, out, _ = run(capsys, "tables")
    assert code == EXIT_DECIDED and out.count("\n") == 37  # T1-T9, F1-F10, O, L1-L7, A1-A10
    code, out, _ = run(capsys, "tables", "--show", "A9")
    d = json.loads(out)
    assert d["degrees"] == [2, 4, 6] and d["nu"] == 3
    path = tmp_path / "tables.json"
    run(capsys, "tables", "--export", str(path))
    exported = json.loads(path.read_text())
    assert exported["schema"] == "extriples.diagrams/1"
    assert {e["id"] for e in exported["entries"]} >= {"T1", "F10", "O", "L7", "A10"}


def test_print_round_trip(capsys, corpus_dir):
    code, out, _ = run(capsys, "print", str(corpus_dir / "l4.triple"))
    assert code == EXIT_DECIDED
    assert out.startswith("NAME = L4\n")


@pytest.mark.parametrize("text,err", [
    ("G = so(8)\nV = phi(1)@1 (x\n", "SpecSyntaxError"),
    ("G = so(8)\nV = phi(9)@1\n", "SpecSemanticError"),
])
def test_errors_are_json_on_stderr(capsys, tmp_path, text, err):
    p = tmp_path / "bad.triple"
    p.write_text(text)
    code, out, errout = run(capsys, "classify", str(p))
    assert code == EXIT_ERROR and out == ""
    assert json.loads(errout)["error"] == err


def test_missing_file(capsys):
    code, _, errout = run(capsys, "classify", "/nonexistent.triple")
    assert code == EXIT_ERROR and "error" in json.loads(errout)


def test_module_entry_point(corpus_dir):
    r = subprocess.run([sys.executable, "-m", "extriples", "classify", str(corpus_dir / "f1.triple")],
                       capture_output=True, text=True, check=False)
    assert r.returncode == 0 and json.loads(r.stdout)["matched"]["id"] == "F1"
