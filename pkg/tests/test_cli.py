import json

import pytest
from click.testing import CliRunner

from tensorloc.cli import main


def run(*args):
    result = CliRunner().invoke(main, [str(a) for a in args])
    lines = [json.loads(line) for line in result.stdout.splitlines() if line.startswith("{")]
    return result.exit_code, lines


def docs(tmp_path, name, *extra):
    out = tmp_path / name
    code, _ = run("example", name, "--out", out, *extra)
    assert code == 0
    return [out / f"{stem}.json" for stem in ("category", "monad", "strength")]


def strip_seconds(lines):
    return [{k: v for k, v in line.items() if k != "seconds"} for line in lines]


def test_zi_and_summary_line(tmp_path):
    cat, _, _ = docs(tmp_path, "square-closure")
    code, lines = run("zi", cat)
    assert code == 0
    assert len(lines[0]["zi"]["elements"]) == 4
    summary = lines[-1]["summary"]
    assert summary["status"] == "pass" and summary["tool"] == "tensorloc"
    assert list(summary["inputs"].values())[0] and len(list(summary["inputs"].values())[0]) == 64


def test_output_is_deterministic_apart_from_timings(tmp_path):
    files = docs(tmp_path, "chain-closure")
    first = strip_seconds(run("check-localisable", *files)[1])
    second = strip_seconds(run("check-localisable", *files)[1])
    assert first == second


def test_state_is_localisable_and_commutative(tmp_path):
    code, lines = run("check-localisable", *docs(tmp_path, "state", "--bound", "1"), "--commutative")
    assert code == 0 and [line["status"] for line in lines[:-1]] == ["pass", "pass"]


def test_corrupted_strength_exits_one_and_names_equations(tmp_path):
    code, lines = run("check-localisable", *docs(tmp_path, "state-corrupted"))
    assert code == 1
    eqs = lines[0]["report"]["equations"]
    assert eqs["eq6_natural_in_a"]["status"] == "fail"
    assert eqs["eq6_natural_in_a"]["counterexample"] is not None
    assert lines[-1]["summary"]["failed"] == ["localisable"]


def test_order_sensitive_strength_fails_commutativity(tmp_path):
    code, lines = run("check-localisable", *docs(tmp_path, "state-order-sensitive", "--bound", "1"), "--commutative")
    assert code == 1
    assert lines[1]["check"] == "commutative" and lines[1]["status"] == "fail"


def test_sierpinski_reports_the_pair(tmp_path):
    code, lines = run("check-localisable", *docs(tmp_path, "sierpinski-closure"))
    assert code == 1
    assert lines[0]["error"] == "NotLocalisable" and lines[0]["pair"] == [1, 2]


def test_planted_category_is_not_stiff(tmp_path):
    out = tmp_path / "p"
    assert run("example", "planted-nonstiff", "--out", out)[0] == 0
    code, lines = run("stiff", out / "category.json")
    assert code == 1
    assert lines[0]["status"] == "fail" and lines[0]["counterexample"]["A"] == 4


def test_restrict_writes_tables(tmp_path):
    files = docs(tmp_path, "chain-closure", "--param", "closure=[1,1,2]")
    out = tmp_path / "restricted"
    code, lines = run("restrict", *files, "--at", "1", "--out", out)
    assert code == 0 and lines[0]["status"] == "pass"
    tables = json.loads((out / "restricted_monad.json").read_text())
    assert set(tables) >= {"obj", "unit", "mult"}


def test_restrict_at_a_non_idempotent_is_bad_input(tmp_path):
    files = docs(tmp_path, "state", "--bound", "1")
    assert run("restrict", *files, "--at", "[2,2]")[0] == 2
    assert run("restrict", *files, "--at", "not json")[0] == 2


def test_roundtrip_and_graded_indexed(tmp_path):
    assert run("roundtrip", *docs(tmp_path, "square-closure"))[0] == 0
    lat = tmp_path / "lattice.json"
    lat.write_text('{"boolean": 2}')
    for family in ("closure", "writer"):
        code, lines = run("graded-indexed", lat, "--family", family)
        assert code == 0 and len(lines) == 5


@pytest.mark.parametrize("args", [
    ("zi", "missing.json"),
    ("example", "chain-closure", "--out", "x", "--param", "novalue"),
])
def test_bad_input_exits_two(tmp_path, args):
    args = [str(tmp_path / a) if a.endswith(".json") or a == "x" else a for a in args]
    code, lines = run(*args)
    assert code == 2 and "error" in lines[0]


def test_malformed_document_exits_two(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"builder": "semilattice", "params": {"order": [[true, false]]}}')
    assert run("zi", bad)[0] == 2


def test_negative_suite_passes():
    code, lines = run("suite", "negative")
    assert code == 0
    assert len(lines) == 8 and lines[-1]["summary"]["failed"] == []
