import io
import json
import subprocess
import sys
from importlib import resources

import pytest

from tsing.cli import main, parse_text_records


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def json_lines(text):
    lines = [json.loads(line) for line in text.splitlines()]
    assert all(obj["schema_version"] == "1" for obj in lines)
    return lines


def records_of(lines):
    return [{k: v for k, v in obj.items() if k not in ("schema_version", "kind")}
            for obj in lines if obj["kind"] == "record"]


COMMANDS = [
    ("hj", "25", "9"),
    ("hj", "7", "3"),
    ("markov", "1", "--bound", "30"),
    ("surface", "5", "1,1,1"),
    ("surface", "8.4", "1,2,1"),
    ("verify", "d-triples"),
    ("verify", "an-table"),
    ("verify", "sporadic"),
    ("verify", "toric", "--bound", "50"),
]


@pytest.mark.parametrize("argv", COMMANDS)
def test_text_and_json_agree(argv):
    code_t, text, _ = run(*argv)
    code_j, js, _ = run("--json", *argv)
    assert code_t == code_j == 0
    lines = json_lines(js)
    assert parse_text_records(text) == records_of(lines)
    # every value is a string, integers included
    assert all(isinstance(v, str) for obj in lines for v in obj.values())
    summary = lines[-1]
    assert summary["kind"] == "summary"
    assert text.startswith(f"# command: {summary['command']}\n# status: {summary['status']}\n")
    assert text.rstrip().endswith("# summary: " + "; ".join(
        f"{k}={v}" for k, v in summary.items()
        if k not in ("schema_version", "kind", "command", "status")))


def test_hj_output():
    _, js, _ = run("--json", "hj", "25", "9")
    (rec,) = records_of(json_lines(js))
    assert rec["string"] == "[3,5,2]"
    assert rec["canonical"] == "1/25(1,9)"
    assert rec["milnor"] == "0" and rec["d"] == "1"
    _, js, _ = run("--json", "hj", "4", "1")
    (rec,) = records_of(json_lines(js))
    assert rec["string"] == "[4]" and rec["classification"] == "Tclass(d=1, n=2, a=1)"
    _, js, _ = run("--json", "hj", "2", "1")
    assert records_of(json_lines(js))[0]["classification"] == "DuValA(r=1)"


def test_markov_output():
    _, js, _ = run("--json", "markov", "4", "--bound", "2")
    recs = records_of(json_lines(js))
    assert [(r["triple"], r["minimal"]) for r in recs] == [("[1,2,1]", "true"), ("[2,1,1]", "true")]
    _, js, _ = run("--json", "markov", "1", "--bound", "1")
    assert [r["triple"] for r in records_of(json_lines(js))] == ["[1,1,1]"]
    _, js, _ = run("--json", "markov", "1", "--bound", "5")
    assert "[1,2,5]" in [r["triple"] for r in records_of(json_lines(js))]


def test_big_integers_are_strings():
    _, js, _ = run("--json", "markov", "1", "--bound", "10000000000")
    recs = records_of(json_lines(js))
    assert max(int(r["max"]) for r in recs) > 2**31


def test_surface_output():
    code, js, _ = run("--json", "surface", "1", "1,1,2")
    summary = json_lines(js)[-1]
    assert code == 0
    assert summary["weights"] == "[1,1,4]" and summary["k_squared"] == "9"
    assert summary["singularities"] == "1/4(1,1)"
    _, js, _ = run("--json", "surface", "5", "1,1,1")
    summary = json_lines(js)[-1]
    assert summary["singularities"] == "2xA_1, A_3" and summary["k_squared"] == "4"


@pytest.mark.parametrize("argv, needle", [
    (("surface", "1", "1,1,3"), "residual 2"),
    (("surface", "9.9", "1,1,1"), "unknown family"),
    (("surface", "1", "1,x,1"), "comma-separated"),
    (("hj", "6", "2"), "coprime"),
    (("hj", "3", "5"), "0 < a < n"),
    (("markov", "7"), "unknown equation family"),
    (("markov", "1", "--bound", "0"), "--bound"),
    (("--data", "/nonexistent.json", "verify", "sporadic"), "cannot load"),
])
def test_input_errors_exit_2(argv, needle):
    code, out, err = run(*argv)
    assert code == 2 and out == "" and needle in err


def test_usage_error_exits_2():
    with pytest.raises(SystemExit) as exc:
        main(["verify", "everything"])
    assert exc.value.code == 2


def test_verification_failure_exits_1(tmp_path):
    raw = json.loads((resources.files("tsing") / "data/tables.json").read_text())
    raw["families"][4]["k2"] = 5
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(raw))
    code, out, err = run("--data", str(path), "verify", "toric", "--bound", "10")
    assert code == 1
    assert "FAIL" in err and "scope=toric; item=5:" in err
    assert "# status: fail" in out


def test_verify_summary_counts():
    _, js, _ = run("--json", "verify", "d-triples")
    assert json_lines(js)[-1]["d_triples"] == "14/14"
    _, js, _ = run("--json", "verify", "an-table")
    assert json_lines(js)[-1]["an_table"] == "28/28"


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "tsing", "hj", "2", "1"],
                         capture_output=True, text=True, check=True)
    assert "string=[2]" in res.stdout
