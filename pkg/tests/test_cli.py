import io
import json
import subprocess
import sys

import pytest

from kslie.catalog import load_entry
from kslie.cli import main
from kslie.document import emit_document, from_catalog, parse_document


def run(capsys, *argv):
    rc = main(list(argv))
    out = capsys.readouterr()
    return rc, out.out, out.err


def write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return str(p)


def test_check_catalog_entry(capsys):
    rc, out, _ = run(capsys, "check", "catalog:sl2R", "--json")
    assert rc == 0
    data = json.loads(out)
    assert data["ok"] and all(c["ok"] for c in data["checks"])


def test_check_exported_file(tmp_path, capsys):
    path = write(tmp_path, "sl2.json", emit_document(from_catalog("sl2R")))
    rc, out, _ = run(capsys, "check", path)
    assert rc == 0 and "fail" not in out.lower()


def test_duplicate_bracket_is_parse_error(tmp_path, capsys):
    d = json.loads(emit_document(from_catalog("sl2R")))
    first = d["brackets"][0]
    d["brackets"].append({"i": first["j"], "j": first["i"], "coeffs": first["coeffs"]})
    rc, _, err = run(capsys, "check", write(tmp_path, "dup.json", d))
    assert rc == 2 and "twice" in err


def test_non_invariant_metric_exits_one(tmp_path, capsys):
    d = json.loads(emit_document(from_catalog("sl2R")))
    d["metric"].append({"i": 1, "j": 1, "value": "1"})
    d.pop("certificates")
    rc, out, _ = run(capsys, "check", write(tmp_path, "bad.json", d), "--json")
    assert rc == 1
    inv = next(c for c in json.loads(out)["checks"] if c["check"] == "invariance")
    assert not inv["ok"] and inv["detail"]


def test_usage_errors(capsys):
    assert run(capsys, "nonsense")[0] == 2
    assert run(capsys, "check", "catalog:nope")[0] == 2
    assert run(capsys, "check", "/no/such/file.json")[0] == 2
    assert run(capsys, "search", "catalog:su2", "-k", "1")[0] == 2


def test_construct_round_trips_through_check(capsys):
    for argv in (["sln", "3"], ["oscillator", "1"], ["tstar", "catalog:su2"], ["abelian-ksym", "2", "2"],
                 ["product", "catalog:sl2R", "catalog:su2"]):
        rc, out, _ = run(capsys, "construct", *argv)
        assert rc == 0
        doc = parse_document(out)
        if argv[0] == "sln":
            assert doc.algebra.dim == 8 and len(doc.certificates) == 1
        if argv[0] == "oscillator":
            assert doc.algebra.dim == 4
        if argv[0] == "tstar":
            assert doc.algebra == load_entry("T*su2").algebra
        stdin = sys.stdin
        sys.stdin = io.StringIO(out)
        try:
            assert run(capsys, "check", "-")[0] == 0
        finally:
            sys.stdin = stdin


def test_construct_bad_arguments(capsys):
    assert run(capsys, "construct", "sln", "1")[0] == 2
    assert run(capsys, "construct", "oscillator", "-1")[0] == 2


def test_h2(capsys):
    rc, out, _ = run(capsys, "h2", "catalog:T*sl2R", "--json")
    assert rc == 0 and json.loads(out)["h2"] == 0


def test_skew_derivations_kill_center(capsys):
    rc, out, _ = run(capsys, "derivations", "catalog:osc(4)", "--skew", "--json")
    data = json.loads(out)
    assert rc == 0 and data["dim"] == 3
    for m in data["basis"]:
        assert all(row[0] == "0" for row in m)


def test_admissible_blocked(capsys):
    args = ["derivations", "catalog:T*su2", "-k", "2", "--json"]
    for v in ("e1", "e1*", "e2*", "e3*"):
        args += ["--admissible", v]
    rc, out, _ = run(capsys, *args)
    data = json.loads(out)
    assert rc == 0 and data["status"] == "blocked" and data["witness"] == "e1*"


def test_obstructions(capsys):
    rc, out, _ = run(capsys, "obstructions", "catalog:su2", "--json")
    data = json.loads(out)
    assert rc == 0
    assert [v["rule"] for v in data["verdicts"] if v["kind"] == "none"] == ["R6"]


def test_search_found_and_obstructed(capsys):
    rc, out, _ = run(capsys, "search", "catalog:sl2R", "-k", "2")
    assert rc == 0 and "result: FOUND" in out
    rc, out, _ = run(capsys, "search", "catalog:su2", "-k", "2")
    assert rc == 1 and "R6" in out and "OBSTRUCTED" in out


def test_search_output_is_byte_identical():
    cmd = [sys.executable, "-m", "kslie.cli", "search", "catalog:so(3,1)", "-k", "2", "--seed", "5", "--trials", "8"]
    a = subprocess.run(cmd, capture_output=True)
    b = subprocess.run(cmd, capture_output=True)
    assert a.returncode == b.returncode
    assert a.stdout == b.stdout and b"result:" in a.stdout


def test_verify_cert(capsys):
    rc, out, _ = run(capsys, "verify-cert", "catalog:n1(2,2)")
    assert rc == 0 and out.count(": ok") == 2


def test_catalog_commands(capsys):
    rc, out, _ = run(capsys, "catalog", "list", "--dim", "3")
    assert rc == 0 and out.split() == ["su2", "sl2R"]
    rc, out, _ = run(capsys, "catalog", "show", "n2(2,2)")
    assert rc == 0 and parse_document(out).algebra == load_entry("n2(2,2)").algebra
    rc, out, _ = run(capsys, "catalog", "report", "--json")
    assert rc == 0 and json.loads(out)["format_version"] == 1
    assert run(capsys, "catalog", "show")[0] == 2


@pytest.mark.parametrize("sub", ["check", "h2", "obstructions", "verify-cert"])
def test_every_subcommand_has_json(sub, capsys):
    rc, out, _ = run(capsys, sub, "catalog:n1(2,2)", "--json")
    assert rc == 0
    json.loads(out)
