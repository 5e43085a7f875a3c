from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from hypersing import cli
from hypersing.schemas import ALL_SCHEMAS, BATCH_SCHEMA, REPORT_SCHEMA

ROOT = Path(__file__).resolve().parents[1]
T444 = ["-f", "x^4+y^4+z^4+x*y*z", "-v", "x,y,z"]


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    return code, (json.loads(out) if out else None), err


def test_classify_t444(capsys):
    code, doc, _ = run_json(capsys, "classify", *T444)
    assert code == 0
    assert doc["results"] == {"verdict": "DuBoisNotRational", "minimal_exponent": "1", "lct": "1", "mu": 11}
    jsonschema.validate(doc, REPORT_SCHEMA)


def test_euler(capsys):
    code, doc, _ = run_json(capsys, "euler", "--chi0", "13", "--mu", "11", "--dim", "2")
    assert code == 0 and doc["results"]["chi_smooth"] == 24


def test_exponent_qh(capsys):
    code, doc, _ = run_json(capsys, "exponent", "-f", "x^2+y^2+z^2", "-v", "x,y,z")
    assert code == 0
    assert doc["results"]["minimal_exponent"] == "3/2"
    assert doc["methods"]["minimal_exponent"] == "qh"


def test_text_format_carries_same_information(capsys):
    _, doc, _ = run_json(capsys, "spectrum", *T444)
    code, text, _ = run(capsys, "spectrum", *T444)
    assert code == 0
    assert cli.render_text(doc) == text
    assert "results.spectrum.values[1].value: 5/4" in text


def test_milnor_agreement_and_method_override(capsys):
    code, doc, _ = run_json(capsys, "milnor", *T444)
    assert doc["results"]["mu_groebner"] == doc["results"]["mu_kouchnirenko"] == 11
    assert doc["results"]["agree"] is True
    code, doc, _ = run_json(capsys, "milnor", *T444, "--method", "kouchnirenko")
    assert code == 0 and "mu_groebner" not in doc["results"]
    code, _, err = run(capsys, "milnor", *T444, "--method", "nope")
    assert code == 2 and "nope" in err


def test_milnor_non_convenient_flags_instead_of_failing(capsys):
    code, doc, _ = run_json(capsys, "milnor", "-f", "x^3+x*y^3", "-v", "x,y")
    assert code == 0
    assert doc["results"]["mu"] == 7
    assert doc["flags"] == ["kouchnirenko-not-applicable"]
    code, _, _ = run(capsys, "milnor", "-f", "x^3+x*y^3", "-v", "x,y", "--method", "kouchnirenko")
    assert code == 3


@pytest.mark.parametrize("argv, expected", [
    (["classify", "-f", "x^2+", "-v", "x"], 2),
    (["classify", "-f", "w^2", "-v", "x"], 2),
    (["classify", "-v", "x"], 2),
    (["classify", "-f", "x^2", "-v", "x,y"], 3),
    (["spectrum", "-f", "x^4+y^4+z^4+x*y*z", "-v", "x,y,z", "--method", "qh"], 3),
    (["nilpotence", "-f", "x+y", "-v", "x,y"], 3),
    (["frobnicate"], 2),
    (["resolution", "--divisors", "2:x"], 2),
    (["validate", "--table", "/nonexistent/file.json"], 2),
])
def test_exit_codes(capsys, argv, expected):
    code, _, _ = run(capsys, *argv)
    assert code == expected


def test_timeout_is_precondition_failure(capsys):
    code, _, err = run(capsys, "nilpotence", "-f", "y1^6+y2^6+y3^6+y4^6+y5^6+y1*y2*y3*y4*y5",
                       "-v", "y1,y2,y3,y4,y5", "--timeout", "0.2")
    assert code == 3 and "timeout" in err


def test_resolution(capsys):
    code, doc, _ = run_json(capsys, "resolution", "--divisors", "2:1,3:2,6:4", "--discrepancies", "1,2")
    assert code == 0
    assert doc["results"]["alpha"] == "5/6"
    assert doc["results"]["lct"] == "5/6"
    assert doc["results"]["discrepancy_class"] == "Canonical"


def test_ts(capsys):
    code, doc, _ = run_json(capsys, "ts", "-f", "x^2", "-v", "x", "-g", "y^2+z^2", "-w", "y,z")
    assert code == 0
    assert doc["results"]["agree"] is True
    assert doc["results"]["minimal_exponent_join"] == "3/2"


def test_newton(capsys):
    code, doc, _ = run_json(capsys, "newton", *T444)
    assert code == 0
    assert doc["results"]["mu_kouchnirenko"] == 11
    assert doc["results"]["diagonal_minimal_exponent"] == "1"


def test_validate(tmp_path, capsys):
    good = tmp_path / "good.json"
    good.write_text(json.dumps({"n": 2, "entries": [{"j": 2, "p": 1, "q": 1, "part": "unipotent", "dim": 1}]}))
    code, doc, _ = run_json(capsys, "validate", "--table", str(good))
    assert code == 0 and doc["results"]["violation_count"] == 0
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"n": 2, "limit": [{"p": 2, "q": 0, "dim": 1}], "resolution": []}))
    code, doc, _ = run_json(capsys, "validate", "--table", str(bad))
    assert code == 1 and doc["results"]["frontier"][0]["p"] == 2
    junk = tmp_path / "junk.json"
    junk.write_text('{"n": 2, "entries": [], "color": "red"}')
    code, _, err = run(capsys, "validate", "--table", str(junk))
    assert code == 2 and "color" in err


def test_batch_isolates_failures(tmp_path, capsys):
    f = tmp_path / "germs.txt"
    f.write_text("x,y | x^2+y^3\nx,y,z | x^2+y^2+z^2\nx,y | x^2+*y\nx,y,z | x^4+y^4+z^4+x*y*z\n")
    code, doc, _ = run_json(capsys, "classify", "--batch", str(f))
    jsonschema.validate(doc, BATCH_SCHEMA)
    assert code == 2
    assert [r["status"] for r in doc["records"]] == ["ok", "ok", "error", "ok"]
    assert doc["records"][2]["error"]["kind"] == "input"
    assert doc["summary"] == {"ok": 3, "error": 1}


def test_batch_all_ok(tmp_path, capsys):
    f = tmp_path / "germs.txt"
    f.write_text("x,y | x^2+y^3\nx,y | x^3+y^4\nx,y,z | x^2+y^2+z^2\n")
    code, doc, _ = run_json(capsys, "spectrum", "--batch", str(f))
    assert code == 0 and doc["summary"] == {"ok": 3, "error": 0}


def test_batch_family(tmp_path, capsys):
    f = tmp_path / "family.txt"
    f.write_text(
        "y1,y2,y3 | y1^4+y2^4+y3^4+y1*y2*y3\n"
        "y1,y2,y3,y4 | y1^5+y2^5+y3^5+y4^5+y1*y2*y3*y4\n"
    )
    _, doc, _ = run_json(capsys, "classify", "--batch", str(f))
    assert [r["results"]["verdict"] for r in doc["records"]] == ["DuBoisNotRational"] * 2
    _, doc, _ = run_json(capsys, "nilpotence", "--batch", str(f))
    assert [r["results"]["s"] for r in doc["records"]] == [2, 3]
    assert all(any(c != "0" for c in r["results"]["witness"]) for r in doc["records"])


def test_paper_examples(capsys):
    code, doc, _ = run_json(capsys, "paper-examples")
    assert code == 0
    assert doc["results"]["failed"] == 0


def test_schema_files_in_sync():
    for name, schema in ALL_SCHEMAS.items():
        on_disk = json.loads((ROOT / "docs" / "schemas" / name).read_text())
        assert on_disk == schema, name


def test_every_flag_is_documented():
    text = (ROOT / "docs" / "formats.md").read_text()
    from hypersing.schemas import FLAGS
    for fl in FLAGS:
        assert f"`{fl}`" in text


COMMANDS = [
    ["classify", *T444],
    ["milnor", *T444],
    ["spectrum", *T444],
    ["exponent", *T444],
    ["lct", *T444],
    ["nilpotence", *T444],
    ["newton", *T444],
    ["ts", "-f", "x^2", "-v", "x", "-g", "y^3", "-w", "y"],
    ["resolution", "--divisors", "2:1,3:2,6:4"],
    ["euler", "--chi0", "13", "--mu", "11", "--dim", "2"],
    ["paper-examples"],
]


@pytest.mark.parametrize("argv", COMMANDS, ids=[a[0] for a in COMMANDS])
def test_subprocess_determinism(argv):
    outs = []
    for _ in range(2):
        for fmt in ("json", "text"):
            p = subprocess.run(
                [sys.executable, "-m", "hypersing", *argv, "--format", fmt],
                capture_output=True, check=False,
            )
            outs.append(p.stdout)
            assert p.returncode == 0, p.stderr
    assert outs[0] == outs[2] and outs[1] == outs[3]
    jsonschema.validate(json.loads(outs[0]), REPORT_SCHEMA)
