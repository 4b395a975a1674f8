import json
import pathlib
import subprocess
import sys

import pytest

from liectrl.cli import bracket_table_mismatches, main
from liectrl.report import validate_report
from liectrl.specfile import standard_spec

SPECS = pathlib.Path(__file__).resolve().parent.parent / "specs"


def write(tmp_path, data, name="s.json"):
    p = tmp_path / name
    p.write_text(data if isinstance(data, str) else json.dumps(data))
    return str(p)


def test_analyze_controllable(tmp_path, capsys):
    out = tmp_path / "r.json"
    code = main(["analyze", "--spec", str(SPECS / "path-so5.json"), "--json", str(out)])
    assert code == 0
    assert "verdict: controllable" in capsys.readouterr().out
    validate_report(json.loads(out.read_text()))


def test_analyze_uncontrollable(capsys):
    assert main(["analyze", "--spec", str(SPECS / "two-blocks-so5.json")]) == 1


def test_analyze_spec_error(tmp_path, capsys):
    path = write(tmp_path, standard_spec("bad", 3, [(2, 2)]))
    assert main(["analyze", "--spec", path]) == 2
    assert "spec.generators[0]" in capsys.readouterr().err
    assert main(["analyze", "--spec", write(tmp_path, "{", "m.json")]) == 2
    assert main(["analyze", "--spec", str(tmp_path / "missing.json")]) == 2


def test_analyze_mismatch_exit(tmp_path):
    path = write(tmp_path, {"name": "x", "group": {"type": "SL3C"}, "basis_kind": "sl3c",
                            "generators": ["X3", "Y3"]})
    assert main(["analyze", "--spec", path]) == 3


def test_analyze_backends_and_trace(tmp_path, capsys):
    code = main(["analyze", "--spec", str(SPECS / "path-plus-isolated-so5.json"),
                 "--backends", "graph", "--trace-closure"])
    out = capsys.readouterr().out
    assert code == 1 and "larc" not in out and "step 2: + v1v4" in out
    with pytest.raises(SystemExit):
        main(["analyze", "--spec", "x", "--backends", "nope"])


def test_dot_output_is_byte_identical(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    spec = str(SPECS / "triangle-tail-so4.json")
    main(["analyze", "--spec", spec, "--dot", str(a)])
    main(["analyze", "--spec", spec, "--dot", str(b)])
    fa, fb = (d / "triangle-tail-so4.dot" for d in (a, b))
    assert fa.read_bytes() == fb.read_bytes()
    assert b"\r\n" not in fa.read_bytes()


def test_json_output_is_byte_identical(tmp_path):
    spec = str(SPECS / "square-plus-edge-so6.json")
    main(["analyze", "--spec", spec, "--json", str(tmp_path / "1.json")])
    main(["analyze", "--spec", spec, "--json", str(tmp_path / "2.json")])
    assert (tmp_path / "1.json").read_bytes() == (tmp_path / "2.json").read_bytes()


def test_sweep_standard_n4(tmp_path, capsys):
    out = tmp_path / "sw.json"
    assert main(["sweep", "--kind", "standard_son", "--sweep-n", "4", "--json", str(out)]) == 0
    text = capsys.readouterr().out
    assert "64 subsets" in text and "controllable (larc): 38" in text and "mismatches: 0" in text
    assert json.loads(out.read_text())["controllable"] == 38


def test_sweep_sl3_reports_counterexamples(capsys):
    assert main(["sweep", "--kind", "sl3c"]) == 3
    text = capsys.readouterr().out
    assert "mismatches: 28" in text and text.count("counterexample") == 28


def test_sweep_caps(capsys):
    assert main(["sweep", "--kind", "standard_son", "--sweep-n", "7"]) == 2
    assert main(["sweep", "--kind", "formation", "--sweep-n", "6"]) == 2
    assert main(["sweep", "--kind", "standard_son"]) == 2


def test_verify_relations(capsys):
    assert main(["verify-relations", "--n", "5", "--formation-n", "5"]) == 0
    out = capsys.readouterr().out
    assert out.count("PASS") == 4 and "600 instances" in out
    assert main(["verify-relations", "--n", "3", "--formation-n", "4"]) == 0
    assert "partial" in capsys.readouterr().out
    assert bracket_table_mismatches(6) == 0


def test_examples_command(tmp_path, capsys):
    assert main(["examples", "--write", str(tmp_path)]) == 0
    assert "FAIL" not in capsys.readouterr().out
    assert sorted(p.name for p in tmp_path.iterdir()) == sorted(p.name for p in SPECS.glob("*.json"))
    for p in tmp_path.iterdir():
        assert p.read_text() == (SPECS / p.name).read_text()


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "liectrl.cli", "analyze", "--spec",
                        str(SPECS / "split-so4.json")], capture_output=True, text=True)
    assert r.returncode == 0 and "verdict: controllable" in r.stdout
