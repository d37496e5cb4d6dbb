"""Command-line surface: exit codes, output formats, determinism."""

import json
import subprocess
import sys

import pytest

from boolqe.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out.strip(), out.err.strip()


def test_decide_exit_codes(capsys):
    code, out, _ = run(capsys, "decide", "--theory", "T2", "Fin(1)")
    assert code == 1 and out == "False"
    code, out, _ = run(capsys, "decide", "--theory", "T3",
                       "A x (Res[2,0](x) -> Fin(x))")
    assert code == 0 and out == "True"
    code, out, _ = run(capsys, "decide", "C[1](0)")
    assert code == 1 and out == "False"


def test_decide_error_reporting(capsys):
    code, _, err = run(capsys, "decide", "Fin(")
    assert code == 2 and "parse error" in err and "1:" in err
    code, _, err = run(capsys, "decide", "--theory", "T1", "E x Fin(x)")
    assert code == 2 and "T1" in err
    code, _, err = run(capsys, "decide", "Fin(x)")
    assert code == 2 and "free variables" in err


def test_qe_output(capsys):
    code, out, _ = run(capsys, "qe", "E x (C[1](x . y) & C[1]((1+x) . y))")
    assert code == 0 and out == "C[2](y)"


def test_eval(capsys):
    code, out, _ = run(capsys, "eval", "Fin(x)",
                       "--assign", "x = EP{transient=[]; T=0; p=2; R=[0]}")
    assert code == 0 and out == "false"
    code, _, err = run(capsys, "eval", "Fin(x)", "--assign", "y = EP{transient=[]; T=0; p=1; R=[]}")
    assert code == 2 and "misses" in err


def test_witness(capsys):
    code, out, _ = run(capsys, "witness", "E x (C[2](x) & ~C[3](x) & Res[2,0](x))")
    assert code == 0 and out == "EP{transient=[0,1]; T=2; p=1; R=[]}"
    code, out, _ = run(capsys, "witness", "E x (Fin(x) & ~Fin(x))",
                       "--max-transient", "2", "--max-period", "2")
    assert code == 0 and out == "inconclusive"


def test_axioms(capsys):
    code, out, _ = run(capsys, "axioms", "--theory", "T2", "--bound", "3")
    assert code == 0 and out.endswith("all True")


def test_defcheck(capsys):
    code, out, _ = run(capsys, "defcheck", "--target", "Res[2,1](x)",
                       "--allow", "Res4", "--size", "5")
    assert code == 0 and out.startswith("DefinableBy: Res[4,1](x) | Res[4,3](x)")
    code, out, _ = run(capsys, "defcheck", "--target", "Fin(x)",
                       "--level", "L1", "--size", "5")
    assert code == 0 and out.startswith("NotDefinable")


def test_json_reports_are_stable(capsys):
    docs = []
    for _ in range(2):
        code, out, _ = run(capsys, "decide", "--format", "json", "--trace",
                           "E x (C[2](x) & ~C[3](x) & Res[2,0](x))")
        assert code == 0
        docs.append(json.loads(out))
    for doc in docs:
        assert doc["schema"] == 1
        assert doc["command"] == "decide"
        assert doc["theory"] == "T3"
        assert doc["verdict"] is True
        assert "trace" in doc and "timing_ms" in doc
        doc.pop("timing_ms")
    assert docs[0] == docs[1]


def test_json_qe(capsys):
    code, out, _ = run(capsys, "qe", "--format", "json", "E x (x = y)")
    doc = json.loads(out)
    assert doc["result"] == "true" and doc["schema"] == 1


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "boolqe", "decide", "Fin(0)"],
        capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0 and proc.stdout.strip() == "True"


def test_formula_from_file(tmp_path, capsys):
    path = tmp_path / "sentence.fol"
    path.write_text("# the element 1 is not finite\n~Fin(1)\n", encoding="utf-8")
    code, out, _ = run(capsys, "decide", "--theory", "T2", f"@{path}")
    assert code == 0 and out == "True"


def test_assignment_from_file(tmp_path, capsys):
    path = tmp_path / "bindings.txt"
    path.write_text("x = EP{transient=[0,1]; T=2; p=1; R=[]}\n", encoding="utf-8")
    code, out, _ = run(capsys, "eval", "Res[2,0](x)", "--assign", str(path))
    assert code == 0 and out == "true"
