import subprocess
import sys

import pytest

from mfkit.cli import run
from mfkit.matfac import (
    make_factorization,
    parse_factorization,
    serialize_factorization,
)
from mfkit.poly import Variable
from mfkit.tensor import Variant, yoshino
from mfkit.unit import koszul_unit

from conftest import PX, PY, PZ, X


@pytest.fixture
def files(tmp_path):
    a = make_factorization([[1]], [[PX]], PX)
    b = make_factorization([[1]], [[PY]], PY)
    x = make_factorization([[1]], [[PZ - PX]], PZ - PX)
    m = make_factorization(
        [[0, PX], [PX ** 2, 0]], [[0, PX], [PX ** 2, 0]], PX ** 3
    )
    paths = {}
    for name, fx in (("a", a), ("b", b), ("x", x), ("m", m)):
        p = tmp_path / f"{name}.json"
        p.write_text(serialize_factorization(fx))
        paths[name] = str(p)
    bad = tmp_path / "bad.json"
    bad.write_text(
        serialize_factorization(a).replace('"potential": "x"',
                                           '"potential": "x^2"')
    )
    paths["bad"] = str(bad)
    paths["dir"] = tmp_path
    return paths


def test_validate_ok(files, capsys):
    assert run(["validate", files["a"], files["m"]]) == 0
    out = capsys.readouterr().out
    assert "ok (size 1, potential x)" in out
    assert "size 2, potential x^3" in out


def test_validate_math_failure(files, capsys):
    assert run(["validate", files["bad"]]) == 1
    err = capsys.readouterr().err
    assert "FAIL" in err
    assert "deviates" in err


def test_validate_missing_file(files):
    assert run(["validate", str(files["dir"] / "nope.json")]) == 2


def test_validate_keeps_going_after_failure(files, capsys):
    assert run(["validate", files["bad"], files["a"]]) == 1
    captured = capsys.readouterr()
    assert "ok (size 1" in captured.out


def test_tensor_writes_canonical_file(files, capsys):
    out = str(files["dir"] / "ab.json")
    assert run(["tensor", files["a"], files["b"], "-o", out]) == 0
    a = parse_factorization(open(files["a"]).read())
    b = parse_factorization(open(files["b"]).read())
    want = serialize_factorization(yoshino(a, b, Variant.STANDARD))
    assert open(out).read() == want


def test_tensor_variant_to_stdout(files, capsys):
    assert run(["tensor", "--variant", "v3", files["a"], files["b"]]) == 0
    doc = capsys.readouterr().out
    parsed = parse_factorization(doc)
    assert parsed.potential == PX + PY


def test_tensor_rejects_unknown_variant(files, capsys):
    assert run(["tensor", "--variant", "v9", files["a"], files["b"]]) == 2


def test_tensor_rejects_overlapping_variables(files, capsys):
    assert run(["tensor", files["a"], files["a"]]) == 2


def test_unit_command(files, capsys):
    out = str(files["dir"] / "delta.json")
    assert run(["unit", "--potential", "x - y", "--vars", "x,y",
                "-o", out]) == 0
    want = serialize_factorization(
        koszul_unit(PX - PY, (Variable("x"), Variable("y"))).mf
    )
    assert open(out).read() == want


def test_unit_bad_potential(files, capsys):
    assert run(["unit", "--potential", "x +", "--vars", "x"]) == 2


def test_unitor_right(files, capsys):
    code = run(["unitor", "--side", "right", files["x"],
                "--potential", "x", "--var-split", "x:z"])
    assert code == 0
    out = capsys.readouterr().out
    assert "rho∘psi = id: PASS; psi∘rho = id: FAIL (expected)" in out


def test_unitor_left(files, capsys):
    code = run(["unitor", "--side", "left", files["x"],
                "--potential", "z", "--var-split", "x:z"])
    assert code == 0
    assert "FAIL (expected)" in capsys.readouterr().out


def test_unitor_inconsistent_potential(files, capsys):
    code = run(["unitor", files["x"], "--potential", "x^2",
                "--var-split", "x:z"])
    assert code == 1


def test_unitor_bad_split(files):
    assert run(["unitor", files["x"], "--potential", "x",
                "--var-split", "x"]) == 2


def test_homotopy_witness_found(files, capsys):
    code = run(["homotopy", "--max-degree", "1", files["a"],
                "--phi", "scalar:x", "--psi", "zero"])
    assert code == 0
    out = capsys.readouterr().out
    assert "witness found" in out
    assert "lambda0" in out and "lambda1" in out


def test_homotopy_not_found(files, capsys):
    code = run(["homotopy", "--max-degree", "2", files["m"],
                "--phi", "id", "--psi", "zero"])
    assert code == 1
    assert "no homotopy witness" in capsys.readouterr().err


def test_homotopy_two_files(files, capsys):
    code = run(["homotopy", "--max-degree", "0", files["a"], files["a"],
                "--phi", "zero", "--psi", "zero"])
    assert code == 0


def test_homotopy_bad_spec(files, capsys):
    assert run(["homotopy", "--max-degree", "1", files["a"],
                "--phi", "nonsense", "--psi", "zero"]) == 2


def test_print_command(files, capsys):
    assert run(["print", files["m"]]) == 0
    out = capsys.readouterr().out
    assert "size: 2" in out
    assert "potential: x^3" in out
    assert "P:" in out and "Q:" in out


def test_demo_paper(capsys):
    assert run(["demo", "paper"]) == 0
    out = capsys.readouterr().out
    assert "11/11 checks passed" in out


def test_usage_errors():
    assert run([]) == 2
    assert run(["frobnicate"]) == 2
    assert run(["tensor"]) == 2


def test_help_exits_zero(capsys):
    assert run(["--help"]) == 0


def test_cli_as_subprocess():
    proc = subprocess.run(
        [sys.executable, "-m", "mfkit.cli", "demo", "paper"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "checks passed" in proc.stdout
