import json
import subprocess
import sys
from pathlib import Path

import pytest

from conftest import P
from lndforge.cli import SCHEMA, main
from lndforge.derivation import kernel_basis_from_json
from lndforge.poly import poly_from_json, poly_to_json

GOLDEN = Path(__file__).parent / "golden"


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


def test_invariant_matches_golden(capsys):
    code, obj = run(["invariant", "--n", "4", "--ell", "2"], capsys)
    assert code == 0
    assert obj["schema"] == SCHEMA and obj["kind"] == "certificate"
    golden = json.loads((GOLDEN / "invariant_n4_ell2_divided.json").read_text())
    assert obj["divided"] == golden
    assert poly_from_json(golden) == P(
        4, "x1*y5^2 - 2*x2*x3*x4*y1*y5 + x1*x2^2*x4^2*y1*y3 + x1*x3^2*x4^2*y1*y2 - x1^3*x4^2*y2*y3"
    )
    assert len(obj["steps"]) == 1


def test_n_requirement_error(capsys):
    code, obj = run(["invariant", "--n", "3", "--ell", "2"], capsys)
    assert code == 1
    assert obj["error"] == "n_requirement"


def test_usage_errors():
    with pytest.raises(SystemExit) as exc:
        main(["invariant", "--n", "4"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["oracle", "--n", "4", "--deg", "-1"])
    assert exc.value.code == 2


def test_verify_roundtrip_and_corruption(tmp_path, capsys):
    cert = tmp_path / "cert.json"
    assert main(["invariant", "--n", "4", "--ell", "3", "--out", str(cert)]) == 0
    code, obj = run(["verify", "--in", str(cert)], capsys)
    assert code == 0 and obj["ok"] is True

    data = json.loads(cert.read_text())
    data["steps"][0]["F"]["terms"][0]["c"] = "5/1"
    bad = write(tmp_path, "bad_f.json", data)
    code, obj = run(["verify", "--in", bad], capsys)
    assert code == 1 and obj["ok"] is False
    assert "step0_F" in obj["violations"]

    data = json.loads(cert.read_text())
    data["divided"]["terms"][-1]["c"] = "2/1"
    code, obj = run(["verify", "--in", write(tmp_path, "bad_div.json", data)], capsys)
    assert code == 1 and "divided" in obj["violations"]


def test_verify_rejects_malformed(tmp_path, capsys):
    code, obj = run(["verify", "--in", write(tmp_path, "x.json", {"n": 4})], capsys)
    assert code == 1 and obj["error"] == "format_error"
    code, obj = run(["verify", "--in", str(tmp_path / "missing.json")], capsys)
    assert code == 1 and obj["error"] == "io_error"


def test_decompose(tmp_path, capsys):
    path = write(tmp_path, "h.json", poly_to_json(P(4, "x2^2*y3 - x3^2*y2")))
    code, obj = run(["decompose", "--in", path], capsys)
    assert code == 0
    assert obj["summands"] == [{"c": "1/1", "d": [0, 0, 0], "t": [[2, 3, 1]]}]
    path = write(tmp_path, "y.json", poly_to_json(P(4, "y2")))
    code, obj = run(["decompose", "--in", path], capsys)
    assert code == 1 and obj["error"] == "not_in_kernel"


def test_oracle(capsys):
    code, obj = run(["oracle", "--n", "4", "--deg", "1"], capsys)
    assert code == 0 and obj["kind"] == "kernel_basis" and len(obj["elements"]) == 5
    code, obj = run(["oracle", "--n", "4", "--deg", "3", "--mask", "x2,x3,x4,y2,y3,y4"], capsys)
    assert code == 0
    kb = kernel_basis_from_json(obj)
    assert kb.contains(P(4, "x2^2*y3 - x3^2*y2"))
    code, obj = run(["oracle", "--n", "4", "--deg", "0", "--target", "m0"], capsys)
    assert code == 0 and len(obj["elements"]) == 4
    code, obj = run(["oracle", "--n", "4", "--deg", "1", "--mask", "z9"], capsys)
    assert code == 1


def test_m0(capsys):
    code, obj = run(["m0", "--n", "4", "--ell", "2"], capsys)
    assert code == 0 and obj["in_m0"] is True and obj["image"] == {}
    assert set(obj["element"]) >= {"dx1", "dy5"}


def test_apply(tmp_path, capsys):
    path = write(tmp_path, "p.json", poly_to_json(P(4, "y1*y2")))
    code, obj = run(["apply", "--in", path], capsys)
    assert code == 0 and obj["kind"] == "polynomial"
    assert poly_from_json(obj) == P(4, "x1^2*y2 + x2^2*y1")

    path = write(tmp_path, "e.json", {"n": 4, "coeffs": {"dy1": poly_to_json(P(4, "1"))}})
    code, obj = run(["apply", "--in", path], capsys)
    assert code == 0 and obj["kind"] == "module_element"
    assert poly_from_json(obj["coeffs"]["dx1"]) == P(4, "2*x1")


def test_verbose_goes_to_stderr(capsys):
    assert main(["invariant", "--n", "4", "--ell", "3", "--verbose"]) == 0
    captured = capsys.readouterr()
    json.loads(captured.out)
    assert "r=" in captured.err


def test_subprocess_entry_point(tmp_path):
    out = subprocess.run(
        [sys.executable, "-m", "lndforge", "invariant", "--n", "4", "--ell", "1"],
        capture_output=True, text=True, check=True,
    )
    assert json.loads(out.stdout)["steps"] == []
