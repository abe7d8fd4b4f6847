from ksquant.cli import (
    main,
    build_parser,
    cmd_quantize,
    cmd_kscolor,
    cmd_verify,
    cmd_wigner_dump,
    cmd_husimi_dump,
    get_scheme,
    state_matrix
)
from ksquant.focknum import FockConfig
from ksquant.generic_classes import KSQuantError, Scheme
from ksquant.verification import VerificationRunner, exact
from pathlib import Path
import json
import numpy as np
import pytest

GOLDEN = Path(__file__).parent / "golden"


def run_json(capsys, *argv):
    code = main([*argv, "--json"])
    return code, json.loads(capsys.readouterr().out)


@pytest.mark.parametrize("golden, argv", [
    ("ks2b-weyl-xp-xp.json", ["ks2b", "weyl", "x*p", "x*p"]),
    ("ks2b-antiwick-x-x.json", ["ks2b", "antiwick", "x", "x"]),
    ("symbol-antiwick-x2.json", ["symbol", "X^2", "-s", "antiwick"]),
])
def test_golden_reports(capsys, golden, argv):
    code, report = run_json(capsys, *argv)
    assert code == 0
    assert report == json.loads((GOLDEN / golden).read_text())


def test_json_is_deterministic(capsys):
    main(["ks2b", "weyl", "x^2", "p", "--json"])
    first = capsys.readouterr().out
    main(["ks2b", "weyl", "x^2", "p", "--json"])
    assert capsys.readouterr().out == first


def test_quantize_text(capsys):
    assert main(["quantize", "x*p"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "1/2 (X P + P X) = X P - i hbar/2"
    assert lines[1].startswith("anti-normal: ")


def test_quantize_report():
    report = cmd_quantize("x^2", Scheme.ANTI_WICK)
    assert report.result["standard"] == "X^2 + l^2/2"
    assert "symmetrized" not in report.result
    weyl = cmd_quantize("x^2", Scheme.WEYL)
    assert weyl.text[0] == "X^2"
    assert weyl.result["symmetrized"] == "X^2"


def test_ks2b_text(capsys):
    assert main(["ks2b", "weyl", "x", "p"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[2] == "discrepancy: i*hbar/2"
    assert lines[3] == "quantized inputs commute: False"


def test_kscolor_uncolorable(capsys):
    code, report = run_json(capsys, "kscolor", "ks18-d4")
    assert code == 3
    result = report["result"]
    assert result["colorable"] is False
    assert result["bases"] == 9
    assert result["vectors"] == 18
    assert result["contradiction_core"] == list(range(9))
    assert result["witness"] is None
    assert result["brute_force_agrees"] is True
    assert len(result["basis_list"]) == 9
    assert report["exit_code"] == 3


def test_kscolor_drop_basis(capsys):
    code, report = run_json(capsys, "kscolor", "ks18-d4", "--drop-basis", "0")
    assert code == 0
    assert report["result"]["colorable"] is True
    assert report["result"]["bases"] == 8
    assert report["inputs"]["drop_basis"] == 0
    witness = report["result"]["witness"]
    assert sum(witness.values()) >= 1


def test_kscolor_text():
    report = cmd_kscolor("standard-basis-d3")
    assert report.exit_code == 0
    assert report.text[0] == "3 vectors in dimension 3, 1 bases"
    assert report.text[1] == "colorable, witness value 1 on: e1"


def test_kscolor_no_bases(tmp_path):
    path = tmp_path / "lonely.json"
    path.write_text(json.dumps({"dim": 3, "field": "rational", "vectors": [{"components": ["1", "0", "0"]}]}))
    with pytest.raises(KSQuantError):
        cmd_kscolor(str(path))


@pytest.mark.parametrize("argv", [
    ["quantize", "x^-1"],
    ["quantize", "x", "-s", "husimi"],
    ["symbol", "X a"],
    ["ks2b", "weyl", "x", "(p"],
    ["verify", "no-such-suite"],
    ["kscolor", "missing-file.json"],
    ["kscolor", "ks18-d4", "--drop-basis", "9"],
    ["husimi-dump", "--state", "position-range"],
    ["wigner-dump", "--state", "fock", "-n", "80"],
    ["wigner-dump", "--cutoff", "1"],
])
def test_input_errors(capsys, argv):
    assert main(argv) == 2
    assert capsys.readouterr().err.startswith("error: ")


def test_verify_symbolic(capsys):
    code, report = run_json(capsys, "verify", "symbolic")
    assert code == 0
    assert report["result"] == {"suite": "symbolic", "passed": True}
    assert report["checks"]
    assert all(check["passed"] for check in report["checks"])


def test_verify_failure(capsys, monkeypatch):
    monkeypatch.setattr(VerificationRunner, "symbolic", lambda self: [exact("forced", False)])
    assert main(["verify", "symbolic"]) == 1
    lines = capsys.readouterr().out.splitlines()
    assert lines == ["FAIL forced: 1 (tolerance 0)", "0/1 checks passed"]


def test_verify_overrides():
    report = cmd_verify("bohmian", cutoff=32, hbar=0.5)
    assert report.inputs["config"] == {"cutoff": 32, "hbar": 0.5, "l": 1.0}
    assert report.exit_code == 0


def test_verify_verbose(capsys):
    cmd_verify("symbolic", verbose=True)
    err = capsys.readouterr().err
    assert "Starting: Exact symbolic identities" in err
    assert "Finished: Exact symbolic identities" in err


def test_wigner_dump_file(tmp_path):
    path = tmp_path / "vacuum.csv"
    report = cmd_wigner_dump(FockConfig(16), "vacuum", str(path), points=5)
    assert report.result["points"] == 25
    assert report.result["max"] == pytest.approx(1 / np.pi, abs=1e-6)
    rows = np.loadtxt(path, delimiter=",", skiprows=1)
    assert rows.shape == (25, 3)


def test_wigner_dump_operator(tmp_path):
    path = tmp_path / "x_squared.csv"
    report = cmd_wigner_dump(FockConfig(16), "vacuum", str(path), operator="X^2", points=3, half_width=1.0)
    assert report.inputs["convention"] == "symbol"
    assert report.inputs["state"] is None
    assert np.loadtxt(path, delimiter=",", skiprows=1).shape == (9, 3)


def test_dump_to_stdout(capsys):
    assert main(["husimi-dump", "--cutoff", "16", "--points", "3", "--state", "coherent", "--x0", "0.5"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "x,p,value"
    assert len(lines) == 10


def test_husimi_dump_report(tmp_path):
    report = cmd_husimi_dump(FockConfig(16), "fock", str(tmp_path / "q.csv"), points=5, level=1)
    assert report.result["min"] >= 0.0


def test_state_matrix():
    config = FockConfig(16)
    assert state_matrix("fock", config, level=3).entries[3, 3] == 1
    with pytest.raises(KSQuantError):
        state_matrix("squeezed", config)


def test_get_scheme():
    assert get_scheme("Weyl") == Scheme.WEYL
    assert get_scheme("anti-wick") == Scheme.ANTI_WICK
    with pytest.raises(KSQuantError):
        get_scheme("born-jordan")


def test_parser_requires_command():
    with pytest.raises(SystemExit):
        build_parser().parse_args([])


def test_json_keeps_text_on_stderr(capsys):
    assert main(["quantize", "x*p", "--json"]) == 0
    captured = capsys.readouterr()
    assert json.loads(captured.out)["inputs"]["expr"] == "x*p"
    assert captured.err.splitlines()[0] == "1/2 (X P + P X) = X P - i hbar/2"
