from ksquant.parsing import (
    extract_data,
    tokenize,
    ParameterFiller,
    parse_phase_expr,
    parse_operator_expr
)
from ksquant.default_params import TOEPLITZ
from ksquant.generic_classes import Alphabet, ExprSyntaxError, SuiteError
from ksquant.symcore import Scalar, PhasePoly
from ksquant.opalg import OpPoly
from funcs_for_tests import phase_polys, op_polys
from hypothesis import given, settings
import copy
import json
import pytest

syntax_err = pytest.raises(ExprSyntaxError)
suite_err = pytest.raises(SuiteError)

x = PhasePoly.x()
p = PhasePoly.p()


@pytest.fixture
def filename(tmp_path):
    file = tmp_path / "suite.json"
    file.write_text(json.dumps({"suite": "toeplitz", "config": {"cutoff": 32}}))
    return file


@pytest.fixture
def p_filler():
    return ParameterFiller()


def test_extract_data(filename):
    data = extract_data(filename)
    assert data["suite"] == "toeplitz"


# ParameterFiller tests
def test_add_log(p_filler):
    p_filler.add_log("test message")
    assert "test message" in p_filler.log


def test_print_log(p_filler, capsys):
    p_filler.add_log("test message")
    p_filler.print_log()
    captured = capsys.readouterr()
    assert captured.out == "test message\n"


def test_process_suite_params(filename, p_filler):
    params = p_filler.process_suite_params(extract_data(filename))
    expected = copy.deepcopy(TOEPLITZ)
    expected["config"]["cutoff"] = 32
    assert params == expected
    assert "cutoff set to: 32 (default: 64)" in p_filler.log
    assert "key tolerances not specified. Added default." in p_filler.log


def test_none_is_default(p_filler):
    params = p_filler.process_suite_params({"suite": "toeplitz", "config": {"cutoff": None}})
    assert params["config"]["cutoff"] == 64


def test_extra_keys_logged(p_filler):
    p_filler.process_suite_params({"suite": "bohmian", "colour": "blue"})
    assert "key colour not in default config" in p_filler.log


def test_prereq_fail(p_filler):
    with suite_err:
        p_filler.process_suite_params({"not suite": "toeplitz"})
    with suite_err:
        p_filler.process_suite_params({"suite": 1})
    with suite_err:
        p_filler.process_suite_params({"suite": "this will never be a suite name"})


# expression tests
def test_tokenize():
    tokens = tokenize("x^2 + hbar")
    assert [token.kind for token in tokens] == ["name", "op", "number", "op", "name", "end"]
    assert tokens[4].position == 6
    with syntax_err:
        tokenize("x + 0.5")


def test_parse_examples():
    assert parse_phase_expr("x*p") == PhasePoly.monomial(1, 1)
    assert parse_phase_expr("(x+p)^2") == x ** 2 + (x * p).scale(2) + p ** 2
    assert parse_phase_expr("x^2*p^2 + hbar^2/4") == PhasePoly({(2, 2): 1, (0, 0): Scalar.hbar(2) / 4})


def test_parse_scalars():
    assert parse_phase_expr("hbar^-2") == PhasePoly.const(Scalar.hbar(-2))
    assert parse_phase_expr("1/sqrt2") == PhasePoly.const(Scalar.sqrt2() / 2)
    assert parse_phase_expr("-i*l") == PhasePoly.const(-Scalar.i() * Scalar.l())
    assert parse_phase_expr("2 x p") == (x * p).scale(2)
    assert parse_phase_expr("0").is_zero()


def test_parse_errors():
    with syntax_err:
        parse_phase_expr("x^-1")
    with syntax_err:
        parse_phase_expr("1/x")
    with syntax_err:
        parse_phase_expr("x^p")
    with syntax_err:
        parse_phase_expr("1/(hbar + l)")
    with syntax_err:
        parse_phase_expr("(x + p")
    with syntax_err:
        parse_phase_expr("")
    with syntax_err:
        parse_phase_expr("q")
    with syntax_err:
        parse_operator_expr("X a")


def test_error_position():
    with syntax_err as error:
        parse_phase_expr("x + $")
    assert error.value.position == 4
    with syntax_err as error:
        parse_phase_expr("x + 1/x")
    assert error.value.position == 5


@settings(max_examples=200, deadline=None)
@given(phase_polys())
def test_parse_print_fixed_point(A):
    assert parse_phase_expr(str(A)) == A


def test_parse_operator():
    assert parse_operator_expr("X P - P X") == OpPoly.scalar(Scalar.i() * Scalar.hbar())
    assert parse_operator_expr("a ad - ad a") == OpPoly.identity(Alphabet.LADDER)
    symmetrized = parse_operator_expr("1/2 (X P + P X)")
    assert symmetrized == OpPoly.X() * OpPoly.P() - OpPoly.scalar(Scalar.i() * Scalar.hbar() / 2)


@settings(max_examples=100, deadline=None)
@given(op_polys(max_degree=4))
def test_operator_print_parse(A):
    assert parse_operator_expr(str(A)) == A
