import pytest
from ksquant import generic_classes
from ksquant.generic_classes import (
    Alphabet,
    OrderTag,
    Scheme,
    KSQuantError,
    ExprSyntaxError
)
from ksquant.constants import SCHEME_MAPPING


def test_syntax_error_position():
    error = ExprSyntaxError("Unexpected token '$'", 4)
    assert error.position == 4
    assert str(error) == "Unexpected token '$' (at position 4)"
    assert str(ExprSyntaxError("Empty expression")) == "Empty expression"


@pytest.mark.parametrize("name", [
    "ExprSyntaxError", "ExactnessError", "EvaluationError", "AlphabetMismatchError", "OrderError",
    "FockConfigError", "NotHermitianError", "DensityMatrixError", "GridCoverageError",
    "QuadratureError", "NodeError", "VectorSetError", "ValuationError", "SuiteError"
])
def test_hierarchy(name):
    assert issubclass(getattr(generic_classes, name), KSQuantError)


def test_warnings_are_not_errors():
    assert not issubclass(generic_classes.TruncationWarning, KSQuantError)
    assert issubclass(generic_classes.VectorSetWarning, UserWarning)


def test_enums():
    assert Alphabet("ladder") == Alphabet.LADDER
    assert OrderTag("anti-normal") == OrderTag.ANTI_NORMAL
    assert set(SCHEME_MAPPING.values()) == set(Scheme)
