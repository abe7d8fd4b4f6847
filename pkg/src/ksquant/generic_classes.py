'''
generic_classes.py
author(s): ksquant developers

Lowest level objects: enumerations shared by every module
and the exception hierarchy.

'''

from enum import Enum


class Alphabet(Enum):
    '''Letters an operator word is written in'''
    XP = "XP"
    LADDER = "ladder"


class OrderTag(Enum):
    '''Which canonical order an operator representation is in'''
    STANDARD = "standard"        # X^j P^k
    NORMAL = "normal"            # ad^m a^n
    ANTI_NORMAL = "anti-normal"  # a^m ad^n
    UNORDERED = "unordered"


class Scheme(Enum):
    '''Quantization schemes'''
    WEYL = "weyl"
    ANTI_WICK = "antiwick"


# raise this when bad things happen
class KSQuantError(Exception):
    pass


class ExprSyntaxError(KSQuantError):
    '''Expression text does not conform to the grammar'''
    def __init__(self, message: str, position: int = -1) -> None:
        self.position = position
        if position >= 0:
            message = f"{message} (at position {position})"
        super().__init__(message)


class ExactnessError(KSQuantError):
    pass


class EvaluationError(KSQuantError):
    pass


class AlphabetMismatchError(KSQuantError):
    pass


class OrderError(KSQuantError):
    pass


class FockConfigError(KSQuantError):
    pass


class NotHermitianError(KSQuantError):
    pass


class DensityMatrixError(KSQuantError):
    pass


class GridCoverageError(KSQuantError):
    pass


class QuadratureError(KSQuantError):
    pass


class NodeError(KSQuantError):
    pass


class VectorSetError(KSQuantError):
    pass


class ValuationError(KSQuantError):
    pass


class SuiteError(KSQuantError):
    pass


class TruncationWarning(UserWarning):
    '''A numeric result is close to the Fock cutoff budget'''
    pass


class VectorSetWarning(UserWarning):
    pass
