'''
constants.py
author(s): ksquant developers

Global constants

'''

from ksquant.generic_classes import Scheme

# mapping from command line scheme names to schemes
SCHEME_MAPPING = {
    "weyl": Scheme.WEYL,
    "antiwick": Scheme.ANTI_WICK,
    "anti-wick": Scheme.ANTI_WICK,
    "coherent": Scheme.ANTI_WICK,
}

# process exit codes
EXIT_SUCCESS = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_UNCOLORABLE = 3

# names accepted by the verify command
VERIFY_SUITES = [
    "wigner-coherent",
    "husimi-expect",
    "toeplitz",
    "projector-symbol",
    "bohmian",
    "symbolic",
]

# vector sets shipped in ksquant/data
BUNDLED_VECTOR_SETS = [
    "standard-basis-d3",
    "ks18-d4",
]

# numeric tolerances
HERMITIAN_TOL = 1e-10
DENSITY_TOL = 1e-10
IMAG_RESIDUE_TOL = 1e-9
ORTHOGONALITY_TOL = 1e-9
UNIT_NORM_TOL = 1e-6
NODE_THRESHOLD = 1e-10
NODE_EXCLUSION_STEPS = 3
