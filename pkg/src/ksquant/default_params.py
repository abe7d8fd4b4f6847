'''
default_params.py
author(s): ksquant developers

default parameter dictionaries for the verify suites

'''

WIGNER_COHERENT = {
    "suite": "wigner-coherent",
    "config": {
        "cutoff": 64,
        "hbar": 1.0,
        "l": 1.0
    },
    "centre": [0.0, 0.0],
    "grid": {
        "half width": 3.0,
        "points": 13
    },
    "tolerances": {
        "peak": 1e-6,
        "gaussian": 1e-6
    }
}

HUSIMI_EXPECT = {
    "suite": "husimi-expect",
    "config": {
        "cutoff": 64,
        "hbar": 1.0,
        "l": 1.0
    },
    "symbols": ["1", "x", "p", "x^2", "x*p", "p^2", "x^2 - l^2/2", "x^3*p", "x^4", "x^2*p^2"],
    "coherent centres": [[1.0, 1.0], [1.0, -1.0], [-1.0, 1.0], [-1.0, -1.0]],
    "mixture weights": [0.4, 0.3, 0.2, 0.1],
    "tolerances": {
        "normalization": 1e-8,
        "identity": 1e-8
    }
}

TOEPLITZ = {
    "suite": "toeplitz",
    "config": {
        "cutoff": 64,
        "hbar": 1.0,
        "l": 1.0
    },
    "delta centre": [0.5, -0.5],
    "delta widths": [0.5, 0.25, 0.125, 0.0625, 0.03125],
    "tolerances": {
        "commutator": 1e-12,
        "identity": 1e-8,
        "x^2": 1e-8,
        "delta": 1e-3
    }
}

PROJECTOR_SYMBOL = {
    "suite": "projector-symbol",
    "config": {
        "cutoff": 128,
        "hbar": 1.0,
        "l": 1.0
    },
    "interval": [-1.0, 1.0],
    "inside point": [0.0, 0.0],
    "outside point": [3.0, 0.0],
    "refined cutoff": 256,
    "tolerances": {
        "inside": 5e-2,
        "outside": 5e-2,
        "vacuum weight": 1e-6,
        "eigenvalues": 1e-10
    }
}

BOHMIAN = {
    "suite": "bohmian",
    "config": {
        "cutoff": 64,
        "hbar": 1.0,
        "l": 1.0
    },
    "grid": {
        "half width": 6.0,
        "points": 1201
    },
    "tolerances": {
        "momentum": 1e-12,
        "quantum": 1e-8
    }
}

SYMBOLIC = {
    "suite": "symbolic",
    "config": {
        "cutoff": 64,
        "hbar": 1.0,
        "l": 1.0
    },
    "max degree": 6,
    "max power": 5,
    "tolerances": {}
}

DEFAULTS = [WIGNER_COHERENT, HUSIMI_EXPECT, TOEPLITZ, PROJECTOR_SYMBOL, BOHMIAN, SYMBOLIC]
