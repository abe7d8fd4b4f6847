'''
focknum.py
author(s): ksquant developers

Truncated-Fock numerics: configurations, operator matrices, coherent
states and the numerical Toeplitz (coherent state) quantization

    T(A) = 1/(2 pi hbar) int A(x, p) |(x, p)><(x, p)| dx dp

evaluated by tensor Gauss-Legendre quadrature on a PhaseGrid.

Matrices are trusted on the leading cutoff/2 block only: ladder
truncation errors collect at the top levels.

'''

import warnings
from dataclasses import dataclass
from typing import Callable
import numpy as np
from ksquant.generic_classes import (
    Alphabet,
    FockConfigError,
    GridCoverageError,
    KSQuantError,
    TruncationWarning
    )
from ksquant.symcore import PhasePoly
from ksquant.opalg import OpPoly, change_alphabet

# phase-space points per quadrature chunk
CHUNK_SIZE = 8192


@dataclass(frozen=True)
class FockConfig:
    '''Number-basis dimension and units

    Attributes
    ----------
    cutoff: int
        number of retained Fock levels, at least 2
    hbar: float
    l: float
        oscillator length sqrt(hbar/(m omega))
    '''
    cutoff: int = 64
    hbar: float = 1.0
    l: float = 1.0  # noqa: E741

    def __post_init__(self):
        if not isinstance(self.cutoff, (int, np.integer)) or self.cutoff < 2:
            raise FockConfigError(f"cutoff must be an integer >= 2, got {self.cutoff}")
        if not self.hbar > 0:
            raise FockConfigError(f"hbar must be positive, got {self.hbar}")
        if not self.l > 0:
            raise FockConfigError(f"l must be positive, got {self.l}")

    @classmethod
    def from_mass_frequency(cls, cutoff: int, hbar: float, mass: float, omega: float) -> 'FockConfig':
        if not (mass > 0 and omega > 0):
            raise FockConfigError("mass and frequency must be positive")
        return cls(cutoff, hbar, float(np.sqrt(hbar / (mass * omega))))

    @property
    def block(self) -> int:
        '''Size of the trusted leading block'''
        return self.cutoff // 2

    def alpha(self, x, p):
        '''Complex amplitude (x/l + i l p/hbar)/sqrt2'''
        return (np.asarray(x) / self.l + 1j * self.l * np.asarray(p) / self.hbar) / np.sqrt(2)


@dataclass(frozen=True, eq=False)
class FockMatrix:
    '''Dense operator matrix in the number basis'''
    entries: np.ndarray
    config: FockConfig

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=complex)
        if entries.shape != (self.config.cutoff, self.config.cutoff):
            raise FockConfigError(
                f"matrix shape {entries.shape} does not match cutoff {self.config.cutoff}"
                )
        object.__setattr__(self, "entries", entries)

    @property
    def dim(self) -> int:
        return self.config.cutoff

    def leading_block(self, size: int | None = None) -> np.ndarray:
        size = self.config.block if size is None else size
        return self.entries[:size, :size]

    def is_hermitian(self, tol: float = 1e-10) -> bool:
        scale = max(1.0, float(np.max(np.abs(self.entries))))
        return bool(np.max(np.abs(self.entries - self.entries.conj().T)) <= tol * scale)

    def __add__(self, other: 'FockMatrix') -> 'FockMatrix':
        return FockMatrix(self.entries + other.entries, self.config)

    def __sub__(self, other: 'FockMatrix') -> 'FockMatrix':
        return FockMatrix(self.entries - other.entries, self.config)

    def __matmul__(self, other: 'FockMatrix') -> 'FockMatrix':
        return FockMatrix(self.entries @ other.entries, self.config)

    def expectation(self, rho: 'FockMatrix') -> complex:
        '''Tr(M rho)'''
        return complex(np.trace(self.entries @ rho.entries))


def block_distance(first, second, size: int) -> float:
    '''Max abs difference of two matrices on their leading size x size block'''
    first = first.entries if isinstance(first, FockMatrix) else np.asarray(first)
    second = second.entries if isinstance(second, FockMatrix) else np.asarray(second)
    return float(np.max(np.abs(first[:size, :size] - second[:size, :size])))


def frobenius_distance(first, second, size: int) -> float:
    first = first.entries if isinstance(first, FockMatrix) else np.asarray(first)
    second = second.entries if isinstance(second, FockMatrix) else np.asarray(second)
    return float(np.linalg.norm(first[:size, :size] - second[:size, :size]))


def _ladder_entries(size: int) -> tuple[np.ndarray, np.ndarray]:
    a = np.diag(np.sqrt(np.arange(1, size, dtype=float)), 1).astype(complex)
    return a, a.conj().T


def build_ladder(config: FockConfig) -> tuple[FockMatrix, FockMatrix, FockMatrix, FockMatrix]:
    '''Truncated annihilation, creation, position and momentum matrices

    Returns
    -------
    tuple
        a, adag, X = l/sqrt2 (a + adag), P = i hbar/(l sqrt2) (adag - a)
    '''
    a, adag = _ladder_entries(config.cutoff)
    x = config.l / np.sqrt(2) * (a + adag)
    p = 1j * config.hbar / (config.l * np.sqrt(2)) * (adag - a)
    return tuple(FockMatrix(entries, config) for entries in (a, adag, x, p))


def op_to_matrix(A: OpPoly, config: FockConfig) -> FockMatrix:
    '''Evaluate an operator polynomial on ladder matrices

    The anti-normally ordered form is evaluated on matrices padded by the
    degree of A and then cropped, so every entry equals the corresponding
    entry of the untruncated operator.
    '''
    ladder = change_alphabet(A, Alphabet.LADDER)
    size = config.cutoff + max(ladder.degree(), 0)
    a, adag = _ladder_entries(size)
    result = np.zeros((size, size), dtype=complex)
    for word, coefficient in ladder.numeric_terms(config.hbar, config.l):
        m = word.count(0)
        n = len(word) - m
        result += coefficient * (np.linalg.matrix_power(a, m) @ np.linalg.matrix_power(adag, n))
    crop = config.cutoff
    return FockMatrix(result[:crop, :crop], config)


def coherent_states(x, p, config: FockConfig) -> np.ndarray:
    '''Number-basis components of coherent states, one column per point

    Uses c_n = c_(n-1) alpha/sqrt(n) starting from exp(-|alpha|^2/2).
    '''
    alpha = np.atleast_1d(config.alpha(x, p)).ravel()
    factors = alpha[np.newaxis, :] / np.sqrt(np.arange(1, config.cutoff))[:, np.newaxis]
    states = np.empty((config.cutoff, alpha.size), dtype=complex)
    states[0] = np.exp(-np.abs(alpha) ** 2 / 2)
    states[1:] = states[0] * np.cumprod(factors, axis=0)
    return states


def coherent_state(x: float, p: float, config: FockConfig) -> np.ndarray:
    '''Coherent state |(x, p)> in the truncated number basis

    Warns
    -----
    TruncationWarning
        if |alpha|^2 > cutoff/4, where the truncated norm starts to fall short of 1
    '''
    alpha = config.alpha(x, p)
    if abs(alpha) ** 2 > config.cutoff / 4:
        warnings.warn(
            f"|alpha|^2 = {abs(alpha) ** 2:.3g} exceeds cutoff/4 = {config.cutoff / 4}",
            TruncationWarning,
            stacklevel=2
            )
    return coherent_states(x, p, config)[:, 0]


def coherent_projector(x: float, p: float, config: FockConfig) -> FockMatrix:
    state = coherent_state(x, p, config)
    return FockMatrix(np.outer(state, state.conj()), config)


def fock_projector(n: int, config: FockConfig) -> FockMatrix:
    '''|n><n|'''
    entries = np.zeros((config.cutoff, config.cutoff), dtype=complex)
    entries[n, n] = 1
    return FockMatrix(entries, config)


@dataclass(frozen=True)
class PhaseGrid:
    '''Rectangle in phase space with node counts per axis

    Attributes
    ----------
    x_min, x_max, p_min, p_max: float
        bounds
    n_x, n_p: int
        nodes along x and p
    '''
    x_min: float
    x_max: float
    p_min: float
    p_max: float
    n_x: int = 300
    n_p: int = 300

    def __post_init__(self):
        if not (self.x_min < self.x_max and self.p_min < self.p_max):
            raise KSQuantError("PhaseGrid bounds must be increasing")
        if self.n_x < 2 or self.n_p < 2:
            raise KSQuantError("PhaseGrid needs at least 2 nodes per axis")

    @classmethod
    def covering(cls, config: FockConfig, nodes: int = 300) -> 'PhaseGrid':
        '''Square grid covering the coherent-state weight of every retained level'''
        half_width = np.sqrt(2) * (np.sqrt(config.cutoff) + 6)
        x_half = config.l * half_width
        p_half = config.hbar / config.l * half_width
        return cls(-x_half, x_half, -p_half, p_half, nodes, nodes)

    @classmethod
    def around(cls, x0: float, p0: float, x_half: float, p_half: float, nodes: int = 64) -> 'PhaseGrid':
        return cls(x0 - x_half, x0 + x_half, p0 - p_half, p0 + p_half, nodes, nodes)

    def quadrature(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        '''Tensor Gauss-Legendre nodes and weights, flattened

        Returns
        -------
        tuple
            x nodes, p nodes, weights
        '''
        x_nodes, x_weights = gauss_legendre(self.x_min, self.x_max, self.n_x)
        p_nodes, p_weights = gauss_legendre(self.p_min, self.p_max, self.n_p)
        xs, ps = np.meshgrid(x_nodes, p_nodes, indexing="ij")
        weights = np.outer(x_weights, p_weights)
        return xs.ravel(), ps.ravel(), weights.ravel()

    def lattice(self) -> tuple[np.ndarray, np.ndarray]:
        '''Evenly spaced axes for dumps'''
        return np.linspace(self.x_min, self.x_max, self.n_x), np.linspace(self.p_min, self.p_max, self.n_p)


def gauss_legendre(lower: float, upper: float, nodes: int) -> tuple[np.ndarray, np.ndarray]:
    '''Gauss-Legendre nodes and weights mapped to [lower, upper]'''
    points, weights = np.polynomial.legendre.leggauss(nodes)
    half = (upper - lower) / 2
    return (upper + lower) / 2 + half * points, half * weights


Symbol = PhasePoly | Callable[[np.ndarray, np.ndarray], np.ndarray]


def evaluate_symbol(A: Symbol, x, p, config: FockConfig) -> np.ndarray:
    '''Vectorized value of a PhasePoly or symbol function'''
    x = np.asarray(x, dtype=float)
    p = np.asarray(p, dtype=float)
    if not isinstance(A, PhasePoly):
        return np.broadcast_to(np.asarray(A(x, p), dtype=complex), np.broadcast(x, p).shape)
    values = np.zeros(np.broadcast(x, p).shape, dtype=complex)
    for j, k, coefficient in A.numeric_terms(config.hbar, config.l):
        values = values + coefficient * x ** j * p ** k
    return values


def toeplitz_quantize(
        A: Symbol,
        config: FockConfig,
        grid: PhaseGrid | None = None,
        check_identity: bool = False,
        tol: float = 1e-8
        ) -> FockMatrix:
    '''Numerical coherent-state quantization of a symbol

    Parameters
    ----------
    A : PhasePoly | callable
        symbol; callables take vectorized x and p arrays
    config : FockConfig
    grid : PhaseGrid, optional
        by default PhaseGrid.covering(config)
    check_identity : bool, optional
        also quantize 1 on the same grid and require the identity
        on the leading block within tol

    Returns
    -------
    FockMatrix

    Raises
    ------
    GridCoverageError
        if the identity check fails
    '''
    grid = PhaseGrid.covering(config) if grid is None else grid
    xs, ps, weights = grid.quadrature()
    values = evaluate_symbol(A, xs, ps, config)
    result = np.zeros((config.cutoff, config.cutoff), dtype=complex)
    identity = np.zeros_like(result) if check_identity else None
    for start in range(0, xs.size, CHUNK_SIZE):
        chunk = slice(start, start + CHUNK_SIZE)
        states = coherent_states(xs[chunk], ps[chunk], config)
        result += (states * (weights[chunk] * values[chunk])) @ states.conj().T
        if check_identity:
            identity += (states * weights[chunk]) @ states.conj().T
    norm = 2 * np.pi * config.hbar
    if check_identity:
        error = block_distance(identity / norm, np.eye(config.cutoff), config.block)
        if error > tol:
            raise GridCoverageError(f"Quantizing 1 misses the identity by {error:.3g} on the leading block")
    return FockMatrix(result / norm, config)


def gaussian_symbol(x0: float, p0: float, sigma: float, config: FockConfig) -> Callable:
    '''Normalized Gaussian symbol 2 pi hbar * eta_sigma centred at (x0, p0)

    The x width is sigma and the p width is sigma hbar/l^2, so the
    symbol integrates to 2 pi hbar and its Toeplitz operator has unit trace.
    '''
    hbar, l = config.hbar, config.l  # noqa: E741

    def symbol(x, p):
        return 2 * l ** 2 / sigma ** 2 * np.exp(
            -(x - x0) ** 2 / sigma ** 2 - l ** 4 * (p - p0) ** 2 / (sigma ** 2 * hbar ** 2)
            )
    return symbol


def delta_sequence(x0: float, p0: float, config: FockConfig, widths: list[float], nodes: int = 64) -> list[float]:
    '''Frobenius distance between the Toeplitz operator of shrinking Gaussian
    symbols and the coherent projector at (x0, p0), on the leading block'''
    projector = coherent_projector(x0, p0, config)
    distances = []
    for sigma in widths:
        grid = PhaseGrid.around(x0, p0, 8 * sigma, 8 * sigma * config.hbar / config.l ** 2, nodes)
        operator = toeplitz_quantize(gaussian_symbol(x0, p0, sigma, config), config, grid)
        distances.append(frobenius_distance(operator, projector, config.block))
    return distances
