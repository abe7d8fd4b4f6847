'''
phase_space.py
author(s): ksquant developers

Phase-space functions of truncated-Fock operators:

- wigner_transform: 2 int exp(-2ipy/hbar) <x+y|M|x-y> dy, the Weyl symbol of M
- wigner_function: the same divided by 2 pi hbar, so that it integrates to 1
- husimi: <(x, p)|rho|(x, p)>/(2 pi hbar), normalized for the dx dp measure
- position_range_projector: projector onto positions in [lo, hi]
- bohmian_momentum: guidance field hbar Im(psi'/psi)

Position wavefunctions are Hermite functions of length scale l evaluated
by their three-term recurrence. y- and q-integrals use Gauss-Legendre on
the interval where the retained Hermite functions are non-negligible.

'''

from dataclasses import dataclass
import numpy as np
from scipy.integrate import trapezoid
from scipy.special import erfc
from ksquant.constants import (
    HERMITIAN_TOL,
    DENSITY_TOL,
    IMAG_RESIDUE_TOL,
    NODE_THRESHOLD,
    NODE_EXCLUSION_STEPS
    )
from ksquant.generic_classes import (
    DensityMatrixError,
    GridCoverageError,
    KSQuantError,
    NodeError,
    NotHermitianError,
    QuadratureError
    )
from ksquant.opalg import OpPoly
from ksquant.focknum import (
    FockConfig,
    FockMatrix,
    PhaseGrid,
    Symbol,
    coherent_states,
    evaluate_symbol,
    gauss_legendre,
    op_to_matrix,
    CHUNK_SIZE
    )

# Hermite functions are treated as zero beyond sqrt(2N+1) + SUPPORT_MARGIN lengths
SUPPORT_MARGIN = 8
# edge of the taper window in widths from its centre
TAPER_EDGE = 6


def hermite_functions(levels: int, q, l: float = 1.0) -> np.ndarray:  # noqa: E741
    '''Oscillator eigenfunctions phi_n(q), n < levels, one row per level'''
    t = np.asarray(q, dtype=float) / l
    phi = np.empty((levels,) + t.shape)
    phi[0] = np.pi ** -0.25 / np.sqrt(l) * np.exp(-t ** 2 / 2)
    if levels > 1:
        phi[1] = np.sqrt(2) * t * phi[0]
    for n in range(2, levels):
        phi[n] = np.sqrt(2 / n) * t * phi[n - 1] - np.sqrt((n - 1) / n) * phi[n - 2]
    return phi


def support_radius(config: FockConfig) -> float:
    return config.l * (np.sqrt(2 * config.cutoff + 1) + SUPPORT_MARGIN)


def _node_count(config: FockConfig, half_length: float, frequency: float = 0.0) -> int:
    '''Gauss-Legendre nodes resolving products of two retained Hermite functions'''
    wavenumber = 2 * np.sqrt(2 * config.cutoff + 1) / config.l + frequency
    return int(1.5 * wavenumber * half_length) + 64


def _check_hermitian(M: FockMatrix):
    if not M.is_hermitian(HERMITIAN_TOL):
        raise NotHermitianError("Phase-space functions need a Hermitian matrix")


def smooth_taper(config: FockConfig) -> np.ndarray:
    '''Level weights erfc((n - c)/w)/2 centred on the middle level

    The Weyl symbol of a truncated unbounded operator oscillates with the
    parity of the cutoff. The window is 1 at level 0 and 0 at the cutoff to
    within erfc(6)/2, and its Gaussian-shaped edge removes the oscillation
    for operators of degree 4 and below.
    '''
    levels = np.arange(config.cutoff)
    centre = (config.cutoff - 1) / 2
    width = max(centre / TAPER_EDGE, 1.0)
    return erfc((levels - centre) / width) / 2


def wigner_transform(M: FockMatrix, x, p, taper: bool = False) -> np.ndarray:
    '''Weyl symbol 2 int exp(-2ipy/hbar) <x+y|M|x-y> dy on the grid x by p

    Parameters
    ----------
    M : FockMatrix
        Hermitian operator
    x, p : float | array
        axes; the result has shape (len(x), len(p))
    taper : bool, optional
        weight the levels with smooth_taper before transforming, by default False

    Returns
    -------
    np.ndarray
        real values, squeezed for scalar inputs

    Raises
    ------
    NotHermitianError
    QuadratureError
        if the imaginary residue exceeds 1e-9
    '''
    _check_hermitian(M)
    config = M.config
    entries = M.entries
    if taper:
        level_weights = smooth_taper(config)
        entries = level_weights[:, np.newaxis] * entries * level_weights[np.newaxis, :]
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    ps = np.atleast_1d(np.asarray(p, dtype=float))
    radius = support_radius(config)
    values = np.zeros((xs.size, ps.size), dtype=complex)
    for index, x_value in enumerate(xs):
        half_length = radius - abs(x_value)
        if half_length <= 0:
            continue
        frequency = 2 * np.max(np.abs(ps)) / config.hbar
        nodes, weights = gauss_legendre(-half_length, half_length, _node_count(config, half_length, frequency))
        plus = hermite_functions(config.cutoff, x_value + nodes, config.l)
        minus = hermite_functions(config.cutoff, x_value - nodes, config.l)
        kernel = np.sum(plus * (entries @ minus), axis=0)
        phases = np.exp(-2j * np.outer(ps, nodes) / config.hbar)
        values[index] = 2 * phases @ (weights * kernel)
    residue = float(np.max(np.abs(values.imag))) if values.size else 0.0
    if residue > IMAG_RESIDUE_TOL * max(1.0, float(np.max(np.abs(values.real)))):
        raise QuadratureError(f"Wigner transform has imaginary residue {residue:.3g}")
    result = values.real
    if np.ndim(x) == 0 and np.ndim(p) == 0:
        return float(result[0, 0])
    return result


def wigner_function(M: FockMatrix, x, p, convention: str = "density", taper: bool = False):
    '''Wigner function of M

    Parameters
    ----------
    convention : str, optional
        "density" divides the Weyl symbol by 2 pi hbar so a state
        integrates to 1 with peak 1/(pi hbar) for a coherent state;
        "symbol" returns the Weyl symbol itself
    '''
    transform = wigner_transform(M, x, p, taper)
    if convention == "symbol":
        return transform
    elif convention == "density":
        return transform / (2 * np.pi * M.config.hbar)
    raise KSQuantError(f"Unknown Wigner convention: {convention}")


def position_range_projector(lo: float, hi: float, config: FockConfig) -> FockMatrix:
    '''Projector onto positions in [lo, hi]: Pi_jk = int phi_j phi_k dq

    Infinite endpoints are clipped to the support of the retained levels.

    Raises
    ------
    KSQuantError
        if lo >= hi
    '''
    if not lo < hi:
        raise KSQuantError(f"Empty position range [{lo}, {hi}]")
    radius = support_radius(config)
    lower = max(lo, -radius)
    upper = min(hi, radius)
    entries = np.zeros((config.cutoff, config.cutoff), dtype=complex)
    if lower < upper:
        nodes, weights = gauss_legendre(lower, upper, _node_count(config, (upper - lower) / 2))
        phi = hermite_functions(config.cutoff, nodes, config.l)
        entries += (phi * weights) @ phi.T
    return FockMatrix(entries, config)


def validate_density_matrix(rho: FockMatrix, tol: float = DENSITY_TOL):
    '''Raise DensityMatrixError unless rho is Hermitian, positive semidefinite and of unit trace'''
    if not rho.is_hermitian(tol):
        raise DensityMatrixError("density matrix is not Hermitian")
    trace = np.trace(rho.entries)
    if abs(trace - 1) > tol:
        raise DensityMatrixError(f"density matrix has trace {trace.real:.12g}")
    if np.min(np.linalg.eigvalsh(rho.entries)) < -tol:
        raise DensityMatrixError("density matrix has negative eigenvalues")


def husimi(rho: FockMatrix, x, p) -> np.ndarray:
    '''Husimi function <(x, p)|rho|(x, p)>/(2 pi hbar) at paired points

    The 1/(2 pi hbar) prefactor makes Q a probability density for dx dp.

    Raises
    ------
    DensityMatrixError
        invalid rho, or a value below -1e-12
    '''
    validate_density_matrix(rho)
    values = _husimi_values(rho, np.asarray(x, dtype=float), np.asarray(p, dtype=float))
    if np.ndim(x) == 0 and np.ndim(p) == 0:
        return float(values[0])
    return values.reshape(np.broadcast(np.asarray(x), np.asarray(p)).shape)


def _husimi_values(rho: FockMatrix, x: np.ndarray, p: np.ndarray) -> np.ndarray:
    config = rho.config
    xs, ps = (array.ravel() for array in np.broadcast_arrays(x, p))
    values = np.empty(xs.size)
    for start in range(0, xs.size, CHUNK_SIZE):
        chunk = slice(start, start + CHUNK_SIZE)
        states = coherent_states(xs[chunk], ps[chunk], config)
        overlap = np.einsum("ni,nm,mi->i", states.conj(), rho.entries, states)
        values[chunk] = overlap.real / (2 * np.pi * config.hbar)
    if values.size and np.min(values) < -1e-12:
        raise DensityMatrixError(f"Husimi function is negative: {np.min(values):.3g}")
    return np.clip(values, 0.0, None)


def husimi_expectation(A: Symbol, rho: FockMatrix, grid: PhaseGrid | None = None, tol: float = 1e-8) -> float:
    '''Phase-space average int A(x, p) Q(x, p) dx dp

    Equals Tr(T(A) rho) for the coherent state quantization T.

    Raises
    ------
    GridCoverageError
        if int Q dx dp differs from 1 by more than tol
    '''
    validate_density_matrix(rho)
    grid = PhaseGrid.covering(rho.config) if grid is None else grid
    xs, ps, weights = grid.quadrature()
    q = _husimi_values(rho, xs, ps)
    total = float(np.sum(weights * q))
    if abs(total - 1) > tol:
        raise GridCoverageError(f"Husimi function integrates to {total:.12g} on the grid")
    values = evaluate_symbol(A, xs, ps, rho.config)
    return float(np.sum(weights * q * values).real)


def bohmian_momentum(psi, x, config: FockConfig, exclude_nodes: bool = True) -> np.ndarray:
    '''Guidance momentum p(x) = hbar Im(psi'/psi) by central differences

    Parameters
    ----------
    psi : array
        wavefunction samples
    x : array
        sample positions
    exclude_nodes : bool, optional
        points within 3 steps of |psi| < 1e-10 max|psi| become NaN,
        by default True

    Raises
    ------
    NodeError
        if a node is found and exclusion is off
    '''
    psi = np.asarray(psi, dtype=complex)
    x = np.asarray(x, dtype=float)
    if psi.shape != x.shape or psi.ndim != 1 or psi.size < 3:
        raise KSQuantError("psi and x must be matching 1D arrays with at least 3 samples")
    magnitude = np.abs(psi)
    nodes = magnitude < NODE_THRESHOLD * np.max(magnitude)
    if np.any(nodes) and not exclude_nodes:
        raise NodeError(f"wavefunction has a node near x = {x[np.argmax(nodes)]:.6g}")
    excluded = np.convolve(nodes, np.ones(2 * NODE_EXCLUSION_STEPS + 1), mode="same") > 0
    safe = np.where(excluded, 1.0, psi)
    momentum = config.hbar * np.imag(np.gradient(psi, x, edge_order=2) / safe)
    return np.where(excluded, np.nan, momentum)


@dataclass(frozen=True)
class BohmianComparison:
    '''Moments <p^n> of the guidance momentum against Tr(P^n rho)'''
    power: int
    bohmian: float
    quantum: float

    @property
    def difference(self) -> float:
        return self.bohmian - self.quantum


def fock_coefficients(psi, x, config: FockConfig) -> np.ndarray:
    '''Normalized number-basis components of a sampled wavefunction'''
    phi = hermite_functions(config.cutoff, x, config.l)
    coefficients = trapezoid(phi * np.asarray(psi, dtype=complex), x, axis=1)
    return coefficients / np.linalg.norm(coefficients)


def bohmian_comparison(psi, x, config: FockConfig, powers=(1, 2, 3, 4)) -> list[BohmianComparison]:
    '''Compare Bohmian momentum moments with the quantum ones for each power'''
    psi = np.asarray(psi, dtype=complex)
    x = np.asarray(x, dtype=float)
    momentum = bohmian_momentum(psi, x, config)
    keep = ~np.isnan(momentum)
    density = np.abs(psi) ** 2
    norm = trapezoid(density[keep], x[keep])
    state = fock_coefficients(psi, x, config)
    comparisons = []
    for power in powers:
        bohmian = trapezoid(density[keep] * momentum[keep] ** power, x[keep]) / norm
        matrix = op_to_matrix(OpPoly.P() ** power, config).entries
        quantum = np.vdot(state, matrix @ state).real
        comparisons.append(BohmianComparison(power, float(bohmian), float(quantum)))
    return comparisons


def dump_grid_csv(path, x, p, values):
    '''Write x, p, value rows for every point of the x by p grid'''
    xs, ps = np.meshgrid(np.asarray(x, dtype=float), np.asarray(p, dtype=float), indexing="ij")
    rows = np.column_stack([xs.ravel(), ps.ravel(), np.asarray(values, dtype=float).ravel()])
    np.savetxt(path, rows, delimiter=",", header="x,p,value", comments="")
