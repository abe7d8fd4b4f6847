'''
verification.py
author(s): ksquant developers

Numeric and exact verification suites run by the verify command

'''

import functools
import sys
from dataclasses import dataclass
import numpy as np
from scipy.special import erf
from ksquant.constants import VERIFY_SUITES
from ksquant.generic_classes import Scheme, SuiteError
from ksquant.parsing import ParameterFiller, parse_phase_expr, parse_operator_expr
from ksquant.symcore import PhasePoly
from ksquant.opalg import OpPoly
from ksquant.quantmaps import (
    antiwick_quantize,
    antiwick_symbol,
    condition_checks,
    dirac_report,
    ks2b_report,
    validate_weyl_closed_form,
    weierstrass_transform,
    weyl_quantize,
    weyl_symbol
    )
from ksquant.focknum import (
    FockConfig,
    FockMatrix,
    PhaseGrid,
    block_distance,
    build_ladder,
    coherent_projector,
    delta_sequence,
    fock_projector,
    op_to_matrix,
    toeplitz_quantize
    )
from ksquant.phase_space import (
    bohmian_comparison,
    bohmian_momentum,
    hermite_functions,
    husimi,
    husimi_expectation,
    position_range_projector,
    wigner_function,
    wigner_transform
    )


@dataclass(frozen=True)
class Check:
    '''One measured quantity against its tolerance'''
    name: str
    passed: bool
    measured: float
    tolerance: float

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "measured": self.measured,
            "tolerance": self.tolerance,
        }


def within(name: str, measured: float, tolerance: float) -> Check:
    '''Passes when measured <= tolerance'''
    measured = float(measured)
    return Check(name, bool(measured <= tolerance), measured, float(tolerance))


def exceeds(name: str, measured: float, threshold: float) -> Check:
    '''Passes when measured > threshold'''
    measured = float(measured)
    return Check(name, bool(measured > threshold), measured, float(threshold))


def exact(name: str, holds: bool) -> Check:
    '''Exact identity: measured is 0 when it holds'''
    return Check(name, bool(holds), 0.0 if holds else 1.0, 0.0)


def log_method(method_name: str):
    '''Decorator to print logs for runner methods

    Parameters
    ----------
    method_name : str
        name of method to print when logging
    '''
    def decorator_log(func):
        @functools.wraps(func)
        def wrapper_logger(self, *args, **kwargs):
            if self.print_logs:
                print(f"Starting: {method_name}", file=sys.stderr)
            to_return = func(self, *args, **kwargs)
            if self.print_logs:
                print(f"Finished: {method_name}", file=sys.stderr)
            return to_return
        return wrapper_logger
    return decorator_log


class VerificationRunner():
    '''Run verify suites

    Attributes
    ----------
    parameter_filler: ParameterFiller
        fills suite parameters from defaults
    suite_params: dict
        parameters of the current suite
    print_parameter_logs: bool
        print parameter filling logs to stderr
    print_logs: bool
        print Starting/Finished messages to stderr
    key_route_delimiter: str
        delimiter for parameter paths
    '''
    def __init__(self) -> None:
        self.parameter_filler = ParameterFiller()
        self.suite_params = {}
        self.print_parameter_logs = False
        self.print_logs = False
        self.key_route_delimiter = '/'
        self.suites = {
            "wigner-coherent": self.wigner_coherent,
            "husimi-expect": self.husimi_expect,
            "toeplitz": self.toeplitz,
            "projector-symbol": self.projector_symbol,
            "bohmian": self.bohmian,
            "symbolic": self.symbolic,
        }

    def fill_suite_params(self, suite_params: dict) -> dict:
        '''Fill the given parameters from the defaults of the named suite

        Parameters
        ----------
        suite_params : dict
            must name the suite under "suite"

        Returns
        -------
        dict
            processed parameters
        '''
        if suite_params.get("suite") not in VERIFY_SUITES:
            raise SuiteError(f"Unknown verify suite: {suite_params.get('suite')}. Choose from {', '.join(VERIFY_SUITES)}")
        self.suite_params = self.parameter_filler.process_suite_params(suite_params)
        return self.suite_params

    def change_params(self, updated_params: dict):
        r'''Change parameters of the current suite.
        A parameter is referenced using its path of keys,
        for example {"config/cutoff": 128} with '/' the default delimiter.
        Values of None are skipped.

        Parameters
        ----------
        updated_params : dict
            dictionary of the form {path to parameter : updated value}
        '''
        for param_path, updated_value in updated_params.items():
            if type(param_path) is not str:
                raise SuiteError(f"path should be given as a string: {str(param_path)}")
            if updated_value is None:
                continue
            key_route = param_path.split(self.key_route_delimiter)
            self.suite_params = self.__build_param_dict(key_route, self.suite_params, updated_value)
            self.parameter_filler.add_log(f"{param_path} set to: {updated_value} (command line)")

    def get_param(self, param_path: str):
        '''Get a parameter of the current suite by its path, e.g. "tolerances/peak"'''
        key_route = param_path.split(self.key_route_delimiter)
        return self.__follow_key_route(key_route, self.suite_params)

    def __follow_key_route(self, key_route: list[str], param_dict: dict):
        if key_route[0] not in param_dict.keys():
            raise SuiteError(f"Path given does not correspond to existing parameters: {key_route[0]}")
        if len(key_route) == 1:
            return param_dict[key_route[0]]
        return self.__follow_key_route(key_route[1:], param_dict[key_route[0]])

    def __build_param_dict(self, key_route: list, param_dict: dict, updated_value):
        if len(key_route) == 0:
            return updated_value
        if key_route[0] not in param_dict.keys():
            raise SuiteError(f"Path given does not correspond to existing parameters: {key_route[0]}")
        param_dict[key_route[0]] = self.__build_param_dict(key_route[1:], param_dict[key_route[0]], updated_value)
        return param_dict

    def fock_config(self) -> FockConfig:
        config = self.get_param("config")
        return FockConfig(int(config["cutoff"]), float(config["hbar"]), float(config["l"]))

    def run(self) -> list[Check]:
        '''Run the suite named in suite_params

        Returns
        -------
        list[Check]
        '''
        if self.print_parameter_logs:
            self.parameter_filler.print_log(sys.stderr)
        return self.suites[self.get_param("suite")]()

    @log_method("Wigner function of a coherent state")
    def wigner_coherent(self) -> list[Check]:
        config = self.fock_config()
        hbar, l = config.hbar, config.l  # noqa: E741
        x0, p0 = self.get_param("centre")
        half_width = self.get_param("grid/half width")
        points = self.get_param("grid/points")
        x = x0 + l * np.linspace(-half_width, half_width, points)
        p = p0 + hbar / l * np.linspace(-half_width, half_width, points)
        projector = coherent_projector(x0, p0, config)
        values = wigner_function(projector, x, p)
        xs, ps = np.meshgrid(x, p, indexing="ij")
        gaussian = np.exp(-(xs - x0) ** 2 / l ** 2 - l ** 2 * (ps - p0) ** 2 / hbar ** 2) / (np.pi * hbar)
        peak = wigner_function(projector, x0, p0)
        symbol_peak = wigner_transform(projector, x0, p0)

        first_excited = fock_projector(1, config)
        excited_wigner = wigner_function(first_excited, 0.0, 0.0)
        excited_husimi = husimi(first_excited, xs, ps)
        return [
            within("gaussian shape", np.max(np.abs(values - gaussian)), self.get_param("tolerances/gaussian")),
            within("peak 1/(pi hbar)", abs(peak - 1 / (np.pi * hbar)), self.get_param("tolerances/peak")),
            exceeds("coherent symbol not idempotent", abs(symbol_peak ** 2 - symbol_peak), 0.5),
            exceeds("first excited Wigner negativity", -excited_wigner, 0.0),
            within("first excited Husimi negativity", max(-float(np.min(excited_husimi)), 0.0), 0.0),
        ]

    @log_method("Husimi expectation identity")
    def husimi_expect(self) -> list[Check]:
        config = self.fock_config()
        states = [("vacuum", fock_projector(0, config))]
        for x0, p0 in self.get_param("coherent centres"):
            states.append((f"coherent ({x0:g}, {p0:g})", coherent_projector(x0, p0, config)))
        weights = self.get_param("mixture weights")
        mixture = FockMatrix(
            sum(weight * fock_projector(n, config).entries for n, weight in enumerate(weights)),
            config
            )
        states.append(("mixture", mixture))

        grid = PhaseGrid.covering(config)
        normalization_tol = self.get_param("tolerances/normalization")
        checks = []
        for name, rho in states:
            errors = []
            for text in self.get_param("symbols"):
                A = parse_phase_expr(text)
                expected = op_to_matrix(antiwick_quantize(A), config).expectation(rho)
                errors.append(abs(husimi_expectation(A, rho, grid, normalization_tol) - expected))
            checks.append(within(f"Husimi expectation {name}", max(errors), self.get_param("tolerances/identity")))
        return checks

    @log_method("Toeplitz quantization")
    def toeplitz(self) -> list[Check]:
        config = self.fock_config()
        block = config.block
        _, _, X, P = build_ladder(config)
        commutator = (X @ P - P @ X).entries
        identity = np.eye(config.cutoff)
        commutator_error = block_distance(commutator, 1j * config.hbar * identity, config.cutoff - 1)

        x_squared = PhasePoly.x() ** 2
        exact_x_squared = op_to_matrix(antiwick_quantize(x_squared), config)
        numeric_x_squared = toeplitz_quantize(x_squared, config, check_identity=True, tol=self.get_param("tolerances/identity"))
        numeric_identity = toeplitz_quantize(PhasePoly.const(1), config)

        x0, p0 = self.get_param("delta centre")
        widths = [width * config.l for width in self.get_param("delta widths")]
        distances = delta_sequence(x0, p0, config, widths)
        monotone = all(later < earlier for earlier, later in zip(distances, distances[1:]))
        return [
            within("[X, P] = i hbar", commutator_error, self.get_param("tolerances/commutator")),
            within("Toeplitz x^2 = X^2 + l^2/2", block_distance(numeric_x_squared, exact_x_squared, block),
                   self.get_param("tolerances/x^2")),
            within("Toeplitz 1 = identity", block_distance(numeric_identity, identity, block),
                   self.get_param("tolerances/identity")),
            within("delta sequence limit", distances[-1], self.get_param("tolerances/delta")),
            exact("delta sequence monotone", monotone),
        ]

    @log_method("Position projector symbol")
    def projector_symbol(self) -> list[Check]:
        config = self.fock_config()
        lo, hi = self.get_param("interval")
        inside = self.get_param("inside point")
        outside = self.get_param("outside point")

        def errors(fock_config: FockConfig) -> tuple[float, float, FockMatrix]:
            projector = position_range_projector(lo, hi, fock_config)
            inside_error = abs(wigner_transform(projector, *inside) - 1)
            outside_error = abs(wigner_transform(projector, *outside))
            return inside_error, outside_error, projector

        inside_error, outside_error, projector = errors(config)
        refined = FockConfig(int(self.get_param("refined cutoff")), config.hbar, config.l)
        refined_inside, refined_outside, _ = errors(refined)

        eigenvalues = np.linalg.eigvalsh(projector.entries)
        spread = max(float(-np.min(eigenvalues)), float(np.max(eigenvalues) - 1), 0.0)
        vacuum_weight = projector.entries[0, 0].real
        expected_weight = (erf(hi / config.l) - erf(lo / config.l)) / 2
        return [
            within("symbol inside interval", inside_error, self.get_param("tolerances/inside")),
            within("symbol outside interval", outside_error, self.get_param("tolerances/outside")),
            exact("inside error shrinks with cutoff", refined_inside < inside_error),
            exact("outside error shrinks with cutoff", refined_outside < outside_error),
            within("vacuum weight", abs(vacuum_weight - expected_weight), self.get_param("tolerances/vacuum weight")),
            within("eigenvalues in [0, 1]", spread, self.get_param("tolerances/eigenvalues")),
        ]

    @log_method("Bohmian momentum of the ground state")
    def bohmian(self) -> list[Check]:
        config = self.fock_config()
        half_width = self.get_param("grid/half width")
        x = config.l * np.linspace(-half_width, half_width, self.get_param("grid/points"))
        psi = hermite_functions(1, x, config.l)[0]
        momentum = bohmian_momentum(psi, x, config)
        comparisons = {item.power: item for item in bohmian_comparison(psi, x, config)}
        second = comparisons[2]
        return [
            within("Bohmian momentum vanishes", np.nanmax(np.abs(momentum)), self.get_param("tolerances/momentum")),
            within("Bohmian <p^2> = 0", abs(second.bohmian), self.get_param("tolerances/momentum")),
            within("quantum <P^2> = hbar^2/(2 l^2)", abs(second.quantum - config.hbar ** 2 / (2 * config.l ** 2)),
                   self.get_param("tolerances/quantum")),
            exceeds("Bohmian and quantum <p^2> differ", abs(second.difference), self.get_param("tolerances/quantum")),
        ]

    @log_method("Exact symbolic identities")
    def symbolic(self) -> list[Check]:
        x, p = PhasePoly.x(), PhasePoly.p()
        xp = x * p
        weyl_xp = weyl_quantize(xp)
        weyl_x2p2 = weyl_quantize(xp ** 2)
        checks = [
            exact("Weyl x p = 1/2 (X P + P X)", weyl_xp == parse_operator_expr("1/2 (X P + P X)")),
            exact("Weyl(x p)^2 = X^2 P^2 - 2 i hbar X P - hbar^2/4",
                  weyl_xp ** 2 == parse_operator_expr("X^2 P^2 - 2 i hbar X P - hbar^2/4")),
            exact("Weyl x^2 p^2 = X^2 P^2 - 2 i hbar X P - hbar^2/2",
                  weyl_x2p2 == parse_operator_expr("X^2 P^2 - 2 i hbar X P - hbar^2/2")),
            exact("Weyl(x p)^2 - Weyl x^2 p^2 = hbar^2/4", weyl_xp ** 2 - weyl_x2p2 == parse_operator_expr("hbar^2/4")),
            exact("ks2b Weyl x p, x p = hbar^2/4",
                  ks2b_report(xp, xp, Scheme.WEYL).discrepancy == parse_phase_expr("hbar^2/4")),
        ]
        max_power = self.get_param("max power")
        powers_commute = all(
            ks2b_report(x ** m, x ** n, Scheme.WEYL).discrepancy.is_zero()
            for m in range(max_power + 1) for n in range(max_power + 1)
            )
        checks += [
            exact(f"ks2b Weyl x^m, x^n = 0 for m, n <= {max_power}", powers_commute),
            exact("ks2b anti-Wick x, x = -l^2/2",
                  ks2b_report(x, x, Scheme.ANTI_WICK).discrepancy == parse_phase_expr("-l^2/2")),
            exact("anti-Wick x^2 = X^2 + l^2/2", antiwick_quantize(x ** 2) == parse_operator_expr("X^2 + l^2/2")),
            exact("anti-Wick p^2 = P^2 + hbar^2/(2 l^2)",
                  antiwick_quantize(p ** 2) == parse_operator_expr("P^2 + hbar^2/(2 l^2)")),
            exact("Weyl closed form matches permutation sum",
                  not validate_weyl_closed_form(self.get_param("max degree"))),
        ]
        x_squared_op = OpPoly.X() ** 2
        checks.append(exact(
            "Weierstrass transform of anti-Wick symbol of X^2",
            weierstrass_transform(antiwick_symbol(x_squared_op)) == weyl_symbol(x_squared_op) == x ** 2
            ))
        for scheme in Scheme:
            for name, holds in condition_checks(scheme).items():
                checks.append(exact(f"{scheme.value} {name}", holds))
            checks.append(exact(f"{scheme.value} [X, P] = i hbar", dirac_report(x, p, scheme).holds))
        return checks
