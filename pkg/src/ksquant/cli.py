'''
cli.py
author(s): ksquant developers

Command line interface. Every subcommand builds a RunReport which is
printed as text, or as sorted json on stdout with --json while the text goes to stderr.

Exit codes: 0 success or colorable, 1 failed verification,
2 input error, 3 uncolorable.

'''

import argparse
import json
import sys
import warnings
from dataclasses import dataclass, field
import numpy as np
from ksquant.constants import (
    SCHEME_MAPPING,
    EXIT_SUCCESS,
    EXIT_CHECK_FAILED,
    EXIT_INPUT_ERROR,
    EXIT_UNCOLORABLE,
    VERIFY_SUITES
    )
from ksquant.generic_classes import Alphabet, OrderTag, Scheme, KSQuantError
from ksquant.parsing import parse_phase_expr, parse_operator_expr
from ksquant.opalg import canonicalize, change_alphabet
from ksquant.quantmaps import quantize, symbol, weyl_symmetrized, ks2b_report
from ksquant.focknum import (
    FockConfig,
    FockMatrix,
    PhaseGrid,
    coherent_projector,
    fock_projector,
    op_to_matrix
    )
from ksquant.phase_space import (
    dump_grid_csv,
    husimi,
    position_range_projector,
    wigner_function
    )
from ksquant.kscolor import (
    MAX_BRUTE_FORCE_VECTORS,
    brute_force_colorable,
    drop_basis,
    find_bases,
    load_vector_set,
    search_valuation
    )
from ksquant.verification import VerificationRunner

STATES = ["vacuum", "fock", "coherent", "position-range"]


@dataclass
class RunReport:
    '''Outcome of one command

    Attributes
    ----------
    command: str
    inputs: dict
        echo of the parsed inputs
    result: dict
        payload of the command
    checks: list[Check]
        verification checks, empty for non-verification commands
    text: list[str]
        human-readable lines
    exit_code: int
    '''
    command: str
    inputs: dict
    result: dict
    checks: list = field(default_factory=list)
    text: list = field(default_factory=list)
    exit_code: int = EXIT_SUCCESS

    def as_dict(self) -> dict:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "result": self.result,
            "checks": [check.as_dict() for check in self.checks],
            "exit_code": self.exit_code,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True, indent=2)


def get_scheme(name: str) -> Scheme:
    try:
        return SCHEME_MAPPING[name.lower()]
    except KeyError:
        raise KSQuantError(f"Unknown scheme: {name}. Choose from {', '.join(SCHEME_MAPPING)}")


def cmd_quantize(expr: str, scheme: Scheme) -> RunReport:
    '''Quantize a phase-space polynomial, printed in standard and anti-normal order'''
    A = parse_phase_expr(expr)
    operator = quantize(A, scheme)
    standard = change_alphabet(operator, Alphabet.XP)
    anti_normal = canonicalize(change_alphabet(operator, Alphabet.LADDER), OrderTag.ANTI_NORMAL)
    result = {"standard": str(standard), "anti_normal": str(anti_normal)}
    if scheme == Scheme.WEYL:
        symmetrized = str(weyl_symmetrized(A))
        result["symmetrized"] = symmetrized
        headline = str(standard) if symmetrized == str(standard) else f"{symmetrized} = {standard}"
    else:
        headline = str(standard)
    text = [headline, f"anti-normal: {anti_normal}"]
    return RunReport("quantize", {"expr": str(A), "scheme": scheme.value}, result, text=text)


def cmd_symbol(expr: str, scheme: Scheme) -> RunReport:
    '''Symbol of an operator polynomial under the scheme'''
    operator = parse_operator_expr(expr)
    result = {"symbol": str(symbol(operator, scheme))}
    return RunReport("symbol", {"expr": str(operator), "scheme": scheme.value}, result, text=[result["symbol"]])


def cmd_ks2b(expr_a: str, expr_b: str, scheme: Scheme) -> RunReport:
    '''Symbol of the product of the quantized inputs against the classical product'''
    report = ks2b_report(parse_phase_expr(expr_a), parse_phase_expr(expr_b), scheme)
    result = report.as_dict()
    result["discrepancy_zero"] = report.discrepancy.is_zero()
    text = [
        f"product symbol: {report.product_symbol}",
        f"classical product: {report.classical_product}",
        f"discrepancy: {report.discrepancy}",
        f"quantized inputs commute: {report.commute}",
    ]
    inputs = {"A": str(report.A), "B": str(report.B), "scheme": scheme.value}
    return RunReport("ks2b", inputs, result, text=text)


def cmd_verify(suite: str, cutoff: int | None = None, hbar: float | None = None,
               l: float | None = None, verbose: bool = False) -> RunReport:  # noqa: E741
    '''Run a verify suite; exit code 1 if any check fails'''
    runner = VerificationRunner()
    runner.print_parameter_logs = verbose
    runner.print_logs = verbose
    runner.fill_suite_params({"suite": suite})
    runner.change_params({"config/cutoff": cutoff, "config/hbar": hbar, "config/l": l})
    checks = runner.run()
    failed = [check for check in checks if not check.passed]
    text = [
        f"{'PASS' if check.passed else 'FAIL'} {check.name}: {check.measured:.3g} (tolerance {check.tolerance:.3g})"
        for check in checks
        ]
    text.append(f"{len(checks) - len(failed)}/{len(checks)} checks passed")
    result = {"suite": suite, "passed": not failed}
    inputs = {"suite": suite, "config": runner.get_param("config")}
    return RunReport("verify", inputs, result, checks, text, EXIT_CHECK_FAILED if failed else EXIT_SUCCESS)


def cmd_kscolor(path: str, drop: int | None = None) -> RunReport:
    '''Decide KS colorability of a vector-set file; exit code 3 if uncolorable'''
    vs = load_vector_set(path)
    bl = find_bases(vs)
    if drop is not None:
        bl = drop_basis(bl, drop)
    if len(bl) == 0:
        raise KSQuantError(f"{path} has no orthonormal bases")
    verdict = search_valuation(bl)
    result = verdict.as_dict(vs.labels)
    result["vectors"] = len(vs)
    result["basis_list"] = [[vs.labels[index] for index in basis] for basis in bl.bases]
    if len(bl.vertices()) <= MAX_BRUTE_FORCE_VECTORS:
        result["brute_force_agrees"] = brute_force_colorable(bl) == verdict.colorable
    text = [f"{len(vs)} vectors in dimension {vs.dim}, {len(bl)} bases"]
    if verdict.colorable:
        text.append(f"colorable, witness value 1 on: {', '.join(vs.labels[index] for index in verdict.witness.ones())}")
    else:
        text.append(f"uncolorable, core bases: {list(verdict.contradiction_core)}")
    text.append(f"nodes explored: {verdict.nodes_explored}")
    inputs = {"path": str(path), "drop_basis": drop}
    return RunReport("kscolor", inputs, result, text=text,
                     exit_code=EXIT_SUCCESS if verdict.colorable else EXIT_UNCOLORABLE)


def state_matrix(state: str, config: FockConfig, x0: float = 0.0, p0: float = 0.0,
                 level: int = 0, interval: tuple = (-1.0, 1.0)) -> FockMatrix:
    '''Matrix of a named state or projector'''
    if state == "vacuum":
        return fock_projector(0, config)
    elif state == "fock":
        if not 0 <= level < config.cutoff:
            raise KSQuantError(f"Fock level {level} is outside the cutoff {config.cutoff}")
        return fock_projector(level, config)
    elif state == "coherent":
        return coherent_projector(x0, p0, config)
    elif state == "position-range":
        return position_range_projector(interval[0], interval[1], config)
    raise KSQuantError(f"Unknown state: {state}. Choose from {', '.join(STATES)}")


def _dump_axes(config: FockConfig, half_width: float, points: int) -> tuple[np.ndarray, np.ndarray]:
    grid = PhaseGrid(-config.l * half_width, config.l * half_width,
                     -config.hbar / config.l * half_width, config.hbar / config.l * half_width,
                     points, points)
    return grid.lattice()


def _write_dump(command: str, output: str, x, p, values, inputs: dict) -> RunReport:
    if output == "-":
        dump_grid_csv(sys.stdout, x, p, values)
    else:
        dump_grid_csv(output, x, p, values)
    result = {"output": output, "points": int(np.size(values)),
              "min": float(np.min(values)), "max": float(np.max(values))}
    text = [f"wrote {result['points']} points to {output}, values in [{result['min']:.6g}, {result['max']:.6g}]"]
    return RunReport(command, inputs, result, text=text)


def cmd_wigner_dump(config: FockConfig, state: str, output: str = "-", operator: str | None = None,
                    convention: str = "density", taper: bool = False, half_width: float = 3.0,
                    points: int = 61, **state_args) -> RunReport:
    '''Wigner function of a state, or Weyl symbol of an operator polynomial, on a grid as csv'''
    if operator is not None:
        matrix = op_to_matrix(parse_operator_expr(operator), config)
        convention = "symbol"
    else:
        matrix = state_matrix(state, config, **state_args)
    x, p = _dump_axes(config, half_width, points)
    values = wigner_function(matrix, x, p, convention, taper)
    inputs = {"state": state if operator is None else None, "operator": operator, "convention": convention,
              "taper": taper, "cutoff": config.cutoff, "hbar": config.hbar, "l": config.l}
    return _write_dump("wigner-dump", output, x, p, values, inputs)


def cmd_husimi_dump(config: FockConfig, state: str, output: str = "-", half_width: float = 3.0,
                    points: int = 61, **state_args) -> RunReport:
    '''Husimi function of a state on a grid as csv'''
    if state == "position-range":
        raise KSQuantError("position-range is a projector, not a density matrix")
    rho = state_matrix(state, config, **state_args)
    x, p = _dump_axes(config, half_width, points)
    xs, ps = np.meshgrid(x, p, indexing="ij")
    values = husimi(rho, xs, ps)
    inputs = {"state": state, "cutoff": config.cutoff, "hbar": config.hbar, "l": config.l}
    return _write_dump("husimi-dump", output, x, p, values, inputs)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Print the sorted json report, moving the text report to stderr")
    common.add_argument("-v", "--verbose", action="store_true", help="Print logs to stderr")
    common.add_argument("--hbar", type=float, help="Value of hbar, default 1")
    common.add_argument("--l", type=float, help="Oscillator length, default 1")
    common.add_argument("--cutoff", type=int, help="Number of Fock levels")

    scheme = argparse.ArgumentParser(add_help=False)
    scheme.add_argument("-s", "--scheme", type=str, default="weyl", help="weyl or antiwick")

    states = argparse.ArgumentParser(add_help=False)
    states.add_argument("--state", type=str, default="vacuum", help=f"One of {', '.join(STATES)}")
    states.add_argument("--x0", type=float, default=0.0, help="Coherent state position")
    states.add_argument("--p0", type=float, default=0.0, help="Coherent state momentum")
    states.add_argument("-n", "--level", type=int, default=0, help="Fock level")
    states.add_argument("--interval", type=float, nargs=2, default=[-1.0, 1.0], help="Position range")
    states.add_argument("--half-width", type=float, default=3.0, help="Grid half width in units of l and hbar/l")
    states.add_argument("--points", type=int, default=61, help="Grid points per axis")
    states.add_argument("-o", "--output", type=str, default="-", help="csv file, - for stdout")

    parser = argparse.ArgumentParser(prog="ksquant", description="Weyl and anti-Wick quantization, "
                                     "phase-space numerics and Kochen-Specker colorability")
    subparsers = parser.add_subparsers(dest="command", required=True)

    quantize_parser = subparsers.add_parser("quantize", parents=[common, scheme], help="Quantize a polynomial in x, p")
    quantize_parser.add_argument("expr", type=str)

    symbol_parser = subparsers.add_parser("symbol", parents=[common, scheme], help="Symbol of an operator in X, P or a, ad")
    symbol_parser.add_argument("expr", type=str)

    ks2b_parser = subparsers.add_parser("ks2b", parents=[common], help="Product rule discrepancy")
    ks2b_parser.add_argument("scheme", type=str)
    ks2b_parser.add_argument("expr_a", type=str)
    ks2b_parser.add_argument("expr_b", type=str)

    verify_parser = subparsers.add_parser("verify", parents=[common], help="Run a verification suite")
    verify_parser.add_argument("suite", type=str, help=f"One of {', '.join(VERIFY_SUITES)}")

    kscolor_parser = subparsers.add_parser("kscolor", parents=[common], help="KS colorability of a vector set")
    kscolor_parser.add_argument("path", type=str, help="json file or bundled set name")
    kscolor_parser.add_argument("--drop-basis", type=int, default=None, help="Remove basis number k first")

    wigner_parser = subparsers.add_parser("wigner-dump", parents=[common, states], help="Wigner function csv")
    wigner_parser.add_argument("--operator", type=str, default=None, help="Operator polynomial instead of a state")
    wigner_parser.add_argument("--convention", type=str, default="density", help="density or symbol")
    wigner_parser.add_argument("--taper", action="store_true", help="Taper the top levels before transforming")

    subparsers.add_parser("husimi-dump", parents=[common, states], help="Husimi function csv")
    return parser


def _fock_config(args) -> FockConfig:
    return FockConfig(
        64 if args.cutoff is None else args.cutoff,
        1.0 if args.hbar is None else args.hbar,
        1.0 if args.l is None else args.l
        )


def _state_args(args) -> dict:
    return {"x0": args.x0, "p0": args.p0, "level": args.level, "interval": tuple(args.interval)}


def dispatch(args) -> RunReport:
    if args.command == "quantize":
        return cmd_quantize(args.expr, get_scheme(args.scheme))
    elif args.command == "symbol":
        return cmd_symbol(args.expr, get_scheme(args.scheme))
    elif args.command == "ks2b":
        return cmd_ks2b(args.expr_a, args.expr_b, get_scheme(args.scheme))
    elif args.command == "verify":
        return cmd_verify(args.suite, args.cutoff, args.hbar, args.l, args.verbose)
    elif args.command == "kscolor":
        return cmd_kscolor(args.path, args.drop_basis)
    elif args.command == "wigner-dump":
        return cmd_wigner_dump(_fock_config(args), args.state, args.output, args.operator, args.convention,
                               args.taper, args.half_width, args.points, **_state_args(args))
    elif args.command == "husimi-dump":
        return cmd_husimi_dump(_fock_config(args), args.state, args.output, args.half_width, args.points,
                               **_state_args(args))
    raise KSQuantError(f"Unknown command: {args.command}")


def main(argv: list[str] | None = None) -> int:
    '''Run the command line interface

    Returns
    -------
    int
        exit code
    '''
    args = build_parser().parse_args(argv)
    try:
        with warnings.catch_warnings():
            if not args.verbose:
                warnings.simplefilter("ignore")
            report = dispatch(args)
    except (KSQuantError, OSError) as error:
        print(f"error: {error}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    if getattr(args, "output", None) == "-" and args.command.endswith("-dump"):
        return report.exit_code
    if args.json:
        print(report.to_json())
        print("\n".join(report.text), file=sys.stderr)
    else:
        print("\n".join(report.text))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
