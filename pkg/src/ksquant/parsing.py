'''
parsing.py
author(s): ksquant developers

Classes and functions to process json inputs and expression text

Expression grammar (whitespace insignificant):

    expr  := term (('+' | '-') term)*
    term  := unary (('*' | '/')? unary)*
    unary := ('+' | '-') unary | power
    power := atom ('^' ('+' | '-')? integer)?
    atom  := name | integer | '(' expr ')'

Juxtaposition multiplies, so the operator printer output "1/2 (X P + P X)"
reads back. Division is only by a single-term Scalar and negative
exponents are only allowed on Scalars.

'''

import json
import copy
import re
from dataclasses import dataclass
from ksquant.default_params import DEFAULTS
from ksquant.generic_classes import (
    ExprSyntaxError,
    ExactnessError,
    AlphabetMismatchError,
    SuiteError
    )
from ksquant.symcore import Scalar, PhasePoly
from ksquant.opalg import OpPoly, canonicalize


def extract_data(filename) -> dict:
    '''Load dictionary from a json file

    Parameters
    ----------
    filename : str | Path
        path to json file

    Returns
    -------
    dict
        data inside json file
    '''
    with open(filename) as jsonFile:
        data = jsonFile.read()
        objects = json.loads(data)
    return objects


class ParameterFiller():
    '''Fill in missed verification parameters with defaults.

    Attributes
    ----------
    log: list
        stores info about the parameter processing step
    suite_params: dict
        parameters of the suite being processed
    config: dict
        default configuration for that suite
    '''
    def __init__(self):
        self.log = []
        self.suite_params = {}
        self.config = {}

    def add_log(self, message: str):
        '''Add message to log'''
        self.log.append(message)

    def print_log(self, stream=None):
        '''Print messages in log'''
        for message in self.log:
            print(message, file=stream)

    def process_suite_params(self, suite_params: dict) -> dict:
        '''Fill in missing parameters of a verify suite with default values

        Parameters
        ----------
        suite_params : dict
            must name the suite under "suite"

        Returns
        -------
        dict
            filled parameters
        '''
        self.suite_params = suite_params
        self.__prereq_check()
        self.config = self.__get_config()
        self.suite_params = self.__fill_params(self.suite_params, self.config)
        return self.suite_params

    def __prereq_check(self):
        '''Ensure parameters name a suite'''
        try:
            if type(self.suite_params["suite"]) is not str:
                raise SuiteError("suite name must be a string")
        except KeyError:
            raise SuiteError("Verification parameters need to name a suite")

    def __get_config(self):
        '''Fetch default config for the named suite'''
        for default_suite in DEFAULTS:
            if default_suite["suite"].lower() == self.suite_params["suite"].lower():
                return copy.deepcopy(default_suite)
        raise SuiteError(f"Unknown verify suite: {self.suite_params['suite']}")

    def __fill_params(self, params: dict, config: dict):
        '''Fill any missing parameters of given dict by
        comparing its keys to the default config's keys'''
        if "suite" in params.keys():
            self.add_log(f"---------- Logging suite: {params['suite']} ----------")
        for key, default_value in config.items():
            if key in params.keys() and params[key] is not None:
                if type(default_value) is dict:
                    params[key] = self.__fill_params(params[key], default_value)
                else:
                    self.add_log(f"{key} set to: {params[key]} (default: {default_value})")
            else:
                params[key] = default_value
                self.add_log(f"key {key} not specified. Added default.")
        for key in sorted(set(params.keys()) - set(config.keys())):
            self.add_log(f"key {key} not in default config")
        if "suite" in params.keys():
            self.add_log(f"---------- Finished logging suite: {params['suite']} ----------")
        return params


# ----- expression text -----

TOKEN_PATTERN = re.compile(r"\s*(?:(?P<number>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()]))")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    position: int


def tokenize(text: str) -> list[Token]:
    '''Split expression text into number, name and operator tokens

    Raises
    ------
    ExprSyntaxError
        on any character outside the grammar, including decimal points
    '''
    tokens = []
    position = 0
    while position < len(text):
        if text[position:].strip() == "":
            break
        match = TOKEN_PATTERN.match(text, position)
        if match is None:
            start = position + len(text[position:]) - len(text[position:].lstrip())
            raise ExprSyntaxError(f"Unexpected character {text[start]!r}", start)
        kind = match.lastgroup
        tokens.append(Token(kind, match.group(kind), match.start(kind)))
        position = match.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


SCALAR_ATOMS = {
    "hbar": Scalar.hbar,
    "l": Scalar.l,
    "sqrt2": Scalar.sqrt2,
    "i": Scalar.i,
}

PHASE_ATOMS = {
    "x": PhasePoly.x,
    "p": PhasePoly.p,
}

OPERATOR_ATOMS = {
    "X": OpPoly.X,
    "P": OpPoly.P,
    "a": OpPoly.a,
    "ad": OpPoly.ad,
}


def _as_scalar(value) -> Scalar | None:
    '''Scalar content of a value without free variables, else None'''
    if isinstance(value, Scalar):
        return value
    if isinstance(value, PhasePoly) and value.is_constant():
        return value.constant_term()
    if isinstance(value, OpPoly) and all(word == () for word in value.terms):
        return value.terms.get((), Scalar.zero())
    return None


class ExpressionParser():
    '''Recursive descent parser over a table of atoms

    Attributes
    ----------
    atoms: dict
        maps names to zero-argument constructors
    text: str
        expression being parsed
    '''
    def __init__(self, atoms: dict):
        self.atoms = {**SCALAR_ATOMS, **atoms}
        self.text = ""
        self.tokens = []
        self.index = 0

    def parse(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.index = 0
        if self.__peek().kind == "end":
            raise ExprSyntaxError("Empty expression", 0)
        value = self.__expr()
        token = self.__peek()
        if token.kind != "end":
            raise ExprSyntaxError(f"Unexpected {token.text!r}", token.position)
        return value

    def __peek(self) -> Token:
        return self.tokens[self.index]

    def __advance(self) -> Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def __is_op(self, *symbols: str) -> bool:
        token = self.__peek()
        return token.kind == "op" and token.text in symbols

    def __starts_atom(self) -> bool:
        token = self.__peek()
        return token.kind in ("number", "name") or (token.kind == "op" and token.text == "(")

    def __combine(self, operation, position: int):
        try:
            return operation()
        except AlphabetMismatchError as error:
            raise ExprSyntaxError(str(error), position) from error

    def __expr(self):
        value = self.__term()
        while self.__is_op("+", "-"):
            token = self.__advance()
            right = self.__term()
            if token.text == "+":
                value = self.__combine(lambda: value + right, token.position)
            else:
                value = self.__combine(lambda: value - right, token.position)
        return value

    def __term(self):
        value = self.__unary()
        while True:
            if self.__is_op("*"):
                token = self.__advance()
                right = self.__unary()
                value = self.__combine(lambda: value * right, token.position)
            elif self.__is_op("/"):
                token = self.__advance()
                right = self.__unary()
                value = self.__divide(value, right, token.position)
            elif self.__starts_atom():
                position = self.__peek().position
                right = self.__power()
                value = self.__combine(lambda: value * right, position)
            else:
                return value

    def __divide(self, value, divisor, position: int):
        scalar = _as_scalar(divisor)
        if scalar is None:
            raise ExprSyntaxError("division by a non-Scalar", position)
        try:
            inverse = scalar.inverse()
        except ExactnessError:
            raise ExprSyntaxError(f"division by a non-invertible Scalar {scalar}", position)
        if isinstance(value, Scalar):
            return value * inverse
        return value.scale(inverse)

    def __unary(self):
        if self.__is_op("+"):
            self.__advance()
            return self.__unary()
        if self.__is_op("-"):
            self.__advance()
            return -self.__unary()
        return self.__power()

    def __power(self):
        value = self.__atom()
        if not self.__is_op("^"):
            return value
        caret = self.__advance()
        sign = 1
        if self.__is_op("+", "-"):
            sign = -1 if self.__advance().text == "-" else 1
        token = self.__advance()
        if token.kind != "number":
            raise ExprSyntaxError("Exponent must be an integer", token.position)
        exponent = sign * int(token.text)
        if exponent >= 0:
            return value ** exponent
        scalar = _as_scalar(value)
        if scalar is None:
            raise ExprSyntaxError("Negative exponent on x or p", caret.position)
        try:
            return scalar ** exponent
        except ExactnessError:
            raise ExprSyntaxError(f"Negative exponent on non-invertible {scalar}", caret.position)

    def __atom(self):
        token = self.__advance()
        if token.kind == "number":
            return Scalar.of(int(token.text))
        if token.kind == "name":
            if token.text not in self.atoms:
                raise ExprSyntaxError(f"Unknown name {token.text!r}", token.position)
            return self.atoms[token.text]()
        if token.kind == "op" and token.text == "(":
            value = self.__expr()
            closing = self.__advance()
            if not (closing.kind == "op" and closing.text == ")"):
                raise ExprSyntaxError("Expected ')'", closing.position)
            return value
        if token.kind == "end":
            raise ExprSyntaxError("Unexpected end of expression", token.position)
        raise ExprSyntaxError(f"Unexpected {token.text!r}", token.position)


def parse_phase_expr(text: str) -> PhasePoly:
    '''Parse a phase-space polynomial in x, p, hbar, l, sqrt2 and i

    Parameters
    ----------
    text : str
        e.g. "(x+p)^2" or "x^2*p^2 + hbar^2/4"

    Returns
    -------
    PhasePoly
        expanded polynomial

    Raises
    ------
    ExprSyntaxError
        with the offending position
    '''
    value = ExpressionParser(PHASE_ATOMS).parse(text)
    if isinstance(value, Scalar):
        return PhasePoly.const(value)
    return value


def parse_operator_expr(text: str) -> OpPoly:
    '''Parse an operator polynomial in X, P or in a, ad.
    The result is canonicalized in the default order of its alphabet.

    Raises
    ------
    ExprSyntaxError
        with the offending position; mixing X, P with a, ad is an error
    '''
    value = ExpressionParser(OPERATOR_ATOMS).parse(text)
    if isinstance(value, Scalar):
        return OpPoly.scalar(value)
    return canonicalize(value)
