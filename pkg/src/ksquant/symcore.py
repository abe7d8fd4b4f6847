'''
symcore.py
author(s): ksquant developers

Exact coefficient arithmetic and commutative phase-space polynomials.

Classes
-------
GaussianRational: a + bi with a, b exact rationals
Scalar: finite sum of Gaussian rationals times powers of hbar, l and sqrt(2)
PhasePoly: commutative polynomial in x, p with Scalar coefficients

Functions
---------
poly_mul: exact product of phase-space polynomials
evaluate: substitute rational values for x, p, hbar and l
poisson_bracket: {A, B} = dA/dx dB/dp - dA/dp dB/dx

All values are immutable after construction.

'''

from fractions import Fraction
from numbers import Rational
from ksquant.generic_classes import ExactnessError, EvaluationError, KSQuantError


def to_fraction(value) -> Fraction:
    '''Convert an int, Fraction or "n/m" string to a Fraction

    Parameters
    ----------
    value : int | Fraction | str

    Returns
    -------
    Fraction
    '''
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (Rational, str)):
        return Fraction(value)
    raise TypeError(f"Not an exact rational: {value!r}")


def format_fraction(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class GaussianRational:
    '''Exact complex number with rational real and imaginary parts'''
    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0) -> None:
        object.__setattr__(self, "re", to_fraction(re))
        object.__setattr__(self, "im", to_fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def coerce(cls, value) -> 'GaussianRational':
        if isinstance(value, GaussianRational):
            return value
        return cls(value)

    def __add__(self, other):
        other = _coerce_gaussian(other)
        if other is NotImplemented:
            return other
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        other = _coerce_gaussian(other)
        if other is NotImplemented:
            return other
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        other = _coerce_gaussian(other)
        if other is NotImplemented:
            return other
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re
            )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce_gaussian(other)
        if other is NotImplemented:
            return other
        norm = other.re ** 2 + other.im ** 2
        if norm == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        numerator = self * other.conjugate()
        return GaussianRational(numerator.re / norm, numerator.im / norm)

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return GaussianRational(1) / (self ** -exponent)
        result = GaussianRational(1)
        for _ in range(exponent):
            result = result * self
        return result

    def conjugate(self) -> 'GaussianRational':
        return GaussianRational(self.re, -self.im)

    def __bool__(self) -> bool:
        return self.re != 0 or self.im != 0

    def __eq__(self, other) -> bool:
        other = _coerce_gaussian(other)
        if other is NotImplemented:
            return other
        return self.re == other.re and self.im == other.im

    def __hash__(self) -> int:
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __repr__(self) -> str:
        return f"GaussianRational({format_fraction(self.re)}, {format_fraction(self.im)})"

    def __str__(self) -> str:
        if self.im == 0:
            return format_fraction(self.re)
        if self.re == 0:
            return f"{format_fraction(self.im)}*i"
        sign = "-" if self.im < 0 else "+"
        return f"({format_fraction(self.re)} {sign} {format_fraction(abs(self.im))}*i)"


def _coerce_gaussian(value):
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, Rational) and not isinstance(value, bool):
        return GaussianRational(value)
    return NotImplemented


# (hbar power, l power, sqrt2 power)
ScalarKey = tuple[int, int, int]


class Scalar:
    '''Exact coefficient: sum of Gaussian rationals times hbar^h l^m sqrt(2)^s.

    The sqrt(2) exponent is reduced to {0, 1} by folding powers of 2 into
    the rational part. Terms with equal exponents are merged and zero
    terms are dropped, so equality is decided term by term.
    '''
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: dict | None = None) -> None:
        merged = {}
        for (hpow, lpow, s2pow), q in dict(terms or {}).items():
            q = GaussianRational.coerce(q)
            twos, s2pow = divmod(s2pow, 2)
            if twos:
                q = q * Fraction(2) ** twos
            key = (hpow, lpow, s2pow)
            merged[key] = merged.get(key, GaussianRational(0)) + q
        object.__setattr__(self, "_terms", {key: q for key, q in merged.items() if q})
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    # ----- constructors -----
    @classmethod
    def of(cls, value) -> 'Scalar':
        '''Coerce a number or Scalar into a Scalar'''
        if isinstance(value, Scalar):
            return value
        if isinstance(value, (GaussianRational, Rational)) and not isinstance(value, bool):
            return cls({(0, 0, 0): value})
        raise TypeError(f"Cannot make a Scalar from {value!r}")

    @classmethod
    def zero(cls) -> 'Scalar':
        return cls()

    @classmethod
    def one(cls) -> 'Scalar':
        return cls({(0, 0, 0): 1})

    @classmethod
    def i(cls) -> 'Scalar':
        return cls({(0, 0, 0): GaussianRational(0, 1)})

    @classmethod
    def hbar(cls, power: int = 1) -> 'Scalar':
        return cls({(power, 0, 0): 1})

    @classmethod
    def l(cls, power: int = 1) -> 'Scalar':  # noqa: E743
        return cls({(0, power, 0): 1})

    @classmethod
    def sqrt2(cls, power: int = 1) -> 'Scalar':
        return cls({(0, 0, power): 1})

    # ----- inspection -----
    @property
    def terms(self) -> list[tuple[ScalarKey, GaussianRational]]:
        '''Terms sorted by descending (hbar, l, sqrt2) exponents'''
        return sorted(self._terms.items(), key=lambda item: item[0], reverse=True)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_real(self) -> bool:
        return all(q.im == 0 for q in self._terms.values())

    def is_rational(self) -> bool:
        '''True for a plain rational number (no symbols, no imaginary part)'''
        return self.is_zero() or (
            list(self._terms) == [(0, 0, 0)] and self._terms[(0, 0, 0)].im == 0
            )

    # ----- arithmetic -----
    def __add__(self, other):
        other = _coerce_scalar(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for key, q in other._terms.items():
            terms[key] = terms.get(key, GaussianRational(0)) + q
        return Scalar(terms)

    __radd__ = __add__

    def __neg__(self):
        return Scalar({key: -q for key, q in self._terms.items()})

    def __sub__(self, other):
        other = _coerce_scalar(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce_scalar(other)
        if other is NotImplemented:
            return other
        terms = {}
        for (h1, l1, s1), q1 in self._terms.items():
            for (h2, l2, s2), q2 in other._terms.items():
                product = Scalar({(h1 + h2, l1 + l2, s1 + s2): q1 * q2})
                for key, q in product._terms.items():
                    terms[key] = terms.get(key, GaussianRational(0)) + q
        return Scalar(terms)

    __rmul__ = __mul__

    def inverse(self) -> 'Scalar':
        '''Inverse of a single-term Scalar

        Raises
        ------
        ExactnessError
            If the Scalar is zero or has more than one term
        '''
        if not self.is_monomial():
            raise ExactnessError(f"Only single-term scalars can be inverted: {self}")
        (hpow, lpow, s2pow), q = next(iter(self._terms.items()))
        # 1/sqrt2 = sqrt2/2
        return Scalar({(-hpow, -lpow, -s2pow): GaussianRational(1) / q})

    def __truediv__(self, other):
        other = _coerce_scalar(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Scalar.of(other) * self.inverse()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** -exponent
        result = Scalar.one()
        for _ in range(exponent):
            result = result * self
        return result

    def conjugate(self) -> 'Scalar':
        return Scalar({key: q.conjugate() for key, q in self._terms.items()})

    def __eq__(self, other) -> bool:
        other = _coerce_scalar(other)
        if other is NotImplemented:
            return other
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(frozenset(self._terms.items())))
        return self._hash

    # ----- evaluation -----
    def evaluate(self, hbar=1, l=1, approximate: bool = False):  # noqa: E741
        '''Substitute values for hbar and l

        Parameters
        ----------
        hbar : rational
        l : rational
        approximate : bool, optional
            evaluate sqrt(2) in floating point, by default False

        Returns
        -------
        GaussianRational | complex
            exact value, or a complex float when approximate

        Raises
        ------
        EvaluationError
            zero substituted for a symbol with a negative exponent
        ExactnessError
            odd sqrt(2) power without the approximate flag
        '''
        if approximate:
            return self.evaluate_numeric(float(hbar), float(l))
        hbar = to_fraction(hbar)
        l = to_fraction(l)  # noqa: E741
        total = GaussianRational(0)
        for (hpow, lpow, s2pow), q in self._terms.items():
            if s2pow:
                raise ExactnessError(f"sqrt2 cannot be evaluated exactly in {self}")
            total = total + q * _checked_power(hbar, hpow, "hbar") * _checked_power(l, lpow, "l")
        return total

    def evaluate_numeric(self, hbar: float = 1.0, l: float = 1.0) -> complex:  # noqa: E741
        '''Floating point value at the given hbar and l'''
        total = 0j
        for (hpow, lpow, s2pow), q in self._terms.items():
            if (hbar == 0 and hpow < 0) or (l == 0 and lpow < 0):
                raise EvaluationError(f"zero substituted for a negative power in {self}")
            total += complex(q) * hbar ** hpow * l ** lpow * 2 ** (0.5 * s2pow)
        return total

    # ----- printing -----
    def signed_parts(self, sep: str = "*") -> list[tuple[str, str]]:
        '''(sign, body) pairs for every term, body printed without sign'''
        return [_format_term(key, q, sep) for key, q in self.terms]

    def format(self, sep: str = "*") -> str:
        if self.is_zero():
            return "0"
        return join_signed(self.signed_parts(sep))

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"Scalar({self})"


def _coerce_scalar(value):
    if isinstance(value, Scalar):
        return value
    if isinstance(value, (GaussianRational, Rational)) and not isinstance(value, bool):
        return Scalar.of(value)
    return NotImplemented


def _checked_power(value: Fraction, power: int, name: str) -> Fraction:
    if power < 0 and value == 0:
        raise EvaluationError(f"{name} = 0 substituted into a negative power")
    return value ** power


def _symbol_factor(name: str, power: int) -> str:
    return name if power == 1 else f"{name}^{power}"


def _format_term(key: ScalarKey, q: GaussianRational, sep: str) -> tuple[str, str]:
    '''Format one Scalar term as (sign, unsigned body)'''
    hpow, lpow, s2pow = key
    numerator, denominator = [], []
    for name, power in (("hbar", hpow), ("l", lpow), ("sqrt2", s2pow)):
        if power > 0:
            numerator.append(_symbol_factor(name, power))
        elif power < 0:
            denominator.append(_symbol_factor(name, -power))

    sign = "+"
    if q.im == 0 or q.re == 0:
        value = q.re if q.im == 0 else q.im
        if value < 0:
            sign = "-"
            value = -value
        if q.im != 0:
            numerator.insert(0, "i")
        if value.numerator != 1 or not numerator:
            numerator.insert(0, str(value.numerator))
        if value.denominator != 1:
            denominator.insert(0, str(value.denominator))
    else:
        numerator.insert(0, str(q))

    body = sep.join(numerator)
    if len(denominator) == 1:
        body += f"/{denominator[0]}"
    elif denominator:
        body += f"/({sep.join(denominator)})"
    return sign, body


def join_signed(parts: list[tuple[str, str]]) -> str:
    text = ""
    for index, (sign, body) in enumerate(parts):
        if index == 0:
            text = body if sign == "+" else f"-{body}"
        else:
            text += f" {sign} {body}"
    return text


# exponent pair (x power, p power)
Monomial = tuple[int, int]


class PhasePoly:
    '''Commutative polynomial in the phase-space variables x and p

    Attributes
    ----------
    coeffs: dict
        maps exponent pairs (j, k) to non-zero Scalars, for x^j p^k
    '''
    __slots__ = ("_coeffs", "_hash")

    def __init__(self, coeffs: dict | None = None) -> None:
        cleaned = {}
        for monomial, coefficient in dict(coeffs or {}).items():
            j, k = monomial
            if not (isinstance(j, int) and isinstance(k, int)) or j < 0 or k < 0:
                raise KSQuantError(f"x and p exponents must be non-negative integers: {monomial}")
            coefficient = Scalar.of(coefficient) + cleaned.get((j, k), Scalar.zero())
            cleaned[(j, k)] = coefficient
        object.__setattr__(self, "_coeffs", {m: c for m, c in cleaned.items() if c})
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("PhasePoly is immutable")

    # ----- constructors -----
    @classmethod
    def const(cls, value) -> 'PhasePoly':
        return cls({(0, 0): Scalar.of(value)})

    @classmethod
    def monomial(cls, j: int, k: int, coefficient=1) -> 'PhasePoly':
        return cls({(j, k): Scalar.of(coefficient)})

    @classmethod
    def x(cls) -> 'PhasePoly':
        return cls.monomial(1, 0)

    @classmethod
    def p(cls) -> 'PhasePoly':
        return cls.monomial(0, 1)

    @classmethod
    def zero(cls) -> 'PhasePoly':
        return cls()

    # ----- inspection -----
    @property
    def coeffs(self) -> dict[Monomial, Scalar]:
        return dict(self._coeffs)

    def items(self) -> list[tuple[Monomial, Scalar]]:
        '''Terms in printing order: total degree descending, then x power descending'''
        return sorted(self._coeffs.items(), key=lambda item: (-sum(item[0]), -item[0][0]))

    def coefficient(self, j: int, k: int) -> Scalar:
        return self._coeffs.get((j, k), Scalar.zero())

    def degree(self) -> int:
        '''Total degree, -1 for the zero polynomial'''
        return max((j + k for j, k in self._coeffs), default=-1)

    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def is_constant(self) -> bool:
        return all(monomial == (0, 0) for monomial in self._coeffs)

    def constant_term(self) -> Scalar:
        return self.coefficient(0, 0)

    def is_real(self) -> bool:
        return all(c.is_real() for c in self._coeffs.values())

    def depends_on(self, variable: str) -> bool:
        index = _variable_index(variable)
        return any(monomial[index] > 0 for monomial in self._coeffs)

    # ----- arithmetic -----
    def __add__(self, other):
        other = _coerce_poly(other)
        if other is NotImplemented:
            return other
        coeffs = dict(self._coeffs)
        for monomial, coefficient in other._coeffs.items():
            coeffs[monomial] = coeffs.get(monomial, Scalar.zero()) + coefficient
        return PhasePoly(coeffs)

    __radd__ = __add__

    def __neg__(self):
        return PhasePoly({m: -c for m, c in self._coeffs.items()})

    def __sub__(self, other):
        other = _coerce_poly(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce_poly(other)
        if other is NotImplemented:
            return other
        coeffs = {}
        for (j1, k1), c1 in self._coeffs.items():
            for (j2, k2), c2 in other._coeffs.items():
                monomial = (j1 + j2, k1 + k2)
                coeffs[monomial] = coeffs.get(monomial, Scalar.zero()) + c1 * c2
        return PhasePoly(coeffs)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = PhasePoly.const(1)
        for _ in range(exponent):
            result = result * self
        return result

    def scale(self, factor) -> 'PhasePoly':
        factor = Scalar.of(factor)
        return PhasePoly({m: c * factor for m, c in self._coeffs.items()})

    def conjugate(self) -> 'PhasePoly':
        return PhasePoly({m: c.conjugate() for m, c in self._coeffs.items()})

    def derivative(self, variable: str) -> 'PhasePoly':
        '''Partial derivative with respect to "x" or "p"'''
        index = _variable_index(variable)
        coeffs = {}
        for monomial, coefficient in self._coeffs.items():
            power = monomial[index]
            if power == 0:
                continue
            lowered = list(monomial)
            lowered[index] -= 1
            coeffs[tuple(lowered)] = coefficient * power
        return PhasePoly(coeffs)

    def __eq__(self, other) -> bool:
        other = _coerce_poly(other)
        if other is NotImplemented:
            return other
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(frozenset(self._coeffs.items())))
        return self._hash

    # ----- evaluation -----
    def evaluate(self, x, p, hbar=1, l=1, approximate: bool = False):  # noqa: E741
        return evaluate(self, x, p, hbar, l, approximate)

    def numeric_terms(self, hbar: float = 1.0, l: float = 1.0) -> list[tuple[int, int, complex]]:  # noqa: E741
        '''(j, k, complex coefficient) triples with hbar and l substituted'''
        return [(j, k, c.evaluate_numeric(hbar, l)) for (j, k), c in self.items()]

    # ----- printing -----
    def format(self, sep: str = "*") -> str:
        if self.is_zero():
            return "0"
        parts = []
        for (j, k), coefficient in self.items():
            factors = [_symbol_factor(name, power) for name, power in (("x", j), ("p", k)) if power]
            monomial = sep.join(factors)
            if coefficient.is_monomial():
                sign, body = coefficient.signed_parts(sep)[0]
            else:
                sign, body = "+", f"({coefficient.format(sep)})"
            if not monomial:
                parts.append((sign, body))
            elif body == "1":
                parts.append((sign, monomial))
            else:
                parts.append((sign, f"{body}{sep}{monomial}"))
        return join_signed(parts)

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"PhasePoly({self})"


def _variable_index(variable: str) -> int:
    if variable == "x":
        return 0
    if variable == "p":
        return 1
    raise KSQuantError(f"Unknown phase-space variable: {variable}")


def _coerce_poly(value):
    if isinstance(value, PhasePoly):
        return value
    scalar = _coerce_scalar(value)
    if scalar is NotImplemented:
        return scalar
    return PhasePoly.const(scalar)


def poly_mul(A: PhasePoly, B: PhasePoly) -> PhasePoly:
    '''Exact commutative product of two phase-space polynomials'''
    return A * B


def evaluate(A: PhasePoly, x, p, hbar=1, l=1, approximate: bool = False):  # noqa: E741
    '''Substitute values for x, p, hbar and l

    Parameters
    ----------
    A : PhasePoly
        polynomial to evaluate
    x, p, hbar, l : rational
        substitution point
    approximate : bool, optional
        allow floating point evaluation of sqrt(2), by default False

    Returns
    -------
    GaussianRational | complex
        exact value, or complex float when approximate

    Raises
    ------
    EvaluationError
        zero substituted for hbar or l where a negative power occurs
    ExactnessError
        odd power of sqrt(2) without the approximate flag
    '''
    if approximate:
        total = 0j
        for (j, k), coefficient in A.items():
            total += coefficient.evaluate_numeric(float(hbar), float(l)) * float(x) ** j * float(p) ** k
        return total
    x, p = to_fraction(x), to_fraction(p)
    total = GaussianRational(0)
    for (j, k), coefficient in A.items():
        total = total + coefficient.evaluate(hbar, l) * (x ** j * p ** k)
    return total


def poisson_bracket(A: PhasePoly, B: PhasePoly) -> PhasePoly:
    '''Poisson bracket {A, B} = dA/dx dB/dp - dA/dp dB/dx'''
    return A.derivative("x") * B.derivative("p") - A.derivative("p") * B.derivative("x")
