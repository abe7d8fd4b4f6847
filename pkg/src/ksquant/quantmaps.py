'''
quantmaps.py
author(s): ksquant developers

Weyl and anti-Wick quantization of phase-space polynomials, the inverse
symbol maps, the Weierstrass transform relating the two symbols, and
the product-rule discrepancy analysis.

Weyl quantization uses the closed form

    W(x^j p^k) = 2^-j sum_r C(j, r) X^r P^k X^(j-r)

which agrees with the average over all orderings of j X's and k P's.
`validate_weyl_closed_form` checks this against the literal permutation sum.

Anti-Wick quantization substitutes

    x = l (alpha + alpha*)/sqrt2,   p = i hbar (alpha* - alpha)/(sqrt2 l)

and reads alpha^m alpha*^n as the anti-normally ordered word a^m ad^n.

'''

import functools
import itertools
from dataclasses import dataclass
from fractions import Fraction
from scipy.special import comb, factorial2
from ksquant.generic_classes import Alphabet, OrderTag, Scheme, KSQuantError
from ksquant.symcore import Scalar, PhasePoly, poisson_bracket
from ksquant.opalg import OpPoly, op_mul, canonicalize, change_alphabet, commutator


@functools.lru_cache(maxsize=1024)
def weyl_monomial(j: int, k: int) -> OpPoly:
    '''Weyl image of x^j p^k in standard order'''
    terms = {}
    for r in range(j + 1):
        word = (0,) * r + (1,) * k + (0,) * (j - r)
        terms[word] = terms.get(word, Scalar.zero()) + Scalar.of(Fraction(int(comb(j, r, exact=True)), 2 ** j))
    return canonicalize(OpPoly(Alphabet.XP, terms))


def weyl_quantize(A: PhasePoly) -> OpPoly:
    '''Weyl quantization of a phase-space polynomial

    Parameters
    ----------
    A : PhasePoly
        symbol to quantize

    Returns
    -------
    OpPoly
        symmetrized operator, XP alphabet in standard order
    '''
    result = OpPoly(Alphabet.XP, {}, OrderTag.STANDARD)
    for (j, k), coefficient in A.items():
        result = result + weyl_monomial(j, k).scale(coefficient)
    return result


def weyl_symmetrized(A: PhasePoly) -> OpPoly:
    '''Weyl quantization written as the average over all distinct placements
    of X's and P's, left unordered. Equal to weyl_quantize(A) as an operator.'''
    terms = {}
    for (j, k), coefficient in A.items():
        placements = list(itertools.combinations(range(j + k), j))
        weight = coefficient * Scalar.of(Fraction(1, len(placements)))
        for positions in placements:
            word = tuple(0 if index in positions else 1 for index in range(j + k))
            terms[word] = terms.get(word, Scalar.zero()) + weight
    return OpPoly(Alphabet.XP, terms)


def weyl_permutation_sum(j: int, k: int) -> OpPoly:
    '''Literal average over the (j+k)! orderings of j X's and k P's'''
    letters = (0,) * j + (1,) * k
    count = 0
    terms = {}
    for ordering in itertools.permutations(letters):
        count += 1
        terms[ordering] = terms.get(ordering, Scalar.zero()) + 1
    return canonicalize(OpPoly(Alphabet.XP, terms).scale(Fraction(1, count)))


def validate_weyl_closed_form(max_degree: int = 6) -> list[tuple[int, int]]:
    '''Compare the closed form against the permutation sum for all j + k <= max_degree

    Returns
    -------
    list
        (j, k) pairs where the two disagree, empty when the closed form holds
    '''
    mismatches = []
    for degree in range(max_degree + 1):
        for j in range(degree + 1):
            k = degree - j
            if weyl_monomial(j, k) != weyl_permutation_sum(j, k):
                mismatches.append((j, k))
    return mismatches


def weyl_symbol(A: OpPoly) -> PhasePoly:
    '''Inverse of weyl_quantize on operator polynomials

    The standard-ordered form is peeled from the top: the leading word
    X^j P^k with coefficient c contributes c x^j p^k and c W(x^j p^k)
    is subtracted, which only leaves words of lower degree behind.
    '''
    remainder = change_alphabet(A, Alphabet.XP)
    symbol = PhasePoly.zero()
    while not remainder.is_zero():
        word, coefficient = max(remainder.terms.items(), key=lambda item: (len(item[0]), item[0].count(0)))
        j = word.count(0)
        k = len(word) - j
        symbol = symbol + PhasePoly.monomial(j, k, coefficient)
        remainder = remainder - weyl_monomial(j, k).scale(coefficient)
    return symbol


# alpha and alpha* as commutative polynomials, stored as PhasePoly with
# (j, k) read as (power of alpha, power of alpha*)
_ALPHA_X = PhasePoly({(1, 0): Scalar.l() * Scalar.sqrt2(-1), (0, 1): Scalar.l() * Scalar.sqrt2(-1)})
_ALPHA_P = PhasePoly({
    (1, 0): -Scalar.i() * Scalar.hbar() * Scalar.l(-1) * Scalar.sqrt2(-1),
    (0, 1): Scalar.i() * Scalar.hbar() * Scalar.l(-1) * Scalar.sqrt2(-1),
    })

# alpha = (x/l + i l p/hbar)/sqrt2 and its conjugate as polynomials in x, p
ALPHA = PhasePoly({(1, 0): Scalar.l(-1) * Scalar.sqrt2(-1), (0, 1): Scalar.i() * Scalar.l() * Scalar.hbar(-1) * Scalar.sqrt2(-1)})
ALPHA_BAR = ALPHA.conjugate()


@functools.lru_cache(maxsize=1024)
def antiwick_monomial(j: int, k: int) -> OpPoly:
    '''Anti-Wick image of x^j p^k, ladder alphabet in anti-normal order'''
    expansion = _ALPHA_X ** j * _ALPHA_P ** k
    terms = {(0,) * m + (1,) * n: coefficient for (m, n), coefficient in expansion.coeffs.items()}
    return OpPoly(Alphabet.LADDER, terms, OrderTag.ANTI_NORMAL)


def antiwick_quantize(A: PhasePoly) -> OpPoly:
    '''Anti-Wick (coherent state) quantization of a phase-space polynomial

    Parameters
    ----------
    A : PhasePoly
        symbol to quantize

    Returns
    -------
    OpPoly
        ladder alphabet operator in anti-normal order
    '''
    result = OpPoly(Alphabet.LADDER, {}, OrderTag.ANTI_NORMAL)
    for (j, k), coefficient in A.items():
        result = result + antiwick_monomial(j, k).scale(coefficient)
    return result


@functools.lru_cache(maxsize=1024)
def _alpha_power(m: int, n: int) -> PhasePoly:
    return ALPHA ** m * ALPHA_BAR ** n


def antiwick_symbol(A: OpPoly) -> PhasePoly:
    '''Inverse of antiwick_quantize: a^m ad^n in anti-normal order maps to alpha^m alpha*^n'''
    ladder = change_alphabet(A, Alphabet.LADDER)
    symbol = PhasePoly.zero()
    for word, coefficient in ladder.terms.items():
        m = word.count(0)
        symbol = symbol + _alpha_power(m, len(word) - m).scale(coefficient)
    return symbol


def _gaussian_moment(order: int, variance: Scalar) -> Scalar:
    '''E[U^order] for a centred Gaussian with the given variance'''
    if order % 2:
        return Scalar.zero()
    half = order // 2
    if half == 0:
        return Scalar.one()
    return variance ** half * int(factorial2(order - 1, exact=True))


def weierstrass_transform(A: PhasePoly) -> PhasePoly:
    '''Convolve a polynomial with the ground state Gaussian of variances
    l^2/2 in x and hbar^2/(2 l^2) in p, using exact Gaussian moments.
    Maps anti-Wick symbols to Weyl symbols.'''
    x_variance = Scalar.l(2) * Fraction(1, 2)
    p_variance = Scalar.hbar(2) * Scalar.l(-2) * Fraction(1, 2)
    result = PhasePoly.zero()
    for (j, k), coefficient in A.items():
        for a in range(0, j + 1, 2):
            x_part = _gaussian_moment(a, x_variance) * int(comb(j, a, exact=True))
            for b in range(0, k + 1, 2):
                p_part = _gaussian_moment(b, p_variance) * int(comb(k, b, exact=True))
                result = result + PhasePoly.monomial(j - a, k - b, coefficient * x_part * p_part)
    return result


def quantize(A: PhasePoly, scheme: Scheme) -> OpPoly:
    if scheme == Scheme.WEYL:
        return weyl_quantize(A)
    elif scheme == Scheme.ANTI_WICK:
        return antiwick_quantize(A)
    raise KSQuantError(f"Unknown scheme: {scheme}")


def symbol(A: OpPoly, scheme: Scheme) -> PhasePoly:
    if scheme == Scheme.WEYL:
        return weyl_symbol(A)
    elif scheme == Scheme.ANTI_WICK:
        return antiwick_symbol(A)
    raise KSQuantError(f"Unknown scheme: {scheme}")


@dataclass(frozen=True)
class DiscrepancyReport:
    '''Failure of the product rule v(AB) = v(A) v(B) at the level of symbols

    Attributes
    ----------
    product_symbol: PhasePoly
        symbol of the operator product of the quantized inputs
    classical_product: PhasePoly
        A * B
    discrepancy: PhasePoly
        product_symbol - classical_product
    commute: bool
        whether the quantized inputs commute
    '''
    scheme: Scheme
    A: PhasePoly
    B: PhasePoly
    product_symbol: PhasePoly
    classical_product: PhasePoly
    discrepancy: PhasePoly
    commute: bool

    def as_dict(self) -> dict:
        return {
            "scheme": self.scheme.value,
            "A": str(self.A),
            "B": str(self.B),
            "product_symbol": str(self.product_symbol),
            "classical_product": str(self.classical_product),
            "discrepancy": str(self.discrepancy),
            "commute": self.commute,
        }


def ks2b_report(A: PhasePoly, B: PhasePoly, scheme: Scheme) -> DiscrepancyReport:
    '''Quantize A and B, multiply the operators and compare the symbol
    of the product with the classical product A * B

    Parameters
    ----------
    A : PhasePoly
    B : PhasePoly
    scheme : Scheme
        Weyl or anti-Wick

    Returns
    -------
    DiscrepancyReport
    '''
    quantized_a = quantize(A, scheme)
    quantized_b = quantize(B, scheme)
    product_symbol = symbol(op_mul(quantized_a, quantized_b), scheme)
    classical_product = A * B
    return DiscrepancyReport(
        scheme=scheme,
        A=A,
        B=B,
        product_symbol=product_symbol,
        classical_product=classical_product,
        discrepancy=product_symbol - classical_product,
        commute=commutator(quantized_a, quantized_b).is_zero()
        )


@dataclass(frozen=True)
class DiracReport:
    '''Comparison of [A^, B^] with i hbar times the quantized Poisson bracket

    Attributes
    ----------
    residue: PhasePoly
        symbol of [A^, B^] - i hbar Q({A, B})
    '''
    scheme: Scheme
    A: PhasePoly
    B: PhasePoly
    poisson_bracket: PhasePoly
    commutator_symbol: PhasePoly
    residue: PhasePoly

    @property
    def holds(self) -> bool:
        return self.residue.is_zero()

    def as_dict(self) -> dict:
        return {
            "scheme": self.scheme.value,
            "A": str(self.A),
            "B": str(self.B),
            "poisson_bracket": str(self.poisson_bracket),
            "commutator_symbol": str(self.commutator_symbol),
            "residue": str(self.residue),
            "holds": self.holds,
        }


def dirac_report(A: PhasePoly, B: PhasePoly, scheme: Scheme) -> DiracReport:
    '''Check the commutator rule [A^, B^] = i hbar Q({A, B}) for a pair of symbols'''
    bracket = poisson_bracket(A, B)
    lhs = commutator(quantize(A, scheme), quantize(B, scheme))
    rhs = quantize(bracket, scheme).scale(Scalar.i() * Scalar.hbar())
    return DiracReport(
        scheme=scheme,
        A=A,
        B=B,
        poisson_bracket=bracket,
        commutator_symbol=symbol(lhs, scheme),
        residue=symbol(lhs - rhs, scheme)
        )


def condition_checks(scheme: Scheme) -> dict[str, bool]:
    '''Exact checks of the basic quantization conditions:
    1 maps to the identity, x to X and p to P, and x p to a self-adjoint operator'''
    return {
        "identity": quantize(PhasePoly.const(1), scheme) == OpPoly.identity(),
        "position": quantize(PhasePoly.x(), scheme) == OpPoly.X(),
        "momentum": quantize(PhasePoly.p(), scheme) == OpPoly.P(),
        "self-adjoint": quantize(PhasePoly.x() * PhasePoly.p(), scheme).is_self_adjoint(),
    }
