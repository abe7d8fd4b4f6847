'''
opalg.py
author(s): ksquant developers

Noncommutative operator polynomials over {X, P} or {a, ad}
with exact canonical-ordering rewriters.

Words are tuples of letter indices. In the XP alphabet 0 is X and 1 is P,
in the ladder alphabet 0 is a and 1 is ad. Reordering swaps one adjacent
out-of-order pair at a time and adds the commutator remainder:

    P X   -> X P - i hbar      (standard order)
    ad a  -> a ad - 1          (anti-normal order)
    a ad  -> ad a + 1          (normal order)

Each swap removes exactly one inversion, so rewriting terminates.

Functions
---------
op_mul: canonicalized product
canonicalize: rewrite into a target order
change_alphabet: substitute X, P <-> a, ad
commutator: AB - BA
adjoint: Hermitian conjugate

'''

import functools
from ksquant.generic_classes import (
    Alphabet,
    OrderTag,
    AlphabetMismatchError,
    OrderError,
    KSQuantError
    )
from ksquant.symcore import Scalar, GaussianRational, join_signed

Word = tuple[int, ...]

LETTERS = {
    Alphabet.XP: ("X", "P"),
    Alphabet.LADDER: ("a", "ad"),
}

DEFAULT_ORDER = {
    Alphabet.XP: OrderTag.STANDARD,
    Alphabet.LADDER: OrderTag.ANTI_NORMAL,
}

# (letter that goes left, letter that goes right, remainder of right*left - left*right)
REWRITE_RULES = {
    (Alphabet.XP, OrderTag.STANDARD): (0, 1, Scalar({(1, 0, 0): GaussianRational(0, -1)})),
    (Alphabet.LADDER, OrderTag.ANTI_NORMAL): (0, 1, Scalar.of(-1)),
    (Alphabet.LADDER, OrderTag.NORMAL): (1, 0, Scalar.of(1)),
}

_SQRT2_INV = Scalar.sqrt2(-1)

# letter -> linear combination in the other alphabet
SUBSTITUTIONS = {
    Alphabet.XP: {
        # X = l/sqrt2 (a + ad)
        0: {(0,): Scalar.l() * _SQRT2_INV, (1,): Scalar.l() * _SQRT2_INV},
        # P = i hbar/(l sqrt2) (ad - a)
        1: {
            (0,): -Scalar.i() * Scalar.hbar() * Scalar.l(-1) * _SQRT2_INV,
            (1,): Scalar.i() * Scalar.hbar() * Scalar.l(-1) * _SQRT2_INV,
            },
    },
    Alphabet.LADDER: {
        # a = 1/sqrt2 (X/l + i l P/hbar)
        0: {
            (0,): Scalar.l(-1) * _SQRT2_INV,
            (1,): Scalar.i() * Scalar.l() * Scalar.hbar(-1) * _SQRT2_INV,
            },
        # ad = 1/sqrt2 (X/l - i l P/hbar)
        1: {
            (0,): Scalar.l(-1) * _SQRT2_INV,
            (1,): -Scalar.i() * Scalar.l() * Scalar.hbar(-1) * _SQRT2_INV,
            },
    },
}


def _other_alphabet(alphabet: Alphabet) -> Alphabet:
    return Alphabet.LADDER if alphabet == Alphabet.XP else Alphabet.XP


def _rule(alphabet: Alphabet, order: OrderTag):
    try:
        return REWRITE_RULES[(alphabet, order)]
    except KeyError:
        raise OrderError(f"Order {order.value} is not available for the {alphabet.value} alphabet")


@functools.lru_cache(maxsize=4096)
def _ordered_word(word: Word, left: int, right: int, remainder: Scalar) -> tuple[tuple[Word, Scalar], ...]:
    '''Rewrite a single word into the order where `left` precedes `right`'''
    for idx in range(len(word) - 1):
        if word[idx] == right and word[idx + 1] == left:
            swapped = word[:idx] + (left, right) + word[idx + 2:]
            contracted = word[:idx] + word[idx + 2:]
            result = dict(_ordered_word(swapped, left, right, remainder))
            for sub_word, coefficient in _ordered_word(contracted, left, right, remainder):
                result[sub_word] = result.get(sub_word, Scalar.zero()) + remainder * coefficient
            return tuple((w, c) for w, c in result.items() if c)
    return ((word, Scalar.one()),)


def _is_ordered(word: Word, left: int, right: int) -> bool:
    return all(not (word[idx] == right and word[idx + 1] == left) for idx in range(len(word) - 1))


def _accumulate(target: dict, word: Word, coefficient: Scalar):
    target[word] = target.get(word, Scalar.zero()) + coefficient


class OpPoly:
    '''Noncommutative polynomial in X, P or in a, ad

    Attributes
    ----------
    alphabet: Alphabet
        letters the words are written in
    order_tag: OrderTag
        canonical order every stored word respects, or UNORDERED
    '''
    __slots__ = ("alphabet", "order_tag", "_terms", "_hash")

    def __init__(self, alphabet: Alphabet, terms: dict | None = None, order_tag: OrderTag = OrderTag.UNORDERED) -> None:
        if alphabet not in LETTERS:
            raise KSQuantError(f"Unknown alphabet: {alphabet}")
        cleaned = {}
        for word, coefficient in dict(terms or {}).items():
            word = tuple(word)
            if any(letter not in (0, 1) for letter in word):
                raise KSQuantError(f"Invalid word: {word}")
            _accumulate(cleaned, word, Scalar.of(coefficient))
        cleaned = {w: c for w, c in cleaned.items() if c}
        if order_tag != OrderTag.UNORDERED:
            left, right, _ = _rule(alphabet, order_tag)
            for word in cleaned:
                if not _is_ordered(word, left, right):
                    raise OrderError(f"Word {_format_word(word, alphabet)} is not in {order_tag.value} order")
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "order_tag", order_tag)
        object.__setattr__(self, "_terms", cleaned)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("OpPoly is immutable")

    # ----- constructors -----
    @classmethod
    def scalar(cls, value, alphabet: Alphabet = Alphabet.XP) -> 'OpPoly':
        '''Multiple of the identity operator'''
        return cls(alphabet, {(): Scalar.of(value)}, DEFAULT_ORDER[alphabet])

    @classmethod
    def identity(cls, alphabet: Alphabet = Alphabet.XP) -> 'OpPoly':
        return cls.scalar(1, alphabet)

    @classmethod
    def letter(cls, name: str) -> 'OpPoly':
        '''Single-letter operator: "X", "P", "a" or "ad"'''
        for alphabet, letters in LETTERS.items():
            if name in letters:
                return cls(alphabet, {(letters.index(name),): 1}, DEFAULT_ORDER[alphabet])
        raise KSQuantError(f"Unknown operator letter: {name}")

    @classmethod
    def X(cls) -> 'OpPoly':
        return cls.letter("X")

    @classmethod
    def P(cls) -> 'OpPoly':
        return cls.letter("P")

    @classmethod
    def a(cls) -> 'OpPoly':
        return cls.letter("a")

    @classmethod
    def ad(cls) -> 'OpPoly':
        return cls.letter("ad")

    # ----- inspection -----
    @property
    def terms(self) -> dict[Word, Scalar]:
        return dict(self._terms)

    def items(self) -> list[tuple[Word, Scalar]]:
        '''Terms in printing order: longest words first, then lexicographic'''
        return sorted(self._terms.items(), key=lambda item: (-len(item[0]), item[0]))

    def degree(self) -> int:
        return max((len(word) for word in self._terms), default=-1)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_scalar(self) -> bool:
        '''True for multiples of the identity (after canonicalization)'''
        return all(word == () for word in canonicalize(self)._terms)

    def scalar_part(self) -> Scalar:
        return canonicalize(self)._terms.get((), Scalar.zero())

    def is_self_adjoint(self) -> bool:
        return adjoint(self) == self

    def numeric_terms(self, hbar: float = 1.0, l: float = 1.0) -> list[tuple[Word, complex]]:  # noqa: E741
        return [(word, c.evaluate_numeric(hbar, l)) for word, c in self.items()]

    # ----- arithmetic -----
    def _check_alphabet(self, other: 'OpPoly'):
        if self.alphabet != other.alphabet:
            raise AlphabetMismatchError(
                f"Cannot combine {self.alphabet.value} and {other.alphabet.value} operators; convert first"
                )

    def __add__(self, other):
        other = _coerce_op(other, self.alphabet)
        if other is NotImplemented:
            return other
        self._check_alphabet(other)
        terms = dict(self._terms)
        for word, coefficient in other._terms.items():
            _accumulate(terms, word, coefficient)
        tag = self.order_tag if self.order_tag == other.order_tag else OrderTag.UNORDERED
        return OpPoly(self.alphabet, terms, tag)

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        other = _coerce_op(other, self.alphabet)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, factor) -> 'OpPoly':
        factor = Scalar.of(factor)
        return OpPoly(self.alphabet, {w: c * factor for w, c in self._terms.items()}, self.order_tag)

    def __mul__(self, other):
        if isinstance(other, OpPoly):
            return op_mul(self, other)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = OpPoly.identity(self.alphabet)
        for _ in range(exponent):
            result = op_mul(result, self)
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, OpPoly):
            other = _coerce_op(other, self.alphabet)
            if other is NotImplemented:
                return other
        if other.alphabet != self.alphabet:
            other = change_alphabet(other, self.alphabet)
        return canonicalize(self)._terms == canonicalize(other)._terms

    def __hash__(self) -> int:
        if self._hash is None:
            standard = change_alphabet(self, Alphabet.XP)
            object.__setattr__(self, "_hash", hash(frozenset(standard._terms.items())))
        return self._hash

    # ----- printing -----
    def format(self, sep: str = " ") -> str:
        '''Human-readable form, words as "X^j P^k" / "a^m ad^n"'''
        if self.is_zero():
            return "0"
        items = self.items()
        coefficients = {coefficient for _, coefficient in items}
        if len(items) > 1 and len(coefficients) == 1:
            common = coefficients.pop()
            if common != 1 and common.is_monomial():
                inner = join_signed([("+", _format_word(w, self.alphabet) or "1") for w, _ in items])
                sign, body = common.signed_parts(sep)[0]
                return join_signed([(sign, f"{body} ({inner})")])
        parts = []
        for word, coefficient in items:
            text = _format_word(word, self.alphabet)
            if coefficient.is_monomial():
                sign, body = coefficient.signed_parts(sep)[0]
            else:
                sign, body = "+", f"({coefficient.format(sep)})"
            if not text:
                parts.append((sign, body))
            elif body == "1":
                parts.append((sign, text))
            else:
                parts.append((sign, f"{body}{sep}{text}"))
        return join_signed(parts)

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"OpPoly[{self.alphabet.value}, {self.order_tag.value}]({self})"


def _coerce_op(value, alphabet: Alphabet):
    if isinstance(value, OpPoly):
        return value
    try:
        return OpPoly.scalar(Scalar.of(value), alphabet)
    except TypeError:
        return NotImplemented


def _format_word(word: Word, alphabet: Alphabet) -> str:
    '''Group runs of equal letters: (0, 0, 1) -> "X^2 P"'''
    letters = LETTERS[alphabet]
    groups = []
    for letter in word:
        if groups and groups[-1][0] == letter:
            groups[-1][1] += 1
        else:
            groups.append([letter, 1])
    return " ".join(
        letters[letter] if count == 1 else f"{letters[letter]}^{count}" for letter, count in groups
        )


def canonicalize(A: OpPoly, target_order: OrderTag | None = None) -> OpPoly:
    '''Rewrite an operator polynomial into a canonical order

    Parameters
    ----------
    A : OpPoly
        operator to rewrite
    target_order : OrderTag, optional
        by default standard order for XP and anti-normal order for ladder

    Returns
    -------
    OpPoly
        the same operator with every word in target order

    Raises
    ------
    OrderError
        If the order is not available for the alphabet
    '''
    if target_order is None:
        target_order = DEFAULT_ORDER[A.alphabet]
    if target_order == OrderTag.UNORDERED:
        raise OrderError("Cannot canonicalize to the unordered tag")
    if A.order_tag == target_order:
        return A
    left, right, remainder = _rule(A.alphabet, target_order)
    terms = {}
    for word, coefficient in A._terms.items():
        for ordered, sub_coefficient in _ordered_word(word, left, right, remainder):
            _accumulate(terms, ordered, coefficient * sub_coefficient)
    return OpPoly(A.alphabet, terms, target_order)


def op_mul(A: OpPoly, B: OpPoly) -> OpPoly:
    '''Product AB, canonicalized in the default order of the alphabet

    Raises
    ------
    AlphabetMismatchError
        If A and B are written in different alphabets
    '''
    A._check_alphabet(B)
    order = DEFAULT_ORDER[A.alphabet]
    left, right, remainder = _rule(A.alphabet, order)
    terms = {}
    for word_a, coeff_a in A._terms.items():
        for word_b, coeff_b in B._terms.items():
            coefficient = coeff_a * coeff_b
            for ordered, sub_coefficient in _ordered_word(word_a + word_b, left, right, remainder):
                _accumulate(terms, ordered, coefficient * sub_coefficient)
    return OpPoly(A.alphabet, terms, order)


def change_alphabet(A: OpPoly, target: Alphabet) -> OpPoly:
    '''Rewrite an operator in the other alphabet, canonicalized in its default order.

    Uses X = l/sqrt2 (a + ad), P = i hbar/(l sqrt2) (ad - a)
    and the inverse a = 1/sqrt2 (X/l + i l P/hbar).
    '''
    if A.alphabet == target:
        return canonicalize(A)
    substitution = SUBSTITUTIONS[A.alphabet]
    expanded = {}
    for word, coefficient in A._terms.items():
        partial = {(): coefficient}
        for letter in word:
            step = {}
            for prefix, prefix_coefficient in partial.items():
                for suffix, suffix_coefficient in substitution[letter].items():
                    _accumulate(step, prefix + suffix, prefix_coefficient * suffix_coefficient)
            partial = step
        for new_word, new_coefficient in partial.items():
            _accumulate(expanded, new_word, new_coefficient)
    return canonicalize(OpPoly(target, expanded))


def commutator(A: OpPoly, B: OpPoly) -> OpPoly:
    '''[A, B] = AB - BA, canonicalized'''
    return op_mul(A, B) - op_mul(B, A)


def adjoint(A: OpPoly) -> OpPoly:
    '''Hermitian conjugate: conjugate coefficients, reverse words,
    swap a and ad. X and P are self-adjoint.'''
    swap = A.alphabet == Alphabet.LADDER
    terms = {}
    for word, coefficient in A._terms.items():
        reversed_word = tuple((1 - letter) if swap else letter for letter in reversed(word))
        _accumulate(terms, reversed_word, coefficient.conjugate())
    return canonicalize(OpPoly(A.alphabet, terms))
