"""Sparse graded-commutative polynomial and tensor algebra.

Monomials are dense exponent tuples over a fixed, ordered generator alphabet.
Generators of odd degree are exterior: their exponents never exceed one and
products pick up Koszul signs from the transpositions needed to sort the
factors back into alphabet order.  All coefficients are ``Fraction``.

The canonical order on monomials of a fixed degree is descending
lexicographic on exponent tuples, so higher powers of earlier generators come
first: in degree 12 over p1, p2, p3 that reads p1^3, p1*p2, p3.  Inhomogeneous
polynomials print lower degrees first.

This module also owns the shared text grammar:

    poly   := term (('+'|'-') term)*
    term   := coeff ('*' factor)* | factor ('*' factor)*
    coeff  := integer | integer '/' positive-integer
    factor := name ('^' positive-integer)?

Names are alphabetic heads with optional digits and an optional underscored
ordinal (p1, c3, Q2, ch4, e, e7, x, E5_2).  Whitespace is insignificant;
output is emitted in canonical order with coefficients in lowest terms.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import AlphabetMismatch, DimensionMismatch, InhomogeneousError, ParseError

_ZERO = Fraction(0)
_ONE = Fraction(1)


class GeneratorAlphabet:
    """An ordered list of graded generators; parity is degree mod 2."""

    __slots__ = ("names", "degrees", "parities", "odd_indices", "_index")

    def __init__(self, entries):
        names = []
        degrees = []
        for name, degree in entries:
            if degree < 1:
                raise ValueError(f"generator {name!r} must have positive degree")
            names.append(name)
            degrees.append(degree)
        if len(set(names)) != len(names):
            raise ValueError("generator names must be distinct")
        self.names = tuple(names)
        self.degrees = tuple(degrees)
        self.parities = tuple(d & 1 for d in degrees)
        self.odd_indices = tuple(i for i, p in enumerate(self.parities) if p)
        self._index = {n: i for i, n in enumerate(names)}

    def __len__(self):
        return len(self.names)

    def __eq__(self, other):
        return (
            isinstance(other, GeneratorAlphabet)
            and self.names == other.names
            and self.degrees == other.degrees
        )

    def __hash__(self):
        return hash((self.names, self.degrees))

    def __repr__(self):
        inner = ", ".join(f"{n}:{d}" for n, d in zip(self.names, self.degrees))
        return f"GeneratorAlphabet({inner})"

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise AlphabetMismatch(f"unknown generator {name!r}") from None

    def unit(self):
        return (0,) * len(self.names)

    def degree(self, exponents):
        return sum(e * d for e, d in zip(exponents, self.degrees))

    def monomial_dict(self, exponents):
        return {n: e for n, e in zip(self.names, exponents) if e}


def _canonical_key(exponents):
    # Descending lexicographic within a degree slice.
    return tuple(-e for e in exponents)


def monomial_sort_key(alphabet, exponents):
    return (alphabet.degree(exponents), _canonical_key(exponents))


def _koszul(odd_indices, ea, eb):
    """Sign of merging two monomials, or None when an odd square appears."""
    sign = 0
    seen = 0  # odd generators of ea with index above the current one
    for j in reversed(odd_indices):
        if eb[j]:
            if ea[j]:
                return None
            sign ^= seen & 1
        if ea[j]:
            seen += 1
    return sign


class Polynomial:
    """Sparse polynomial over a :class:`GeneratorAlphabet`."""

    __slots__ = ("alphabet", "terms")

    def __init__(self, alphabet, terms=()):
        self.alphabet = alphabet
        clean = {}
        for exp, coeff in dict(terms).items():
            coeff = Fraction(coeff)
            if coeff:
                clean[tuple(exp)] = coeff
        self.terms = clean

    @classmethod
    def zero(cls, alphabet):
        return cls(alphabet)

    @classmethod
    def one(cls, alphabet):
        return cls(alphabet, {alphabet.unit(): _ONE})

    @classmethod
    def constant(cls, alphabet, value):
        return cls(alphabet, {alphabet.unit(): Fraction(value)})

    @classmethod
    def generator(cls, alphabet, name):
        i = alphabet.index(name)
        exp = [0] * len(alphabet)
        exp[i] = 1
        return cls(alphabet, {tuple(exp): _ONE})

    @classmethod
    def from_monomial(cls, alphabet, exponents, coeff=1):
        return cls(alphabet, {tuple(exponents): Fraction(coeff)})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.alphabet == other.alphabet
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.alphabet, frozenset(self.terms.items())))

    def _check(self, other):
        if self.alphabet != other.alphabet:
            raise AlphabetMismatch("operands use different alphabets")

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for exp, c in other.terms.items():
            s = out.get(exp, _ZERO) + c
            if s:
                out[exp] = s
            else:
                out.pop(exp, None)
        return Polynomial(self.alphabet, out)

    def __neg__(self):
        return Polynomial(self.alphabet, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            if not q:
                return Polynomial.zero(self.alphabet)
            return Polynomial(
                self.alphabet, {e: c * q for e, c in self.terms.items()}
            )
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        odd = self.alphabet.odd_indices
        out = {}
        if not odd:
            for ea, ca in self.terms.items():
                for eb, cb in other.terms.items():
                    key = tuple(x + y for x, y in zip(ea, eb))
                    s = out.get(key, _ZERO) + ca * cb
                    if s:
                        out[key] = s
                    else:
                        out.pop(key, None)
        else:
            for ea, ca in self.terms.items():
                for eb, cb in other.terms.items():
                    sign = _koszul(odd, ea, eb)
                    if sign is None:
                        continue
                    key = tuple(x + y for x, y in zip(ea, eb))
                    c = ca * cb if sign == 0 else -ca * cb
                    s = out.get(key, _ZERO) + c
                    if s:
                        out[key] = s
                    else:
                        out.pop(key, None)
        return Polynomial(self.alphabet, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative powers are not defined here")
        result = Polynomial.one(self.alphabet)
        for _ in range(n):
            result = result * self
        return result

    def homogeneous_degree(self):
        """Common degree of all terms; None for zero, error when mixed."""
        degs = {self.alphabet.degree(e) for e in self.terms}
        if not degs:
            return None
        if len(degs) > 1:
            raise InhomogeneousError(
                f"polynomial mixes degrees {sorted(degs)}"
            )
        return degs.pop()

    def max_degree(self):
        return max((self.alphabet.degree(e) for e in self.terms), default=0)

    def degree_slice(self, m):
        alph = self.alphabet
        return Polynomial(
            alph, {e: c for e, c in self.terms.items() if alph.degree(e) == m}
        )

    def truncate(self, max_degree):
        alph = self.alphabet
        return Polynomial(
            alph,
            {e: c for e, c in self.terms.items() if alph.degree(e) <= max_degree},
        )

    def substitute(self, target_alphabet, images):
        """Evaluate by sending generator i to ``images[i]``.

        ``images`` is a sequence of Polynomials over ``target_alphabet`` (or
        None for zero), one per source generator.  Source generators are
        assumed central (even); the models that call this are commutative.
        """
        out = Polynomial.zero(target_alphabet)
        powers = {}
        for exp, coeff in self.terms.items():
            term = Polynomial.constant(target_alphabet, coeff)
            for i, e in enumerate(exp):
                if not e:
                    continue
                img = images[i]
                if img is None or img.is_zero():
                    term = None
                    break
                key = (i, e)
                p = powers.get(key)
                if p is None:
                    p = img**e
                    powers[key] = p
                term = term * p
                if term.is_zero():
                    term = None
                    break
            if term is not None:
                out = out + term
        return out

    def sorted_terms(self):
        alph = self.alphabet
        return sorted(
            self.terms.items(),
            key=lambda item: (alph.degree(item[0]), _canonical_key(item[0])),
        )

    def __repr__(self):
        return f"Polynomial({format_poly(self)})"


def enumerate_monomials(alphabet, degree, allowed=None):
    """All exponent tuples of the given degree, in canonical order.

    Odd generators are capped at exponent one.  ``allowed`` optionally
    restricts which generator indices may appear.
    """
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    n = len(alphabet)
    degrees = alphabet.degrees
    parities = alphabet.parities
    mask = [True] * n if allowed is None else [i in allowed for i in range(n)]
    out = []
    exp = [0] * n

    def rec(i, rem):
        if rem == 0:
            out.append(tuple(exp))
            return
        if i == n:
            return
        if mask[i]:
            top = rem // degrees[i]
            if parities[i]:
                top = min(top, 1)
        else:
            top = 0
        for k in range(top, 0, -1):
            exp[i] = k
            rec(i + 1, rem - k * degrees[i])
        exp[i] = 0
        rec(i + 1, rem)

    rec(0, degree)
    return out


def poincare_series(alphabet, max_degree):
    """Coefficients of the graded dimension series up to ``max_degree``."""
    coeffs = [0] * (max_degree + 1)
    coeffs[0] = 1
    for d, parity in zip(alphabet.degrees, alphabet.parities):
        if d > max_degree:
            continue
        if parity:
            for k in range(max_degree, d - 1, -1):
                coeffs[k] += coeffs[k - d]
        else:
            for k in range(d, max_degree + 1):
                coeffs[k] += coeffs[k - d]
    return coeffs


def degree_slice_vector(poly, degree, basis=None):
    """Coordinates of a homogeneous polynomial over a degree slice's basis."""
    d = poly.homogeneous_degree()
    if d is not None and d != degree:
        raise InhomogeneousError(f"polynomial has degree {d}, expected {degree}")
    if basis is None:
        basis = enumerate_monomials(poly.alphabet, degree)
    index = {e: i for i, e in enumerate(basis)}
    vec = [_ZERO] * len(basis)
    for exp, coeff in poly.terms.items():
        try:
            vec[index[exp]] = coeff
        except KeyError:
            raise DimensionMismatch(
                f"monomial {poly.alphabet.monomial_dict(exp)} is not in the slice basis"
            ) from None
    return tuple(vec)


def vector_to_polynomial(alphabet, vector, basis):
    if len(vector) != len(basis):
        raise DimensionMismatch(f"vector length {len(vector)} != basis size {len(basis)}")
    return Polynomial(
        alphabet, {e: Fraction(c) for e, c in zip(basis, vector) if c}
    )


class TensorElement:
    """Element of the two-fold tensor product of the polynomial algebra."""

    __slots__ = ("alphabet", "terms")

    def __init__(self, alphabet, terms=()):
        self.alphabet = alphabet
        clean = {}
        for key, coeff in dict(terms).items():
            coeff = Fraction(coeff)
            if coeff:
                clean[(tuple(key[0]), tuple(key[1]))] = coeff
        self.terms = clean

    @classmethod
    def zero(cls, alphabet):
        return cls(alphabet)

    @classmethod
    def one(cls, alphabet):
        u = alphabet.unit()
        return cls(alphabet, {(u, u): _ONE})

    @classmethod
    def tensor(cls, left, right):
        if left.alphabet != right.alphabet:
            raise AlphabetMismatch("tensor factors use different alphabets")
        out = {}
        for ea, ca in left.terms.items():
            for eb, cb in right.terms.items():
                out[(ea, eb)] = out.get((ea, eb), _ZERO) + ca * cb
        return cls(left.alphabet, out)

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (
            isinstance(other, TensorElement)
            and self.alphabet == other.alphabet
            and self.terms == other.terms
        )

    def __add__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        if self.alphabet != other.alphabet:
            raise AlphabetMismatch("operands use different alphabets")
        out = dict(self.terms)
        for key, c in other.terms.items():
            s = out.get(key, _ZERO) + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return TensorElement(self.alphabet, out)

    def __neg__(self):
        return TensorElement(self.alphabet, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            if not q:
                return TensorElement.zero(self.alphabet)
            return TensorElement(
                self.alphabet, {k: c * q for k, c in self.terms.items()}
            )
        if not isinstance(other, TensorElement):
            return NotImplemented
        if self.alphabet != other.alphabet:
            raise AlphabetMismatch("operands use different alphabets")
        odd = self.alphabet.odd_indices
        parity = self.alphabet.parities
        out = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                # (a1 x b1)(a2 x b2) = +- (a1 a2) x (b1 b2), with the sign of
                # moving b1 past a2.
                c = c1 * c2
                if odd:
                    par_b1 = sum(b1[i] for i in odd) & 1
                    par_a2 = sum(a2[i] for i in odd) & 1
                    if par_b1 and par_a2:
                        c = -c
                    sa = _koszul(odd, a1, a2)
                    sb = _koszul(odd, b1, b2)
                    if sa is None or sb is None:
                        continue
                    if (sa + sb) & 1:
                        c = -c
                key = (
                    tuple(x + y for x, y in zip(a1, a2)),
                    tuple(x + y for x, y in zip(b1, b2)),
                )
                s = out.get(key, _ZERO) + c
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return TensorElement(self.alphabet, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative powers are not defined here")
        result = TensorElement.one(self.alphabet)
        for _ in range(n):
            result = result * self
        return result

    def __repr__(self):
        parts = []
        alph = self.alphabet
        for (ea, eb), c in sorted(self.terms.items())[:6]:
            pa = Polynomial.from_monomial(alph, ea)
            pb = Polynomial.from_monomial(alph, eb)
            parts.append(f"{c}*({format_poly(pa)})x({format_poly(pb)})")
        more = "" if len(self.terms) <= 6 else f" ... {len(self.terms)} terms"
        return f"TensorElement({' + '.join(parts)}{more})"


# --- text grammar -----------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z]+\d*(?:_\d+)?)|(?P<op>[-+*/^]))"
)


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            rest = text[pos:].lstrip()
            if not rest:
                break
            raise ParseError(
                f"unexpected token {rest[0]!r} at position {pos}",
                token=rest[0],
                position=pos,
            )
        if m.lastgroup is None:
            break
        kind = m.lastgroup
        value = m.group(kind)
        tokens.append((kind, value, m.start(kind)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens, alphabet, aliases=None):
        self.tokens = tokens
        self.alphabet = alphabet
        self.aliases = aliases or {}
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input")
        self.pos += 1
        return tok

    def expect_int(self, what):
        tok = self.next()
        if tok[0] != "int":
            raise ParseError(
                f"expected {what}, found {tok[1]!r} at position {tok[2]}",
                token=tok[1],
                position=tok[2],
            )
        return int(tok[1])

    def parse(self):
        poly = self.parse_term(self.parse_sign(initial=True))
        while True:
            tok = self.peek()
            if tok is None:
                return poly
            if tok[0] == "op" and tok[1] in "+-":
                self.pos += 1
                sign = -1 if tok[1] == "-" else 1
                poly = poly + self.parse_term(sign)
            else:
                raise ParseError(
                    f"unexpected token {tok[1]!r} at position {tok[2]}",
                    token=tok[1],
                    position=tok[2],
                )

    def parse_sign(self, initial=False):
        tok = self.peek()
        if initial and tok is not None and tok[0] == "op" and tok[1] == "-":
            self.pos += 1
            return -1
        return 1

    def parse_term(self, sign):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input")
        coeff = Fraction(sign)
        factors = Polynomial.one(self.alphabet)
        if tok[0] == "int":
            self.pos += 1
            num = int(tok[1])
            nxt = self.peek()
            if nxt is not None and nxt[0] == "op" and nxt[1] == "/":
                self.pos += 1
                den = self.expect_int("a positive denominator")
                if den == 0:
                    raise ParseError("zero denominator")
                coeff *= Fraction(num, den)
            else:
                coeff *= num
        elif tok[0] == "name":
            factors = factors * self.parse_factor()
        else:
            raise ParseError(
                f"unexpected token {tok[1]!r} at position {tok[2]}",
                token=tok[1],
                position=tok[2],
            )
        while True:
            nxt = self.peek()
            if nxt is None or nxt[0] != "op" or nxt[1] != "*":
                break
            self.pos += 1
            factors = factors * self.parse_factor()
        return factors * coeff

    def parse_factor(self):
        tok = self.next()
        if tok[0] != "name":
            raise ParseError(
                f"expected a generator name, found {tok[1]!r} at position {tok[2]}",
                token=tok[1],
                position=tok[2],
            )
        name = self.aliases.get(tok[1], tok[1])
        try:
            poly = Polynomial.generator(self.alphabet, name)
        except AlphabetMismatch:
            raise ParseError(
                f"unknown generator {tok[1]!r} at position {tok[2]}",
                token=tok[1],
                position=tok[2],
            ) from None
        nxt = self.peek()
        if nxt is not None and nxt[0] == "op" and nxt[1] == "^":
            self.pos += 1
            e = self.expect_int("a positive exponent")
            if e == 0:
                raise ParseError("exponents must be positive")
            poly = poly**e
        return poly


def parse_poly(text, alphabet, aliases=None):
    """Parse the shared polynomial grammar over the given alphabet.

    ``aliases`` optionally maps accepted alternative spellings to canonical
    generator names.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty input")
    return _Parser(tokens, alphabet, aliases).parse()


def _format_monomial(alphabet, exponents, names=None):
    factors = []
    for name, e in zip(names or alphabet.names, exponents):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append(f"{name}^{e}")
    return "*".join(factors)


def format_poly(poly, names=None):
    """Canonical text form: graded order, lowest-terms coefficients.

    ``names`` optionally overrides the alphabet's generator names for
    display, matching them by position.
    """
    if poly.is_zero():
        return "0"
    parts = []
    for exp, coeff in poly.sorted_terms():
        mono = _format_monomial(poly.alphabet, exp, names)
        mag = abs(coeff)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not parts:
            parts.append(f"-{body}" if coeff < 0 else body)
        else:
            parts.append(f" - {body}" if coeff < 0 else f" + {body}")
    return "".join(parts)
