"""Hopf-algebra models of the rational cohomology of BU and BSO.

Both rings are free graded-commutative on one generator per even step:
Chern classes c_i in degree 2i for BU, Pontrjagin classes p_i in degree 4i
for BSO.  Degrees are true cohomological degrees throughout.  The coproduct
is the Whitney formula on generators, extended multiplicatively:

    delta(g_n) = sum_{i=0..n} g_i (x) g_{n-i},   g_0 = 1.

Primitive generators Q_j are the integer Newton power sums s_j, so the
coefficient of g_1^j inside Q_j is exactly 1; `character_component` divides
by j! to produce the Chern/Pontrjagin character pieces.  Models are built
eagerly to a degree bound and treated as immutable afterwards; the small
write-once memo tables are not guarded by locks.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .errors import AlphabetMismatch, InhomogeneousError, QueryError
from .gradedalg import GeneratorAlphabet, Polynomial, TensorElement

_ZERO = Fraction(0)
_ONE = Fraction(1)

#: cohomological degree of g_1 for each model kind
STEP = {"u": 2, "so": 4}
GENERATOR_LETTER = {"u": "c", "so": "p"}

MAX_DEGREE_CAP = 128


def _check_kind(kind):
    if kind not in STEP:
        raise QueryError(f"unknown model kind {kind!r}; expected 'u' or 'so'")


class HopfModel:
    """H*(BU; Q) or H*(BSO; Q) truncated above ``max_degree``."""

    def __init__(self, kind, max_degree):
        _check_kind(kind)
        if max_degree < STEP[kind]:
            raise QueryError(f"degree bound {max_degree} is below |{GENERATOR_LETTER[kind]}1|")
        if max_degree > MAX_DEGREE_CAP:
            raise QueryError(f"degree bound {max_degree} exceeds the cap {MAX_DEGREE_CAP}")
        self.kind = kind
        self.step = STEP[kind]
        self.max_degree = max_degree
        self.ngens = max_degree // self.step
        letter = GENERATOR_LETTER[kind]
        self.generators = GeneratorAlphabet(
            [(f"{letter}{i}", self.step * i) for i in range(1, self.ngens + 1)]
        )
        self.primitives = GeneratorAlphabet(
            [(f"Q{i}", self.step * i) for i in range(1, self.ngens + 1)]
        )
        self._power_sums = self._build_power_sums()
        self._gens_in_primitives = self._build_gens_in_primitives()
        self._gen_coproduct_powers = {}

    def __repr__(self):
        return f"HopfModel({self.kind!r}, max_degree={self.max_degree})"

    # -- basis helpers -------------------------------------------------------

    def generator_poly(self, i):
        return Polynomial.generator(self.generators, f"{GENERATOR_LETTER[self.kind]}{i}")

    def primitive_poly(self, j):
        return Polynomial.generator(self.primitives, f"Q{j}")

    # -- Newton tables -------------------------------------------------------

    def _build_power_sums(self):
        # s_j = g_1 s_{j-1} - g_2 s_{j-2} + ... + (-1)^(j-1) j g_j
        table = [None, self.generator_poly(1)] if self.ngens else [None]
        for j in range(2, self.ngens + 1):
            acc = Polynomial.zero(self.generators)
            for i in range(1, j):
                term = self.generator_poly(i) * table[j - i]
                acc = acc + (term if i % 2 == 1 else -term)
            last = self.generator_poly(j) * Fraction(j)
            acc = acc + (last if j % 2 == 1 else -last)
            table.append(acc)
        return table

    def _build_gens_in_primitives(self):
        # g_j = (1/j) sum_{i=1..j} (-1)^(i-1) g_{j-i} Q_i, solved upward
        table = [Polynomial.one(self.primitives)]
        for j in range(1, self.ngens + 1):
            acc = Polynomial.zero(self.primitives)
            for i in range(1, j + 1):
                term = table[j - i] * self.primitive_poly(i)
                acc = acc + (term if i % 2 == 1 else -term)
            table.append(acc * Fraction(1, j))
        return table

    def power_sum(self, j):
        """The primitive s_j expanded over the generator alphabet."""
        if not 1 <= j <= self.ngens:
            raise QueryError(f"s_{j} is outside this model's bound (1..{self.ngens})")
        return self._power_sums[j]

    def character_component(self, j):
        """Degree-(step*j) component of the Chern/Pontrjagin character: s_j / j!."""
        return self.power_sum(j) * Fraction(1, factorial(j))

    def to_primitive_basis(self, x):
        """Rewrite a generator-alphabet polynomial over Q1, Q2, ..."""
        if x.alphabet != self.generators:
            raise AlphabetMismatch("expected a polynomial over the generator alphabet")
        return x.substitute(self.primitives, self._gens_in_primitives[1:])

    def from_primitive_basis(self, x):
        """Inverse of :meth:`to_primitive_basis`."""
        if x.alphabet != self.primitives:
            raise AlphabetMismatch("expected a polynomial over the primitive alphabet")
        return x.substitute(self.generators, self._power_sums[1:])

    # -- coproduct -----------------------------------------------------------

    def _gen_coproduct_power(self, i, e):
        """delta(g_i)^e as a TensorElement, memoised."""
        key = (i, e)
        cached = self._gen_coproduct_powers.get(key)
        if cached is not None:
            return cached
        if e == 0:
            result = TensorElement.one(self.generators)
        elif e == 1:
            alph = self.generators
            unit = alph.unit()
            terms = {}
            for a in range(i + 1):
                ea = list(unit)
                eb = list(unit)
                if a:
                    ea[a - 1] = 1
                if i - a:
                    eb[i - a - 1] = 1
                terms[(tuple(ea), tuple(eb))] = _ONE
            result = TensorElement(alph, terms)
        else:
            half = self._gen_coproduct_power(i, e // 2)
            result = half * half
            if e % 2:
                result = result * self._gen_coproduct_power(i, 1)
        self._gen_coproduct_powers[key] = result
        return result

    def coproduct(self, x):
        """Whitney coproduct on generator polynomials; primitive rule on Q's."""
        alph = x.alphabet
        if alph == self.generators:
            out = TensorElement.zero(alph)
            for exp, coeff in x.terms.items():
                t = TensorElement.one(alph)
                for i, e in enumerate(exp):
                    if e:
                        t = t * self._gen_coproduct_power(i + 1, e)
                out = out + t * coeff
            return out
        if alph == self.primitives:
            unit = alph.unit()
            out = TensorElement.zero(alph)
            for exp, coeff in x.terms.items():
                t = TensorElement.one(alph)
                for i, e in enumerate(exp):
                    if not e:
                        continue
                    g = [0] * len(alph.names)
                    g[i] = 1
                    prim = TensorElement(
                        alph, {(tuple(g), unit): _ONE, (unit, tuple(g)): _ONE}
                    )
                    t = t * prim**e
                out = out + t * coeff
            return out
        raise AlphabetMismatch("polynomial is not over this model's alphabets")

    def reduced_coproduct(self, x):
        """delta(x) - x(x)1 - 1(x)x for homogeneous x; zero in degree 0."""
        degree = x.homogeneous_degree()
        if degree is None or degree == 0:
            return TensorElement.zero(x.alphabet)
        delta = self.coproduct(x)
        unit = x.alphabet.unit()
        ends = {}
        for exp, coeff in x.terms.items():
            ends[(exp, unit)] = coeff
            ends[(unit, exp)] = coeff
        return delta - TensorElement(x.alphabet, ends)


@lru_cache(maxsize=None)
def hopf_model(kind, max_degree):
    """Shared, memoised model instances (they are immutable in use)."""
    return HopfModel(kind, max_degree)


# --- restriction to the compact groups ---------------------------------------


class RestrictedModel:
    """Rational cohomology of BU(d), or of BSO(d) with its Euler class.

    BU(d) is free on c_1..c_d.  For odd d, BSO(d) is free on
    p_1..p_{(d-1)/2}.  For even d the Euler class e (degree d) replaces
    p_{d/2} via the relation e^2 = p_{d/2}, leaving a free alphabet
    p_1..p_{d/2-1}, e.
    """

    def __init__(self, kind, d):
        _check_kind(kind)
        if d < 1:
            raise QueryError("the restriction rank must be positive")
        self.kind = kind
        self.d = d
        if kind == "u":
            entries = [(f"c{i}", 2 * i) for i in range(1, d + 1)]
            self.euler_index = None
        elif d % 2 == 1:
            entries = [(f"p{i}", 4 * i) for i in range(1, (d - 1) // 2 + 1)]
            self.euler_index = None
        else:
            entries = [(f"p{i}", 4 * i) for i in range(1, d // 2)]
            entries.append(("e", d))
            self.euler_index = len(entries) - 1
        self.alphabet = GeneratorAlphabet(entries) if entries else GeneratorAlphabet([])

    def __repr__(self):
        group = "U" if self.kind == "u" else "SO"
        return f"RestrictedModel(B{group}({self.d}))"


@lru_cache(maxsize=None)
def restricted_model(kind, d):
    return RestrictedModel(kind, d)


def _restriction_images(model, rm):
    """Images of the model's generators inside the restricted alphabet."""
    images = []
    alph = rm.alphabet
    if model.kind == "u":
        for i in range(1, model.ngens + 1):
            images.append(Polynomial.generator(alph, f"c{i}") if i <= rm.d else None)
        return images
    half = rm.d // 2
    for i in range(1, model.ngens + 1):
        if rm.d % 2 == 1:
            images.append(
                Polynomial.generator(alph, f"p{i}") if i <= (rm.d - 1) // 2 else None
            )
        elif i < half:
            images.append(Polynomial.generator(alph, f"p{i}"))
        elif i == half:
            images.append(Polynomial.generator(alph, "e") ** 2)
        else:
            images.append(None)
    return images


def restrict(model, d, x):
    """Restriction of a generator-alphabet class along BU(d) or BSO(d) -> B(U/SO).

    Chern classes above index d die; Pontrjagin classes above index d/2 die,
    with p_{d/2} turning into the square of the Euler class when d is even.
    """
    if x.alphabet != model.generators:
        raise AlphabetMismatch("restrict expects a polynomial over the generator alphabet")
    rm = restricted_model(model.kind, d)
    return x.substitute(rm.alphabet, _restriction_images(model, rm))


# --- Bernoulli numbers and the Hirzebruch L-class ----------------------------


@lru_cache(maxsize=None)
def bernoulli(n):
    """Exact Bernoulli number B_n (B_1 = -1/2 convention)."""
    if n == 0:
        return _ONE
    acc = _ZERO
    for j in range(n):
        acc += comb(n + 1, j) * bernoulli(j)
    return -acc / (n + 1)


def _series_log(f, nterms):
    """log of a power series with constant term 1; returns coefficients 0..nterms."""
    a = [_ZERO] * (nterms + 1)
    for n in range(1, nterms + 1):
        acc = Fraction(n) * f[n]
        for k in range(1, n):
            acc -= Fraction(k) * a[k] * f[n - k]
        a[n] = acc / n
    return a


@lru_cache(maxsize=None)
def _l_log_coefficients(nterms):
    """Coefficients a_k with log(sqrt(z)/tanh(sqrt(z))) = sum a_k z^k."""
    f = [
        Fraction(4**n) * bernoulli(2 * n) / factorial(2 * n)
        for n in range(nterms + 1)
    ]
    return tuple(_series_log(f, nterms))


def l_class_component(model, k):
    """Degree-4k component L_k of the Hirzebruch L-class, over p1..pk.

    Built multiplicatively: log L = sum a_j s_j(p) with the a_j read off
    from log(sqrt(z)/tanh(sqrt(z))), then exponentiated with degree
    truncation.  L_1 = p1/3, L_2 = (7 p2 - p1^2)/45, ...
    """
    if model.kind != "so":
        raise QueryError("the L-class lives in the oriented model")
    if not 1 <= k <= model.ngens:
        raise QueryError(f"L_{k} is outside this model's bound (1..{model.ngens})")
    a = _l_log_coefficients(k)
    log_l = Polynomial.zero(model.generators)
    for j in range(1, k + 1):
        if a[j]:
            log_l = log_l + model.power_sum(j) * a[j]
    total = Polynomial.one(model.generators)
    power = Polynomial.one(model.generators)
    for i in range(1, k + 1):
        power = (power * log_l).truncate(4 * k)
        total = total + power * Fraction(1, factorial(i))
    return total.degree_slice(4 * k)
