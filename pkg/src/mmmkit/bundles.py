"""Projective-bundle examples with exact cohomology rings.

Every example is complex algebraic: a projective space or a product of
two, and projectivizations P(V) of sums of line bundles over those.  The
rings are finite-dimensional quotients stored as rewrite systems (h^{n+1}
drops to zero, xi^r rewrites through the Grothendieck relation), so every
computation reduces to exact sparse polynomial arithmetic.

Conventions, pinned once and validated by the normalization checks:

* Grothendieck relation xi^r + pi*c_1 xi^{r-1} + ... + pi*c_r = 0.
* Fibre integration extracts the xi^{r-1} coefficient; pi_!(xi^{r-1}) = 1.
* c(TvE) = sum_i pi*c_i(V) (1+xi)^{r-i}, the relative Euler sequence.

The rank-2 projectivizations model surface bundles (fibre CP^1): the
vertical Euler class is c_1(TvE), so the generalized MMM numbers e_i#
are fibre integrals of its powers paired with the base.  The same models
reread as complex fibre-dimension-1 bundles for the complex flavor.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionMismatch, InhomogeneousError, QueryError
from .exactq import Rational
from .gradedalg import (
    GeneratorAlphabet,
    Polynomial,
    enumerate_monomials,
    format_poly,
)
from .hopfmodel import hopf_model

_ZERO = Fraction(0)
_ONE = Fraction(1)


class CohomologyRing:
    """A graded ring presented by generator caps and rewrite rules.

    ``rules`` maps a generator index to ``(cap, replacement)``: any
    monomial with that exponent at or above the cap rewrites by
    substituting ``replacement`` (None meaning zero) for the cap-th
    power.  Normal-form monomials keep every exponent below its cap.
    """

    def __init__(self, alphabet, rules, top_degree, fundamental, tangent_chern=None, label=""):
        self.alphabet = alphabet
        self.rules = dict(rules)
        self.top_degree = top_degree
        self.fundamental = dict(fundamental)
        self.label = label
        for gi, (cap, repl) in self.rules.items():
            if repl is not None and repl.homogeneous_degree() not in (
                None,
                cap * alphabet.degrees[gi],
            ):
                raise InhomogeneousError(
                    f"rewrite for {alphabet.names[gi]} does not preserve degree"
                )
        self.tangent_chern = self.reduce(tangent_chern) if tangent_chern is not None else None

    def __repr__(self):
        return f"CohomologyRing({self.label or ','.join(self.alphabet.names)})"

    def zero(self):
        return Polynomial.zero(self.alphabet)

    def one(self):
        return Polynomial.one(self.alphabet)

    def generator(self, name):
        return Polynomial.generator(self.alphabet, name)

    def reduce(self, poly):
        """Rewrite to normal form; terminates since xi-exponents strictly drop."""
        out = {}
        stack = list(poly.terms.items())
        while stack:
            exp, coeff = stack.pop()
            for gi, (cap, repl) in self.rules.items():
                if exp[gi] >= cap:
                    if repl is not None:
                        rest = list(exp)
                        rest[gi] -= cap
                        rewritten = repl * Polynomial.from_monomial(
                            self.alphabet, rest, coeff
                        )
                        stack.extend(rewritten.terms.items())
                    break
            else:
                c = out.get(exp, _ZERO) + coeff
                if c:
                    out[exp] = c
                else:
                    out.pop(exp, None)
        return Polynomial(self.alphabet, out)

    def mul(self, a, b):
        return self.reduce(a * b)

    def pow(self, a, k):
        result = self.one()
        for _ in range(k):
            result = self.mul(result, a)
        return result

    def component(self, poly, degree):
        return self.reduce(poly).degree_slice(degree)

    def basis(self, degree):
        """Normal-form monomials of the given degree."""
        monos = enumerate_monomials(self.alphabet, degree)
        out = []
        for e in monos:
            if all(e[gi] < cap for gi, (cap, _) in self.rules.items()):
                out.append(e)
        return out

    def evaluate(self, poly):
        """Pair the top-degree component with the fundamental class."""
        total = _ZERO
        for exp, coeff in self.reduce(poly).terms.items():
            if self.alphabet.degree(exp) == self.top_degree:
                total += coeff * self.fundamental.get(exp, _ZERO)
        return Rational(total)

    def chern_class(self, k):
        """k-th Chern class of the tangent bundle."""
        if self.tangent_chern is None:
            raise QueryError(f"{self!r} carries no tangent data")
        return self.tangent_chern.degree_slice(2 * k)

    def pontrjagin_class(self, k):
        """p_k of the underlying real tangent bundle, from the Chern classes.

        1 - p_1 + p_2 - ... = c(T) * c(T-conjugate), so
        p_k = (-1)^k sum_{i+j=2k} (-1)^j c_i c_j.
        """
        acc = self.zero()
        for i in range(0, 2 * k + 1):
            j = 2 * k - i
            term = self.mul(self.chern_class(i), self.chern_class(j))
            acc = acc + (term if j % 2 == 0 else -term)
        return self.reduce(acc if k % 2 == 0 else -acc)


def point_ring():
    alphabet = GeneratorAlphabet([])
    one = Polynomial.one(alphabet)
    return CohomologyRing(alphabet, {}, 0, {(): _ONE}, tangent_chern=one, label="pt")


def projective_space(n, name="h"):
    """The ring of CP^n: one degree-2 generator, h^{n+1} = 0."""
    if n < 1:
        raise QueryError("projective spaces here have complex dimension >= 1")
    alphabet = GeneratorAlphabet([(name, 2)])
    h = Polynomial.generator(alphabet, name)
    tangent = (Polynomial.one(alphabet) + h) ** (n + 1)
    ring = CohomologyRing(
        alphabet,
        {0: (n + 1, None)},
        2 * n,
        {(n,): _ONE},
        label=f"cp{n}",
    )
    ring.tangent_chern = ring.reduce(tangent)
    return ring


def product_ring(a, b):
    """Tensor product of two rings; generator names get suffixes 1 and 2."""
    entries = [(f"{n}1", d) for n, d in zip(a.alphabet.names, a.alphabet.degrees)]
    entries += [(f"{n}2", d) for n, d in zip(b.alphabet.names, b.alphabet.degrees)]
    alphabet = GeneratorAlphabet(entries)
    na = len(a.alphabet)

    def embed(poly, offset, source_len):
        images = [None] * source_len
        for i in range(source_len):
            images[i] = Polynomial.generator(alphabet, alphabet.names[offset + i])
        return poly.substitute(alphabet, images)

    rules = {}
    for gi, (cap, repl) in a.rules.items():
        rules[gi] = (cap, None if repl is None else embed(repl, 0, len(a.alphabet)))
    for gi, (cap, repl) in b.rules.items():
        rules[na + gi] = (cap, None if repl is None else embed(repl, na, len(b.alphabet)))
    fundamental = {}
    for ea, va in a.fundamental.items():
        for eb, vb in b.fundamental.items():
            fundamental[tuple(ea) + tuple(eb)] = va * vb
    tangent = None
    if a.tangent_chern is not None and b.tangent_chern is not None:
        tangent = embed(a.tangent_chern, 0, len(a.alphabet)) * embed(
            b.tangent_chern, na, len(b.alphabet)
        )
    label = f"{a.label}x{b.label}" if a.label and b.label else ""
    return CohomologyRing(
        alphabet, rules, a.top_degree + b.top_degree, fundamental, tangent, label
    )


@dataclass
class BundleModel:
    """A projectivized bundle pi: E = P(V) -> B with exact fibre integration."""

    base: CohomologyRing
    total: CohomologyRing
    rank: int
    xi_index: int
    vertical_chern: Polynomial
    label: str = ""

    def __repr__(self):
        return f"BundleModel({self.label})"

    def pullback(self, x):
        """pi*: base classes viewed in the total ring."""
        images = [
            Polynomial.generator(self.total.alphabet, self.total.alphabet.names[i])
            for i in range(len(self.base.alphabet))
        ]
        return self.total.reduce(x.substitute(self.total.alphabet, images))

    def fibre_integrate(self, x):
        """pi_!: the xi^{rank-1} coefficient, as a base class."""
        top = self.rank - 1
        xi = self.xi_index
        out = {}
        for exp, coeff in self.total.reduce(x).terms.items():
            if exp[xi] != top:
                continue
            base_exp = exp[:xi] + exp[xi + 1 :]
            out[base_exp] = out.get(base_exp, _ZERO) + coeff
        return self.base.reduce(Polynomial(self.base.alphabet, out))

    def vertical_euler(self):
        """Euler class of the vertical tangent bundle (rank 2: c_1(TvE))."""
        return self.vertical_chern.degree_slice(2 * (self.rank - 1))

    def fibre_euler_number(self):
        """chi of the fibre: c_top(Tv) restricted to a fibre, integrated."""
        images = [None] * len(self.total.alphabet)
        images[self.xi_index] = Polynomial.generator(
            self.total.alphabet, self.total.alphabet.names[self.xi_index]
        )
        restricted = self.vertical_euler().substitute(self.total.alphabet, images)
        return _constant_value(self.fibre_integrate(restricted))


def _constant_value(poly):
    value = _ZERO
    for exp, coeff in poly.terms.items():
        if any(exp):
            raise QueryError("expected a constant class")
        value = coeff
    return Rational(value)


def projectivize(base, chern_of_v, label=""):
    """P(V) -> base for V with the given Chern classes c_1..c_r.

    The total ring adjoins xi (degree 2) with the Grothendieck relation;
    the vertical tangent Chern class comes from the relative Euler
    sequence.
    """
    r = len(chern_of_v)
    if r < 2:
        raise QueryError("projectivization needs rank at least 2")
    for i, c in enumerate(chern_of_v, start=1):
        deg = c.homogeneous_degree()
        if deg is not None and deg != 2 * i:
            raise InhomogeneousError(f"c_{i} of the twisting bundle must have degree {2 * i}")
    entries = list(zip(base.alphabet.names, base.alphabet.degrees)) + [("xi", 2)]
    alphabet = GeneratorAlphabet(entries)
    nb = len(base.alphabet)
    base_images = [
        Polynomial.generator(alphabet, alphabet.names[i]) for i in range(nb)
    ]

    def lift(poly):
        return poly.substitute(alphabet, base_images)

    xi = Polynomial.generator(alphabet, "xi")
    relation = Polynomial.zero(alphabet)
    for i, c in enumerate(chern_of_v, start=1):
        relation = relation - lift(c) * xi ** (r - i)
    rules = {}
    for gi, (cap, repl) in base.rules.items():
        rules[gi] = (cap, None if repl is None else lift(repl))
    rules[nb] = (r, relation if not relation.is_zero() else None)
    fundamental = {
        tuple(e) + (r - 1,): v for e, v in base.fundamental.items()
    }
    total = CohomologyRing(
        alphabet,
        rules,
        base.top_degree + 2 * (r - 1),
        fundamental,
        label=f"P({label})" if label else "",
    )
    vertical = (Polynomial.one(alphabet) + xi) ** r
    for i, c in enumerate(chern_of_v, start=1):
        vertical = vertical + lift(c) * (Polynomial.one(alphabet) + xi) ** (r - i)
    vertical = total.reduce(vertical)
    if base.tangent_chern is not None:
        total.tangent_chern = total.reduce(lift(base.tangent_chern) * vertical)
    return BundleModel(base, total, r, nb, vertical, label=label or "P(V)")


def line_bundle_sum(base, twists):
    """Chern classes c_1..c_r of a sum of line bundles over the base.

    Each twist is a tuple of integers pairing with the base's degree-2
    generators: O(k) on cp1 is (k,), O(a,b) on cp1 x cp1 is (a, b).
    """
    degree_two = [
        i for i, d in enumerate(base.alphabet.degrees) if d == 2
    ]
    total = base.one()
    for twist in twists:
        if len(twist) != len(degree_two):
            raise DimensionMismatch(
                f"twist {twist} needs {len(degree_two)} integers for {base!r}"
            )
        c1 = base.zero()
        for t, gi in zip(twist, degree_two):
            c1 = c1 + t * Polynomial.generator(base.alphabet, base.alphabet.names[gi])
        total = base.mul(total, base.one() + c1)
    return [total.degree_slice(2 * i) for i in range(1, len(twists) + 1)]


def hirzebruch(k):
    """F_k = P(O + O(k)) over CP^1; all of them are cobordant."""
    base = projective_space(1)
    return projectivize(base, line_bundle_sum(base, [(0,), (k,)]), label=f"O+O({k}) over cp1")


def product_bundle(base):
    """The trivial CP^1 bundle base x CP^1, built without the xi relation.

    A second construction route for the same total spaces as P(O+O):
    fibre integration reads off the second factor's generator.
    """
    fibre = projective_space(1)
    total = product_ring(base, fibre)
    xi_index = len(base.alphabet)
    xi = Polynomial.generator(total.alphabet, total.alphabet.names[xi_index])
    vertical = total.reduce((Polynomial.one(total.alphabet) + xi) ** 2)
    return BundleModel(base, total, 2, xi_index, vertical, label=f"{base.label}xcp1")


def biproj(a, b):
    """P(O + O(a,b)) over CP^1 x CP^1."""
    base = product_ring(projective_space(1), projective_space(1))
    return projectivize(
        base, line_bundle_sum(base, [(0, 0), (a, b)]), label=f"O+O({a},{b}) over cp1xcp1"
    )


# --- characteristic numbers ---------------------------------------------------


def mmm_number(bundle, indices):
    """The number of an MMM monomial e_{i_1} ... e_{i_m} on a rank-2 bundle.

    Each e_i contributes pi_!(e(Tv)^{i+1}); the product of those base
    classes pairs with the base fundamental class.  The monomial's degree
    sum 2 i_k must match the base's top degree.
    """
    if bundle.rank != 2:
        raise QueryError("MMM numbers are implemented for rank-2 bundles (surface fibres)")
    indices = list(indices)
    if any(i < 1 for i in indices):
        raise QueryError("MMM class indices are positive")
    if sum(2 * i for i in indices) != bundle.base.top_degree:
        raise DimensionMismatch(
            f"monomial degree {sum(2 * i for i in indices)} does not match"
            f" base dimension {bundle.base.top_degree}"
        )
    euler = bundle.vertical_euler()
    acc = bundle.base.one()
    for i in indices:
        acc = bundle.base.mul(acc, bundle.fibre_integrate(bundle.total.pow(euler, i + 1)))
    return bundle.base.evaluate(acc)


def mmm_class_number(bundle, algebra, x):
    """Evaluate a polynomial MMM class from an aliased algebra on the bundle."""
    if algebra.display_names is None:
        raise QueryError("bundle evaluation needs the single-generator MMM algebras")
    value = Rational(0)
    for exp, coeff in x.terms.items():
        indices = []
        for gi, e in enumerate(exp):
            sdeg = algebra.alphabet.degrees[gi]
            indices.extend([sdeg // 2] * e)
        value += coeff * mmm_number(bundle, indices)
    return value


def total_space_char_numbers(bundle):
    """All Chern numbers of E, plus Pontrjagin numbers when they exist."""
    total = bundle.total
    top = total.top_degree
    numbers = {}
    half = top // 2
    c_alph = GeneratorAlphabet([(f"c{i}", 2 * i) for i in range(1, half + 1)])
    for exp in enumerate_monomials(c_alph, top):
        value = total.one()
        for i, e in enumerate(exp):
            for _ in range(e):
                value = total.mul(value, total.chern_class(i + 1))
        numbers[_format(c_alph, exp)] = total.evaluate(value)
    if top % 4 == 0:
        quarter = top // 4
        p_alph = GeneratorAlphabet([(f"p{i}", 4 * i) for i in range(1, quarter + 1)])
        for exp in enumerate_monomials(p_alph, top):
            value = total.one()
            for i, e in enumerate(exp):
                for _ in range(e):
                    value = total.mul(value, total.pontrjagin_class(i + 1))
            numbers[_format(p_alph, exp)] = total.evaluate(value)
    return numbers


def _format(alphabet, exp):
    return format_poly(Polynomial.from_monomial(alphabet, exp))


@dataclass
class IdentityReport:
    """Both sides of the fibre-integration identity for one (bundle, j)."""

    bundle: str
    flavor: str
    j: int
    total_side: Rational
    base_side: Rational
    class_level_equal: bool

    @property
    def equal(self):
        return self.total_side == self.base_side and self.class_level_equal

    def to_doc(self):
        return {
            "bundle": self.bundle,
            "flavor": self.flavor,
            "j": self.j,
            "totalSide": [self.total_side.numerator, self.total_side.denominator],
            "baseSide": [self.base_side.numerator, self.base_side.denominator],
            "classLevelEqual": self.class_level_equal,
            "pass": self.equal,
        }


def verify_motivating_identity(bundle, j, flavor="so"):
    """Check <X(TE), [E]> = <pi_! X(TvE), [B]> for the additive class X.

    X is the j-th Pontrjagin power sum s_j(p) (flavor "so") or the
    character component ch_j (flavor "u"); additivity under Whitney sum
    plus pi_!pi* = 0 forces equality, and both sides are recomputed
    independently here.  The class-level identity pi_! X(TE) = pi_! X(TvE)
    is checked alongside.
    """
    total = bundle.total
    if flavor == "so":
        if 4 * j > total.top_degree:
            raise QueryError(f"degree 4j = {4 * j} exceeds the total space dimension")
        model = hopf_model("so", 4 * j)
        sj = model.power_sum(j)
        classes_total = [total.pontrjagin_class(i) for i in range(1, j + 1)]
        vertical = _vertical_pontrjagin(bundle, j)
    elif flavor == "u":
        if 2 * j > total.top_degree:
            raise QueryError(f"degree 2j = {2 * j} exceeds the total space dimension")
        model = hopf_model("u", 2 * j)
        sj = model.character_component(j)
        classes_total = [total.chern_class(i) for i in range(1, j + 1)]
        vertical = [
            bundle.vertical_chern.degree_slice(2 * i) for i in range(1, j + 1)
        ]
    else:
        raise QueryError(f"unknown flavor {flavor!r}")
    x_total = total.reduce(sj.substitute(total.alphabet, classes_total))
    x_vertical = total.reduce(sj.substitute(total.alphabet, vertical))
    total_side = total.evaluate(x_total)
    base_side = bundle.base.evaluate(bundle.fibre_integrate(x_vertical))
    class_level = bundle.fibre_integrate(x_total) == bundle.fibre_integrate(x_vertical)
    return IdentityReport(
        bundle.label, flavor, j, total_side, base_side, class_level
    )


def _vertical_pontrjagin(bundle, jmax):
    """p_1..p_jmax of the vertical tangent bundle, from its Chern classes."""
    total = bundle.total
    conj = Polynomial.zero(total.alphabet)
    straight = Polynomial.zero(total.alphabet)
    bound = 2 * jmax
    for i in range(0, bound + 1):
        c = bundle.vertical_chern.degree_slice(2 * i)
        straight = straight + c
        conj = conj + (c if i % 2 == 0 else -c)
    product = total.mul(straight, conj)
    out = []
    for k in range(1, jmax + 1):
        slice_ = product.degree_slice(4 * k)
        out.append(total.reduce(slice_ if k % 2 == 0 else -slice_))
    return out
