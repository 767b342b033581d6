"""Generalised MMM-class algebras and the bordism-invariance decision.

For a fibre bundle with d-dimensional oriented (or d-complex-dimensional)
fibres, the generalised MMM classes live in a free graded-commutative
algebra with one generator per monomial of H^{>d}(BSO(d);Q) (complex:
H^{>2d}(BU(d);Q)), the degree of each generator being the cohomological
degree shifted down by d (resp. 2d).  Odd oriented d makes every shifted
degree odd, so those algebras are exterior.

The hat map sends a restricted-model class X to the MMM class of the
fibre integral of X evaluated on the vertical tangent bundle: linear,
monomial-to-generator, zero in cohomological degrees at most d.

`is_bordism_invariant` decides whether an MMM class depends only on the
cobordism class of the total space: for even d and the complex flavor the
class must be generator-linear with hat-preimage in NP_d; for odd d the
test runs modulo the ideal K generated by hatted restricted L-class
components, whose characteristic numbers vanish on every bundle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import AlphabetMismatch, QueryError
from .exactq import Subspace, solve_in_span, subspace_intersection, subspace_sum
from .gradedalg import (
    GeneratorAlphabet,
    Polynomial,
    degree_slice_vector,
    enumerate_monomials,
    format_poly,
    parse_poly,
    vector_to_polynomial,
)
from .hopfmodel import hopf_model, l_class_component, restrict, restricted_model
from .nearprim import npd

_ZERO = Fraction(0)
_ONE = Fraction(1)

# Algebras whose generators carry the classical e_i names: a single
# degree-2 generator downstairs, so e_i is the hat of its (i+1)-st power.
_ALIASED = {("so", 2), ("u", 1)}


@dataclass
class InvarianceVerdict:
    """Outcome of the bordism-invariance decision for one MMM class.

    When the decision is positive, ``hat(witness) + correction`` rebuilds
    the queried class exactly; the correction lies in the K ideal and is
    zero for even d and the complex flavor.
    """

    decision: bool
    reason: str = None
    witness: Polynomial = None
    correction: Polynomial = None

    def __bool__(self):
        return self.decision

    def summary(self):
        return "yes" if self.decision else f"no, {self.reason}"


class MMMAlgebra:
    """The algebra of generalised MMM classes for one (flavor, d) pair.

    Generators are named E<degree>_<ordinal>, the ordinal indexing the
    canonical restricted-model monomials of the matching cohomological
    degree.  The classical aliases e1, e2, ... are accepted on input and
    used for display when the restricted model has a single degree-2
    generator (oriented d=2, complex d=1).
    """

    def __init__(self, kind, d, degree_bound):
        if kind not in ("u", "so"):
            raise QueryError(f"unknown flavor {kind!r}")
        if d < 1:
            raise QueryError("the rank d must be positive")
        if degree_bound < 1:
            raise QueryError("the degree bound must be positive")
        self.kind = kind
        self.d = d
        self.degree_bound = degree_bound
        self.shift = d if kind == "so" else 2 * d
        self.restricted = restricted_model(kind, d)
        self.model = hopf_model(kind, self.shift + degree_bound)
        entries = []
        self._gen_monomials = []
        self._mono_to_index = {}
        counts = {}
        for cohdeg in range(self.shift + 1, self.shift + degree_bound + 1):
            for mono in enumerate_monomials(self.restricted.alphabet, cohdeg):
                sdeg = cohdeg - self.shift
                counts[sdeg] = counts.get(sdeg, 0) + 1
                entries.append((f"E{sdeg}_{counts[sdeg]}", sdeg))
                self._mono_to_index[mono] = len(self._gen_monomials)
                self._gen_monomials.append(mono)
        self.alphabet = GeneratorAlphabet(entries)
        if (kind, d) in _ALIASED:
            self.display_names = tuple(f"e{sdeg // 2}" for _, sdeg in entries)
            self.aliases = {
                disp: name for disp, (name, _) in zip(self.display_names, entries)
            }
        else:
            self.display_names = None
            self.aliases = {}
        self._k_gens = None

    def __repr__(self):
        flavor = "complex" if self.kind == "u" else "oriented"
        return f"MMMAlgebra({flavor} d={self.d}, degree_bound={self.degree_bound})"

    def parse(self, text):
        return parse_poly(text, self.alphabet, self.aliases)

    def format(self, poly):
        return format_poly(poly, self.display_names)

    def generator_names(self):
        return self.display_names or self.alphabet.names

    def monomial_basis(self, n):
        return enumerate_monomials(self.alphabet, n)

    def generator_monomial(self, index):
        """The restricted-model monomial a generator came from."""
        return self._gen_monomials[index]

    # --- the hat map ---------------------------------------------------

    def hat(self, x):
        """Linear extension of: canonical monomial -> its generator.

        Cohomological degrees at most d (2d complex) map to zero; the
        input must be homogeneous.
        """
        if x.alphabet != self.restricted.alphabet:
            raise AlphabetMismatch("hat expects a polynomial over the restricted model")
        deg = x.homogeneous_degree()
        if deg is None or deg <= self.shift:
            return Polynomial.zero(self.alphabet)
        if deg > self.shift + self.degree_bound:
            raise QueryError(
                f"cohomological degree {deg} exceeds the configured bound"
                f" {self.shift + self.degree_bound}"
            )
        unit = self.alphabet.unit()
        terms = {}
        for exp, coeff in x.terms.items():
            gi = self._mono_to_index[exp]
            terms[unit[:gi] + (1,) + unit[gi + 1 :]] = coeff
        return Polynomial(self.alphabet, terms)

    def unhat(self, x):
        """Inverse of hat on generator-linear elements."""
        if x.alphabet != self.alphabet:
            raise AlphabetMismatch("unhat expects an element of the MMM algebra")
        terms = {}
        for exp, coeff in x.terms.items():
            if sum(exp) != 1:
                raise QueryError("only generator-linear elements invert under hat")
            terms[self._gen_monomials[exp.index(1)]] = coeff
        return Polynomial(self.restricted.alphabet, terms)

    # --- the K ideal (odd oriented d) ----------------------------------

    def _require_odd(self):
        if self.kind != "so" or self.d % 2 == 0:
            raise QueryError("the K ideal only exists for odd oriented rank")

    def k_ideal_generators(self):
        """Hatted restricted L-class components, zero images omitted."""
        self._require_odd()
        if self._k_gens is None:
            gens = []
            k = (self.d + 4) // 4  # smallest k with 4k > d
            while 4 * k - self.d <= self.degree_bound:
                image = restrict(self.model, self.d, l_class_component(self.model, k))
                g = self.hat(image)
                if not g.is_zero():
                    gens.append(g)
                k += 1
            self._k_gens = gens
        return list(self._k_gens)

    def _k_products(self, n):
        """Monomial multiples of the K generators spanning the degree-n slice."""
        products = []
        for g in self.k_ideal_generators():
            gdeg = g.homogeneous_degree()
            if gdeg > n:
                continue
            for mu in enumerate_monomials(self.alphabet, n - gdeg):
                prod = Polynomial.from_monomial(self.alphabet, mu) * g
                if not prod.is_zero():
                    products.append((mu, prod))
        return products

    def k_ideal_slice(self, n):
        """The degree-n slice of K as a subspace of the monomial slice."""
        self._require_odd()
        if n < 1:
            raise QueryError("the slice degree must be positive")
        basis = self.monomial_basis(n)
        vectors = [degree_slice_vector(p, n, basis) for _, p in self._k_products(n)]
        return Subspace.from_vectors(len(basis), vectors)

    # --- invariance ----------------------------------------------------

    def _np_preimages(self, n):
        """Restricted-model basis polynomials of NP_d in cohomological degree n + shift."""
        cohdeg = n + self.shift
        source = npd(self.model, self.d, cohdeg)
        rbasis = enumerate_monomials(self.restricted.alphabet, cohdeg)
        return [
            vector_to_polynomial(self.restricted.alphabet, row, rbasis)
            for row in source.basis
        ]

    def bordism_invariant_space(self, n):
        """MMM classes of degree n depending only on the total space's
        cobordism class, as a subspace of the degree-n monomial slice.

        Even d and complex: the hat image of NP_d.  Odd d: that image
        plus the generator-linear part of the K slice.
        """
        if n < 1:
            raise QueryError("the slice degree must be positive")
        if n > self.degree_bound:
            raise QueryError(f"degree {n} exceeds the configured bound {self.degree_bound}")
        basis = self.monomial_basis(n)
        vectors = [
            degree_slice_vector(self.hat(p), n, basis) for p in self._np_preimages(n)
        ]
        space = Subspace.from_vectors(len(basis), vectors)
        if self.kind == "so" and self.d % 2 == 1:
            linear = [i for i, e in enumerate(basis) if sum(e) == 1]
            unit_vectors = []
            for i in linear:
                v = [_ZERO] * len(basis)
                v[i] = _ONE
                unit_vectors.append(v)
            linear_slice = Subspace.from_vectors(len(basis), unit_vectors)
            space = subspace_sum(
                space, subspace_intersection(self.k_ideal_slice(n), linear_slice)
            )
        return space

    def is_bordism_invariant(self, x):
        """Decide invariance of a homogeneous MMM class, with witnesses.

        The class is split into its generator-linear and decomposable
        parts.  A decomposable remainder that the K ideal cannot absorb
        fails with reason notPrimitive; a linear part outside the image
        of NP_d (plus degree-matched K generators, odd d) fails with
        notInNPdImage.
        """
        if x.alphabet != self.alphabet:
            raise AlphabetMismatch("expected an element of the MMM algebra")
        n = x.homogeneous_degree()
        if n is None:
            return InvarianceVerdict(
                True,
                witness=Polynomial.zero(self.restricted.alphabet),
                correction=Polynomial.zero(self.alphabet),
            )
        if n == 0:
            raise QueryError("constants are not MMM classes; degree must be positive")
        if n > self.degree_bound:
            raise QueryError(f"degree {n} exceeds the configured bound {self.degree_bound}")
        basis = self.monomial_basis(n)
        target = degree_slice_vector(x, n, basis)
        is_linear = [sum(e) == 1 for e in basis]
        np_polys = self._np_preimages(n)
        np_vectors = [
            degree_slice_vector(self.hat(p), n, basis) for p in np_polys
        ]
        zero_correction = Polynomial.zero(self.alphabet)

        if self.kind == "u" or self.d % 2 == 0:
            if any(c for c, lin in zip(target, is_linear) if not lin):
                return InvarianceVerdict(False, reason="notPrimitive")
            coeffs = solve_in_span(np_vectors, target)
            if coeffs is None:
                return InvarianceVerdict(False, reason="notInNPdImage")
            witness = Polynomial.zero(self.restricted.alphabet)
            for c, p in zip(coeffs, np_polys):
                witness = witness + c * p
            return InvarianceVerdict(True, witness=witness, correction=zero_correction)

        # Odd d.  The linear and decomposable coordinates split the K slice:
        # bare generators are linear, proper monomial multiples decomposable.
        products = self._k_products(n)
        kappa = [(mu, p) for mu, p in products if sum(mu) == 0]
        proper = [(mu, p) for mu, p in products if sum(mu) > 0]
        dec_target = tuple(
            _ZERO if lin else c for c, lin in zip(target, is_linear)
        )
        dec_coeffs = solve_in_span(
            [degree_slice_vector(p, n, basis) for _, p in proper], dec_target
        )
        if dec_coeffs is None:
            return InvarianceVerdict(False, reason="notPrimitive")
        lin_target = tuple(
            c if lin else _ZERO for c, lin in zip(target, is_linear)
        )
        kappa_vectors = [degree_slice_vector(p, n, basis) for _, p in kappa]
        combo = solve_in_span(np_vectors + kappa_vectors, lin_target)
        if combo is None:
            return InvarianceVerdict(False, reason="notInNPdImage")
        witness = Polynomial.zero(self.restricted.alphabet)
        for c, p in zip(combo[: len(np_polys)], np_polys):
            witness = witness + c * p
        correction = zero_correction
        for c, (_, p) in zip(combo[len(np_polys) :], kappa):
            correction = correction + c * p
        for c, (_, p) in zip(dec_coeffs, proper):
            correction = correction + c * p
        return InvarianceVerdict(True, witness=witness, correction=correction)


@lru_cache(maxsize=None)
def mmm_algebra(kind, d, degree_bound):
    return MMMAlgebra(kind, d, degree_bound)
