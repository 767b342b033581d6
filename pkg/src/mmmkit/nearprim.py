"""Near-primitive subspaces of the BU/BSO models, three ways.

An element x of degree m >= d is near-primitive of order d when the reduced
coproduct of x has no component in H (x) H^{>=d}.  Three independent routes
compute the degree-m slice of these:

* `near_primitive_kernel` assembles the composite (id (x) proj_{>=d}) after
  the reduced coproduct as an integer matrix over the monomial basis and
  takes its kernel - pure linear algebra, no structure theory.
* `near_primitive_monomials` / `near_primitive_span` write down the closed
  monomial basis: products of power sums Q_i with m - d < |Q_i| < d,
  together with Q_m itself when m is a generator degree.
* `near_primitive_kernel_restricted` replaces the projection by its
  composite with restriction to the compact group, which detects the same
  kernel whenever the first Pontrjagin (resp. Chern) class survives the
  restriction: BSO(d) needs d >= 2, and the complex pairing matches order
  2k with BU(k), so only even orders have a restricted counterpart there.

`verify_equivalence` sweeps all three against each other and doubles as the
boundary-law check (full slice at m = d, primitives only for m >= 2d).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .errors import QueryError
from .exactq import Subspace, kernel_basis, subspace_equal
from .gradedalg import (
    Polynomial,
    degree_slice_vector,
    enumerate_monomials,
    format_poly,
    vector_to_polynomial,
)
from .hopfmodel import hopf_model, restrict, restricted_model

_ZERO = Fraction(0)


@dataclass(frozen=True)
class NearPrimQuery:
    """A (model kind, degree, order) triple, validated on construction."""

    kind: str
    degree: int
    order: int

    def __post_init__(self):
        if self.kind not in ("u", "so"):
            raise QueryError(f"unknown model kind {self.kind!r}")
        if self.order < 1:
            raise QueryError("the order must be at least 1")
        if self.degree < self.order:
            raise QueryError(
                f"near-primitives need degree >= order; got degree {self.degree}"
                f" < order {self.order}"
            )


@lru_cache(maxsize=None)
def _delta_bar_slice(kind, max_degree, m):
    """Reduced-coproduct data of every degree-m generator monomial.

    Returns ``(basis, columns)`` where ``columns[j]`` lists
    ``((exp_a, exp_b), integer coefficient)`` for basis monomial j.  Cached
    per (kind, bound, m); the d-sweeps reuse it across all orders.
    """
    model = hopf_model(kind, max_degree)
    basis = enumerate_monomials(model.generators, m)
    columns = []
    for exp in basis:
        dbar = model.reduced_coproduct(Polynomial.from_monomial(model.generators, exp))
        columns.append(tuple((key, int(c)) for key, c in dbar.terms.items()))
    return basis, tuple(columns)


def _kernel_rows(model, m, d):
    """Integer matrix rows of (id (x) proj_{>=d}) o delta-bar on the m-slice."""
    basis, columns = _delta_bar_slice(model.kind, model.max_degree, m)
    degree_of = model.generators.degree
    row_keys = {}
    entries = []
    for j, col in enumerate(columns):
        for (ea, eb), c in col:
            if degree_of(eb) < d:
                continue
            key = (ea, eb)
            i = row_keys.get(key)
            if i is None:
                i = len(row_keys)
                row_keys[key] = i
            entries.append((i, j, c))
    order = sorted(range(len(row_keys)), key=list(row_keys).__getitem__)
    remap = {old: new for new, old in enumerate(order)}
    rows = [[0] * len(basis) for _ in row_keys]
    for i, j, c in entries:
        rows[remap[i]][j] += c
    return basis, rows


def near_primitive_kernel(model, m, d):
    """Order-d near-primitives in degree m, as a kernel computation."""
    NearPrimQuery(model.kind, m, d)
    if m > model.max_degree:
        raise QueryError(f"degree {m} exceeds the model bound {model.max_degree}")
    basis, rows = _kernel_rows(model, m, d)
    if not rows:
        return Subspace.full(len(basis))
    return kernel_basis(rows, len(basis))


def near_primitive_monomials(model, m, d):
    """The closed-form basis: monomials over the admissible power sums.

    Admissible generators are the Q_i with m - d < |Q_i| < d; Q_m joins when
    m is itself a generator degree.  Returned as exponent tuples over the
    primitive alphabet, in canonical order.
    """
    NearPrimQuery(model.kind, m, d)
    if m > model.max_degree:
        raise QueryError(f"degree {m} exceeds the model bound {model.max_degree}")
    prims = model.primitives
    allowed = {
        i
        for i, deg in enumerate(prims.degrees)
        if m - d < deg < d
    }
    monos = enumerate_monomials(prims, m, allowed=allowed)
    if m % model.step == 0:
        top = [0] * len(prims)
        top[m // model.step - 1] = 1
        monos.append(tuple(top))
    monos.sort(key=lambda e: tuple(-v for v in e))
    return monos


def near_primitive_span(model, m, d):
    """The closed-form basis as a subspace in generator-monomial coordinates."""
    monos = near_primitive_monomials(model, m, d)
    basis = enumerate_monomials(model.generators, m)
    vectors = [
        degree_slice_vector(
            model.from_primitive_basis(Polynomial.from_monomial(model.primitives, e)),
            m,
            basis,
        )
        for e in monos
    ]
    return Subspace.from_vectors(len(basis), vectors)


def restricted_pairing(kind, d):
    """The restriction rank paired with order d, or None when there is none."""
    if kind == "u":
        return d // 2 if d % 2 == 0 else None
    return d if d >= 2 else None


@lru_cache(maxsize=None)
def _restricted_monomial(kind, max_degree, rank, exp):
    model = hopf_model(kind, max_degree)
    poly = restrict(model, rank, Polynomial.from_monomial(model.generators, exp))
    return tuple((e, int(c)) for e, c in poly.terms.items())


def near_primitive_kernel_restricted(model, m, d):
    """Same kernel, detected through the compact-group restriction.

    The second tensor factor is projected to degrees >= d and then restricted
    to BU(d/2) (complex, even d) or BSO(d) (oriented, d >= 2).  Orders with
    no faithful pairing raise: odd complex orders have no matching rank, and
    BSO(1) is rationally trivial so the composite detects nothing.
    """
    NearPrimQuery(model.kind, m, d)
    if m > model.max_degree:
        raise QueryError(f"degree {m} exceeds the model bound {model.max_degree}")
    rank = restricted_pairing(model.kind, d)
    if rank is None:
        if model.kind == "u":
            raise QueryError("odd orders have no restricted pairing over the complex model")
        raise QueryError("restriction to BSO(1) kills every positive-degree class")
    basis, columns = _delta_bar_slice(model.kind, model.max_degree, m)
    degree_of = model.generators.degree
    row_keys = {}
    triples = []
    for j, col in enumerate(columns):
        for (ea, eb), c in col:
            if degree_of(eb) < d:
                continue
            for er, cr in _restricted_monomial(model.kind, model.max_degree, rank, eb):
                key = (ea, er)
                i = row_keys.get(key)
                if i is None:
                    i = len(row_keys)
                    row_keys[key] = i
                triples.append((i, j, c * cr))
    if not row_keys:
        return Subspace.full(len(basis))
    order = sorted(range(len(row_keys)), key=list(row_keys).__getitem__)
    remap = {old: new for new, old in enumerate(order)}
    rows = [[0] * len(basis) for _ in row_keys]
    for i, j, c in triples:
        rows[remap[i]][j] += c
    return kernel_basis(rows, len(basis))


def npd(model, d, n):
    """NP_d in degree n: the restricted image of the near-primitives.

    Oriented models restrict order-d near-primitives to BSO(d); the complex
    pairing restricts order-2d near-primitives to BU(d).  The result lives in
    the degree-n monomial slice of the restricted model.
    """
    if d < 1:
        raise QueryError("the rank must be positive")
    if n < 1:
        raise QueryError("the degree must be positive")
    order = d if model.kind == "so" else 2 * d
    rm = restricted_model(model.kind, d)
    rbasis = enumerate_monomials(rm.alphabet, n)
    if n < order or n % model.step != 0 or not rbasis:
        return Subspace.zero(len(rbasis))
    monos = near_primitive_monomials(model, n, order)
    vectors = []
    for e in monos:
        poly = restrict(
            model, d, model.from_primitive_basis(Polynomial.from_monomial(model.primitives, e))
        )
        vectors.append(degree_slice_vector(poly, n, rbasis))
    return Subspace.from_vectors(len(rbasis), vectors)


# --- the sweep ----------------------------------------------------------------


@dataclass
class SweepFailure:
    degree: int
    order: int
    check: str
    detail: str


@dataclass
class EquivalenceReport:
    """Outcome of sweeping kernel, closed-form and restricted routes."""

    kind: str
    max_degree: int
    checked: int = 0
    skipped_restricted: int = 0
    dimensions: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    @property
    def all_passed(self):
        return not self.failures

    def to_doc(self):
        return {
            "model": self.kind,
            "maxDegree": self.max_degree,
            "checked": self.checked,
            "skippedRestricted": self.skipped_restricted,
            "failures": [
                {
                    "degree": f.degree,
                    "order": f.order,
                    "check": f.check,
                    "detail": f.detail,
                }
                for f in self.failures
            ],
        }


def _difference_witness(model, m, a, b):
    """A basis vector of one subspace missing from the other, rendered."""
    basis = enumerate_monomials(model.generators, m)
    for row in a.basis:
        if not b.contains(row):
            poly = vector_to_polynomial(model.generators, row, basis)
            return format_poly(poly)
    for row in b.basis:
        if not a.contains(row):
            poly = vector_to_polynomial(model.generators, row, basis)
            return format_poly(poly)
    return "spaces agree"


def verify_equivalence(model, max_degree):
    """Check kernel = closed form = restricted kernel over every (m, d).

    Also records the boundary laws: the kernel is the whole slice at m = d
    and exactly the (at most one-dimensional) primitive slice once m >= 2d.
    Returns an :class:`EquivalenceReport`; any counterexample carries the
    offending (m, d) and a witness vector.
    """
    if max_degree > model.max_degree:
        raise QueryError(
            f"sweep bound {max_degree} exceeds the model bound {model.max_degree}"
        )
    report = EquivalenceReport(model.kind, max_degree)
    step = model.step
    for m in range(step, max_degree + 1, step):
        gen_basis = enumerate_monomials(model.generators, m)
        primitive_vec = degree_slice_vector(model.power_sum(m // step), m, gen_basis)
        primitive_slice = Subspace.from_vectors(len(gen_basis), [primitive_vec])
        full_slice = Subspace.full(len(gen_basis))
        for d in range(1, m + 1):
            kernel = near_primitive_kernel(model, m, d)
            span = near_primitive_span(model, m, d)
            report.checked += 1
            report.dimensions[(m, d)] = kernel.dim
            if not subspace_equal(kernel, span):
                report.failures.append(
                    SweepFailure(m, d, "monomial-basis", _difference_witness(model, m, kernel, span))
                )
            if restricted_pairing(model.kind, d) is not None:
                restricted = near_primitive_kernel_restricted(model, m, d)
                if not subspace_equal(kernel, restricted):
                    report.failures.append(
                        SweepFailure(
                            m, d, "restricted-kernel",
                            _difference_witness(model, m, kernel, restricted),
                        )
                    )
            else:
                report.skipped_restricted += 1
            if m == d and not subspace_equal(kernel, full_slice):
                report.failures.append(
                    SweepFailure(m, d, "full-slice-at-m=d", f"dim {kernel.dim} != {full_slice.dim}")
                )
            if m >= 2 * d and not subspace_equal(kernel, primitive_slice):
                report.failures.append(
                    SweepFailure(
                        m, d, "primitives-only-at-m>=2d",
                        _difference_witness(model, m, kernel, primitive_slice),
                    )
                )
    return report
