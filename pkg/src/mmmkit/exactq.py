"""Exact rational linear algebra: RREF, kernels, canonical subspaces.

Everything is dense and exact over ``fractions.Fraction``.  The hot loop
(integer Gauss-Jordan elimination) lives in a separate core module with two
interchangeable implementations: the compiled extension ``_rowred`` and the
pure-Python twin ``_rowred_py``.  The extension is picked at import time when
it is built; set the environment variable MMMKIT_PURE to any non-empty value
to force the fallback (useful for benchmarking and debugging).

Subspaces are stored by their reduced-row-echelon basis with rows ordered by
pivot column, which is a canonical form: two subspaces are equal iff their
stored bases are equal entrywise.  Pivot selection is deterministic (leftmost
nonzero column, topmost unprocessed row), so every route to the same subspace
produces the same object.
"""

from __future__ import annotations

import os
from fractions import Fraction
from math import lcm

from .errors import DimensionMismatch

if os.environ.get("MMMKIT_PURE"):
    from . import _rowred_py as _core
else:
    try:
        from . import _rowred as _core  # type: ignore[attr-defined]
    except ImportError:
        from . import _rowred_py as _core

COMPILED_CORE = bool(getattr(_core, "IS_COMPILED", False))

Rational = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


class QMatrix:
    """Immutable dense matrix over the rationals."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows, cols, entries):
        entries = tuple(tuple(Fraction(e) for e in row) for row in entries)
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise DimensionMismatch(
                f"expected {rows}x{cols} entries, got "
                f"{len(entries)} rows of lengths {sorted({len(r) for r in entries})}"
            )
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, entries, cols=None):
        entries = [list(r) for r in entries]
        if cols is None:
            if not entries:
                raise DimensionMismatch("cannot infer width of an empty matrix")
            cols = len(entries[0])
        return cls(len(entries), cols, entries)

    def row(self, i):
        return self.entries[i]

    def mul_vector(self, v):
        if len(v) != self.cols:
            raise DimensionMismatch(f"vector length {len(v)} != {self.cols} columns")
        return tuple(sum((r[j] * v[j] for j in range(self.cols)), _ZERO) for r in self.entries)

    def __eq__(self, other):
        return (
            isinstance(other, QMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"QMatrix({self.rows}x{self.cols})"


def _int_rows(entries):
    """Scale each row by the lcm of its denominators; row scaling preserves RREF."""
    out = []
    for row in entries:
        if all(isinstance(e, int) for e in row):
            out.append(list(row))
            continue
        row = [Fraction(e) for e in row]
        scale = lcm(*(e.denominator for e in row)) if row else 1
        out.append([int(e * scale) for e in row])
    return out


def _reduced_rows(entries, ncols):
    """Run the core and return canonical Fraction RREF rows plus pivots."""
    out, pivots = _core.rref_int(_int_rows(entries), ncols)
    rows = []
    for r, pc in zip(out, pivots):
        piv = r[pc]
        rows.append(tuple(Fraction(e, piv) for e in r))
    return rows, tuple(pivots)


def rref(matrix):
    """Reduced row echelon form.  Returns ``(QMatrix, pivots)``, shape preserved."""
    rows, pivots = _reduced_rows(matrix.entries, matrix.cols)
    zero = (_ZERO,) * matrix.cols
    padded = rows + [zero] * (matrix.rows - len(rows))
    return QMatrix(matrix.rows, matrix.cols, padded), pivots


class Subspace:
    """A linear subspace of Q^n in canonical reduced-row-echelon form."""

    __slots__ = ("ambient_dim", "basis", "pivots")

    def __init__(self, ambient_dim, basis, pivots):
        # Trusted constructor: rows must already be canonical.
        self.ambient_dim = ambient_dim
        self.basis = tuple(tuple(row) for row in basis)
        self.pivots = tuple(pivots)

    @classmethod
    def from_vectors(cls, ambient_dim, vectors):
        vectors = [list(v) for v in vectors]
        for v in vectors:
            if len(v) != ambient_dim:
                raise DimensionMismatch(f"vector length {len(v)} != ambient {ambient_dim}")
        rows, pivots = _reduced_rows(vectors, ambient_dim)
        return cls(ambient_dim, rows, pivots)

    @classmethod
    def zero(cls, ambient_dim):
        return cls(ambient_dim, (), ())

    @classmethod
    def full(cls, ambient_dim):
        rows = tuple(
            tuple(_ONE if j == i else _ZERO for j in range(ambient_dim))
            for i in range(ambient_dim)
        )
        return cls(ambient_dim, rows, tuple(range(ambient_dim)))

    @property
    def dim(self):
        return len(self.basis)

    def coordinates(self, vector):
        """Coefficients of ``vector`` over the stored basis, or None if outside."""
        if len(vector) != self.ambient_dim:
            raise DimensionMismatch(
                f"vector length {len(vector)} != ambient {self.ambient_dim}"
            )
        v = [Fraction(e) for e in vector]
        coords = []
        for row, p in zip(self.basis, self.pivots):
            c = v[p]
            coords.append(c)
            if c:
                for j in range(p, self.ambient_dim):
                    v[j] -= c * row[j]
        if any(v):
            return None
        return tuple(coords)

    def contains(self, vector):
        return self.coordinates(vector) is not None

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim {self.dim} of Q^{self.ambient_dim})"


def kernel_basis(matrix, ncols=None):
    """Null space of a matrix, as a canonical Subspace.

    Accepts a QMatrix, or raw rows (lists of ints/Fractions) together with
    ``ncols``; the raw form lets hot callers skip Fraction boxing entirely.
    """
    if isinstance(matrix, QMatrix):
        entries, ncols = matrix.entries, matrix.cols
    else:
        entries = matrix
        if ncols is None:
            raise DimensionMismatch("ncols is required for raw-row input")
    rows, pivots = _reduced_rows(entries, ncols)
    pivot_set = set(pivots)
    vectors = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v = [_ZERO] * ncols
        v[f] = _ONE
        for i, p in enumerate(pivots):
            v[p] = -rows[i][f]
        vectors.append(v)
    return Subspace.from_vectors(ncols, vectors)


def subspace_equal(a, b):
    """Exact subspace equality; errors out on mismatched ambient dimensions."""
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(
            f"ambient dimensions differ: {a.ambient_dim} != {b.ambient_dim}"
        )
    return a.basis == b.basis


def membership(vector, subspace):
    """Alias for ``subspace.coordinates(vector)``."""
    return subspace.coordinates(vector)


def subspace_sum(a, b):
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(
            f"ambient dimensions differ: {a.ambient_dim} != {b.ambient_dim}"
        )
    return Subspace.from_vectors(a.ambient_dim, list(a.basis) + list(b.basis))


def subspace_intersection(a, b):
    """Intersection, computed from the kernel of the stacked-column matrix."""
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(
            f"ambient dimensions differ: {a.ambient_dim} != {b.ambient_dim}"
        )
    n = a.ambient_dim
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(n)
    # Columns are the basis vectors of a followed by those of b; a kernel
    # vector (x, y) encodes sum(x_i a_i) = sum(y_j b_j), a point of the
    # intersection.
    cols = a.dim + b.dim
    stacked = []
    for i in range(n):
        row = [a.basis[j][i] for j in range(a.dim)]
        row += [-b.basis[j][i] for j in range(b.dim)]
        stacked.append(row)
    ker = kernel_basis(stacked, cols)
    vectors = []
    for kv in ker.basis:
        vec = [_ZERO] * n
        for j in range(a.dim):
            if kv[j]:
                for i in range(n):
                    vec[i] += kv[j] * a.basis[j][i]
        vectors.append(vec)
    return Subspace.from_vectors(n, vectors)


def solve_in_span(vectors, target):
    """Express ``target`` as a linear combination of ``vectors``.

    Returns a coefficient tuple (free coefficients set to zero) or None when
    the target lies outside the span.  Used to extract explicit witnesses.
    """
    vectors = [list(v) for v in vectors]
    n = len(target)
    for v in vectors:
        if len(v) != n:
            raise DimensionMismatch("span vectors and target have mixed lengths")
    k = len(vectors)
    if k == 0:
        return () if not any(target) else None
    augmented = [[vectors[j][i] for j in range(k)] + [target[i]] for i in range(n)]
    rows, pivots = _reduced_rows(augmented, k + 1)
    if k in pivots:
        return None
    coeffs = [_ZERO] * k
    for row, p in zip(rows, pivots):
        coeffs[p] = row[k]
    return tuple(coeffs)
