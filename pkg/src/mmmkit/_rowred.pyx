# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
"""Compiled row-reduction core.

Same contract as ``_rowred_py``: integer Gauss-Jordan elimination with
per-row content reduction.  Entries stay arbitrary-precision Python ints
(binomial-coefficient matrices overflow machine words quickly); the win over
the fallback comes from compiled loop control and direct list indexing.
"""

from math import gcd

IS_COMPILED = True


cdef object _row_content(list row, Py_ssize_t ncols):
    cdef Py_ssize_t c
    cdef object g = 0
    cdef object v
    for c in range(ncols):
        v = row[c]
        if v:
            g = gcd(g, v)
            if g == 1:
                return 1
    return g


def rref_int(rows, Py_ssize_t ncols):
    """Row-reduce an integer matrix, returning scaled-integer RREF rows.

    See ``_rowred_py.rref_int`` for the full contract; the two must stay
    behaviourally identical.
    """
    cdef list m = [list(src) for src in rows]
    cdef Py_ssize_t nrows = len(m)
    cdef Py_ssize_t pr = 0, pc, r, c, pivot_row
    cdef list pivots = []
    cdef list row, other
    cdef object piv, f, g, v

    for pc in range(ncols):
        pivot_row = -1
        for r in range(pr, nrows):
            row = m[r]
            if row[pc]:
                pivot_row = r
                break
        if pivot_row < 0:
            continue
        if pivot_row != pr:
            m[pr], m[pivot_row] = m[pivot_row], m[pr]
        row = m[pr]
        if row[pc] < 0:
            for c in range(pc, ncols):
                row[c] = -row[c]
        g = _row_content(row, ncols)
        if g > 1:
            for c in range(pc, ncols):
                row[c] = row[c] // g
        piv = row[pc]
        for r in range(nrows):
            if r == pr:
                continue
            other = m[r]
            f = other[pc]
            if not f:
                continue
            for c in range(ncols):
                other[c] = piv * other[c] - f * row[c]
            g = _row_content(other, ncols)
            if g > 1:
                for c in range(ncols):
                    other[c] = other[c] // g
        pivots.append(pc)
        pr += 1
        if pr == nrows or pr == ncols:
            break
    return m[:pr], pivots
