"""Dense matrices of polynomials, as immutable tuples of tuples.

Plumbing for the factorization modules: exact products, Kronecker products
in row-major block orientation ((A kron B)[i*m+r, j*m+s] = A[i,j]*B[r,s]),
block assembly, and entrywise substitution.  Block ranks stay small (<= 2^6)
so nothing here tries to be clever.
"""

from __future__ import annotations

from .poly import Polynomial, as_poly, substitute

Matrix = tuple  # tuple of tuples of Polynomial


def from_rows(rows) -> Matrix:
    mat = tuple(tuple(as_poly(e) for e in row) for row in rows)
    if mat and any(len(row) != len(mat[0]) for row in mat):
        raise ValueError("ragged matrix")
    return mat


def shape(a: Matrix) -> tuple:
    return (len(a), len(a[0]) if a else 0)


def zeros(r: int, c: int) -> Matrix:
    z = Polynomial.zero()
    return tuple(tuple(z for _ in range(c)) for _ in range(r))


def identity(n: int) -> Matrix:
    one = Polynomial.const(1)
    z = Polynomial.zero()
    return tuple(tuple(one if i == j else z for j in range(n)) for i in range(n))


def scalar_matrix(n: int, c) -> Matrix:
    c = as_poly(c)
    z = Polynomial.zero()
    return tuple(tuple(c if i == j else z for j in range(n)) for i in range(n))


def add(a: Matrix, b: Matrix) -> Matrix:
    if shape(a) != shape(b):
        raise ValueError(f"shape mismatch {shape(a)} vs {shape(b)}")
    return tuple(
        tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b)
    )


def sub(a: Matrix, b: Matrix) -> Matrix:
    return add(a, neg(b))


def neg(a: Matrix) -> Matrix:
    return tuple(tuple(-x for x in row) for row in a)


def scale(a: Matrix, c) -> Matrix:
    c = as_poly(c)
    return tuple(tuple(x * c for x in row) for row in a)


def mul(a: Matrix, b: Matrix) -> Matrix:
    ra, ca = shape(a)
    rb, cb = shape(b)
    if ca != rb:
        raise ValueError(f"cannot multiply {shape(a)} by {shape(b)}")
    bt = tuple(zip(*b)) if b else ()
    out = []
    for row in a:
        out.append(
            tuple(
                sum((x * y for x, y in zip(row, col)), Polynomial.zero())
                for col in bt
            )
        )
    return tuple(out)


def kron(a: Matrix, b: Matrix) -> Matrix:
    ra, ca = shape(a)
    rb, cb = shape(b)
    out = []
    for i in range(ra):
        for r in range(rb):
            out.append(
                tuple(a[i][j] * b[r][s] for j in range(ca) for s in range(cb))
            )
    return tuple(out)


def block(rows_of_blocks) -> Matrix:
    """Assemble a matrix from a 2-d grid of blocks."""
    out = []
    for row_blocks in rows_of_blocks:
        heights = {shape(blk)[0] for blk in row_blocks}
        if len(heights) != 1:
            raise ValueError("block heights differ within a row")
        h = heights.pop()
        for r in range(h):
            out.append(tuple(e for blk in row_blocks for e in blk[r]))
    mat = tuple(out)
    if mat and any(len(row) != len(mat[0]) for row in mat):
        raise ValueError("block widths inconsistent")
    return mat


def map_entries(fn, a: Matrix) -> Matrix:
    return tuple(tuple(fn(e) for e in row) for row in a)


def subs_matrix(a: Matrix, mapping) -> Matrix:
    return map_entries(lambda e: substitute(e, mapping), a)


def eq(a: Matrix, b: Matrix) -> bool:
    return shape(a) == shape(b) and all(
        x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb)
    )


def is_zero(a: Matrix) -> bool:
    return all(not e for row in a for e in row)


def first_nonzero(a: Matrix):
    """(i, j, entry) of the first nonzero entry in row-major order, or None."""
    for i, row in enumerate(a):
        for j, e in enumerate(row):
            if e:
                return (i, j, e)
    return None
