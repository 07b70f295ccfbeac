"""Exact dense linear algebra over the coefficient fields.

Everything is small here (the largest routine systems are a few hundred
rows), so the implementation favours exactness and determinism over
asymptotics: plain Gauss-Jordan with the first nonzero pivot in column
order, which also makes reduced row echelon forms, and hence kernel
bases, canonical.
"""

from __future__ import annotations

import random
from typing import Iterable, List, Optional, Sequence

from .fields import Element, Field


class Matrix:
    """Dense matrix with raw field-element entries."""

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field: Field, data: Sequence[Sequence[Element]]):
        self.field = field
        self.data: List[List[Element]] = [list(row) for row in data]
        self.rows = len(self.data)
        self.cols = len(self.data[0]) if self.data else 0
        for row in self.data:
            if len(row) != self.cols:
                raise ValueError("ragged rows")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, field: Field, rows: int, cols: int) -> "Matrix":
        z = field.zero()
        return cls(field, [[z] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        z, o = field.zero(), field.one()
        return cls(field, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, field: Field, columns: Sequence[Sequence[Element]]) -> "Matrix":
        if not columns:
            return cls(field, [])
        n = len(columns[0])
        return cls(field, [[col[i] for col in columns] for i in range(n)])

    @classmethod
    def random(cls, field: Field, rows: int, cols: int, rng: random.Random) -> "Matrix":
        return cls(field, [[field.random(rng) for _ in range(cols)] for _ in range(rows)])

    # -- basics --------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.data == other.data
        )

    def __hash__(self):
        return hash((self.field, tuple(tuple(r) for r in self.data)))

    def __repr__(self) -> str:
        return f"Matrix({self.rows}x{self.cols} over {self.field.descriptor})"

    def copy(self) -> "Matrix":
        return Matrix(self.field, self.data)

    def column(self, j: int) -> List[Element]:
        return [self.data[i][j] for i in range(self.rows)]

    def columns(self) -> List[List[Element]]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "Matrix":
        return Matrix(self.field, [self.column(j) for j in range(self.cols)])

    def submatrix(self, row_idx: Iterable[int], col_idx: Iterable[int]) -> "Matrix":
        ci = list(col_idx)
        return Matrix(self.field, [[self.data[i][j] for j in ci] for i in row_idx])

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        return Matrix(self.field, [self.data[i] + other.data[i] for i in range(self.rows)])

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.cols != other.cols:
            raise ValueError("column count mismatch")
        return Matrix(self.field, self.data + other.data)

    def is_zero(self) -> bool:
        k = self.field
        return all(k.is_zero(x) for row in self.data for x in row)

    def __add__(self, other: "Matrix") -> "Matrix":
        k = self.field
        return Matrix(k, [
            [k.add(a, b) for a, b in zip(ra, rb)]
            for ra, rb in zip(self.data, other.data)
        ])

    def __sub__(self, other: "Matrix") -> "Matrix":
        k = self.field
        return Matrix(k, [
            [k.sub(a, b) for a, b in zip(ra, rb)]
            for ra, rb in zip(self.data, other.data)
        ])

    def __neg__(self) -> "Matrix":
        k = self.field
        return Matrix(k, [[k.neg(a) for a in row] for row in self.data])

    def scale(self, c: Element) -> "Matrix":
        k = self.field
        return Matrix(k, [[k.mul(c, a) for a in row] for row in self.data])

    def __mul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} * {other.rows}x{other.cols}")
        k = self.field
        zero = k.zero()
        ot = other.transpose().data
        out = []
        for row in self.data:
            new = []
            for col in ot:
                acc = zero
                for a, b in zip(row, col):
                    if not k.is_zero(a) and not k.is_zero(b):
                        acc = k.add(acc, k.mul(a, b))
                new.append(acc)
            out.append(new)
        return Matrix(k, out)

    def apply_to_vector(self, v: Sequence[Element]) -> List[Element]:
        k = self.field
        out = []
        for row in self.data:
            acc = k.zero()
            for a, b in zip(row, v):
                acc = k.add(acc, k.mul(a, b))
            out.append(acc)
        return out

    # -- elimination ---------------------------------------------------

    def rref(self) -> tuple["Matrix", List[int]]:
        """Reduced row echelon form and the list of pivot columns."""
        k = self.field
        m = [row[:] for row in self.data]
        pivots: List[int] = []
        r = 0
        for c in range(self.cols):
            pivot_row = None
            for i in range(r, self.rows):
                if not k.is_zero(m[i][c]):
                    pivot_row = i
                    break
            if pivot_row is None:
                continue
            m[r], m[pivot_row] = m[pivot_row], m[r]
            inv = k.inv(m[r][c])
            m[r] = [k.mul(inv, x) for x in m[r]]
            for i in range(self.rows):
                if i != r and not k.is_zero(m[i][c]):
                    f = m[i][c]
                    m[i] = [k.sub(x, k.mul(f, y)) for x, y in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        return Matrix(k, m), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def row_space(self) -> "Matrix":
        """Canonical basis of the row space (nonzero rows of the RREF)."""
        red, pivots = self.rref()
        return Matrix(self.field, red.data[: len(pivots)])

    def kernel_basis(self) -> "Matrix":
        """Columns spanning the kernel, in the canonical RREF convention.

        Free variables are taken in ascending column order and each is set
        to one in turn, with the pivot variables solved from the reduced
        rows.  ``self * result == 0`` exactly and the number of columns is
        the nullity.
        """
        k = self.field
        red, pivots = self.rref()
        pivot_set = set(pivots)
        free = [c for c in range(self.cols) if c not in pivot_set]
        cols = []
        for f in free:
            v = [k.zero()] * self.cols
            v[f] = k.one()
            for i, p in enumerate(pivots):
                v[p] = k.neg(red.data[i][f])
            cols.append(v)
        return Matrix.from_columns(k, cols) if cols else Matrix(k, [[] for _ in range(self.cols)])

    def solve(self, rhs: Sequence[Element]) -> Optional[List[Element]]:
        """One solution of ``self * x = rhs`` (free variables zero), or None."""
        k = self.field
        aug = Matrix(k, [self.data[i] + [rhs[i]] for i in range(self.rows)])
        red, pivots = aug.rref()
        if self.cols in pivots:
            return None
        x = [k.zero()] * self.cols
        for i, p in enumerate(pivots):
            x[p] = red.data[i][self.cols]
        return x

    def inverse(self) -> "Matrix":
        if self.rows != self.cols:
            raise ValueError("inverse of non-square matrix")
        k = self.field
        aug = self.hstack(Matrix.identity(k, self.rows))
        red, pivots = aug.rref()
        if pivots != list(range(self.rows)):
            raise ValueError("matrix is singular")
        return red.submatrix(range(self.rows), range(self.rows, 2 * self.rows))

    # -- determinants and pfaffians -------------------------------------

    def det(self) -> Element:
        """Determinant: cofactor expansion up to 4x4; above that, Gaussian
        elimination over prime fields (inversions are the expensive step
        there, so divide at pivots only) and fraction-free Bareiss
        elimination otherwise (controls intermediate growth exactly)."""
        if self.rows != self.cols:
            raise ValueError("determinant of non-square matrix")
        if self.rows <= 4:
            return det_cofactor(self.field, self.data)
        if self.field.characteristic > 0:
            return self._det_gauss()
        return self._det_bareiss()

    def _det_gauss(self) -> Element:
        k = self.field
        n = self.rows
        m = [row[:] for row in self.data]
        det = k.one()
        for c in range(n):
            pivot = next((i for i in range(c, n) if not k.is_zero(m[i][c])), None)
            if pivot is None:
                return k.zero()
            if pivot != c:
                m[c], m[pivot] = m[pivot], m[c]
                det = k.neg(det)
            det = k.mul(det, m[c][c])
            inv = k.inv(m[c][c])
            for i in range(c + 1, n):
                if k.is_zero(m[i][c]):
                    continue
                f = k.mul(inv, m[i][c])
                row_i, row_c = m[i], m[c]
                for j in range(c + 1, n):
                    row_i[j] = k.sub(row_i[j], k.mul(f, row_c[j]))
        return det

    def _det_bareiss(self) -> Element:
        k = self.field
        n = self.rows
        m = [row[:] for row in self.data]
        sign = 1
        prev = k.one()
        for c in range(n - 1):
            if k.is_zero(m[c][c]):
                swap = next((i for i in range(c + 1, n) if not k.is_zero(m[i][c])), None)
                if swap is None:
                    return k.zero()
                m[c], m[swap] = m[swap], m[c]
                sign = -sign
            for i in range(c + 1, n):
                for j in range(c + 1, n):
                    num = k.sub(k.mul(m[i][j], m[c][c]), k.mul(m[i][c], m[c][j]))
                    m[i][j] = k.div(num, prev)
            prev = m[c][c]
        d = m[n - 1][n - 1]
        return k.neg(d) if sign < 0 else d


def det_cofactor(field: Field, rows: Sequence[Sequence[Element]]) -> Element:
    """Cofactor expansion along the first row; works over any commutative ring
    whose elements support the field protocol (used for small sizes only)."""
    n = len(rows)
    if n == 0:
        return field.one()
    if n == 1:
        return rows[0][0]
    if n == 2:
        return field.sub(
            field.mul(rows[0][0], rows[1][1]), field.mul(rows[0][1], rows[1][0])
        )
    acc = field.zero()
    for j in range(n):
        if field.is_zero(rows[0][j]):
            continue
        minor = [[row[c] for c in range(n) if c != j] for row in rows[1:]]
        term = field.mul(rows[0][j], det_cofactor(field, minor))
        acc = field.add(acc, term) if j % 2 == 0 else field.sub(acc, term)
    return acc


def pfaffian4(field: Field, m: Sequence[Sequence[Element]]) -> Element:
    """Pfaffian of a 4x4 skew-symmetric matrix: m01*m23 - m02*m13 + m03*m12."""
    if len(m) != 4 or any(len(r) != 4 for r in m):
        raise ValueError("pfaffian4 needs a 4x4 matrix")
    for i in range(4):
        if not field.is_zero(m[i][i]):
            raise ValueError("matrix has a nonzero diagonal entry")
        for j in range(i + 1, 4):
            if not field.is_zero(field.add(m[i][j], m[j][i])):
                raise ValueError("matrix is not skew-symmetric")
    t1 = field.mul(m[0][1], m[2][3])
    t2 = field.mul(m[0][2], m[1][3])
    t3 = field.mul(m[0][3], m[1][2])
    return field.add(field.sub(t1, t2), t3)


def same_column_span(a: Matrix, b: Matrix) -> bool:
    """Subspace equality via RREF of the transposed spanning sets."""
    return a.transpose().row_space() == b.transpose().row_space()


def intersect_column_spans(a: Matrix, b: Matrix) -> Matrix:
    """Basis (columns) of the intersection of two column spans."""
    # x in both spans: a*u = b*v, i.e. [a | -b] (u,v)^t = 0.
    k = a.field
    combined = a.hstack(-b)
    ker = combined.kernel_basis()
    cols = []
    for j in range(ker.cols):
        u = [ker.data[i][j] for i in range(a.cols)]
        cols.append(a.apply_to_vector(u))
    if not cols:
        return Matrix(k, [[] for _ in range(a.rows)])
    got = Matrix.from_columns(k, cols)
    # prune to an independent set, canonically
    return got.transpose().row_space().transpose()
