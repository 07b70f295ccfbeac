import random

import pytest

from galecubics.fields import QQ, PrimeField
from galecubics.linalg import (Matrix, det_cofactor, intersect_column_spans,
                               pfaffian4, same_column_span)

from conftest import ALL_FIELDS


def test_kernel_of_identity_is_empty():
    k = QQ
    assert Matrix.identity(k, 6).kernel_basis().cols == 0


def test_kernel_of_zero_matrix_is_identity():
    k = QQ
    ker = Matrix.zero(k, 6, 12).kernel_basis()
    assert ker.cols == 12
    assert ker == Matrix.identity(k, 12)


def test_kernel_canonical_convention():
    # pivots in columns 0 and 1; free columns get a unit entry in turn
    k = QQ
    m = Matrix(k, [[k.one(), k.zero(), k.from_int(2), k.from_int(3)],
                   [k.zero(), k.one(), k.from_int(4), k.from_int(5)]])
    ker = m.kernel_basis()
    assert ker.cols == 2
    assert ker.column(0) == [k.from_int(-2), k.from_int(-4), k.one(), k.zero()]
    assert ker.column(1) == [k.from_int(-3), k.from_int(-5), k.zero(), k.one()]


@pytest.mark.parametrize("field", ALL_FIELDS, ids=lambda f: f.descriptor)
def test_kernel_random(field):
    rng = random.Random(7)
    for _ in range(200):
        m = Matrix.random(field, 6, 12, rng)
        ker = m.kernel_basis()
        assert (m * ker).is_zero()
        assert ker.rank() == ker.cols == 12 - m.rank()


def test_kernel_rank6_over_prime101():
    field = PrimeField(101)
    rng = random.Random(11)
    found = 0
    while found < 50:
        m = Matrix.random(field, 6, 12, rng)
        if m.rank() != 6:
            continue
        ker = m.kernel_basis()
        assert ker.cols == 6
        assert (m * ker).is_zero()
        found += 1


def naive_row_reduce_rank(field, data):
    rows = [list(r) for r in data]
    rank = 0
    cols = len(rows[0]) if rows else 0
    for c in range(cols):
        pivot = next((i for i in range(rank, len(rows))
                      if not field.is_zero(rows[i][c])), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = field.inv(rows[rank][c])
        rows[rank] = [field.mul(inv, x) for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and not field.is_zero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [field.sub(x, field.mul(f, y))
                           for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def test_rank_against_independent_reduction():
    field = PrimeField(101)
    rng = random.Random(13)
    for _ in range(30):
        m = Matrix.random(field, 5, 8, rng)
        assert m.rank() == naive_row_reduce_rank(field, m.data)


def test_det_examples():
    k = QQ
    assert Matrix.identity(k, 3).det() == k.one()
    diag = Matrix(k, [[k.from_int(2), k.zero(), k.zero()],
                      [k.zero(), k.from_int(3), k.zero()],
                      [k.zero(), k.zero(), k.from_int(5)]])
    assert diag.det() == k.from_int(30)
    with pytest.raises(ValueError):
        Matrix.zero(k, 2, 3).det()


@pytest.mark.parametrize("field", ALL_FIELDS, ids=lambda f: f.descriptor)
def test_det_matches_cofactor_oracle(field):
    rng = random.Random(17)
    for n in (2, 3, 4, 5, 6):
        for _ in range(8):
            m = Matrix.random(field, n, n, rng)
            assert m.det() == det_cofactor(field, m.data)


def test_det_multiplicative():
    field = PrimeField(101)
    rng = random.Random(19)
    for _ in range(20):
        a = Matrix.random(field, 5, 5, rng)
        b = Matrix.random(field, 5, 5, rng)
        assert (a * b).det() == field.mul(a.det(), b.det())


def _skew4(field, rng):
    m = Matrix.zero(field, 4, 4)
    for i in range(4):
        for j in range(i + 1, 4):
            c = field.random(rng)
            m.data[i][j] = c
            m.data[j][i] = field.neg(c)
    return m


def test_pfaffian_block_diagonal():
    k = QQ
    a, b = k.from_int(3), k.from_int(7)
    m = Matrix.zero(k, 4, 4)
    m.data[0][1], m.data[1][0] = a, k.neg(a)
    m.data[2][3], m.data[3][2] = b, k.neg(b)
    assert pfaffian4(k, m.data) == k.mul(a, b)
    assert pfaffian4(k, Matrix.zero(k, 4, 4).data) == k.zero()


@pytest.mark.parametrize("fieldname", ["rationals", "prime:97"])
def test_pfaffian_squares_to_det(fieldname):
    from galecubics.fields import parse_field
    field = parse_field(fieldname)
    rng = random.Random(23)
    for _ in range(100):
        m = _skew4(field, rng)
        pf = pfaffian4(field, m.data)
        assert field.mul(pf, pf) == m.det()


def test_pfaffian_rejects_non_skew():
    k = QQ
    with pytest.raises(ValueError):
        pfaffian4(k, Matrix.identity(k, 4).data)


def test_solve_and_inverse():
    field = PrimeField(101)
    rng = random.Random(29)
    for _ in range(20):
        m = Matrix.random(field, 6, 6, rng)
        if m.rank() < 6:
            continue
        x = [field.random(rng) for _ in range(6)]
        rhs = m.apply_to_vector(x)
        sol = m.solve(rhs)
        assert m.apply_to_vector(sol) == rhs
        assert m * m.inverse() == Matrix.identity(field, 6)


def test_column_span_helpers():
    field = PrimeField(101)
    rng = random.Random(31)
    a = Matrix.random(field, 8, 3, rng)
    shuffle = Matrix.random(field, 3, 3, rng)
    while shuffle.rank() < 3:
        shuffle = Matrix.random(field, 3, 3, rng)
    assert same_column_span(a, a * shuffle)
    b = Matrix.random(field, 8, 3, rng)
    inter = intersect_column_spans(a.hstack(b), b)
    assert same_column_span(inter, b)
