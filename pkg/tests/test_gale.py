import random

import pytest

from galecubics.fields import QQ, PrimeField
from galecubics.gale import (DEFAULT_VARIABLES, DegenerateTupleError,
                             NonSyzygeticEquation, composition_is_zero,
                             gale_dual, scroll_membership, scroll_point)
from galecubics.poly import MultiPoly


def unit_form(field, idx, variables=DEFAULT_VARIABLES):
    coeffs = [field.zero()] * 6
    coeffs[idx] = field.one()
    return MultiPoly.linear_form(field, variables, coeffs)


def diagonal_tuple(field, sign=1):
    z = MultiPoly.zero(field, DEFAULT_VARIABLES)
    m = [[unit_form(field, 0), z, z],
         [z, unit_form(field, 1), z],
         [z, z, unit_form(field, 2)]]
    ls = [unit_form(field, 3), unit_form(field, 4), unit_form(field, 5)]
    return NonSyzygeticEquation(field, DEFAULT_VARIABLES, m, ls, sign)


def test_coefficient_map_of_diagonal_tuple():
    eq = diagonal_tuple(QQ)
    c = eq.coefficient_matrix()
    assert c.rank() == 6
    nonzero_cols = [j for j in range(12)
                    if any(x != 0 for x in c.column(j))]
    assert len(nonzero_cols) == 6


def test_coefficient_map_zero_l3_column():
    field = QQ
    eq = diagonal_tuple(field)
    eq.l_forms[2] = MultiPoly.zero(field, DEFAULT_VARIABLES)
    c = eq.coefficient_matrix()
    assert all(field.is_zero(x) for x in c.column(11))


def test_cubic_polynomial_examples():
    field = QQ
    eq = diagonal_tuple(field)
    cubic = eq.cubic_polynomial()
    assert cubic == MultiPoly(field, DEFAULT_VARIABLES, {
        (1, 1, 1, 0, 0, 0): field.one(), (0, 0, 0, 1, 1, 1): field.one()})
    zero = MultiPoly.zero(field, DEFAULT_VARIABLES)
    eq2 = NonSyzygeticEquation(field, DEFAULT_VARIABLES,
                               [[zero] * 3 for _ in range(3)],
                               list(eq.l_forms), -1)
    assert eq2.cubic_polynomial() == MultiPoly(field, DEFAULT_VARIABLES, {
        (0, 0, 0, 1, 1, 1): field.from_int(-1)})


def test_gale_dual_rejects_degenerate():
    field = QQ
    eq = diagonal_tuple(field)
    # make two equal matrix rows and L forms inside their span
    eq.m[1] = [p for p in eq.m[0]]
    eq.m[2] = [p for p in eq.m[0]]
    eq.l_forms[0] = eq.m[0][0]
    eq.l_forms[1] = eq.m[0][0]
    eq.l_forms[2] = eq.m[0][0]
    with pytest.raises(DegenerateTupleError):
        gale_dual(eq)


@pytest.mark.parametrize("fieldname", ["rationals", "prime:101"])
def test_gale_composition_and_double_dual(fieldname):
    from galecubics.fields import parse_field
    field = parse_field(fieldname)
    rng = random.Random(42)
    for _ in range(25):
        eq = NonSyzygeticEquation.random(field, rng)
        dual = gale_dual(eq)
        assert dual.sign == -eq.sign
        assert composition_is_zero(eq, dual)
        ddual = gale_dual(dual)
        assert (eq.coefficient_matrix().row_space()
                == ddual.coefficient_matrix().row_space())


def test_l_permutation_tracks_through_dual():
    # reordering the input L forms reorders the dual slots the same way: the
    # input cubic is unchanged, the permuted original dual still pairs to
    # zero with the permuted tuple, and the associated subspaces agree when
    # the choice of L form is carried through the permutation
    from galecubics.lagrangian import lagrangian_from_gale
    field = PrimeField(101)
    rng = random.Random(1)
    for _ in range(4):
        eq = NonSyzygeticEquation.random(field, rng)
        perm = [2, 0, 1]
        eq_perm = eq.permute_l_forms(perm)
        assert eq_perm.cubic_polynomial() == eq.cubic_polynomial()
        dual = gale_dual(eq)
        assert composition_is_zero(eq_perm, dual.permute_l_forms(perm))
        for j in range(3):
            a_orig, _ = lagrangian_from_gale(eq, perm[j] + 1)
            a_perm, _ = lagrangian_from_gale(eq_perm, j + 1)
            assert a_orig.same_subspace(a_perm)


def test_dual_cubic_nonzero_generically():
    field = PrimeField(101)
    rng = random.Random(2)
    hits = 0
    for _ in range(20):
        eq = NonSyzygeticEquation.random(field, rng)
        dual = gale_dual(eq)
        if not dual.cubic_polynomial().is_zero() and dual.is_valid():
            hits += 1
    assert hits >= 18   # generic behaviour, reported rather than guaranteed


def test_scroll_membership_actual_rows():
    field = QQ
    eq = diagonal_tuple(field)
    for i in (1, 2, 3):
        for pair in ([[1, 0, 0], [0, 1, 0]], [[1, 0, 0], [0, 0, 1]],
                     [[0, 1, 0], [0, 0, 1]]):
            cert = scroll_membership(eq, i, pair)
            assert cert is not None


def test_scroll_membership_generalized_rows():
    field = PrimeField(101)
    rng = random.Random(3)
    for _ in range(5):
        eq = NonSyzygeticEquation.random(field, rng)
        t = field.random(rng)
        pair = [[field.one(), t, field.zero()],
                [field.zero(), field.one(), field.zero()]]
        assert scroll_membership(eq, 1, pair) is not None


def test_scroll_membership_rejects_dependent_rows():
    eq = diagonal_tuple(QQ)
    with pytest.raises(ValueError):
        scroll_membership(eq, 1, [[1, 2, 0], [2, 4, 0]])


def test_random_cubic_fails_scroll_membership():
    field = PrimeField(101)
    rng = random.Random(4)
    eq = NonSyzygeticEquation.random(field, rng)
    pair = [[field.one(), field.zero(), field.zero()],
            [field.zero(), field.one(), field.zero()]]
    other = NonSyzygeticEquation.random(field, rng)
    # check the other cubic against eq's scroll by evaluating at a scroll point
    pt = scroll_point(eq, 1, pair, rng)
    assert pt is not None
    assert field.is_zero(eq.cubic_polynomial().evaluate(pt))
    if not field.is_zero(other.cubic_polynomial().evaluate(pt)):
        factors = [(q, 1) for q in _scroll_minors(eq, pair)]
        factors.append((eq.l_forms[0], 2))
        from galecubics.gale import solve_multiplier_system
        assert solve_multiplier_system(field, eq.variables,
                                       other.cubic_polynomial(), factors) is None


def _scroll_minors(eq, rowpair):
    field = eq.field
    rows = []
    for coeffs in rowpair:
        row = []
        for j in range(3):
            acc = MultiPoly.zero(field, eq.variables)
            for r in range(3):
                acc = acc + eq.m[r][j].scale(coeffs[r])
            row.append(acc)
        rows.append(row)
    out = []
    for a, b in ((0, 1), (0, 2), (1, 2)):
        out.append(rows[0][a] * rows[1][b] - rows[0][b] * rows[1][a])
    return out


def test_validity_flag():
    field = QQ
    eq = diagonal_tuple(field)
    assert eq.is_valid()
    eq.l_forms[1] = eq.l_forms[0]
    eq.l_forms[2] = eq.l_forms[0].scale(field.from_int(3))
    assert not eq.is_valid()
