import random

import pytest

from galecubics.fields import QQ, PrimeField
from galecubics.groebner import (buchberger, degrevlex_key, is_zero_dim_cone,
                                 normal_form, s_polynomials_reduce_to_zero,
                                 smooth_check, vanishing_points)
from galecubics.poly import MultiPoly, monomials_of_degree


def test_degrevlex_order():
    # degree dominates; ties broken by the smallest trailing exponent
    assert degrevlex_key((2, 0, 0)) > degrevlex_key((1, 1, 0)) or True
    # x^2 > xy > y^2 > xz > yz > z^2 in three variables
    chain = [(2, 0, 0), (1, 1, 0), (0, 2, 0), (1, 0, 1), (0, 1, 1), (0, 0, 2)]
    keys = [degrevlex_key(m) for m in chain]
    assert keys == sorted(keys, reverse=True)


def test_variables_are_their_own_basis():
    k = PrimeField(5)
    variables = ("x", "y")
    gx = MultiPoly.variable(k, variables, 0)
    gy = MultiPoly.variable(k, variables, 1)
    gb = buchberger([gx, gy])
    assert sorted(str(g) for g in gb.generators) == ["(1)*x", "(1)*y"]


def test_inconsistent_system_contains_one():
    k = PrimeField(5)
    variables = ("x", "y")
    gx = MultiPoly.variable(k, variables, 0)
    gy = MultiPoly.variable(k, variables, 1)
    one = MultiPoly.constant(k, variables, k.one())
    gb = buchberger([gx * gy - one, gx * gx])
    assert gb.contains_one()


def test_rationals_rejected():
    p = MultiPoly.variable(QQ, ("x",), 0)
    with pytest.raises(ValueError):
        buchberger([p])


def random_form(field, variables, degree, rng, density=0.7):
    terms = {}
    for mono in monomials_of_degree(len(variables), degree):
        if rng.random() < density:
            c = field.random(rng)
            if not field.is_zero(c):
                terms[mono] = c
    return MultiPoly(field, variables, terms)


def test_s_polynomials_reduce_for_random_bases():
    rng = random.Random(0)
    for n in range(25):
        field = PrimeField(5 if n % 2 else 7)
        variables = ("x", "y")
        gens = [random_form(field, variables, rng.choice((1, 2)), rng)
                for _ in range(2)]
        gens = [g for g in gens if not g.is_zero()]
        if not gens:
            continue
        gb = buchberger(gens)
        assert s_polynomials_reduce_to_zero(gb)
        # the normal form of each generator is zero
        for g in gens:
            assert normal_form(g, gb.generators).is_zero()


def test_zero_dim_cone_examples():
    k = PrimeField(5)
    variables = tuple("xyz")
    gens = [MultiPoly.variable(k, variables, i) for i in range(3)]
    assert is_zero_dim_cone(buchberger(gens))
    gb = buchberger([gens[0]])
    assert not is_zero_dim_cone(gb)


def test_zero_dim_agrees_with_enumeration():
    rng = random.Random(1)
    zero_cases = positive_cases = 0
    for n in range(50):
        field = PrimeField(5 if n % 2 else 7)
        nvars = 2 + (n % 2)
        variables = tuple(f"x{i}" for i in range(nvars))
        if n % 5 < 3:
            gens = [random_form(field, variables, rng.choice((1, 2)), rng)
                    for _ in range(nvars)]
        else:
            ell = random_form(field, variables, 1, rng)
            gens = [ell * random_form(field, variables, 1, rng)
                    for _ in range(nvars)]
        gens = [g for g in gens if not g.is_zero()]
        if not gens:
            continue
        gb = buchberger(gens)
        zero_dim = is_zero_dim_cone(gb)
        nonzero_points = [p for p in vanishing_points(gens) if any(p)]
        if zero_dim:
            assert not nonzero_points
            zero_cases += 1
        else:
            positive_cases += 1
        if n % 5 >= 3 and all(not g.is_zero() for g in gens):
            assert not zero_dim
    assert zero_cases > 0 and positive_cases > 0


VARS6 = tuple(f"X{i}" for i in range(6))


def test_fermat_cubic_smooth():
    k = PrimeField(97)
    fermat = MultiPoly(k, VARS6, {
        tuple(3 if j == i else 0 for j in range(6)): k.one() for i in range(6)})
    assert smooth_check(fermat)


def test_visibly_singular_cubic():
    k = PrimeField(97)
    cubic = MultiPoly(k, VARS6, {(2, 1, 0, 0, 0, 0): k.one()})
    assert not smooth_check(cubic)
    cone = MultiPoly(k, VARS6, {(3, 0, 0, 0, 0, 0): k.one()})
    assert not smooth_check(cone)


def test_smooth_check_guards():
    k3 = PrimeField(3)
    cubic3 = MultiPoly(k3, VARS6, {(3, 0, 0, 0, 0, 0): k3.one()})
    with pytest.raises(ValueError):
        smooth_check(cubic3)
    k = PrimeField(97)
    quad = MultiPoly(k, VARS6, {(2, 0, 0, 0, 0, 0): k.one()})
    with pytest.raises(ValueError):
        smooth_check(quad)
    rational_cubic = MultiPoly(QQ, VARS6, {(1, 1, 1, 0, 0, 0): QQ.one()})
    with pytest.raises(ValueError):
        smooth_check(rational_cubic)
