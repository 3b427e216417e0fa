from fractions import Fraction as F

import pytest

from dualsubdiv.errors import DivisionByZeroPoly, EvalAtZero, NotDivisible, NotSolvable
from dualsubdiv.laurent import (
    ONE,
    Z,
    ZERO,
    Laurent,
    as_fraction,
    cyclotomic_sum,
    decompose,
    derivatives_at_one,
    divide_exact,
    from_taylor_at_one,
    gcd_extended,
    laurent_divmod,
    multi_bezout,
    recompose,
    taylor_at_one,
)
from dualsubdiv import linalg
from dualsubdiv.errors import Inconsistent


def test_zero_coefficients_are_dropped():
    p = Laurent({-2: 0, 1: F(1, 3), 4: 0})
    assert p.coeffs == {1: F(1, 3)}
    assert Laurent({3: 0}) == ZERO
    assert not ZERO


def test_floats_are_refused():
    with pytest.raises(TypeError):
        Laurent({0: 0.5})
    assert as_fraction("3/4") == F(3, 4)


def test_support_and_width():
    p = Laurent({-3: 1, 2: -1})
    assert p.support() == (-3, 2)
    assert p.width() == 6
    assert p.to_list() == [1, 0, 0, 0, 0, -1]


def test_arithmetic():
    p = Laurent({-1: 1, 0: 2})
    q = Laurent({1: 1, 0: -1})
    assert p * q == Laurent({-1: -1, 0: -1, 1: 2})
    assert p + q - p == q
    assert (Z ** -2) * (Z ** 2) == ONE
    assert p ** 0 == ONE


def test_eval_at_zero_with_negative_exponent_raises():
    with pytest.raises(EvalAtZero):
        Laurent({-1: 1})(0)
    assert Laurent({0: 5, 2: 1})(0) == 5


def test_evaluation_is_exact():
    p = Laurent({-2: 3, 1: F(1, 7)})
    assert p(F(1, 2)) == 12 + F(1, 14)


def test_derivative_of_negative_power():
    p = Laurent({-2: 1})
    assert p.derivative() == Laurent({-3: -2})
    assert p.derivative(2) == Laurent({-4: 6})


def test_decompose_recompose_both_signs():
    p = Laurent({-5: 1, -1: 2, 0: 3, 4: F(1, 2), 7: -1})
    for m in (2, 3, 4):
        for sign in (1, -1):
            parts = decompose(p, m, sign)
            assert len(parts) == m
            assert recompose(parts, sign) == p


def test_decompose_negative_convention():
    # phi(z) = sum_i phi_i(z^m) z^-i
    phi = Laurent({-1: 1, 0: 2, 1: 3})
    p0, p1, p2 = decompose(phi, 3, -1)
    assert p0 == Laurent({0: 2})
    assert p1 == Laurent({0: 1})
    assert p2 == Laurent({1: 3})


def test_divmod_and_exact_division():
    q = Laurent({0: -1, 1: 1})
    p = q * Laurent({-2: 3, 0: 1}) + Laurent({-2: 5})
    s, r = laurent_divmod(p, q)
    assert s * q + r == p
    with pytest.raises(NotDivisible):
        divide_exact(p, q)
    assert divide_exact(q * q, q) == q
    with pytest.raises(DivisionByZeroPoly):
        laurent_divmod(p, ZERO)


def test_cyclotomic_sum_divides_zm_minus_1():
    for m in (2, 3, 5):
        assert cyclotomic_sum(m) * Laurent({0: -1, 1: 1}) == Laurent({0: -1, m: 1})


def test_gcd_is_normalized_and_bezout_holds():
    common = Laurent({0: 1, 1: 2})
    p = common * Laurent({-3: 1, 0: 4})
    q = common * Laurent({0: 1, 2: -1}) * Laurent({5: 7})
    g, u, v = gcd_extended(p, q)
    assert g == Laurent({0: F(1, 2), 1: 1})
    assert u * p + v * q == g


def test_gcd_ignores_monomial_factors():
    g, _, _ = gcd_extended(Laurent({-4: 2}), Laurent({3: 1, 4: 1}))
    assert g == ONE


def test_multi_bezout_three_generators():
    gens = [Laurent({0: 1, 1: 1}), Laurent({0: 1, 2: 1}), Laurent({-1: 1, 0: -3})]
    target = Laurent({-2: 1, 3: F(2, 5)})
    sol = multi_bezout(gens, target)
    assert sum((u * g for u, g in zip(sol, gens)), ZERO) == target


def test_multi_bezout_not_solvable():
    c = Laurent({0: 1, 1: 1})
    with pytest.raises(NotSolvable):
        multi_bezout([c * c, c * Laurent({0: 2, 1: 1})], ONE)


def test_taylor_round_trip():
    p = Laurent({-3: 2, -1: F(1, 3), 2: 5})
    coeffs = taylor_at_one(p, p.width() + 4)
    # a Laurent polynomial is not a finite series in z - 1, but the
    # truncation agrees with p to the requested order
    t = from_taylor_at_one(coeffs[:4])
    assert taylor_at_one(t, 4) == coeffs[:4]
    assert derivatives_at_one(p, 3) == [p(1), p.derivative()(1), p.derivative(2)(1)]


def test_rref_and_solve():
    rows = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
    x, nullity = linalg.solve(rows, [6, 12, 2])
    assert nullity == 1
    assert [sum(F(a) * b for a, b in zip(r, x)) for r in rows] == [6, 12, 2]
    with pytest.raises(Inconsistent):
        linalg.solve(rows, [6, 13, 2])
    with pytest.raises(Inconsistent):
        linalg.solve_unique(rows, [6, 12, 2])
