"""Dual interpolating masks of even arity ``m = 2l >= 4``.

The equation ``sum_l a_l(z**2) phihat_l(z) = (z+1)**d gammatilde(z)`` is
reduced, through ``phihat_{l+m/2} = z phihat_l``, to a Bezout equation over
the ``m/2`` sub-symbols of arity ``m/2``. Its solutions ``abar_i`` are split
into even and odd parts to recover the ``m`` corrections.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb, factorial
from typing import Mapping, Sequence

from . import linalg
from .errors import ArityTwoImpossible, InvariantViolation, NotDivisible, SubdivisionError, ThetaNotDivisible
from .laurent import ONE, ZERO, Laurent, derivatives_at_one, divide_exact, multi_bezout
from .samples import (
    PhiSamples,
    SchemeSpec,
    build_phi_symbol,
    check_assumption1,
    check_assumption2,
    check_assumption3,
    phi_subsymbols,
)
from .scheme import (
    BezoutSolution,
    MaskResult,
    TaylorTable,
    assemble,
    composite_power_coefficients,
    minimize_support,
    root_of_unity_rows,
    symmetrize,
)
from .odd import _staged

_Z_PLUS_1 = Laurent({0: 1, 1: 1})
_Z2_MINUS_1 = Laurent({0: -1, 2: 1})


def _check_even(m: int):
    if m == 2:
        raise ArityTwoImpossible()
    if m % 2 or m < 4:
        raise ValueError(f"even construction needs even m >= 4, got {m}")


def phi_hat_subsymbols(samples: PhiSamples, m: int) -> list[Laurent]:
    """``phihat_l(z) = sum_i phi((mi+1)/2 - l) z**i`` for ``0 <= l < m``."""
    if m % 2:
        raise ValueError("modified sub-symbols are defined for even m")
    h = m // 2
    out = []
    for l in range(m):
        c = {}
        for k, v in samples.values.items():
            # phi((mi+1)/2 - l) = values[m i / 2 - l]
            if (k + l) % h == 0:
                c[(k + l) // h] = v
        out.append(Laurent(c))
    half = phi_subsymbols(samples, h) if h >= 2 else [build_phi_symbol(samples)]
    for l in range(h):
        if out[l] != half[l] or out[l + h] != out[l].shift(1):
            raise InvariantViolation("halfrel", f"modified sub-symbol {l} breaks the half-arity relation")
    return out


def gamma_tilde(samples: PhiSamples, d: int) -> Laurent:
    """``(-1)**d gamma(-z)``, checked against both defining identities."""
    gamma = check_assumption1(samples, d)
    gt = gamma.negate_variable().scale((-1) ** d)
    rhs = ONE + build_phi_symbol(samples).substitute_power(2).shift(1)
    if _Z_PLUS_1 ** d * gt != rhs:
        raise InvariantViolation("gamma-tilde", "(z+1)^d gammatilde != 1 + z phi(z^2)")
    if _Z_PLUS_1 ** d * gt + Laurent({0: -1, 1: 1}) ** d * gamma != Laurent({0: 2}):
        raise InvariantViolation("gamma-tilde", "(z+1)^d gammatilde + (z-1)^d gamma != 2")
    return gt


def _theta_row(m: int, s: int, known: Mapping[tuple[int, int], Fraction], phat_derivs, rhs_derivs):
    """Equation ``theta^{(s)}(1) = 0`` in the unknowns ``a_l^{(s)}(1)``.

    ``theta = (1 + z phi(z**2)) - sum_l a_l(z**2) phihat_l(z)``; derivatives
    of ``a_l(z**2)`` use the composite-derivative polynomials with ``f = z**2``.
    """
    row = [composite_power_coefficients(s, s, 2)(1) / factorial(s) * phat_derivs[l][0] for l in range(m)]
    acc = Fraction(0)
    for l in range(m):
        for j in range(s + 1):
            inner = Fraction(0)
            for p in range(j + 1):
                if p == s:
                    continue
                inner += known[(l, p)] / factorial(p) * composite_power_coefficients(j, p, 2)(1)
            acc += comb(s, j) * inner * phat_derivs[l][s - j]
    return row, rhs_derivs[s] - acc


def solve_taylor_system_even(spec: SchemeSpec) -> TaylorTable:
    """``a_i^{(s)}(1)`` for all ``i``; ``m-1`` root-of-unity rows plus one row at ``z = 1`` per order."""
    m, d = spec.m, spec.d
    _check_even(m)
    table = [[Fraction(1)] + [Fraction(0)] * (d - 1) for _ in range(m)]
    if d == 1:
        return TaylorTable(m, d, tuple(tuple(r) for r in table))
    phats = phi_hat_subsymbols(spec.samples, m)
    phat_derivs = [derivatives_at_one(p, d) for p in phats]
    rhs = ONE + build_phi_symbol(spec.samples).substitute_power(2).shift(1)
    rhs_derivs = derivatives_at_one(rhs, d)
    unknown = list(range(m))
    for s in range(1, d):
        known = {(i, p): table[i][p] for i in range(m) for p in range(s)}
        rows, b = root_of_unity_rows(m, s, unknown, known)
        row, val = _theta_row(m, s, known, phat_derivs, rhs_derivs)
        rows.append(row)
        b.append(val)
        x = linalg.solve_unique(rows, b)
        for i, v in zip(unknown, x):
            table[i][s] = v
    return TaylorTable(m, d, tuple(tuple(r) for r in table))


def theta_even(spec: SchemeSpec, truncations: Sequence[Laurent]) -> Laurent:
    phats = phi_hat_subsymbols(spec.samples, spec.m)
    theta = ONE + build_phi_symbol(spec.samples).substitute_power(2).shift(1)
    for t, ph in zip(truncations, phats):
        theta = theta - t.substitute_power(2) * ph
    return theta


def compute_theta_hat_even(spec: SchemeSpec, truncations: Sequence[Laurent]) -> Laurent:
    try:
        return divide_exact(theta_even(spec, truncations), _Z2_MINUS_1 ** spec.d)
    except NotDivisible as e:
        raise ThetaNotDivisible(
            f"theta(z) is not divisible by (z^2-1)^{spec.d}; remainder {e.remainder}"
        ) from None


def solve_reduced_bezout(spec: SchemeSpec, theta_hat: Laurent) -> BezoutSolution:
    h = spec.m // 2
    gens = tuple(phi_subsymbols(spec.samples, h))
    part = multi_bezout(list(gens), theta_hat)
    sol = BezoutSolution(tuple(range(h)), gens, theta_hat, tuple(part))
    assert not sol.residual()
    return sol


def split_even_odd(combined: Sequence[Laurent], m: int) -> list[Laurent]:
    """``abar_i = ahat_i(z**2) + z ahat_{i+m/2}(z**2)`` solved for the ``m`` corrections."""
    if m % 2:
        raise ValueError("m must be even")
    h = m // 2
    if len(combined) != h:
        raise ValueError(f"expected {h} combined corrections")
    out = [ZERO] * m
    for i, ab in enumerate(combined):
        e, o = ab.even_odd()
        if e.substitute_power(2) + o.substitute_power(2).shift(1) != ab:
            raise InvariantViolation("split", "even/odd recombination failed")
        out[i], out[i + h] = e, o
    return out


def combine_even_odd(split: Sequence[Laurent]) -> list[Laurent]:
    h = len(split) // 2
    return [split[i].substitute_power(2) + split[i + h].substitute_power(2).shift(1) for i in range(h)]


def truncated_subsymbols(table: TaylorTable) -> list[Laurent]:
    return [table.truncation(i) for i in range(table.m)]


def construct_even_pipeline(spec: SchemeSpec, homotopy: Mapping | None = None,
                            particular: Sequence[Laurent] | None = None,
                            width_budget: int | None = None, minimize: bool = True) -> MaskResult:
    """Full even-arity construction; ``m = 2`` is rejected before any work."""
    _check_even(spec.m)
    gamma = _staged("assumption1", check_assumption1, spec.samples, spec.d)
    _staged("assumption2", check_assumption2, spec.samples, spec.m, "even")
    _staged("assumption3", check_assumption3, spec.samples, spec.m)
    gt = _staged("gamma_tilde", gamma_tilde, spec.samples, spec.d)
    table = _staged("taylor", solve_taylor_system_even, spec)
    trunc = truncated_subsymbols(table)
    theta_hat = _staged("theta", compute_theta_hat_even, spec, trunc)
    sol = _staged("bezout", solve_reduced_bezout, spec, theta_hat)
    if particular is not None:
        sol = BezoutSolution(sol.indices, sol.generators, theta_hat, tuple(particular))
        if sol.residual():
            from .errors import NotSolvable

            e = NotSolvable(None, "supplied particular solution does not solve the reduced Bezout equation")
            e.stage = "bezout"
            raise e
    prov = {
        "taylor": [list(table.coefficients(i)) for i in range(spec.m)],
        "gamma_tilde": gt.to_pairs(),
        "particular": [p.to_pairs() for p in sol.particular],
    }
    if homotopy is not None:
        sol = sol.with_homotopy(homotopy)
        prov["homotopy"] = {f"{i},{j}": h.to_pairs() for (i, j), h in sol.homotopy.items()}
    corr = split_even_odd(sol.apply(), spec.m)
    mask = _staged("assemble", assemble, spec.m, spec.d, "even", spec.samples, trunc, corr,
                   theta_hat, gamma, prov)
    if not spec.samples.symmetric:
        return mask
    if homotopy is not None or not minimize:
        return _staged("symmetrize", symmetrize, mask)
    return _staged("minimize", minimize_support, mask, sol, width_budget)
