"""Dual interpolating masks of odd arity ``m = 2l + 1``.

Steps: Taylor data of the sub-symbols at ``z = 1`` from the root-of-unity
conditions, truncated sub-symbols, the quotient ``theta_hat``, a Bezout
solve for the corrections, assembly, symmetrization and support
minimisation.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from . import linalg
from .errors import ArityTwoImpossible, NotDivisible, SubdivisionError, ThetaNotDivisible
from .laurent import ONE, ZERO, Laurent, multi_bezout, divide_exact
from .samples import (
    SchemeSpec,
    build_phi_symbol,
    check_assumption1,
    check_assumption2,
    phi_subsymbols,
)
from .scheme import (
    Z_MINUS_1,
    BezoutSolution,
    MaskResult,
    TaylorTable,
    assemble,
    minimize_support,
    phi_derivative_values,
    root_of_unity_rows,
    symmetrize,
)


def _check_odd(spec: SchemeSpec):
    if spec.m == 2:
        raise ArityTwoImpossible()
    if spec.m % 2 == 0 or spec.m < 3:
        raise ValueError(f"odd construction needs odd m >= 3, got {spec.m}")


def solve_taylor_system_odd(spec: SchemeSpec) -> TaylorTable:
    """All ``a_i^{(s)}(1)``; the pinned column comes from the samples symbol.

    For each ``s = 1 .. d-1`` the ``m-1`` unknowns ``a_i^{(s)}(1)``,
    ``i != (m+1)/2``, solve a square system whose right-hand side only uses
    orders ``p < s``.
    """
    _check_odd(spec)
    m, d, c = spec.m, spec.d, spec.center
    phi_vals = phi_derivative_values(spec.samples, d)
    unknown = [i for i in range(m) if i != c]
    table = [[Fraction(1)] + [Fraction(0)] * (d - 1) for _ in range(m)]
    table[c] = list(phi_vals)
    for s in range(1, d):
        known = {(i, p): table[i][p] for i in range(m) for p in range(s)}
        known[(c, s)] = table[c][s]
        rows, rhs = root_of_unity_rows(m, s, unknown, known)
        x = linalg.solve_unique(rows, rhs)
        for i, v in zip(unknown, x):
            table[i][s] = v
    return TaylorTable(m, d, tuple(tuple(r) for r in table))


def truncated_subsymbols(table: TaylorTable, spec: SchemeSpec) -> list[Laurent]:
    """Truncated Taylor polynomials; the pinned sub-symbol is the full ``phi``."""
    out = [table.truncation(i) for i in range(table.m)]
    out[spec.center] = build_phi_symbol(spec.samples)
    return out


def theta_odd(spec: SchemeSpec, truncations: Sequence[Laurent]) -> Laurent:
    c = spec.center
    phis = phi_subsymbols(spec.samples, spec.m)
    theta = ONE
    for i, (t, p) in enumerate(zip(truncations, phis)):
        theta = theta - t * p
    return theta


def compute_theta_hat_odd(spec: SchemeSpec, truncations: Sequence[Laurent]) -> Laurent:
    """``theta / (z-1)**d``; non-divisibility means an upstream bug."""
    try:
        return divide_exact(theta_odd(spec, truncations), Z_MINUS_1 ** spec.d)
    except NotDivisible as e:
        raise ThetaNotDivisible(
            f"theta(z) is not divisible by (z-1)^{spec.d}; remainder {e.remainder}"
        ) from None


def solve_bezout_odd(spec: SchemeSpec, theta_hat: Laurent) -> BezoutSolution:
    c = spec.center
    phis = phi_subsymbols(spec.samples, spec.m)
    idx = tuple(i for i in range(spec.m) if i != c)
    gens = tuple(phis[i] for i in idx)
    part = multi_bezout(list(gens), theta_hat)
    sol = BezoutSolution(idx, gens, theta_hat, tuple(part))
    assert not sol.residual()
    return sol


def corrections_from_solution(spec: SchemeSpec, solution: BezoutSolution, values=None) -> list[Laurent]:
    vals = solution.apply() if values is None else values
    out = [ZERO] * spec.m
    for i, v in zip(solution.indices, vals):
        out[i] = v
    return out


def assemble_symbol(spec: SchemeSpec, truncations, corrections, theta_hat=ZERO, gamma=ZERO,
                    provenance=None) -> MaskResult:
    return assemble(spec.m, spec.d, "odd", spec.samples, truncations, corrections,
                    theta_hat=theta_hat, gamma=gamma, provenance=provenance)


def _staged(name, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except SubdivisionError as e:
        if e.stage is None:
            e.stage = name
        raise


def construct_odd_pipeline(spec: SchemeSpec, homotopy: Mapping | None = None,
                           particular: Sequence[Laurent] | None = None,
                           width_budget: int | None = None, minimize: bool = True) -> MaskResult:
    """Full odd-arity construction.

    ``homotopy`` (``{(i, j): H_ij}``) and ``particular`` override the
    automatic choices so a published mask can be reproduced term by term;
    without them the shortest symmetric mask is searched for when the
    samples are symmetric.
    """
    _check_odd(spec)
    gamma = _staged("assumption1", check_assumption1, spec.samples, spec.d)
    _staged("assumption2", check_assumption2, spec.samples, spec.m, "odd")
    table = _staged("taylor", solve_taylor_system_odd, spec)
    trunc = truncated_subsymbols(table, spec)
    theta_hat = _staged("theta", compute_theta_hat_odd, spec, trunc)
    sol = _staged("bezout", solve_bezout_odd, spec, theta_hat)
    if particular is not None:
        sol = BezoutSolution(sol.indices, sol.generators, theta_hat, tuple(particular))
        if sol.residual():
            raise _stage_error("bezout", "supplied particular solution does not solve the Bezout equation")
    prov = {
        "taylor": [list(table.coefficients(i)) for i in range(spec.m)],
        "particular": [p.to_pairs() for p in sol.particular],
    }
    if homotopy is not None:
        sol = sol.with_homotopy(homotopy)
        prov["homotopy"] = {f"{i},{j}": h.to_pairs() for (i, j), h in sol.homotopy.items()}
    corr = corrections_from_solution(spec, sol)
    mask = _staged("assemble", assemble_symbol, spec, trunc, corr, theta_hat, gamma, prov)
    if not spec.samples.symmetric:
        return mask
    if homotopy is not None or not minimize:
        return _staged("symmetrize", symmetrize, mask)
    return _staged("minimize", minimize_support, mask, sol, width_budget)


def _stage_error(stage, msg):
    from .errors import NotSolvable

    e = NotSolvable(None, msg)
    e.stage = stage
    return e
