# coding: utf-8

# # A ternary dual interpolating mask
#
# The six-point samples below are the values of a quintic interpolant at the
# half-integers. We ask for a ternary scheme whose basic limit function takes
# these values at the half-integers and is a Kronecker delta at the integers.

from fractions import Fraction

import numpy as np

from dualsubdiv import SchemeSpec, construct, load_samples
from dualsubdiv.engine import (
    blf_support,
    cascade_blf,
    convergence_indicator,
    interpolation_residuals,
    polynomial_reproduction_degree,
)
from dualsubdiv.formats import data_path

samples = load_samples(data_path("six_point_samples.json"))
print(samples)


# d = 6 asks for six vanishing derivatives of the interpolation residual at 1.

mask = construct(SchemeSpec(3, 6, samples))
print("support", mask.symbol.support(), "width", mask.width())
print("symmetric", mask.is_symmetric(), "sigma", mask.sigma)


# Half of the coefficients, the rest follow by symmetry

lo, hi = mask.symbol.support()
for k in range(lo, (lo + hi) // 2 + 1):
    print(f"{k:4d}  {mask.symbol.coeffs.get(k, Fraction(0))}")


# Sub-symbol sums are all 1, which is the arity-3 sum rule

print([a(1) for a in mask.subsymbols])


print("reproduces degree", polynomial_reproduction_degree(mask, 8))
conv = convergence_indicator(mask)
print("contractive at k =", conv.at_k, "with", float(conv.contraction))


# ## Cascade
#
# Ten levels of exact cascade; the residual at integers and half-integers
# shrinks geometrically.

print("limit function support", blf_support(mask))
for level in (4, 6, 8, 10):
    grid = cascade_blf(mask, level, "float")
    print(level, interpolation_residuals(grid, samples)["max"])


grid = cascade_blf(mask, 8, "float")
xs = np.linspace(-3, 3, 13)
print(np.round(grid.evaluate(xs), 6))
