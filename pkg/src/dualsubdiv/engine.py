"""Applying and checking masks.

The subdivision operator, cascade evaluation of the basic limit function,
the direct check of the defining interpolation system, polynomial
reproduction, a contractivity test for convergence and an independent
solver for finite slices of the bi-infinite linear system.

Two parametrizations of level-``k`` data are used. The dual nodes are
``t_i = m**-k (i + sigma/(m-1))``. Centering them at the position of the
initial delta, ``x = t - sigma/(m-1)``, gives the abscissa on which the basic
limit function is symmetric, equals delta at the integers and the samples at
the half integers.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Sequence

import numpy as np

from .errors import Inconsistent, NotDivisible, NotFactorable
from .laurent import Laurent, cyclotomic_sum, decompose, divide_exact
from .samples import PhiSamples, SchemeSpec
from .scheme import MaskResult

EXTENSIONS = ("zero", "window", "periodic")


@dataclass(frozen=True)
class ControlData:
    """Points ``p_i`` for ``i = offset, offset+1, ...``.

    ``extension`` says what lies outside the stored range: zeros, nothing
    known (outputs are then restricted to fully supported indices) or a
    periodic repetition (closed polygons).
    """

    points: tuple
    offset: int = 0
    extension: str = "zero"

    def __post_init__(self):
        pts = tuple(tuple(p) if isinstance(p, (tuple, list)) else (p,) for p in self.points)
        if not pts:
            raise ValueError("control data must be nonempty")
        if len({len(p) for p in pts}) != 1:
            raise ValueError("control points must share one dimension")
        if self.extension not in EXTENSIONS:
            raise ValueError(f"extension must be one of {EXTENSIONS}")
        object.__setattr__(self, "points", pts)

    @classmethod
    def scalar(cls, values: Sequence, offset: int = 0, extension: str = "zero") -> "ControlData":
        return cls(tuple((v,) for v in values), offset, extension)

    @property
    def dim(self) -> int:
        return len(self.points[0])

    def __len__(self) -> int:
        return len(self.points)

    @property
    def indices(self) -> range:
        return range(self.offset, self.offset + len(self.points))

    def component(self, c: int) -> list:
        return [p[c] for p in self.points]

    def values(self) -> list:
        """Scalar values of one-dimensional data."""
        if self.dim != 1:
            raise ValueError("not scalar data")
        return self.component(0)


def _mask_coeffs(mask: MaskResult, mode: str):
    lo, hi = mask.symbol.support()
    vals = mask.symbol.to_list(lo, hi)
    if mode == "float":
        vals = [float(v) for v in vals]
    elif mode != "exact":
        raise ValueError("mode must be 'exact' or 'float'")
    return lo, vals


def _apply(m, lo, a, p, offset, out_range, periodic=False):
    n = len(p)
    out = []
    zero = a[0] * 0
    for i in out_range:
        # j with lo <= i - m j <= lo + len(a) - 1
        jmin = -((lo + len(a) - 1 - i) // m)
        jmax = (i - lo) // m
        acc = zero
        for j in range(jmin, jmax + 1):
            if periodic:
                acc += a[i - m * j - lo] * p[(j - offset) % n]
            elif offset <= j < offset + n:
                acc += a[i - m * j - lo] * p[j - offset]
        out.append(acc)
    return out


def subdivide_once(mask: MaskResult, data: ControlData, mode: str = "exact") -> ControlData:
    """``(S_a p)_i = sum_j a_{i-mj} p_j``, componentwise."""
    m = mask.m
    lo, a = _mask_coeffs(mask, mode)
    hi = lo + len(a) - 1
    n, off = len(data), data.offset
    if data.extension == "zero":
        rng = range(m * off + lo, m * (off + n - 1) + hi + 1)
        new_off = m * off + lo
    elif data.extension == "window":
        first, last = m * (off - 1) + hi + 1, m * (off + n) + lo - 1
        if last < first:
            raise ValueError("control data shorter than the mask stencil")
        rng = range(first, last + 1)
        new_off = first
    else:
        rng = range(m * off, m * (off + n))
        new_off = m * off
    periodic = data.extension == "periodic"
    cols = []
    for c in range(data.dim):
        comp = data.component(c)
        if mode == "float":
            comp = [float(v) for v in comp]
        cols.append(_apply(m, lo, a, comp, off, rng, periodic))
    return ControlData(tuple(zip(*cols)), new_off, data.extension)


def refine_polygon(mask: MaskResult, polygon: ControlData, levels: int, mode: str = "exact") -> ControlData:
    if levels < 1:
        raise ValueError("levels must be >= 1")
    out = polygon
    for _ in range(levels):
        out = subdivide_once(mask, out, mode)
    return out


# -- cascade -----------------------------------------------------------------

@dataclass(frozen=True)
class CascadeGrid:
    """Level-``k`` cascade values ``values[n]`` at index ``offset + n``."""

    m: int
    level: int
    sigma: Fraction
    offset: int
    values: object = field(repr=False)
    exact: bool = True

    def __len__(self) -> int:
        return len(self.values)

    @property
    def indices(self) -> range:
        return range(self.offset, self.offset + len(self.values))

    def t(self, i: int) -> Fraction:
        """Dual node ``m**-k (i + sigma/(m-1))``."""
        return (i + self.sigma / (self.m - 1)) / Fraction(self.m) ** self.level

    def x(self, i: int) -> Fraction:
        """Centered abscissa ``t_i - sigma/(m-1)``."""
        return self.t(i) - self.sigma / (self.m - 1)

    def x_array(self) -> np.ndarray:
        h = float(self.m) ** -self.level
        s = float(self.sigma / (self.m - 1))
        return (np.arange(self.offset, self.offset + len(self.values)) + s) * h - s

    def as_float(self) -> np.ndarray:
        if self.exact:
            return np.array([float(v) for v in self.values])
        return np.asarray(self.values)

    def at(self, i: int):
        k = i - self.offset
        if 0 <= k < len(self.values):
            return self.values[k]
        return Fraction(0) if self.exact else 0.0

    def evaluate(self, x) -> np.ndarray:
        """Piecewise-linear interpolant of the grid at centered abscissae ``x``."""
        return np.interp(np.asarray(x, dtype=float), self.x_array(), self.as_float(), left=0.0, right=0.0)


def cascade_blf(mask: MaskResult, levels: int, mode: str = "exact") -> CascadeGrid:
    """``levels`` subdivision steps applied to delta.

    The level-``k`` sequence has symbol ``P_k(z) = a(z) P_{k-1}(z**m)``.
    Exact mode keeps integer numerators over the power ``D**k`` of the
    common denominator of the mask; float mode uses numpy convolution.
    """
    if levels < 1:
        raise ValueError("levels must be >= 1")
    m = mask.m
    lo, coeffs = _mask_coeffs(mask, "exact")
    if mode == "exact":
        den = lcm(*(c.denominator for c in coeffs))
        a = [int(c * den) for c in coeffs]
        p = [1]
        for _ in range(levels):
            up = [0] * ((len(p) - 1) * m + 1)
            up[::m] = p
            p = _int_convolve(up, a)
        scale = Fraction(1, den ** levels)
        values = [v * scale for v in p]
        exact = True
    elif mode == "float":
        a = np.array([float(c) for c in coeffs])
        p = np.ones(1)
        for _ in range(levels):
            up = np.zeros((len(p) - 1) * m + 1)
            up[::m] = p
            p = np.convolve(up, a)
        values = p
        exact = False
    else:
        raise ValueError("mode must be 'exact' or 'float'")
    offset = lo * (m ** levels - 1) // (m - 1)
    return CascadeGrid(m, levels, mask.sigma, offset, values, exact)


def _int_convolve(u: list[int], a: list[int]) -> list[int]:
    out = [0] * (len(u) + len(a) - 1)
    for i, x in enumerate(u):
        if x:
            for j, y in enumerate(a):
                out[i + j] += x * y
    return out


def blf_support(mask: MaskResult) -> tuple[Fraction, Fraction]:
    """Support ``[(lo - sigma)/(m-1), (hi - sigma)/(m-1)]`` in the centered abscissa."""
    lo, hi = mask.symbol.support()
    s, m1 = mask.sigma, mask.m - 1
    return (lo - s) / m1, (hi - s) / m1


def interpolation_residuals(grid: CascadeGrid, samples: PhiSamples, span: int | None = None) -> dict:
    """Max deviation from delta at the integers and from the samples at the half integers."""
    if span is None:
        xs = grid.x_array()
        span = int(np.ceil(max(abs(xs[0]), abs(xs[-1])))) + 1
    ints = np.arange(-span, span + 1)
    f_int = grid.evaluate(ints)
    err_int = np.abs(f_int - (ints == 0))
    halves = np.arange(-span, span)
    target = np.array([float(samples(int(l))) for l in halves])
    err_half = np.abs(grid.evaluate(halves + 0.5) - target)
    return {"integer": float(err_int.max()), "half": float(err_half.max()),
            "max": float(max(err_int.max(), err_half.max()))}


# -- algebraic verification -------------------------------------------------------

def _sample_convolution(symbol: Laurent, samples: PhiSamples) -> dict:
    """``c_r = sum_beta a_beta phi(1/2 + r - beta)`` for every ``r``."""
    out: dict = {}
    for b, ab in symbol.items():
        for l, v in samples.values.items():
            out[b + l] = out.get(b + l, Fraction(0)) + ab * v
    return out


def verify_interpolation_system(mask: MaskResult, samples: PhiSamples) -> dict:
    """Check the defining equations directly from the mask coefficients.

    Odd ``m``: ``a_{mi+(m+1)/2} = phi(i + 1/2)`` and, for ``alpha`` in ``2mZ``,
    ``sum_beta a_beta phi((alpha+1)/2 - beta) = delta_{alpha,0}``.
    Even ``m``: for ``alpha`` in ``mZ`` the same sum equals ``1`` at
    ``alpha = 0``, ``phi(alpha/(2m))`` for ``alpha`` an odd multiple of ``m``
    and ``0`` otherwise. Residuals are exact and reported, never raised.
    """
    m, a = mask.m, mask.symbol
    conv = _sample_convolution(a, samples)  # index r = alpha / 2
    checks = {}
    if m % 2:
        c = (m + 1) // 2
        lo, hi = a.support()
        idx = set(range(-((c - lo) // m), (hi - c) // m + 1)) | set(samples.values)
        res = {m * i + c: a[m * i + c] - samples(i) for i in sorted(idx)}
        checks["extraction"] = {k: v for k, v in res.items() if v}
        res = {}
        for r, v in conv.items():
            if r % m == 0:
                res[2 * r] = v - (1 if r == 0 else 0)
        if 0 not in conv:
            res[0] = Fraction(-1)
        checks["product_sum"] = {k: v for k, v in sorted(res.items()) if v}
    else:
        h = m // 2
        targets = {0: Fraction(1)}
        for l, v in samples.values.items():
            targets[h * (2 * l + 1)] = v
        res = {}
        for r in sorted(set(k for k in conv if k % h == 0) | set(targets)):
            res[2 * r] = conv.get(r, Fraction(0)) - targets.get(r, Fraction(0))
        checks["product_sum"] = {k: v for k, v in sorted(res.items()) if v}
    failed = [name for name, r in checks.items() if r]
    return {
        "passed": not failed,
        "first_failure": failed[0] if failed else None,
        "residuals": checks,
        "max_residual": max((abs(v) for r in checks.values() for v in r.values()), default=Fraction(0)),
    }


def _reproduces(mask: MaskResult, degree: int) -> bool:
    m = mask.m
    s = mask.sigma / (m - 1)
    w = mask.width() + 2 * m
    nodes = [Fraction(j) + s for j in range(-w, w + 1)]
    data = ControlData.scalar([t ** degree for t in nodes], -w, "window")
    out = subdivide_once(mask, data)
    return all(v == ((i + s) / m) ** degree for i, v in zip(out.indices, out.values()))


def polynomial_reproduction_degree(mask: MaskResult, max_degree: int = 10) -> int:
    """Largest ``r <= max_degree`` such that all monomials of degree ``<= r`` are reproduced.

    Returns ``-1`` when even constants are not reproduced.
    """
    r = -1
    while r < max_degree and _reproduces(mask, r + 1):
        r += 1
    return r


@dataclass(frozen=True)
class ConvergenceReport:
    certified: bool
    contraction: float
    at_k: int
    norms: tuple = ()

    def __iter__(self):
        return iter((self.certified, self.contraction, self.at_k))


def difference_symbol(mask: MaskResult) -> Laurent:
    """``c(z)`` with ``a(z) = (1 + z + ... + z**(m-1)) c(z)``."""
    try:
        return divide_exact(mask.symbol, cyclotomic_sum(mask.m))
    except NotDivisible:
        raise NotFactorable(f"1 + z + ... + z^{mask.m - 1} does not divide a(z)") from None


def convergence_indicator(mask: MaskResult, max_iterations: int = 6) -> ConvergenceReport:
    """First ``k`` with ``||S_c^k||_inf < 1`` for the difference scheme ``c``.

    ``c^{[k]}(z) = c(z) c^{[k-1]}(z**m)`` and the norm is the largest
    absolute row sum over the ``m**k`` residue classes.
    """
    m = mask.m
    c = np.array([float(v) for v in difference_symbol(mask).to_list()])
    ck = np.ones(1)
    norms = []
    for k in range(1, max_iterations + 1):
        up = np.zeros((len(ck) - 1) * m + 1)
        up[::m] = ck
        ck = np.convolve(c, up)
        q = m ** k
        pad = (-len(ck)) % q
        # the residue classes are taken relative to the low end, which only permutes them
        mu = float(np.abs(np.concatenate([ck, np.zeros(pad)])).reshape(-1, q).sum(axis=0).max())
        norms.append(mu)
        if mu < 1:
            return ConvergenceReport(True, mu, k, tuple(norms))
    return ConvergenceReport(False, min(norms), max_iterations, tuple(norms))


# -- independent oracle -----------------------------------------------------------

@dataclass(frozen=True)
class TruncatedSystem:
    """Rows ``sum_k rows[r][k - window[0]] a_k = rhs[r]`` over the window."""

    window: tuple[int, int]
    rows: tuple
    rhs: tuple
    labels: tuple = ()

    def residual(self, symbol: Laurent) -> list[Fraction]:
        lo, hi = self.window
        if symbol and (symbol.low < lo or symbol.high > hi):
            raise ValueError("symbol does not fit in the window")
        x = symbol.to_list(lo, hi)
        return [sum((c * v for c, v in zip(row, x) if c), Fraction(0)) - b for row, b in zip(self.rows, self.rhs)]

    def satisfied_by(self, symbol: Laurent) -> bool:
        return not any(self.residual(symbol))


@dataclass(frozen=True)
class OracleSolution:
    system: TruncatedSystem
    particular: Laurent
    nullity: int


def truncated_system(spec: SchemeSpec, window: tuple[int, int], symmetric: bool = False) -> TruncatedSystem:
    """Finite slice of the interpolation system plus sum rules of order ``d``.

    Rows whose unknowns all fall outside the window are kept when their
    right-hand side is nonzero, so that an impossible window shows up as an
    inconsistency.
    """
    lo, hi = window
    if hi < lo:
        raise ValueError("empty window")
    m, d, phi = spec.m, spec.d, spec.samples
    n = hi - lo + 1
    rows, rhs, labels = [], [], []

    def add(row, b, label):
        if any(row) or b:
            rows.append(tuple(row))
            rhs.append(Fraction(b))
            labels.append(label)

    plo, phi_hi = min(phi.values), max(phi.values)
    if m % 2:
        c = (m + 1) // 2
        for i in range(min(-((c - lo) // m), plo), max((hi - c) // m, phi_hi) + 1):
            k = m * i + c
            row = [Fraction(0)] * n
            if lo <= k <= hi:
                row[k - lo] = Fraction(1)
            add(row, phi(i), f"extract {k}")
        step, target = m, (lambda r: 1 if r == 0 else 0)
    else:
        h = m // 2
        step = h

        def target(r):
            if r == 0:
                return 1
            q, rem = divmod(r, h)
            return phi((q - 1) // 2) if q % 2 else 0
    rmin, rmax = lo + plo, hi + phi_hi
    for r in range(rmin - (rmin % step), rmax + step, step):
        row = [Fraction(0)] * n
        for b in range(lo, hi + 1):
            row[b - lo] = phi(r - b)
        add(row, target(r), f"alpha {2 * r}")
    if 0 not in range(rmin - (rmin % step), rmax + step, step):
        add([Fraction(0)] * n, 1, "alpha 0")
    # sub-symbol sums and equal moments across residue classes
    for res in range(m):
        add([Fraction(1) if (b - res) % m == 0 else 0 for b in range(lo, hi + 1)], 1, f"sum {res}")
    for s in range(1, d):
        ref = [Fraction(b) ** s if b % m == 0 else Fraction(0) for b in range(lo, hi + 1)]
        for res in range(1, m):
            row = [(Fraction(b) ** s if (b - res) % m == 0 else 0) - ref[b - lo] for b in range(lo, hi + 1)]
            add(row, 0, f"moment {s} class {res}")
    if symmetric:
        for b in range(lo, hi + 1):
            k = 1 - b
            if b < k:
                row = [Fraction(0)] * n
                row[b - lo] += 1
                if lo <= k <= hi:
                    row[k - lo] -= 1
                add(row, 0, f"symmetry {b}")
    return TruncatedSystem((lo, hi), tuple(rows), tuple(rhs), tuple(labels))


def oracle_truncated_system(spec: SchemeSpec, support_window: tuple[int, int],
                            symmetric: bool = False) -> OracleSolution:
    """Solve the finite slice with sympy's exact elimination.

    This route shares no code with the constructive pipeline beyond the
    sample container, so agreement between the two is a genuine cross-check.
    """
    import sympy

    system = truncated_system(spec, support_window, symmetric)
    lo, hi = system.window
    n = hi - lo + 1
    A = sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) for v in row] for row in system.rows])
    b = sympy.Matrix([sympy.Rational(v.numerator, v.denominator) for v in system.rhs])
    try:
        sol, params = A.gauss_jordan_solve(b)
    except ValueError:
        raise Inconsistent(f"no mask with support in [{lo}, {hi}] satisfies the system") from None
    sol = sol.subs({p: 0 for p in params})
    coeffs = {lo + k: Fraction(int(v.p), int(v.q)) for k, v in enumerate(sol) if v != 0}
    return OracleSolution(system, Laurent(coeffs), len(params))
