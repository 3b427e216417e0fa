"""Pieces shared by the odd- and even-arity constructions.

A mask symbol is assembled from truncated sub-symbols (the Taylor data at
``z = 1``) plus polynomial corrections multiplied by ``(z - 1)**d``. The
corrections solve a Bezout equation whose solution set is an affine space;
:func:`minimize_support` walks that space looking for the shortest
symmetric mask.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Mapping, Sequence

from . import linalg
from .errors import (
    BudgetExhausted,
    Inconsistent,
    InvariantViolation,
    NotDivisible,
    SymmetryPreconditionViolated,
    ClosedFormMismatch,
)
from .laurent import (
    ONE,
    ZERO,
    Laurent,
    cyclotomic_sum,
    decompose,
    derivatives_at_one,
    divide_exact,
    from_taylor_at_one,
    recompose,
)
from .samples import PhiSamples, build_phi_symbol, phi_subsymbols

Z_MINUS_1 = Laurent({0: -1, 1: 1})


# -- Taylor data ---------------------------------------------------------------

def phi_derivative_closed_form(k: int) -> Fraction:
    """``(-1)**k (2k-1)!! / 2**k`` with the convention ``(-1)!! = 1``."""
    dfact = 1
    for t in range(2 * k - 1, 0, -2):
        dfact *= t
    return Fraction((-1) ** k * dfact, 2 ** k)


def phi_derivative_values(samples: PhiSamples, d: int) -> list[Fraction]:
    """``[phi(1), phi'(1), ..., phi^{(d-1)}(1)]``, checked against the closed form."""
    direct = derivatives_at_one(build_phi_symbol(samples), d)
    for k, v in enumerate(direct):
        expected = phi_derivative_closed_form(k)
        if v != expected:
            raise ClosedFormMismatch(
                f"phi^({k})(1) = {v} by differentiation but {expected} by the closed form"
            )
    return direct


@lru_cache(maxsize=None)
def composite_power_coefficients(j: int, p: int, m: int) -> Laurent:
    """``A_{j,p}(z)`` for the inner function ``f(z) = z**m``.

    ``d^j/dz^j g(f(z)) = sum_p g^{(p)}(f(z)) / p! * A_{j,p}(z)``.
    """
    if not 0 <= p <= j:
        raise ValueError("need 0 <= p <= j")
    f = Laurent({m: 1})
    out = ZERO
    for l in range(p + 1):
        out = out + ((-f) ** (p - l) * Laurent({m * l: 1}).derivative(j)).scale(comb(p, l))
    return out


@lru_cache(maxsize=None)
def composite_derivative_kernel(s: int, i: int, p: int, m: int) -> Laurent:
    """Factor multiplying ``a_i^{(p)}(z**m) / p!`` in ``a^{(s)}(z)``.

    ``a(z) = sum_i a_i(z**m) z**i``; the kernel is
    ``sum_{j=max(s-i,p)}^{s} C(s,j) A_{j,p}(z) i!/(i-(s-j))! z**(i-(s-j))``.
    """
    out = ZERO
    for j in range(max(s - i, p), s + 1):
        r = s - j
        ff = factorial(i) // factorial(i - r)
        out = out + (composite_power_coefficients(j, p, m) * Laurent({i - r: ff})).scale(comb(s, j))
    return out


def root_of_unity_rows(m: int, s: int, unknown: Sequence[int], known: Mapping[tuple[int, int], Fraction]):
    """Linear equations forcing ``a^{(s)}(xi) = 0`` at every ``m``-th root ``xi != 1``.

    ``a^{(s)}`` restricted to the roots is a Laurent polynomial ``E_s``; it
    vanishes at all nontrivial roots iff its residue modulo ``z**m - 1`` has
    equal coefficients. ``known`` maps ``(i, p)`` to ``a_i^{(p)}(1)``.
    Returns ``(rows, rhs)`` over the columns ``unknown`` (entries
    ``a_i^{(s)}(1)``).
    """
    cols = [composite_derivative_kernel(s, i, s, m).residue_classes(m) for i in unknown]
    cols = [[c / factorial(s) for c in col] for col in cols]
    base = [Fraction(0)] * m
    for (i, p), val in known.items():
        if not val:
            continue
        res = composite_derivative_kernel(s, i, p, m).residue_classes(m)
        for t in range(m):
            base[t] += val / factorial(p) * res[t]
    rows, rhs = [], []
    for t in range(m - 1):
        rows.append([col[t] - col[t + 1] for col in cols])
        rhs.append(base[t + 1] - base[t])
    return rows, rhs


@dataclass(frozen=True)
class TaylorTable:
    """``entries[i][s] = a_i^{(s)}(1)`` for ``0 <= i < m``, ``0 <= s < d``."""

    m: int
    d: int
    entries: tuple

    def coefficients(self, i: int) -> list[Fraction]:
        """Taylor coefficients ``a_i^{(s)}(1) / s!`` of sub-symbol ``i``."""
        return [v / factorial(s) for s, v in enumerate(self.entries[i])]

    def truncation(self, i: int) -> Laurent:
        return from_taylor_at_one(self.coefficients(i))


# -- Bezout solutions ----------------------------------------------------------

@dataclass(frozen=True)
class BezoutSolution:
    """Particular solution of ``sum_k u_k g_k = target`` and its homotopy family.

    ``indices[k]`` names the sub-symbol that generator ``k`` belongs to, so
    homotopy keys ``(i, j)`` use the same labels as the construction.
    Every solution is ``u_i + sum_{j>i} H_{i,j} g_j - sum_{j<i} H_{j,i} g_j``.
    """

    indices: tuple
    generators: tuple
    target: Laurent
    particular: tuple
    homotopy: Mapping = field(default_factory=dict)

    def residual(self, values: Sequence[Laurent] | None = None) -> Laurent:
        vals = self.particular if values is None else values
        out = -self.target
        for u, g in zip(vals, self.generators):
            out = out + u * g
        return out

    def apply(self, homotopy: Mapping | None = None) -> list[Laurent]:
        """Corrections for the given ``{(i, j): H_ij}``; defaults to ``self.homotopy``."""
        homotopy = self.homotopy if homotopy is None else homotopy
        pos = {lab: k for k, lab in enumerate(self.indices)}
        out = list(self.particular)
        for (i, j), h in canonical_homotopy(homotopy).items():
            if i not in pos or j not in pos:
                raise KeyError(f"homotopy index ({i}, {j}) is not a generator pair")
            out[pos[i]] = out[pos[i]] + h * self.generators[pos[j]]
            out[pos[j]] = out[pos[j]] - h * self.generators[pos[i]]
        return out

    def with_homotopy(self, homotopy: Mapping) -> "BezoutSolution":
        return replace(self, homotopy=canonical_homotopy(homotopy))


def canonical_homotopy(homotopy: Mapping) -> dict:
    """Rewrite keys so ``i < j``; ``H_{j,i}`` enters with the opposite sign."""
    out: dict = {}
    for (i, j), h in homotopy.items():
        if i == j:
            raise ValueError("homotopy index pairs must be distinct")
        key, hh = ((i, j), h) if i < j else ((j, i), -h)
        out[key] = out.get(key, ZERO) + hh
    return {k: v for k, v in sorted(out.items()) if v}


# -- masks ---------------------------------------------------------------------

@dataclass(frozen=True)
class MaskResult:
    m: int
    d: int
    parity: str
    symbol: Laurent
    samples: PhiSamples = field(repr=False)
    subsymbols: tuple = field(default=(), repr=False)
    truncations: tuple = field(default=(), repr=False)
    corrections: tuple = field(default=(), repr=False)
    theta_hat: Laurent = field(default=ZERO, repr=False)
    gamma: Laurent = field(default=ZERO, repr=False)
    sigma: Fraction = Fraction(0)
    provenance: Mapping = field(default_factory=dict, repr=False)

    @property
    def coefficients(self) -> dict:
        return self.symbol.coeffs

    def width(self) -> int:
        return self.symbol.width()

    def is_symmetric(self) -> bool:
        return self.symbol == self.symbol.reflect().shift(1)

    def validate(self) -> "MaskResult":
        validate_mask(self)
        return self


def sigma_of(symbol: Laurent, m: int) -> Fraction:
    return symbol.derivative(1)(1) / m


def correction_embedding(m: int, d: int, parity: str, index: int, poly: Laurent) -> Laurent:
    """Contribution of one correction polynomial to the mask symbol.

    Odd arity: ``(z**m - 1)**d z**i c(z**m)`` for the correction of
    sub-symbol ``i``. Even arity: corrections are the combined ``abar_i``
    (``0 <= i < m/2``) and contribute ``(z**m - 1)**d z**i abar_i(z**(m/2))``.
    """
    q = m if parity == "odd" else m // 2
    return _zm_minus_1_pow(m, d) * poly.substitute_power(q).shift(index)


@lru_cache(maxsize=None)
def _zm_minus_1_pow(m: int, d: int) -> Laurent:
    return Laurent({0: -1, m: 1}) ** d


def truncated_symbol(m: int, truncations: Sequence[Laurent]) -> Laurent:
    return recompose(list(truncations), sign=1)


def assemble(m, d, parity, samples, truncations, corrections, theta_hat=ZERO, gamma=ZERO,
             provenance=None, validate=True) -> MaskResult:
    """Symbol from truncations and corrections; sub-symbols ``a_i = t_i + (z-1)**d c_i``.

    For even arity ``corrections`` holds the ``m`` split corrections.
    """
    zd = Z_MINUS_1 ** d
    subs = [t + zd * c for t, c in zip(truncations, corrections)]
    symbol = recompose(subs, sign=1)
    res = MaskResult(
        m=m, d=d, parity=parity, symbol=symbol, samples=samples,
        subsymbols=tuple(subs), truncations=tuple(truncations), corrections=tuple(corrections),
        theta_hat=theta_hat, gamma=gamma, sigma=sigma_of(symbol, m),
        provenance=dict(provenance or {}),
    )
    if validate:
        validate_mask(res)
    return res


def bare_mask(symbol: Laurent, m: int, d: int = 0, samples: PhiSamples | None = None,
              provenance=None) -> MaskResult:
    """Wrap a bare symbol, e.g. one read from a file, without construction data."""
    return MaskResult(
        m=m, d=d, parity="odd" if m % 2 else "even", symbol=symbol, samples=samples,
        subsymbols=tuple(decompose(symbol, m, 1)), sigma=sigma_of(symbol, m),
        provenance=dict(provenance or {}),
    )


def rebuild_from_symbol(mask: MaskResult, symbol: Laurent, provenance_update=None) -> MaskResult:
    """Recompute sub-symbols and corrections for a new symbol with the same truncations."""
    subs = decompose(symbol, mask.m, 1)
    zd = Z_MINUS_1 ** mask.d
    try:
        corr = tuple(divide_exact(a - t, zd) for a, t in zip(subs, mask.truncations))
    except NotDivisible as e:
        raise InvariantViolation("taylor-data", "sub-symbol departs from its truncation") from e
    prov = dict(mask.provenance)
    prov.update(provenance_update or {})
    return replace(mask, symbol=symbol, subsymbols=tuple(subs), corrections=corr,
                   sigma=sigma_of(symbol, mask.m), provenance=prov)


def validate_mask(mask: MaskResult) -> None:
    """Raise :class:`InvariantViolation` naming the first failing invariant."""
    m, d, a = mask.m, mask.d, mask.symbol
    subs = decompose(a, m, 1)
    if mask.subsymbols and list(mask.subsymbols) != subs:
        raise InvariantViolation("decomposition", "stored sub-symbols disagree with the symbol")
    try:
        divide_exact(a, cyclotomic_sum(m) ** d)
    except NotDivisible:
        raise InvariantViolation("divisibility", f"(1+z+...+z^{m-1})^{d} does not divide a(z)") from None
    for i, ai in enumerate(subs):
        if ai(1) != 1:
            raise InvariantViolation("sub-symbol-sums", f"a_{i}(1) = {ai(1)}")
    if a(1) != m:
        raise InvariantViolation("sum", f"a(1) = {a(1)}")
    phi = build_phi_symbol(mask.samples)
    if mask.parity == "odd":
        c = (m + 1) // 2
        if subs[c] != phi:
            raise InvariantViolation("interpolation", f"a_{c}(z) differs from phi(z)")
        phis = phi_subsymbols(mask.samples, m)
        lhs = ZERO
        for ai, pi in zip(subs, phis):
            lhs = lhs + ai * pi
        if lhs != ONE:
            raise InvariantViolation("bezout", f"sum a_i phi_i - 1 = {lhs - ONE}")
    else:
        from .even import phi_hat_subsymbols

        rhs = ONE + phi.substitute_power(2).shift(1)
        lhs = ZERO
        for ai, ph in zip(subs, phi_hat_subsymbols(mask.samples, m)):
            lhs = lhs + ai.substitute_power(2) * ph
        if lhs != rhs:
            raise InvariantViolation("bezout", f"sum a_l(z^2) phihat_l(z) - (1 + z phi(z^2)) = {lhs - rhs}")
    if mask.truncations:
        zd = Z_MINUS_1 ** d
        for i, (ai, t) in enumerate(zip(subs, mask.truncations)):
            try:
                divide_exact(ai - t, zd)
            except NotDivisible:
                raise InvariantViolation("taylor-data", f"a_{i} - truncation not divisible by (z-1)^{d}") from None
    if mask.sigma != sigma_of(a, m):
        raise InvariantViolation("sigma", f"stored sigma {mask.sigma} != a'(1)/m")
    if mask.provenance.get("symmetric") and not mask.is_symmetric():
        raise InvariantViolation("symmetry", "a(z) != z a(1/z)")
    if mask.provenance.get("symmetric") and mask.sigma != Fraction(1, 2):
        raise InvariantViolation("dual", f"sigma = {mask.sigma} for a symmetric mask")


def symmetrize(mask: MaskResult) -> MaskResult:
    """``(a(z) + z a(1/z)) / 2``; requires samples declared symmetric."""
    if not mask.samples.symmetric:
        raise SymmetryPreconditionViolated(
            "symmetrization needs samples declared symmetric (phi(1/2+l) = phi(-1/2-l))"
        )
    a = mask.symbol
    sym = (a + a.reflect().shift(1)).scale(Fraction(1, 2))
    out = rebuild_from_symbol(mask, sym, {"symmetric": True})
    validate_mask(out)
    return out


# -- support minimisation --------------------------------------------------------

def _homotopy_unit(mask: MaskResult, solution: BezoutSolution, i: int, j: int, k: int) -> Laurent:
    """Mask change caused by ``H_{i,j} = z**k``."""
    pos = {lab: n for n, lab in enumerate(solution.indices)}
    hk = Laurent({k: 1})
    return (correction_embedding(mask.m, mask.d, mask.parity, i, hk * solution.generators[pos[j]])
            - correction_embedding(mask.m, mask.d, mask.parity, j, hk * solution.generators[pos[i]]))


def homotopy_window(mask: MaskResult, solution: BezoutSolution, i: int, j: int,
                    width_budget: int | None = None) -> range:
    """Exponents ``k`` of ``H_{i,j}`` whose effect stays inside the current support.

    A homotopy term ``h(z**q) E(z)`` has support ``[q lo(h) + lo(E), q hi(h) + hi(E)]``
    with no cancellation at the ends, so a result no wider than the base mask
    can only use exponents in this window. ``width_budget`` caps the number
    of exponents, keeping the centre of the window.
    """
    q = mask.m if mask.parity == "odd" else mask.m // 2
    e0 = _homotopy_unit(mask, solution, i, j, 0)
    if not e0:
        return range(0)
    lo_b, hi_b = mask.symbol.support()
    lo_e, hi_e = e0.support()
    lo = -((lo_e - lo_b) // q)  # ceil((lo_b - lo_e) / q)
    hi = (hi_b - hi_e) // q
    if width_budget is not None and hi - lo + 1 > width_budget:
        excess = hi - lo + 1 - width_budget
        lo += excess // 2
        hi = lo + width_budget - 1
    return range(lo, hi + 1)


@dataclass(frozen=True)
class _Candidate:
    half_width: int
    homotopy: dict
    nullity: int


def _search(base: Laurent, units: list[tuple[tuple[int, int], int, Laurent]], n_max: int):
    """Smallest ``n`` so that ``base + sum h_u E_u`` is symmetric with support in ``[1-n, n]``."""
    lo = min([base.low] + [u[2].low for u in units])
    hi = max([base.high] + [u[2].high for u in units])

    def feasible(n):
        rows, rhs = [], []
        for e in range(lo, hi + 1):
            if e < 1 - n or e > n:
                rows.append([u[2][e] for u in units])
                rhs.append(-base[e])
            elif e <= 0:
                rows.append([u[2][e] - u[2][1 - e] for u in units])
                rhs.append(base[1 - e] - base[e])
        try:
            return linalg.solve(rows, rhs, ncols=len(units))
        except Inconsistent:
            return None

    lo_n, hi_n = 1, n_max
    best = feasible(hi_n)
    if best is None:
        return None
    best_n = hi_n
    while lo_n < hi_n:
        mid = (lo_n + hi_n) // 2
        r = feasible(mid)
        if r is None:
            lo_n = mid + 1
        else:
            best, best_n, hi_n = r, mid, mid
    x, nullity = best
    hom: dict = {}
    for (pair, k, _), h in zip(units, x):
        if h:
            hom[pair] = hom.get(pair, ZERO) + Laurent({k: h})
    return _Candidate(best_n, hom, nullity)


def minimize_support(mask: MaskResult, solution: BezoutSolution, width_budget: int | None = None,
                     max_width: int | None = None) -> MaskResult:
    """Shortest symmetric mask reachable through the homotopy terms.

    The mask is symmetrized first; then for every generator pair the
    exponents of ``H_{i,j}`` are restricted to :func:`homotopy_window` and
    the smallest symmetric support ``[1-n, n]`` is found by exact linear
    feasibility (bisection on ``n``). When several homotopies reach the
    minimum the one with free parameters set to zero is returned and the
    dimension of the tie set is recorded in the provenance.

    ``max_width`` turns an unmet width target into :class:`BudgetExhausted`.
    """
    base_mask = mask if mask.provenance.get("symmetric") and mask.is_symmetric() else symmetrize(mask)
    base = base_mask.symbol
    labels = list(solution.indices)
    units = []
    windows = {}
    for a_ in range(len(labels)):
        for b_ in range(a_ + 1, len(labels)):
            i, j = labels[a_], labels[b_]
            win = homotopy_window(base_mask, solution, i, j, width_budget)
            windows[(i, j)] = [win.start, win.stop - 1] if len(win) else []
            for k in win:
                units.append(((i, j), k, _homotopy_unit(base_mask, solution, i, j, k)))
    n_base = max(base.high, 1 - base.low)
    cand = _search(base, units, n_base)
    if cand is None:  # pragma: no cover - h = 0 is always feasible
        cand = _Candidate(n_base, {}, 0)
    sym = base
    for (i, j), h in cand.homotopy.items():
        for k, c in h.items():
            sym = sym + _homotopy_unit(base_mask, solution, i, j, k).scale(c)
    info = {
        "symmetric": True,
        "search": {
            "windows": {f"{i},{j}": w for (i, j), w in windows.items()},
            "half_width": cand.half_width,
            "width": sym.width(),
            "width_before": base.width(),
            "tie_dimension": cand.nullity,
            "homotopy_from_symmetrized": {f"{i},{j}": h.to_pairs() for (i, j), h in cand.homotopy.items()},
        },
    }
    out = rebuild_from_symbol(base_mask, sym, info)
    validate_mask(out)
    if max_width is not None and out.width() > max_width:
        raise BudgetExhausted(out, f"no symmetric mask of width <= {max_width} within the homotopy budget "
                                   f"(best width {out.width()})")
    return out
