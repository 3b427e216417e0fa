"""Exact Laurent polynomials over the rationals.

A :class:`Laurent` is an immutable map ``exponent -> Fraction`` with no
stored zeros. All arithmetic is exact; there are no tolerances anywhere in
this module.

Division, GCD and Bezout solving reduce to ordinary polynomials by pulling
out the lowest power of ``z`` (a unit of the Laurent ring) and shifting the
results back afterwards.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Mapping, Sequence

from .errors import DivisionByZeroPoly, EvalAtZero, NotDivisible, NotSolvable

__all__ = [
    "Laurent",
    "Z",
    "ONE",
    "ZERO",
    "as_fraction",
    "format_fraction",
    "decompose",
    "recompose",
    "divide_exact",
    "laurent_divmod",
    "gcd_extended",
    "multi_bezout",
    "taylor_at_one",
    "from_taylor_at_one",
    "cyclotomic_sum",
]


def as_fraction(x) -> Fraction:
    """Coerce ints, Fractions and ``"num/den"`` strings; floats are refused."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"expected an exact rational, got {type(x).__name__}: {x!r}")


def format_fraction(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


class Laurent:
    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, object] | None = None):
        c = {}
        if coeffs:
            for k, v in coeffs.items():
                v = as_fraction(v)
                if v:
                    c[int(k)] = v
        self._c = c
        self._hash = None

    # -- constructors ------------------------------------------------------
    @classmethod
    def _raw(cls, c: dict) -> "Laurent":
        obj = cls.__new__(cls)
        obj._c = c
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, c) -> "Laurent":
        return cls({0: c})

    @classmethod
    def monomial(cls, k: int, c=1) -> "Laurent":
        return cls({k: c})

    @classmethod
    def from_list(cls, coeffs: Sequence, low: int = 0) -> "Laurent":
        """Coefficients listed from exponent ``low`` upwards."""
        return cls({low + i: c for i, c in enumerate(coeffs)})

    @classmethod
    def from_pairs(cls, pairs: Iterable) -> "Laurent":
        """Inverse of :meth:`to_pairs` (the canonical text form)."""
        out = {}
        for k, v in pairs:
            if isinstance(k, bool) or not isinstance(k, int):
                raise ValueError(f"exponent must be an integer, got {k!r}")
            out[k] = out.get(k, Fraction(0)) + as_fraction(v)
        return cls(out)

    # -- inspection --------------------------------------------------------
    @property
    def coeffs(self) -> dict:
        return dict(self._c)

    def __getitem__(self, k: int) -> Fraction:
        return self._c.get(k, Fraction(0))

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    @property
    def low(self) -> int:
        if not self._c:
            raise ValueError("the zero polynomial has no support")
        return min(self._c)

    @property
    def high(self) -> int:
        if not self._c:
            raise ValueError("the zero polynomial has no support")
        return max(self._c)

    def support(self) -> tuple[int, int]:
        return self.low, self.high

    def width(self) -> int:
        """Number of coefficients between the extreme exponents, inclusive."""
        return 0 if not self._c else self.high - self.low + 1

    def to_list(self, low: int | None = None, high: int | None = None) -> list[Fraction]:
        if not self._c and (low is None or high is None):
            return []
        lo = self.low if low is None else low
        hi = self.high if high is None else high
        return [self._c.get(k, Fraction(0)) for k in range(lo, hi + 1)]

    def to_pairs(self) -> list[tuple[int, str]]:
        return [(k, format_fraction(self._c[k])) for k in sorted(self._c)]

    def items(self):
        return sorted(self._c.items())

    # -- ring operations ---------------------------------------------------
    @staticmethod
    def _lift(x) -> "Laurent":
        if isinstance(x, Laurent):
            return x
        return Laurent.constant(as_fraction(x))

    def __add__(self, other) -> "Laurent":
        other = self._lift(other)
        c = dict(self._c)
        for k, v in other._c.items():
            s = c.get(k, 0) + v
            if s:
                c[k] = s
            else:
                c.pop(k, None)
        return Laurent._raw(c)

    __radd__ = __add__

    def __neg__(self) -> "Laurent":
        return Laurent._raw({k: -v for k, v in self._c.items()})

    def __sub__(self, other) -> "Laurent":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "Laurent":
        return self._lift(other) - self

    def __mul__(self, other) -> "Laurent":
        if not isinstance(other, Laurent):
            return self.scale(other)
        c: dict = {}
        for i, u in self._c.items():
            for j, v in other._c.items():
                c[i + j] = c.get(i + j, 0) + u * v
        return Laurent._raw({k: v for k, v in c.items() if v})

    def __rmul__(self, other) -> "Laurent":
        return self * other

    def scale(self, c) -> "Laurent":
        c = as_fraction(c)
        if not c:
            return ZERO
        return Laurent._raw({k: v * c for k, v in self._c.items()})

    def __truediv__(self, c) -> "Laurent":
        if isinstance(c, Laurent):
            return divide_exact(self, c)
        return self.scale(1 / as_fraction(c))

    def __pow__(self, n: int) -> "Laurent":
        if n < 0:
            if len(self._c) == 1:
                (k, v), = self._c.items()
                return Laurent._raw({k * n: v ** n})
            raise ValueError("only monomials are invertible")
        out, base = ONE, self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, Laurent):
            return self._c == other._c
        try:
            return self._c == Laurent.constant(as_fraction(other))._c
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    # -- analysis ----------------------------------------------------------
    def __call__(self, x) -> Fraction:
        x = as_fraction(x)
        if x == 0:
            if any(k < 0 for k in self._c):
                raise EvalAtZero("Laurent polynomial with negative exponents evaluated at 0")
            return self._c.get(0, Fraction(0))
        return sum((v * x ** k for k, v in self._c.items()), Fraction(0))

    def evaluate_float(self, x: complex) -> complex:
        return sum(float(v) * x ** k for k, v in self._c.items())

    def derivative(self, k: int = 1) -> "Laurent":
        if k < 0:
            raise ValueError("derivative order must be non-negative")
        out = {}
        for e, v in self._c.items():
            f = 1
            for t in range(k):
                f *= e - t
            if f:
                out[e - k] = v * f
        return Laurent._raw(out)

    def substitute_power(self, m: int) -> "Laurent":
        """``p(z**m)``."""
        if m < 1:
            raise ValueError("m must be >= 1")
        return Laurent._raw({k * m: v for k, v in self._c.items()})

    def reflect(self) -> "Laurent":
        """``p(1/z)``."""
        return Laurent._raw({-k: v for k, v in self._c.items()})

    def shift(self, n: int) -> "Laurent":
        """``z**n * p(z)``."""
        return Laurent._raw({k + n: v for k, v in self._c.items()})

    def negate_variable(self) -> "Laurent":
        """``p(-z)``."""
        return Laurent._raw({k: (-v if k % 2 else v) for k, v in self._c.items()})

    def residue_classes(self, m: int) -> list[Fraction]:
        """Coefficients of ``p`` reduced modulo ``z**m - 1``."""
        r = [Fraction(0)] * m
        for k, v in self._c.items():
            r[k % m] += v
        return r

    def even_odd(self) -> tuple["Laurent", "Laurent"]:
        """``(e, o)`` with ``p(z) = e(z**2) + z * o(z**2)``."""
        e, o = {}, {}
        for k, v in self._c.items():
            if k % 2 == 0:
                e[k // 2] = v
            else:
                o[(k - 1) // 2] = v
        return Laurent._raw(e), Laurent._raw(o)

    # -- display -----------------------------------------------------------
    def __repr__(self) -> str:
        if not self._c:
            return "Laurent(0)"
        return "Laurent(" + str(self) + ")"

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for k in sorted(self._c):
            v = self._c[k]
            sign = "-" if v < 0 else "+"
            a = abs(v)
            coef = str(a)
            if k == 0:
                term = coef
            else:
                mono = "z" if k == 1 else f"z^{k}"
                term = mono if a == 1 else f"{coef}*{mono}"
            parts.append((sign, term))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, term in parts[1:]:
            s += f" {sign} {term}"
        return s


ZERO = Laurent()
ONE = Laurent({0: 1})
Z = Laurent({1: 1})


def cyclotomic_sum(m: int) -> Laurent:
    """``1 + z + ... + z**(m-1)``."""
    return Laurent({k: 1 for k in range(m)})


# -- sub-symbols ---------------------------------------------------------------

def decompose(p: Laurent, m: int, sign: int = 1) -> list[Laurent]:
    """Split ``p`` into ``m`` sub-symbols.

    With ``sign=+1`` the result satisfies ``p(z) = sum_i p_i(z**m) z**i``
    (the convention for masks); with ``sign=-1``,
    ``p(z) = sum_i p_i(z**m) z**(-i)`` (the convention for the samples
    symbol).
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    parts: list[dict] = [{} for _ in range(m)]
    for k, v in p._c.items():
        if sign == 1:
            i = k % m
            parts[i][(k - i) // m] = v
        else:
            i = (-k) % m
            parts[i][(k + i) // m] = v
    return [Laurent._raw(c) for c in parts]


def recompose(parts: Sequence[Laurent], sign: int = 1) -> Laurent:
    m = len(parts)
    out = ZERO
    for i, q in enumerate(parts):
        out = out + q.substitute_power(m).shift(sign * i)
    return out


# -- Taylor data at z = 1 ------------------------------------------------------

def _gbinom(k: int, j: int) -> int:
    """Binomial coefficient ``C(k, j)`` valid for negative ``k``."""
    if k >= 0:
        return comb(k, j)
    return (-1) ** j * comb(j - k - 1, j)


def taylor_at_one(p: Laurent, order: int) -> list[Fraction]:
    """First ``order`` coefficients of ``p`` expanded in powers of ``z - 1``.

    Entry ``j`` equals ``p^{(j)}(1) / j!``; negative exponents are handled
    through the binomial series of ``(1 + u)**k``.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    out = [Fraction(0)] * order
    for k, v in p._c.items():
        for j in range(order):
            out[j] += v * _gbinom(k, j)
    return out


def from_taylor_at_one(coeffs: Sequence) -> Laurent:
    """``sum_j coeffs[j] * (z - 1)**j`` as a Laurent polynomial."""
    out = ZERO
    u = Laurent({0: -1, 1: 1})
    power = ONE
    for c in coeffs:
        out = out + power.scale(c)
        power = power * u
    return out


def derivatives_at_one(p: Laurent, count: int) -> list[Fraction]:
    """``[p(1), p'(1), ..., p^{(count-1)}(1)]``."""
    return [c * factorial(j) for j, c in enumerate(taylor_at_one(p, count))]


# -- polynomial helpers (ascending coefficient lists) -------------------------

def _strip(p: Laurent) -> tuple[int, list[Fraction]]:
    """``p = z**low * P(z)`` with ``P(0) != 0``."""
    lo = p.low
    return lo, p.to_list(lo, p.high)


def _poly_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = list(a)
    db = len(b) - 1
    lead = b[-1]
    if len(a) - 1 < db:
        return [], _trim(a)
    q = [Fraction(0)] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] / lead
        q[i - db] = c
        if c:
            for j in range(db + 1):
                a[i - db + j] -= c * b[j]
    return _trim(q), _trim(a[:db])


def _trim(a: list[Fraction]) -> list[Fraction]:
    while a and not a[-1]:
        a.pop()
    return a


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        if u:
            for j, v in enumerate(b):
                out[i + j] += u * v
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def laurent_divmod(p: Laurent, q: Laurent) -> tuple[Laurent, Laurent]:
    """Euclidean division in the Laurent ring.

    Returns ``(s, r)`` with ``p = s*q + r`` where ``r = z**low(p) * R`` and
    ``deg R < deg Q`` for the polynomial parts of ``p`` and ``q``.
    """
    if q.is_zero():
        raise DivisionByZeroPoly("division by the zero polynomial")
    if p.is_zero():
        return ZERO, ZERO
    lp, P = _strip(p)
    lq, Q = _strip(q)
    quo, rem = _poly_divmod(P, Q)
    return Laurent.from_list(quo, lp - lq), Laurent.from_list(rem, lp)


def divide_exact(p: Laurent, q: Laurent) -> Laurent:
    """``r`` with ``p == q * r``; raises :class:`NotDivisible` otherwise."""
    s, r = laurent_divmod(p, q)
    if r:
        raise NotDivisible(r)
    return s


def _normalize(p: Laurent) -> tuple[Laurent, Laurent]:
    """Canonical associate of ``p`` and the unit that produces it.

    The associate is an ordinary polynomial with nonzero constant term and
    leading coefficient 1; returns ``(g, unit)`` with ``g == unit * p``.
    """
    lo, P = _strip(p)
    unit = Laurent({-lo: 1 / P[-1]})
    return p * unit, unit


def gcd_extended(p: Laurent, q: Laurent) -> tuple[Laurent, Laurent, Laurent]:
    """``(g, u, v)`` with ``g == u*p + v*q`` and ``g`` the normalized GCD.

    Units of the Laurent ring are ``c * z**k``, so ``g == 1`` exactly when
    ``p`` and ``q`` have no common zero in ``C \\ {0}``.
    """
    if p.is_zero() and q.is_zero():
        raise ValueError("gcd of two zero polynomials is undefined")
    if p.is_zero():
        g, unit = _normalize(q)
        return g, ZERO, unit
    if q.is_zero():
        g, unit = _normalize(p)
        return g, unit, ZERO
    lp, P = _strip(p)
    lq, Q = _strip(q)
    # Extended Euclid on P, Q with cofactor lists.
    r0, r1 = P, Q
    s0, s1 = [Fraction(1)], []
    t0, t1 = [], [Fraction(1)]
    while r1:
        quo, rem = _poly_divmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, _poly_sub(s0, _poly_mul(quo, s1))
        t0, t1 = t1, _poly_sub(t0, _poly_mul(quo, t1))
    lead = r0[-1]
    g = Laurent.from_list(r0).scale(1 / lead)
    u = Laurent.from_list(s0, -lp).scale(1 / lead)
    v = Laurent.from_list(t0, -lq).scale(1 / lead)
    return g, u, v


def multi_bezout(generators: Sequence[Laurent], target: Laurent, reduce: bool = True) -> list[Laurent]:
    """Particular solution ``u`` of ``sum_i u_i * generators[i] == target``.

    Two-term extended GCDs are folded left over the generators. With
    ``reduce`` the cofactors ``u_0 .. u_{k-2}`` are replaced by their
    remainders modulo the last nonzero generator (the quotient is moved onto
    the last cofactor), which keeps coefficient supports small.
    """
    k = len(generators)
    if k == 0:
        raise ValueError("need at least one generator")
    nz = [i for i, g in enumerate(generators) if g]
    if not nz:
        if target.is_zero():
            return [ZERO] * k
        raise NotSolvable(ZERO)
    coef = [ZERO] * k
    g, unit = _normalize(generators[nz[0]])
    coef[nz[0]] = unit
    for i in nz[1:]:
        g, u, v = gcd_extended(g, generators[i])
        coef = [c * u for c in coef]
        coef[i] = coef[i] + v
    try:
        r = divide_exact(target, g)
    except NotDivisible:
        raise NotSolvable(g) from None
    sol = [c * r for c in coef]
    if reduce and len(nz) > 1:
        last = nz[-1]
        for i in nz[:-1]:
            s, rem = laurent_divmod(sol[i], generators[last])
            sol[i] = rem
            sol[last] = sol[last] + s * generators[i]
    return sol
