"""Prescribed half-integer samples of the basic limit function.

``PhiSamples.values[l]`` is the target value at ``l + 1/2``. Values at the
integers are always the delta sequence and are not modelled.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .errors import AssumptionViolated, SubdivisionError
from .laurent import (
    ONE,
    Laurent,
    NotDivisible,
    as_fraction,
    decompose,
    divide_exact,
    format_fraction,
    gcd_extended,
    multi_bezout,
)

_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")


class SamplesFormatError(SubdivisionError, ValueError):
    pass


def parse_rational(token) -> Fraction:
    """Bit-exact parse of an int or a ``"num/den"`` string; floats are errors."""
    if isinstance(token, bool):
        raise SamplesFormatError(f"not a rational: {token!r}")
    if isinstance(token, int):
        return Fraction(token)
    if isinstance(token, str) and _RATIONAL.match(token.strip()):
        f = Fraction(token.strip())
        return f
    raise SamplesFormatError(f"not an exact rational token: {token!r}")


@dataclass(frozen=True)
class PhiSamples:
    values: Mapping[int, Fraction]
    symmetric: bool = False

    def __post_init__(self):
        vals = {int(k): as_fraction(v) for k, v in self.values.items()}
        vals = {k: v for k, v in sorted(vals.items()) if v}
        if not vals:
            raise SamplesFormatError("at least one nonzero sample is required")
        object.__setattr__(self, "values", vals)
        if self.symmetric:
            bad = [l for l, v in vals.items() if vals.get(-1 - l, Fraction(0)) != v]
            if bad:
                raise SamplesFormatError(
                    f"declared symmetric but phi(1/2+l) != phi(-1/2-l) for l in {bad}"
                )

    def __call__(self, l: int) -> Fraction:
        return self.values.get(l, Fraction(0))

    def at(self, x: Fraction) -> Fraction:
        """Value at a point of ``(2Z+1)/2``; integers give the delta sequence."""
        x = Fraction(x)
        if x.denominator == 1:
            return Fraction(1) if x == 0 else Fraction(0)
        if x.denominator != 2:
            raise ValueError(f"{x} is neither an integer nor a half-integer")
        return self(int(x - Fraction(1, 2)))

    def scaled(self, c) -> "PhiSamples":
        return PhiSamples({l: v * as_fraction(c) for l, v in self.values.items()}, self.symmetric)

    def to_json(self) -> dict:
        return {
            "samples": [{"l": l, "value": format_fraction(v)} for l, v in self.values.items()],
            "symmetric": self.symmetric,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "PhiSamples":
        if not isinstance(obj, dict) or "samples" not in obj:
            raise SamplesFormatError('samples file must be an object with a "samples" list')
        vals = {}
        for entry in obj["samples"]:
            l = entry.get("l")
            if isinstance(l, bool) or not isinstance(l, int):
                raise SamplesFormatError(f"sample index must be an integer, got {l!r}")
            if l in vals:
                raise SamplesFormatError(f"duplicate sample index {l}")
            vals[l] = parse_rational(entry.get("value"))
        sym = obj.get("symmetric", False)
        if not isinstance(sym, bool):
            raise SamplesFormatError('"symmetric" must be a boolean')
        return cls(vals, sym)


def load_samples(path) -> PhiSamples:
    with open(path) as fh:
        return PhiSamples.from_json(json.load(fh))


@dataclass(frozen=True)
class SchemeSpec:
    """Arity ``m``, reproduction parameter ``d`` and the samples."""

    m: int
    d: int
    samples: PhiSamples = field(repr=False)

    def __post_init__(self):
        if self.m < 2:
            raise ValueError("arity must be >= 2")
        if self.d < 1:
            raise ValueError("d must be >= 1")

    @property
    def odd(self) -> bool:
        return self.m % 2 == 1

    @property
    def center(self) -> int:
        """Index of the sub-symbol pinned to the samples symbol (odd arity)."""
        return (self.m + 1) // 2


def build_phi_symbol(samples: PhiSamples) -> Laurent:
    """``phi(z) = sum_l phi(1/2 + l) z**l``."""
    return Laurent(dict(samples.values))


def phi_subsymbols(samples: PhiSamples, m: int) -> list[Laurent]:
    """``phi_l(z) = sum_i phi((2mi+1)/2 - l) z**i`` for ``0 <= l < m``."""
    if m < 2:
        raise ValueError("m must be >= 2")
    return decompose(build_phi_symbol(samples), m, sign=-1)


_Z_MINUS_1 = Laurent({0: -1, 1: 1})


def assumption1_lhs(samples: PhiSamples) -> Laurent:
    """``1 - z*phi(z**2)``."""
    return ONE - build_phi_symbol(samples).substitute_power(2).shift(1)


def max_valid_exponent(samples: PhiSamples) -> int:
    """Largest ``d`` with ``(z-1)**d`` dividing ``1 - z*phi(z**2)``."""
    p = assumption1_lhs(samples)
    d = 0
    while p:
        try:
            p = divide_exact(p, _Z_MINUS_1)
        except NotDivisible:
            break
        d += 1
    return d


def check_assumption1(samples: PhiSamples, d: int) -> Laurent:
    """Return ``gamma`` with ``1 - z*phi(z**2) == (z-1)**d * gamma``."""
    try:
        return divide_exact(assumption1_lhs(samples), _Z_MINUS_1 ** d)
    except NotDivisible:
        dmax = max_valid_exponent(samples)
        raise AssumptionViolated(
            1, dmax,
            f"assumption 1 fails: 1 - z*phi(z^2) is divisible by (z-1)^{dmax} but not by (z-1)^{d}",
        ) from None


def assumption2_generators(samples: PhiSamples, m: int, parity: str | None = None) -> list[Laurent]:
    parity = parity or ("odd" if m % 2 else "even")
    if parity == "odd":
        c = (m + 1) // 2
        subs = phi_subsymbols(samples, m)
        return [p for i, p in enumerate(subs) if i != c]
    if m % 2:
        raise ValueError("even parity requires even m")
    return phi_subsymbols(samples, m // 2)


def check_assumption2(samples: PhiSamples, m: int, parity: str | None = None) -> list[Laurent]:
    """Verify the relevant sub-symbols are coprime.

    Returns cofactors ``u`` with ``sum_i u_i * gens_i == 1``.
    """
    gens = assumption2_generators(samples, m, parity)
    nz = [g for g in gens if g]
    if not nz:
        raise AssumptionViolated(2, Laurent(), "assumption 2 fails: all sub-symbols vanish")
    g = nz[0]
    for h in nz[1:]:
        g = gcd_extended(g, h)[0]
    g = gcd_extended(g, Laurent())[0]
    if g != ONE:
        raise AssumptionViolated(
            2, g, f"assumption 2 fails: the sub-symbols share the common factor {g}"
        )
    return multi_bezout(gens, ONE, reduce=False)


def check_assumption3(samples: PhiSamples, m: int) -> None:
    """``phi_l(1) == 2/m`` for the arity-``m/2`` sub-symbols, ``l < m/2``."""
    if m % 2 or m < 4:
        raise ValueError("assumption 3 applies to even m >= 4")
    target = Fraction(2, m)
    subs = phi_subsymbols(samples, m // 2)
    bad = {l: p(1) for l, p in enumerate(subs) if p(1) != target}
    if bad:
        shown = ", ".join(f"phi_{l}(1)={v}" for l, v in bad.items())
        raise AssumptionViolated(3, bad, f"assumption 3 fails: expected {target}, got {shown}")
