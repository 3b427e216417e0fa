"""Exact construction of dual interpolating subdivision masks of arbitrary arity."""
from .errors import (
    ArityTwoImpossible,
    AssumptionViolated,
    Inconsistent,
    InvariantViolation,
    SubdivisionError,
)
from .laurent import Laurent
from .samples import PhiSamples, SchemeSpec, load_samples
from .scheme import MaskResult, bare_mask


def construct(spec: SchemeSpec, **kwargs) -> MaskResult:
    """Dispatch to the odd or even pipeline by the parity of the arity."""
    if spec.m == 2:
        raise ArityTwoImpossible()
    if spec.odd:
        from .odd import construct_odd_pipeline

        return construct_odd_pipeline(spec, **kwargs)
    from .even import construct_even_pipeline

    return construct_even_pipeline(spec, **kwargs)


__all__ = [
    "ArityTwoImpossible",
    "AssumptionViolated",
    "Inconsistent",
    "InvariantViolation",
    "Laurent",
    "MaskResult",
    "PhiSamples",
    "SchemeSpec",
    "SubdivisionError",
    "bare_mask",
    "construct",
    "load_samples",
]
