from fractions import Fraction as F

import numpy as np
import pytest
from goldens import SIX_POINT_SAMPLES, FIXTURE_MASK, FIXTURE_SAMPLES, MASK_M3, MASK_M4

from dualsubdiv import Inconsistent, PhiSamples, SchemeSpec, bare_mask, construct
from dualsubdiv.engine import (
    ControlData,
    blf_support,
    cascade_blf,
    convergence_indicator,
    interpolation_residuals,
    oracle_truncated_system,
    polynomial_reproduction_degree,
    refine_polygon,
    subdivide_once,
    truncated_system,
    verify_interpolation_system,
)
from dualsubdiv.errors import NotFactorable
from dualsubdiv.laurent import Laurent

M3 = bare_mask(MASK_M3, 3, 6)
M4 = bare_mask(MASK_M4, 4, 6)


def test_delta_reproduces_mask():
    out = subdivide_once(M3, ControlData.scalar([1]))
    assert out.offset == -11
    assert Laurent.from_list(out.values(), out.offset) == MASK_M3


def test_constants_are_preserved():
    out = subdivide_once(M4, ControlData.scalar([1] * 40, -20, "window"))
    assert set(out.values()) == {1}


def test_linear_data_on_dual_nodes():
    s = M3.sigma / 2
    data = ControlData.scalar([j + s for j in range(-15, 16)], -15, "window")
    out = subdivide_once(M3, data)
    assert out.values() == [(i + s) / 3 for i in out.indices]


def test_window_boundary_is_trimmed():
    out = subdivide_once(M3, ControlData.scalar([0] * 10, 0, "window"))
    # only indices whose whole stencil lies inside [0, 9]
    assert out.indices == range(3 * -1 + 12 + 1, 3 * 10 - 11)


def test_reproduction_degree():
    assert polynomial_reproduction_degree(M3) == 5
    assert polynomial_reproduction_degree(M4) == 5
    assert polynomial_reproduction_degree(bare_mask(FIXTURE_MASK, 3, 2)) == 1


def test_reproduction_degree_is_shift_invariant():
    # shifting the mask changes sigma, which moves the nodes along with it
    shifted = bare_mask(MASK_M3.shift(3), 3)
    assert polynomial_reproduction_degree(shifted) == 5
    assert polynomial_reproduction_degree(bare_mask(Laurent({0: 1, 1: 1}), 3)) == -1


def test_interpolation_system_on_published_masks():
    ex = PhiSamples(SIX_POINT_SAMPLES, True)
    for mask in (M3, M4):
        report = verify_interpolation_system(mask, ex)
        assert report["passed"]
        assert report["max_residual"] == 0


@pytest.mark.parametrize("k", [-11, -5, 0, 7, 12])
def test_perturbation_is_detected(k):
    ex = PhiSamples(SIX_POINT_SAMPLES, True)
    bad = bare_mask(MASK_M3 + Laurent({k: F(1, 1000000)}), 3)
    report = verify_interpolation_system(bad, ex)
    assert not report["passed"]
    assert report["max_residual"] > 0


def test_cascade_level_one_is_the_mask():
    g = cascade_blf(M3, 1)
    assert g.offset == -11
    assert list(g.values) == MASK_M3.to_list()
    assert g.t(0) == F(1, 12)
    assert g.x(0) == F(1, 12) - F(1, 4)


def test_cascade_exact_and_float_agree():
    ge = cascade_blf(M4, 4)
    gf = cascade_blf(M4, 4, "float")
    assert np.allclose(ge.as_float(), gf.as_float(), atol=1e-14)


def test_cascade_support_matches_published():
    assert blf_support(M3) == (F(-23, 4), F(23, 4))
    assert blf_support(M4) == (F(-11, 2), F(11, 2))
    for mask, (lo, hi) in ((M3, blf_support(M3)), (M4, blf_support(M4))):
        for k in range(1, 6):
            g = cascade_blf(mask, k)
            assert lo <= g.x(g.indices[0]) and g.x(g.indices[-1]) <= hi


def test_convergence_indicator():
    for mask in (M3, M4):
        rep = convergence_indicator(mask)
        assert rep.certified and rep.at_k <= 6 and rep.contraction < 1
    certified, mu, k = convergence_indicator(M3)
    assert certified


def test_convergence_needs_factor():
    with pytest.raises(NotFactorable):
        convergence_indicator(bare_mask(Laurent({0: 1, 3: 1}), 3))


def test_refine_closed_square():
    square = ControlData(((0, 0), (1, 0), (1, 1), (0, 1)), 0, "periodic")
    out = refine_polygon(M3, square, 1)
    assert len(out) == 12
    # centroid is preserved because constants are reproduced
    assert sum(p[0] for p in out.points) / 12 == F(1, 2)
    zero = ControlData(((0, 0),) * 4, 0, "periodic")
    assert set(refine_polygon(M3, zero, 2).points) == {(0, 0)}


def test_refine_reproduces_ramp():
    s = M3.sigma / 2
    ramp = ControlData.scalar([j + s for j in range(-30, 31)], -30, "window")
    out = refine_polygon(M3, ramp, 2)
    assert out.values() == [(i + s) / 9 for i in out.indices]


def test_oracle_fixture():
    spec = SchemeSpec(3, 2, PhiSamples(FIXTURE_SAMPLES, True))
    sol = oracle_truncated_system(spec, (-3, 4))
    assert sol.system.satisfied_by(FIXTURE_MASK)
    sym = oracle_truncated_system(spec, (-3, 4), symmetric=True)
    assert sym.nullity == 0 and sym.particular == FIXTURE_MASK


def test_oracle_accepts_published_mask():
    spec = SchemeSpec(3, 6, PhiSamples(SIX_POINT_SAMPLES, True))
    system = truncated_system(spec, (-11, 12))
    assert system.satisfied_by(MASK_M3)
    assert not system.satisfied_by(MASK_M3 + Laurent({0: F(1, 10**6)}))


def test_oracle_small_window_is_inconsistent():
    spec = SchemeSpec(3, 6, PhiSamples(SIX_POINT_SAMPLES, True))
    with pytest.raises(Inconsistent):
        oracle_truncated_system(spec, (-5, 6))


CASES = [(3, 2, FIXTURE_SAMPLES), (5, 2, FIXTURE_SAMPLES), (7, 2, FIXTURE_SAMPLES), (4, 2, FIXTURE_SAMPLES),
         (3, 6, SIX_POINT_SAMPLES), (4, 6, SIX_POINT_SAMPLES), (5, 6, SIX_POINT_SAMPLES)]


@pytest.mark.parametrize("m,d,values", CASES)
def test_pipeline_agrees_with_oracle(m, d, values):
    spec = SchemeSpec(m, d, PhiSamples(values, True))
    mask = construct(spec)
    lo, hi = mask.symbol.support()
    sol = oracle_truncated_system(spec, (lo, hi), symmetric=True)
    assert sol.system.satisfied_by(mask.symbol)
    assert sol.nullity == 0 and sol.particular == mask.symbol
    # no symmetric mask fits a window one step shorter on each side
    with pytest.raises(Inconsistent):
        oracle_truncated_system(spec, (lo + 1, hi - 1), symmetric=True)
    assert polynomial_reproduction_degree(mask) >= d - 1


def test_cascade_residuals_shrink():
    ex = PhiSamples(SIX_POINT_SAMPLES, True)
    for mask in (M3, M4):
        r = [interpolation_residuals(cascade_blf(mask, k, "float"), ex)["max"] for k in range(7, 11)]
        assert r == sorted(r, reverse=True) and r[-1] <= 1e-6
