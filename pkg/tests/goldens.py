"""Frozen reference values.

PUBLISHED values were transcribed from the published worked examples and checked
against the source text. DERIVED values were computed once by the
sympy script ``tests/derive_goldens.py``, which does not import the package,
and frozen here.
"""
from fractions import Fraction as F

from dualsubdiv.laurent import Laurent

SIX_POINT_SAMPLES = {-3: F(3, 256), -2: F(-25, 256), -1: F(75, 128), 0: F(75, 128), 1: F(-25, 256), 2: F(3, 256)}
FIXTURE_SAMPLES = {-1: F(1, 2), 0: F(1, 2)}

# PUBLISHED: first half of the ternary mask, exponents -11 .. 0
MASK_M3_HALF = [
    F(16567, 466373376), F(0), F(-414175, 233186688), F(224821, 66624768), F(3, 256),
    F(589847, 33312384), F(-83995, 2776032), F(-25, 256), F(-2042857, 22208256),
    F(1290971, 8328096), F(75, 128), F(63152905, 66624768),
]
# PUBLISHED: first half of the quaternary mask, exponents -16 .. 0
MASK_M4_HALF = [
    F(947, 113602560), F(4735, 68161536), F(15760091, 40715157504), F(-27054815, 40715157504),
    F(-63782671, 43623383040), F(98441927, 43623383040), F(42911173, 5816451072),
    F(92071847, 5816451072), F(154804477, 10905845760), F(-79247347, 3635281920),
    F(-143318065, 1938817024), F(-215643011, 1938817024), F(-71706399, 969408512),
    F(4869166267, 43623383040), F(2428957997, 5816451072), F(4331006815, 5816451072),
    F(528433771, 545292288),
]


def symmetric_mask(half):
    """Full symmetric mask ``a_k = a_{1-k}`` from its first half ending at exponent 0."""
    n = len(half)
    return Laurent.from_list(half + half[::-1], low=1 - n)


MASK_M3 = symmetric_mask(MASK_M3_HALF)
MASK_M4 = symmetric_mask(MASK_M4_HALF)

# PUBLISHED: Taylor coefficients a_i^{(s)}(1)/s! of the truncated sub-symbols
TAYLOR_M3 = {
    0: [F(1), F(1, 6), F(-5, 72), F(55, 1296), F(-935, 31104), F(4301, 186624)],
    1: [F(1), F(-1, 6), F(7, 72), F(-91, 1296), F(1729, 31104), F(-8645, 186624)],
}
TAYLOR_M4 = {
    0: [F(1), F(1, 8), F(-7, 128), F(35, 1024), F(-805, 32768), F(4991, 262144)],
    1: [F(1), F(-1, 8), F(9, 128), F(-51, 1024), F(1275, 32768), F(-8415, 262144)],
    2: [F(1), F(-3, 8), F(33, 128), F(-209, 1024), F(5643, 32768), F(-39501, 262144)],
    3: [F(1), F(-5, 8), F(65, 128), F(-455, 1024), F(13195, 32768), F(-97643, 262144)],
}

# PUBLISHED: (8645 z^3 + 215471 z^2 - 24300 z + 18225) / (15925248 z^3)
THETA_HAT_M3 = Laurent({0: F(8645, 15925248), -1: F(215471, 15925248), -2: F(-24300, 15925248),
                        -3: F(18225, 15925248)})
THETA_HAT_M4 = Laurent({-5: F(3, 256), -3: F(-7, 256), -1: F(5086563, 16777216), 0: F(-580643, 16777216)})
GAMMA_TILDE_M4 = Laurent({-5: F(3, 256), -4: F(-9, 128), -3: F(19, 128), -2: F(-9, 128), -1: F(3, 256)})

PHI_DERIVATIVES = [F(1), F(-1, 2), F(3, 4), F(-15, 8), F(105, 16), F(-945, 32)]

# PUBLISHED: particular Bezout solutions and homotopy terms
PARTICULAR_M3 = [
    Laurent({-2: F(45544275, 466373376), -1: F(-9903400, 466373376)}),
    Laurent({-2: F(-46560721, 466373376), -1: F(21603855, 466373376)}),
]
H_M3 = Laurent({-3: F(-16567, 5465313), -2: F(-844799, 5465313)})
PARTICULAR_M4 = [
    Laurent({-1: F(2126507351527, 157810688), 0: F(-176620228675, 78905344)}),
    Laurent({-4: 1, -3: -50, -2: 2506, -1: F(-2118539063675, 157810688), 0: F(-21194427441, 78905344)}),
]
H_M4 = Laurent({
    -1: F(-7064809147, 308224), -2: F(281633113, 616448), -3: F(-2817667, 308224),
    -4: F(119853, 616448), -5: F(7302199, 596413440), -6: F(-3127, 1232896), -7: F(947, 1331280),
})

# DERIVED (oracle, window [-3, 4], symmetric, nullity 0)
FIXTURE_MASK = Laurent({-3: F(-1, 12), -2: F(1, 12), -1: F(1, 2), 0: 1, 1: 1, 2: F(1, 2), 3: F(1, 12),
                        4: F(-1, 12)})

# DERIVED (oracle, window [-14, 15], symmetric, nullity 0): the unique symmetric
# quaternary mask on that window; shorter than the published one
MASK_M4_SHORT_HALF = [
    F(-9381, 315621376), F(-78175, 315621376), F(-30081, 22544384), F(62025, 22544384),
    F(464197, 45088768), F(582183, 45088768), F(76275, 5636096), F(-131415, 5636096),
    F(-3727635, 45088768), F(-4620297, 45088768), F(-1628125, 22544384), F(2575125, 22544384),
    F(19486893, 45088768), F(32915935, 45088768), F(1361625, 1409024),
]
MASK_M4_SHORT = symmetric_mask(MASK_M4_SHORT_HALF)
