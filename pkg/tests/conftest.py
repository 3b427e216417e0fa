import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from goldens import SIX_POINT_SAMPLES, FIXTURE_SAMPLES  # noqa: E402

from dualsubdiv import PhiSamples, SchemeSpec, construct  # noqa: E402


@pytest.fixture(scope="session")
def six_point():
    return PhiSamples(SIX_POINT_SAMPLES, symmetric=True)


@pytest.fixture(scope="session")
def fixture_samples():
    return PhiSamples(FIXTURE_SAMPLES, symmetric=True)


@pytest.fixture(scope="session")
def mask_m3(six_point):
    return construct(SchemeSpec(3, 6, six_point))


@pytest.fixture(scope="session")
def mask_m4(six_point):
    return construct(SchemeSpec(4, 6, six_point))


@pytest.fixture(scope="session")
def mask_fixture(fixture_samples):
    return construct(SchemeSpec(3, 2, fixture_samples))
