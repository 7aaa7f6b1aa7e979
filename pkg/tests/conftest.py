import pytest

from juntagap import SetFamily, TribesAddressing

# Small reference family used across the suite: four 2-subsets of {1..4}.
FIXTURE_SETS = ((1, 2), (3, 4), (1, 3), (2, 4))


@pytest.fixture
def fixture_family() -> SetFamily:
    return SetFamily(d=5, t=2, sets=FIXTURE_SETS)


@pytest.fixture
def fixture_function(fixture_family) -> TribesAddressing:
    return TribesAddressing(fixture_family)
