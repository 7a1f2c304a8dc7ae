import pytest

from checkerboard.centers import center_params
from checkerboard.grid import GridSpec
from checkerboard.rational_map import MapParams
from checkerboard.regions import build_region_map


@pytest.fixture(scope="session")
def checker_map():
    """Region map of z^4 + 0.18/z^3 at 1024^2."""
    return build_region_map(MapParams(4, 3, 0.18), GridSpec(0j, 1.5, 1024))


@pytest.fixture(scope="session")
def eighth_map():
    """Region map at the center of M_0 for n = d = 3 (lambda = 1/8)."""
    return build_region_map(center_params(3, 3, 0), GridSpec(0j, 1.5, 1024))
