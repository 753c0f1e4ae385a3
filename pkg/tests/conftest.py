import pytest

from fracineq.quadrature import QuadratureConfig


@pytest.fixture(scope="session")
def cfg():
    return QuadratureConfig()


@pytest.fixture(scope="session")
def direct_cfg():
    return QuadratureConfig(method="direct_adaptive")
