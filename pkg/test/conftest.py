import numpy as np
import pytest

from app.core.catalog import ExampleCatalog, get_catalog
from app.core.network.network import DirectedNetwork, ModelParams
from app.core.solver.contract_solver import auto_alpha


@pytest.fixture(scope="session")
def catalog() -> ExampleCatalog:
    return get_catalog()


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def path3() -> DirectedNetwork:
    """0 ← 1 ← 2 (g_01 = g_12 = 1)"""
    return DirectedNetwork.from_edges(3, [(0, 1), (1, 2)])


@pytest.fixture
def triangle() -> DirectedNetwork:
    return DirectedNetwork.from_edges(3, [(0, 1), (1, 0), (0, 2), (2, 0), (1, 2), (2, 1)])


@pytest.fixture
def auto_params():
    """α = 0.8 / λ 파라미터를 만드는 함수"""
    def build(net: DirectedNetwork, a: float = 1.0) -> ModelParams:
        return ModelParams(a=a, alpha=auto_alpha(net))
    return build
