import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from src.core.hermite_core import HermiteExpansion

# 数值属性测试单例耗时不稳定，关闭 deadline
settings.register_profile(
    "fock-radial",
    max_examples=25,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("fock-radial")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def h2_shell():
    """h_(2,0) + h_(0,2)"""
    return HermiteExpansion(2, {(2, 0): 1.0, (0, 2): 1.0})


@pytest.fixture
def h2_antishell():
    return HermiteExpansion(2, {(2, 0): 1.0, (0, 2): -1.0})
